//! Coefficient fields and the sparse linear algebra the complexes are built on.
//!
//! Everything downstream is generic over [`Field`]; the crate root fixes the
//! exact rational instantiation used by the CLI and the oracles.

use std::any::Any;
use std::collections::HashMap;
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

/// A commutative field with exact equality.
///
/// `f64` technically satisfies the bounds, but rank computations assume that
/// `is_zero` is an exact test, so only exact types give meaningful homology.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// `±1`, used for signs in differentials.
    fn sign(negative: bool) -> Self {
        if negative {
            -Self::one()
        } else {
            Self::one()
        }
    }

    /// The image of `self` in `Z/PRIME`, for the rational types that have
    /// one; `None` when unsupported or the denominator vanishes mod `PRIME`.
    fn residue(&self) -> Option<u64> {
        let any = self as &dyn Any;
        if let Some(q) = any.downcast_ref::<BigRational>() {
            let p = num_bigint::BigInt::from(PRIME);
            let n = q.numer().mod_floor(&p).to_u64()?;
            let d = q.denom().mod_floor(&p).to_u64()?;
            return ratio_residue(n, d);
        }
        if let Some(q) = any.downcast_ref::<Ratio<i64>>() {
            let n = (*q.numer() as i128).rem_euclid(PRIME as i128) as u64;
            let d = (*q.denom() as i128).rem_euclid(PRIME as i128) as u64;
            return ratio_residue(n, d);
        }
        None
    }
}

/// The Mersenne prime `2^61 - 1` used for modular rank bounds.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let r = (x as u64 & PRIME) + (x >> 61) as u64;
    let r = (r & PRIME) + (r >> 61);
    if r >= PRIME {
        r - PRIME
    } else {
        r
    }
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut out = 1;
    while e > 0 {
        if e & 1 == 1 {
            out = mul_mod(out, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    out
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

fn ratio_residue(n: u64, d: u64) -> Option<u64> {
    (d != 0).then(|| mul_mod(n, inv_mod(d)))
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + Send
        + Sync
        + 'static
{
}

/// Column-major sparse matrix. Columns hold `(row, value)` pairs sorted by row
/// with no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            cols: vec![Vec::new(); ncols],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets, summing duplicates.
    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Self {
        let mut acc: Vec<HashMap<usize, F>> = vec![HashMap::new(); ncols];
        for (r, c, v) in triplets {
            assert!(r < nrows && c < ncols, "triplet ({r}, {c}) out of bounds");
            let slot = acc[c].entry(r).or_insert_with(F::zero);
            *slot = slot.clone() + v;
        }
        let cols = acc
            .into_iter()
            .map(|m| {
                let mut col: Vec<(usize, F)> = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        Self { nrows, ncols, cols }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, F::one())))
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn col(&self, c: usize) -> &[(usize, F)] {
        &self.cols[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        let col = &self.cols[c];
        col.binary_search_by_key(&r, |(row, _)| *row)
            .ok()
            .map(|i| &col[i].1)
    }

    /// Overwrites one entry; a zero value removes it.
    pub fn set(&mut self, r: usize, c: usize, value: F) {
        let col = &mut self.cols[c];
        match col.binary_search_by_key(&r, |(row, _)| *row) {
            Ok(i) if value.is_zero() => {
                col.remove(i);
            }
            Ok(i) => col[i].1 = value,
            Err(_) if value.is_zero() => {}
            Err(i) => col.insert(i, (r, value)),
        }
    }

    /// All nonzero entries as `(row, col, value)`, column by column.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!(
            self.ncols, rhs.nrows,
            "shape mismatch: {}x{} * {}x{}",
            self.nrows, self.ncols, rhs.nrows, rhs.ncols
        );
        let mut triplets = Vec::new();
        for (c, col) in rhs.cols.iter().enumerate() {
            for (k, v) in col {
                for (r, w) in &self.cols[*k] {
                    triplets.push((*r, c, w.clone() * v.clone()));
                }
            }
        }
        Self::from_triplets(self.nrows, rhs.ncols, triplets)
    }

    pub fn scaled(&self, factor: &F) -> SparseMatrix<F> {
        Self::from_triplets(
            self.nrows,
            self.ncols,
            self.iter().map(|(r, c, v)| (r, c, v.clone() * factor.clone())),
        )
    }

    pub fn add(&self, other: &SparseMatrix<F>) -> SparseMatrix<F> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Self::from_triplets(
            self.nrows,
            self.ncols,
            self.iter()
                .chain(other.iter())
                .map(|(r, c, v)| (r, c, v.clone())),
        )
    }

    /// Rank of the whole matrix.
    pub fn rank(&self) -> usize {
        let rows: Vec<usize> = (0..self.nrows).collect();
        let cols: Vec<usize> = (0..self.ncols).collect();
        self.rank_of(&rows, &cols)
    }

    /// Rank of the submatrix on the given (sorted or unsorted) row and column
    /// selections.
    pub fn rank_of(&self, rows: &[usize], cols: &[usize]) -> usize {
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        let mut row_pos = vec![usize::MAX; self.nrows];
        for (i, r) in rows.iter().enumerate() {
            row_pos[*r] = i;
        }
        // Eliminate over the selected columns, treating each as a vector in
        // the selected-row coordinates.
        let vectors = cols.iter().map(|c| {
            let mut v: Vec<(usize, F)> = self.cols[*c]
                .iter()
                .filter(|(r, _)| row_pos[*r] != usize::MAX)
                .map(|(r, x)| (row_pos[*r], x.clone()))
                .collect();
            v.sort_by_key(|(r, _)| *r);
            v
        });
        rank_of_vectors(vectors)
    }

    /// The matrix reduced mod [`PRIME`]; `None` if some entry has no
    /// residue.
    pub fn mod_prime(&self) -> Option<ModPrimeMatrix> {
        let cols = self
            .cols
            .iter()
            .map(|col| col.iter().map(|(r, x)| Some((*r, x.residue()?))).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(ModPrimeMatrix { nrows: self.nrows, cols })
    }
}

/// A sparse matrix over `Z/PRIME`, column-major with sorted columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPrimeMatrix {
    nrows: usize,
    cols: Vec<Vec<(usize, u64)>>,
}

impl ModPrimeMatrix {
    /// Rank of a submatrix. It never exceeds the rank of the same
    /// submatrix over the field the matrix was reduced from.
    pub fn rank_of(&self, rows: &[usize], cols: &[usize]) -> usize {
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        let mut row_pos = vec![usize::MAX; self.nrows];
        for (i, r) in rows.iter().enumerate() {
            row_pos[*r] = i;
        }
        let vectors = cols
            .iter()
            .map(|c| {
                let mut v: Vec<(usize, u64)> = self.cols[*c]
                    .iter()
                    .filter(|(r, x)| row_pos[*r] != usize::MAX && *x != 0)
                    .map(|(r, x)| (row_pos[*r], *x))
                    .collect();
                v.sort_by_key(|(r, _)| *r);
                v
            })
            .collect();
        rank_mod_prime(rows.len(), vectors)
    }
}

/// Rank over `Z/PRIME` of sparse vectors with sorted indices `< nrows`.
pub(crate) fn rank_mod_prime(nrows: usize, vectors: Vec<Vec<(usize, u64)>>) -> usize {
    // pivots[r] has leading entry 1 in row r
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; nrows];
    let mut rank = 0;
    for mut v in vectors {
        while let Some(&(lead, lead_val)) = v.first() {
            match &pivots[lead] {
                Some(p) => {
                    let mut out = Vec::with_capacity(v.len() + p.len());
                    let (mut i, mut j) = (0, 0);
                    while i < v.len() || j < p.len() {
                        if j >= p.len() || (i < v.len() && v[i].0 < p[j].0) {
                            out.push(v[i]);
                            i += 1;
                        } else if i >= v.len() || p[j].0 < v[i].0 {
                            out.push((p[j].0, PRIME - mul_mod(lead_val, p[j].1)));
                            j += 1;
                        } else {
                            let x = (v[i].1 + PRIME - mul_mod(lead_val, p[j].1)) % PRIME;
                            if x != 0 {
                                out.push((v[i].0, x));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    v = out;
                }
                None => {
                    let inv = inv_mod(lead_val);
                    for e in &mut v {
                        e.1 = mul_mod(e.1, inv);
                    }
                    pivots[lead] = Some(v);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Rank of a family of sparse vectors given as sorted `(index, value)` lists.
pub fn rank_of_vectors<F: Field>(vectors: impl IntoIterator<Item = Vec<(usize, F)>>) -> usize {
    let mut pivots: HashMap<usize, Vec<(usize, F)>> = HashMap::new();
    for mut v in vectors {
        while let Some((lead, lead_val)) = v.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = lead_val / p[0].1.clone();
                    v = axpy(&v, &factor, p);
                }
                None => {
                    pivots.insert(lead, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

// v - factor * p, both sorted by index.
fn axpy<F: Field>(v: &[(usize, F)], factor: &F, p: &[(usize, F)]) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(v.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < p.len() {
        let take_v = j >= p.len() || (i < v.len() && v[i].0 < p[j].0);
        let take_p = i >= v.len() || (j < p.len() && p[j].0 < v[i].0);
        if take_v {
            out.push(v[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(factor.clone() * p[j].1.clone())));
            j += 1;
        } else {
            let x = v[i].1.clone() - factor.clone() * p[j].1.clone();
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;
    use num_rational::Ratio;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = SparseMatrix::from_triplets(
            3,
            3,
            vec![
                (0, 0, q(1)),
                (0, 1, q(2)),
                (1, 0, q(2)),
                (1, 1, q(4)),
                (2, 2, q(3)),
            ],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_of(&[0, 1], &[0, 1]), 1);
        assert_eq!(m.rank_of(&[2], &[0, 1]), 0);
    }

    #[test]
    fn product_and_cancellation() {
        let a = SparseMatrix::from_triplets(1, 2, vec![(0, 0, q(1)), (0, 1, q(-1))]);
        let b = SparseMatrix::from_triplets(2, 1, vec![(0, 0, q(1)), (1, 0, q(1))]);
        assert!(a.mul(&b).is_zero());
        let dup = SparseMatrix::from_triplets(1, 1, vec![(0, 0, q(1)), (0, 0, q(-1))]);
        assert_eq!(dup.nnz(), 0);
    }

    #[test]
    fn small_integer_ratios_work_too() {
        let m: SparseMatrix<Ratio<i64>> = SparseMatrix::from_triplets(
            2,
            2,
            vec![
                (0, 0, Ratio::new(1, 2)),
                (1, 1, Ratio::new(1, 3)),
                (0, 1, Ratio::new(1, 6)),
            ],
        );
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn set_and_get() {
        let mut m = SparseMatrix::<Q>::zeros(2, 2);
        m.set(1, 0, q(5));
        assert_eq!(m.get(1, 0), Some(&q(5)));
        m.set(1, 0, q(0));
        assert!(m.is_zero());
    }
}
