//! Resolutions of `(x^a)*` as tensor products of prime-power resolutions,
//! the double complex over a minimal resolution of `M`, and its total
//! complex, which resolves `M*`.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{tensor, tensor_maps, ChainComplex, ChainMap, FreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::expansion::ExpandedRing;
use crate::field::{Field, SparseMatrix};
use crate::monomial::Monomial;
use crate::prime_power::{lifting_prime, HtResolution};

/// `G^a = G(P_1^{a(1)}) ⊗ ... ⊗ G(P_n^{a(n)})` over the flat ring, tensor
/// factors in block order.
#[derive(Clone, Debug, PartialEq)]
pub struct GTensor<F> {
    shift: Monomial,
    blocks: Vec<HtResolution<F>>,
    // prefixes[j] = G(P_1^{a(1)}) ⊗ ... ⊗ G(P_{j+1}^{a(j+1)})
    prefixes: Vec<ChainComplex<F>>,
}

impl<F: Field> GTensor<F> {
    pub fn new(ring: &ExpandedRing, a: &Monomial) -> Result<Self> {
        ring.source().check(a)?;
        let blocks: Vec<HtResolution<F>> = (0..ring.source().nvars())
            .map(|j| {
                let vars: Vec<usize> = ring.block(j).collect();
                HtResolution::new(ring.flat(), &vars, a.exponent(j))
            })
            .collect::<Result<_>>()?;
        let mut prefixes: Vec<ChainComplex<F>> = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let next = match prefixes.last() {
                Some(prev) => tensor(prev, b.complex())?,
                None => b.complex().clone(),
            };
            prefixes.push(next);
        }
        Ok(Self {
            shift: a.clone(),
            blocks,
            prefixes,
        })
    }

    /// The source-ring monomial `x^a`.
    pub fn shift(&self) -> &Monomial {
        &self.shift
    }

    pub fn blocks(&self) -> &[HtResolution<F>] {
        &self.blocks
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        self.prefixes.last().expect("at least one block")
    }
}

/// `φ^{a,b} = ⊗_j φ^{a(j), b(j)}: G^a → G^b`, for `x^b | x^a`.
pub fn lifting_tensor<F: Field>(source: &GTensor<F>, target: &GTensor<F>) -> Result<ChainMap<F>> {
    if !target.shift.divides(&source.shift) {
        return Err(Error::NotDivisible {
            divisor: format!("{:?}", target.shift.exponents()),
            dividend: format!("{:?}", source.shift.exponents()),
        });
    }
    if source.blocks.len() != target.blocks.len() {
        return Err(Error::RingMismatch("tensor resolutions over different rings".into()));
    }
    let mut phi = lifting_prime(&source.blocks[0], &target.blocks[0])?;
    for j in 1..source.blocks.len() {
        let psi = lifting_prime(&source.blocks[j], &target.blocks[j])?;
        phi = tensor_maps(
            &phi,
            &psi,
            (&source.prefixes[j - 1], source.blocks[j].complex()),
            (&target.prefixes[j - 1], target.blocks[j].complex()),
        )?;
    }
    Ok(phi)
}

/// Memoizes `G^a` and `φ^{a,b}` over one expanded ring.
pub struct GTensorCache<F> {
    ring: ExpandedRing,
    tensors: HashMap<Monomial, GTensor<F>>,
    liftings: HashMap<(Monomial, Monomial), ChainMap<F>>,
}

impl<F: Field> GTensorCache<F> {
    pub fn new(ring: ExpandedRing) -> Self {
        Self {
            ring,
            tensors: HashMap::new(),
            liftings: HashMap::new(),
        }
    }

    pub fn ring(&self) -> &ExpandedRing {
        &self.ring
    }

    pub fn tensor(&mut self, a: &Monomial) -> Result<&GTensor<F>> {
        if !self.tensors.contains_key(a) {
            let g = GTensor::new(&self.ring, a)?;
            self.tensors.insert(a.clone(), g);
        }
        Ok(&self.tensors[a])
    }

    pub fn lifting(&mut self, a: &Monomial, b: &Monomial) -> Result<&ChainMap<F>> {
        let key = (a.clone(), b.clone());
        if !self.liftings.contains_key(&key) {
            self.tensor(a)?;
            self.tensor(b)?;
            let phi = lifting_tensor(&self.tensors[a], &self.tensors[b])?;
            self.liftings.insert(key.clone(), phi);
        }
        Ok(&self.liftings[&key])
    }
}

/// The grid `C_{ij} = G_{ij}` with columns `G_i = ⊕_k G^{a_{ik}}`, vertical
/// maps the tensor differentials and horizontal maps
/// `d = Σ λ_{ℓk} φ^{a_{ik}, a_{(i-1)ℓ}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleComplex<F> {
    ring: ExpandedRing,
    resolution: ChainComplex<F>,
    columns: Vec<ChainComplex<F>>,
    // horizontal[i - 1]: G_i → G_{i-1}
    horizontal: Vec<ChainMap<F>>,
}

/// Outcome of the structural checks on a double complex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DoubleComplexReport {
    /// `(i, s)` where `d_{i-1} d_i != 0` on `G_{i,s}`.
    pub row_failures: Vec<(usize, usize)>,
    /// `(i, s)` where `∂ d_i != d_i ∂` starting from `G_{i,s}`.
    pub square_failures: Vec<(usize, usize)>,
}

impl DoubleComplexReport {
    pub fn passed(&self) -> bool {
        self.row_failures.is_empty() && self.square_failures.is_empty()
    }
}

impl<F: Field> DoubleComplex<F> {
    /// Builds the double complex and runs [`Self::check`]; `resolution`
    /// must be minimal.
    pub fn new(ring: &ExpandedRing, resolution: &ChainComplex<F>) -> Result<Self> {
        let dc = Self::build(ring, resolution, &mut GTensorCache::new(ring.clone()))?;
        let report = dc.check();
        if !report.passed() {
            return Err(Error::NotAComplex(format!("double complex checks failed: {report:?}")));
        }
        Ok(dc)
    }

    /// Assembles the grid without running the checks.
    pub fn build(ring: &ExpandedRing, resolution: &ChainComplex<F>, cache: &mut GTensorCache<F>) -> Result<Self> {
        if resolution.ring() != ring.source() {
            return Err(Error::RingMismatch("resolution is not over the source ring".into()));
        }
        if !resolution.is_minimal() {
            return Err(Error::NotMinimal("the double complex needs a minimal resolution".into()));
        }
        let p = resolution.length();
        let mut columns = Vec::with_capacity(p + 1);
        for i in 0..=p {
            let summands: Vec<ChainComplex<F>> = resolution
                .module(i)
                .unwrap()
                .shifts()
                .iter()
                .map(|a| cache.tensor(a).map(|g| g.complex().clone()))
                .collect::<Result<_>>()?;
            let refs: Vec<&ChainComplex<F>> = summands.iter().collect();
            columns.push(ChainComplex::direct_sum(ring.flat().clone(), &refs)?);
        }
        let mut horizontal = Vec::with_capacity(p);
        for i in 1..=p {
            let d = resolution.differential(i).unwrap();
            let src_shifts = resolution.module(i).unwrap().shifts();
            let tgt_shifts = resolution.module(i - 1).unwrap().shifts();
            let height = columns[i].length().max(columns[i - 1].length());
            let mut triplets: Vec<Vec<(usize, usize, F)>> = vec![Vec::new(); columns[i].length() + 1];
            let src_offsets = block_offsets(cache, src_shifts, columns[i].length())?;
            let tgt_offsets = block_offsets(cache, tgt_shifts, height)?;
            for (row, col, lambda) in d.matrix().iter() {
                let phi = cache.lifting(&src_shifts[col], &tgt_shifts[row])?;
                for (s, comp) in phi.components().iter().enumerate() {
                    let (r0, c0) = (tgt_offsets[s][row], src_offsets[s][col]);
                    for (r, c, v) in comp.matrix().iter() {
                        triplets[s].push((r0 + r, c0 + c, lambda.clone() * v.clone()));
                    }
                }
            }
            let components = triplets
                .into_iter()
                .enumerate()
                .map(|(s, t)| {
                    let src = columns[i].module(s).unwrap().clone();
                    let tgt = columns[i - 1].module(s).cloned().unwrap_or_default();
                    let m = SparseMatrix::from_triplets(tgt.rank(), src.rank(), t);
                    GradedMap::new(src, tgt, m)
                })
                .collect::<Result<Vec<_>>>()?;
            horizontal.push(ChainMap::new(components));
        }
        Ok(Self {
            ring: ring.clone(),
            resolution: resolution.clone(),
            columns,
            horizontal,
        })
    }

    pub fn ring(&self) -> &ExpandedRing {
        &self.ring
    }

    pub fn resolution(&self) -> &ChainComplex<F> {
        &self.resolution
    }

    /// Column `G_i`.
    pub fn column(&self, i: usize) -> &ChainComplex<F> {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[ChainComplex<F>] {
        &self.columns
    }

    /// `d_i: G_i → G_{i-1}` for `i >= 1`.
    pub fn horizontal(&self, i: usize) -> &ChainMap<F> {
        &self.horizontal[i - 1]
    }

    /// `rank G_{ij}`.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.columns.get(i).map_or(0, |c| c.rank(j))
    }

    /// Replaces one scalar of `d_i` on `G_{i,s}`; for building mutated
    /// fixtures.
    pub fn with_horizontal_entry(mut self, i: usize, s: usize, row: usize, col: usize, value: F) -> Self {
        let mut comps = self.horizontal[i - 1].components().to_vec();
        comps[s] = comps[s].clone().with_entry(row, col, value);
        self.horizontal[i - 1] = ChainMap::new(comps);
        self
    }

    /// Rows compose to zero and every square commutes, exactly.
    pub fn check(&self) -> DoubleComplexReport {
        let mut report = DoubleComplexReport::default();
        for i in 2..=self.horizontal.len() {
            let (outer, inner) = (self.horizontal(i - 1), self.horizontal(i));
            for s in 0..inner.components().len() {
                let Some(o) = outer.component(s) else { continue };
                let prod = o.matrix().mul(inner.component(s).unwrap().matrix());
                if !prod.is_zero() {
                    report.row_failures.push((i, s));
                }
            }
        }
        for i in 1..=self.horizontal.len() {
            let d = self.horizontal(i);
            let (src, tgt) = (&self.columns[i], &self.columns[i - 1]);
            for s in 1..=src.length() {
                let lhs = d.component(s - 1).unwrap().matrix().mul(src.differential(s).unwrap().matrix());
                let rhs = match tgt.differential(s) {
                    Some(e) => e.matrix().mul(d.component(s).unwrap().matrix()),
                    None => SparseMatrix::zeros(lhs.nrows(), lhs.ncols()),
                };
                if lhs != rhs {
                    report.square_failures.push((i, s));
                }
            }
        }
        report
    }

    /// `T(C)` with `T_m = ⊕_{i+j=m} G_{ij}` (blocks by increasing `i`) and
    /// differential `d + (-1)^i ∂` on `G_{ij}`.
    pub fn total_complex(&self) -> Result<ChainComplex<F>> {
        let p = self.columns.len() - 1;
        let top = (0..=p).map(|i| i + self.columns[i].length()).max().unwrap_or(0);
        // offsets[m] = [(i, offset)]
        let mut offsets: Vec<Vec<(usize, usize)>> = Vec::with_capacity(top + 1);
        let mut modules = Vec::with_capacity(top + 1);
        for m in 0..=top {
            let mut blocks = Vec::new();
            let mut shifts = Vec::new();
            for i in 0..=p.min(m) {
                let j = m - i;
                if let Some(g) = self.columns[i].module(j) {
                    blocks.push((i, shifts.len()));
                    shifts.extend(g.shifts().iter().cloned());
                }
            }
            offsets.push(blocks);
            modules.push(FreeModule::new(shifts));
        }
        let find = |m: usize, i: usize| offsets[m].iter().find(|(k, _)| *k == i).map(|(_, o)| *o);
        let mut differentials = Vec::with_capacity(top);
        for m in 1..=top {
            let mut triplets = Vec::new();
            for &(i, off) in &offsets[m] {
                let j = m - i;
                if i >= 1 {
                    if let (Some(tgt), Some(comp)) = (find(m - 1, i - 1), self.horizontal(i).component(j)) {
                        triplets.extend(comp.matrix().iter().map(|(r, c, v)| (tgt + r, off + c, v.clone())));
                    }
                }
                if j >= 1 {
                    let tgt = find(m - 1, i).expect("column has the lower module");
                    let d = self.columns[i].differential(j).unwrap();
                    let sign = F::sign(i % 2 == 1);
                    triplets.extend(d.matrix().iter().map(|(r, c, v)| (tgt + r, off + c, sign.clone() * v.clone())));
                }
            }
            let mat = SparseMatrix::from_triplets(modules[m - 1].rank(), modules[m].rank(), triplets);
            differentials.push(GradedMap::new(modules[m].clone(), modules[m - 1].clone(), mat)?);
        }
        Ok(ChainComplex::new(self.ring.flat().clone(), modules, differentials)?.trimmed())
    }

    /// Graphviz rendering of the grid, one node `G_{ij}` per nonzero module
    /// labelled with its rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph double_complex {\n  node [shape=box];\n");
        for (i, col) in self.columns.iter().enumerate() {
            for j in 0..=col.length() {
                let _ = writeln!(out, "  g{i}_{j} [label=\"G({i},{j})\\nrank {}\"];", col.rank(j));
            }
        }
        for (i, col) in self.columns.iter().enumerate() {
            for j in 1..=col.length() {
                let _ = writeln!(out, "  g{i}_{j} -> g{i}_{} [label=\"∂\"];", j - 1);
            }
            if i >= 1 {
                for j in 0..=col.length() {
                    if j <= self.columns[i - 1].length() {
                        let _ = writeln!(out, "  g{i}_{j} -> g{}_{j} [label=\"d\"];", i - 1);
                    }
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

// offsets[s][k] = start of the G^{a_k} block inside ⊕_k G^{a_k} at level s
fn block_offsets<F: Field>(cache: &mut GTensorCache<F>, shifts: &[Monomial], height: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = vec![Vec::with_capacity(shifts.len()); height + 1];
    let mut running = vec![0usize; height + 1];
    for a in shifts {
        let g = cache.tensor(a)?.complex();
        for s in 0..=height {
            out[s].push(running[s]);
            running[s] += g.rank(s);
        }
    }
    Ok(out)
}
