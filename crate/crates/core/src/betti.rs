//! Betti tables and the brute-force Betti oracles.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::complex::{minimize, taylor_complex};
use crate::error::{Error, Result};
use crate::field::{rank_mod_prime, rank_of_vectors, Field, PRIME};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, RingDescriptor};

/// Largest lcm lattice [`tor_betti`] will walk.
pub const DEFAULT_LATTICE_CAP: usize = 200_000;

/// Multigraded Betti numbers `β_{i,a}` of a module resolved by generators,
/// so `β_0` counts minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    ring: RingDescriptor,
    counts: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn new(ring: RingDescriptor) -> Self {
        Self {
            ring,
            counts: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    pub fn add(&mut self, i: usize, degree: Monomial, count: usize) {
        if count == 0 {
            return;
        }
        *self.counts.entry((i, degree)).or_insert(0) += count;
    }

    pub fn get(&self, i: usize, degree: &Monomial) -> usize {
        self.counts.get(&(i, degree.clone())).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(i, a, β_{i,a})` with nonzero count, by `i` then degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> + '_ {
        self.counts.iter().map(|((i, a), c)| (*i, a, *c))
    }

    /// Shifts in homological degree `i`, with multiplicity.
    pub fn shifts(&self, i: usize) -> Vec<Monomial> {
        self.iter()
            .filter(|(j, _, _)| *j == i)
            .flat_map(|(_, a, c)| std::iter::repeat(a.clone()).take(c))
            .collect()
    }

    /// Coarsening to total degrees `β_{i,k}`.
    pub fn graded(&self) -> GradedBetti {
        let mut g = GradedBetti::default();
        for (i, a, c) in self.iter() {
            g.add(i, a.total_degree(), c);
        }
        g
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.graded().betti_numbers()
    }

    pub fn projdim(&self) -> Result<usize> {
        self.graded().projdim()
    }

    pub fn regularity(&self) -> Result<i64> {
        self.graded().regularity()
    }
}

/// Betti numbers `β_{i,k}` graded by total degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedBetti {
    counts: BTreeMap<(usize, u64), usize>,
}

impl GradedBetti {
    pub fn add(&mut self, i: usize, k: u64, count: usize) {
        if count == 0 {
            return;
        }
        *self.counts.entry((i, k)).or_insert(0) += count;
    }

    pub fn get(&self, i: usize, k: u64) -> usize {
        self.counts.get(&(i, k)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64, usize)> + '_ {
        self.counts.iter().map(|((i, k), c)| (*i, *k, *c))
    }

    /// Coefficients of the Betti polynomial `Σ β_j t^j`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, _, c) in self.iter() {
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += c;
        }
        out
    }

    pub fn projdim(&self) -> Result<usize> {
        self.iter()
            .map(|(i, _, _)| i)
            .max()
            .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))
    }

    /// `max (k - i)` over the support.
    pub fn regularity(&self) -> Result<i64> {
        self.iter()
            .map(|(i, k, _)| k as i64 - i as i64)
            .max()
            .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))
    }

    /// Every nonzero `β_{i,k}` has `k = i + d`.
    pub fn is_linear(&self, d: u64) -> bool {
        !self.is_empty() && self.iter().all(|(i, k, _)| k == d + i as u64)
    }

    /// Macaulay2-style grid: row `k - i`, column `i`, `.` for zero, with a
    /// `total:` row on top.
    pub fn to_m2_string(&self) -> String {
        let Ok(p) = self.projdim() else {
            return "total: 0\n".to_string();
        };
        let rows: Vec<i64> = {
            let lo = self.iter().map(|(i, k, _)| k as i64 - i as i64).min().unwrap();
            let hi = self.regularity().unwrap();
            (lo..=hi).collect()
        };
        let totals = self.betti_numbers();
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut labels = vec!["total:".to_string()];
        cells.push((0..=p).map(|i| totals[i].to_string()).collect());
        for r in &rows {
            labels.push(format!("{r}:"));
            cells.push(
                (0..=p)
                    .map(|i| match self.get(i, (*r + i as i64) as u64) {
                        0 => ".".to_string(),
                        c => c.to_string(),
                    })
                    .collect(),
            );
        }
        let label_w = labels.iter().map(String::len).max().unwrap();
        let col_w: Vec<usize> = (0..=p)
            .map(|i| cells.iter().map(|row| row[i].len()).max().unwrap().max(i.to_string().len()))
            .collect();
        let mut out = String::new();
        let _ = write!(out, "{:>label_w$}", "");
        for (i, w) in col_w.iter().enumerate() {
            let _ = write!(out, " {:>w$}", i);
        }
        out.push('\n');
        for (label, row) in labels.iter().zip(&cells) {
            let _ = write!(out, "{label:>label_w$}");
            for (cell, w) in row.iter().zip(&col_w) {
                let _ = write!(out, " {cell:>w$}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.iter()
                .map(|(i, k, c)| serde_json::json!({ "i": i, "k": k, "count": c }))
                .collect(),
        )
    }
}

/// `β_{i,a}(I)` through the upper Koszul simplicial complexes
/// `K^a = {F ⊆ supp(a) squarefree : x^{a-F} ∈ I}`, using
/// `β_{i,a}(I) = dim H̃_{i-1}(K^a)` at every point `a` of the lcm lattice.
pub fn tor_betti<F: Field>(ideal: &MonomialIdeal) -> Result<BettiTable> {
    tor_betti_capped::<F>(ideal, DEFAULT_LATTICE_CAP)
}

pub fn tor_betti_capped<F: Field>(ideal: &MonomialIdeal, lattice_cap: usize) -> Result<BettiTable> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let lattice = lcm_lattice(ideal, lattice_cap)?;
    let rows: Vec<Vec<(usize, Monomial, usize)>> = lattice
        .par_iter()
        .map(|a| {
            koszul_reduced_homology::<F>(ideal, a)
                .into_iter()
                .enumerate()
                .filter(|(_, h)| *h > 0)
                // H̃_{k} sits at index k + 1
                .map(|(k1, h)| (k1, a.clone(), h))
                .collect()
        })
        .collect();
    let mut t = BettiTable::new(ideal.ring().clone());
    for (i, a, c) in rows.into_iter().flatten() {
        t.add(i, a, c);
    }
    Ok(t)
}

fn lcm_lattice(ideal: &MonomialIdeal, cap: usize) -> Result<Vec<Monomial>> {
    let gens = ideal.gens();
    let mut seen: std::collections::HashSet<Monomial> = gens.iter().cloned().collect();
    let mut frontier: Vec<Monomial> = gens.to_vec();
    while let Some(x) = frontier.pop() {
        for g in gens {
            let l = x.lcm(g);
            if seen.insert(l.clone()) {
                if seen.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "lcm lattice size".into(),
                        got: seen.len(),
                        cap,
                    });
                }
                frontier.push(l);
            }
        }
    }
    let mut v: Vec<Monomial> = seen.into_iter().collect();
    v.sort();
    Ok(v)
}

/// `dim H̃_{k}(K^a)` for `k = -1, 0, 1, ...`, stored at index `k + 1`.
fn koszul_reduced_homology<F: Field>(ideal: &MonomialIdeal, a: &Monomial) -> Vec<usize> {
    let supp = a.support();
    let s = supp.len();
    // faces as bitmasks over supp; closed downward, so enumerate by mask
    let mut faces_by_dim: Vec<Vec<u32>> = vec![Vec::new(); s + 1];
    for mask in 0u32..(1u32 << s) {
        let mut exps = a.exponents().to_vec();
        for (bit, &v) in supp.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                exps[v] -= 1;
            }
        }
        if ideal.contains(&Monomial::new(exps)) {
            faces_by_dim[mask.count_ones() as usize].push(mask);
        }
    }
    let index: Vec<HashMap<u32, usize>> = faces_by_dim
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
        .collect();
    let boundary = |c: usize, f: u32| {
        let mut v = Vec::with_capacity(c);
        let mut pos = 0;
        for bit in 0..s {
            if f & (1 << bit) != 0 {
                let face = f & !(1 << bit);
                if let Some(&row) = index[c - 1].get(&face) {
                    v.push((row, pos % 2 == 1));
                }
                pos += 1;
            }
        }
        v.sort_by_key(|(r, _)| *r);
        v
    };
    let homology = |ranks: &[usize]| -> Vec<usize> {
        (0..=s)
            .map(|c| faces_by_dim[c].len() - ranks[c] - ranks.get(c + 1).copied().unwrap_or(0))
            .collect()
    };
    // Homology mod a prime bounds the rational homology from above, so a
    // vanishing result there needs no exact elimination. Only valid in
    // characteristic zero, which is when `one` has a residue.
    if F::one().residue().is_some() {
        let ranks: Vec<usize> = (0..=s)
            .map(|c| {
                if c == 0 {
                    return 0;
                }
                let vectors = faces_by_dim[c]
                    .iter()
                    .map(|&f| boundary(c, f).into_iter().map(|(r, neg)| (r, if neg { PRIME - 1 } else { 1 })).collect())
                    .collect();
                rank_mod_prime(faces_by_dim[c - 1].len(), vectors)
            })
            .collect();
        if homology(&ranks).iter().all(|&h| h == 0) {
            return Vec::new();
        }
    }
    // rank of the boundary from faces with c elements to faces with c - 1
    let ranks: Vec<usize> = (0..=s)
        .map(|c| {
            if c == 0 {
                return 0;
            }
            let vectors = faces_by_dim[c]
                .iter()
                .map(|&f| boundary(c, f).into_iter().map(|(r, neg)| (r, F::sign(neg))).collect());
            rank_of_vectors(vectors)
        })
        .collect();
    let mut out = homology(&ranks);
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// The Taylor route: `dim H_i(T ⊗ k)` per lcm degree, where `T ⊗ k` keeps
/// exactly the Taylor entries whose monomial part is `1`. Exponential in the
/// number of generators.
pub fn taylor_betti<F: Field>(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let t = taylor_complex::<F>(ideal)?;
    let mut degrees: Vec<Monomial> = t.modules().iter().flat_map(|m| m.shifts().iter().cloned()).collect();
    degrees.sort();
    degrees.dedup();
    let mut table = BettiTable::new(ideal.ring().clone());
    for a in degrees {
        let basis: Vec<Vec<usize>> = t
            .modules()
            .iter()
            .map(|m| (0..m.rank()).filter(|&j| *m.shift(j) == a).collect())
            .collect();
        let ranks: Vec<usize> = (1..=t.length())
            .map(|i| t.differential(i).unwrap().matrix().rank_of(&basis[i - 1], &basis[i]))
            .collect();
        for i in 0..=t.length() {
            let out = if i >= 1 { ranks[i - 1] } else { 0 };
            let inc = ranks.get(i).copied().unwrap_or(0);
            table.add(i, a.clone(), basis[i].len() - out - inc);
        }
    }
    Ok(table)
}

/// Betti table of `minimize(taylor_complex(I))`.
pub fn minimal_betti<F: Field>(ideal: &MonomialIdeal) -> Result<BettiTable> {
    Ok(minimize(&taylor_complex::<F>(ideal)?)?.betti_table())
}
