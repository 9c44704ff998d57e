//! Complexes of multigraded free modules with monomial-matrix differentials.
//!
//! A map between free modules is stored through its scalar matrix only: the
//! entry `(j, i)` acts as `λ_{ji} · x^{a_i - b_j}`, where `a_i` and `b_j` are
//! the source and target shifts, so the monomial part is implied.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::field::{Field, ModPrimeMatrix, SparseMatrix};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Monomial, RingDescriptor};

/// `⊕ S(-a_i)`, recorded by its shifts `x^{a_i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeModule {
    shifts: Vec<Monomial>,
}

impl FreeModule {
    pub fn new(shifts: Vec<Monomial>) -> Self {
        Self { shifts }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[Monomial] {
        &self.shifts
    }

    pub fn shift(&self, i: usize) -> &Monomial {
        &self.shifts[i]
    }

    /// Basis indices whose shift divides `degree`, i.e. the basis of the
    /// degree-`degree` strand.
    pub fn present_in(&self, degree: &Monomial) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.shifts[i].divides(degree))
            .collect()
    }
}

/// A multigraded map of free modules given by its monomial matrix expression.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedMap<F> {
    source: FreeModule,
    target: FreeModule,
    matrix: SparseMatrix<F>,
}

impl<F: Field> GradedMap<F> {
    /// Validates shape and degree compatibility: a nonzero `λ_{ji}` needs
    /// `x^{b_j} | x^{a_i}`.
    pub fn new(source: FreeModule, target: FreeModule, matrix: SparseMatrix<F>) -> Result<Self> {
        if matrix.nrows() != target.rank() || matrix.ncols() != source.rank() {
            return Err(Error::DegreeMismatch(format!(
                "matrix is {}x{} but map is rank {} -> rank {}",
                matrix.nrows(),
                matrix.ncols(),
                source.rank(),
                target.rank()
            )));
        }
        for (r, c, _) in matrix.iter() {
            if !target.shift(r).divides(source.shift(c)) {
                return Err(Error::DegreeMismatch(format!(
                    "entry ({r}, {c}): target shift {:?} does not divide source shift {:?}",
                    target.shift(r).exponents(),
                    source.shift(c).exponents()
                )));
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: FreeModule, target: FreeModule, matrix: SparseMatrix<F>) -> Self {
        debug_assert!(Self::new(source.clone(), target.clone(), matrix.clone()).is_ok());
        Self { source, target, matrix }
    }

    pub fn from_triplets(
        source: FreeModule,
        target: FreeModule,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self> {
        let m = SparseMatrix::from_triplets(target.rank(), source.rank(), triplets);
        Self::new(source, target, m)
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let m = SparseMatrix::zeros(target.rank(), source.rank());
        Self { source, target, matrix: m }
    }

    pub fn identity(module: FreeModule) -> Self {
        let m = SparseMatrix::identity(module.rank());
        Self {
            source: module.clone(),
            target: module,
            matrix: m,
        }
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix<F> {
        &self.matrix
    }

    /// The monomial `x^{a_i - b_j}` carried by entry `(row, col)`.
    pub fn entry_monomial(&self, row: usize, col: usize) -> Monomial {
        self.source.shift(col).div(self.target.shift(row))
    }

    /// Nonzero entries whose monomial part is `1`.
    pub fn unit_entries(&self) -> impl Iterator<Item = (usize, usize, &F)> + '_ {
        self.matrix
            .iter()
            .filter(move |(r, c, _)| self.source.shift(*c) == self.target.shift(*r))
    }

    pub fn is_minimal(&self) -> bool {
        self.unit_entries().next().is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &GradedMap<F>) -> Result<GradedMap<F>> {
        if inner.target != self.source {
            return Err(Error::DegreeMismatch("composition of incompatible maps".into()));
        }
        Ok(GradedMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix),
        })
    }

    pub fn scaled(&self, factor: &F) -> GradedMap<F> {
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.scaled(factor),
        }
    }

    /// Replaces one scalar; used to build mutated fixtures.
    pub fn with_entry(mut self, row: usize, col: usize, value: F) -> GradedMap<F> {
        self.matrix.set(row, col, value);
        self
    }
}

/// `0 → F_p → ... → F_1 → F_0 → 0`, with `differential(i): F_i → F_{i-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<F> {
    ring: RingDescriptor,
    modules: Vec<FreeModule>,
    differentials: Vec<GradedMap<F>>,
}

impl<F: Field> ChainComplex<F> {
    /// Builds a complex and checks that consecutive differentials compose to
    /// zero.
    pub fn new(ring: RingDescriptor, modules: Vec<FreeModule>, differentials: Vec<GradedMap<F>>) -> Result<Self> {
        let c = Self::new_unchecked(ring, modules, differentials)?;
        if let Some(i) = c.first_nonzero_square() {
            return Err(Error::NotAComplex(format!("d_{} ∘ d_{} != 0", i - 1, i)));
        }
        Ok(c)
    }

    /// Builds a sequence of maps without the `d² = 0` check (only shapes and
    /// shifts are validated). Useful for feeding corrupted complexes to
    /// [`verify_resolution`].
    pub fn new_unchecked(
        ring: RingDescriptor,
        modules: Vec<FreeModule>,
        differentials: Vec<GradedMap<F>>,
    ) -> Result<Self> {
        if modules.is_empty() {
            return Err(Error::InvalidArgument("a complex needs at least F_0".into()));
        }
        if differentials.len() + 1 != modules.len() {
            return Err(Error::InvalidArgument(format!(
                "{} modules need {} differentials, got {}",
                modules.len(),
                modules.len() - 1,
                differentials.len()
            )));
        }
        for m in &modules {
            for s in m.shifts() {
                ring.check(s)?;
            }
        }
        for (k, d) in differentials.iter().enumerate() {
            if d.source != modules[k + 1] || d.target != modules[k] {
                return Err(Error::InvalidArgument(format!("differential {} has wrong source/target", k + 1)));
            }
        }
        Ok(Self { ring, modules, differentials })
    }

    /// The rank-one free module `S` in homological degree 0.
    pub fn unit(ring: RingDescriptor) -> Self {
        let one = ring.one();
        Self {
            ring,
            modules: vec![FreeModule::new(vec![one])],
            differentials: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingDescriptor {
        &self.ring
    }

    /// Highest homological degree `p` (the complex may still have zero
    /// modules at the top).
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    /// `F_i`, or `None` above the top.
    pub fn module(&self, i: usize) -> Option<&FreeModule> {
        self.modules.get(i)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.modules.get(i).map_or(0, FreeModule::rank)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    /// `d_i: F_i → F_{i-1}` for `1 <= i <= p`.
    pub fn differential(&self, i: usize) -> Option<&GradedMap<F>> {
        if i == 0 {
            None
        } else {
            self.differentials.get(i - 1)
        }
    }

    pub fn differentials(&self) -> &[GradedMap<F>] {
        &self.differentials
    }

    /// The first `i` with `d_{i-1} ∘ d_i != 0`.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (2..=self.length()).find(|&i| {
            let d = self.differential(i).unwrap();
            let e = self.differential(i - 1).unwrap();
            !e.matrix.mul(&d.matrix).is_zero()
        })
    }

    /// No differential has a unit entry, i.e. `d(F) ⊆ m F`.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(GradedMap::is_minimal)
    }

    /// Drops trailing zero modules.
    pub fn trimmed(mut self) -> Self {
        while self.modules.len() > 1 && self.modules.last().unwrap().rank() == 0 {
            self.modules.pop();
            self.differentials.pop();
        }
        self
    }

    /// Multigraded Betti table read off the shifts; meaningful for minimal
    /// complexes.
    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::new(self.ring.clone());
        for (i, m) in self.modules.iter().enumerate() {
            for s in m.shifts() {
                t.add(i, s.clone(), 1);
            }
        }
        t
    }

    /// `dim H_i` of the degree-`degree` strand for `i = 0..=p`, without
    /// augmentation.
    pub fn homology_in_degree(&self, degree: &Monomial) -> Vec<usize> {
        let present: Vec<Vec<usize>> = self.modules.iter().map(|m| m.present_in(degree)).collect();
        let ranks: Vec<usize> = (1..=self.length())
            .map(|i| {
                self.differential(i)
                    .unwrap()
                    .matrix
                    .rank_of(&present[i - 1], &present[i])
            })
            .collect();
        (0..=self.length())
            .map(|i| {
                let out = if i >= 1 { ranks[i - 1] } else { 0 };
                let inc = ranks.get(i).copied().unwrap_or(0);
                present[i].len() - out - inc
            })
            .collect()
    }

    /// Direct sum, degree by degree, in the given order; all summands share
    /// the ring.
    pub fn direct_sum(ring: RingDescriptor, summands: &[&ChainComplex<F>]) -> Result<Self> {
        let len = summands.iter().map(|c| c.length()).max().unwrap_or(0);
        let mut modules = Vec::with_capacity(len + 1);
        for i in 0..=len {
            let shifts = summands
                .iter()
                .flat_map(|c| c.module(i).map(|m| m.shifts().to_vec()).unwrap_or_default())
                .collect();
            modules.push(FreeModule::new(shifts));
        }
        let mut differentials = Vec::with_capacity(len);
        for i in 1..=len {
            let mut triplets = Vec::new();
            let (mut row_off, mut col_off) = (0, 0);
            for c in summands {
                if let Some(d) = c.differential(i) {
                    triplets.extend(d.matrix.iter().map(|(r, k, v)| (r + row_off, k + col_off, v.clone())));
                }
                row_off += c.rank(i - 1);
                col_off += c.rank(i);
            }
            let m = SparseMatrix::from_triplets(modules[i - 1].rank(), modules[i].rank(), triplets);
            differentials.push(GradedMap::new_unchecked(modules[i].clone(), modules[i - 1].clone(), m));
        }
        Self::new(ring, modules, differentials)
    }

    /// JSON form: shifts as exponent lists, entries as
    /// `(row, col, λ, exponent-delta)`.
    pub fn to_json(&self) -> serde_json::Value {
        let modules: Vec<Vec<Vec<u32>>> = self
            .modules
            .iter()
            .map(|m| m.shifts().iter().map(|s| s.exponents().to_vec()).collect())
            .collect();
        let differentials: Vec<serde_json::Value> = self
            .differentials
            .iter()
            .enumerate()
            .map(|(k, d)| {
                let entries: Vec<serde_json::Value> = d
                    .matrix
                    .iter()
                    .map(|(r, c, v)| {
                        serde_json::json!([r, c, v.to_string(), d.entry_monomial(r, c).exponents()])
                    })
                    .collect();
                serde_json::json!({ "from": k + 1, "to": k, "entries": entries })
            })
            .collect();
        serde_json::json!({
            "ring": self.ring.names(),
            "modules": modules,
            "differentials": differentials,
        })
    }
}

/// A degree-preserving map of complexes, one graded map per homological
/// degree of the source.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<F> {
    components: Vec<GradedMap<F>>,
}

impl<F: Field> ChainMap<F> {
    pub fn new(components: Vec<GradedMap<F>>) -> Self {
        Self { components }
    }

    pub fn components(&self) -> &[GradedMap<F>] {
        &self.components
    }

    pub fn component(&self, s: usize) -> Option<&GradedMap<F>> {
        self.components.get(s)
    }

    /// `∂' φ_s = φ_{s-1} ∂` for every `s`, exactly.
    pub fn commutes_with(&self, source: &ChainComplex<F>, target: &ChainComplex<F>) -> bool {
        self.first_noncommuting_square(source, target).is_none()
    }

    /// The first homological degree `s` where the square fails to commute.
    pub fn first_noncommuting_square(&self, source: &ChainComplex<F>, target: &ChainComplex<F>) -> Option<usize> {
        if self.components.len() != source.length() + 1 {
            return Some(0);
        }
        for (s, phi) in self.components.iter().enumerate() {
            if phi.source() != source.module(s).unwrap() {
                return Some(s);
            }
            let expected_target = target.module(s).cloned().unwrap_or_default();
            if *phi.target() != expected_target {
                return Some(s);
            }
        }
        for s in 1..=source.length() {
            let phi_s = &self.components[s];
            let phi_prev = &self.components[s - 1];
            let d = source.differential(s).unwrap();
            let lhs = phi_prev.matrix.mul(&d.matrix);
            let rhs = match target.differential(s) {
                Some(e) => e.matrix.mul(&phi_s.matrix),
                None => SparseMatrix::zeros(lhs.nrows(), lhs.ncols()),
            };
            if lhs != rhs {
                return Some(s);
            }
        }
        None
    }

    /// `H_0` is the inclusion of the ideals generated by the shifts: the
    /// scalars of every column of `φ_0` sum to 1.
    pub fn lifts_inclusion(&self) -> bool {
        let Some(phi) = self.components.first() else {
            return true;
        };
        (0..phi.matrix.ncols()).all(|c| {
            let total = phi.matrix.col(c).iter().fold(F::zero(), |acc, (_, v)| acc + v.clone());
            total.is_one()
        })
    }

    /// Every component lands in `m · target`.
    pub fn is_minimal(&self) -> bool {
        self.components.iter().all(GradedMap::is_minimal)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &ChainMap<F>) -> Result<ChainMap<F>> {
        let components = inner
            .components
            .iter()
            .enumerate()
            .map(|(s, phi)| match self.components.get(s) {
                Some(outer) => outer.after(phi),
                None => Ok(GradedMap::zero(phi.source().clone(), FreeModule::default())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainMap { components })
    }
}

/// The Taylor resolution of `I`: basis `e_T` for nonempty `T ⊆ G(I)` in
/// homological degree `|T| - 1`, shift `lcm(T)`, with
/// `∂ e_T = Σ_{u ∈ T} (-1)^{pos(u, T)} (lcm T / lcm(T \ u)) e_{T \ u}`.
pub fn taylor_complex<F: Field>(ideal: &MonomialIdeal) -> Result<ChainComplex<F>> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let gens = ideal.gens();
    let m = gens.len();
    if m > 20 {
        return Err(Error::CapExceeded {
            what: "Taylor complex generators".into(),
            got: m,
            cap: 20,
        });
    }
    // subsets by size, each as a sorted index list, in lex order
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m + 1];
    for mask in 1u32..(1u32 << m) {
        let subset: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        by_size[subset.len()].push(subset);
    }
    for level in &mut by_size {
        level.sort();
    }
    let lcm_of = |t: &[usize]| {
        t.iter()
            .fold(ideal.ring().one(), |acc, &i| acc.lcm(&gens[i]))
    };
    let modules: Vec<FreeModule> = (1..=m)
        .map(|k| FreeModule::new(by_size[k].iter().map(|t| lcm_of(t)).collect()))
        .collect();
    let mut differentials = Vec::with_capacity(m - 1);
    for k in 2..=m {
        let index: BTreeMap<&Vec<usize>, usize> =
            by_size[k - 1].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut triplets = Vec::new();
        for (col, t) in by_size[k].iter().enumerate() {
            for pos in 0..t.len() {
                let mut face = t.clone();
                face.remove(pos);
                triplets.push((index[&face], col, F::sign(pos % 2 == 1)));
            }
        }
        differentials.push(GradedMap::from_triplets(
            modules[k - 1].clone(),
            modules[k - 2].clone(),
            triplets,
        )?);
    }
    ChainComplex::new(ideal.ring().clone(), modules, differentials)
}

/// Basis layout of `C ⊗ D`: in degree `m`, blocks `(i, m - i)` for
/// increasing `i`, each block ordered by `(c, d)` lexicographically.
struct TensorLayout {
    // offsets[m] = list of (i, j, offset)
    offsets: Vec<Vec<(usize, usize, usize)>>,
    ranks: Vec<usize>,
}

impl TensorLayout {
    fn new(c_ranks: &[usize], d_ranks: &[usize]) -> Self {
        let p = c_ranks.len() - 1;
        let q = d_ranks.len() - 1;
        let mut offsets = Vec::new();
        let mut ranks = Vec::new();
        for m in 0..=p + q {
            let mut blocks = Vec::new();
            let mut off = 0;
            for i in 0..=m.min(p) {
                let j = m - i;
                if j > q {
                    continue;
                }
                blocks.push((i, j, off));
                off += c_ranks[i] * d_ranks[j];
            }
            offsets.push(blocks);
            ranks.push(off);
        }
        Self { offsets, ranks }
    }

    fn offset(&self, i: usize, j: usize) -> Option<usize> {
        self.offsets
            .get(i + j)?
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, o)| *o)
    }
}

/// `C ⊗ D` with differential `∂_C ⊗ 1 + (-1)^i 1 ⊗ ∂_D` on `C_i ⊗ D_j`.
pub fn tensor<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>) -> Result<ChainComplex<F>> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch("tensor of complexes over different rings".into()));
    }
    let layout = TensorLayout::new(&c.ranks(), &d.ranks());
    let modules: Vec<FreeModule> = layout
        .offsets
        .iter()
        .map(|blocks| {
            let mut shifts = Vec::new();
            for &(i, j, _) in blocks {
                for a in c.modules[i].shifts() {
                    for b in d.modules[j].shifts() {
                        shifts.push(a.mul(b));
                    }
                }
            }
            FreeModule::new(shifts)
        })
        .collect();
    let mut differentials = Vec::new();
    for m in 1..modules.len() {
        let mut triplets = Vec::new();
        for &(i, j, off) in &layout.offsets[m] {
            let dj = d.rank(j);
            if let Some(dc) = c.differential(i) {
                let tgt = layout.offset(i - 1, j).expect("block exists");
                for (r, k, v) in dc.matrix.iter() {
                    for y in 0..dj {
                        triplets.push((tgt + r * dj + y, off + k * dj + y, v.clone()));
                    }
                }
            }
            if let Some(dd) = d.differential(j) {
                let tgt = layout.offset(i, j - 1).expect("block exists");
                let dj1 = d.rank(j - 1);
                let sign = F::sign(i % 2 == 1);
                for x in 0..c.rank(i) {
                    for (r, k, v) in dd.matrix.iter() {
                        triplets.push((tgt + x * dj1 + r, off + x * dj + k, sign.clone() * v.clone()));
                    }
                }
            }
        }
        let mat = SparseMatrix::from_triplets(layout.ranks[m - 1], layout.ranks[m], triplets);
        differentials.push(GradedMap::new(modules[m].clone(), modules[m - 1].clone(), mat)?);
    }
    ChainComplex::new(c.ring.clone(), modules, differentials)
}

/// `φ ⊗ ψ: C ⊗ D → C' ⊗ D'`, laid out consistently with [`tensor`].
pub fn tensor_maps<F: Field>(
    phi: &ChainMap<F>,
    psi: &ChainMap<F>,
    source: (&ChainComplex<F>, &ChainComplex<F>),
    target: (&ChainComplex<F>, &ChainComplex<F>),
) -> Result<ChainMap<F>> {
    let (c, d) = source;
    let (c2, d2) = target;
    let src_layout = TensorLayout::new(&c.ranks(), &d.ranks());
    let tgt_layout = TensorLayout::new(&c2.ranks(), &d2.ranks());
    let src_cx = tensor(c, d)?;
    let tgt_cx = tensor(c2, d2)?;
    let mut components = Vec::new();
    for m in 0..=src_cx.length() {
        let src_mod = src_cx.modules[m].clone();
        let tgt_mod = tgt_cx.module(m).cloned().unwrap_or_default();
        let mut triplets = Vec::new();
        for &(i, j, off) in &src_layout.offsets[m] {
            let (Some(pi), Some(pj)) = (phi.component(i), psi.component(j)) else {
                continue;
            };
            let Some(toff) = tgt_layout.offset(i, j) else {
                continue;
            };
            let dj = d.rank(j);
            let dj2 = d2.rank(j);
            for (r1, k1, v1) in pi.matrix.iter() {
                for (r2, k2, v2) in pj.matrix.iter() {
                    triplets.push((toff + r1 * dj2 + r2, off + k1 * dj + k2, v1.clone() * v2.clone()));
                }
            }
        }
        let mat = SparseMatrix::from_triplets(tgt_mod.rank(), src_mod.rank(), triplets);
        components.push(GradedMap::new(src_mod, tgt_mod, mat)?);
    }
    Ok(ChainMap::new(components))
}

/// Cancels unit entries until none is left, producing a minimal complex with
/// the same homology. The pivot is the unit entry with the smallest
/// `(row, column)` in the lowest differential that has one.
pub fn minimize<F: Field>(complex: &ChainComplex<F>) -> Result<ChainComplex<F>> {
    if let Some(i) = complex.first_nonzero_square() {
        return Err(Error::NotAComplex(format!("d_{} ∘ d_{} != 0", i - 1, i)));
    }
    // Spot check: with every basis element present, positive homology must
    // vanish.
    let top = complex
        .modules
        .iter()
        .flat_map(|m| m.shifts())
        .fold(complex.ring.one(), |acc, s| acc.lcm(s));
    let h = complex.homology_in_degree(&top);
    if let Some(i) = (1..h.len()).find(|&i| h[i] != 0) {
        return Err(Error::NotAcyclic(format!("H_{i} != 0 in degree {:?}", top.exponents())));
    }

    let p = complex.length();
    let mut alive: Vec<Vec<bool>> = complex.modules.iter().map(|m| vec![true; m.rank()]).collect();
    // cols[i-1][c] = column c of d_i, as row -> value
    let mut cols: Vec<Vec<BTreeMap<usize, F>>> = complex
        .differentials
        .iter()
        .map(|d| {
            (0..d.matrix.ncols())
                .map(|c| d.matrix.col(c).iter().cloned().collect())
                .collect()
        })
        .collect();
    let shifts: Vec<&[Monomial]> = complex.modules.iter().map(|m| m.shifts()).collect();

    loop {
        let mut pivot: Option<(usize, usize, usize)> = None;
        'search: for i in 1..=p {
            let mut best: Option<(usize, usize)> = None;
            for (c, col) in cols[i - 1].iter().enumerate() {
                for (r, v) in col {
                    if !v.is_zero() && shifts[i][c] == shifts[i - 1][*r] && best.map_or(true, |b| (*r, c) < b) {
                        best = Some((*r, c));
                    }
                }
            }
            if let Some((r, c)) = best {
                pivot = Some((i, r, c));
                break 'search;
            }
        }
        let Some((i, r, c)) = pivot else { break };

        let d = &mut cols[i - 1];
        let e = d[c][&r].clone();
        let col_c: Vec<(usize, F)> = d[c].iter().filter(|(k, _)| **k != r).map(|(k, v)| (*k, v.clone())).collect();
        let row_r: Vec<(usize, F)> = d
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != c)
            .filter_map(|(k, col)| col.get(&r).map(|v| (k, v.clone())))
            .collect();
        for (c2, gamma) in &row_r {
            for (r2, delta) in &col_c {
                let shift = delta.clone() * gamma.clone() / e.clone();
                let entry = d[*c2].entry(*r2).or_insert_with(F::zero);
                *entry = entry.clone() - shift;
                if entry.is_zero() {
                    d[*c2].remove(r2);
                }
            }
        }
        d[c].clear();
        for col in d.iter_mut() {
            col.remove(&r);
        }
        if i < p {
            for col in cols[i].iter_mut() {
                col.remove(&c);
            }
        }
        if i >= 2 {
            cols[i - 2][r].clear();
        }
        alive[i][c] = false;
        alive[i - 1][r] = false;
    }

    // Reindex the survivors.
    let new_index: Vec<Vec<Option<usize>>> = alive
        .iter()
        .map(|flags| {
            let mut next = 0;
            flags
                .iter()
                .map(|&a| {
                    a.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        })
        .collect();
    let modules: Vec<FreeModule> = (0..=p)
        .map(|i| {
            FreeModule::new(
                shifts[i]
                    .iter()
                    .zip(&alive[i])
                    .filter(|(_, a)| **a)
                    .map(|(s, _)| s.clone())
                    .collect(),
            )
        })
        .collect();
    let mut differentials = Vec::with_capacity(p);
    for i in 1..=p {
        let mut triplets = Vec::new();
        for (c, col) in cols[i - 1].iter().enumerate() {
            let Some(nc) = new_index[i][c] else { continue };
            for (r, v) in col {
                if let Some(nr) = new_index[i - 1][*r] {
                    triplets.push((nr, nc, v.clone()));
                }
            }
        }
        let mat = SparseMatrix::from_triplets(modules[i - 1].rank(), modules[i].rank(), triplets);
        differentials.push(GradedMap::new(modules[i].clone(), modules[i - 1].clone(), mat)?);
    }
    Ok(ChainComplex::new(complex.ring.clone(), modules, differentials)?.trimmed())
}

/// A degree where positive (augmented) homology did not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyFailure {
    pub degree: Vec<u32>,
    pub homological_degree: usize,
    pub dimension: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionReport {
    /// First `i` with `d_{i-1} d_i != 0`, where `d_0 = ε: F_0 → S` is the
    /// augmentation.
    pub nonzero_square: Option<usize>,
    /// Multidegree of the first basis element of `F_i` where that composite
    /// is nonzero.
    pub nonzero_square_degree: Option<Vec<u32>>,
    /// The shifts of `F_0` generate the target ideal.
    pub generates_ideal: bool,
    pub degrees_checked: usize,
    pub failures: Vec<HomologyFailure>,
}

impl ResolutionReport {
    pub fn passed(&self) -> bool {
        self.nonzero_square.is_none() && self.generates_ideal && self.failures.is_empty()
    }
}

/// The lcm-closure of `shifts` restricted to total degree `<= bound`,
/// including `1`. The homology of a free complex in degree `d` only depends
/// on which shifts divide `d`, hence equals the homology in degree
/// `lcm{shifts dividing d}`; so these degrees represent every multidegree of
/// total degree `<= bound`.
pub fn lcm_closure(one: Monomial, shifts: &[Monomial], bound: u64) -> Vec<Monomial> {
    let distinct: Vec<Monomial> = shifts
        .iter()
        .filter(|s| s.total_degree() <= bound)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut seen: HashSet<Monomial> = HashSet::new();
    seen.insert(one.clone());
    let mut frontier = vec![one];
    while let Some(x) = frontier.pop() {
        for s in &distinct {
            let l = x.lcm(s);
            if l.total_degree() <= bound && seen.insert(l.clone()) {
                frontier.push(l);
            }
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort();
    out
}

/// Checks that `complex` resolves `ideal`: `d² = 0`, the shifts of `F_0`
/// generate `ideal`, and the augmented complex `... → F_0 → S` is exact at
/// `F_0, F_1, ...` in every multidegree of total degree `<= degree_bound`.
pub fn verify_resolution<F: Field>(
    complex: &ChainComplex<F>,
    ideal: &MonomialIdeal,
    degree_bound: u64,
) -> ResolutionReport {
    let bad_augmentation_col = complex.differential(1).and_then(|d| {
        (0..d.matrix.ncols())
            .find(|&c| !d.matrix.col(c).iter().fold(F::zero(), |acc, (_, v)| acc + v.clone()).is_zero())
    });
    let (nonzero_square, nonzero_square_degree) = match bad_augmentation_col {
        Some(c) => (Some(1), Some(complex.modules[1].shift(c).exponents().to_vec())),
        None => match complex.first_nonzero_square() {
            Some(i) => {
                let prod = complex.differential(i - 1).unwrap().matrix.mul(&complex.differential(i).unwrap().matrix);
                let c = (0..prod.ncols()).find(|&c| !prod.col(c).is_empty()).unwrap();
                (Some(i), Some(complex.modules[i].shift(c).exponents().to_vec()))
            }
            None => (None, None),
        },
    };
    let generates_ideal = complex.ring == *ideal.ring()
        && MonomialIdeal::new(complex.ring.clone(), complex.modules[0].shifts().to_vec())
            .map_or(false, |j| j == *ideal);
    let all_shifts: Vec<Monomial> = complex.modules.iter().flat_map(|m| m.shifts().iter().cloned()).collect();
    let degrees = lcm_closure(complex.ring.one(), &all_shifts, degree_bound);
    let p = complex.length();
    let modular: Option<Vec<ModPrimeMatrix>> = complex.differentials.iter().map(|d| d.matrix.mod_prime()).collect();
    let mut failures: Vec<HomologyFailure> = degrees
        .par_iter()
        .flat_map_iter(|deg| {
            let present: Vec<Vec<usize>> = complex.modules.iter().map(|m| m.present_in(deg)).collect();
            // rank of the augmentation F_0 → S in this degree
            let augmentation = usize::from(!present[0].is_empty());
            let rank_with = |rank: &dyn Fn(usize, &[usize], &[usize]) -> usize| {
                let mut ranks = vec![augmentation];
                for i in 1..=p {
                    ranks.push(rank(i, &present[i - 1], &present[i]));
                }
                ranks
            };
            let exact_with = |ranks: &[usize]| {
                (0..=p).all(|i| present[i].len() == ranks[i] + ranks.get(i + 1).copied().unwrap_or(0))
            };
            // Ranks mod a prime never exceed the true ranks, so exactness
            // mod the prime implies exactness; otherwise recompute exactly.
            let exact = |i: usize, r: &[usize], c: &[usize]| complex.differential(i).unwrap().matrix.rank_of(r, c);
            let ranks = match &modular {
                Some(m) => {
                    let ranks = rank_with(&|i, r, c| m[i - 1].rank_of(r, c));
                    if exact_with(&ranks) {
                        ranks
                    } else {
                        rank_with(&exact)
                    }
                }
                None => rank_with(&exact),
            };
            (0..=p)
                .filter_map(|i| {
                    let inc = ranks.get(i + 1).copied().unwrap_or(0);
                    let dim = present[i].len() as isize - ranks[i] as isize - inc as isize;
                    (dim != 0).then(|| HomologyFailure {
                        degree: deg.exponents().to_vec(),
                        homological_degree: i,
                        dimension: dim.unsigned_abs(),
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    failures.sort_by(|a, b| (a.degree.iter().sum::<u32>(), &a.degree).cmp(&(b.degree.iter().sum::<u32>(), &b.degree)));
    ResolutionReport {
        nonzero_square,
        nonzero_square_degree,
        generates_ideal,
        degrees_checked: degrees.len(),
        failures,
    }
}
