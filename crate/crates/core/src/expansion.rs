//! The expansion operator `I ↦ I*` and its action on free modules, maps
//! and complexes.
//!
//! For a tuple `(i_1, ..., i_n)` each variable `x_j` is replaced by the block
//! `P_j = (x_{j,1}, ..., x_{j,i_j})` of a flat ring whose variables are ordered
//! block by block.

use std::ops::Range;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ChainComplex, FreeModule, GradedMap, HomologyFailure};
use crate::error::{Error, Result};
use crate::field::{Field, SparseMatrix};
use crate::ideal::{MonomialIdeal, PrimaryComponent, VarSet};
use crate::monomial::{monomials_of_degree, monomials_up_to_degree, Monomial, RingDescriptor};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExpansionTuple {
    entries: Vec<usize>,
}

impl ExpansionTuple {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidTuple("empty tuple".into()));
        }
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::InvalidTuple(format!("entry {} is zero", pos + 1)));
        }
        Ok(Self { entries })
    }

    pub fn ones(n: usize) -> Self {
        Self { entries: vec![1; n] }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, j: usize) -> usize {
        self.entries[j]
    }

    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(|&e| e == 1)
    }
}

/// The flat ring `S*` together with its block structure over `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedRing {
    source: RingDescriptor,
    tuple: ExpansionTuple,
    flat: RingDescriptor,
    offsets: Vec<usize>,
}

impl ExpandedRing {
    /// Flat variables are named `{x}_{k}` after the source variable `x`.
    pub fn new(source: RingDescriptor, tuple: ExpansionTuple) -> Result<Self> {
        if tuple.len() != source.nvars() {
            return Err(Error::InvalidTuple(format!(
                "tuple has {} entries but the ring has {} variables",
                tuple.len(),
                source.nvars()
            )));
        }
        let mut names = Vec::with_capacity(tuple.total());
        let mut offsets = Vec::with_capacity(tuple.len() + 1);
        for (j, &ij) in tuple.entries().iter().enumerate() {
            offsets.push(names.len());
            for k in 1..=ij {
                names.push(format!("{}_{}", source.name(j), k));
            }
        }
        offsets.push(names.len());
        let flat = RingDescriptor::new(names)?;
        Ok(Self {
            source,
            tuple,
            flat,
            offsets,
        })
    }

    pub fn source(&self) -> &RingDescriptor {
        &self.source
    }

    pub fn tuple(&self) -> &ExpansionTuple {
        &self.tuple
    }

    pub fn flat(&self) -> &RingDescriptor {
        &self.flat
    }

    /// Flat indices of block `j` (0-based).
    pub fn block(&self, j: usize) -> Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    /// Flat index of `x_{j,k}` with 0-based `j` and `k`.
    pub fn var_index(&self, j: usize, k: usize) -> usize {
        assert!(k < self.tuple.entry(j), "x_{{{j},{k}}} outside its block");
        self.offsets[j] + k
    }

    /// `(j, k)` of a flat index, both 0-based.
    pub fn block_of(&self, flat_index: usize) -> (usize, usize) {
        let j = self.offsets.partition_point(|&o| o <= flat_index) - 1;
        (j, flat_index - self.offsets[j])
    }

    /// Flat monomials of degree `d` in block `j`, in descending lex.
    pub fn block_monomials(&self, j: usize, d: u32) -> Vec<Monomial> {
        let range = self.block(j);
        monomials_of_degree(range.len(), d)
            .into_iter()
            .map(|local| self.embed_block(j, &local))
            .collect()
    }

    /// Places a monomial in the block-local variables of `j` into `S*`.
    pub fn embed_block(&self, j: usize, local: &Monomial) -> Monomial {
        let mut exps = vec![0; self.flat.nvars()];
        exps[self.block(j)].copy_from_slice(local.exponents());
        Monomial::new(exps)
    }

    /// The block-local part of a flat monomial.
    pub fn restrict_to_block(&self, j: usize, u: &Monomial) -> Monomial {
        Monomial::new(u.exponents()[self.block(j)].to_vec())
    }

    /// `(x^a)* = ∏_j P_j^{a(j)}`.
    pub fn expand_principal(&self, a: &Monomial) -> MonomialIdeal {
        let mut gens = vec![self.flat.one()];
        for j in 0..self.source.nvars() {
            let e = a.exponent(j);
            if e == 0 {
                continue;
            }
            let block = self.block_monomials(j, e);
            gens = gens
                .iter()
                .flat_map(|g| block.iter().map(move |b| g.mul(b)))
                .collect();
        }
        MonomialIdeal::from_unchecked(self.flat.clone(), gens)
    }

    /// `I* = Σ_{u ∈ G(I)} (u)*`.
    pub fn expand_ideal(&self, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        if *ideal.ring() != self.source {
            return Err(Error::RingMismatch("ideal is not over the source ring".into()));
        }
        Ok(self.expand_generators(ideal.gens()))
    }

    /// Expansion of the ideal generated by an arbitrary (possibly redundant)
    /// list of monomials.
    pub fn expand_generators(&self, gens: &[Monomial]) -> MonomialIdeal {
        let all: Vec<Monomial> = gens
            .iter()
            .flat_map(|g| self.expand_principal(g).gens().to_vec())
            .collect();
        MonomialIdeal::from_unchecked(self.flat.clone(), all)
    }

    /// `π`, which sends every `x_{j,k}` to `x_j`.
    pub fn contract(&self, u: &Monomial) -> Monomial {
        Monomial::new(self.fold_multidegree(u.exponents()))
    }

    /// `d_j = d_{j,1} + ... + d_{j,i_j}`.
    pub fn fold_multidegree(&self, flat: &[u32]) -> Vec<u32> {
        assert_eq!(flat.len(), self.flat.nvars(), "flat multidegree has the wrong length");
        (0..self.source.nvars())
            .map(|j| flat[self.block(j)].iter().sum())
            .collect()
    }

    /// `P*` for a monomial prime `P`, as a set of flat indices.
    pub fn expand_prime(&self, prime: &VarSet) -> VarSet {
        prime.iter().flat_map(|&j| self.block(j)).collect()
    }

    pub fn expand_component(&self, c: &PrimaryComponent) -> PrimaryComponent {
        PrimaryComponent {
            component: self.expand_generators(c.component.gens()),
            radical: self.expand_prime(&c.radical),
        }
    }

    /// `Σ_{j ∈ P} i_j` minimized over the minimal primes `P` of `I`, which is
    /// the height of `I*`.
    pub fn expanded_height(&self, ideal: &MonomialIdeal) -> Result<usize> {
        let mins = ideal.minimal_primes()?;
        Ok(mins
            .iter()
            .map(|p| p.iter().map(|&j| self.tuple.entry(j)).sum())
            .min()
            .expect("proper nonzero ideals have a minimal prime"))
    }

    pub fn expand_free_module(&self, module: &FreeModule) -> ExpandedFreeModule {
        ExpandedFreeModule {
            shifts: module.shifts().to_vec(),
            components: module.shifts().iter().map(|a| self.expand_principal(a)).collect(),
        }
    }

    /// `α*`: the same scalars `λ_{ji}`, now acting as inclusions
    /// `(x^{a_i})* → (x^{b_j})*`.
    pub fn expand_map<F: Field>(&self, map: &GradedMap<F>) -> Result<ExpandedMap<F>> {
        self.check_module(map.source())?;
        self.check_module(map.target())?;
        Ok(ExpandedMap {
            source: self.expand_free_module(map.source()),
            target: self.expand_free_module(map.target()),
            scalars: map.matrix().clone(),
        })
    }

    /// Builds `α*` from shift lists and `λ` triplets, rejecting nonzero
    /// scalars where the target shift does not divide the source shift.
    pub fn expand_monomial_matrix<F: Field>(
        &self,
        source_shifts: Vec<Monomial>,
        target_shifts: Vec<Monomial>,
        scalars: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<ExpandedMap<F>> {
        let map = GradedMap::from_triplets(FreeModule::new(source_shifts), FreeModule::new(target_shifts), scalars)?;
        self.expand_map(&map)
    }

    pub fn expand_complex<F: Field>(&self, complex: &ChainComplex<F>) -> Result<ExpandedComplex<F>> {
        if *complex.ring() != self.source {
            return Err(Error::RingMismatch("complex is not over the source ring".into()));
        }
        let modules = complex.modules().iter().map(|m| self.expand_free_module(m)).collect();
        let maps = complex
            .differentials()
            .iter()
            .map(|d| self.expand_map(d))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpandedComplex {
            ring: self.clone(),
            modules,
            maps,
        })
    }

    fn check_module(&self, m: &FreeModule) -> Result<()> {
        m.shifts().iter().try_for_each(|s| self.source.check(s))
    }
}

/// `F* = ⊕_i (x^{a_i})*`, kept as the source shifts plus the expanded
/// principal ideals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpandedFreeModule {
    pub shifts: Vec<Monomial>,
    pub components: Vec<MonomialIdeal>,
}

impl ExpandedFreeModule {
    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    /// Indices `i` with `x^{d*} ∈ (x^{a_i})*`, i.e. the summands whose
    /// degree-`d*` piece is one-dimensional.
    pub fn present_in(&self, flat_degree: &Monomial) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.components[i].contains(flat_degree))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedMap<F> {
    pub source: ExpandedFreeModule,
    pub target: ExpandedFreeModule,
    pub scalars: SparseMatrix<F>,
}

impl<F: Field> ExpandedMap<F> {
    pub fn identity(module: ExpandedFreeModule) -> Self {
        let scalars = SparseMatrix::identity(module.rank());
        Self {
            source: module.clone(),
            target: module,
            scalars,
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &ExpandedMap<F>) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::DegreeMismatch("composition of incompatible expanded maps".into()));
        }
        Ok(Self {
            source: inner.source.clone(),
            target: self.target.clone(),
            scalars: self.scalars.mul(&inner.scalars),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.scalars.is_zero()
    }

    /// The matrix of the map on degree-`d*` pieces, in the bases given by
    /// the present summands.
    pub fn in_degree(&self, flat_degree: &Monomial) -> SparseMatrix<F> {
        let rows = self.target.present_in(flat_degree);
        let cols = self.source.present_in(flat_degree);
        restrict(&self.scalars, &rows, &cols)
    }
}

fn restrict<F: Field>(m: &SparseMatrix<F>, rows: &[usize], cols: &[usize]) -> SparseMatrix<F> {
    let mut row_pos = vec![usize::MAX; m.nrows()];
    for (i, &r) in rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let triplets = cols.iter().enumerate().flat_map(|(j, &c)| {
        let row_pos = &row_pos;
        m.col(c)
            .iter()
            .filter(move |(r, _)| row_pos[*r] != usize::MAX)
            .map(move |(r, v)| (row_pos[*r], j, v.clone()))
    });
    SparseMatrix::from_triplets(rows.len(), cols.len(), triplets)
}

/// `F*` for a complex `F` over `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedComplex<F> {
    pub ring: ExpandedRing,
    pub modules: Vec<ExpandedFreeModule>,
    pub maps: Vec<ExpandedMap<F>>,
}

/// The degree-`d*` strand of `F*`: vector spaces `(F_i*)_{d*}` with the
/// restricted scalar matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeStrand<F> {
    pub dims: Vec<usize>,
    /// `maps[i - 1]: (F_i*)_{d*} → (F_{i-1}*)_{d*}`.
    pub maps: Vec<SparseMatrix<F>>,
}

impl<F: Field> DegreeStrand<F> {
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn composes_to_zero(&self) -> bool {
        self.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// `dim H_i` for `i = 0..=p`, without augmentation.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(SparseMatrix::rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let out = if i >= 1 { ranks[i - 1] } else { 0 };
                let inc = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - out - inc
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpandedReport {
    pub degrees_checked: usize,
    /// Degrees where `F*` is not exact at some `i >= 1`.
    pub failures: Vec<HomologyFailure>,
    /// Degrees where `dim H_0(F*)_{d*}` disagrees with `[x^{d*} ∈ I*]`.
    pub h0_mismatches: Vec<Vec<u32>>,
    /// Degrees where consecutive maps do not compose to zero.
    pub non_complex: Vec<Vec<u32>>,
}

impl ExpandedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.h0_mismatches.is_empty() && self.non_complex.is_empty()
    }
}

impl<F: Field> ExpandedComplex<F> {
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn strand(&self, flat_degree: &Monomial) -> DegreeStrand<F> {
        DegreeStrand {
            dims: self.modules.iter().map(|m| m.present_in(flat_degree).len()).collect(),
            maps: self.maps.iter().map(|m| m.in_degree(flat_degree)).collect(),
        }
    }

    /// Checks, in every flat multidegree of total degree `<= degree_bound`,
    /// that `F*` is exact in positive homological degrees and that `H_0(F*)`
    /// is one-dimensional exactly where `x^{d*}` lies in `expected_h0`.
    pub fn verify(&self, expected_h0: &MonomialIdeal, degree_bound: u32) -> ExpandedReport {
        let degrees = monomials_up_to_degree(self.ring.flat().nvars(), degree_bound);
        let results: Vec<(Vec<HomologyFailure>, bool, bool)> = degrees
            .par_iter()
            .map(|d| {
                let strand = self.strand(d);
                if strand.is_zero() {
                    return (Vec::new(), expected_h0.contains(d), true);
                }
                let h = strand.homology();
                let failures = h
                    .iter()
                    .enumerate()
                    .skip(1)
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| HomologyFailure {
                        degree: d.exponents().to_vec(),
                        homological_degree: i,
                        dimension: x,
                    })
                    .collect();
                let h0_matches = h[0] == usize::from(expected_h0.contains(d));
                (failures, !h0_matches, strand.composes_to_zero())
            })
            .collect();
        let mut report = ExpandedReport {
            degrees_checked: degrees.len(),
            failures: Vec::new(),
            h0_mismatches: Vec::new(),
            non_complex: Vec::new(),
        };
        for (d, (f, h0_bad, ok)) in degrees.iter().zip(results) {
            report.failures.extend(f);
            if h0_bad {
                report.h0_mismatches.push(d.exponents().to_vec());
            }
            if !ok {
                report.non_complex.push(d.exponents().to_vec());
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::taylor_complex;
    use crate::Q;
    use proptest::prelude::*;

    fn ring3() -> RingDescriptor {
        RingDescriptor::standard(3)
    }

    fn worked() -> (ExpandedRing, MonomialIdeal) {
        let r = ring3();
        let i = MonomialIdeal::new(
            r.clone(),
            vec![r.parse_monomial("x1*x2").unwrap(), r.parse_monomial("x3^2").unwrap()],
        )
        .unwrap();
        let e = ExpandedRing::new(r, ExpansionTuple::new(vec![1, 3, 2]).unwrap()).unwrap();
        (e, i)
    }

    fn flat(e: &ExpandedRing, s: &str) -> Monomial {
        e.flat().parse_monomial(s).unwrap()
    }

    #[test]
    fn tuple_validation() {
        assert!(ExpansionTuple::new(vec![1, 0]).is_err());
        assert!(ExpansionTuple::new(vec![]).is_err());
        assert!(ExpandedRing::new(ring3(), ExpansionTuple::new(vec![1, 2]).unwrap()).is_err());
    }

    #[test]
    fn flat_names_and_indices() {
        let (e, _) = worked();
        assert_eq!(e.flat().names(), &["x1_1", "x2_1", "x2_2", "x2_3", "x3_1", "x3_2"]);
        assert_eq!(e.var_index(1, 2), 3);
        assert_eq!(e.block_of(3), (1, 2));
        assert_eq!(e.block_of(0), (0, 0));
        assert_eq!(e.block_of(5), (2, 1));
    }

    #[test]
    fn principal_expansions() {
        let (e, _) = worked();
        let r = ring3();
        let x3sq = e.expand_principal(&r.parse_monomial("x3^2").unwrap());
        let expect: Vec<Monomial> = ["x3_1^2", "x3_1*x3_2", "x3_2^2"].iter().map(|s| flat(&e, s)).collect();
        assert_eq!(x3sq.gens(), &expect[..]);
        assert!(e.expand_principal(&r.one()).is_unit());
        let x1x2 = e.expand_principal(&r.parse_monomial("x1*x2").unwrap());
        let expect: Vec<Monomial> = ["x1_1*x2_1", "x1_1*x2_2", "x1_1*x2_3"].iter().map(|s| flat(&e, s)).collect();
        assert_eq!(x1x2.gens(), &expect[..]);
    }

    #[test]
    fn worked_example_expansion() {
        let (e, i) = worked();
        let star = e.expand_ideal(&i).unwrap();
        let expect: Vec<Monomial> = [
            "x1_1*x2_1",
            "x1_1*x2_2",
            "x1_1*x2_3",
            "x3_1^2",
            "x3_1*x3_2",
            "x3_2^2",
        ]
        .iter()
        .map(|s| flat(&e, s))
        .collect();
        assert_eq!(star.gens(), &expect[..]);
    }

    #[test]
    fn square_of_one_variable_in_two_copies() {
        let r = RingDescriptor::standard(1);
        let e = ExpandedRing::new(r.clone(), ExpansionTuple::new(vec![2]).unwrap()).unwrap();
        let i = MonomialIdeal::principal(r.clone(), r.parse_monomial("x1^2").unwrap()).unwrap();
        let star = e.expand_ideal(&i).unwrap();
        // every degree-2 monomial in two variables, found by brute force
        let brute: Vec<Monomial> = monomials_up_to_degree(2, 2)
            .into_iter()
            .filter(|m| m.total_degree() == 2)
            .collect();
        assert_eq!(star.gens().len(), brute.len());
        assert!(brute.iter().all(|m| star.gens().contains(m)));
    }

    #[test]
    fn identity_tuple_is_renaming() {
        let (_, i) = worked();
        let e = ExpandedRing::new(ring3(), ExpansionTuple::ones(3)).unwrap();
        let star = e.expand_ideal(&i).unwrap();
        assert_eq!(star.gens(), i.gens());
    }

    #[test]
    fn contraction() {
        let (e, _) = worked();
        assert_eq!(e.contract(&flat(&e, "x1_1*x2_3")), ring3().parse_monomial("x1*x2").unwrap());
        assert!(e.contract(&e.flat().one()).is_one());
        assert_eq!(e.fold_multidegree(&[0, 1, 0, 2, 1, 1]), vec![0, 3, 2]);
        assert_eq!(e.fold_multidegree(&[0; 6]), vec![0, 0, 0]);
        assert_eq!(e.fold_multidegree(&[1, 0, 0, 1, 0, 0]), vec![1, 1, 0]);
    }

    #[test]
    fn membership_transfer_on_worked_example() {
        let (e, i) = worked();
        let star = e.expand_ideal(&i).unwrap();
        for u in monomials_up_to_degree(6, 4) {
            assert_eq!(star.contains(&u), i.contains(&e.contract(&u)), "{u:?}");
        }
    }

    #[test]
    fn expanded_maps() {
        let (e, _) = worked();
        let r = ring3();
        let m = FreeModule::new(vec![r.parse_monomial("x1*x2").unwrap(), r.parse_monomial("x3^2").unwrap()]);
        let id = e.expand_map(&GradedMap::<Q>::identity(m.clone())).unwrap();
        assert_eq!(id, ExpandedMap::identity(e.expand_free_module(&m)));
        // λ must vanish where divisibility fails
        let bad = e.expand_monomial_matrix::<Q>(
            vec![r.parse_monomial("x1").unwrap()],
            vec![r.parse_monomial("x2").unwrap()],
            [(0, 0, Q::from_integer(1.into()))],
        );
        assert!(bad.is_err());
    }

    // two coprime generators, so the Taylor complex is the Koszul complex
    fn koszul(i: &MonomialIdeal) -> ChainComplex<Q> {
        taylor_complex(i).unwrap()
    }

    #[test]
    fn koszul_maps_compose_to_zero_after_expansion() {
        // S(-x1x2x3^2) → S(-x1x2) ⊕ S(-x3^2) → S, expanded map by map
        let (e, i) = worked();
        let r = ring3();
        let k = koszul(&i);
        let d1 = k.differential(1).unwrap();
        let eps = GradedMap::<Q>::from_triplets(
            k.module(0).unwrap().clone(),
            FreeModule::new(vec![r.one()]),
            [(0, 0, Q::from_integer(1.into())), (0, 1, Q::from_integer(1.into()))],
        )
        .unwrap();
        let composite = e.expand_map(&eps).unwrap().after(&e.expand_map(d1).unwrap()).unwrap();
        assert!(composite.is_zero());
        assert_eq!(
            e.expand_map(&eps.after(d1).unwrap()).unwrap(),
            composite
        );
    }

    #[test]
    fn strands_of_expanded_koszul() {
        let (e, i) = worked();
        let fstar = e.expand_complex(&koszul(&i)).unwrap();
        // a degree outside every component
        let s = fstar.strand(&flat(&e, "x2_1*x3_1"));
        assert!(s.is_zero());
        let s = fstar.strand(&flat(&e, "x1_1*x2_1"));
        assert_eq!(s.dims, vec![1, 0]);
        let star = e.expand_ideal(&i).unwrap();
        let report = fstar.verify(&star, 4);
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.degrees_checked, 210);
    }

    #[test]
    fn expanded_height_examples() {
        let r = RingDescriptor::standard(2);
        let e = ExpandedRing::new(r.clone(), ExpansionTuple::new(vec![1, 2]).unwrap()).unwrap();
        let i = MonomialIdeal::principal(r.clone(), r.var(1)).unwrap();
        assert_eq!(e.expanded_height(&i).unwrap(), 2);
        assert_eq!(e.expand_ideal(&i).unwrap().height().unwrap(), 2);
    }

    fn small_ideal() -> impl Strategy<Value = (MonomialIdeal, ExpansionTuple)> {
        (2usize..=3).prop_flat_map(|n| {
            (
                prop::collection::vec(prop::collection::vec(0u32..=2, n), 1..=3),
                prop::collection::vec(1usize..=3, n),
            )
                .prop_map(move |(gens, tuple)| {
                    let r = RingDescriptor::standard(n);
                    let ms: Vec<Monomial> = gens.into_iter().map(Monomial::new).collect();
                    (MonomialIdeal::new(r, ms).unwrap(), ExpansionTuple::new(tuple).unwrap())
                })
        })
    }

    proptest! {
        #[test]
        fn membership_transfer((i, t) in small_ideal()) {
            let e = ExpandedRing::new(i.ring().clone(), t).unwrap();
            let star = e.expand_ideal(&i).unwrap();
            let bound = i.max_degree() as u32 + 1;
            for u in monomials_up_to_degree(e.flat().nvars(), bound) {
                prop_assert_eq!(star.contains(&u), i.contains(&e.contract(&u)));
            }
        }

        #[test]
        fn independent_of_presentation((i, t) in small_ideal()) {
            let e = ExpandedRing::new(i.ring().clone(), t).unwrap();
            let mut redundant = i.gens().to_vec();
            for g in i.gens() {
                redundant.push(g.mul(&i.ring().var(0)));
            }
            prop_assert_eq!(e.expand_generators(&redundant), e.expand_ideal(&i).unwrap());
        }
    }
}
