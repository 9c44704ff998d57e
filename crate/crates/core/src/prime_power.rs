//! Linear-quotient resolutions of powers of a monomial prime and the chain
//! maps lifting `P^a ⊆ P^b`.
//!
//! The prime is `P = (y_1, ..., y_r)` for a chosen list of ring variables.
//! Generators of `P^a` are ordered in descending lex for `y_1 > ... > y_r`;
//! with this order `set(u) = {1, ..., m(u) - 1}` where `m(u)` is the largest
//! index with `y_{m(u)} | u`, and the decomposition function is
//! `g_a(u) = y_{j_1} ⋯ y_{j_a}` for `u = y_{j_1} ⋯ y_{j_d}`, `j_1 <= ... <= j_d`.
//! Everything here is written in 0-based local indices.

use std::collections::HashMap;

use crate::complex::{ChainComplex, ChainMap, FreeModule, GradedMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::monomial::{monomials_of_degree, Monomial, RingDescriptor};

/// Basis symbol `f(σ; u)`: `σ ⊆ set(u)` in local indices, `u` by its position
/// in the generator list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HtSymbol {
    pub sigma: Vec<usize>,
    pub generator: usize,
}

/// `G(P^a)` with its symbol bases.
#[derive(Clone, Debug, PartialEq)]
pub struct HtResolution<F> {
    vars: Vec<usize>,
    exponent: u32,
    generators: Vec<Monomial>,
    basis: Vec<Vec<HtSymbol>>,
    complex: ChainComplex<F>,
}

/// `set(u) = {k : k < m(u)}` in local indices; empty for `u = 1`.
pub fn ht_set(u: &Monomial) -> Vec<usize> {
    match u.support().last() {
        Some(&m) => (0..m).collect(),
        None => Vec::new(),
    }
}

/// `g_a(u)`: the product of the `a` smallest-index variables of `u`, counted
/// with multiplicity.
pub fn g_closed_form(u: &Monomial, a: u32) -> Result<Monomial> {
    if u.total_degree() < u64::from(a) {
        return Err(Error::InvalidArgument(format!(
            "g_{a} needs degree >= {a}, got {}",
            u.total_degree()
        )));
    }
    let mut left = a;
    let mut exps = vec![0; u.nvars()];
    for (k, &e) in u.exponents().iter().enumerate() {
        let take = e.min(left);
        exps[k] = take;
        left -= take;
        if left == 0 {
            break;
        }
    }
    Ok(Monomial::new(exps))
}

/// `c_a(u) = u / g_a(u)`.
pub fn c_closed_form(u: &Monomial, a: u32) -> Result<Monomial> {
    Ok(u.div(&g_closed_form(u, a)?))
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|s| big.binary_search(s).is_ok())
}

fn subsets_of_size(set: &[usize], s: usize) -> Vec<Vec<usize>> {
    fn go(set: &[usize], s: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..set.len() {
            if set.len() - i < s - cur.len() {
                break;
            }
            cur.push(set[i]);
            go(set, s, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(set, s, 0, &mut Vec::new(), &mut out);
    out
}

fn sign<F: Field>(negative: bool) -> F {
    F::sign(negative)
}

impl<F: Field> HtResolution<F> {
    /// `G(P^a)` for `P` generated by `vars` (distinct ring indices, listed in
    /// the order `y_1 > ... > y_r`).
    pub fn new(ring: &RingDescriptor, vars: &[usize], exponent: u32) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidArgument("empty prime".into()));
        }
        let mut check = vars.to_vec();
        check.sort_unstable();
        check.dedup();
        if check.len() != vars.len() || *check.last().unwrap() >= ring.nvars() {
            return Err(Error::InvalidArgument("prime variables must be distinct ring indices".into()));
        }
        let r = vars.len();
        let generators = monomials_of_degree(r, exponent);
        let index: HashMap<&Monomial, usize> = generators.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let sets: Vec<Vec<usize>> = generators.iter().map(ht_set).collect();
        let top = sets.iter().map(Vec::len).max().unwrap_or(0);

        let basis: Vec<Vec<HtSymbol>> = (0..=top)
            .map(|s| {
                generators
                    .iter()
                    .enumerate()
                    .flat_map(|(gi, _)| {
                        subsets_of_size(&sets[gi], s)
                            .into_iter()
                            .map(move |sigma| HtSymbol { sigma, generator: gi })
                    })
                    .collect()
            })
            .collect();
        let embed = |local: &Monomial| {
            let mut exps = vec![0; ring.nvars()];
            for (k, &v) in vars.iter().enumerate() {
                exps[v] = local.exponent(k);
            }
            Monomial::new(exps)
        };
        let symbol_degree = |f: &HtSymbol| {
            let mut local = generators[f.generator].clone();
            for &t in &f.sigma {
                local = local.mul(&Monomial::var(r, t));
            }
            local
        };
        let modules: Vec<FreeModule> = basis
            .iter()
            .map(|b| FreeModule::new(b.iter().map(|f| embed(&symbol_degree(f))).collect()))
            .collect();
        let positions: Vec<HashMap<&HtSymbol, usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();

        let mut differentials = Vec::with_capacity(top);
        for s in 1..=top {
            let mut triplets = Vec::new();
            for (col, f) in basis[s].iter().enumerate() {
                let u = &generators[f.generator];
                for (alpha, &t) in f.sigma.iter().enumerate() {
                    let mut rest = f.sigma.clone();
                    rest.remove(alpha);
                    let odd = alpha % 2 == 1;
                    // -(-1)^α x_t f(σ \ t; u)
                    let same = HtSymbol { sigma: rest.clone(), generator: f.generator };
                    triplets.push((positions[s - 1][&same], col, -sign::<F>(odd)));
                    // (-1)^α (x_t u / g(x_t u)) f(σ \ t; g(x_t u))
                    let xtu = u.mul(&Monomial::var(r, t));
                    let g = g_closed_form(&xtu, exponent).expect("degree a + 1");
                    let gi = index[&g];
                    if is_subset(&rest, &sets[gi]) {
                        let other = HtSymbol { sigma: rest, generator: gi };
                        triplets.push((positions[s - 1][&other], col, sign::<F>(odd)));
                    }
                }
            }
            differentials.push(GradedMap::from_triplets(
                modules[s].clone(),
                modules[s - 1].clone(),
                triplets,
            )?);
        }
        let complex = ChainComplex::new(ring.clone(), modules, differentials)?;
        Ok(Self {
            vars: vars.to_vec(),
            exponent,
            generators,
            basis,
            complex,
        })
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Generators of `P^a` in local coordinates, descending lex.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn basis(&self, s: usize) -> &[HtSymbol] {
        self.basis.get(s).map_or(&[], Vec::as_slice)
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn into_complex(self) -> ChainComplex<F> {
        self.complex
    }

    /// Position of `f(σ; u)` in degree `|σ|`, for `u` in local coordinates.
    pub fn position(&self, sigma: &[usize], u: &Monomial) -> Option<usize> {
        let gi = self.generators.iter().position(|g| g == u)?;
        let sym = HtSymbol {
            sigma: sigma.to_vec(),
            generator: gi,
        };
        self.basis.get(sigma.len())?.iter().position(|f| *f == sym)
    }
}

/// `φ^{a,b}`: `φ_s(f(σ; u)) = c_b(u) f(σ; g_b(u))`, zero when
/// `σ ⊄ set(g_b(u))`. All scalars are 1.
pub fn lifting_prime<F: Field>(source: &HtResolution<F>, target: &HtResolution<F>) -> Result<ChainMap<F>> {
    if source.vars != target.vars || source.complex.ring() != target.complex.ring() {
        return Err(Error::InvalidArgument("liftings need the same prime".into()));
    }
    let (a, b) = (source.exponent, target.exponent);
    if a < b {
        return Err(Error::InvalidArgument(format!("lifting needs a >= b, got a = {a}, b = {b}")));
    }
    let target_index: HashMap<&Monomial, usize> =
        target.generators.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let target_pos: Vec<HashMap<&HtSymbol, usize>> = target
        .basis
        .iter()
        .map(|bs| bs.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let mut components = Vec::with_capacity(source.basis.len());
    for (s, bs) in source.basis.iter().enumerate() {
        let src_mod = source.complex.module(s).unwrap().clone();
        let tgt_mod = target.complex.module(s).cloned().unwrap_or_default();
        let mut triplets = Vec::new();
        for (col, f) in bs.iter().enumerate() {
            let u = &source.generators[f.generator];
            let g = g_closed_form(u, b)?;
            let gi = target_index[&g];
            if is_subset(&f.sigma, &ht_set(&g)) {
                let sym = HtSymbol {
                    sigma: f.sigma.clone(),
                    generator: gi,
                };
                triplets.push((target_pos[s][&sym], col, F::one()));
            }
        }
        components.push(GradedMap::from_triplets(src_mod, tgt_mod, triplets)?);
    }
    Ok(ChainMap::new(components))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti::tor_betti;
    use crate::complex::verify_resolution;
    use crate::ideal::MonomialIdeal;
    use crate::linquot::DecompositionFunction;
    use crate::Q;
    use num_integer::binomial;

    fn ht(r: usize, a: u32) -> HtResolution<Q> {
        let ring = RingDescriptor::standard(r);
        let vars: Vec<usize> = (0..r).collect();
        HtResolution::new(&ring, &vars, a).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn m(r: usize, s: &str) -> Monomial {
        RingDescriptor::standard(r).parse_monomial(s).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(g_closed_form(&m(3, "x1*x2*x3"), 2).unwrap(), m(3, "x1*x2"));
        assert_eq!(c_closed_form(&m(3, "x1*x2*x3"), 2).unwrap(), m(3, "x3"));
        assert_eq!(g_closed_form(&m(3, "x2*x3^2"), 3).unwrap(), m(3, "x2*x3^2"));
        assert!(g_closed_form(&m(3, "x2"), 2).is_err());
        assert!(g_closed_form(&m(3, "x2"), 0).unwrap().is_one());
    }

    #[test]
    fn closed_form_matches_colon_scan() {
        for r in 1..=4 {
            for a in 1..=3 {
                let gens = monomials_of_degree(r, a);
                let g = DecompositionFunction::new(&gens);
                for d in a..=a + 2 {
                    for u in monomials_of_degree(r, d) {
                        assert_eq!(*g.g(&u).unwrap(), g_closed_form(&u, a).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn two_variable_square() {
        // P = (y1, y2), a = 2: ∂f({1}; y2²) = -y1 f(∅; y2²) + y2 f(∅; y1y2)
        let h = ht(2, 2);
        assert_eq!(h.complex().ranks(), vec![3, 2]);
        let d = h.complex().differential(1).unwrap();
        let col = h.position(&[0], &m(2, "x2^2")).unwrap();
        let same = h.position(&[], &m(2, "x2^2")).unwrap();
        let other = h.position(&[], &m(2, "x1*x2")).unwrap();
        assert_eq!(d.matrix().get(same, col), Some(&q(-1)));
        assert_eq!(d.matrix().get(other, col), Some(&q(1)));
        assert_eq!(d.matrix().col(col).len(), 2);
        assert_eq!(d.entry_monomial(same, col), m(2, "x1"));
        assert_eq!(d.entry_monomial(other, col), m(2, "x2"));
    }

    #[test]
    fn three_variable_square_ranks() {
        assert_eq!(ht(3, 2).complex().ranks(), vec![6, 8, 3]);
    }

    #[test]
    fn first_power_is_koszul() {
        for r in 1..=4 {
            let ranks = ht(r, 1).complex().ranks();
            let expect: Vec<usize> = (0..r).map(|s| binomial(r, s + 1)).collect();
            assert_eq!(ranks, expect);
        }
    }

    #[test]
    fn zeroth_power_is_unit() {
        let h = ht(3, 0);
        assert_eq!(h.complex().ranks(), vec![1]);
        assert!(h.complex().module(0).unwrap().shift(0).is_one());
    }

    #[test]
    fn resolves_and_is_minimal() {
        for r in 1..=4 {
            for a in 1..=4u32 {
                let h = ht(r, a);
                let ring = RingDescriptor::standard(r);
                let p = MonomialIdeal::prime(ring, &(0..r).collect());
                let pa = p.power(a).unwrap();
                assert!(h.complex().is_minimal(), "r={r} a={a}");
                let report = verify_resolution(h.complex(), &pa, u64::from(a) + r as u64 + 1);
                assert!(report.passed(), "r={r} a={a}: {report:?}");
                for s in 0..r {
                    let expect = binomial(r + a as usize - 1, r - s - 1) * binomial(a as usize + s - 1, s);
                    assert_eq!(h.complex().rank(s), expect, "r={r} a={a} s={s}");
                }
            }
        }
    }

    #[test]
    fn ranks_match_oracle_on_embedded_block() {
        // the prime on variables 2..4 of a 5-variable ring
        let ring = RingDescriptor::standard(5);
        let h: HtResolution<Q> = HtResolution::new(&ring, &[1, 2, 3], 2).unwrap();
        let p = MonomialIdeal::prime(ring, &[1, 2, 3].into_iter().collect());
        let t = tor_betti::<Q>(&p.power(2).unwrap()).unwrap();
        assert_eq!(h.complex().betti_table(), t);
    }

    #[test]
    fn lifting_two_to_one() {
        // φ^{2,1}(f(∅; y2²)) = y2 f(∅; y2), φ^{2,1}(f({1}; y2²)) = y2 f({1}; y2)
        let (h2, h1) = (ht(2, 2), ht(2, 1));
        let phi = lifting_prime(&h2, &h1).unwrap();
        assert!(phi.commutes_with(h2.complex(), h1.complex()));
        assert!(phi.lifts_inclusion());
        let y2sq = m(2, "x2^2");
        let y2 = m(2, "x2");
        for sigma in [vec![], vec![0]] {
            let s = sigma.len();
            let col = h2.position(&sigma, &y2sq).unwrap();
            let row = h1.position(&sigma, &y2).unwrap();
            let c = phi.component(s).unwrap();
            assert_eq!(c.matrix().get(row, col), Some(&q(1)));
            assert_eq!(c.entry_monomial(row, col), y2);
        }
    }

    #[test]
    fn lifting_to_itself_is_identity() {
        for (r, a) in [(1, 2), (3, 2), (4, 1)] {
            let h = ht(r, a);
            let phi = lifting_prime(&h, &h).unwrap();
            for (s, c) in phi.components().iter().enumerate() {
                assert_eq!(*c, GradedMap::identity(h.complex().module(s).unwrap().clone()));
            }
        }
    }

    #[test]
    fn lifting_to_zeroth_power() {
        let (h, unit) = (ht(3, 2), ht(3, 0));
        let phi = lifting_prime(&h, &unit).unwrap();
        assert!(phi.commutes_with(h.complex(), unit.complex()));
        assert_eq!(phi.component(0).unwrap().matrix().nnz(), 6);
        assert!(phi.components()[1..].iter().all(GradedMap::is_zero));
    }

    #[test]
    fn lifting_rejects_wrong_direction() {
        assert!(lifting_prime(&ht(2, 1), &ht(2, 2)).is_err());
    }
}
