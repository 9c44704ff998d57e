//! Property suites run by `expansio verify` and the acceptance tests. Each
//! suite compares quantities computed on `I` and on `I*` by independent
//! routes and records every identity that fails.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::tor_betti;
use crate::complex::{minimize, taylor_complex, verify_resolution, ChainComplex, ChainMap, FreeModule, GradedMap};
use crate::double_complex::{DoubleComplex, GTensorCache};
use crate::error::{Error, ParseError, Result};
use crate::expansion::{ExpandedMap, ExpandedRing, ExpansionTuple};
use crate::formulas::{betti_via_formula, extremal_shifts, projdim_and_reg, projdim_over};
use crate::ideal::{AssInfinity, MonomialIdeal, PrimaryComponent, VarSet};
use crate::io::{format_problem, parse_monomial_list, parse_problem};
use crate::linquot::DecompositionFunction;
use crate::monomial::{monomials_up_to_degree, Monomial, RingDescriptor};
use crate::prime_power::{g_closed_form, lifting_prime, HtResolution};
use crate::random::{InstanceGenerator, RandomConfig};
use crate::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemma11,
    Decomp,
    Functor,
    Resolution,
    Maps,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Lemma11, Suite::Decomp, Suite::Functor, Suite::Resolution, Suite::Maps];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma11 => "lemma11",
            Suite::Decomp => "decomp",
            Suite::Functor => "functor",
            Suite::Resolution => "resolution",
            Suite::Maps => "maps",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

/// Deliberate bugs injected into the computations under test, used to check
/// that the suites notice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// `expand_ideal` drops its last minimal generator.
    ExpansionDropsGenerator,
    /// One scalar of the first horizontal map of the double complex is negated.
    HorizontalSign,
    /// The closed-form Betti table gains one extra generator.
    FormulaOffByOne,
    /// Every lifting `φ^{a,b}` with `a > b` has its first entry negated.
    LiftingSign,
}

impl Fault {
    pub const ALL: [Fault; 4] = [
        Fault::ExpansionDropsGenerator,
        Fault::HorizontalSign,
        Fault::FormulaOffByOne,
        Fault::LiftingSign,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::ExpansionDropsGenerator => "expansion-drops-generator",
            Fault::HorizontalSign => "horizontal-sign",
            Fault::FormulaOffByOne => "formula-off-by-one",
            Fault::LiftingSign => "lifting-sign",
        }
    }
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fault::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown fault '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Overrides every degree bound the suites would otherwise derive.
    pub degree_bound: Option<u32>,
    pub fault: Option<Fault>,
    /// Largest `k` for the power and symbolic power checks.
    pub max_power: u32,
    pub ass_window: u32,
    pub ass_cap: u32,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            degree_bound: None,
            fault: None,
            max_power: 3,
            ass_window: 2,
            ass_cap: 4,
        }
    }
}

/// One verification instance: `I`, a second ideal `J` over the same ring
/// for the two-ideal identities, and a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub ideal: MonomialIdeal,
    pub pair: MonomialIdeal,
    pub tuple: ExpansionTuple,
}

impl Instance {
    pub fn new(ideal: MonomialIdeal, pair: MonomialIdeal, tuple: ExpansionTuple) -> Result<Self> {
        if pair.ring() != ideal.ring() {
            return Err(Error::RingMismatch("the paired ideal lives in another ring".into()));
        }
        if tuple.len() != ideal.ring().nvars() {
            return Err(Error::InvalidTuple("tuple length differs from the ring".into()));
        }
        Ok(Self { ideal, pair, tuple })
    }

    /// Instance `index` of the run seeded by `seed`.
    pub fn random(seed: u64, index: u64, config: &RandomConfig) -> Self {
        let mut g = InstanceGenerator::new(seed, index, config.clone());
        let (ideal, pair) = g.ideal_pair();
        let tuple = g.tuple(ideal.ring().nvars());
        Self { ideal, pair, tuple }
    }

    /// Parses a problem file. A comment line `# J: g1, g2, ...` supplies the
    /// paired ideal, which otherwise defaults to `√I`; a missing tuple
    /// defaults to all ones.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let p = parse_problem(text)?;
        let mut pair = None;
        for (i, line) in text.lines().enumerate() {
            if let Some(rest) = line.trim_start().strip_prefix('#') {
                if let Some(gens) = rest.trim_start().strip_prefix("J:") {
                    let ms = parse_monomial_list(&p.ring, gens).map_err(|e| ParseError::new(i + 1, e.column, e.message))?;
                    pair = Some(MonomialIdeal::new(p.ring.clone(), ms).expect("parsed over this ring"));
                }
            }
        }
        let tuple = p.tuple.unwrap_or_else(|| ExpansionTuple::ones(p.ring.nvars()));
        let pair = pair.unwrap_or_else(|| p.ideal.radical());
        Ok(Self {
            ideal: p.ideal,
            pair,
            tuple,
        })
    }

    /// A problem file reproducing this instance.
    pub fn reproducer(&self) -> String {
        let mut out = format_problem(&self.ideal, Some(&self.tuple));
        let ring = self.pair.ring();
        let gens: Vec<String> = self.pair.gens().iter().map(|g| ring.format_monomial(g)).collect();
        out.push_str(&format!("# J: {}\n", gens.join(", ")));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub suite: Suite,
    pub identity: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceReport {
    pub index: Option<u64>,
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Checks that could not be decided, such as an undetermined window.
    pub notes: Vec<String>,
    pub reproducer: String,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Checker<'a> {
    suite: Suite,
    opts: &'a VerifyOptions,
    checks: usize,
    failures: Vec<Failure>,
    notes: Vec<String>,
}

impl<'a> Checker<'a> {
    fn new(opts: &'a VerifyOptions) -> Self {
        Self {
            suite: Suite::Lemma11,
            opts,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, identity: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                suite: self.suite,
                identity: identity.to_string(),
                detail: detail(),
            });
        }
    }

    fn fail(&mut self, identity: &str, detail: String) {
        self.check(false, identity, || detail);
    }

    fn expand(&self, ring: &ExpandedRing, ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
        let star = ring.expand_ideal(ideal)?;
        Ok(match self.opts.fault {
            Some(Fault::ExpansionDropsGenerator) if star.gens().len() > 1 => {
                let gens = &star.gens()[..star.gens().len() - 1];
                MonomialIdeal::new(star.ring().clone(), gens.to_vec())?
            }
            _ => star,
        })
    }

    fn expand_component(&self, ring: &ExpandedRing, c: &PrimaryComponent) -> Result<PrimaryComponent> {
        Ok(PrimaryComponent {
            component: self.expand(ring, &c.component)?,
            radical: ring.expand_prime(&c.radical),
        })
    }
}

fn show(ideal: &MonomialIdeal) -> String {
    let ring = ideal.ring();
    let gens: Vec<String> = ideal.gens().iter().map(|g| ring.format_monomial(g)).collect();
    format!("({})", gens.join(", "))
}

fn show_primes(primes: &BTreeSet<VarSet>) -> String {
    let parts: Vec<String> = primes.iter().map(|p| format!("{:?}", p.iter().map(|i| i + 1).collect::<Vec<_>>())).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Default membership bound: the largest generator degree plus two.
fn default_bound(ideals: &[&MonomialIdeal]) -> u32 {
    ideals.iter().map(|i| i.max_degree()).max().unwrap_or(0) as u32 + 2
}

fn lemma11(c: &mut Checker, inst: &Instance, ring: &ExpandedRing) -> Result<()> {
    let (i, j) = (&inst.ideal, &inst.pair);
    let is = c.expand(ring, i)?;
    let js = c.expand(ring, j)?;

    let bound = c.opts.degree_bound.unwrap_or_else(|| default_bound(&[i]));
    let bad = monomials_up_to_degree(ring.flat().nvars(), bound)
        .into_iter()
        .find(|u| is.contains(u) != i.contains(&ring.contract(u)));
    c.check(bad.is_none(), "(i) u in I* iff pi(u) in I", || {
        format!("fails at {}", ring.flat().format_monomial(bad.as_ref().unwrap()))
    });

    let pairs: [(&str, MonomialIdeal, MonomialIdeal); 4] = [
        ("(ii) (I+J)* = I*+J*", c.expand(ring, &i.sum(j)?)?, is.sum(&js)?),
        ("(iii) (IJ)* = I*J*", c.expand(ring, &i.product(j)?)?, is.product(&js)?),
        ("(iv) (I cap J)* = I* cap J*", c.expand(ring, &i.intersection(j)?)?, is.intersection(&js)?),
        ("(v) (I:J)* = I*:J*", c.expand(ring, &i.colon(j)?)?, is.colon(&js)?),
    ];
    for (name, lhs, rhs) in pairs {
        c.check(lhs == rhs, name, || format!("{} != {}", show(&lhs), show(&rhs)));
    }
    let lhs = is.radical();
    let rhs = c.expand(ring, &i.radical())?;
    c.check(lhs == rhs, "(vi) rad(I*) = (rad I)*", || format!("{} != {}", show(&lhs), show(&rhs)));

    for ideal in [i, j] {
        if ideal.is_unit() {
            continue;
        }
        for comp in ideal.primary_decomposition()? {
            let q = c.expand(ring, &comp.component)?;
            let want = ring.expand_prime(&comp.radical);
            let got = q.primary_radical();
            c.check(got.as_ref() == Some(&want), "(vii) Q primary => Q* is P*-primary", || {
                format!("{} has radical {:?}", show(&q), got)
            });
        }
    }
    Ok(())
}

fn decomp(c: &mut Checker, inst: &Instance, ring: &ExpandedRing) -> Result<()> {
    let i = &inst.ideal;
    if i.is_unit() {
        return Ok(());
    }
    let is = c.expand(ring, i)?;
    let expanded: Vec<PrimaryComponent> = i
        .primary_decomposition()?
        .iter()
        .map(|q| c.expand_component(ring, q))
        .collect::<Result<_>>()?;
    let direct = is.primary_decomposition()?;
    let same = expanded.len() == direct.len() && expanded.iter().all(|q| direct.contains(q));
    c.check(same, "primary decomposition of I* = expanded components", || {
        let a: Vec<String> = expanded.iter().map(|q| show(&q.component)).collect();
        let b: Vec<String> = direct.iter().map(|q| show(&q.component)).collect();
        format!("[{}] vs [{}]", a.join(", "), b.join(", "))
    });

    let parts: Vec<MonomialIdeal> = expanded.iter().map(|q| q.component.clone()).collect();
    c.check(MonomialIdeal::intersect_all(&parts)? == is, "expanded components intersect to I*", String::new);
    if parts.len() > 1 {
        for k in 0..parts.len() {
            let rest: Vec<&MonomialIdeal> = parts.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, q)| q).collect();
            let dropped = MonomialIdeal::intersect_all(rest)?;
            c.check(dropped != is, "expanded decomposition is irredundant", || {
                format!("component {} is redundant", show(&parts[k]))
            });
        }
    }

    let want: BTreeSet<VarSet> = i.associated_primes()?.iter().map(|p| ring.expand_prime(p)).collect();
    let got = is.associated_primes()?;
    c.check(want == got, "Ass(S*/I*) = {P* : P in Ass(S/I)}", || {
        format!("{} vs {}", show_primes(&got), show_primes(&want))
    });

    let h = is.height()?;
    let corrected = ring.expanded_height(i)?;
    c.check(h == corrected, "height(I*) = min over minimal P of sum of i_j, j in P", || {
        format!("{h} vs {corrected}")
    });
    let mut sorted = inst.tuple.entries().to_vec();
    sorted.sort_unstable();
    let lower: usize = sorted.iter().take(i.height()?).sum();
    c.check(lower <= h, "height(I*) >= sum of the height(I) smallest entries", || {
        format!("{lower} > {h}")
    });

    for k in 1..=c.opts.max_power {
        let lhs = c.expand(ring, &i.power(k)?)?;
        let rhs = is.power(k)?;
        c.check(lhs == rhs, &format!("(I^{k})* = (I*)^{k}"), || format!("{} != {}", show(&lhs), show(&rhs)));
        let lhs = c.expand(ring, &i.symbolic_power(k)?)?;
        let rhs = is.symbolic_power(k)?;
        c.check(lhs == rhs, &format!("(I^({k}))* = (I*)^({k})"), || {
            format!("{} != {}", show(&lhs), show(&rhs))
        });
    }

    let (w, cap) = (c.opts.ass_window, c.opts.ass_cap);
    match (i.ass_infinity(w, cap)?, is.ass_infinity(w, cap)?) {
        (AssInfinity::Stable { primes: p, .. }, AssInfinity::Stable { primes: q, .. }) => {
            let want: BTreeSet<VarSet> = p.iter().map(|x| ring.expand_prime(x)).collect();
            c.check(want == q, "windowed Ass^inf(I*) = {P* : P in Ass^inf(I)}", || {
                format!("{} vs {}", show_primes(&q), show_primes(&want))
            });
        }
        _ => c
            .notes
            .push(format!("Ass^inf undetermined with window {w} and powers <= {cap}")),
    }
    Ok(())
}

/// A random map `F → G` with a nonzero scalar only where the target shift
/// divides the source shift.
fn random_graded_map(source: &FreeModule, target: &FreeModule, rng: &mut ChaCha8Rng) -> Result<GradedMap<Q>> {
    let mut triplets = Vec::new();
    for (col, a) in source.shifts().iter().enumerate() {
        for (row, b) in target.shifts().iter().enumerate() {
            if b.divides(a) && rng.gen_bool(0.5) {
                let v: i64 = rng.gen_range(-3..=3);
                triplets.push((row, col, Q::from_integer(v.into())));
            }
        }
    }
    GradedMap::from_triplets(source.clone(), target.clone(), triplets)
}

fn fmin_of(i: &MonomialIdeal) -> Result<ChainComplex<Q>> {
    minimize(&taylor_complex::<Q>(i)?)
}

fn functor(c: &mut Checker, inst: &Instance, ring: &ExpandedRing, fmin: &ChainComplex<Q>) -> Result<()> {
    let is = c.expand(ring, &inst.ideal)?;
    let fstar = ring.expand_complex(fmin)?;
    let reg = fmin.betti_table().regularity()?;
    let bound = c
        .opts
        .degree_bound
        .unwrap_or((reg.max(0) as usize + fmin.length() + 2) as u32);
    let report = fstar.verify(&is, bound);
    c.check(report.passed(), "F* is acyclic with H_0 = S*/I*", || {
        format!(
            "bound {bound}: {} homology failures, {} H_0 mismatches, {} non-complex degrees; first {:?}",
            report.failures.len(),
            report.h0_mismatches.len(),
            report.non_complex.len(),
            report.failures.first().map(|f| &f.degree).or(report.h0_mismatches.first())
        )
    });

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (k, m) in fmin.modules().iter().enumerate() {
        let id = ring.expand_map(&GradedMap::<Q>::identity(m.clone()))?;
        c.check(id == ExpandedMap::identity(ring.expand_free_module(m)), "(id_F)* = id_{F*}", || {
            format!("homological degree {k}")
        });
        let Some(d) = fmin.differential(k) else { continue };
        let alpha = random_graded_map(m, m, &mut rng)?;
        let lhs = ring.expand_map(&d.after(&alpha)?)?;
        let rhs = ring.expand_map(d)?.after(&ring.expand_map(&alpha)?)?;
        c.check(lhs == rhs, "(b a)* = b* a*", || format!("d_{k} after a random endomorphism"));
    }
    Ok(())
}

fn resolution(c: &mut Checker, inst: &Instance, ring: &ExpandedRing, fmin: &ChainComplex<Q>) -> Result<()> {
    let is = c.expand(ring, &inst.ideal)?;
    let mut dc = DoubleComplex::build(ring, fmin, &mut GTensorCache::new(ring.clone()))?;
    if c.opts.fault == Some(Fault::HorizontalSign) && dc.columns().len() > 1 {
        let first = dc.horizontal(1).component(0).and_then(|m| m.matrix().iter().next().map(|(r, col, v)| (r, col, v.clone())));
        if let Some((r, col, v)) = first {
            dc = dc.with_horizontal_entry(1, 0, r, col, -v);
        }
    }
    let report = dc.check();
    c.check(report.passed(), "double complex rows compose to zero and squares commute", || {
        format!("rows {:?}, squares {:?}", report.row_failures, report.square_failures)
    });
    let tc = match dc.total_complex() {
        Ok(tc) => tc,
        Err(e) => {
            c.fail("T(C) is a complex", e.to_string());
            return Ok(());
        }
    };
    let tor = tor_betti::<Q>(&is)?;
    let pd_tc = tc.length();
    let reg_tc = tc.betti_table().regularity()?;
    let bound = c
        .opts
        .degree_bound
        .map(u64::from)
        .unwrap_or((reg_tc.max(0) as usize + pd_tc + 2) as u64);
    let vr = verify_resolution(&tc, &is, bound);
    c.check(vr.passed(), "T(C) resolves I*", || {
        format!(
            "bound {bound}: square {:?} at {:?}, generates {}, {} homology failures",
            vr.nonzero_square,
            vr.nonzero_square_degree,
            vr.generates_ideal,
            vr.failures.len()
        )
    });
    c.check(tc.is_minimal(), "T(C) is minimal", String::new);
    c.check(tc.betti_table() == tor, "multigraded shifts of T(C) = Tor oracle", String::new);

    let mut formula = betti_via_formula(fmin, &inst.tuple)?;
    if c.opts.fault == Some(Fault::FormulaOffByOne) {
        formula.add(0, is.gens()[0].total_degree(), 1);
    }
    let tc_graded = tc.betti_table().graded();
    let tor_graded = tor.graded();
    c.check(formula == tor_graded, "Betti formula = Tor oracle", || {
        format!("{:?} vs {:?}", formula.betti_numbers(), tor_graded.betti_numbers())
    });
    c.check(tc_graded == tor_graded, "ranks of T(C) = Tor oracle", || {
        format!("{:?} vs {:?}", tc_graded.betti_numbers(), tor_graded.betti_numbers())
    });

    let (pd, reg) = projdim_and_reg(fmin, &inst.tuple)?;
    let reg_i = fmin.betti_table().regularity()?;
    let (tor_pd, tor_reg) = (tor.projdim()?, tor.regularity()?);
    c.check(reg_i == tor_reg && reg == tor_reg, "reg(I*) = reg(I)", || format!("{reg_i} vs {tor_reg}"));
    c.check(pd == tor_pd, "projdim formula = oracle projdim", || format!("{pd} vs {tor_pd}"));
    let ext = projdim_over(&extremal_shifts(fmin), &inst.tuple);
    c.check(ext == pd, "projdim over extremal shifts = full projdim", || format!("{ext} vs {pd}"));
    Ok(())
}

/// Runs the per-instance suites (every suite but [`Suite::Maps`]) on one
/// instance.
pub fn verify_instance(inst: &Instance, suites: &[Suite], opts: &VerifyOptions) -> Result<InstanceReport> {
    let ring = ExpandedRing::new(inst.ideal.ring().clone(), inst.tuple.clone())?;
    let mut c = Checker::new(opts);
    let needs_fmin = suites.iter().any(|s| matches!(s, Suite::Functor | Suite::Resolution));
    let fmin = if needs_fmin && !inst.ideal.is_unit() {
        Some(fmin_of(&inst.ideal)?)
    } else {
        None
    };
    for &s in suites {
        c.suite = s;
        match s {
            Suite::Lemma11 => lemma11(&mut c, inst, &ring)?,
            Suite::Decomp => decomp(&mut c, inst, &ring)?,
            Suite::Functor => {
                if let Some(f) = &fmin {
                    functor(&mut c, inst, &ring, f)?
                }
            }
            Suite::Resolution => {
                if let Some(f) = &fmin {
                    resolution(&mut c, inst, &ring, f)?
                }
            }
            Suite::Maps => {}
        }
    }
    Ok(InstanceReport {
        index: None,
        checks: c.checks,
        failures: c.failures,
        notes: c.notes,
        reproducer: inst.reproducer(),
    })
}

/// Runs `count` seeded random instances in parallel; reports are ordered by
/// instance index.
pub fn verify_random(
    seed: u64,
    count: u64,
    config: &RandomConfig,
    suites: &[Suite],
    opts: &VerifyOptions,
) -> Result<Vec<InstanceReport>> {
    (0..count)
        .into_par_iter()
        .map(|k| {
            let inst = Instance::random(seed, k, config);
            let mut r = verify_instance(&inst, suites, opts)?;
            r.index = Some(k);
            Ok(r)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapsReport {
    /// Number of `(r, a, b, c)` samples drawn.
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
}

impl MapsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn random_monomial(rng: &mut ChaCha8Rng, r: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; r];
    for _ in 0..degree {
        e[rng.gen_range(0..r)] += 1;
    }
    Monomial::new(e)
}

/// Lifting laws on one prime `(x_1, ..., x_r)` for every block size
/// `r <= max_block`: `samples` random triples `a >= b >= c` with entries
/// `<= max_exponent` per block size. Checks that each lifting is a chain map
/// over the inclusion, that liftings compose, that strict liftings are
/// minimal, and the decomposition-function identity
/// `g_b(g_a(x_t u)) = g_b(x_t g_b(u))`.
pub fn verify_maps(seed: u64, samples: usize, max_block: usize, max_exponent: u32, opts: &VerifyOptions) -> Result<MapsReport> {
    let per_block: Vec<(usize, usize, Vec<Failure>)> = (1..=max_block)
        .into_par_iter()
        .map(|r| maps_for_block(seed, r, samples, max_exponent, opts))
        .collect::<Result<_>>()?;
    let mut report = MapsReport {
        samples: 0,
        checks: 0,
        failures: Vec::new(),
    };
    for (s, k, f) in per_block {
        report.samples += s;
        report.checks += k;
        report.failures.extend(f);
    }
    Ok(report)
}

fn maps_for_block(seed: u64, r: usize, samples: usize, max_exponent: u32, opts: &VerifyOptions) -> Result<(usize, usize, Vec<Failure>)> {
    let ring = RingDescriptor::standard(r);
    let vars: Vec<usize> = (0..r).collect();
    let ht: Vec<HtResolution<Q>> = (0..=max_exponent)
        .map(|a| HtResolution::new(&ring, &vars, a))
        .collect::<Result<_>>()?;
    let n = ht.len();
    let mut lift: Vec<Vec<Option<ChainMap<Q>>>> = vec![vec![None; n]; n];
    for a in 0..n {
        for b in 0..=a {
            let mut phi = lifting_prime(&ht[a], &ht[b])?;
            if opts.fault == Some(Fault::LiftingSign) && a > b {
                let mut comps = phi.components().to_vec();
                let first = comps[0].matrix().iter().next().map(|(r, c, v)| (r, c, v.clone()));
                if let Some((row, col, v)) = first {
                    comps[0] = comps[0].clone().with_entry(row, col, -v);
                }
                phi = ChainMap::new(comps);
            }
            lift[a][b] = Some(phi);
        }
    }
    let get = |a: usize, b: usize| lift[a][b].as_ref().unwrap();

    let mut c = Checker::new(opts);
    c.suite = Suite::Maps;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(r as u64);
    for _ in 0..samples {
        let mut abc: Vec<usize> = (0..3).map(|_| rng.gen_range(0..n)).collect();
        abc.sort_unstable_by(|x, y| y.cmp(x));
        let (a, b, cc) = (abc[0], abc[1], abc[2]);
        let tag = format!("r = {r}, (a, b, c) = ({a}, {b}, {cc})");

        for (x, y) in [(a, b), (b, cc), (a, cc)] {
            let phi = get(x, y);
            let sq = phi.first_noncommuting_square(ht[x].complex(), ht[y].complex());
            c.check(sq.is_none(), "lifting is a chain map", || format!("{tag}: phi^({x},{y}) square {sq:?}"));
            c.check(phi.lifts_inclusion(), "lifting induces the inclusion on H_0", || {
                format!("{tag}: phi^({x},{y})")
            });
            if x > y {
                c.check(phi.is_minimal(), "strict lifting lands in m * target", || format!("{tag}: phi^({x},{y})"));
            }
        }
        let composite = get(b, cc).after(get(a, b))?;
        c.check(same_chain_map(&composite, get(a, cc)), "phi^(a,c) = phi^(b,c) phi^(a,b)", || tag.clone());

        if a >= 1 {
            let t = rng.gen_range(0..r);
            let extra = rng.gen_range(0..=2);
            let u = random_monomial(&mut rng, r, a as u32 + extra);
            let xt = Monomial::var(r, t);
            let (a32, b32) = (a as u32, b as u32);
            let lhs = g_closed_form(&g_closed_form(&xt.mul(&u), a32)?, b32)?;
            let rhs = g_closed_form(&xt.mul(&g_closed_form(&u, b32)?), b32)?;
            c.check(lhs == rhs, "g_b(g_a(x_t u)) = g_b(x_t g_b(u))", || {
                format!("{tag}: u = {}, t = {}", ring.format_monomial(&u), t + 1)
            });
            let scan = DecompositionFunction::new(ht[a].generators()).g(&u)?.clone();
            let closed = g_closed_form(&u, a32)?;
            c.check(scan == closed, "closed-form g_a = first dividing generator", || {
                format!("{tag}: u = {}", ring.format_monomial(&u))
            });
        }
    }
    Ok((samples, c.checks, c.failures))
}

fn same_chain_map(x: &ChainMap<Q>, y: &ChainMap<Q>) -> bool {
    let n = x.components().len().max(y.components().len());
    (0..n).all(|s| match (x.component(s), y.component(s)) {
        (Some(p), Some(q)) => p.matrix() == q.matrix(),
        (Some(p), None) | (None, Some(p)) => p.is_zero(),
        (None, None) => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(n: usize, i: &[&str], j: &[&str], t: &[usize]) -> Instance {
        let r = RingDescriptor::standard(n);
        let parse = |g: &[&str]| MonomialIdeal::new(r.clone(), g.iter().map(|s| r.parse_monomial(s).unwrap())).unwrap();
        Instance::new(parse(i), parse(j), ExpansionTuple::new(t.to_vec()).unwrap()).unwrap()
    }

    fn worked() -> Instance {
        inst(3, &["x1*x2", "x3^2"], &["x1", "x2*x3"], &[1, 3, 2])
    }

    #[test]
    fn worked_example_passes_every_suite() {
        let r = verify_instance(&worked(), &Suite::ALL, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert!(r.checks > 20);
    }

    #[test]
    fn reproducer_round_trips() {
        let w = worked();
        let back = Instance::parse(&w.reproducer()).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn missing_pair_defaults_to_radical() {
        let w = Instance::parse("ring: x1 x2\nideal: x1^2*x2\n").unwrap();
        assert_eq!(w.pair.gens(), &[Monomial::new(vec![1, 1])]);
        assert!(w.tuple.is_all_ones());
    }

    #[test]
    fn each_fault_is_caught() {
        let w = worked();
        for (fault, suite) in [
            (Fault::ExpansionDropsGenerator, Suite::Lemma11),
            (Fault::ExpansionDropsGenerator, Suite::Decomp),
            (Fault::ExpansionDropsGenerator, Suite::Functor),
            (Fault::HorizontalSign, Suite::Resolution),
            (Fault::FormulaOffByOne, Suite::Resolution),
        ] {
            let opts = VerifyOptions {
                fault: Some(fault),
                ..Default::default()
            };
            let r = verify_instance(&w, &[suite], &opts).unwrap();
            assert!(!r.passed(), "{fault:?} not caught by {suite}");
            assert!(r.failures.iter().all(|f| f.suite == suite));
        }
        let opts = VerifyOptions {
            fault: Some(Fault::LiftingSign),
            ..Default::default()
        };
        assert!(!verify_maps(1, 20, 2, 3, &opts).unwrap().passed());
    }

    #[test]
    fn maps_small_run_passes() {
        let r = verify_maps(3, 30, 3, 3, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.samples, 90);
    }

    #[test]
    fn seeded_runs_are_ordered_and_reproducible() {
        let cfg = RandomConfig::default();
        let a = verify_random(9, 4, &cfg, &[Suite::Lemma11], &VerifyOptions::default()).unwrap();
        let b = verify_random(9, 4, &cfg, &[Suite::Lemma11], &VerifyOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.iter().map(|r| r.index).collect::<Vec<_>>(), vec![Some(0), Some(1), Some(2), Some(3)]);
        assert!(a.iter().all(InstanceReport::passed));
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("lifting-sign".parse::<Fault>().unwrap(), Fault::LiftingSign);
    }
}
