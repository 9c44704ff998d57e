//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use expansio::formulas::{betti_via_formula, extremal_shifts, prime_power_polynomial, projdim_and_reg, projdim_over};
use expansio::linquot::{expansion_order, OrderedGenerators};
use expansio::prime_power::HtResolution;
use expansio::random::{InstanceGenerator, RandomConfig};
use expansio::verify::{verify_maps, verify_random, Instance, InstanceReport, Suite, VerifyOptions};
use expansio::{minimize, taylor_complex, tor_betti, ExpandedRing, ExpansionTuple, Monomial, MonomialIdeal, RingDescriptor, Q};

const SEED: u64 = 0x5eed_2026;

struct Outcome {
    ok: bool,
    summary: String,
}

fn outcome(ok: bool, summary: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        summary: summary.into(),
    }
}

fn ideal(n: usize, gens: &[&str]) -> MonomialIdeal {
    let r = RingDescriptor::standard(n);
    MonomialIdeal::new(r.clone(), gens.iter().map(|g| r.parse_monomial(g).unwrap())).unwrap()
}

fn tuple(v: &[usize]) -> ExpansionTuple {
    ExpansionTuple::new(v.to_vec()).unwrap()
}

fn first_failure(reports: &[InstanceReport], keep: impl Fn(&str) -> bool) -> Option<String> {
    reports.iter().find_map(|r| {
        r.failures
            .iter()
            .find(|f| keep(&f.identity))
            .map(|f| format!("instance {:?}: {}: {}\n{}", r.index, f.identity, f.detail, r.reproducer))
    })
}

fn suite_outcome(reports: &[InstanceReport], keep: impl Fn(&str) -> bool) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    match first_failure(reports, keep) {
        None => outcome(true, format!("{} instances, {checks} checks", reports.len())),
        Some(f) => outcome(false, f),
    }
}

fn worked_example_expansion() -> Outcome {
    let i = ideal(3, &["x1*x2", "x3^2"]);
    let ring = ExpandedRing::new(i.ring().clone(), tuple(&[1, 3, 2])).unwrap();
    let star = ring.expand_ideal(&i).unwrap();
    let got: Vec<String> = star.gens().iter().map(|g| ring.flat().format_monomial(g)).collect();
    let want = ["x1_1*x2_1", "x1_1*x2_2", "x1_1*x2_3", "x3_1^2", "x3_1*x3_2", "x3_2^2"];
    outcome(got == want, got.join(", "))
}

fn ideal_operations_suite() -> Outcome {
    let reports = verify_random(SEED, 200, &RandomConfig::default(), &[Suite::Lemma11], &VerifyOptions::default()).unwrap();
    suite_outcome(&reports, |_| true)
}

fn decomposition_suite() -> Outcome {
    let reports = verify_random(SEED + 1, 100, &RandomConfig::default(), &[Suite::Decomp], &VerifyOptions::default()).unwrap();
    suite_outcome(&reports, |_| true)
}

fn prime_power_formula() -> Outcome {
    let mut checked = 0;
    for r in 1..=4 {
        let ring = RingDescriptor::standard(r);
        let vars: Vec<usize> = (0..r).collect();
        for s in 1..=3u32 {
            let p = MonomialIdeal::prime(ring.clone(), &vars.iter().copied().collect()).power(s).unwrap();
            let oracle = tor_betti::<Q>(&p).unwrap().betti_numbers();
            let ht = HtResolution::<Q>::new(&ring, &vars, s).unwrap().complex().ranks();
            let formula = prime_power_polynomial(r, s);
            if oracle != formula || ht != formula {
                return outcome(false, format!("r = {r}, s = {s}: formula {formula:?}, oracle {oracle:?}, HT {ht:?}"));
            }
            checked += 1;
        }
    }
    let pinned = prime_power_polynomial(3, 2);
    outcome(pinned == [6, 8, 3], format!("{checked} prime powers; (3, 2) -> {pinned:?}"))
}

fn betti_theorem() -> Outcome {
    let i = ideal(3, &["x1*x2", "x3^2"]);
    let t = tuple(&[1, 3, 2]);
    let ring = ExpandedRing::new(i.ring().clone(), t.clone()).unwrap();
    let tor = tor_betti::<Q>(&ring.expand_ideal(&i).unwrap()).unwrap();
    let oracle = (tor.betti_numbers(), tor.projdim().unwrap(), tor.regularity().unwrap());
    if oracle != (vec![6, 14, 16, 9, 2], 4, 3) {
        return outcome(false, format!("Tor oracle disagrees with the fixture: {oracle:?}"));
    }
    let fmin = minimize(&taylor_complex::<Q>(&i).unwrap()).unwrap();
    let formula = betti_via_formula(&fmin, &t).unwrap();
    if formula != tor.graded() || projdim_and_reg(&fmin, &t).unwrap() != (4, 3) {
        return outcome(false, format!("worked example formula {:?}", formula.betti_numbers()));
    }
    let reports = verify_random(SEED + 2, 50, &RandomConfig::default(), &[Suite::Resolution], &VerifyOptions::default()).unwrap();
    let mut o = suite_outcome(&reports, |id| {
        id.starts_with("Betti formula") || id.starts_with("ranks of T(C)") || id.starts_with("reg(") || id.starts_with("projdim formula")
    });
    o.summary = format!("worked example (6,14,16,9,2), projdim 4, reg 3; {}", o.summary);
    o
}

fn structural_checks() -> Outcome {
    let reports = verify_random(
        SEED + 3,
        50,
        &RandomConfig::default(),
        &[Suite::Functor, Suite::Resolution],
        &VerifyOptions::default(),
    )
    .unwrap();
    suite_outcome(&reports, |id| {
        id.starts_with("F* ") || id.starts_with("T(C)") || id.starts_with("double complex") || id.contains(")* =")
    })
}

fn map_laws() -> Outcome {
    let r = verify_maps(SEED, 100, 4, 4, &VerifyOptions::default()).unwrap();
    match r.failures.first() {
        None => outcome(true, format!("{} samples, {} checks", r.samples, r.checks)),
        Some(f) => outcome(false, format!("{}: {}", f.identity, f.detail)),
    }
}

fn linear_quotients() -> Outcome {
    let cfg = RandomConfig::default();
    let mut checked = 0;
    for k in 0..50 {
        let mut g = InstanceGenerator::new(SEED + 4, k, cfg.clone());
        let (i, lq) = g.lq_ideal(None);
        let t = g.tuple(i.ring().nvars());
        let ring = ExpandedRing::new(i.ring().clone(), t).unwrap();
        let order = OrderedGenerators::new(&i, lq.order.clone()).unwrap();
        let star = ring.expand_ideal(&i).unwrap();
        let out = match expansion_order(&ring, &order) {
            Ok(out) => out,
            Err(e) => return outcome(false, format!("instance {k}: {e}")),
        };
        let recheck = OrderedGenerators::new(&star, out.order.clone()).map(|o| o.is_linear_quotients());
        if recheck != Ok(true) {
            return outcome(false, format!("instance {k}: expanded ordering rejected"));
        }
        checked += 1;
    }
    let mut linear_pairs = 0;
    for k in 0..60 {
        let mut g = InstanceGenerator::new(SEED + 5, k, cfg.clone());
        let d = 2 + (k % 2) as u32;
        let i = if k < 30 {
            g.lq_ideal(Some(d)).0
        } else {
            let ring = g.ring();
            g.equigenerated_in(&ring, d)
        };
        let t = g.tuple(i.ring().nvars());
        let ring = ExpandedRing::new(i.ring().clone(), t).unwrap();
        let before = tor_betti::<Q>(&i).unwrap().graded().is_linear(d as u64);
        let after = tor_betti::<Q>(&ring.expand_ideal(&i).unwrap()).unwrap().graded().is_linear(d as u64);
        if before != after || (k < 30 && !before) {
            return outcome(false, format!("equigenerated instance {k}: linear {before} vs expanded {after}"));
        }
        linear_pairs += usize::from(before);
    }
    outcome(true, format!("{checked} orderings; 60 equigenerated ideals, {linear_pairs} linear"))
}

fn extremal_shifts_check() -> Outcome {
    let i = ideal(6, &["x1*x4*x6", "x2*x4*x6", "x3*x4*x5", "x3*x4*x6"]);
    let fmin = minimize(&taylor_complex::<Q>(&i).unwrap()).unwrap();
    if !extremal_shifts(&fmin).contains(&(1, Monomial::new(vec![0, 0, 1, 1, 1, 1]))) {
        return outcome(false, "(0,0,1,1,1,1) is not an extremal shift in degree 1");
    }
    let cfg = RandomConfig::default();
    for k in 0..100 {
        let inst = Instance::random(SEED + 6, k, &cfg);
        let fmin = minimize(&taylor_complex::<Q>(&inst.ideal).unwrap()).unwrap();
        let full = projdim_and_reg(&fmin, &inst.tuple).unwrap().0;
        let restricted = projdim_over(&extremal_shifts(&fmin), &inst.tuple);
        if full != restricted {
            return outcome(false, format!("instance {k}: {restricted} vs {full}\n{}", inst.reproducer()));
        }
    }
    outcome(true, "example shift found; 100 instances agree")
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 9] = [
        ("worked example expansion", worked_example_expansion, 1),
        ("expansion commutes with ideal operations", ideal_operations_suite, 60),
        ("primary decomposition and associated primes", decomposition_suite, 60),
        ("prime power Betti numbers", prime_power_formula, 30),
        ("Betti numbers, projdim and regularity of expansions", betti_theorem, 300),
        ("expanded resolution and total complex", structural_checks, 120),
        ("lifting map laws", map_laws, 60),
        ("linear quotients and linearity", linear_quotients, 60),
        ("extremal shifts", extremal_shifts_check, 30),
    ];
    let mut failed = 0;
    for (n, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let in_time = took <= Duration::from_secs(*limit);
        let ok = o.ok && in_time;
        failed += usize::from(!ok);
        println!(
            "criterion {}: {} {name} ({:.2}s, limit {limit}s{}): {}",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            if in_time { "" } else { ", too slow" },
            o.summary
        );
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
