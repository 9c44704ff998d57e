//! `expansio` command-line front-end.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use expansio::betti::{tor_betti_capped, DEFAULT_LATTICE_CAP};
use expansio::double_complex::DoubleComplex;
use expansio::formulas::betti_via_formula;
use expansio::io::{format_ideal, parse_graph, parse_problem, ProblemInstance};
use expansio::linquot::{expansion_order, find_linear_quotients_order, LinearQuotients, OrderedGenerators};
use expansio::random::RandomConfig;
use expansio::verify::{verify_instance, verify_maps, verify_random, Fault, Instance, InstanceReport, Suite, VerifyOptions};
use expansio::{
    minimize, taylor_complex, verify_resolution, ChainComplex, Error, ExpandedRing, ExpansionTuple, GradedBetti,
    MonomialIdeal, ParseError, RingDescriptor, VarSet, Q,
};

const DEFAULT_SEARCH_CAP: usize = 12;

#[derive(Parser)]
#[command(name = "expansio", version, about = "Expansions of monomial ideals and their resolutions")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,

    /// Characteristic of the coefficient field; only 0 is supported.
    #[arg(long, global = true, default_value_t = 0)]
    field_char: u64,

    /// Overrides the degree bounds used by verification.
    #[arg(long, global = true, env = "EXPANSIO_MAX_DEGREE")]
    max_degree: Option<u32>,

    /// Lcm-lattice size cap for the Tor oracle, generator cap for the
    /// linear-quotients search.
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[arg(long, global = true, hide = true)]
    inject_fault: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    file: PathBuf,
    /// Work with the expansion I* instead of I.
    #[arg(long)]
    expansion: bool,
    /// Tuple replacing the file's `tuple:` line, e.g. "1 3 2".
    #[arg(long)]
    tuple: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print I* in the ideal text format.
    Expand {
        file: PathBuf,
        #[arg(long)]
        tuple: Option<String>,
    },
    /// Graded Betti table, cross-checked between methods.
    Betti {
        file: PathBuf,
        /// Methods to run; every requested method must agree.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Via::Formula, Via::Oracle, Via::TotalComplex])]
        via: Vec<Via>,
        #[arg(long, value_enum, default_value_t = Of::Expansion)]
        of: Of,
        #[arg(long)]
        tuple: Option<String>,
    },
    /// Irredundant primary decomposition.
    Decompose(Input),
    /// Associated primes.
    Ass(Input),
    Radical(Input),
    /// I : J for two problem files over the same ring.
    Colon(Pair),
    Intersect(Pair),
    SymbolicPower {
        k: u32,
        #[command(flatten)]
        input: Input,
    },
    /// An ordering with linear quotients and its colon sets, or "none".
    Linquot(Input),
    /// Minimal free resolution; with --expansion, the total complex of the
    /// double complex.
    Resolve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Emit::Ranks)]
        emit: Emit,
    },
    /// Property suites on a problem file or on seeded random instances.
    Verify {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        file: Option<PathBuf>,
        /// Seed and instance count.
        #[arg(long, num_args = 2, value_names = ["SEED", "COUNT"])]
        random: Option<Vec<u64>>,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
    },
    /// Edge ideal of a graph file, optionally with duplicated vertices.
    EdgeIdeal {
        file: PathBuf,
        /// `j:k` replaces vertex j by k copies; repeatable.
        #[arg(long)]
        duplicate: Vec<String>,
    },
}

#[derive(Args)]
struct Pair {
    first: PathBuf,
    second: PathBuf,
    #[arg(long)]
    expansion: bool,
    #[arg(long)]
    tuple: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Formula,
    Oracle,
    TotalComplex,
}

impl Via {
    fn name(self) -> &'static str {
        match self {
            Via::Formula => "formula",
            Via::Oracle => "oracle",
            Via::TotalComplex => "total-complex",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Of {
    Ideal,
    Expansion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Ranks,
    Json,
    Dot,
}

/// Errors that map to a specific exit status.
#[derive(Debug)]
enum Failure {
    Input(String),
    Verification(String),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(m) | Failure::Verification(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for Failure {}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(f) = cause.downcast_ref::<Failure>() {
            return match f {
                Failure::Input(_) => 2,
                Failure::Verification(_) => 3,
            };
        }
        if cause.downcast_ref::<ParseError>().is_some() || cause.downcast_ref::<std::io::Error>().is_some() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::Parse(_) | Error::InvalidTuple(_) | Error::InvalidArgument(_) | Error::InvalidRing(_) => 2,
                Error::CapExceeded { .. } => 4,
                Error::NotAComplex(_) | Error::NotAcyclic(_) | Error::NotMinimal(_) => 3,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    fault: Option<Fault>,
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    if cli.field_char != 0 {
        return Err(Failure::Input(format!(
            "--field-char {}: only characteristic 0 (the rationals) is supported",
            cli.field_char
        ))
        .into());
    }
    let fault = cli.inject_fault.as_deref().map(str::parse::<Fault>).transpose()?;
    let ctx = Ctx { cli, fault };
    match &cli.command {
        Command::Expand { file, tuple } => expand(&ctx, file, tuple.as_deref()),
        Command::Betti { file, via, of, tuple } => betti(&ctx, file, via, *of, tuple.as_deref()),
        Command::Decompose(input) => decompose(&ctx, input),
        Command::Ass(input) => ass(&ctx, input),
        Command::Radical(input) => {
            let (i, _) = load_ideal(input)?;
            Ok(ideal_out(&ctx, &i.radical()))
        }
        Command::Colon(pair) => {
            let (i, j) = load_pair(pair)?;
            Ok(ideal_out(&ctx, &i.colon(&j)?))
        }
        Command::Intersect(pair) => {
            let (i, j) = load_pair(pair)?;
            Ok(ideal_out(&ctx, &i.intersection(&j)?))
        }
        Command::SymbolicPower { k, input } => {
            let (i, _) = load_ideal(input)?;
            Ok(ideal_out(&ctx, &i.symbolic_power(*k)?))
        }
        Command::Linquot(input) => linquot(&ctx, input),
        Command::Resolve { input, emit } => resolve(&ctx, input, *emit),
        Command::Verify { file, random, suite } => verify(&ctx, file.as_deref(), random.as_deref(), suite),
        Command::EdgeIdeal { file, duplicate } => edge_ideal(&ctx, file, duplicate),
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<ProblemInstance> {
    let text = read(path)?;
    parse_problem(&text).with_context(|| format!("{}", path.display()))
}

fn parse_tuple(text: &str, n: usize) -> anyhow::Result<ExpansionTuple> {
    let entries = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Failure::Input(format!("'{t}' is not a tuple entry"))))
        .collect::<Result<Vec<_>, _>>()?;
    if entries.len() != n {
        return Err(Failure::Input(format!("tuple has {} entries but the ring has {n} variables", entries.len())).into());
    }
    Ok(ExpansionTuple::new(entries)?)
}

fn tuple_of(p: &ProblemInstance, over: Option<&str>) -> anyhow::Result<ExpansionTuple> {
    match (over, &p.tuple) {
        (Some(t), _) => parse_tuple(t, p.ring.nvars()),
        (None, Some(t)) => Ok(t.clone()),
        (None, None) => Err(Failure::Input("the problem has no tuple; add a 'tuple:' line or pass --tuple".into()).into()),
    }
}

fn expanded_ring(p: &ProblemInstance, over: Option<&str>) -> anyhow::Result<ExpandedRing> {
    Ok(ExpandedRing::new(p.ring.clone(), tuple_of(p, over)?)?)
}

// The ideal an `Input` refers to, with the expanded ring when `--expansion`.
fn load_ideal(input: &Input) -> anyhow::Result<(MonomialIdeal, Option<ExpandedRing>)> {
    let p = load(&input.file)?;
    if !input.expansion {
        return Ok((p.ideal, None));
    }
    let ring = expanded_ring(&p, input.tuple.as_deref())?;
    Ok((ring.expand_ideal(&p.ideal)?, Some(ring)))
}

fn load_pair(pair: &Pair) -> anyhow::Result<(MonomialIdeal, MonomialIdeal)> {
    let a = load(&pair.first)?;
    let b = load(&pair.second)?;
    if a.ring != b.ring {
        return Err(Failure::Input(format!(
            "{} and {} use different rings",
            pair.first.display(),
            pair.second.display()
        ))
        .into());
    }
    if !pair.expansion {
        return Ok((a.ideal, b.ideal));
    }
    let ring = expanded_ring(&a, pair.tuple.as_deref())?;
    Ok((ring.expand_ideal(&a.ideal)?, ring.expand_ideal(&b.ideal)?))
}

fn gens_json(i: &MonomialIdeal) -> Value {
    json!(i.gens().iter().map(|g| i.ring().format_monomial(g)).collect::<Vec<_>>())
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    json!({ "ring": i.ring().names(), "ideal": gens_json(i) })
}

fn ideal_out(ctx: &Ctx, i: &MonomialIdeal) -> String {
    if ctx.cli.json {
        format!("{}\n", ideal_json(i))
    } else {
        format_ideal(i)
    }
}

fn format_prime(ring: &RingDescriptor, p: &VarSet) -> String {
    let names: Vec<&str> = p.iter().map(|&v| ring.names()[v].as_str()).collect();
    format!("({})", names.join(", "))
}

fn expand(ctx: &Ctx, file: &Path, tuple: Option<&str>) -> anyhow::Result<String> {
    let p = load(file)?;
    let ring = expanded_ring(&p, tuple)?;
    Ok(ideal_out(ctx, &ring.expand_ideal(&p.ideal)?))
}

fn fmin_of(i: &MonomialIdeal) -> anyhow::Result<ChainComplex<Q>> {
    if i.is_zero() || i.is_unit() {
        bail!("the ideal must be nonzero and proper");
    }
    Ok(minimize(&taylor_complex::<Q>(i)?)?)
}

fn betti(ctx: &Ctx, file: &Path, via: &[Via], of: Of, tuple: Option<&str>) -> anyhow::Result<String> {
    let p = load(file)?;
    let tuple = match of {
        Of::Expansion => tuple_of(&p, tuple)?,
        Of::Ideal => ExpansionTuple::ones(p.ring.nvars()),
    };
    let ring = ExpandedRing::new(p.ring.clone(), tuple.clone())?;
    let fmin = fmin_of(&p.ideal)?;
    let cap = ctx.cli.cap.unwrap_or(DEFAULT_LATTICE_CAP);
    let mut modes: Vec<(Via, GradedBetti)> = Vec::new();
    let mut seen = BTreeSet::new();
    for &v in via {
        if !seen.insert(v.name()) {
            continue;
        }
        let table = match v {
            Via::Formula => {
                let mut g = betti_via_formula(&fmin, &tuple)?;
                if ctx.fault == Some(Fault::FormulaOffByOne) {
                    g.add(0, p.ideal.gens()[0].total_degree(), 1);
                }
                g
            }
            Via::Oracle => tor_betti_capped::<Q>(&ring.expand_ideal(&p.ideal)?, cap)?.graded(),
            Via::TotalComplex => DoubleComplex::new(&ring, &fmin)?.total_complex()?.betti_table().graded(),
        };
        modes.push((v, table));
    }
    let (first_mode, first) = &modes[0];
    let disagreements: Vec<String> = modes[1..]
        .iter()
        .filter(|(_, t)| t != first)
        .map(|(v, t)| diff(first_mode.name(), first, v.name(), t))
        .collect();
    if ctx.cli.json {
        let tables: serde_json::Map<String, Value> =
            modes.iter().map(|(v, t)| (v.name().to_string(), t.to_json())).collect();
        let out = json!({
            "betti": first.betti_numbers(),
            "projdim": first.projdim().ok(),
            "regularity": first.regularity().ok(),
            "agree": disagreements.is_empty(),
            "tables": tables,
        });
        if disagreements.is_empty() {
            return Ok(format!("{out}\n"));
        }
        println!("{out}");
    }
    if !disagreements.is_empty() {
        return Err(Failure::Verification(format!("Betti tables disagree\n{}", disagreements.join("\n"))).into());
    }
    let names: Vec<&str> = modes.iter().map(|(v, _)| v.name()).collect();
    let mut out = first.to_m2_string();
    let _ = writeln!(out, "betti numbers: {:?}", first.betti_numbers());
    if let (Ok(pd), Ok(reg)) = (first.projdim(), first.regularity()) {
        let _ = writeln!(out, "projdim: {pd}\nregularity: {reg}");
    }
    let _ = writeln!(out, "methods: {}", names.join(", "));
    Ok(out)
}

// Lists the `(i, k)` entries where two graded tables differ.
fn diff(an: &str, a: &GradedBetti, bn: &str, b: &GradedBetti) -> String {
    let keys: BTreeSet<(usize, u64)> = a.iter().chain(b.iter()).map(|(i, k, _)| (i, k)).collect();
    let mut out = format!("--- {an}\n+++ {bn}\n");
    for (i, k) in keys {
        let (x, y) = (a.get(i, k), b.get(i, k));
        if x != y {
            let _ = writeln!(out, "beta_{i},{k}: {x} vs {y}");
        }
    }
    out
}

fn decompose(ctx: &Ctx, input: &Input) -> anyhow::Result<String> {
    let (i, _) = load_ideal(input)?;
    let comps = i.primary_decomposition()?;
    if ctx.cli.json {
        let items: Vec<Value> = comps
            .iter()
            .map(|c| {
                json!({
                    "component": gens_json(&c.component),
                    "radical": c.radical.iter().map(|&v| i.ring().names()[v].clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        return Ok(format!("{}\n", json!({ "ring": i.ring().names(), "components": items })));
    }
    let mut out = String::new();
    for c in &comps {
        let _ = writeln!(out, "{}  radical {}", c.component, format_prime(i.ring(), &c.radical));
    }
    Ok(out)
}

fn ass(ctx: &Ctx, input: &Input) -> anyhow::Result<String> {
    let (i, _) = load_ideal(input)?;
    let primes = i.associated_primes()?;
    let minimal = i.minimal_primes()?;
    if ctx.cli.json {
        let items: Vec<Value> = primes
            .iter()
            .map(|p| {
                json!({
                    "prime": p.iter().map(|&v| i.ring().names()[v].clone()).collect::<Vec<_>>(),
                    "minimal": minimal.contains(p),
                })
            })
            .collect();
        return Ok(format!("{}\n", json!({ "ring": i.ring().names(), "primes": items })));
    }
    let mut out = String::new();
    for p in &primes {
        let tag = if minimal.contains(p) { "minimal" } else { "embedded" };
        let _ = writeln!(out, "{} {tag}", format_prime(i.ring(), p));
    }
    Ok(out)
}

fn lq_json(ring: &RingDescriptor, lq: &LinearQuotients) -> Value {
    let steps: Vec<Value> = lq
        .order
        .iter()
        .zip(&lq.sets)
        .map(|(u, s)| {
            json!({
                "generator": ring.format_monomial(u),
                "set": s.iter().map(|&v| ring.names()[v].clone()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!(steps)
}

fn linquot(ctx: &Ctx, input: &Input) -> anyhow::Result<String> {
    let p = load(&input.file)?;
    let cap = ctx.cli.cap.unwrap_or(DEFAULT_SEARCH_CAP);
    let base = find_linear_quotients_order(&p.ideal, cap)?;
    let (ring, found) = if input.expansion {
        let er = expanded_ring(&p, input.tuple.as_deref())?;
        let found = match &base {
            Some(lq) => Some(expansion_order(&er, &OrderedGenerators::new(&p.ideal, lq.order.clone())?)?),
            None => None,
        };
        (er.flat().clone(), found)
    } else {
        (p.ring.clone(), base)
    };
    if ctx.cli.json {
        let order = found.as_ref().map(|lq| lq_json(&ring, lq));
        return Ok(format!("{}\n", json!({ "ring": ring.names(), "linear_quotients": order })));
    }
    let Some(lq) = found else {
        return Ok("none\n".into());
    };
    let mut out = String::new();
    for (u, s) in lq.order.iter().zip(&lq.sets) {
        let _ = writeln!(out, "{}  set {}", ring.format_monomial(u), format_prime(&ring, s));
    }
    Ok(out)
}

fn resolve(ctx: &Ctx, input: &Input, emit: Emit) -> anyhow::Result<String> {
    let p = load(&input.file)?;
    let fmin = fmin_of(&p.ideal)?;
    let tuple = if input.expansion {
        tuple_of(&p, input.tuple.as_deref())?
    } else {
        ExpansionTuple::ones(p.ring.nvars())
    };
    let ring = ExpandedRing::new(p.ring.clone(), tuple)?;
    let dc: DoubleComplex<Q> = DoubleComplex::new(&ring, &fmin)?;
    if emit == Emit::Dot {
        return Ok(dc.to_dot());
    }
    let (complex, target) = if input.expansion {
        let mut dc = dc;
        if ctx.fault == Some(Fault::HorizontalSign) && dc.columns().len() > 1 {
            let first = dc.horizontal(1).component(0).and_then(|m| m.matrix().iter().next().map(|(r, c, v)| (r, c, v.clone())));
            if let Some((r, c, v)) = first {
                dc = dc.with_horizontal_entry(1, 0, r, c, -v);
            }
        }
        (dc.total_complex()?, ring.expand_ideal(&p.ideal)?)
    } else {
        (fmin, p.ideal.clone())
    };
    let table = complex.betti_table();
    let bound = match ctx.cli.max_degree {
        Some(d) => u64::from(d),
        None => (table.regularity()? + complex.length() as i64 + 2).max(0) as u64,
    };
    let report = verify_resolution(&complex, &target, bound);
    if !report.passed() {
        return Err(Failure::Verification(format!(
            "the computed complex is not a resolution: {}",
            serde_json::to_string(&report)?
        ))
        .into());
    }
    if !complex.is_minimal() {
        return Err(Failure::Verification("the computed resolution is not minimal".into()).into());
    }
    Ok(match emit {
        Emit::Json => format!("{}\n", complex.to_json()),
        Emit::Ranks if ctx.cli.json => format!("{}\n", json!({ "ranks": complex.ranks(), "verified_to_degree": bound })),
        _ => {
            let ranks: Vec<String> = complex.ranks().iter().map(usize::to_string).collect();
            format!("ranks: {}\nverified to degree {bound}\n", ranks.join(" "))
        }
    })
}

fn parse_suites(names: &[String]) -> anyhow::Result<Vec<Suite>> {
    let mut out = Vec::new();
    for n in names {
        if n == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(n.parse::<Suite>().map_err(|_| Failure::Input(format!("unknown suite '{n}'")))?);
        }
    }
    let mut seen = BTreeSet::new();
    out.retain(|s| seen.insert(*s));
    Ok(out)
}

fn verify(ctx: &Ctx, file: Option<&Path>, random: Option<&[u64]>, suites: &[String]) -> anyhow::Result<String> {
    let suites = parse_suites(suites)?;
    let opts = VerifyOptions {
        degree_bound: ctx.cli.max_degree,
        fault: ctx.fault,
        ..VerifyOptions::default()
    };
    let per_instance: Vec<Suite> = suites.iter().copied().filter(|s| *s != Suite::Maps).collect();
    let (seed, count) = match random {
        Some([seed, count]) => (*seed, *count),
        Some(_) => unreachable!("clap takes exactly two values"),
        None => (0, 1),
    };
    let mut reports: Vec<InstanceReport> = Vec::new();
    if !per_instance.is_empty() {
        match file {
            Some(path) => {
                let text = read(path)?;
                let inst = Instance::parse(&text).with_context(|| format!("{}", path.display()))?;
                reports.push(verify_instance(&inst, &per_instance, &opts)?);
            }
            None => reports = verify_random(seed, count, &RandomConfig::default(), &per_instance, &opts)?,
        }
    }
    let maps = if suites.contains(&Suite::Maps) {
        let samples = if file.is_some() { 25 } else { count as usize };
        Some(verify_maps(seed, samples, 4, 4, &opts)?)
    } else {
        None
    };
    let failed = reports.iter().filter(|r| !r.passed()).count() + usize::from(maps.as_ref().is_some_and(|m| !m.passed()));
    let names: Vec<&str> = suites.iter().map(|s| s.name()).collect();
    let out = if ctx.cli.json {
        format!(
            "{}\n",
            json!({
                "seed": seed,
                "suites": names,
                "instances": reports,
                "maps": maps,
                "passed": failed == 0,
            })
        )
    } else {
        let mut out = String::new();
        match file {
            Some(path) => {
                let _ = writeln!(out, "file {}; suites {}", path.display(), names.join(", "));
            }
            None => {
                let _ = writeln!(out, "seed {seed}; {count} instances; suites {}", names.join(", "));
            }
        }
        for r in &reports {
            let label = r.index.map_or_else(|| "instance".to_string(), |k| format!("instance {k}"));
            let status = if r.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{label}: {status} ({} checks)", r.checks);
            for n in &r.notes {
                let _ = writeln!(out, "  note: {n}");
            }
            if !r.passed() {
                for f in &r.failures {
                    let _ = writeln!(out, "  [{}] {}: {}", f.suite, f.identity, f.detail);
                }
                out.push_str("  reproducer:\n");
                for line in r.reproducer.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        if let Some(m) = &maps {
            let status = if m.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "maps: {status} ({} samples, {} checks)", m.samples, m.checks);
            for f in &m.failures {
                let _ = writeln!(out, "  {}: {}", f.identity, f.detail);
            }
        }
        let _ = writeln!(out, "{}", if failed == 0 { "all passed".to_string() } else { format!("{failed} failed") });
        out
    };
    if failed > 0 {
        print!("{out}");
        return Err(Failure::Verification(format!("{failed} verification failures (seed {seed})")).into());
    }
    Ok(out)
}

fn parse_duplicate(spec: &str, n: usize) -> anyhow::Result<(usize, usize)> {
    let bad = || Failure::Input(format!("--duplicate '{spec}': expected j:k with 1 <= j <= {n} and k >= 1"));
    let (j, k) = spec.split_once(':').ok_or_else(bad)?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    if j == 0 || j > n || k == 0 {
        return Err(bad().into());
    }
    Ok((j, k))
}

fn edge_ideal(ctx: &Ctx, file: &Path, duplicate: &[String]) -> anyhow::Result<String> {
    let text = read(file)?;
    let graph = parse_graph(&text).with_context(|| format!("{}", file.display()))?;
    let base = graph.edge_ideal();
    if duplicate.is_empty() {
        return Ok(ideal_out(ctx, &base));
    }
    let mut copies = vec![1; graph.vertices()];
    for d in duplicate {
        let (j, k) = parse_duplicate(d, graph.vertices())?;
        copies[j - 1] = k;
    }
    let ring = ExpandedRing::new(base.ring().clone(), ExpansionTuple::new(copies.clone())?)?;
    let star = ring.expand_ideal(&base)?;
    let dup = graph.duplicate(&copies)?.edge_ideal();
    let exps = |i: &MonomialIdeal| -> BTreeSet<Vec<u32>> { i.gens().iter().map(|g| g.exponents().to_vec()).collect() };
    if exps(&star) != exps(&dup) {
        return Err(anyhow!(Failure::Verification(format!(
            "the duplicated graph's edge ideal {dup} differs from the expansion {star}"
        ))));
    }
    Ok(ideal_out(ctx, &star))
}
