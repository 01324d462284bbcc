//! Command-line front end: enumeration, exact moment computation, identity
//! verification, and Monte Carlo runs with machine-readable output.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification disagreement,
//! 3 enumeration bound exceeded.

use annular_core::annular::{AnnularClass, ClassKind};
use annular_core::graphs::{
    classify, count_limit_graphs_closed, count_limit_graphs_enumerated, pairing_to_partition,
    q_vec, AnnulusGraph, LimitClass,
};
use annular_core::moments::{
    alpha_first, alpha_from_cumulants, alpha_second, alpha_third_closed, alpha_third_graphsum,
    wigner_cumulants,
};
use annular_core::partitioned::{enumerate_family, enumerate_ps_nc, family_count, PsFamily};
use annular_core::poly::CumulantPolynomial;
use annular_core::rgs::random_partition;
use annular_core::{enumeration_bound, AnnulusShape, Error as CoreError, SetPartition};
use annular_mc::{DiagonalLaw, EntryModel, OffDiagonalLaw, RadialLaw};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use std::io::Write;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_DISAGREEMENT: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "annular", version, about = "annular non-crossing combinatorics and Wigner trace moments")]
struct Cli {
    /// Cap worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Text)]
    format: OutFormat,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Enumeration size ceiling (also via ANNULAR_MAX_M).
    #[arg(long, global = true)]
    max_m: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// List a non-crossing class or partitioned-permutation family.
    Enumerate(EnumerateArgs),
    /// Exact moment of order one, two or three.
    Alpha(AlphaArgs),
    /// Run a verification suite; nonzero exit on any failure.
    Verify(VerifyArgs),
    /// Monte Carlo estimate against the exact prediction.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// nc | nc2 | snc | psnc | a family name such as join-two-pairings
    class: String,
    /// Disc size for one-circle classes.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated circle sizes, e.g. 2,2,2.
    #[arg(long)]
    shape: Option<String>,
    /// Restrict nc2 to exactly this many through strings (two circles).
    #[arg(long)]
    through: Option<usize>,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long)]
    order: usize,
    /// Disc size for order one.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    shape: Option<String>,
    /// closed | graphsum | psnc | all
    #[arg(long, default_value = "closed")]
    route: String,
    /// Keep k4, kdiag4, k6 formal and print the polynomial.
    #[arg(long)]
    symbolic: bool,
    /// Rational value for k4, e.g. -1 or 3/4 (numeric mode).
    #[arg(long, allow_hyphen_values = true)]
    k4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kdiag4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k6: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// identities | parity | oracle
    suite: String,
    /// Largest total size swept.
    #[arg(long, default_value_t = 10)]
    max_m: usize,
    /// Random partitions per shape (parity suite).
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct SimulateArgs {
    /// gaussian | phase-rademacher
    #[arg(long)]
    model: String,
    /// gaussian | rademacher (defaults to the model's natural diagonal)
    #[arg(long)]
    diag: Option<String>,
    /// First rho^2 value of the two-point radial law.
    #[arg(long)]
    rho2_a: Option<String>,
    /// Second rho^2 value.
    #[arg(long)]
    rho2_b: Option<String>,
    /// Probability of the first value.
    #[arg(long)]
    rho2_p: Option<String>,
    #[arg(long)]
    shape: String,
    /// Redundant check against the shape length.
    #[arg(long)]
    order: Option<usize>,
    /// Matrix dimension.
    #[arg(long = "N")]
    n_dim: usize,
    #[arg(long)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 20)]
    batches: usize,
    /// Fail (exit 2) when |z| exceeds this threshold.
    #[arg(long)]
    gate: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // keep help/version on stdout with success, real usage errors at 1
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let mut sink: Box<dyn Write> = match &cli.output {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => Box::new(std::io::stdout()),
    };
    let bound = enumeration_bound(cli.max_m);
    let result = match &cli.cmd {
        Cmd::Enumerate(args) => cmd_enumerate(args, cli.format, bound, &mut sink),
        Cmd::Alpha(args) => cmd_alpha(args, cli.format, bound, &mut sink),
        Cmd::Verify(args) => cmd_verify(args, cli.format, bound, &mut sink),
        Cmd::Simulate(args) => cmd_simulate(args, cli.format, bound, &mut sink),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Mc(#[from] annular_mc::McError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn exit_for(e: &CliError) -> u8 {
    match e {
        CliError::Core(CoreError::BoundExceeded { .. }) => EXIT_BOUND,
        CliError::Mc(annular_mc::McError::Core(CoreError::BoundExceeded { .. })) => EXIT_BOUND,
        _ => EXIT_USAGE,
    }
}

type CmdResult = Result<u8, CliError>;

fn parse_shape(args_n: Option<usize>, args_shape: &Option<String>) -> Result<AnnulusShape, CliError> {
    match (args_n, args_shape) {
        (Some(n), None) => Ok(AnnulusShape::new(vec![n])?),
        (None, Some(s)) => Ok(AnnulusShape::parse(s)?),
        _ => Err(CliError::Usage("give exactly one of --n or --shape".into())),
    }
}

fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.parse::<BigRational>()
        .map_err(|_| CliError::Usage(format!("bad rational {s:?}; use p or p/q")))
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------

fn cmd_enumerate(args: &EnumerateArgs, format: OutFormat, bound: usize, out: &mut dyn Write) -> CmdResult {
    let shape = parse_shape(args.n, &args.shape)?;
    if args.class == "psnc" {
        let items = enumerate_ps_nc(&shape, bound)?;
        return emit_pp_listing(&items, format, out);
    }
    if let Ok(family) = PsFamily::parse(&args.class) {
        let items = enumerate_family(family, &shape, bound)?;
        return emit_pp_listing(&items, format, out);
    }
    let kind = match args.class.as_str() {
        "nc" => ClassKind::Nc,
        "nc2" => match args.through {
            Some(k) => ClassKind::Nc2Through(k),
            None => ClassKind::Nc2,
        },
        "snc" => ClassKind::Snc,
        other => return Err(CliError::Usage(format!("unknown class {other:?}"))),
    };
    let class = AnnularClass { shape, kind };
    let items = class.enumerate(bound)?;
    match format {
        OutFormat::Text => {
            writeln!(out, "count: {}", items.len())?;
            for p in &items {
                writeln!(out, "{p}")?;
            }
        }
        OutFormat::Json => {
            let rows: Vec<String> = items.iter().map(|p| p.to_string()).collect();
            let v = serde_json::json!({ "count": items.len(), "items": rows });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        OutFormat::Csv => {
            writeln!(out, "permutation")?;
            for p in &items {
                writeln!(out, "{p}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn emit_pp_listing(
    items: &[annular_core::partitioned::PartitionedPermutation],
    format: OutFormat,
    out: &mut dyn Write,
) -> CmdResult {
    match format {
        OutFormat::Text => {
            writeln!(out, "count: {}", items.len())?;
            for pp in items {
                writeln!(out, "pi={} v={}", pp.perm(), pp.overlay())?;
            }
        }
        OutFormat::Json => {
            let v = serde_json::json!({ "count": items.len(), "items": items });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        OutFormat::Csv => {
            writeln!(out, "pi,v")?;
            for pp in items {
                writeln!(out, "\"{}\",\"{}\"", pp.perm(), pp.overlay())?;
            }
        }
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// alpha
// ---------------------------------------------------------------------------

fn cmd_alpha(args: &AlphaArgs, format: OutFormat, bound: usize, out: &mut dyn Write) -> CmdResult {
    let shape = parse_shape(args.m, &args.shape)?;
    if shape.r() != args.order {
        return Err(CliError::Usage(format!(
            "--order {} does not match a shape with {} circles",
            args.order,
            shape.r()
        )));
    }
    let wigner = wigner_cumulants();
    let routes: Vec<&str> = match args.route.as_str() {
        "all" => match args.order {
            3 => vec!["closed", "graphsum", "psnc"],
            _ => vec!["closed", "psnc"],
        },
        r @ ("closed" | "graphsum" | "psnc") => vec![r],
        other => return Err(CliError::Usage(format!("unknown route {other:?}"))),
    };
    let mut values: Vec<(String, CumulantPolynomial)> = Vec::new();
    for route in routes {
        let poly = match (args.order, route) {
            (1, "closed") => CumulantPolynomial::constant_int(alpha_first(shape.parts()[0])),
            (2, "closed") => alpha_second(shape.parts()[0], shape.parts()[1]),
            (3, "closed") => alpha_third_closed(&shape, bound)?,
            (3, "graphsum") => alpha_third_graphsum(&shape, bound)?,
            (_, "psnc") => alpha_from_cumulants(&shape, &wigner, bound)?,
            (o, r) => {
                return Err(CliError::Usage(format!("route {r:?} is not defined at order {o}")));
            }
        };
        values.push((route.to_string(), poly));
    }
    let disagree = values.windows(2).any(|w| w[0].1 != w[1].1);
    let numeric = if args.symbolic {
        None
    } else {
        match (&args.k4, &args.kdiag4, &args.k6) {
            (None, None, None) => None,
            (k4, kd, k6) => {
                let k4 = parse_rational(k4.as_deref().unwrap_or("0"))?;
                let kd = parse_rational(kd.as_deref().unwrap_or("0"))?;
                let k6 = parse_rational(k6.as_deref().unwrap_or("0"))?;
                Some((k4, kd, k6))
            }
        }
    };
    match format {
        OutFormat::Json => {
            let rows: Vec<serde_json::Value> = values
                .iter()
                .map(|(route, poly)| {
                    let mut row = serde_json::json!({
                        "route": route,
                        "polynomial": poly.to_json(),
                        "rendered": poly.render(),
                    });
                    if let Some((k4, kd, k6)) = &numeric {
                        row["value"] =
                            serde_json::json!(poly.evaluate_entry(k4, kd, k6).to_string());
                    }
                    row
                })
                .collect();
            let v = serde_json::json!({
                "shape": shape.parts(),
                "order": args.order,
                "agree": !disagree,
                "routes": rows,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        }
        OutFormat::Text | OutFormat::Csv => {
            for (route, poly) in &values {
                match &numeric {
                    Some((k4, kd, k6)) => {
                        writeln!(out, "{route}: {}", poly.evaluate_entry(k4, kd, k6))?;
                    }
                    None => writeln!(out, "{route}: {}", poly.render())?,
                }
            }
            if disagree {
                writeln!(out, "routes disagree")?;
            }
        }
    }
    Ok(if disagree { EXIT_DISAGREEMENT } else { EXIT_OK })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Reporter<'a> {
    out: &'a mut dyn Write,
    failures: usize,
}

impl<'a> Reporter<'a> {
    fn check(&mut self, name: &str, ok: bool, detail: String) -> std::io::Result<()> {
        if ok {
            writeln!(self.out, "PASS {name} {detail}")
        } else {
            self.failures += 1;
            writeln!(self.out, "FAIL {name} {detail}")
        }
    }
}

fn sorted_shapes(total: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rest: usize, parts_left: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts_left == 1 {
            if rest >= min {
                let mut v = acc.clone();
                v.push(rest);
                out.push(v);
            }
            return;
        }
        for p in min..=rest.saturating_sub(parts_left - 1) {
            acc.push(p);
            rec(rest - p, parts_left - 1, p, acc, out);
            acc.pop();
        }
    }
    rec(total, r, 1, &mut Vec::new(), &mut out);
    out
}

fn cmd_verify(args: &VerifyArgs, _format: OutFormat, bound: usize, out: &mut dyn Write) -> CmdResult {
    let mut rep = Reporter { out, failures: 0 };
    match args.suite.as_str() {
        "identities" => verify_identities(&mut rep, args.max_m, bound)?,
        "parity" => verify_parity(&mut rep, args.max_m, args.samples, args.seed)?,
        "oracle" => verify_oracle(&mut rep, args.max_m)?,
        other => return Err(CliError::Usage(format!("unknown suite {other:?}"))),
    }
    let failures = rep.failures;
    if failures > 0 {
        writeln!(out, "{failures} failure(s)")?;
        Ok(EXIT_DISAGREEMENT)
    } else {
        writeln!(out, "all checks passed")?;
        Ok(EXIT_OK)
    }
}

fn verify_identities(rep: &mut Reporter, max_m: usize, bound: usize) -> Result<(), CliError> {
    let enum_cap = max_m.min(10);
    // vanishing combination of pairing family counts, closed forms
    for m in (6..=max_m).step_by(2) {
        for parts in sorted_shapes(m, 3) {
            if parts.iter().any(|p| p % 2 != 0) {
                continue;
            }
            let shape = AnnulusShape::new(parts.clone())?;
            let r = BigInt::from(12) * family_count(PsFamily::JoinThreePairings, &shape, usize::MAX)?
                + BigInt::from(4) * family_count(PsFamily::JoinTwoTwicePairings, &shape, usize::MAX)?
                - family_count(PsFamily::JoinTwoPairingsTwoThrough, &shape, usize::MAX)?;
            rep.check(
                "pairing-family-cancellation",
                r == BigInt::from(0),
                format!("shape {parts:?} -> {r}"),
            )?;
        }
    }
    // two-through closed form against the binomial route
    for m in (4..=max_m).step_by(2) {
        for parts in sorted_shapes(m, 2) {
            let (m1, m2) = (parts[0], parts[1]);
            if m1 % 2 != 0 || m2 % 2 != 0 {
                continue;
            }
            use annular_core::annular::{nc2_through2_count, nc2_through2_count_binomial};
            let a = nc2_through2_count(m1, m2);
            let b = nc2_through2_count_binomial(m1, m2);
            rep.check("two-through-closed-form", a == b, format!("({m1},{m2}) -> {a} vs {b}"))?;
        }
    }
    // one-through joined family matches the near-pairing family
    for m in 4..=max_m.min(13) {
        for parts in sorted_shapes(m, 3) {
            let evens = parts.iter().filter(|p| *p % 2 == 0).count();
            if evens != 1 {
                continue;
            }
            let shape = AnnulusShape::new(parts.clone())?;
            let a = family_count(PsFamily::JoinTwoPairingsThroughBlock, &shape, usize::MAX)?;
            let b = family_count(PsFamily::JoinThreeNearPairings, &shape, usize::MAX)?;
            rep.check("through-block-vs-near-pairings", a == b, format!("shape {parts:?} -> {a} vs {b}"))?;
        }
    }
    // pairing count splits into limit classes with fibers, enumerated
    for m in 3..=enum_cap {
        for parts in sorted_shapes(m, 3) {
            let shape = AnnulusShape::new(parts.clone())?;
            let counts = count_limit_graphs_enumerated(&shape)?;
            let nc2 = BigInt::from(
                AnnularClass { shape: shape.clone(), kind: ClassKind::Nc2 }
                    .enumerate(bound.max(m))?
                    .len(),
            );
            let lg = counts.total();
            let rhs = &lg + &counts.uniloop24 + &counts.tree26;
            rep.check(
                "pairings-count-limit-graphs",
                nc2 == rhs,
                format!("shape {parts:?} -> {nc2} vs {rhs}"),
            )?;
            let closed = count_limit_graphs_closed(&shape)?;
            rep.check(
                "closed-counts-match-enumeration",
                closed == counts,
                format!("shape {parts:?}"),
            )?;
        }
    }
    // fiber sizes two/two/one/one/one over the pairing map
    for m in 3..=enum_cap {
        for parts in sorted_shapes(m, 3) {
            let shape = AnnulusShape::new(parts.clone())?;
            let mut fibers: std::collections::BTreeMap<SetPartition, (LimitClass, usize)> =
                Default::default();
            let pairings =
                AnnularClass { shape: shape.clone(), kind: ClassKind::Nc2 }.enumerate(bound.max(m))?;
            let mut image_ok = true;
            for sigma in pairings {
                let pi = pairing_to_partition(&sigma, &shape)?;
                match classify(&shape, &pi)?.limit() {
                    Some(class) => {
                        fibers.entry(pi).and_modify(|e| e.1 += 1).or_insert((class, 1));
                    }
                    None => image_ok = false,
                }
            }
            let ok = image_ok
                && fibers.values().all(|(class, count)| {
                    let expect = match class {
                        LimitClass::Tree26 | LimitClass::Uniloop24 => 2,
                        _ => 1,
                    };
                    *count == expect
                });
            rep.check("fiber-sizes", ok, format!("shape {parts:?} ({} fibers)", fibers.len()))?;
        }
    }
    Ok(())
}

fn verify_parity(rep: &mut Reporter, max_m: usize, samples: usize, seed: u64) -> Result<(), CliError> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for r in 1..=3usize {
        for m in r..=max_m {
            for parts in sorted_shapes(m, r) {
                let shape = AnnulusShape::new(parts.clone())?;
                let mut degree_ok = true;
                let mut cutting_ok = true;
                let mut circuit_ok = true;
                let mut q_ok = true;
                for _ in 0..samples {
                    let pi = random_partition(m, &mut rng);
                    let qg = AnnulusGraph::build(shape.clone()).quotient(&pi)?;
                    for vertex in qg.degree_profile() {
                        for (rdg, ldg) in vertex {
                            degree_ok &= rdg == ldg;
                        }
                    }
                    let el = qg.elementarize();
                    for class in el.classes.iter().filter(|c| c.is_cutting) {
                        for (j, &count) in class.per_circle.iter().enumerate() {
                            cutting_ok &= count % 2 == 0;
                            let (f, b) = class.orientation_split[j];
                            cutting_ok &= f == b;
                        }
                    }
                    if el.is_connected() && el.q1() == 0 {
                        let circuit = el.circuit_classes();
                        for j in 0..shape.r() {
                            let odd: Vec<bool> = circuit
                                .iter()
                                .map(|&c| el.classes[c].per_circle[j] % 2 == 1)
                                .collect();
                            circuit_ok &= odd.iter().all(|&o| o) || odd.iter().all(|&o| !o);
                        }
                    }
                    if shape.r() == 3 {
                        let class = classify(&shape, &pi)?;
                        let twice_q = 2 * pi.num_blocks() as i64 - m as i64;
                        if class.limit().is_some() {
                            q_ok &= twice_q == -2;
                        }
                        if (-1..=2).contains(&twice_q) {
                            q_ok &= class.limit().is_none();
                        }
                    }
                }
                rep.check("degree-parity", degree_ok, format!("shape {parts:?}"))?;
                rep.check("cutting-edge-parity", cutting_ok, format!("shape {parts:?}"))?;
                rep.check("circuit-odd-propagation", circuit_ok, format!("shape {parts:?}"))?;
                if shape.r() == 3 {
                    rep.check("q-soundness", q_ok, format!("shape {parts:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn verify_oracle(rep: &mut Reporter, max_m: usize) -> Result<(), CliError> {
    use annular_core::graphs::limit_partitions_by_sweep;
    for m in 3..=max_m {
        for parts in sorted_shapes(m, 3) {
            let shape = AnnulusShape::new(parts.clone())?;
            let swept: std::collections::BTreeSet<SetPartition> =
                limit_partitions_by_sweep(&shape).into_iter().map(|(pi, _)| pi).collect();
            let images: std::collections::BTreeSet<SetPartition> =
                AnnularClass { shape: shape.clone(), kind: ClassKind::Nc2 }
                    .enumerate(usize::MAX)?
                    .iter()
                    .map(|sigma| pairing_to_partition(sigma, &shape))
                    .collect::<Result<_, _>>()?;
            rep.check(
                "classification-vs-pairing-image",
                swept == images,
                format!("shape {parts:?} ({} partitions)", swept.len()),
            )?;
            // every swept limit partition sits at q = -1
            let ok = swept.iter().all(|pi| {
                let (q1, tq2) = q_vec(&shape, pi).expect("same size");
                2 * q1 + tq2 == -2
            });
            rep.check("limit-q-is-minus-one", ok, format!("shape {parts:?}"))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

fn cmd_simulate(args: &SimulateArgs, format: OutFormat, bound: usize, out: &mut dyn Write) -> CmdResult {
    let shape = AnnulusShape::parse(&args.shape)?;
    if let Some(order) = args.order {
        if order != shape.r() {
            return Err(CliError::Usage(format!(
                "--order {order} does not match a shape with {} circles",
                shape.r()
            )));
        }
    }
    let off = match args.model.as_str() {
        "gaussian" => OffDiagonalLaw::Gaussian,
        "phase-rademacher" => {
            let rho2 = match (&args.rho2_a, &args.rho2_b, &args.rho2_p) {
                (None, None, None) => RadialLaw::pure_phase(),
                (a, b, p) => RadialLaw {
                    a: parse_rational(a.as_deref().unwrap_or("1"))?,
                    b: parse_rational(b.as_deref().unwrap_or("1"))?,
                    p: parse_rational(p.as_deref().unwrap_or("1"))?,
                },
            };
            OffDiagonalLaw::PhaseRademacher { rho2 }
        }
        other => return Err(CliError::Usage(format!("unknown model {other:?}"))),
    };
    let diag = match args.diag.as_deref() {
        Some("gaussian") => DiagonalLaw::Gaussian,
        Some("rademacher") => DiagonalLaw::Rademacher,
        Some(other) => return Err(CliError::Usage(format!("unknown diagonal law {other:?}"))),
        None => match args.model.as_str() {
            "gaussian" => DiagonalLaw::Gaussian,
            _ => DiagonalLaw::Rademacher,
        },
    };
    let model = EntryModel { off, diag };
    let record = annular_mc::run_simulation(
        &model,
        &shape,
        args.n_dim,
        args.samples,
        args.seed,
        args.batches,
        bound,
    )?;
    match format {
        OutFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&record).expect("json"))?;
        }
        OutFormat::Csv => {
            writeln!(out, "model,shape,N,samples,seed,estimate,se,theory,z_score")?;
            writeln!(
                out,
                "{},\"{}\",{},{},{},{},{},{},{}",
                record.model,
                record
                    .shape
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                record.n_dim,
                record.samples,
                record.seed,
                record.estimate,
                record.se,
                record.theory,
                record.z_score
            )?;
        }
        OutFormat::Text => {
            writeln!(
                out,
                "model={} shape={} N={} samples={} seed={}",
                record.model, args.shape, record.n_dim, record.samples, record.seed
            )?;
            writeln!(
                out,
                "estimate={:.6} se={:.6} theory={:.6} z={:.3}",
                record.estimate, record.se, record.theory, record.z_score
            )?;
        }
    }
    if let Some(gate) = args.gate {
        if record.z_score.abs() > gate {
            return Ok(EXIT_DISAGREEMENT);
        }
    }
    Ok(EXIT_OK)
}
