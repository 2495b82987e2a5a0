use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use cherednik_core::cherednik::{AlgebraContext, Operator, TWeight};
use cherednik_core::coinv::{flag_major_genfun, hilbert_series, Coinvariants, DecompositionReport, StabilityReport};
use cherednik_core::exactfield::{format_rational, parse_rational};
use cherednik_core::exec::Execution;
use cherednik_core::jack::JackEngine;
use cherednik_core::polyring::{MultiIndex, Polynomial};
use cherednik_core::reflgroup::{canonical_representative, descent_classes, steinberg_weight, ColoredPermutation};
use cherednik_core::verify::{self, Level, SuiteReport};
use cherednik_core::{Error, ParameterSet};

const SEED_VAR: &str = "CHEREDNIK_SEED";

#[derive(Parser)]
#[command(name = "cherednik", version, about = "Exact computations in the rational Cherednik algebra of G(r,p,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The non-symmetric Jack polynomial f_mu with its weight.
    Jack {
        #[command(flatten)]
        group: GroupArgs,
        /// Exponent vector, e.g. "0,2,1".
        #[arg(long)]
        mu: String,
    },
    /// The descent basis f_{lambda_v} of the coinvariant ring (kappa = 0).
    Basis {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Every check in scope for the group; exit 1 on the first failing clause.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
    /// Hilbert series of the coinvariant ring.
    Hilbert {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Generating function of |lambda_v| over G(r,1,n)_p.
    Flagmaj {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Colored descent classes with their shortest members.
    Descents {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Operator identities: commutativity, commutation relations, h, covariance.
    Relations {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
    /// Applies operators (first --op first) to x^mu, f_mu or a JSON polynomial.
    Apply {
        #[command(flatten)]
        group: GroupArgs,
        /// y1, x2, z1, pi1, h, s1 (t_{s_1}) or zeta1 (t_{zeta_1}); repeatable.
        #[arg(long = "op", required = true)]
        ops: Vec<String>,
        #[arg(long, conflicts_with = "poly")]
        mu: Option<String>,
        /// Start from f_mu instead of x^mu.
        #[arg(long, requires = "mu")]
        jack: bool,
        /// Polynomial in the JSON form emitted by this tool.
        #[arg(long)]
        poly: Option<String>,
    },
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long)]
    n: usize,
    /// kappa as "num/den". For verify this is the nonzero value used next to kappa = 0 (default 1).
    #[arg(long)]
    kappa: Option<String>,
    #[arg(long)]
    c0: Option<String>,
    /// Override c_m, written "m=q" with m a multiple of p below r; repeatable.
    #[arg(long = "c")]
    c: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

impl LevelArg {
    fn level(self) -> Level {
        match self {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        }
    }

    fn name(self) -> &'static str {
        match self {
            LevelArg::Quick => "quick",
            LevelArg::Full => "full",
        }
    }
}

/// How a run ended.
enum Failure {
    Usage(String),
    /// A check failed; the payload has already been printed.
    Verification,
    Computation(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGroup { .. } | Error::InvalidParameters(_) | Error::InvalidInput(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Computation(other),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Clone, Copy, Serialize)]
struct GroupLabel {
    r: u32,
    p: u32,
    n: usize,
}

/// Validated group and parameters shared by all subcommands.
struct Setup {
    label: GroupLabel,
    params: ParameterSet,
    /// Whether --kappa was given explicitly.
    kappa_given: bool,
    seed: Option<u64>,
    format: Format,
}

impl Setup {
    fn from_args(args: &GroupArgs) -> Result<Setup, Failure> {
        let GroupArgs { r, p, n, .. } = *args;
        if r == 0 || p == 0 || n == 0 {
            return Err(Failure::Usage("r, p and n must be positive".into()));
        }
        if r % p != 0 {
            return Err(Failure::Usage(format!("p={p} does not divide r={r}")));
        }
        let seed = match std::env::var(SEED_VAR) {
            Ok(text) => {
                Some(text.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("{SEED_VAR}={text:?} is not a u64")))?)
            }
            Err(_) => None,
        };
        let mut params = match seed {
            Some(s) => ParameterSet::random_generic(r, p, s)?,
            None => ParameterSet::generic(r, p)?,
        };
        if let Some(k) = &args.kappa {
            params = params.with_kappa(parse_rational(k)?);
        }
        if let Some(c0) = &args.c0 {
            params = params.with_c0(parse_rational(c0)?);
        }
        for spec in &args.c {
            let (m, q) = spec.split_once('=').ok_or_else(|| Failure::Usage(format!("--c {spec:?}: expected m=q")))?;
            let m: u32 = m.trim().parse().map_err(|_| Failure::Usage(format!("--c {spec:?}: bad index")))?;
            params = params.with_c(m, parse_rational(q)?)?;
        }
        Ok(Setup { label: GroupLabel { r, p, n }, params, kappa_given: args.kappa.is_some(), seed, format: args.format })
    }

    fn n(&self) -> usize {
        self.label.n
    }

    fn context(&self) -> Result<AlgebraContext, Failure> {
        Ok(AlgebraContext::new(self.params.clone(), self.n())?)
    }

    fn coinvariants(&self) -> Result<Coinvariants, Failure> {
        if !self.params.kappa().is_zero() {
            return Err(Failure::Usage("the coinvariant ring is only available at kappa = 0".into()));
        }
        Ok(Coinvariants::new(self.params.clone(), self.n(), Execution::default())?)
    }

    fn header(&self) -> String {
        let GroupLabel { r, p, n } = self.label;
        let mut s = format!("G({r},{p},{n})  kappa={}  c0={}", format_rational(self.params.kappa()), format_rational(self.params.c0()));
        for (m, c) in self.params.c() {
            s.push_str(&format!("  c{m}={}", format_rational(c)));
        }
        if let Some(seed) = self.seed {
            s.push_str(&format!("  seed={seed}"));
        }
        s
    }
}

fn parse_mu(text: &str, n: usize) -> Result<MultiIndex, Failure> {
    let entries = text
        .split(',')
        .map(|part| part.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Failure::Usage(format!("--mu {text:?}: expected comma-separated non-negative integers")))?;
    if entries.len() != n {
        return Err(Failure::Usage(format!("--mu has {} entries but n={n}", entries.len())));
    }
    Ok(MultiIndex::new(entries))
}

fn parse_operator(text: &str, n: usize, r: u32) -> Result<Operator, Failure> {
    let bad = || Failure::Usage(format!("unknown operator {text:?}"));
    if text == "h" {
        return Ok(Operator::Casimir);
    }
    let split = text.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?;
    let (name, index) = text.split_at(split);
    let i: usize = index.parse().map_err(|_| bad())?;
    if i == 0 || i > n {
        return Err(Failure::Usage(format!("operator {text:?}: index out of range 1..={n}")));
    }
    let i = i - 1;
    Ok(match name {
        "y" => Operator::Dunkl(i),
        "x" => Operator::X(i),
        "z" => Operator::Z(i),
        "pi" => Operator::Pi(i),
        "zeta" => Operator::Group(ColoredPermutation::zeta(n, r, i, 1)),
        "s" if i + 1 < n => Operator::Group(ColoredPermutation::simple(n, r, i)),
        "s" => return Err(Failure::Usage(format!("operator {text:?}: s_i needs i < n"))),
        _ => return Err(bad()),
    })
}

fn emit<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

#[derive(Serialize)]
struct JackOutput<'a> {
    group: GroupLabel,
    seed: Option<u64>,
    mu: &'a MultiIndex,
    polynomial: &'a Polynomial,
    text: String,
    weight: &'a TWeight,
    params: &'a ParameterSet,
}

fn run_jack(setup: &Setup, mu: &str) -> Outcome {
    let mu = parse_mu(mu, setup.n())?;
    let engine = JackEngine::new(Arc::new(setup.context()?));
    let rec = engine.jack_f(&mu)?;
    match setup.format {
        Format::Json => emit(&JackOutput {
            group: setup.label,
            seed: setup.seed,
            mu: &rec.mu,
            polynomial: &rec.f,
            text: rec.f.to_string(),
            weight: &rec.weight,
            params: &rec.params,
        }),
        Format::Text => {
            println!("{}", setup.header());
            println!("f_{} = {}", rec.mu, rec.f);
            println!("{}", rec.weight);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BasisEntry {
    v: ColoredPermutation,
    lambda: MultiIndex,
    polynomial: Polynomial,
    text: String,
    weight: TWeight,
}

#[derive(Serialize)]
struct BasisOutput<'a> {
    group: GroupLabel,
    seed: Option<u64>,
    params: &'a ParameterSet,
    basis: Vec<BasisEntry>,
}

fn run_basis(setup: &Setup) -> Outcome {
    let coinv = setup.coinvariants()?;
    let basis: Vec<BasisEntry> = coinv
        .descent_basis()?
        .into_iter()
        .map(|e| BasisEntry {
            lambda: e.record.mu.clone(),
            text: e.record.f.to_string(),
            polynomial: e.record.f.clone(),
            weight: e.record.weight.clone(),
            v: e.v,
        })
        .collect();
    match setup.format {
        Format::Json => emit(&BasisOutput { group: setup.label, seed: setup.seed, params: &setup.params, basis }),
        Format::Text => {
            println!("{}", setup.header());
            println!("{} basis elements", basis.len());
            for e in &basis {
                println!("{}  lambda={}  f = {}", e.v, e.lambda, e.text);
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesOutput {
    group: GroupLabel,
    coefficients: Vec<u64>,
}

fn run_series(setup: &Setup, coefficients: Vec<u64>) -> Outcome {
    match setup.format {
        Format::Json => emit(&SeriesOutput { group: setup.label, coefficients }),
        Format::Text => println!("{}", join(&coefficients, " ")),
    }
    Ok(())
}

#[derive(Serialize)]
struct ClassEntry {
    key: String,
    descents: Vec<usize>,
    colors: Vec<u32>,
    shortest: ColoredPermutation,
    lambda: MultiIndex,
    members: Vec<ColoredPermutation>,
}

fn run_descents(setup: &Setup) -> Outcome {
    let GroupLabel { r, p, n } = setup.label;
    let classes: Vec<ClassEntry> = descent_classes(r, p, n)?
        .into_iter()
        .map(|(key, members)| {
            let shortest = canonical_representative(&members[0]);
            ClassEntry {
                key: key.to_string(),
                descents: key.descents.iter().map(|d| d + 1).collect(),
                colors: key.colors.clone(),
                lambda: steinberg_weight(&shortest),
                shortest,
                members,
            }
        })
        .collect();
    match setup.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                group: GroupLabel,
                classes: Vec<ClassEntry>,
            }
            emit(&Out { group: setup.label, classes })
        }
        Format::Text => {
            println!("G({r},{p},{n}): {} classes", classes.len());
            for c in &classes {
                println!("{}  size={}  shortest={}  lambda={}", c.key, c.members.len(), c.shortest, c.lambda);
            }
        }
    }
    Ok(())
}

fn print_suites(suites: &[SuiteReport]) {
    for s in suites {
        let status = if s.passed { "PASS" } else { "FAIL" };
        println!("{status}  {} kappa={}  ({} checks)", s.name, s.kappa, s.checked);
        if let Some(c) = &s.counterexample {
            println!("      {c}");
        }
    }
}

#[derive(Serialize)]
struct RelationsOutput<'a> {
    group: GroupLabel,
    seed: Option<u64>,
    params: &'a ParameterSet,
    level: &'static str,
    suites: Vec<SuiteReport>,
    passed: bool,
}

fn run_relations(setup: &Setup, level: LevelArg) -> Outcome {
    let ctx = setup.context()?;
    let suites = verify::relation_suites(&ctx, level.level(), Execution::default())?;
    let passed = suites.iter().all(|s| s.passed);
    match setup.format {
        Format::Json => emit(&RelationsOutput {
            group: setup.label,
            seed: setup.seed,
            params: &setup.params,
            level: level.name(),
            suites,
            passed,
        }),
        Format::Text => {
            println!("{}", setup.header());
            print_suites(&suites);
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    group: GroupLabel,
    seed: Option<u64>,
    level: &'static str,
    decomposition: &'a DecompositionReport,
    stability: Vec<StabilityReport>,
    suites: Vec<SuiteReport>,
    passed: bool,
}

fn run_verify(setup: &Setup, level: LevelArg) -> Outcome {
    let mode = Execution::default();
    let nonzero_kappa = match setup.kappa_given {
        true if !setup.params.kappa().is_zero() => setup.params.kappa().clone(),
        _ => BigRational::one(),
    };
    let base = setup.params.with_kappa(BigRational::zero());
    let coinv = Coinvariants::new(base.clone(), setup.n(), mode)?;
    let decomposition = coinv.verify_decomposition()?;
    let stability =
        (0..=coinv.top_degree()).map(|d| coinv.ideal_stability_check(d)).collect::<Result<Vec<_>, _>>()?;

    let (jack_degree, tri_degree) = match level {
        LevelArg::Quick => (3, 3),
        LevelArg::Full => (4, 5),
    };
    let mut suites = Vec::new();
    for params in [base.clone(), base.with_kappa(nonzero_kappa)] {
        let ctx = Arc::new(AlgebraContext::new(params, setup.n())?);
        suites.extend(verify::relation_suites(&ctx, level.level(), mode)?);
        let engine = JackEngine::new(ctx.clone());
        suites.push(verify::weight_conformance(&engine, jack_degree, mode)?);
        suites.extend(verify::action_lemma(&engine, jack_degree, mode)?);
        suites.push(verify::triangularity(&engine, tri_degree, mode)?);
    }
    suites.push(verify::chains(coinv.context())?);

    let passed = decomposition.passed && stability.iter().all(|s| s.passed) && suites.iter().all(|s| s.passed);
    match setup.format {
        Format::Json => emit(&VerifyOutput {
            group: setup.label,
            seed: setup.seed,
            level: level.name(),
            decomposition: &decomposition,
            stability,
            suites,
            passed,
        }),
        Format::Text => {
            println!("{}", setup.header());
            println!("basis elements: {} (expected {})", decomposition.cardinality, decomposition.expected_cardinality);
            println!("hilbert: {}", join(&decomposition.hilbert, " "));
            for c in &decomposition.clauses {
                println!("{}  {}  ({} checks)", if c.passed { "PASS" } else { "FAIL" }, c.name, c.checked);
                if let Some(ce) = &c.counterexample {
                    println!("      {ce}");
                }
            }
            let bad_stability: Vec<&StabilityReport> = stability.iter().filter(|s| !s.passed).collect();
            if bad_stability.is_empty() {
                println!("PASS  ideal_stability  (degrees 0..={})", coinv.top_degree());
            }
            for s in bad_stability {
                println!("FAIL  ideal_stability degree {}", s.degree);
                println!("      {}", s.counterexample.clone().unwrap_or_default());
            }
            print_suites(&suites);
            println!("{}", if passed { "verified" } else { "verification FAILED" });
        }
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct ApplyOutput<'a> {
    group: GroupLabel,
    seed: Option<u64>,
    params: &'a ParameterSet,
    ops: Vec<String>,
    input: &'a Polynomial,
    output: &'a Polynomial,
    text: String,
}

fn run_apply(setup: &Setup, ops: &[String], mu: Option<&str>, jack: bool, poly: Option<&str>) -> Outcome {
    let ctx = setup.context()?;
    let ops: Vec<Operator> = ops.iter().map(|o| parse_operator(o, setup.n(), ctx.r())).collect::<Result<_, _>>()?;
    let input = match (mu, poly) {
        (Some(mu), None) => {
            let mu = parse_mu(mu, setup.n())?;
            if jack {
                JackEngine::new(Arc::new(ctx.clone())).jack_f(&mu)?.f.clone()
            } else {
                ctx.monomial(&mu)
            }
        }
        (None, Some(json)) => {
            serde_json::from_str(json).map_err(|e| Failure::Usage(format!("--poly: {e}")))?
        }
        _ => return Err(Failure::Usage("give exactly one of --mu or --poly".into())),
    };
    let mut out = input.clone();
    for op in &ops {
        out = ctx.apply(op, &out)?;
    }
    match setup.format {
        Format::Json => emit(&ApplyOutput {
            group: setup.label,
            seed: setup.seed,
            params: &setup.params,
            ops: ops.iter().map(|o| o.to_string()).collect(),
            input: &input,
            output: &out,
            text: out.to_string(),
        }),
        Format::Text => println!("{out}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Jack { group, mu } => run_jack(&Setup::from_args(group)?, mu),
        Command::Basis { group } => run_basis(&Setup::from_args(group)?),
        Command::Verify { group, level } => run_verify(&Setup::from_args(group)?, *level),
        Command::Hilbert { group } => {
            let setup = Setup::from_args(group)?;
            let GroupLabel { r, p, n } = setup.label;
            run_series(&setup, hilbert_series(r, p, n)?)
        }
        Command::Flagmaj { group } => {
            let setup = Setup::from_args(group)?;
            let GroupLabel { r, p, n } = setup.label;
            run_series(&setup, flag_major_genfun(r, p, n)?)
        }
        Command::Descents { group } => run_descents(&Setup::from_args(group)?),
        Command::Relations { group, level } => run_relations(&Setup::from_args(group)?, *level),
        Command::Apply { group, ops, mu, jack, poly } => {
            run_apply(&Setup::from_args(group)?, ops, mu.as_deref(), *jack, poly.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Computation(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
