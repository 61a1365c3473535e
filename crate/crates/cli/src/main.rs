mod cache;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hauptmodul::elimination::PivotRule;
use hauptmodul::forms::{
    classical_eisenstein, eisenstein_plus, eta_product, genus_zero_levels, kronecker_limit, level_constants,
    EtaProduct,
};
use hauptmodul::identities::theta::{theta_puiseux, Parity, ThetaSpec};
use hauptmodul::identities::{run_suite, Suite, SuiteReport};
use hauptmodul::jst::{equation_count, run_jst, JstOptions, JstResult, Variant, DEFAULT_M_MAX};
use hauptmodul::{exactnum::parse_rational, Error, QSeries};
use rayon::prelude::*;

use crate::cache::Cache;

/// Levels small enough for `run --all` without `--allow-large`.
const DESK_LEVELS: [u64; 27] =
    [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 21, 22, 26, 30, 33, 34, 35, 39, 55, 66, 70, 78, 105, 110, 119];

/// Largest system a run may build without `--allow-large`.
const MAX_EQUATIONS: u64 = 2000;

#[derive(Parser)]
#[command(name = "hauptmodul", version, about = "Exact q-expansions and Hauptmodul identities for genus-zero Γ₀(N)⁺")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the q-expansion of a single object.
    Expand {
        #[command(subcommand)]
        object: Object,
        #[arg(long, global = true, default_value_t = 10)]
        trunc: i64,
        #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run JST2 or JST3 and emit the identities for j_N and Δ_N^M.
    Run(RunArgs),
    /// Run a verification suite: classical, level:N, table3, dimensions,
    /// divisor-sums, fricke or all.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Rule::RowPriority)]
        pivot_rule: Rule,
    },
}

#[derive(Subcommand)]
enum Object {
    /// Classical E_k, normalized to constant term 1.
    Eisenstein { k2: u32 },
    /// E_k^(N).
    EisensteinPlus { level: u64, k2: u32 },
    /// Eta product such as `1^24` or `1^24,2^-24` (dilation^exponent).
    EtaProduct { spec: String },
    /// Δ_N.
    Kronecker { level: u64 },
    /// θ(a, b, c); rationals allowed, e.g. `1/2 0 17/2`.
    Theta {
        a: String,
        b: String,
        c: String,
        #[arg(long, value_enum, default_value_t = ThetaParity::All)]
        parity: ThetaParity,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = VariantArg::Jst3)]
    variant: VariantArg,
    #[arg(long = "level", value_name = "N")]
    levels: Vec<u64>,
    /// Every desk-scale level (all 44 with --allow-large).
    #[arg(long)]
    all: bool,
    /// Lift the equation-count guard.
    #[arg(long)]
    allow_large: bool,
    /// Last column of the coefficient matrix (default κ_N + 8).
    #[arg(long)]
    trunc: Option<i64>,
    #[arg(long, default_value_t = DEFAULT_M_MAX)]
    m_max: u32,
    #[arg(long, value_enum, default_value_t = Rule::RowPriority)]
    pivot_rule: Rule,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for per-level JSON (and .tex with --latex) files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    latex: bool,
    #[arg(long, env = "HAUPTMODUL_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    no_cache: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Jst2,
    Jst3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    RowPriority,
    ColumnMajor,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaParity {
    All,
    XOdd,
    YOdd,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Jst2 => Variant::Jst2,
            VariantArg::Jst3 => Variant::Jst3,
        }
    }
}

impl From<Rule> for PivotRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::RowPriority => PivotRule::RowPriority,
            Rule::ColumnMajor => PivotRule::ColumnMajor,
        }
    }
}

/// Failure classes, mapped to exit codes 1, 2 and 3.
enum Failure {
    Verification(anyhow::Error),
    Usage(anyhow::Error),
    Guard(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let err = anyhow::Error::new(e.clone());
        match e {
            Error::IdentityFailed { .. } | Error::MissingPivot(_) => Failure::Verification(err),
            Error::NoStop { .. } => Failure::Guard(err.context("no stop; raise --m-max or pass --allow-large")),
            _ => Failure::Usage(err),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn parse_eta(spec: &str) -> anyhow::Result<EtaProduct> {
    let factors = spec
        .split(',')
        .map(|f| {
            let (v, e) = f.trim().split_once('^').unwrap_or((f.trim(), "1"));
            Ok((v.parse::<u64>().context("dilation")?, e.parse::<i64>().context("exponent")?))
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .with_context(|| format!("bad eta product `{spec}`; expected e.g. 1^24,2^-24"))?;
    if factors.iter().any(|&(v, _)| v == 0) {
        bail!("dilations must be positive");
    }
    Ok(EtaProduct::new(factors))
}

fn expand(object: &Object, trunc: i64) -> Result<QSeries, Failure> {
    Ok(match object {
        Object::Eisenstein { k2 } => classical_eisenstein(*k2, trunc)?,
        Object::EisensteinPlus { level, k2 } => eisenstein_plus(*level, *k2, trunc)?,
        Object::EtaProduct { spec } => eta_product(&parse_eta(spec)?, trunc)?,
        Object::Kronecker { level } => kronecker_limit(*level, trunc)?,
        Object::Theta { a, b, c, parity } => {
            let parity = match parity {
                ThetaParity::All => Parity::All,
                ThetaParity::XOdd => Parity::XOdd,
                ThetaParity::YOdd => Parity::YOdd,
            };
            let spec = ThetaSpec::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?, parity);
            theta_puiseux(&spec, trunc)?.to_qseries()?.truncate(trunc)
        }
    })
}

fn run_levels(args: &RunArgs) -> Result<Vec<u64>, Failure> {
    let mut levels = args.levels.clone();
    if args.all {
        if args.allow_large {
            levels.extend(genus_zero_levels());
        } else {
            levels.extend(DESK_LEVELS);
        }
    }
    if levels.is_empty() {
        return Err(Failure::Usage(anyhow::anyhow!("give --level N (repeatable) or --all")));
    }
    levels.sort_unstable();
    levels.dedup();
    for &n in &levels {
        if !level_constants(n)?.genus_zero {
            return Err(Error::UnsupportedLevel(n).into());
        }
    }
    Ok(levels)
}

/// Largest M whose system stays under the equation guard.
fn guarded_m_max(n: u64, variant: Variant, args: &RunArgs) -> Result<u32, Failure> {
    if args.allow_large {
        return Ok(args.m_max);
    }
    let level = level_constants(n)?;
    let mut m = 0;
    while m < args.m_max && equation_count(&level, variant, m + 1) <= MAX_EQUATIONS {
        m += 1;
    }
    if m == 0 {
        return Err(Failure::Guard(anyhow::anyhow!("level {n}: even M=1 exceeds {MAX_EQUATIONS} equations")));
    }
    Ok(m)
}

fn run_one(n: u64, args: &RunArgs, cache: Option<&Cache>) -> Result<JstResult, Failure> {
    let variant = Variant::from(args.variant);
    let m_max = guarded_m_max(n, variant, args)?;
    let opts = JstOptions { m_max, trunc: args.trunc, pivot_rule: args.pivot_rule.into() };
    let path = cache.map(|c| c.path(n, variant, args.trunc, m_max, opts.pivot_rule));
    if let (Some(c), Some(p)) = (cache, &path) {
        if let Some(r) = c.load(p) {
            return Ok(r);
        }
    }
    let r = run_jst(n, variant, opts).map_err(|e| match e {
        Error::NoStop { .. } if m_max < args.m_max => Failure::Guard(anyhow::Error::new(e).context(format!(
            "stopped at the {MAX_EQUATIONS}-equation guard; pass --allow-large to go further"
        ))),
        e => e.into(),
    })?;
    if let (Some(c), Some(p)) = (cache, &path) {
        c.store(p, &r)?;
    }
    Ok(r)
}

fn cmd_run(args: &RunArgs) -> Result<(), Failure> {
    let levels = run_levels(args)?;
    let cache = match (&args.cache_dir, args.no_cache) {
        (Some(d), false) => Some(Cache::new(d)?),
        _ => None,
    };
    if let Some(j) = args.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global().ok();
    }
    let results: Vec<Result<JstResult, Failure>> =
        levels.par_iter().map(|&n| run_one(n, args, cache.as_ref())).collect();
    let mut ok = Vec::new();
    let mut failures = Vec::new();
    for (n, r) in levels.iter().zip(results) {
        match r {
            Ok(r) => ok.push(r),
            Err(e) => failures.push((*n, e)),
        }
    }
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for r in &ok {
            let stem = dir.join(format!("{}-N{}", r.variant, r.level));
            fs::write(stem.with_extension("json"), serde_json::to_string_pretty(r)? + "\n")
                .context("writing JSON")?;
            if args.latex {
                fs::write(stem.with_extension("tex"), latex(r)).context("writing LaTeX")?;
            }
        }
    }
    match args.format {
        Format::Text => {
            println!("N M #eqs pole");
            for r in &ok {
                println!("{}", r.summary_row());
            }
        }
        Format::Json => println!("{}", serde_json::to_string_pretty(&ok)?),
        Format::Latex => {
            for r in &ok {
                print!("{}", latex(r));
            }
        }
    }
    if failures.len() > 1 {
        for (n, e) in &failures {
            eprintln!("level {n}: {}", describe(e));
        }
    }
    let total = levels.len();
    match failures.into_iter().next() {
        None => Ok(()),
        Some((_, e)) if total == 1 => Err(e),
        Some((_, e)) => Err(e.map(|err| err.context(format!("{} of {total} levels failed", total - ok.len())))),
    }
}

fn latex(r: &JstResult) -> String {
    format!("% {} N={} M={}\n{}\n\n{}\n\n", r.variant, r.level, r.m, r.hauptmodul.latex(), r.kronecker_power.latex())
}

fn cmd_verify(suite: &str, format: Format, rule: Rule) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let opts = JstOptions { pivot_rule: rule.into(), ..Default::default() };
    let reports: Vec<SuiteReport> = run_suite(suite, opts)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        _ => reports.iter().for_each(|r| print!("{r}")),
    }
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}: {}", r.suite, c.name)))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(anyhow::anyhow!("{} failed checks: {}", failed.len(), failed.join("; "))))
    }
}

impl Failure {
    fn map(self, f: impl FnOnce(anyhow::Error) -> anyhow::Error) -> Failure {
        match self {
            Failure::Verification(e) => Failure::Verification(f(e)),
            Failure::Usage(e) => Failure::Usage(f(e)),
            Failure::Guard(e) => Failure::Guard(f(e)),
        }
    }
}

fn describe(f: &Failure) -> String {
    match f {
        Failure::Verification(e) | Failure::Usage(e) | Failure::Guard(e) => format!("{e:#}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Expand { object, trunc, format } => expand(object, *trunc).and_then(|s| {
            match format {
                Format::Json => println!("{}", serde_json::to_string(&s)?),
                _ => println!("{s}"),
            }
            Ok(())
        }),
        Command::Run(args) => cmd_run(args),
        Command::Verify { suite, format, pivot_rule } => cmd_verify(suite, *format, *pivot_rule),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", describe(&f));
            ExitCode::from(match f {
                Failure::Verification(_) => 1,
                Failure::Usage(_) => 2,
                Failure::Guard(_) => 3,
            })
        }
    }
}
