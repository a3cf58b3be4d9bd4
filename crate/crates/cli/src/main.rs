//! `asdcheck`: sweep, evaluate and scan the congruence suites.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use asd_core::engine::sweep::{parse_int_list, scan, Ranges, Report, Span, SweepPlan};
use asd_core::engine::{run_plan, CaseResult, EngineConfig, Status, Suite};
use asd_core::exact::format_rational;
use asd_core::lucas::{lucas_u, lucas_u_mod, LucasParams};
use asd_core::series::{apery, s_sum_exact, s_sum_mod_checkpoints, SeriesSpec, Variant};
use asd_core::PadicCtx;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "asdcheck", version)]
#[command(about = "Verify ASD-type supercongruences for truncated 1F0 sums and related lemmas")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate every case in the ranges and write a JSON report
    Verify(SweepArgs),
    /// Print a single series value, exactly or modulo p^e
    Eval(EvalArgs),
    /// Sweep and print only failures and errors
    Scan {
        #[command(flatten)]
        sweep: SweepArgs,
        /// Stop after this many failures.
        #[arg(long)]
        stop_after: Option<usize>,
    },
}

/// Comma-separated integers and ranges, e.g. `1,2,3` or `-5..5`.
#[derive(Clone, Debug)]
struct IntList(Vec<i64>);

impl FromStr for IntList {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        parse_int_list(s).map(IntList).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Corrected,
    Literal,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Corrected => Variant::Corrected,
            VariantArg::Literal => Variant::Literal,
        }
    }
}

#[derive(Debug, Args, Default)]
struct SweepArgs {
    /// Suite id, comma-separated ids, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Prime range `a..b`; non-primes and 2 are skipped.
    #[arg(long, allow_hyphen_values = true)]
    primes: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<IntList>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<Span>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<Span>,
    #[arg(long, value_enum, default_value = "corrected")]
    variant: Option<VariantArg>,
    /// Skip cases whose largest index exceeds this.
    #[arg(long)]
    max_index: Option<u64>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomised trials.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trials per parameter point for randomised suites.
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    oracle_cutoff: Option<u64>,
    #[arg(long)]
    crosscheck_cutoff: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeriesKind {
    S,
    Apery,
    Lucas,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, value_enum)]
    series: SeriesKind,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    m: i64,
    /// Number of terms (for `s`) or sequence index.
    #[arg(
        long = "index",
        visible_alias = "N",
        alias = "n",
        allow_hyphen_values = true
    )]
    index: i64,
    /// Reduce modulo `p^e`.
    #[arg(long = "mod")]
    modulus: Option<String>,
    #[arg(long, value_enum, default_value = "corrected")]
    variant: VariantArg,
}

fn parse_suites(s: &str) -> Result<Vec<Suite>, String> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = Vec::new();
    for id in s.split(',').map(str::trim) {
        // `lemma-2-1` selects all three parts.
        if id == "lemma-2-1" {
            out.extend([
                Suite::BinomialMultiple,
                Suite::BinomialCoprime,
                Suite::BinomialShifted,
            ]);
            continue;
        }
        out.push(id.parse::<Suite>().map_err(|e| e.to_string())?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn plan_from(args: &SweepArgs) -> Result<SweepPlan, String> {
    let mut plan = SweepPlan::new(parse_suites(&args.suite)?);
    plan.ranges = Ranges {
        primes: args.primes,
        m: args.m.clone().map(|l| l.0),
        n: args.n,
        alpha: args.alpha,
        s: args.s,
        l: args.l,
        trials: args.trials,
        max_index: args.max_index,
    };
    plan.variant = args.variant.map(Variant::from).unwrap_or_default();
    let defaults = EngineConfig::default();
    plan.config = EngineConfig {
        oracle_cutoff: args.oracle_cutoff.unwrap_or(defaults.oracle_cutoff),
        crosscheck_cutoff: args.crosscheck_cutoff.unwrap_or(defaults.crosscheck_cutoff),
        seed: args.seed,
    };
    plan.jobs = args.jobs;
    Ok(plan)
}

fn emit(report: &Report, out: Option<&PathBuf>) -> io::Result<()> {
    let json = report.to_json();
    match out {
        Some(path) => fs::write(path, json),
        None => io::stdout().lock().write_all(json.as_bytes()),
    }
}

fn summary_line(report: &Report) -> String {
    let s = &report.summary;
    format!(
        "{} cases: {} passed, {} failed, {} errored, {} ill-posed",
        s.total, s.passed, s.failed, s.errored, s.ill_posed
    )
}

fn describe(case: &CaseResult) -> String {
    let p = &case.params;
    let mut fields = Vec::new();
    let mut push = |name: &str, v: Option<String>| {
        if let Some(v) = v {
            fields.push(format!("{name}={v}"));
        }
    };
    push("p", p.p.map(|x| x.to_string()));
    push("m", p.m.map(|x| x.to_string()));
    push("n", p.n.map(|x| x.to_string()));
    push("alpha", p.alpha.map(|x| x.to_string()));
    push("s", p.s.map(|x| x.to_string()));
    push("l", p.l.map(|x| x.to_string()));
    push("k", p.k.map(|x| x.to_string()));
    push("trial", p.trial.map(|x| x.to_string()));
    push("variant", p.variant.map(|x| x.to_string()));
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    let mut line = format!(
        "{} {}: {}, achieved {}, required {}, margin {}",
        case.suite,
        fields.join(" "),
        status_name(case.status),
        show(case.achieved().map(|v| v.to_string())),
        show(
            case.required()
                .map(|r| r.exponent().map_or("exact".into(), |e| e.to_string()))
        ),
        show(case.margin().map(|v| v.to_string())),
    );
    if let Some(err) = &case.error {
        line.push_str(&format!(" ({err})"));
    }
    line
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Error => "error",
        Status::IllPosed => "ill-posed",
    }
}

fn verify(args: &SweepArgs) -> ExitCode {
    let plan = match plan_from(args) {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    let report = match run_plan(&plan) {
        Ok(r) => r,
        Err(e) => return usage(&e.to_string()),
    };
    if let Err(e) = emit(&report, args.out.as_ref()) {
        eprintln!("asdcheck: cannot write report: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    eprintln!("{}", summary_line(&report));
    exit_for(&report)
}

fn run_scan(args: &SweepArgs, stop_after: Option<usize>) -> ExitCode {
    let plan = match plan_from(args) {
        Ok(p) => p,
        Err(e) => return usage(&e),
    };
    let report = match scan(&plan, stop_after) {
        Ok(r) => r,
        Err(e) => return usage(&e.to_string()),
    };
    let mut stdout = io::stdout().lock();
    for case in &report.cases {
        let _ = writeln!(stdout, "{}", describe(case));
    }
    if let Some(path) = &args.out {
        if let Err(e) = emit(&report, Some(path)) {
            eprintln!("asdcheck: cannot write report: {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    }
    exit_for(&report)
}

fn exit_for(report: &Report) -> ExitCode {
    if report.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("asdcheck: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn parse_modulus(s: &str) -> Result<PadicCtx, String> {
    let bad = || format!("malformed modulus '{s}', expected p^e");
    let (p, e) = s.split_once('^').ok_or_else(bad)?;
    let p: u64 = p.trim().parse().map_err(|_| bad())?;
    let e: u32 = e.trim().parse().map_err(|_| bad())?;
    PadicCtx::new(p, e).map_err(|err| err.to_string())
}

fn eval_value(args: &EvalArgs) -> Result<String, String> {
    let ctx = args.modulus.as_deref().map(parse_modulus).transpose()?;
    let m = BigInt::from(args.m);
    let err = |e: asd_core::Error| e.to_string();
    let nonnegative = || {
        u64::try_from(args.index)
            .map_err(|_| format!("index must be nonnegative, got {}", args.index))
    };
    match args.series {
        SeriesKind::S => {
            let spec = SeriesSpec::new(m, args.variant.into()).map_err(err)?;
            let n = nonnegative()?;
            match ctx {
                Some(ctx) => {
                    Ok(s_sum_mod_checkpoints(&[n], &spec, &ctx).map_err(err)?[0].to_string())
                }
                None => Ok(format_rational(&s_sum_exact(n, &spec))),
            }
        }
        SeriesKind::Apery => {
            let a = apery(nonnegative()?);
            Ok(match ctx {
                Some(ctx) => ctx.from_bigint(&a).to_string(),
                None => a.to_string(),
            })
        }
        SeriesKind::Lucas => {
            let params = LucasParams::for_multiplier(&m);
            match ctx {
                Some(ctx) => Ok(lucas_u_mod(args.index, &params, &ctx)
                    .map_err(err)?
                    .to_string()),
                None => Ok(lucas_u(args.index, &params).map_err(err)?.to_string()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        None => verify(&SweepArgs {
            suite: "all".into(),
            variant: Some(VariantArg::Corrected),
            ..Default::default()
        }),
        Some(Command::Verify(args)) => verify(&args),
        Some(Command::Scan { sweep, stop_after }) => run_scan(&sweep, stop_after),
        Some(Command::Eval(args)) => match eval_value(&args) {
            Ok(v) => {
                println!("{v}");
                ExitCode::SUCCESS
            }
            Err(e) => usage(&e),
        },
    }
}
