//! `wheelwalk`: exact hitting times, spanning tree counts, and
//! cross-validation for the directed wheel graph.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/domain error,
//! 3 scale or sampling-cap error.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use output::{decimal_string, exact_string, CommandOutput, OutputFormat};
use wheelwalk_core::hitting::{self, HittingQuery};
use wheelwalk_core::montecarlo::{simulate, SimStats, WalkConfig, STEP_CAP};
use wheelwalk_core::sequences;
use wheelwalk_core::trees::{self, Direction};
use wheelwalk_core::verify::{self, Fault, VerifyOptions};
use wheelwalk_core::{DirectedWheel, Error as CoreError, Rational, VertexId};

#[derive(Parser)]
#[command(
    name = "wheelwalk",
    version,
    about = "Exact random-walk analysis of the directed wheel graph",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Average hitting times from cycle vertex 0
    Hit(HitArgs),
    /// Directed spanning tree counts
    Trees(TreesArgs),
    /// Fibonacci and Lucas numbers
    Seq(SeqArgs),
    /// Run every cross-validation suite and report pass/fail per check
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
    /// Add a decimal column with this many fractional digits
    #[arg(long)]
    digits: Option<u32>,
    /// Write the rendered output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HitArgs {
    /// Cycle size N (at least 3)
    #[arg(long)]
    n: usize,
    /// Target cycle vertex l in 1..=N-1; all targets when omitted
    #[arg(long)]
    ell: Option<usize>,
    /// Computation method
    #[arg(long, value_enum, default_value = "formula")]
    method: HitMethod,
    /// Monte Carlo sample count (mc method only)
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    /// RNG seed (mc method only)
    #[arg(long, env = "WHEELWALK_SEED", default_value_t = 42)]
    seed: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HitMethod {
    /// Fibonacci/Lucas closed form
    Formula,
    /// Exact solve of the reduced system
    Solve,
    /// Exact solve of the folded half-size system
    Fold,
    /// Entrywise explicit inverse of the folded matrix
    Inverse,
    /// Seeded Monte Carlo estimate
    Mc,
}

impl HitMethod {
    fn name(self) -> &'static str {
        match self {
            HitMethod::Formula => "formula",
            HitMethod::Solve => "solve",
            HitMethod::Fold => "fold",
            HitMethod::Inverse => "inverse",
            HitMethod::Mc => "mc",
        }
    }
}

#[derive(Args)]
struct TreesArgs {
    /// Cycle size N (at least 3)
    #[arg(long)]
    n: usize,
    /// Tree root: "hub" or "cycle:<k>"
    #[arg(long, value_parser = parse_root)]
    root: VertexId,
    /// Arborescence orientation
    #[arg(long, value_enum)]
    direction: DirectionArg,
    /// Counting method
    #[arg(long, value_enum, default_value = "cofactor")]
    method: TreeMethod,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DirectionArg {
    In,
    Out,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::In => Direction::In,
            DirectionArg::Out => Direction::Out,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeMethod {
    /// Principal minor of the matching Laplacian
    Cofactor,
    /// Closed form
    Formula,
    /// Brute-force enumeration (N <= 10)
    Enumerate,
}

impl TreeMethod {
    fn name(self) -> &'static str {
        match self {
            TreeMethod::Cofactor => "cofactor",
            TreeMethod::Formula => "formula",
            TreeMethod::Enumerate => "enumerate",
        }
    }
}

#[derive(Args)]
struct SeqArgs {
    /// Sequence to evaluate
    #[arg(value_enum)]
    kind: SeqKind,
    /// Index i (non-negative)
    i: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqKind {
    Fib,
    Lucas,
}

impl SeqKind {
    fn name(self) -> &'static str {
        match self {
            SeqKind::Fib => "fib",
            SeqKind::Lucas => "lucas",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest cycle size for the exact sweeps
    #[arg(long, default_value_t = 50)]
    n_max: usize,
    /// Largest cycle size for brute-force enumeration (3..=10)
    #[arg(long, default_value_t = 7)]
    enum_max: usize,
    /// Samples per Monte Carlo consistency case
    #[arg(long, default_value_t = 200_000)]
    mc_samples: u64,
    /// Base seed for the stochastic suites
    #[arg(long, env = "WHEELWALK_SEED", default_value_t = 42)]
    seed: u64,
    /// Corrupt one engine on purpose (mutation smoke test)
    #[arg(long, hide = true, value_parser = parse_fault)]
    inject_fault: Option<Fault>,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_root(s: &str) -> Result<VertexId, String> {
    if s == "hub" {
        return Ok(VertexId::Hub);
    }
    if let Some(k) = s.strip_prefix("cycle:") {
        return k
            .parse()
            .map(VertexId::Cycle)
            .map_err(|_| format!("invalid cycle index {k:?}"));
    }
    Err(format!("root must be \"hub\" or \"cycle:<k>\", got {s:?}"))
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse().map_err(|e: CoreError| e.to_string())
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("failed to write output: {0}")]
    Io(#[from] std::io::Error),
    #[error("{walks} of {samples} walks exceeded the {cap}-step cap; the estimate is unusable")]
    StepCapExceeded { walks: u64, samples: u64, cap: u64 },
    #[error("{0}")]
    Usage(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(CoreError::ScaleExceeded { .. }) | Failure::StepCapExceeded { .. } => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

fn execute(cli: Cli) -> Result<ExitCode, Failure> {
    let (command_output, output_args, exit) = match cli.command {
        Command::Hit(args) => {
            let out = run_hit(&args)?;
            (out, args.output, ExitCode::SUCCESS)
        }
        Command::Trees(args) => {
            let out = run_trees(&args)?;
            (out, args.output, ExitCode::SUCCESS)
        }
        Command::Seq(args) => {
            let out = run_seq(&args)?;
            (out, args.output, ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let (out, exit) = run_verify(&args)?;
            (out, args.output, exit)
        }
    };
    let rendered = command_output.render(output_args.format);
    match &output_args.out {
        Some(path) => std::fs::write(path, rendered)?,
        None => print!("{rendered}"),
    }
    Ok(exit)
}

fn run_hit(args: &HitArgs) -> Result<CommandOutput, Failure> {
    let targets: Vec<usize> = match args.ell {
        Some(ell) => vec![ell],
        None => {
            if args.n < 3 {
                return Err(CoreError::Domain(format!(
                    "cycle size must be at least 3, got {}",
                    args.n
                ))
                .into());
            }
            (1..args.n).collect()
        }
    };

    let mut params = Map::new();
    params.insert("n".into(), Value::from(args.n));
    if let Some(ell) = args.ell {
        params.insert("ell".into(), Value::from(ell));
    }
    params.insert("method".into(), Value::from(args.method.name()));

    if args.method == HitMethod::Mc {
        params.insert("samples".into(), Value::from(args.samples));
        params.insert("seed".into(), Value::from(args.seed));
        return run_hit_mc(args, &targets, params);
    }

    let single = |ell: usize| -> Result<Rational, CoreError> {
        let query = HittingQuery::new(args.n, ell)?;
        Ok(hitting::closed_form(query))
    };
    let values: Vec<(usize, Rational)> = match args.method {
        HitMethod::Formula => targets
            .iter()
            .map(|&ell| Ok((ell, single(ell)?)))
            .collect::<Result<_, CoreError>>()?,
        HitMethod::Solve => {
            // validate targets before solving the full system
            for &ell in &targets {
                HittingQuery::new(args.n, ell)?;
            }
            let h = hitting::solve_reduced(args.n)?;
            targets.iter().map(|&ell| (ell, h[ell - 1].clone())).collect()
        }
        HitMethod::Fold | HitMethod::Inverse => {
            let half = if args.method == HitMethod::Fold {
                for &ell in &targets {
                    HittingQuery::new(args.n, ell)?;
                }
                hitting::solve_folded(args.n)?
            } else {
                for &ell in &targets {
                    HittingQuery::new(args.n, ell)?;
                }
                hitting::via_inverse(args.n)?
            };
            targets
                .iter()
                .map(|&ell| {
                    let folded = ell.min(args.n - ell);
                    (ell, half[folded - 1].clone())
                })
                .collect()
        }
        HitMethod::Mc => unreachable!("handled above"),
    };

    let mut table_header = vec!["ell", "value"];
    if args.digits().is_some() {
        table_header.push("decimal");
    }
    let mut table_rows = Vec::new();
    let mut json_results = Vec::new();
    for (ell, value) in &values {
        let exact = exact_string(value);
        let mut row = vec![ell.to_string(), exact.clone()];
        let mut json = Map::new();
        json.insert("ell".into(), Value::from(*ell));
        json.insert("value".into(), Value::from(exact));
        json.insert("method".into(), Value::from(args.method.name()));
        if let Some(d) = args.digits() {
            let decimal = decimal_string(value, d);
            row.push(decimal.clone());
            json.insert("decimal".into(), Value::from(decimal));
        }
        table_rows.push(row);
        json_results.push(Value::Object(json));
    }

    let bare = match &values[..] {
        [(_, value)] => Some(match args.digits() {
            Some(d) => format!("{}  {}", exact_string(value), decimal_string(value, d)),
            None => exact_string(value),
        }),
        _ => None,
    };

    Ok(CommandOutput {
        command: "hit",
        params,
        seed: None,
        json_results,
        table_header,
        table_rows,
        bare,
    })
}

impl HitArgs {
    fn digits(&self) -> Option<u32> {
        self.output.digits
    }
}

fn run_hit_mc(
    args: &HitArgs,
    targets: &[usize],
    params: Map<String, Value>,
) -> Result<CommandOutput, Failure> {
    let mut stats_rows: Vec<(usize, SimStats)> = Vec::new();
    for &ell in targets {
        let config = WalkConfig::new(args.n, ell, args.samples, args.seed)?;
        let stats = simulate(&config);
        if stats.cap_hits > 0 {
            return Err(Failure::StepCapExceeded {
                walks: stats.cap_hits,
                samples: stats.samples,
                cap: STEP_CAP,
            });
        }
        stats_rows.push((ell, stats));
    }

    let table_header = vec!["ell", "mean", "std_err", "samples"];
    let mut table_rows = Vec::new();
    let mut json_results = Vec::new();
    for (ell, stats) in &stats_rows {
        table_rows.push(vec![
            ell.to_string(),
            stats.mean.to_string(),
            stats.std_err.to_string(),
            stats.samples.to_string(),
        ]);
        let mut json = Map::new();
        json.insert("ell".into(), Value::from(*ell));
        json.insert("value".into(), Value::from(stats.mean.to_string()));
        json.insert("method".into(), Value::from("mc"));
        json.insert("mean".into(), Value::from(stats.mean));
        json.insert("std_err".into(), Value::from(stats.std_err));
        json.insert("samples".into(), Value::from(stats.samples));
        json.insert(
            "hit_target_fraction".into(),
            Value::from(stats.hit_target_fraction),
        );
        json_results.push(Value::Object(json));
    }

    let bare = match &stats_rows[..] {
        [(_, stats)] => Some(format!(
            "mean={} std_err={} samples={}",
            stats.mean, stats.std_err, stats.samples
        )),
        _ => None,
    };

    Ok(CommandOutput {
        command: "hit",
        params,
        seed: Some(args.seed),
        json_results,
        table_header,
        table_rows,
        bare,
    })
}

fn run_trees(args: &TreesArgs) -> Result<CommandOutput, Failure> {
    let wheel = DirectedWheel::new(args.n)?;
    let direction: Direction = args.direction.into();
    let count = match args.method {
        TreeMethod::Cofactor => trees::count_via_cofactor(&wheel, args.root, direction)?,
        TreeMethod::Enumerate => trees::enumerate(&wheel, args.root, direction)?,
        TreeMethod::Formula => match direction {
            Direction::Out => trees::out_trees_closed_form(args.n, args.root)?,
            Direction::In => match args.root {
                VertexId::Hub => trees::in_trees_closed_form(args.n)?,
                VertexId::Cycle(_) => {
                    return Err(Failure::Usage(
                        "no closed form exists for in-trees rooted at a cycle vertex; \
                         use --method cofactor or enumerate"
                            .to_string(),
                    ));
                }
            },
        },
    };

    let mut params = Map::new();
    params.insert("n".into(), Value::from(args.n));
    params.insert("root".into(), Value::from(args.root.to_string()));
    params.insert("direction".into(), Value::from(direction.to_string()));
    params.insert("method".into(), Value::from(args.method.name()));

    let mut json = Map::new();
    json.insert("root".into(), Value::from(args.root.to_string()));
    json.insert("value".into(), Value::from(count.to_string()));
    json.insert("method".into(), Value::from(args.method.name()));

    Ok(CommandOutput {
        command: "trees",
        params,
        seed: None,
        json_results: vec![Value::Object(json)],
        table_header: vec!["root", "direction", "count"],
        table_rows: vec![vec![
            args.root.to_string(),
            direction.to_string(),
            count.to_string(),
        ]],
        bare: Some(count.to_string()),
    })
}

fn run_seq(args: &SeqArgs) -> Result<CommandOutput, Failure> {
    let value = match args.kind {
        SeqKind::Fib => sequences::fib(args.i),
        SeqKind::Lucas => sequences::lucas(args.i),
    };

    let mut params = Map::new();
    params.insert("kind".into(), Value::from(args.kind.name()));
    params.insert("i".into(), Value::from(args.i));

    let mut json = Map::new();
    json.insert("i".into(), Value::from(args.i));
    json.insert("value".into(), Value::from(value.to_string()));
    json.insert("method".into(), Value::from(args.kind.name()));

    Ok(CommandOutput {
        command: "seq",
        params,
        seed: None,
        json_results: vec![Value::Object(json)],
        table_header: vec!["kind", "i", "value"],
        table_rows: vec![vec![
            args.kind.name().to_string(),
            args.i.to_string(),
            value.to_string(),
        ]],
        bare: Some(value.to_string()),
    })
}

fn run_verify(args: &VerifyArgs) -> Result<(CommandOutput, ExitCode), Failure> {
    let options = VerifyOptions {
        n_max: args.n_max,
        enum_max: args.enum_max,
        mc_samples: args.mc_samples,
        seed: args.seed,
        fault: args.inject_fault,
    };
    let report = verify::run(&options)?;

    let mut params = Map::new();
    params.insert("n_max".into(), Value::from(args.n_max));
    params.insert("enum_max".into(), Value::from(args.enum_max));
    params.insert("mc_samples".into(), Value::from(args.mc_samples));
    params.insert("seed".into(), Value::from(args.seed));
    if let Some(fault) = args.inject_fault {
        params.insert("fault".into(), Value::from(fault.to_string()));
    }

    let mut table_rows = Vec::new();
    let mut json_results = Vec::new();
    for check in &report.checks {
        table_rows.push(vec![
            check.name.clone(),
            check.range.clone(),
            if check.passed { "pass" } else { "fail" }.to_string(),
            check.counterexample.clone().unwrap_or_default(),
        ]);
        let mut json = Map::new();
        json.insert("name".into(), Value::from(check.name.clone()));
        json.insert("range".into(), Value::from(check.range.clone()));
        json.insert("passed".into(), Value::from(check.passed));
        json.insert(
            "counterexample".into(),
            check
                .counterexample
                .clone()
                .map(Value::from)
                .unwrap_or(Value::Null),
        );
        json_results.push(Value::Object(json));
    }
    let all_passed = report.all_passed();
    table_rows.push(vec![
        "overall".to_string(),
        String::new(),
        if all_passed { "pass" } else { "fail" }.to_string(),
        String::new(),
    ]);

    let exit = if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    };
    Ok((
        CommandOutput {
            command: "verify",
            params,
            seed: Some(args.seed),
            json_results,
            table_header: vec!["check", "range", "status", "counterexample"],
            table_rows,
            bare: None,
        },
        exit,
    ))
}
