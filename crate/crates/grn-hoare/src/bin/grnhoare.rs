use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use grn_hoare::solver::DEFAULT_VALUATION_CAP;
use grn_hoare::{
    derive_triple, parse_assertion, parse_network, parse_program, parse_triple, parse_valuation,
    report_json, solve_triple, HoareTriple, Network, Oracle, SolveMode, SolverConfig,
    TripleVerdict, Valuation,
};

#[derive(Parser)]
#[command(
    name = "grnhoare",
    version,
    about = "Hoare-style parameter synthesis for discrete gene regulatory networks"
)]
struct Cli {
    /// Number of worker threads for solving (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct TripleArgs {
    /// Triple file: pre { ... } program { ... } post { ... }
    triple: Option<PathBuf>,
    /// Inline precondition (with --program and --post, instead of a file)
    #[arg(long)]
    pre: Option<String>,
    /// Inline path program
    #[arg(long)]
    program: Option<String>,
    /// Inline postcondition
    #[arg(long)]
    post: Option<String>,
}

#[derive(Args)]
struct CapArgs {
    /// Abort when the free-parameter space exceeds this many valuations
    #[arg(long, default_value_t = DEFAULT_VALUATION_CAP as u64)]
    max_valuations: u64,
    /// Abort when an oracle collection exceeds this many sets
    /// (overrides GRNHOARE_MAX_SETS)
    #[arg(long)]
    max_sets: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Oracle,
    Wp,
}

impl From<ModeArg> for SolveMode {
    fn from(m: ModeArg) -> SolveMode {
        match m {
            ModeArg::Oracle => SolveMode::Oracle,
            ModeArg::Wp => SolveMode::Wp,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a network file and report its shape
    Validate { network: PathBuf },
    /// Derive the weakest precondition and loop side conditions of a triple
    Wp {
        network: PathBuf,
        #[command(flatten)]
        triple: TripleArgs,
        /// Normalize every intermediate assertion
        #[arg(long)]
        simplify: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide a triple under one concrete valuation
    Check {
        network: PathBuf,
        #[command(flatten)]
        triple: TripleArgs,
        /// Valuation file: param K[v,{...}] = n; per free parameter
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long, value_enum, default_value = "oracle")]
        mode: ModeArg,
        /// Loop-unrolling budget for oracle mode
        #[arg(long, default_value_t = grn_hoare::oracle::DEFAULT_FUEL)]
        fuel: u64,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Enumerate all valuations and report the consistent ones
    Solve {
        network: PathBuf,
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum, default_value = "wp")]
        mode: ModeArg,
        #[arg(long, default_value_t = grn_hoare::oracle::DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Report real wall-clock time instead of 0 in elapsed_ms
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Render the asynchronous state graph under one valuation
    Graph {
        network: PathBuf,
        #[arg(long)]
        valuation: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
}

enum CliError {
    /// Diagnostic already formatted as `error[CODE]: message`; exit 1.
    Input(String),
    /// Usage problem; exit 2.
    Usage(String),
    /// Cap or fuel limitation; exit 3.
    Cap(String),
}

impl CliError {
    fn input(code: &str, message: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("error[{}]: {}", code, message))
    }

    fn cap(code: &str, message: impl std::fmt::Display) -> CliError {
        CliError::Cap(format!("error[{}]: {}", code, message))
    }
}

impl From<grn_hoare::ParseError> for CliError {
    fn from(e: grn_hoare::ParseError) -> CliError {
        CliError::input(e.code(), e)
    }
}

impl From<grn_hoare::CapError> for CliError {
    fn from(e: grn_hoare::CapError) -> CliError {
        CliError::cap(e.code(), e)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::input("IO", format!("{}: {}", path.display(), e)))
}

fn load_network(path: &Path) -> Result<Network, CliError> {
    Ok(parse_network(&read_file(path)?)?)
}

fn load_triple(net: &Network, args: &TripleArgs) -> Result<HoareTriple, CliError> {
    let inline = [&args.pre, &args.program, &args.post];
    let inline_given = inline.iter().filter(|o| o.is_some()).count();
    match (&args.triple, inline_given) {
        (Some(path), 0) => Ok(parse_triple(net, &read_file(path)?)?),
        (None, 3) => Ok(HoareTriple {
            pre: parse_assertion(net, args.pre.as_ref().unwrap())?,
            program: parse_program(net, args.program.as_ref().unwrap())?,
            post: parse_assertion(net, args.post.as_ref().unwrap())?,
        }),
        (Some(_), _) => Err(CliError::Usage(
            "error[USAGE]: give either a triple file or --pre/--program/--post, not both"
                .to_string(),
        )),
        (None, _) => Err(CliError::Usage(
            "error[USAGE]: a triple file or all of --pre, --program and --post is required"
                .to_string(),
        )),
    }
}

fn load_valuation(net: &Network, path: &Path) -> Result<Valuation, CliError> {
    Ok(parse_valuation(net, &read_file(path)?)?)
}

fn max_sets(caps: &CapArgs) -> usize {
    caps.max_sets
        .or_else(|| {
            std::env::var("GRNHOARE_MAX_SETS")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(grn_hoare::oracle::DEFAULT_MAX_SETS)
}

fn display_valuation(net: &Network, v: &Valuation) -> String {
    let parts: Vec<String> = (0..net.params().len())
        .map(|i| {
            let p = grn_hoare::ParamId(i);
            format!("{}={}", net.display_param(p), v.level(p))
        })
        .collect();
    parts.join(", ")
}

fn cmd_validate(network: &Path) -> Result<ExitCode, CliError> {
    let net = load_network(network)?;
    println!(
        "ok: {} variables, {} multiplexes, {} parameters, {} states",
        net.var_count(),
        net.multiplexes().len(),
        net.params().len(),
        net.state_count()
    );
    for i in 0..net.params().len() {
        let p = grn_hoare::ParamId(i);
        match net.fixed_value(p) {
            Some(v) => println!("  {} = {} (pinned)", net.display_param(p), v),
            None => println!(
                "  {} in 0..{}",
                net.display_param(p),
                net.param_bound(p)
            ),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_wp(
    network: &Path,
    triple: &TripleArgs,
    simplify_steps: bool,
    format: Format,
) -> Result<ExitCode, CliError> {
    let net = load_network(network)?;
    let triple = load_triple(&net, triple)?;
    let outcome = derive_triple(&net, &triple, simplify_steps);
    match format {
        Format::Json => {
            let vcs: Vec<serde_json::Value> = outcome
                .vcs
                .iter()
                .map(|vc| {
                    serde_json::json!({
                        "origin": vc.origin,
                        "kind": vc.kind.describe(),
                        "formula": net.show_assertion(&vc.formula),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "wp": net.show_assertion(&outcome.wp),
                "vcs": vcs,
                "final_implication": net.show_assertion(&outcome.final_implication),
            });
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            println!("wp: {}", net.show_assertion(&outcome.wp));
            for vc in &outcome.vcs {
                println!(
                    "vc[{}] {}: {}",
                    vc.origin,
                    vc.kind.describe(),
                    net.show_assertion(&vc.formula)
                );
            }
            println!("final: {}", net.show_assertion(&outcome.final_implication));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    network: &Path,
    triple: &TripleArgs,
    valuation: &Path,
    mode: ModeArg,
    fuel: u64,
    caps: &CapArgs,
) -> Result<ExitCode, CliError> {
    let net = load_network(network)?;
    let triple = load_triple(&net, triple)?;
    let val = load_valuation(&net, valuation)?;
    let verdict = match SolveMode::from(mode) {
        SolveMode::Oracle => {
            let mut oracle = Oracle::new(&net, &val);
            oracle.fuel = fuel;
            oracle.max_sets = max_sets(caps);
            oracle.triple_holds(&triple)?
        }
        SolveMode::Wp => {
            let outcome = derive_triple(&net, &triple, false);
            let mut goals = vec![outcome.final_implication];
            goals.extend(outcome.vcs.into_iter().map(|vc| vc.formula));
            let witness = net.enumerate_states().into_iter().find(|state| {
                goals
                    .iter()
                    .any(|g| !grn_hoare::eval_assertion(g, state, &val))
            });
            match witness {
                None => TripleVerdict::Holds,
                Some(state) => TripleVerdict::Fails(state),
            }
        }
    };
    match verdict {
        TripleVerdict::Holds => {
            println!("Holds");
            Ok(ExitCode::SUCCESS)
        }
        TripleVerdict::Fails(state) => {
            println!("Fails at ({})", net.display_state(&state));
            Ok(ExitCode::from(1))
        }
        TripleVerdict::Undetermined => {
            println!("Undetermined");
            Ok(ExitCode::from(3))
        }
    }
}

fn cmd_solve(
    network: &Path,
    triple: &TripleArgs,
    mode: ModeArg,
    fuel: u64,
    format: Format,
    timing: bool,
    caps: &CapArgs,
) -> Result<ExitCode, CliError> {
    let net = load_network(network)?;
    let triple = load_triple(&net, triple)?;
    let config = SolverConfig {
        mode: mode.into(),
        fuel,
        max_sets: max_sets(caps),
        cap: caps.max_valuations as u128,
    };
    let started = Instant::now();
    let report = solve_triple(&net, &triple, &config)?;
    let elapsed_ms = if timing {
        started.elapsed().as_millis() as u64
    } else {
        0 // keep output byte-identical across runs by default
    };
    match format {
        Format::Json => {
            let doc = report_json(&net, &triple, &report, elapsed_ms);
            println!("{}", serde_json::to_string_pretty(&doc).unwrap());
        }
        _ => {
            println!("mode: {}", report.mode.name());
            println!("total: {}", report.total);
            println!("consistent: {}", report.consistent.len());
            for v in &report.consistent {
                println!("  {}", display_valuation(&net, v));
            }
            if !report.undetermined.is_empty() {
                println!("undetermined: {}", report.undetermined.len());
                for v in &report.undetermined {
                    println!("  {}", display_valuation(&net, v));
                }
            }
            println!("constraint: {}", net.show_assertion(&report.constraint));
            if timing {
                println!("elapsed_ms: {}", elapsed_ms);
            }
        }
    }
    if !report.consistent.is_empty() {
        Ok(ExitCode::SUCCESS)
    } else if !report.undetermined.is_empty() {
        Ok(ExitCode::from(3))
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_graph(network: &Path, valuation: &Path, format: Format) -> Result<ExitCode, CliError> {
    let net = load_network(network)?;
    let val = load_valuation(&net, valuation)?;
    match format {
        Format::Dot => print!("{}", grn_hoare::dot::state_graph_dot(&net, &val)),
        _ => {
            return Err(CliError::Usage(
                "error[USAGE]: graph only supports --format dot".to_string(),
            ))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.cmd {
        Cmd::Validate { network } => cmd_validate(network),
        Cmd::Wp {
            network,
            triple,
            simplify,
            format,
        } => cmd_wp(network, triple, *simplify, *format),
        Cmd::Check {
            network,
            triple,
            valuation,
            mode,
            fuel,
            caps,
        } => cmd_check(network, triple, valuation, *mode, *fuel, caps),
        Cmd::Solve {
            network,
            triple,
            mode,
            fuel,
            format,
            timing,
            caps,
        } => cmd_solve(network, triple, *mode, *fuel, *format, *timing, caps),
        Cmd::Graph {
            network,
            valuation,
            format,
        } => cmd_graph(network, valuation, *format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("{}", msg);
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("{}", msg);
            ExitCode::from(2)
        }
        Err(CliError::Cap(msg)) => {
            eprintln!("{}", msg);
            ExitCode::from(3)
        }
    }
}
