use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use center_string::closest_string::{solve_closest_string, ClosestStringConfig};
use center_string::closest_substring::{solve_substring_with_mode, SubstringConfig, SubstringMode};
use center_string::exact::{exact_closest_string, exact_closest_substring, exhaustive_closest_string, DEFAULT_EXACT_BUDGET};
use center_string::io::{
    generate_planted, run_bench, Algo, BenchConfig, InputFormat, InstanceFile, NamedInstance, PlantedParams,
    SolutionReport,
};
use center_string::lp_round::{RoundingConfig, RoundingMode, DEFAULT_ENUM_BUDGET};
use center_string::Alphabet;

#[derive(Parser)]
#[command(name = "center-string", version, about = "Approximate and exact Closest String / Closest Substring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate Closest String.
    SolveString {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rounding: RoundingArgs,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Rounding mode: auto, randomized or derandomized.
        #[arg(long, default_value = "auto")]
        mode: RoundingMode,
        /// Try every subset member as the anchor.
        #[arg(long)]
        all_anchors: bool,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximate Closest Substring.
    SolveSubstring {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rounding: RoundingArgs,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
        /// Algorithm: auto, small or sampling.
        #[arg(long, default_value = "auto")]
        mode: SubstringMode,
        /// Rounding mode used inside the sampling path.
        #[arg(long, default_value = "auto")]
        rounding_mode: RoundingMode,
        /// Cap on the number of sampled-position assignments.
        #[arg(long, default_value_t = center_string::closest_substring::DEFAULT_Y_BUDGET)]
        budget: u64,
        #[arg(long)]
        all_anchors: bool,
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Optimal center by exhaustive search (small instances only).
    Exact {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        budget: u64,
        /// Plain sweep of every center instead of branch-and-bound.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a planted-motif instance.
    Gen {
        #[arg(long, default_value = "ACGT")]
        alphabet: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long = "L", alias = "window")]
        window: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: InputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run algorithms against the exact oracle on a suite.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file (JSON or FASTA).
    input: PathBuf,
    /// Input format; guessed from the extension when omitted.
    #[arg(long)]
    format: Option<InputFormat>,
    /// Alphabet for FASTA input; inferred when omitted.
    #[arg(long)]
    alphabet: Option<String>,
    /// Window length, overriding the file.
    #[arg(long = "L", alias = "window")]
    window: Option<usize>,
}

impl InputArgs {
    fn load(&self) -> Result<InstanceFile> {
        InstanceFile::read(&self.input, self.format, self.alphabet.as_deref(), self.window)
            .with_context(|| format!("reading {}", self.input.display()))
    }
}

#[derive(Args)]
struct RoundingArgs {
    #[arg(long, default_value_t = 0.5)]
    epsilon_prime: f64,
    #[arg(long, default_value_t = 32)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest restricted subproblem solved by enumeration.
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    enum_budget: u64,
}

impl RoundingArgs {
    fn config(&self, mode: RoundingMode) -> RoundingConfig {
        RoundingConfig {
            mode,
            trials: self.trials,
            epsilon_prime: self.epsilon_prime,
            rng_seed: self.seed,
            enum_budget: self.enum_budget,
        }
    }
}

#[derive(Args)]
struct BenchArgs {
    /// Instance files; combined with any generated instances.
    files: Vec<PathBuf>,
    /// Generate this many planted instances.
    #[arg(long, default_value_t = 0)]
    generate: usize,
    #[arg(long, default_value = "01")]
    alphabet: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long = "L", alias = "window", default_value_t = 5)]
    window: usize,
    #[arg(long, default_value_t = 1)]
    d: usize,
    #[command(flatten)]
    rounding: RoundingArgs,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// Comma-separated list of best-input, ptas, small, sampling.
    #[arg(long, value_delimiter = ',')]
    algos: Option<Vec<Algo>>,
    #[arg(long, default_value = "auto")]
    mode: RoundingMode,
    #[arg(long, default_value_t = center_string::closest_substring::DEFAULT_Y_BUDGET)]
    y_budget: u64,
    /// Node budget for the exact oracle.
    #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
    budget: u64,
    #[arg(long)]
    parallel: bool,
    /// Record wall-clock time per row.
    #[arg(long)]
    timing: bool,
    /// CSV destination; the aligned table goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_json(r: &SolutionReport) -> String {
    serde_json::to_string_pretty(r).expect("report serializes") + "\n"
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::SolveString { input, rounding, r, mode, all_anchors, parallel, out } => {
            let file = input.load()?;
            if !file.is_string_problem() {
                bail!("Closest String needs strings of equal length and no window shorter than them");
            }
            let inst = file.string_instance()?;
            let cfg = ClosestStringConfig { r, rounding: rounding.config(mode), parallel, all_anchors };
            let sol = solve_closest_string(&inst, &cfg)?;
            let params = json!({
                "r": r, "epsilon_prime": cfg.rounding.epsilon_prime, "trials": cfg.rounding.trials,
                "mode": format!("{mode:?}").to_lowercase(), "seed": cfg.rounding.rng_seed,
                "ratio_bound": cfg.ratio_bound(),
            });
            emit(out.as_deref(), &report_json(&SolutionReport::new("closest_string", "ptas", &sol, params)))?;
        }
        Command::SolveSubstring {
            input,
            rounding,
            r,
            epsilon,
            mode,
            rounding_mode,
            budget,
            all_anchors,
            parallel,
            out,
        } => {
            let inst = input.load()?.substring_instance()?;
            let cfg = SubstringConfig {
                r,
                epsilon,
                rounding: rounding.config(rounding_mode),
                y_budget: budget,
                mode,
                rng_seed: rounding.seed,
                parallel,
                all_anchors,
            };
            let (sol, used) = solve_substring_with_mode(&inst, &cfg)?;
            let algo = match used {
                SubstringMode::SmallD => "small",
                _ => "sampling",
            };
            let bound = if algo == "small" { cfg.small_ratio_bound() } else { cfg.sampling_ratio_bound() };
            let params = json!({
                "r": r, "epsilon": epsilon, "L": inst.window(), "seed": rounding.seed, "ratio_bound": bound,
            });
            emit(out.as_deref(), &report_json(&SolutionReport::new("closest_substring", algo, &sol, params)))?;
        }
        Command::Exact { input, budget, exhaustive, out } => {
            let file = input.load()?;
            let report = if file.is_string_problem() {
                let inst = file.string_instance()?;
                let sol = if exhaustive {
                    exhaustive_closest_string(&inst, budget)?
                } else {
                    exact_closest_string(&inst, budget)?
                };
                SolutionReport::new("closest_string", "exact", &sol, serde_json::Value::Null)
            } else {
                let sol = exact_closest_substring(&file.substring_instance()?, budget)?;
                SolutionReport::new("closest_substring", "exact", &sol, serde_json::Value::Null)
            };
            emit(out.as_deref(), &report_json(&report))?;
        }
        Command::Gen { alphabet, n, m, window, d, seed, format, out } => {
            let alphabet = Arc::new(Alphabet::parse(&alphabet)?);
            let file = generate_planted(&PlantedParams { alphabet, n, m, window, d, seed })?;
            let text = match format {
                InputFormat::Json => file.to_json(),
                InputFormat::Fasta => file.to_fasta(),
            };
            emit(out.as_deref(), &text)?;
        }
        Command::Bench(args) => return bench(args),
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let mut suite = Vec::new();
    for path in &args.files {
        let file = InstanceFile::read(path, None, None, None).with_context(|| format!("reading {}", path.display()))?;
        let name = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        suite.push(NamedInstance { name, file });
    }
    if args.generate > 0 {
        let alphabet = Arc::new(Alphabet::parse(&args.alphabet)?);
        for k in 0..args.generate {
            let seed = center_string::seed::derive(args.rounding.seed ^ 0x9e37_79b9, k as u64);
            let params =
                PlantedParams { alphabet: alphabet.clone(), n: args.n, m: args.m, window: args.window, d: args.d, seed };
            suite.push(NamedInstance { name: format!("planted-{k}"), file: generate_planted(&params)? });
        }
    }
    let cfg = BenchConfig {
        algos: args.algos,
        r: args.r,
        epsilon: args.epsilon,
        rounding: args.rounding.config(args.mode),
        y_budget: args.y_budget,
        oracle_budget: args.budget,
        seed: args.rounding.seed,
        parallel: args.parallel,
        timing: args.timing,
    };
    let report = run_bench(&suite, &cfg);
    match &args.out {
        Some(p) => {
            std::fs::write(p, report.to_csv()).with_context(|| format!("writing {}", p.display()))?;
            print!("{}", report.to_table());
        }
        None => print!("{}", report.to_csv()),
    }
    let bad = report.violations();
    if bad > 0 {
        eprintln!("{bad} row(s) exceed their ratio bound");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}
