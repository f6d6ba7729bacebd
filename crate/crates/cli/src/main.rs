use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgebias::io::{load_dataset, render_json, render_markdown, write_dataset};
use edgebias::selfcheck;
use edgebias::synth::{generate, SbmParams};
use edgebias::verifier::{compare_linear_models, Lambda, SplitSpec};
use edgebias::{analyze, DecisionConfig, Error, OperatorKind};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

/// Measures how well node features and labels align with graph edges and
/// predicts whether a graph-aware model should beat a graph-agnostic one.
#[derive(Debug, Parser)]
#[command(name = "edgebias", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smoothness measures, hypothesis tests and verdict for one dataset.
    Analyze(AnalyzeArgs),
    /// Compare ridge-fitted graph-aware and graph-agnostic linear models.
    Verify(VerifyArgs),
    /// Write a stochastic block model dataset.
    Synth(SynthArgs),
    /// Run the built-in numerical identity checks.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Filter {
    RenormRw,
    RenormSym,
    Rw,
    Sym,
}

impl From<Filter> for OperatorKind {
    fn from(f: Filter) -> Self {
        match f {
            Filter::RenormRw => OperatorKind::RenormRwAffinity,
            Filter::RenormSym => OperatorKind::RenormSymAffinity,
            Filter::Rw => OperatorKind::RwAffinity,
            Filter::Sym => OperatorKind::SymAffinity,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    /// Path to the dataset manifest.json.
    manifest: PathBuf,
    #[arg(long, value_enum, default_value = "renorm-rw")]
    filter: Filter,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Divide each feature row by its L1 norm before measuring.
    #[arg(long)]
    row_normalize: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    manifest: PathBuf,
    /// Ridge penalty: `auto` or a positive number.
    #[arg(long, default_value = "auto", value_parser = parse_lambda)]
    lambda: Lambda,
    /// Train, validation and test fractions.
    #[arg(long, default_value = "0.6,0.2,0.2", value_parser = parse_split)]
    split: (f64, f64, f64),
    #[arg(long, default_value_t = 10)]
    seeds: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "renorm-rw")]
    filter: Filter,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    classes: usize,
    #[arg(long)]
    p_in: f64,
    #[arg(long)]
    p_out: f64,
    #[arg(long)]
    feat_dim: usize,
    /// Distance of each class mean from the origin.
    #[arg(long)]
    sep: f64,
    /// Standard deviation of the Gaussian feature noise.
    #[arg(long)]
    noise: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Dataset name recorded in the manifest.
    #[arg(long, default_value = "sbm")]
    name: String,
}

#[derive(Debug, Args)]
struct SelfcheckArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_lambda(s: &str) -> Result<Lambda, String> {
    if s == "auto" {
        return Ok(Lambda::Auto);
    }
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(Lambda::Fixed(v)),
        _ => Err(format!("expected `auto` or a positive number, got {s:?}")),
    }
}

fn parse_split(s: &str) -> Result<(f64, f64, f64), String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| format!("invalid fraction {p:?}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(format!("expected three comma-separated fractions, got {}", parts.len())),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidParameter(_) => EXIT_USAGE,
        Error::Consistency(_) => EXIT_CONSISTENCY,
        _ => EXIT_DATA,
    }
}

fn emit(text: &str, output: Option<&Path>) -> edgebias::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_analyze(args: AnalyzeArgs) -> edgebias::Result<u8> {
    let config = DecisionConfig {
        alpha: args.alpha,
        operator: args.filter.into(),
        row_normalize: args.row_normalize,
    };
    config.validate()?;
    let dataset = load_dataset(&args.manifest)?;
    let report = analyze(&dataset.graph, &dataset.name, &config)?;
    let text = match args.format {
        Format::Json => render_json(&report)?,
        Format::Md => render_markdown(&report),
    };
    emit(&text, args.output.as_deref())?;
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> edgebias::Result<u8> {
    let (train, val, test) = args.split;
    let split = SplitSpec {
        train,
        val,
        test,
        seed: args.seed,
        stratified: true,
    };
    split.validate()?;
    let dataset = load_dataset(&args.manifest)?;
    let result = compare_linear_models(&dataset.graph, &split, args.lambda, args.filter.into(), args.seeds)?;
    emit(&render_json(&result)?, args.output.as_deref())?;
    Ok(0)
}

fn run_synth(args: SynthArgs) -> edgebias::Result<u8> {
    let params = SbmParams {
        num_nodes: args.nodes,
        num_classes: args.classes,
        class_proportions: None,
        p_in: args.p_in,
        p_out: args.p_out,
        feat_dim: args.feat_dim,
        separation: args.sep,
        noise: args.noise,
        seed: args.seed,
    };
    let g = generate(&params)?;
    let manifest = write_dataset(&args.out, &args.name, &g)?;
    println!("{}", manifest.display());
    Ok(0)
}

fn run_selfcheck(args: SelfcheckArgs) -> edgebias::Result<u8> {
    let report = selfcheck::run_all(args.trials, args.seed)?;
    for s in &report.suites {
        println!(
            "{} {} trials={} max_error={:.3e} tolerance={:.0e}",
            if s.passed { "PASS" } else { "FAIL" },
            s.name,
            s.trials,
            s.max_error,
            s.tolerance
        );
    }
    Ok(if report.passed() { 0 } else { EXIT_CONSISTENCY })
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("EDGEBIAS_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("EDGEBIAS_THREADS must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    let result = match cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Verify(args) => run_verify(args),
        Command::Synth(args) => run_synth(args),
        Command::Selfcheck(args) => run_selfcheck(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            log::debug!("{e:?}");
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
