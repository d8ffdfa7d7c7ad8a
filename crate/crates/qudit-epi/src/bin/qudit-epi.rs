//! Command-line front end: verification campaigns, threshold tables,
//! bound-curve and figure-data emission, and single-shot channel application.
//!
//! Exit codes: 0 success, 1 inequality violation found, 2 usage/parse error,
//! 3 numerical failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qudit_epi::bounds::BoundKind;
use qudit_epi::channels::SwapParams;
use qudit_epi::concavity::c_max_entropy_power;
use qudit_epi::emit::{
    bound_curves, bound_curves_csv, bound_curves_json, channel_apply, channel_apply_csv,
    channel_apply_json, cmax_table_csv, cmax_table_json, figure1_csv, figure1_data, figure2_csv,
    figure2_data, fmt_g17, json_rows, parse_sigma_spec, read_state_file, CmaxRow, EntropyUnit,
    OutputFormat,
};
use qudit_epi::error::Error;
use qudit_epi::verify::{run_verify, RunConfig};

#[derive(Parser)]
#[command(
    name = "qudit-epi",
    version,
    about = "Partial-swap addition rule for qudits: verification campaigns, concavity thresholds, and channel bounds"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the seeded verification campaign and emit a machine-readable report
    Verify(VerifyArgs),
    /// Tabulate the entropy-power concavity threshold c_max per dimension
    Cmax(CmaxArgs),
    /// Sample output-entropy lower-bound curves for a fixed-sigma channel
    BoundsCurve(BoundsCurveArgs),
    /// Emit figure data sets (fig1, fig2, fig3)
    FigureData(FigureArgs),
    /// Apply the partial swap addition rule to two states from files
    ChannelApply(ChannelApplyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Dimension to verify (repeatable)
    #[arg(long = "dim", default_values_t = vec![2usize, 3, 4])]
    dims: Vec<usize>,
    /// Random trials per dimension and check
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Campaign seed; identical seeds give byte-identical reports
    #[arg(long, default_value_t = 7_654_321)]
    seed: u64,
    /// Worst-margin gate for the inequality checks
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Renyi order for the inequality fuzz (repeatable)
    #[arg(long = "alpha", default_values_t = vec![0.0, 0.25, 0.5, 0.75, 0.9])]
    alphas: Vec<f64>,
    /// Fixed swap parameter to cycle through instead of random a (repeatable)
    #[arg(long = "a")]
    a_grid: Vec<f64>,
    /// Permit functional parameters outside their certified concavity range
    #[arg(long)]
    force_range: bool,
    /// Test mode: flip the commutator sign in the closed form; the
    /// realization-agreement check must then fail
    #[arg(long, hide = true)]
    inject_sign_flip: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Report format
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Args)]
struct CmaxArgs {
    /// Dimension to tabulate (repeatable)
    #[arg(long = "dim", default_values_t = vec![2usize, 3, 4, 8, 16, 32, 64])]
    dims: Vec<usize>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct BoundsCurveArgs {
    /// Channel dimension
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Swap parameter
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    /// Fixed second input: mixed | diag:p1,p2,... | file:PATH
    #[arg(long, default_value = "mixed")]
    sigma: String,
    /// Comma-separated bound kinds, or `all`
    #[arg(long, default_value = "all")]
    kinds: String,
    /// Grid points over [0, log d]
    #[arg(long, default_value_t = 101)]
    samples: usize,
    /// Display entropies in bits instead of nats
    #[arg(long)]
    bits: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct FigureArgs {
    /// Which figure data set: fig1 | fig2 | fig3
    which: String,
    /// Sample count per curve
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Dimension for fig3
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long)]
    bits: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Args)]
struct ChannelApplyArgs {
    /// JSON state file for the first input
    rho: PathBuf,
    /// JSON state file for the fixed second input
    sigma: PathBuf,
    /// Swap parameter
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long)]
    bits: bool,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::EigenFailure => 3,
        _ => 2,
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.cmd {
        Cmd::Verify(args) => {
            let format = OutputFormat::parse(&args.format)?;
            let cfg = RunConfig {
                dims: args.dims,
                trials: args.trials,
                seed: args.seed,
                tolerance: args.tolerance,
                alpha_grid: args.alphas,
                a_grid: args.a_grid,
                force_range: args.force_range,
                inject_sign_flip: args.inject_sign_flip,
            };
            let report = run_verify(&cfg)?;
            let text = match format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Csv => {
                    let mut s = String::from(
                        "name,dim,trials,tolerance,worst_margin,worst_trial,worst_seed,pass\n",
                    );
                    for c in &report.checks {
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{},{}\n",
                            c.name,
                            c.dim.map_or(String::new(), |d| d.to_string()),
                            c.trials,
                            fmt_g17(c.tolerance),
                            fmt_g17(c.worst_margin),
                            c.worst_trial.map_or(String::new(), |t| t.to_string()),
                            c.worst_seed.map_or(String::new(), |s| s.to_string()),
                            c.pass
                        ));
                    }
                    s
                }
            };
            write_output(&args.output, &text)?;
            if report.all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                for check in report.failing_checks() {
                    eprintln!(
                        "FAIL {} (d={:?}): worst margin {} at trial {:?}, seed {:?}",
                        check.name,
                        check.dim,
                        fmt_g17(check.worst_margin),
                        check.worst_trial,
                        check.worst_seed
                    );
                }
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Cmax(args) => {
            let format = OutputFormat::parse(&args.format)?;
            for &d in &args.dims {
                if d < 2 {
                    return Err(Error::ParseError(format!("dimension {d} must be >= 2")));
                }
            }
            let rows: Vec<CmaxRow> = args
                .dims
                .iter()
                .map(|&d| CmaxRow::from_threshold(&c_max_entropy_power(d)))
                .collect();
            let text = match format {
                OutputFormat::Csv => cmax_table_csv(&rows),
                OutputFormat::Json => cmax_table_json(&rows),
            };
            write_output(&args.output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::BoundsCurve(args) => {
            let format = OutputFormat::parse(&args.format)?;
            if args.dim < 2 {
                return Err(Error::ParseError("dimension must be >= 2".into()));
            }
            if args.samples < 2 {
                return Err(Error::ParseError("samples must be >= 2".into()));
            }
            let sigma = parse_sigma_spec(&args.sigma, args.dim)?;
            let p = SwapParams::new(args.a)?;
            let kinds = parse_kinds(&args.kinds)?;
            let unit = EntropyUnit::from_bits_flag(args.bits);
            let report = bound_curves(&kinds, p, &sigma, args.samples, unit)?;
            for skipped in &report.skipped {
                eprintln!(
                    "note: skipping {}: {}",
                    skipped.kind.label(),
                    skipped.reason
                );
            }
            let text = match format {
                OutputFormat::Csv => bound_curves_csv(&report),
                OutputFormat::Json => bound_curves_json(&report),
            };
            write_output(&args.output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::FigureData(args) => {
            let format = OutputFormat::parse(&args.format)?;
            if args.samples < 2 {
                return Err(Error::ParseError("samples must be >= 2".into()));
            }
            let text = match args.which.as_str() {
                "fig1" => {
                    let rows = figure1_data(args.samples);
                    match format {
                        OutputFormat::Csv => figure1_csv(&rows),
                        OutputFormat::Json => json_rows(&rows),
                    }
                }
                "fig2" => {
                    let rows = figure2_data(args.samples);
                    match format {
                        OutputFormat::Csv => figure2_csv(&rows),
                        OutputFormat::Json => json_rows(&rows),
                    }
                }
                "fig3" => {
                    let sigma = parse_sigma_spec("mixed", args.dim)?;
                    let p = SwapParams::new(0.5)?;
                    let unit = EntropyUnit::from_bits_flag(args.bits);
                    let report =
                        bound_curves(&BoundKind::ALL, p, &sigma, args.samples, unit)?;
                    match format {
                        OutputFormat::Csv => bound_curves_csv(&report),
                        OutputFormat::Json => bound_curves_json(&report),
                    }
                }
                other => return Err(Error::UnknownFigure(other.to_string())),
            };
            write_output(&args.output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::ChannelApply(args) => {
            let format = OutputFormat::parse(&args.format)?;
            let rho = read_state_file(&args.rho)?;
            let sigma = read_state_file(&args.sigma)?;
            let p = SwapParams::new(args.a)?;
            let unit = EntropyUnit::from_bits_flag(args.bits);
            let out = channel_apply(&rho, &sigma, p, unit)?;
            let text = match format {
                OutputFormat::Json => channel_apply_json(&out),
                OutputFormat::Csv => channel_apply_csv(&out),
            };
            write_output(&args.output, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_kinds(spec: &str) -> Result<Vec<BoundKind>, Error> {
    if spec == "all" {
        return Ok(BoundKind::ALL.to_vec());
    }
    spec.split(',')
        .map(|s| BoundKind::parse(s.trim()))
        .collect()
}
