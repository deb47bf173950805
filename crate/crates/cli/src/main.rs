//! Command line front end for the exact zeta calculators.
//!
//! Every command reads and writes JSON payloads in the wire format of
//! `nazeta_core::io`.  Outputs are deterministic: no timestamps, stable key
//! order, rationals as decimal string pairs.  Exit codes: 0 success, 1 a
//! verification check failed, 2 bad input, 3 an internal consistency gate
//! tripped.

mod cache;
mod commands;
mod equation;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nazeta_core::io::ErrorJson;
use nazeta_core::Error;

#[derive(Parser)]
#[command(name = "nazeta", version, about = "Exact zeta functions of curves over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest a curve model and emit its curve payload.
    Curve(CurveArgs),
    /// Assemble zeta functions together with their verification reports.
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Build a mass table, gated by the rational-curve closed form.
    Mass(MassArgs),
    /// Re-check a stored report and print a verdict table.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CurveArgs {
    /// Hyperelliptic equation such as "y^2+y=x^3"; requires --q.
    #[arg(long, conflicts_with_all = ["weil", "counts", "model_file"])]
    hyperelliptic: Option<String>,

    /// Field size for --hyperelliptic.
    #[arg(long, requires = "hyperelliptic")]
    q: Option<u64>,

    /// Weil data: field size, genus, then the numerator coefficients
    /// in ascending degree.
    #[arg(long, num_args = 2.., allow_negative_numbers = true, conflicts_with_all = ["counts", "model_file"])]
    weil: Option<Vec<i64>>,

    /// Point counts: field size, genus, then N_1 .. N_g.
    #[arg(long, num_args = 3.., conflicts_with = "model_file")]
    counts: Option<Vec<u64>>,

    /// JSON file holding a hyperelliptic or plane model.
    #[arg(long)]
    model_file: Option<PathBuf>,

    /// Optional label copied into the payload.
    #[arg(long)]
    label: Option<String>,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ZetaCommand {
    /// Rank-r zeta function of a curve payload.
    Rank(RankArgs),
    /// Restricted zeta function of an explicit coefficient window.
    Restricted(RestrictedArgs),
    /// Non-stable rank-2 zeta function of a curve payload.
    Nonstable(NonstableArgs),
}

#[derive(Args)]
struct RankArgs {
    /// Curve payload file.
    #[arg(long)]
    curve: PathBuf,

    /// Rank of the bundles counted.
    #[arg(long, default_value_t = 1)]
    r: u32,

    /// Coefficient window file; required for rank >= 2 in positive genus.
    #[arg(long)]
    window: Option<PathBuf>,

    /// How many power sums to report.
    #[arg(long, default_value_t = 6)]
    m_max: usize,

    /// Tolerance for the numeric root probe.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Series order for --csv-coeffs.
    #[arg(long, default_value_t = 12)]
    series_order: usize,

    /// Write the zeta series coefficients as (degree, coefficient) CSV.
    #[arg(long)]
    csv_coeffs: Option<PathBuf>,

    /// Write the numerator roots as (re, im, abs) CSV.
    #[arg(long)]
    csv_roots: Option<PathBuf>,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RestrictedArgs {
    /// Restricted window file.
    #[arg(long)]
    window: PathBuf,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NonstableArgs {
    /// Curve payload file.
    #[arg(long)]
    curve: PathBuf,

    /// Jacobian weighting: "squared" or "single".
    #[arg(long, default_value = "squared")]
    mode: String,

    /// Section count table file for the low window.
    #[arg(long)]
    section_table: Option<PathBuf>,

    /// Accept a genus >= 2 curve without a section table.
    #[arg(long)]
    allow_partial: bool,

    /// Evaluate the truncated summation oracle at this s (rational, "p/q").
    #[arg(long)]
    oracle_s: Option<String>,

    /// Truncation depth for --oracle-s.
    #[arg(long, default_value_t = 60)]
    oracle_depth: usize,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct MassArgs {
    /// Curve payload file.
    #[arg(long)]
    curve: PathBuf,

    /// Highest rank to populate.
    #[arg(long, default_value_t = 2)]
    r: u32,

    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Report file produced by a zeta command.
    #[arg(long)]
    report: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            let payload = ErrorJson::from_error(&e);
            let line = serde_json::to_string(&payload).expect("error payload serializes");
            eprintln!("{line}");
            match e {
                Error::Gate(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
