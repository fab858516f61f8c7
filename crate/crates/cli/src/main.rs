//! Command-line front end: exact computations over JSON files with
//! deterministic text or JSON reports.
//!
//! Exit codes: 0 on success, 1 on domain errors (support violations,
//! `--require-rational` with no recurrence found), 2 on I/O and parse
//! errors.

mod commands;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "novikov-kit",
    version,
    about = "Exact Laurent group-ring and Novikov-series computations",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<String>,

    /// Digits used when printing floating-point report values.
    #[arg(long, global = true, default_value_t = 12, value_name = "N")]
    float_digits: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric series of a matrix with all entries below grading zero.
    Series(SeriesArgs),
    /// Growth profile and exponential fit of a series.
    Growth(GrowthArgs),
    /// Rational closed forms: construction and recognition.
    #[command(subcommand)]
    Rational(RationalCmd),
    /// Integral-cone computations.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Novikov-complex checks over a system file.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Built-in worked example: the Morse map on a 3-manifold with two
    /// critical points.
    ExampleS3(ExampleArgs),
}

#[derive(Args)]
struct SeriesArgs {
    /// Matrix file {"size": k, "entries": [[element, …], …]}.
    matrix: String,
    /// Grading form weights, e.g. "1,0" or "1/2,1/3".
    #[arg(long, value_name = "WEIGHTS")]
    xi: String,
    /// Validity cutoff (integer or "num/den").
    #[arg(long, allow_hyphen_values = true, value_name = "C")]
    cutoff: String,
}

#[derive(Args)]
struct GrowthArgs {
    /// Type-(L) datum file.
    #[arg(long, conflicts_with_all = ["matrix", "series"])]
    datum: Option<String>,
    /// Matrix file (requires --xi); profiles an entry of Σ Aˢ.
    #[arg(long, requires = "xi")]
    matrix: Option<String>,
    /// Series file (a truncation with its grading and cutoff).
    #[arg(long, conflicts_with = "matrix")]
    series: Option<String>,
    /// Grading form weights for --matrix.
    #[arg(long, value_name = "WEIGHTS")]
    xi: Option<String>,
    /// Entry "i,j" of the matrix series to profile (default "0,0").
    #[arg(long, default_value = "0,0", value_name = "I,J")]
    entry: String,
    /// Profile depth: cutoffs c = 0, −1, …, −depth.
    #[arg(long, value_name = "N")]
    depth: u32,
}

#[derive(Subcommand)]
enum RationalCmd {
    /// Adjugate/determinant closed form of a type-(L) datum.
    ClosedForm(ClosedFormArgs),
    /// Recover a presentation from a series by recurrence detection.
    Recognize(RecognizeArgs),
}

#[derive(Args)]
struct ClosedFormArgs {
    /// Type-(L) datum file.
    datum: String,
    /// Also expand the closed form to this cutoff and cross-check against
    /// direct evaluation.
    #[arg(long, allow_hyphen_values = true, value_name = "C")]
    check_cutoff: Option<String>,
}

#[derive(Args)]
struct RecognizeArgs {
    /// Series file.
    series: String,
    /// θ-direction exponent vector, e.g. "[-1]" or "-1,0".
    #[arg(long, allow_hyphen_values = true, value_name = "EXP")]
    theta: String,
    /// Maximal recurrence order to try.
    #[arg(long, value_name = "D")]
    max_deg: usize,
    /// Exit with status 1 when no recurrence is found.
    #[arg(long)]
    require_rational: bool,
}

#[derive(Subcommand)]
enum ConeCmd {
    /// Membership of a lattice point, with witness.
    Contains(ConeContainsArgs),
    /// Integral hull of rational generators negative on two forms.
    Hull(ConeHullArgs),
    /// Cover of a shifted-cone intersection by one shifted cone.
    Cover(ConeCoverArgs),
    /// Growth-transfer constants (A, B) for an integral (ξ,η)-cone.
    Transfer(ConeTransferArgs),
}

#[derive(Args)]
struct ConeContainsArgs {
    /// Cone file {"generators": [[int, …], …]}.
    cone: String,
    /// Lattice point, e.g. "[-3,2]".
    #[arg(long, allow_hyphen_values = true, value_name = "EXP")]
    point: String,
}

#[derive(Args)]
struct ConeHullArgs {
    /// Input file {"generators": [["num/den", …], …]} (rational vectors).
    input: String,
    #[arg(long, value_name = "WEIGHTS")]
    eta1: String,
    #[arg(long, value_name = "WEIGHTS")]
    eta2: String,
}

#[derive(Args)]
struct ConeCoverArgs {
    /// First cone file (an integral ξ-cone).
    cone1: String,
    /// Second cone file (an integral η-cone).
    cone2: String,
    #[arg(long, allow_hyphen_values = true, default_value = "", value_name = "EXP")]
    a1: String,
    #[arg(long, allow_hyphen_values = true, default_value = "", value_name = "EXP")]
    a2: String,
    #[arg(long, value_name = "WEIGHTS")]
    xi: String,
    #[arg(long, value_name = "WEIGHTS")]
    eta: String,
}

#[derive(Args)]
struct ConeTransferArgs {
    /// Cone file (an integral (ξ,η)-cone).
    cone: String,
    #[arg(long, value_name = "WEIGHTS")]
    xi: String,
    #[arg(long, value_name = "WEIGHTS")]
    eta: String,
    /// Shift vector b (defaults to 0).
    #[arg(long, allow_hyphen_values = true, default_value = "", value_name = "EXP")]
    shift: String,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Incidence series between two critical points.
    Incidence(IncidenceArgs),
    /// Verify ∂² = 0 over truncations.
    DSquared(DSquaredArgs),
    /// Check cone-supportedness of every boundary series.
    ConeCheck(ConeCheckArgs),
}

#[derive(Args)]
struct IncidenceArgs {
    /// Morse system file.
    system: String,
    #[arg(long, value_name = "NAME")]
    from: String,
    #[arg(long, value_name = "NAME")]
    to: String,
    #[arg(long, allow_hyphen_values = true, value_name = "C")]
    cutoff: String,
}

#[derive(Args)]
struct DSquaredArgs {
    /// Morse system file.
    system: String,
    #[arg(long, allow_hyphen_values = true, value_name = "C")]
    cutoff: String,
}

#[derive(Args)]
struct ConeCheckArgs {
    /// Morse system file.
    system: String,
    /// Cone file for the certificate.
    #[arg(long, value_name = "FILE")]
    cone: String,
    /// Certificate shift b (defaults to 0).
    #[arg(long, allow_hyphen_values = true, default_value = "", value_name = "EXP")]
    shift: String,
    #[arg(long, allow_hyphen_values = true, value_name = "C")]
    cutoff: String,
}

#[derive(Args)]
struct ExampleArgs {
    /// Depth of the coefficient table (coefficients of θ^k, k ≤ depth).
    #[arg(long, default_value_t = 25, value_name = "N")]
    depth: u32,
}

fn main() {
    let cli = Cli::parse();

    if let Err(err) = commands::validate_thread_cap() {
        eprintln!("error: {err}");
        std::process::exit(2);
    }

    let settings = commands::Settings {
        json: cli.json,
        output: cli.output.clone(),
        float_digits: cli.float_digits,
    };

    let result = match &cli.command {
        Command::Series(a) => commands::run_series(a, &settings),
        Command::Growth(a) => commands::run_growth(a, &settings),
        Command::Rational(RationalCmd::ClosedForm(a)) => commands::run_closed_form(a, &settings),
        Command::Rational(RationalCmd::Recognize(a)) => commands::run_recognize(a, &settings),
        Command::Cone(ConeCmd::Contains(a)) => commands::run_cone_contains(a, &settings),
        Command::Cone(ConeCmd::Hull(a)) => commands::run_cone_hull(a, &settings),
        Command::Cone(ConeCmd::Cover(a)) => commands::run_cone_cover(a, &settings),
        Command::Cone(ConeCmd::Transfer(a)) => commands::run_cone_transfer(a, &settings),
        Command::Complex(ComplexCmd::Incidence(a)) => commands::run_incidence(a, &settings),
        Command::Complex(ComplexCmd::DSquared(a)) => commands::run_d_squared(a, &settings),
        Command::Complex(ComplexCmd::ConeCheck(a)) => commands::run_cone_check(a, &settings),
        Command::ExampleS3(a) => commands::run_example_s3(a, &settings),
    };

    match result {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

