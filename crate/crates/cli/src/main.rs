mod error;
mod output;
mod report;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mahvol_core::polygons::enumerate_polygons;
use mahvol_core::FamilyParams;
use serde::Serialize;

use crate::error::CliError;
use crate::output::{emit, to_json, Table};

/// Mahler measures of t(x^m - 1)y - (x^n - 1) by quadrature, dilogarithms
/// and hyperbolic polygon volumes.
#[derive(Parser)]
#[command(name = "mahvol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed form and quadrature with their residual.
    Measure(PointArgs),
    /// Unit-circle roots of the boundary function.
    Roots(PointArgs),
    /// Admissible polygons with volumes and signs.
    Polygons(PointArgs),
    /// Check every route against the others; exit 0 iff all agree within --tol.
    Verify(PointArgs),
    /// Thresholds in t where roots appear, vanish or change polygon shape.
    Sweep(SweepArgs),
    /// Exponent system, symplectic check, x = y = 1 solutions, tilde relation.
    Apoly(ApolyArgs),
    /// One SVG figure per admissible polygon.
    Svg(PointArgs),
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file (a directory for `svg`); standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    pair: Pair,
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    pair: Pair,
    #[arg(long = "t-lo", allow_negative_numbers = true)]
    t_lo: f64,
    #[arg(long = "t-hi", allow_negative_numbers = true)]
    t_hi: f64,
    #[arg(long, default_value_t = 400)]
    steps: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct ApolyArgs {
    #[command(flatten)]
    pair: Pair,
    #[command(flatten)]
    out: OutputArgs,
}

fn family(pair: &Pair, t: f64) -> Result<FamilyParams, CliError> {
    if !(t > 0.0) {
        return Err(CliError::Usage(format!("t must be positive, got {t}")));
    }
    Ok(FamilyParams::new(pair.m, pair.n, t)?)
}

fn check_tol(out: &OutputArgs) -> Result<(), CliError> {
    if out.tol > 0.0 && out.tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("tol must be positive, got {}", out.tol)))
    }
}

fn write<T: Serialize>(value: &T, table: impl FnOnce(&T) -> Table, out: &OutputArgs) -> Result<(), CliError> {
    let text = match out.format {
        Format::Json => to_json(value),
        Format::Csv => table(value).to_csv(),
    };
    emit(&text, out.output.as_deref())
}

fn write_svgs(p: &FamilyParams, out: &OutputArgs) -> Result<(), CliError> {
    #[derive(Serialize)]
    struct Written {
        schema_version: u32,
        command: &'static str,
        files: Vec<String>,
    }
    let dir = out.output.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let mut files = Vec::new();
    for sp in enumerate_polygons(p)? {
        let path = dir.join(svg::file_name(p.m(), p.n(), p.t(), sp.root.index));
        fs::write(&path, svg::render(&sp)).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        files.push(path.display().to_string());
    }
    let listing = Written {
        schema_version: report::SCHEMA_VERSION,
        command: "svg",
        files,
    };
    emit(&to_json(&listing), None)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Measure(a) => {
            check_tol(&a.out)?;
            let r = report::measure(&family(&a.pair, a.t)?, a.out.tol)?;
            write(&r, report::Measure::table, &a.out)
        }
        Command::Roots(a) => {
            let r = report::roots(&family(&a.pair, a.t)?);
            write(&r, report::Roots::table, &a.out)
        }
        Command::Polygons(a) => {
            let r = report::polygons(&family(&a.pair, a.t)?)?;
            write(&r, report::Polygons::table, &a.out)
        }
        Command::Verify(a) => {
            check_tol(&a.out)?;
            let r = report::verify(&family(&a.pair, a.t)?, a.out.tol)?;
            write(&r, report::Verify::table, &a.out)?;
            if r.pass {
                Ok(())
            } else {
                Err(CliError::Verification(format!(
                    "measure residual {:e}, polygon residual {:e}, theorem residual {:e}",
                    r.measure_residual, r.polygon_residual, r.theorem_residual
                )))
            }
        }
        Command::Sweep(a) => {
            let r = report::sweep(a.pair.m, a.pair.n, a.t_lo, a.t_hi, a.steps)?;
            write(&r, report::Sweep::table, &a.out)
        }
        Command::Apoly(a) => {
            check_tol(&a.out)?;
            let r = report::apoly(a.pair.m, a.pair.n, a.out.tol)?;
            write(&r, report::Apoly::table, &a.out)
        }
        Command::Svg(a) => write_svgs(&family(&a.pair, a.t)?, &a.out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let summary: Vec<&str> = message
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            let err = CliError::Usage(summary.join(" ").trim_start_matches("error: ").to_string());
            let _ = e.print();
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code());
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code())
        }
    }
}
