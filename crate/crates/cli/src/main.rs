use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use willmore_core::{Chart, Mode};

mod commands;
mod gram;
mod mesh;
mod model;
mod report;
mod spec;

use commands::{Input, Opts};
use report::Report;

#[derive(Parser)]
#[command(name = "willmore", version, about = "Willmore surfaces from minimal surface data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Z,
    W,
}

#[derive(Args)]
struct Common {
    /// Spec file, or `-` for stdin
    input: PathBuf,
    #[arg(long, value_enum, env = "WILLMORE_MODE", default_value = "exact")]
    mode: ModeArg,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value = "z")]
    chart: ChartArg,
    /// Grid size for energy integration
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Radius of the disc searched for branch points
    #[arg(long, default_value_t = 10.0)]
    radius: f64,
    /// Pedal point `a,b,c,...`; overrides the spec
    #[arg(long, allow_hyphen_values = true)]
    pedal_point: Option<String>,
    /// Adjoint datum `numerator;denominator` in z; overrides the spec
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check that applies to the spec
    Verify(SurfaceArgs),
    /// Solve, realize and assemble a Gram system from an ansatz
    Gram {
        #[command(flatten)]
        common: Common,
        /// Extra pins `j,k=value; ...`
        #[arg(long, allow_hyphen_values = true)]
        pins: Option<String>,
        /// Write the realized surface spec here
        #[arg(long)]
        spec_out: Option<PathBuf>,
    },
    /// Pedal surface of the spec for its pedal point
    Pedal(SurfaceArgs),
    /// Adjoint transform of the spec for its g
    Adjoint(SurfaceArgs),
    /// Profiles of the ends of the minimal surface
    Ends(SurfaceArgs),
    /// Willmore energy of the surface or of its transform
    Energy(SurfaceArgs),
    /// Two-chart OBJ mesh of three coordinates, with a CSV of all of them; the report goes to stdout
    Mesh {
        /// Spec file, or `-` for stdin
        input: PathBuf,
        #[arg(long, value_enum, env = "WILLMORE_MODE", default_value = "exact")]
        mode: ModeArg,
        /// Rings and angular steps per chart
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// One-based coordinates to keep, `i,j,k`
        #[arg(long, default_value = "1,2,3")]
        project: String,
        /// OBJ path; the CSV goes next to it
        #[arg(long)]
        out: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        pedal_point: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
    },
}

fn read_input(path: &PathBuf) -> Result<Input> {
    let bytes = if path.as_os_str() == "-" {
        let mut b = vec![];
        std::io::stdin().read_to_end(&mut b)?;
        b
    } else {
        std::fs::read(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(Input { bytes })
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Exact => Mode::Exact,
        ModeArg::Float => Mode::Float,
    }
}

fn opts(a: &SurfaceArgs) -> Opts {
    Opts {
        mode: mode(a.common.mode),
        chart: match a.chart {
            ChartArg::Z => Chart::Z,
            ChartArg::W => Chart::W,
        },
        grid: a.grid,
        radius: a.radius,
        pedal_point: a.pedal_point.clone(),
        g: a.g.clone(),
    }
}

fn emit(rep: &Report, out: &Option<PathBuf>) -> Result<()> {
    let text = rep.to_json();
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn surface_cmd(a: &SurfaceArgs, f: fn(&Input, &Opts) -> Result<Report>) -> Result<i32> {
    let rep = f(&read_input(&a.common.input)?, &opts(a))?;
    emit(&rep, &a.common.out)?;
    Ok(rep.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify(a) => surface_cmd(&a, commands::verify),
        Command::Pedal(a) => surface_cmd(&a, commands::pedal_cmd),
        Command::Adjoint(a) => surface_cmd(&a, commands::adjoint_cmd),
        Command::Ends(a) => surface_cmd(&a, commands::ends),
        Command::Energy(a) => surface_cmd(&a, commands::energy),
        Command::Gram { common, pins, spec_out } => {
            let (mut rep, spec) = gram::gram(&read_input(&common.input)?, pins.as_deref())?;
            rep.option("mode", model::mode_name(mode(common.mode)));
            if let (Some(path), Some(spec)) = (&spec_out, &spec) {
                std::fs::write(path, spec.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&rep, &common.out)?;
            Ok(rep.exit_code())
        }
        Command::Mesh { input, mode: m, grid, project, out, pedal_point, g } => {
            let o = Opts { mode: mode(m), chart: Chart::Z, grid, radius: 10.0, pedal_point, g };
            let rep = mesh::run(&read_input(&input)?, &o, grid, &project, &out)?;
            emit(&rep, &None)?;
            Ok(rep.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
