use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use bryantlab::hyperbolic::Grid;
use bryantlab::jobs::{self, Controls, Format, JobError, Outcome};

#[derive(Parser)]
#[command(name = "bryantlab", version, about = "Bryant frames, cmc-1 surfaces in hyperbolic space and their ends")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Finite-difference step for mean curvature.
    #[arg(long, global = true, default_value_t = Controls::default().fd_step)]
    step: f64,
    /// Relative tolerance of the transport integrator.
    #[arg(long, global = true, default_value_t = Controls::default().rtol)]
    rtol: f64,
    /// Absolute tolerance of the transport integrator.
    #[arg(long, global = true, default_value_t = Controls::default().atol)]
    atol: f64,
    /// Tolerance of the SU(2) membership test.
    #[arg(long = "su2-tol", global = true, default_value_t = Controls::default().su2_tol)]
    su2_tol: f64,
    /// Minimum distance between loops and poles.
    #[arg(long = "pole-clearance", global = true, default_value_t = Controls::default().pole_clearance)]
    pole_clearance: f64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Obj,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Obj => Format::Obj,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check det A = 1 and det A' = 0 exactly.
    Verify { frame: PathBuf },
    /// Sample the immersion and its mean curvature on a square grid.
    Surface {
        frame: PathBuf,
        /// Grid center as `re,im`.
        #[arg(long, default_value = "0,0", value_parser = jobs::parse_complex, allow_hyphen_values = true)]
        center: Complex64,
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Vertices per side.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Also write the OBJ mesh here (JSON format only).
        #[arg(long)]
        obj: Option<PathBuf>,
    },
    /// Generator holonomies and the SU(2) period check.
    Holonomy { higgs: PathBuf, loops: PathBuf },
    /// Analyse a frame at the end with weight ALPHA (e.g. 1/3).
    End { alpha: String, frame: PathBuf },
    /// Parabolic stability relative to a candidate family.
    Stability {
        data: PathBuf,
        /// Add every candidate of degree MIN..=MAX with every match pattern.
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], allow_hyphen_values = true)]
        enumerate: Option<Vec<i64>>,
    },
    /// Dimension counts and degree bounds for (g, d, d_P).
    Bounds {
        g: i64,
        d: i64,
        d_p: i64,
        /// Treat the arguments as maxima and report the whole grid.
        #[arg(long)]
        grid: bool,
    },
    /// Print a catalog frame, or the catalog names.
    Catalog { name: Option<String> },
}

fn run(cli: &Cli) -> Result<Outcome, JobError> {
    let controls = Controls {
        fd_step: cli.step,
        rtol: cli.rtol,
        atol: cli.atol,
        su2_tol: cli.su2_tol,
        pole_clearance: cli.pole_clearance,
    };
    let format = Format::from(cli.format);
    match &cli.command {
        Command::Verify { frame } => jobs::cmd_verify(frame, format),
        Command::Surface {
            frame,
            center,
            radius,
            n,
            obj,
        } => jobs::cmd_surface(frame, Grid::new(*center, *radius, *n), &controls, format, obj.as_deref()),
        Command::Holonomy { higgs, loops } => jobs::cmd_holonomy(higgs, loops, &controls, format),
        Command::End { alpha, frame } => jobs::cmd_end(alpha, frame, format),
        Command::Stability { data, enumerate } => {
            let range = enumerate.as_ref().map(|v| (v[0], v[1]));
            jobs::cmd_stability(data, range, format)
        }
        Command::Bounds { g, d, d_p, grid } => jobs::cmd_bounds(*g, *d, *d_p, *grid, format),
        Command::Catalog { name } => jobs::cmd_catalog(name.as_deref()),
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("BRYANTLAB_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_threads();
    match run(&cli) {
        Ok(outcome) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &outcome.output),
                None => {
                    print!("{}", outcome.output);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
