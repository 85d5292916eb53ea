//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 1 on usage errors, 2 on I/O or parse errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::image::{image_metrics, read_image, write_image};
use crate::interreflect::DEFAULT_DISK_RADIUS;
use crate::oracle;
use crate::render::{render, RenderMode, RenderParams};
use crate::scene::load_scene;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "interreflect",
    version,
    about = "One-bounce glossy interreflection from rectangle proxies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Render a scene file to a binary PPM.
    Render {
        #[arg(long)]
        scene: PathBuf,
        /// approx-asg, approx-sg or reference
        #[arg(long)]
        mode: RenderMode,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DISK_RADIUS)]
        disk_radius: f64,
        /// Samples per pixel and reflector (reference mode only).
        #[arg(long, default_value_t = 4096)]
        spp: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        width: Option<usize>,
        #[arg(long)]
        height: Option<usize>,
        /// Suppress direct lighting.
        #[arg(long)]
        indirect_only: bool,
    },
    /// Print error metrics between two PPM images as CSV.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Numerical studies of the approximation.
    Study {
        #[command(subcommand)]
        study: Study,
    },
}

#[derive(Debug, Subcommand)]
enum Study {
    /// Exact vs. fitted disk integrand over θ ∈ [0, π/2).
    FitError {
        /// Angle between light and reflector normal, radians.
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        roughness: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// SG⊗ASG closed form vs. quadrature over a range of bandwidths.
    ConvError {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "10,25,50,100,200")]
        lambdas: Vec<f64>,
    },
}

enum Failure {
    Usage(String),
    Io(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(m) => Failure::Usage(m),
            other => Failure::Io(other),
        }
    }
}

/// Parse `argv` (including the program name) and run the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_IO
        }
    }
}

fn execute(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Render {
            scene,
            mode,
            out,
            disk_radius,
            spp,
            seed,
            width,
            height,
            indirect_only,
        } => {
            if !(disk_radius > 0.0 && disk_radius.is_finite()) {
                return Err(Failure::Usage(format!(
                    "--disk-radius must be positive, got {disk_radius}"
                )));
            }
            if spp == 0 {
                return Err(Failure::Usage("--spp must be at least 1".into()));
            }
            let mut scene = load_scene(&scene)?;
            if width.is_some() || height.is_some() {
                let w = width.unwrap_or(scene.camera.width);
                let h = height.unwrap_or(scene.camera.height);
                scene.camera = scene.camera.with_resolution(w, h)?;
            }
            let params = RenderParams {
                disk_radius,
                spp,
                seed,
                indirect_only,
            };
            let img = render(&scene, mode, &params);
            write_image(&img, &out)?;
            Ok(())
        }
        Command::Compare { a, b } => {
            let a = read_image(&a)?;
            let b = read_image(&b)?;
            let m = image_metrics(&a, &b).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", m.csv());
            let _ = std::io::stdout().flush();
            Ok(())
        }
        Command::Study { study } => match study {
            Study::FitError {
                sigma,
                roughness,
                out,
                samples,
            } => {
                if !(0.0..std::f64::consts::FRAC_PI_2).contains(&sigma) {
                    return Err(Failure::Usage(format!("--sigma must lie in [0, π/2), got {sigma}")));
                }
                if !(roughness > 0.0 && roughness <= 1.0) {
                    return Err(Failure::Usage(format!(
                        "--roughness must lie in (0, 1], got {roughness}"
                    )));
                }
                let rows = oracle::fit_error_report(sigma, roughness, samples);
                oracle::write_text(&out, &oracle::fit_error_csv(&rows))?;
                Ok(())
            }
            Study::ConvError { out, lambdas } => {
                if lambdas.iter().any(|&l| l.is_nan() || l <= 0.0) {
                    return Err(Failure::Usage("--lambdas must all be positive".into()));
                }
                let rows = oracle::convolution_error_report(&lambdas)?;
                oracle::write_text(&out, &oracle::convolution_error_csv(&rows))?;
                Ok(())
            }
        },
    }
}
