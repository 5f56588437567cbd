use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qprop::cli::{self, Format, Outcome, EPS_ENV, EXIT_INPUT};
use qprop::qubit_model::{Axis, ModelConfig};

#[derive(Parser)]
#[command(
    name = "qprop",
    version,
    about = "Quantum propositional logic on finite-dimensional Hilbert spaces"
)]
struct Args {
    /// Numerical tolerance; overrides QPROP_EPS.
    #[arg(long, global = true)]
    eps: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a scene file.
    Check { file: PathBuf },
    /// Answer every query of a scene file.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// List the Boolean lattice generated by one context.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        context: String,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
    /// Run the two-state qubit-plus-environment demonstration.
    Demo {
        /// x, y, z or a unit triple `a,b,c`.
        #[arg(long, default_value = "x", allow_hyphen_values = true)]
        u_prime: String,
        #[arg(long, default_value = "z", allow_hyphen_values = true)]
        u_double_prime: String,
        #[arg(long, default_value_t = 1)]
        n_env: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
    },
}

fn run(args: Args) -> Outcome {
    let env = std::env::var(EPS_ENV).ok();
    let tol = match cli::resolve_tolerance(args.eps, env.as_deref()) {
        Ok(tol) => tol,
        Err(e) => {
            return Outcome {
                stderr: format!("{e}\n"),
                code: EXIT_INPUT,
                ..Outcome::default()
            }
        }
    };
    match args.command {
        Command::Check { file } => cli::cmd_check(&file, tol),
        Command::Eval { file, format } => cli::cmd_eval(&file, format.into(), tol),
        Command::Lattice {
            file,
            context,
            format,
        } => cli::cmd_lattice(&file, &context, format.into(), tol),
        Command::Demo {
            u_prime,
            u_double_prime,
            n_env,
            format,
        } => {
            let axes = match (u_prime.parse::<Axis>(), u_double_prime.parse::<Axis>()) {
                (Ok(a), Ok(b)) => Ok((a, b)),
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            };
            match axes {
                Ok((u_prime, u_double_prime)) => {
                    let cfg = ModelConfig {
                        u_prime,
                        u_double_prime,
                        n_env,
                        ..ModelConfig::default()
                    };
                    cli::cmd_demo(&cfg, format.into(), tol)
                }
                Err(e) => Outcome {
                    stderr: format!("{e}\n"),
                    code: EXIT_INPUT,
                    ..Outcome::default()
                },
            }
        }
    }
}

fn main() -> ExitCode {
    let outcome = run(Args::parse());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
