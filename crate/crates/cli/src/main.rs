use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gsv_cli::{cmd_compute, cmd_el, cmd_verify, ComputeOptions, ElOptions};
use gsv_core::index::{FieldTag, DEFAULT_MAX_ATTEMPTS};

#[derive(Parser)]
#[command(name = "gsv", version, about = "Exact indices of vector fields on complete intersection curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Real,
    Complex,
}

#[derive(Subcommand)]
enum Command {
    /// Index of a tangent vector field described by a problem file.
    Compute {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Seed for random coordinates and for the linear form.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
        max_attempts: usize,
        /// Run the maximal-minor goodness criterion.
        #[arg(long)]
        check_good: bool,
        /// Emit a good deformation X_t when the criterion holds.
        #[arg(long)]
        deform: bool,
    },
    /// Classical index of a map germ g.
    El {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Check every problem in a corpus directory against its .expect record.
    Verify {
        dir: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute { file, json, seed, max_attempts, check_good, deform } => {
            cmd_compute(&file, &ComputeOptions { json, seed, max_attempts, check_good, deform }).map_err(|e| (String::new(), e))
        }
        Command::El { file, json, seed, mode } => {
            let mode = mode.map(|m| match m {
                Mode::Real => FieldTag::Real,
                Mode::Complex => FieldTag::Complex,
            });
            cmd_el(&file, &ElOptions { json, seed, mode }).map_err(|e| (String::new(), e))
        }
        Command::Verify { dir, jobs } => cmd_verify(&dir, jobs),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, e)) => {
            print!("{out}");
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
