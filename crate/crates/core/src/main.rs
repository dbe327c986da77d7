use std::process::ExitCode;

use aomoto_lab::cli::{execute, Command, Overrides};
use clap::Parser;

/// Run a computation described by a JSON job file and print a JSON report.
#[derive(Parser)]
#[command(name = "aomoto-lab", version)]
struct Args {
    command: Command,
    #[arg(long)]
    config: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    kappa: Option<String>,
    /// Base point as `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    base: Option<String>,
    /// One-based points `p,q` for the Pochhammer loop.
    #[arg(long = "loop")]
    loop_points: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    precision_bits: Option<u32>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let overrides = Overrides {
        kappa: args.kappa,
        base: args.base,
        loop_points: args.loop_points,
        tol: args.tol,
        precision_bits: args.precision_bits,
    };
    let report = match execute(args.command, &args.config, &overrides) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let text = report.to_json();
    match args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
