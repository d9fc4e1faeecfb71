use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use hypertoric::cli::{self, PipelineOptions};

/// Compute the orbifold cohomology ring of a hypertoric variety from the
/// combinatorics of a hyperplane arrangement.
#[derive(Parser, Debug)]
#[command(name = "hypertoric", version)]
struct Args {
    /// Input JSON document: normals, optional offsets, optional options.
    input: PathBuf,

    /// Write the machine-readable result to this path.
    #[arg(long)]
    json: Option<PathBuf>,

    /// Print the text report to standard output (the default when no
    /// --json path is given).
    #[arg(long)]
    report: bool,

    /// Generate offsets when absent, or replace non-simple offsets.
    #[arg(long)]
    affinize: bool,

    /// Seed for the random affinization (default 0).
    #[arg(long)]
    seed: Option<u64>,

    /// Degree bound for the oracle (even; default 4n).
    #[arg(long = "max-degree")]
    max_degree: Option<u64>,

    /// Cross-check the Poincaré polynomial against the linear-algebra oracle.
    #[arg(long = "check-oracle")]
    check_oracle: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match std::fs::read_to_string(&args.input) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {err}", args.input.display());
            return ExitCode::from(64);
        }
    };
    let opts = PipelineOptions {
        affinize: args.affinize,
        check_oracle: args.check_oracle,
        seed: args.seed,
        max_degree: args.max_degree,
    };
    let outcome = match cli::run_on_json(&text, &opts) {
        Ok(outcome) => outcome,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(cli::exit_code(&err) as u8);
        }
    };
    if let Some(path) = &args.json {
        if let Err(err) = std::fs::write(path, outcome.document.to_json()) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(74);
        }
    }
    if args.report || args.json.is_none() {
        print!("{}", outcome.document.render_report());
    }
    ExitCode::SUCCESS
}
