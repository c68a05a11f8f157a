use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use monogen_cli::{builtin_suite, run, run_scenario, Flags, Outcome, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "monogen", version, about = "Monogenic orders in characteristic p: scenarios and verification suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a scenario file.
    Run {
        scenario: PathBuf,
        #[command(flatten)]
        flags: FlagArgs,
    },
    /// Run a bundled verification suite: a1, counterexample or b.
    Verify {
        suite: String,
        #[command(flatten)]
        flags: FlagArgs,
    },
}

#[derive(Args)]
struct FlagArgs {
    /// Machine-readable JSON report.
    #[arg(long)]
    json: bool,
    /// Search box, oracle exponent box, or exponent bound.
    #[arg(long = "box", value_name = "N")]
    bx: Option<u64>,
    #[arg(long, value_name = "N")]
    mmax: Option<u32>,
    /// Seed polynomial for the counterexample tower.
    #[arg(long, value_name = "POLY")]
    seed_eta: Option<String>,
    /// Comma-separated monic irreducibles replacing the scenario's places.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    places: Option<Vec<String>>,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

impl From<FlagArgs> for Flags {
    fn from(a: FlagArgs) -> Self {
        Flags {
            json: a.json,
            bx: a.bx,
            mmax: a.mmax,
            seed_eta: a.seed_eta,
            places: a.places.map(|v| v.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()),
            timing: a.timing,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let out = match cli.cmd {
        Cmd::Run { scenario, flags } => run(&scenario, &flags.into()),
        Cmd::Verify { suite, flags } => match builtin_suite(&suite) {
            Ok(sc) => run_scenario(sc, &flags.into()),
            Err(e) => Outcome { code: EXIT_CONFIG, stdout: String::new(), stderr: format!("error: {e:#}\n") },
        },
    };
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
