use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use latcount::{run, CliError, Command, Options};

/// Exact lattice-point counts, generating functions and Ehrhart
/// quasi-polynomials.
#[derive(Parser, Debug)]
#[command(name = "latcount", version)]
struct Cli {
    command: Command,
    /// Instance JSON file (for `count`, also a generating function from `gf`).
    file: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the randomized checks of `check`.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples per decomposed cone for `check`.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Scan the box [L, U]^n in the brute-force oracle.
    #[arg(long, num_args = 2, value_names = ["L", "U"], allow_negative_numbers = true)]
    oracle_box: Option<Vec<i64>>,
    /// Print errors to stderr as JSON.
    #[arg(long)]
    json_errors: bool,
}

fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn execute(cli: &Cli) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&cli.file).map_err(|e| CliError::Io(format!("{}: {e}", cli.file.display())))?;
    let opts = Options {
        seed: cli.seed,
        samples: cli.samples,
        oracle_box: cli.oracle_box.as_ref().map(|b| (b[0].into(), b[1].into())),
    };
    let outcome = run(cli.command, &text, &opts)?;
    match &cli.out {
        Some(path) => {
            write_atomically(path, &outcome.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?
        }
        None => println!("{}", outcome.text),
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            if cli.json_errors {
                eprintln!("{}", e.to_json());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
