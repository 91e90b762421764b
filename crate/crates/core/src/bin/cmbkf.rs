use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cmbkf::cli::{input_error, run, Command, Format, JobSpec, Options};

#[derive(Clone, Copy, ValueEnum)]
enum Cmd {
    Reflex,
    Classify,
    Realize,
    Hom,
    Tensor,
    Dual,
    Newton,
    Snf,
    Galois,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
}

/// CM Breuil-Kisin-Fargues calculator.
#[derive(Parser)]
#[command(version)]
struct Args {
    command: Cmd,
    /// Inline JSON input; overrides --input.
    json: Option<String>,
    /// Input file, or - for stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, default_value_t = cmbkf::padic::DEFAULT_PRECISION)]
    precision: i64,
    #[arg(long, default_value_t = 8)]
    degree_bound: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Fmt,
}

fn main() -> ExitCode {
    let a = Args::parse();
    let command = match a.command {
        Cmd::Reflex => Command::Reflex,
        Cmd::Classify => Command::Classify,
        Cmd::Realize => Command::Realize,
        Cmd::Hom => Command::Hom,
        Cmd::Tensor => Command::Tensor,
        Cmd::Dual => Command::Dual,
        Cmd::Newton => Command::Newton,
        Cmd::Snf => Command::Snf,
        Cmd::Galois => Command::Galois,
    };
    let format = match a.format {
        Fmt::Json => Format::Json,
        Fmt::Text => Format::Text,
    };
    let raw = match (&a.json, a.input.as_str()) {
        (Some(s), _) => Ok(s.clone()),
        (None, "-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
        (None, path) => std::fs::read_to_string(path),
    };
    let (code, out) = match raw.map_err(|e| e.to_string()).and_then(|s| serde_json::from_str(&s).map_err(|e| e.to_string())) {
        Ok(input) => {
            let options = Options { precision: a.precision, degree_bound: a.degree_bound, format };
            run(&JobSpec { command, input, options })
        }
        Err(msg) => input_error(&msg, format),
    };
    print!("{out}");
    ExitCode::from(code as u8)
}
