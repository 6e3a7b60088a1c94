mod commands;
mod demo;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use diffconv::ParseMode;

use crate::error::CliResult;

/// Build, encode, corrupt and decode differential convolutional codes.
///
/// Exit codes: 0 success, 1 demo or trial mismatch, 2 argument out of range,
/// 3 alpha is not a cyclic vector, 4 parse or I/O error, 5 beyond decoding
/// capacity, 6 not a codeword. Set DIFFCONV_STRICT=1 to reject unreduced
/// coefficients in input files.
#[derive(Parser)]
#[command(name = "diffconv", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and write its specification file.
    NewCode(NewCodeArgs),
    /// Encode a message file into a codeword file.
    Encode(IoArgs),
    /// Add errors to a word.
    Corrupt(CorruptArgs),
    /// Decode a received word and write the decode report.
    Decode(IoArgs),
    /// Encode, corrupt and decode a message, checking that it comes back.
    Roundtrip(CorruptArgs),
    /// Run randomized decoding trials.
    Trials(TrialsArgs),
    /// Replay a worked example and check every intermediate object.
    Demo(DemoArgs),
}

#[derive(Args)]
struct NewCodeArgs {
    #[arg(long)]
    p: u32,
    /// Image of z under the derivation.
    #[arg(long, default_value = "1")]
    delta_z: String,
    #[arg(long)]
    alpha: String,
    /// Designed distance.
    #[arg(long)]
    d: usize,
    /// Offset of the first root.
    #[arg(long, default_value_t = 0)]
    r: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct IoArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorruptArgs {
    #[command(flatten)]
    io: IoArgs,
    /// Comma-separated error positions.
    #[arg(long, default_value = "")]
    positions: String,
    /// Semicolon-separated error values.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    values: String,
}

#[derive(Args)]
struct TrialsArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Exact number of errors planted per trial.
    #[arg(long)]
    errors: usize,
    /// Maximum degree of error value numerators and denominators.
    #[arg(long, default_value_t = 2)]
    degree_bound: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DemoArgs {
    /// Which example to replay: p11 or p5.
    #[arg(value_parser = ["p11", "p5"], required_unless_present = "demo")]
    which: Option<String>,
    #[arg(long, value_parser = ["p11", "p5"], conflicts_with = "which")]
    demo: Option<String>,
    /// Corrupt one embedded golden value; the demo must then fail.
    #[arg(long, hide = true)]
    perturb_golden: bool,
}

fn parse_mode() -> ParseMode {
    match std::env::var("DIFFCONV_STRICT") {
        Ok(v) if v == "1" => ParseMode::Strict,
        _ => ParseMode::Lenient,
    }
}

fn run(cli: Cli) -> CliResult {
    let mode = parse_mode();
    match cli.command {
        Command::NewCode(a) => commands::new_code(a.p, &a.delta_z, &a.alpha, a.d, a.r, a.out.as_deref(), mode),
        Command::Encode(a) => commands::encode(&a.spec, &a.input, a.out.as_deref(), mode),
        Command::Decode(a) => commands::decode(&a.spec, &a.input, a.out.as_deref(), mode),
        Command::Corrupt(a) => {
            commands::corrupt(&a.io.spec, &a.io.input, &a.positions, &a.values, a.io.out.as_deref(), mode)
        }
        Command::Roundtrip(a) => {
            commands::roundtrip(&a.io.spec, &a.io.input, &a.positions, &a.values, a.io.out.as_deref(), mode)
        }
        Command::Trials(a) => commands::trials(&a.spec, a.trials, a.errors, a.degree_bound, a.seed, mode),
        Command::Demo(a) => {
            let which = a.which.or(a.demo).unwrap_or_default();
            demo::run(&which, a.perturb_golden)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
