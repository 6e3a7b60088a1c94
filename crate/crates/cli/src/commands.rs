use std::fs;
use std::path::Path;

use diffconv::format::{self, DecodeReport};
use diffconv::rfield::parse_ratfun;
use diffconv::sim::{inject_errors, run_trials, TrialConfig};
use diffconv::{decode as decode_word, CodeSpec, Decoded, Message, ParseMode, Prime, RatFun};

use crate::error::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Writes to `out`, or to stdout when no path is given.
fn emit(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_spec(path: &Path, mode: ParseMode) -> CliResult<CodeSpec> {
    Ok(format::parse_spec(&read(path)?, mode)?)
}

fn load_vector(path: &Path, spec: &CodeSpec, mode: ParseMode) -> CliResult<Vec<RatFun>> {
    Ok(format::parse_vector(&read(path)?, spec.prime(), mode)?)
}

pub fn new_code(
    p: u32,
    delta_z: &str,
    alpha: &str,
    d: usize,
    r: usize,
    out: Option<&Path>,
    mode: ParseMode,
) -> CliResult {
    let p = Prime::new(p)?;
    let spec = CodeSpec::build(parse_ratfun(delta_z, p, mode)?, parse_ratfun(alpha, p, mode)?, d, r)?;
    eprintln!("built code: length {}, dimension {}, capacity {}", spec.length(), spec.dimension(), spec.tau());
    emit(out, &format::write_spec(&spec))
}

pub fn encode(spec: &Path, input: &Path, out: Option<&Path>, mode: ParseMode) -> CliResult {
    let spec = load_spec(spec, mode)?;
    let m = load_vector(input, &spec, mode)?;
    let c = spec.encode(&Message::new(m))?;
    emit(out, &format::write_vector(c.coords()))
}

pub fn corrupt(
    spec: &Path,
    input: &Path,
    positions: &str,
    values: &str,
    out: Option<&Path>,
    mode: ParseMode,
) -> CliResult {
    let spec = load_spec(spec, mode)?;
    let word = load_vector(input, &spec, mode)?;
    if word.len() != spec.length() {
        return Err(diffconv::Error::LengthMismatch { expected: spec.length(), actual: word.len() }.into());
    }
    let positions = format::parse_positions(positions)?;
    let values = format::parse_values(values, spec.prime(), mode)?;
    emit(out, &format::write_vector(&inject_errors(&word, &positions, &values)?))
}

fn decode_report(y: &[RatFun], spec: &CodeSpec) -> CliResult<DecodeReport> {
    let decoded: Decoded = decode_word(y, spec)?;
    let codeword: Vec<RatFun> = y.iter().zip(decoded.to_dense(spec)).map(|(a, e)| a - &e).collect();
    let message = spec.unencode(&codeword)?.into_coeffs();
    Ok(DecodeReport { decoded, codeword, message })
}

pub fn decode(spec: &Path, input: &Path, out: Option<&Path>, mode: ParseMode) -> CliResult {
    let spec = load_spec(spec, mode)?;
    let y = load_vector(input, &spec, mode)?;
    let report = decode_report(&y, &spec)?;
    eprintln!("corrected {} error(s)", report.decoded.weight());
    emit(out, &report.to_text())
}

pub fn roundtrip(
    spec: &Path,
    input: &Path,
    positions: &str,
    values: &str,
    out: Option<&Path>,
    mode: ParseMode,
) -> CliResult {
    let spec = load_spec(spec, mode)?;
    let m = Message::new(load_vector(input, &spec, mode)?);
    let c = spec.encode(&m)?;
    let positions = format::parse_positions(positions)?;
    let values = format::parse_values(values, spec.prime(), mode)?;
    let y = inject_errors(c.coords(), &positions, &values)?;
    let report = decode_report(&y, &spec)?;
    if report.codeword != c.coords() || report.message != m.coeffs() {
        return Err(CliError::Mismatch("decoded message differs from the original".into()));
    }
    eprintln!("roundtrip ok: {} error(s) corrected", report.decoded.weight());
    emit(out, &report.to_text())
}

pub fn trials(spec: &Path, n: usize, v: usize, degree_bound: usize, seed: u64, mode: ParseMode) -> CliResult {
    let spec = load_spec(spec, mode)?;
    let cfg = TrialConfig::new(spec, n, v, degree_bound, seed).exact_weight(true);
    let report = run_trials(&cfg)?;
    println!("{report}");
    eprintln!("{}", report.summary());
    Ok(())
}
