//! Line-oriented text files: code specifications, word vectors and decode
//! reports. Every writer here is inverted exactly by the matching parser.
//!
//! Lines starting with `#` and blank lines are ignored everywhere.

use crate::code::CodeSpec;
use crate::error::{Error, Result};
use crate::ore::OrePoly;
use crate::pgz::{Decoded, ErrorVector};
use crate::rfield::{parse_ratfun, ParseMode, Prime, RatFun};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn at_line(line: usize, err: Error) -> Error {
    match err {
        Error::Format { .. } => err,
        other => Error::Format { line, msg: other.to_string() },
    }
}

fn split_key_value(line: usize, l: &str) -> Result<(&str, &str)> {
    l.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Error::Format { line, msg: format!("expected key=value, got {l:?}") })
}

fn parse_usize(line: usize, key: &str, v: &str) -> Result<usize> {
    v.parse().map_err(|_| Error::Format { line, msg: format!("{key} must be a non-negative integer, got {v:?}") })
}

/// Code specification file. The `g` line is written for inspection.
pub fn write_spec(spec: &CodeSpec) -> String {
    let params = spec.params();
    format!(
        "p={}\ndelta_z={}\nalpha={}\nd={}\nr={}\ng={}\n",
        spec.prime().get(),
        params.delta_z.to_text(),
        params.alpha.to_text(),
        params.d,
        params.r,
        spec.generator().to_list_text()
    )
}

/// Parses and builds a code. An optional `g` line must match the generator
/// computed from the other parameters.
pub fn parse_spec(text: &str, mode: ParseMode) -> Result<CodeSpec> {
    let mut p = None;
    let mut fields: [Option<(usize, String)>; 5] = Default::default();
    const KEYS: [&str; 5] = ["delta_z", "alpha", "d", "r", "g"];
    for (line, l) in content_lines(text) {
        let (key, value) = split_key_value(line, l)?;
        if key == "p" {
            let v = parse_usize(line, key, value)?;
            p = Some(Prime::new(u32::try_from(v).unwrap_or(u32::MAX)).map_err(|e| at_line(line, e))?);
            continue;
        }
        let slot = KEYS
            .iter()
            .position(|k| *k == key)
            .ok_or_else(|| Error::Format { line, msg: format!("unknown key {key:?}") })?;
        if fields[slot].is_some() {
            return Err(Error::Format { line, msg: format!("duplicate key {key:?}") });
        }
        fields[slot] = Some((line, value.to_string()));
    }
    let p = p.ok_or_else(|| Error::Format { line: 0, msg: "missing key \"p\"".into() })?;
    let get = |i: usize| {
        fields[i].clone().ok_or_else(|| Error::Format { line: 0, msg: format!("missing key {:?}", KEYS[i]) })
    };
    let ratfun = |(line, v): (usize, String)| parse_ratfun(&v, p, mode).map_err(|e| at_line(line, e));
    let delta_z = ratfun(get(0)?)?;
    let alpha = ratfun(get(1)?)?;
    let (dl, dv) = get(2)?;
    let d = parse_usize(dl, "d", &dv)?;
    let r = match fields[3].clone() {
        Some((line, v)) => parse_usize(line, "r", &v)?,
        None => 0,
    };
    let spec = CodeSpec::build(delta_z, alpha, d, r)?;
    if let Some((line, v)) = fields[4].clone() {
        let g = OrePoly::parse_list(&v, spec.derivation(), mode).map_err(|e| at_line(line, e))?;
        if &g != spec.generator() {
            return Err(Error::Format { line, msg: "g does not match the generator of these parameters".into() });
        }
    }
    Ok(spec)
}

/// One coordinate per line.
pub fn write_vector(v: &[RatFun]) -> String {
    v.iter().map(|c| c.to_text() + "\n").collect()
}

pub fn parse_vector(text: &str, p: Prime, mode: ParseMode) -> Result<Vec<RatFun>> {
    content_lines(text).map(|(line, l)| parse_ratfun(l, p, mode).map_err(|e| at_line(line, e))).collect()
}

/// `"1,6,9"`; empty text gives an empty list.
pub fn parse_positions(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::Format { line: 0, msg: format!("bad position {:?}", t.trim()) }))
        .collect()
}

/// `"1;8;8*z^3"`; empty text gives an empty list.
pub fn parse_values(text: &str, p: Prime, mode: ParseMode) -> Result<Vec<RatFun>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(|t| parse_ratfun(t.trim(), p, mode)).collect()
}

fn join_values(v: &[RatFun]) -> String {
    v.iter().map(RatFun::to_text).collect::<Vec<_>>().join(";")
}

/// What `decode` writes: the error, the corrected codeword and the message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub decoded: Decoded,
    pub codeword: Vec<RatFun>,
    pub message: Vec<RatFun>,
}

impl DecodeReport {
    pub fn to_text(&self) -> String {
        let (status, positions, values) = match &self.decoded {
            Decoded::ZeroError => ("zero_error", String::new(), String::new()),
            Decoded::Errors(e) => (
                "errors",
                e.positions().iter().map(usize::to_string).collect::<Vec<_>>().join(","),
                join_values(e.values()),
            ),
        };
        format!(
            "status={status}\npositions={positions}\nvalues={values}\ncodeword={}\nmessage={}\n",
            join_values(&self.codeword),
            join_values(&self.message)
        )
    }

    pub fn parse(text: &str, p: Prime, mode: ParseMode) -> Result<Self> {
        const KEYS: [&str; 5] = ["status", "positions", "values", "codeword", "message"];
        let mut fields: [Option<(usize, String)>; 5] = Default::default();
        for (line, l) in content_lines(text) {
            let (key, value) = split_key_value(line, l)?;
            let slot = KEYS
                .iter()
                .position(|k| *k == key)
                .ok_or_else(|| Error::Format { line, msg: format!("unknown key {key:?}") })?;
            fields[slot] = Some((line, value.to_string()));
        }
        let mut take = |i: usize| {
            fields[i].take().ok_or_else(|| Error::Format { line: 0, msg: format!("missing key {:?}", KEYS[i]) })
        };
        let (sl, status) = take(0)?;
        let (pl, positions) = take(1)?;
        let (vl, values) = take(2)?;
        let (cl, codeword) = take(3)?;
        let (ml, message) = take(4)?;
        let positions = parse_positions(&positions).map_err(|e| at_line(pl, e))?;
        let values = parse_values(&values, p, mode).map_err(|e| at_line(vl, e))?;
        let decoded = match status.as_str() {
            "zero_error" if positions.is_empty() && values.is_empty() => Decoded::ZeroError,
            "errors" => Decoded::Errors(ErrorVector::new(positions, values).map_err(|e| at_line(pl, e))?),
            _ => return Err(Error::Format { line: sl, msg: format!("inconsistent status {status:?}") }),
        };
        Ok(DecodeReport {
            decoded,
            codeword: parse_values(&codeword, p, mode).map_err(|e| at_line(cl, e))?,
            message: parse_values(&message, p, mode).map_err(|e| at_line(ml, e))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn rfs(texts: &[&str], p: u32) -> Vec<RatFun> {
        texts.iter().map(|t| RatFun::parse(t, pr(p)).unwrap()).collect()
    }

    const P11_SPEC: &str = "p=11\ndelta_z=1\nalpha=1/z\nd=7\nr=0\n";

    #[test]
    fn spec_round_trip_with_generator_line() {
        let spec = parse_spec(P11_SPEC, ParseMode::Strict).unwrap();
        let text = write_spec(&spec);
        assert!(text.contains("g=[5/z^6, 8/z^5, 10/z^4, 2/z^3, 10/z^2, 3/z, 1]"), "{text}");
        let again = parse_spec(&text, ParseMode::Strict).unwrap();
        assert_eq!(again.generator(), spec.generator());
        assert_eq!(write_spec(&again), text);
    }

    #[test]
    fn spec_rejects_wrong_generator_and_bad_keys() {
        let bad_g = format!("{P11_SPEC}g=[1, 1]\n");
        assert!(matches!(parse_spec(&bad_g, ParseMode::Strict), Err(Error::Format { line: 6, .. })));
        assert!(matches!(parse_spec("p=11\nfoo=1\n", ParseMode::Strict), Err(Error::Format { line: 2, .. })));
        assert!(matches!(parse_spec("p=11\nd=3\n", ParseMode::Strict), Err(Error::Format { .. })));
        assert!(matches!(
            parse_spec("# comment\n\np=11\ndelta_z=1\nalpha=1/z+\nd=3\n", ParseMode::Strict),
            Err(Error::Format { line: 5, .. })
        ));
        let far = "p=11\ndelta_z=1\nalpha=1/z\nd=12\n";
        assert!(matches!(parse_spec(far, ParseMode::Strict), Err(Error::DesignedDistanceOutOfRange { .. })));
    }

    #[test]
    fn vector_round_trip_and_strictness() {
        let v = rfs(&["3/z^6", "(z^5+5)/z^5", "0", "z^4"], 11);
        assert_eq!(parse_vector(&write_vector(&v), pr(11), ParseMode::Strict).unwrap(), v);
        assert_eq!(parse_vector("13*z\n", pr(11), ParseMode::Lenient).unwrap(), rfs(&["2*z"], 11));
        assert!(matches!(parse_vector("1\n13*z\n", pr(11), ParseMode::Strict), Err(Error::Format { line: 2, .. })));
    }

    #[test]
    fn position_and_value_lists() {
        assert_eq!(parse_positions("1, 6,9").unwrap(), vec![1, 6, 9]);
        assert_eq!(parse_positions("").unwrap(), Vec::<usize>::new());
        assert!(parse_positions("1,x").is_err());
        assert_eq!(parse_values("1;8;8*z^3", pr(11), ParseMode::Strict).unwrap(), rfs(&["1", "8", "8*z^3"], 11));
    }

    #[test]
    fn report_round_trip() {
        let report = DecodeReport {
            decoded: Decoded::Errors(ErrorVector::new(vec![1, 6, 9], rfs(&["1", "8", "8*z^3"], 11)).unwrap()),
            codeword: rfs(&["3/z^6", "z"], 11),
            message: rfs(&["1", "0"], 11),
        };
        let text = report.to_text();
        assert!(text.contains("positions=1,6,9\nvalues=1;8;8*z^3\n"));
        assert_eq!(DecodeReport::parse(&text, pr(11), ParseMode::Strict).unwrap(), report);
        let zero = DecodeReport { decoded: Decoded::ZeroError, codeword: rfs(&["1"], 5), message: rfs(&["1"], 5) };
        assert_eq!(DecodeReport::parse(&zero.to_text(), pr(5), ParseMode::Strict).unwrap(), zero);
    }
}
