//! Error injection, randomized decoding trials and the per-node view of a
//! sentence in distributed storage.
//!
//! Each coordinate of a word is one storage node. A trial encodes a random
//! message, corrupts a few nodes with random values, decodes, and checks
//! the result against the planted error exactly.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::code::{CodeSpec, Message};
use crate::error::{Error, Result};
use crate::pgz::{decode, decode_basic, BasicOutcome, Decoded, ErrorVector};
use crate::rfield::{PolyZ, Prime, RatFun};

/// `y = c + e`, with `e` given sparsely.
pub fn inject_errors(c: &[RatFun], positions: &[usize], values: &[RatFun]) -> Result<Vec<RatFun>> {
    if positions.len() != values.len() {
        return Err(Error::LengthMismatch { expected: positions.len(), actual: values.len() });
    }
    if let Some(&pos) = positions.iter().find(|&&k| k >= c.len()) {
        return Err(Error::PositionOutOfRange { pos, len: c.len() });
    }
    let e = ErrorVector::new(positions.to_vec(), values.to_vec())?;
    let mut y = c.to_vec();
    for (k, v) in e.positions().iter().zip(e.values()) {
        y[*k] = &y[*k] + v;
    }
    Ok(y)
}

/// Uniform polynomial of degree at most `bound`.
fn random_poly<R: Rng + ?Sized>(p: Prime, bound: usize, rng: &mut R) -> PolyZ {
    PolyZ::from_coeffs(p, (0..=bound).map(|_| rng.gen_range(0..p.get())).collect())
}

/// Random element `a/b` with `deg a, deg b <= bound` and `b != 0`; zero is
/// allowed only when `allow_zero` is set.
pub fn random_ratfun<R: Rng + ?Sized>(p: Prime, bound: usize, allow_zero: bool, rng: &mut R) -> RatFun {
    loop {
        let den = random_poly(p, bound, rng);
        if den.is_zero() {
            continue;
        }
        let num = random_poly(p, bound, rng);
        if num.is_zero() && !allow_zero {
            continue;
        }
        return RatFun::from_parts(num, den).expect("nonzero denominator");
    }
}

/// `v` distinct uniform positions with random nonzero values whose
/// numerator and denominator have degree at most `degree_bound`.
pub fn random_error<R: Rng + ?Sized>(
    spec: &CodeSpec,
    v: usize,
    degree_bound: usize,
    rng: &mut R,
) -> Result<ErrorVector> {
    if v == 0 || v > spec.tau() {
        return Err(Error::ErrorCountOutOfRange { v, max: spec.tau() });
    }
    let positions = sample(rng, spec.length(), v).into_vec();
    let values = (0..v).map(|_| random_ratfun(spec.prime(), degree_bound, false, rng)).collect();
    ErrorVector::new(positions, values)
}

/// Random message with coefficients of height at most `degree_bound`.
pub fn random_message<R: Rng + ?Sized>(spec: &CodeSpec, degree_bound: usize, rng: &mut R) -> Message {
    Message::new((0..spec.dimension()).map(|_| random_ratfun(spec.prime(), degree_bound, true, rng)).collect())
}

/// Batch trial parameters.
#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub spec: CodeSpec,
    pub trials: usize,
    pub max_errors: usize,
    /// Plant exactly `max_errors` errors in every trial instead of a
    /// uniform count in `0..=max_errors`.
    pub exact_weight: bool,
    pub value_degree_bound: usize,
    pub seed: u64,
}

impl TrialConfig {
    pub fn new(spec: CodeSpec, trials: usize, max_errors: usize, value_degree_bound: usize, seed: u64) -> Self {
        TrialConfig { spec, trials, max_errors, exact_weight: false, value_degree_bound, seed }
    }

    pub fn exact_weight(mut self, exact: bool) -> Self {
        self.exact_weight = exact;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::DimensionMismatch("trials must be at least 1".into()));
        }
        if self.max_errors > self.spec.tau() {
            return Err(Error::ErrorCountOutOfRange { v: self.max_errors, max: self.spec.tau() });
        }
        Ok(())
    }

    /// Generator for trial `index`; independent of scheduling.
    pub fn trial_rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// Aggregated outcome of [`run_trials`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialReport {
    pub trials: usize,
    pub successes: usize,
    pub basic_failures: usize,
    pub total_positions: usize,
    pub seed: u64,
}

impl TrialReport {
    pub fn mean_positions(&self) -> f64 {
        self.total_positions as f64 / self.trials as f64
    }

    /// One-line machine-readable form.
    pub fn summary(&self) -> String {
        format!(
            "trials={} successes={} basic_failures={} mean_positions={:.4} seed={}",
            self.trials,
            self.successes,
            self.basic_failures,
            self.mean_positions(),
            self.seed
        )
    }
}

impl fmt::Display for TrialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "trials={}", self.trials)?;
        writeln!(f, "successes={}", self.successes)?;
        writeln!(f, "basic_failures={}", self.basic_failures)?;
        writeln!(f, "mean_positions={:.4}", self.mean_positions())?;
        write!(f, "seed={}", self.seed)
    }
}

struct TrialOutcome {
    basic_failed: bool,
    positions: usize,
}

fn join(v: &[RatFun]) -> String {
    v.iter().map(RatFun::to_text).collect::<Vec<_>>().join("; ")
}

fn run_one(cfg: &TrialConfig, index: usize) -> Result<TrialOutcome> {
    let spec = &cfg.spec;
    let mut rng = cfg.trial_rng(index);
    let message = random_message(spec, cfg.value_degree_bound.max(1), &mut rng);
    let c = spec.encode(&message)?;
    let v = if cfg.exact_weight { cfg.max_errors } else { rng.gen_range(0..=cfg.max_errors) };
    let planted = if v == 0 { None } else { Some(random_error(spec, v, cfg.value_degree_bound, &mut rng)?) };
    let y = match &planted {
        Some(e) => inject_errors(c.coords(), e.positions(), e.values())?,
        None => c.coords().to_vec(),
    };
    let expected = match planted {
        Some(e) => Decoded::Errors(e),
        None => Decoded::ZeroError,
    };

    let dump = |what: &str| {
        Error::TrialMismatch(format!(
            "trial {index} (seed {}): {what}\nmessage: {}\nplanted: {expected:?}\nreceived: {}",
            cfg.seed,
            join(message.coeffs()),
            join(&y)
        ))
    };

    let basic_failed = match decode_basic(&y, spec) {
        Ok(BasicOutcome::DecodingFailure) => true,
        Ok(BasicOutcome::ZeroError) => expected != Decoded::ZeroError,
        Ok(BasicOutcome::Errors(e)) => {
            if Decoded::Errors(e.clone()) != expected {
                return Err(dump(&format!("basic decoder returned {e:?}")));
            }
            false
        }
        Err(err) => return Err(dump(&format!("basic decoder error: {err}"))),
    };
    let decoded = decode(&y, spec).map_err(|err| dump(&format!("decoder error: {err}")))?;
    if decoded != expected {
        return Err(dump(&format!("decoder returned {decoded:?}")));
    }
    let corrected: Vec<RatFun> = y.iter().zip(decoded.to_dense(spec)).map(|(a, b)| a - &b).collect();
    let recovered = spec.unencode(&corrected).map_err(|err| dump(&format!("unencode: {err}")))?;
    if recovered != message {
        return Err(dump(&format!("recovered message {}", join(recovered.coeffs()))));
    }
    Ok(TrialOutcome { basic_failed, positions: decoded.weight() })
}

/// Runs `cfg.trials` independent trials in parallel. Any trial whose decoded
/// error or message differs from the planted one aborts the batch with
/// [`Error::TrialMismatch`] carrying the full instance.
pub fn run_trials(cfg: &TrialConfig) -> Result<TrialReport> {
    cfg.validate()?;
    let outcomes: Vec<TrialOutcome> =
        (0..cfg.trials).into_par_iter().map(|i| run_one(cfg, i)).collect::<Result<_>>()?;
    Ok(TrialReport {
        trials: cfg.trials,
        successes: outcomes.len(),
        basic_failures: outcomes.iter().filter(|o| o.basic_failed).count(),
        total_positions: outcomes.iter().map(|o| o.positions).sum(),
        seed: cfg.seed,
    })
}

/// Content stored on one node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodePayload {
    /// Coefficient list `f_j = sum_i v_(i,j) z^i`.
    Polynomial(PolyZ),
    /// Coordinates that are not polynomials are stored verbatim.
    Rational(RatFun),
}

impl NodePayload {
    pub fn to_ratfun(&self) -> RatFun {
        match self {
            NodePayload::Polynomial(f) => RatFun::from_poly(f.clone()),
            NodePayload::Rational(a) => a.clone(),
        }
    }
}

/// Node `j` receives coordinate `j`.
pub fn sentence_to_nodes(word: &[RatFun]) -> Vec<NodePayload> {
    word.iter()
        .map(|c| {
            if c.is_polynomial() {
                NodePayload::Polynomial(c.num().clone())
            } else {
                NodePayload::Rational(c.clone())
            }
        })
        .collect()
}

/// Reassembles the word from node payloads in node order.
pub fn nodes_to_sentence(nodes: &[NodePayload]) -> Vec<RatFun> {
    nodes.iter().map(NodePayload::to_ratfun).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(text: &str, p: u32) -> RatFun {
        RatFun::parse(text, Prime::new(p).unwrap()).unwrap()
    }

    fn rfs(texts: &[&str], p: u32) -> Vec<RatFun> {
        texts.iter().map(|t| rf(t, p)).collect()
    }

    fn p11() -> CodeSpec {
        CodeSpec::build(rf("1", 11), rf("1/z", 11), 7, 0).unwrap()
    }

    #[test]
    fn inject_two_errors_into_golden_codeword() {
        let spec = p11();
        let c = spec.encode(&Message::new(rfs(&["1", "z", "0", "0", "z^4"], 11))).unwrap();
        let y = inject_errors(c.coords(), &[6, 8], &rfs(&["8", "2*z^2"], 11)).unwrap();
        let expect = rfs(&["3/z^6", "5/z^5", "3/z^4", "7/z^3", "8/z^2", "5/z", "0", "3*z", "0", "3*z^3", "z^4"], 11);
        assert_eq!(y, expect);
    }

    #[test]
    fn inject_edge_cases() {
        let c = rfs(&["1", "z", "0"], 5);
        assert_eq!(inject_errors(&c, &[], &[]).unwrap(), c);
        let y = inject_errors(&c, &[0, 2], &rfs(&["z", "3"], 5)).unwrap();
        let back = inject_errors(&y, &[0, 2], &rfs(&["-z", "-3"], 5)).unwrap();
        assert_eq!(back, c);
        assert_eq!(inject_errors(&c, &[1, 1], &rfs(&["1", "1"], 5)).unwrap_err(), Error::DuplicatePosition(1));
        assert_eq!(inject_errors(&c, &[1], &rfs(&["0"], 5)).unwrap_err(), Error::ZeroErrorValue(1));
        assert_eq!(inject_errors(&c, &[3], &rfs(&["1"], 5)).unwrap_err(), Error::PositionOutOfRange { pos: 3, len: 3 });
    }

    #[test]
    fn random_error_contract() {
        let spec = p11();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let e = random_error(&spec, 1, 2, &mut rng).unwrap();
        assert_eq!(e.weight(), 1);
        for _ in 0..20 {
            let e = random_error(&spec, 3, 0, &mut rng).unwrap();
            assert_eq!(e.weight(), 3);
            assert!(e.values().iter().all(|v| v.is_constant() && !v.is_zero()));
            assert!(e.positions().iter().all(|&k| k < 11));
        }
        assert!(random_error(&spec, 0, 1, &mut rng).is_err());
        assert!(random_error(&spec, 4, 1, &mut rng).is_err());
        let a = random_error(&spec, 3, 2, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        let b = random_error(&spec, 3, 2, &mut ChaCha8Rng::seed_from_u64(99)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn trials_without_errors() {
        let report = run_trials(&TrialConfig::new(p11(), 10, 0, 2, 1)).unwrap();
        assert_eq!((report.successes, report.basic_failures, report.total_positions), (10, 0, 0));
    }

    #[test]
    fn trials_recover_planted_errors() {
        let report = run_trials(&TrialConfig::new(p11(), 40, 3, 2, 5)).unwrap();
        assert_eq!(report.successes, 40);
        assert_eq!(report, run_trials(&TrialConfig::new(p11(), 40, 3, 2, 5)).unwrap());
    }

    #[test]
    fn constant_values_always_need_full_decoder() {
        let cfg = TrialConfig::new(p11(), 20, 2, 0, 3).exact_weight(true);
        let report = run_trials(&cfg).unwrap();
        assert_eq!((report.successes, report.basic_failures), (20, 20));
        assert_eq!(report.total_positions, 40);
    }

    #[test]
    fn config_validation() {
        assert!(run_trials(&TrialConfig::new(p11(), 0, 1, 1, 0)).is_err());
        assert!(run_trials(&TrialConfig::new(p11(), 5, 4, 1, 0)).is_err());
    }

    #[test]
    fn report_text() {
        let r = TrialReport { trials: 4, successes: 4, basic_failures: 1, total_positions: 6, seed: 9 };
        assert_eq!(r.summary(), "trials=4 successes=4 basic_failures=1 mean_positions=1.5000 seed=9");
        assert!(r.to_string().contains("successes=4\n"));
    }

    #[test]
    fn node_round_trip_and_corruption() {
        let spec = CodeSpec::build(rf("z", 5), rf("1/(z+1)", 5), 3, 0).unwrap();
        let c = spec.encode(&Message::new(rfs(&["1", "0", "0"], 5))).unwrap();
        let nodes = sentence_to_nodes(c.coords());
        assert_eq!(nodes.len(), 5);
        for (j, node) in nodes.iter().enumerate() {
            assert_eq!(&node.to_ratfun(), &c.coords()[j]);
        }
        assert_eq!(nodes[2], NodePayload::Polynomial(PolyZ::one(spec.prime())));
        assert_eq!(nodes_to_sentence(&nodes), c.coords());

        let mut bad = nodes.clone();
        bad[4] = NodePayload::Polynomial(PolyZ::monomial(spec.prime(), 1, 1));
        let y = nodes_to_sentence(&bad);
        assert_eq!(y, inject_errors(c.coords(), &[4], &rfs(&["z"], 5)).unwrap());
        let expect = ErrorVector::new(vec![4], rfs(&["z"], 5)).unwrap();
        assert_eq!(decode(&y, &spec).unwrap(), Decoded::Errors(expect));
    }
}
