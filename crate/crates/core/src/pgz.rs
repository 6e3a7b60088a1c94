//! Peterson-Gorenstein-Zierler style decoding of RS differential
//! convolutional codes (offset `r = 0`).
//!
//! Decoding proceeds in the classical order: syndromes from right
//! evaluations of the received word, the syndrome table `S^tau`, a right
//! divisor `rho` of the error locator read off the reduced column echelon
//! form of `S^tau`, error positions as the right roots of `rho` among the
//! code roots, and finally the error values from a transposed Wronskian
//! system.
//!
//! [`decode_basic`] stops with [`BasicOutcome::DecodingFailure`] when `rho`
//! has fewer such roots than its degree, which happens exactly when the
//! error values are linearly dependent over the constants. [`decode`]
//! recovers the positions in that case from the row reduced basis of the
//! ideal generated by `rho`.

use crate::code::{CodeSpec, Codeword, Message};
use crate::error::{Error, Result};
use crate::linalg::FunMatrix;
use crate::ore::OrePoly;
use crate::rfield::RatFun;

/// Syndromes `s_0..s_(2tau-1)` and the `(tau+1) x tau` block of `S_(i,k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeTable {
    pub s: Vec<RatFun>,
    pub table: FunMatrix,
}

/// Monic right divisor `rho` of the error locator, of degree `mu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocatorDivisor {
    pub mu: usize,
    pub rho: OrePoly,
}

/// Sparse error: sorted distinct positions with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorVector {
    positions: Vec<usize>,
    values: Vec<RatFun>,
}

impl ErrorVector {
    /// Validates and sorts by position.
    pub fn new(positions: Vec<usize>, values: Vec<RatFun>) -> Result<Self> {
        if positions.len() != values.len() {
            return Err(Error::LengthMismatch { expected: positions.len(), actual: values.len() });
        }
        let mut pairs: Vec<(usize, RatFun)> = positions.into_iter().zip(values).collect();
        pairs.sort_by_key(|(k, _)| *k);
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicatePosition(w[0].0));
            }
        }
        if let Some((k, _)) = pairs.iter().find(|(_, v)| v.is_zero()) {
            return Err(Error::ZeroErrorValue(*k));
        }
        let (positions, values) = pairs.into_iter().unzip();
        Ok(ErrorVector { positions, values })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn values(&self) -> &[RatFun] {
        &self.values
    }

    /// Number of corrupted coordinates.
    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    /// Dense length-`n` error word.
    pub fn to_dense(&self, spec: &CodeSpec) -> Vec<RatFun> {
        let mut e = vec![RatFun::zero(spec.prime()); spec.length()];
        for (k, v) in self.positions.iter().zip(&self.values) {
            e[*k] = v.clone();
        }
        e
    }
}

/// Result of the basic decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasicOutcome {
    /// All syndromes vanish.
    ZeroError,
    Errors(ErrorVector),
    /// `rho` has fewer right roots among the code roots than its degree.
    DecodingFailure,
}

/// Result of the full decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decoded {
    ZeroError,
    Errors(ErrorVector),
}

impl Decoded {
    pub fn weight(&self) -> usize {
        match self {
            Decoded::ZeroError => 0,
            Decoded::Errors(e) => e.weight(),
        }
    }

    pub fn to_dense(&self, spec: &CodeSpec) -> Vec<RatFun> {
        match self {
            Decoded::ZeroError => vec![RatFun::zero(spec.prime()); spec.length()],
            Decoded::Errors(e) => e.to_dense(spec),
        }
    }
}

/// Every intermediate object of one decoding run.
#[derive(Debug, Clone, Default)]
pub struct DecodeTrace {
    pub syndromes: Vec<RatFun>,
    pub table: Option<FunMatrix>,
    pub rcef: Option<FunMatrix>,
    pub divisor: Option<LocatorDivisor>,
    /// Padded coefficient row of `rho` times `N`.
    pub rho_n: Option<Vec<RatFun>>,
    pub candidates: Option<Vec<usize>>,
    /// Row reduced `M_rho N`, only when the full branch ran.
    pub h_rho: Option<FunMatrix>,
    pub positions: Option<Vec<usize>>,
    /// Matrix and right-hand side of the error value system.
    pub value_system: Option<(FunMatrix, Vec<RatFun>)>,
    pub values: Option<Vec<RatFun>>,
}

fn beyond(msg: impl Into<String>) -> Error {
    Error::BeyondCapacity(msg.into())
}

fn check_decodable(y: &[RatFun], spec: &CodeSpec) -> Result<()> {
    if spec.offset() != 0 {
        return Err(Error::UnsupportedOffset(spec.offset()));
    }
    if y.len() != spec.length() {
        return Err(Error::LengthMismatch { expected: spec.length(), actual: y.len() });
    }
    if y.iter().any(|c| c.prime() != spec.prime()) {
        return Err(Error::ContextMismatch);
    }
    Ok(())
}

/// `s_i = y[L(delta^i(alpha))]` for `0 <= i < 2 tau`, i.e. the first `2 tau`
/// entries of `y N`.
pub fn syndromes(y: &[RatFun], spec: &CodeSpec) -> Result<Vec<RatFun>> {
    check_decodable(y, spec)?;
    let n = spec.n_matrix();
    let p = spec.prime();
    Ok((0..2 * spec.tau())
        .map(|i| {
            y.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .fold(RatFun::zero(p), |acc, (j, v)| acc + v * n.get(j, i))
        })
        .collect())
}

/// Fills `S_(i,0) = s_i delta^i(alpha)` and `S_(i,k+1) = delta(S_(i,k)) - S_(i+1,k)`
/// for `i + k <= 2 tau - 1`, keeping rows `0..=tau` and columns `0..tau`.
pub fn syndrome_table(s: &[RatFun], spec: &CodeSpec) -> Result<SyndromeTable> {
    let tau = spec.tau();
    if s.len() != 2 * tau {
        return Err(Error::LengthMismatch { expected: 2 * tau, actual: s.len() });
    }
    let der = spec.derivation();
    let p = spec.prime();
    // tri[i][k] defined for i + k <= 2 tau - 1
    let mut tri: Vec<Vec<RatFun>> = s.iter().enumerate().map(|(i, si)| vec![si * &spec.alpha_derivative(i)]).collect();
    for k in 0..tau.saturating_sub(1) {
        for i in 0..2 * tau - k - 1 {
            let next = der.derive(&tri[i][k]) - &tri[i + 1][k];
            tri[i].push(next);
        }
    }
    let mut table = FunMatrix::zeros(p, tau + 1, tau);
    for (i, row) in tri.iter().take(tau + 1).enumerate() {
        for (k, v) in row.iter().take(tau).enumerate() {
            table.set(i, k, v.clone());
        }
    }
    Ok(SyndromeTable { s: s.to_vec(), table })
}

/// Reads `rho = x^mu - sum a_i x^i` from `rcef(S^tau)`, whose first `mu`
/// rows must be `I_mu` and whose row `mu` holds `a_0..a_(mu-1)`.
pub fn locator_divisor(table: &SyndromeTable, spec: &CodeSpec) -> Result<LocatorDivisor> {
    Ok(locator_from_rcef(&table.table.rcef(), spec)?.0)
}

fn locator_from_rcef(rc: &FunMatrix, spec: &CodeSpec) -> Result<(LocatorDivisor, FunMatrix)> {
    let p = spec.prime();
    let mu = (0..rc.cols()).filter(|&j| rc.col(j).iter().any(|v| !v.is_zero())).count();
    if mu == 0 {
        return Err(beyond("syndrome table is zero"));
    }
    if mu >= rc.rows() {
        return Err(beyond("syndrome table has no pivot-free row"));
    }
    for i in 0..mu {
        for j in 0..mu {
            let v = rc.get(i, j);
            let ok = if i == j { v.is_one() } else { v.is_zero() };
            if !ok {
                return Err(beyond("reduced column echelon form does not start with an identity block"));
            }
        }
    }
    let mut coeffs: Vec<RatFun> = (0..mu).map(|i| -rc.get(mu, i)).collect();
    coeffs.push(RatFun::one(p));
    let rho = OrePoly::from_coeffs(spec.derivation(), coeffs);
    Ok((LocatorDivisor { mu, rho }, rc.clone()))
}

/// `(rho_0, ..., rho_mu, 0, ..., 0) N`, the right evaluations of `rho` at
/// every code root.
pub fn rho_evaluations(rho: &OrePoly, spec: &CodeSpec) -> Result<Vec<RatFun>> {
    let mut row = rho.coeffs().to_vec();
    if row.len() > spec.length() {
        return Err(beyond("locator divisor degree exceeds the code length"));
    }
    row.resize(spec.length(), RatFun::zero(spec.prime()));
    spec.n_matrix().left_apply(&row)
}

/// Positions `t` with `rho[L(delta^t(alpha))] = 0`.
pub fn candidate_positions(rho: &OrePoly, spec: &CodeSpec) -> Result<Vec<usize>> {
    Ok(zero_indices(&rho_evaluations(rho, spec)?))
}

fn zero_indices(v: &[RatFun]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, c)| c.is_zero()).map(|(i, _)| i).collect()
}

/// `M_rho`: rows are the coordinates of `x^i rho`, `0 <= i <= p - 1 - deg rho`.
pub fn ideal_basis(rho: &OrePoly, spec: &CodeSpec) -> Result<FunMatrix> {
    let n = spec.length();
    let deg = rho.degree().ok_or_else(|| beyond("zero locator divisor"))?;
    if deg >= n {
        return Err(beyond("locator divisor degree exceeds the code length"));
    }
    let mut rows = Vec::with_capacity(n - deg);
    let mut cur = rho.clone();
    for _ in 0..n - deg {
        let mut c = cur.coeffs().to_vec();
        c.resize(n, RatFun::zero(spec.prime()));
        rows.push(c);
        cur = cur.mul_x();
    }
    FunMatrix::from_rows(spec.prime(), rows)
}

/// The full position search: `H_rho = rref(M_rho N)`, keep only rows that
/// are standard unit vectors, and return the zero columns of what remains
/// together with `H_rho`.
pub fn full_positions(rho: &OrePoly, spec: &CodeSpec) -> Result<(Vec<usize>, FunMatrix)> {
    let n_rho = ideal_basis(rho, spec)?.mat_mul(spec.n_matrix())?;
    let h = n_rho.rref();
    let mut covered = vec![false; h.cols()];
    for i in 0..h.rows() {
        if let Some(j) = unit_row_index(h.row(i)) {
            covered[j] = true;
        }
    }
    let positions = (0..h.cols()).filter(|&j| !covered[j]).collect();
    Ok((positions, h))
}

/// `Some(j)` when the row is exactly `e_j`.
fn unit_row_index(row: &[RatFun]) -> Option<usize> {
    let mut nonzero = row.iter().enumerate().filter(|(_, v)| !v.is_zero());
    match (nonzero.next(), nonzero.next()) {
        (Some((j, v)), None) if v.is_one() => Some(j),
        _ => None,
    }
}

/// The system `(x_1..x_v) A = b` for the error values: `A` has entries
/// `A[j][i] = delta^(k_j + i)(alpha)` and `b_i = delta^i(alpha) s_i`.
pub fn error_value_system(positions: &[usize], s: &[RatFun], spec: &CodeSpec) -> Result<(FunMatrix, Vec<RatFun>)> {
    let v = positions.len();
    if v == 0 || v > s.len() {
        return Err(Error::ErrorCountOutOfRange { v, max: s.len() });
    }
    let mut a = FunMatrix::zeros(spec.prime(), v, v);
    for (j, &k) in positions.iter().enumerate() {
        for i in 0..v {
            a.set(j, i, spec.alpha_derivative(k + i));
        }
    }
    let b = (0..v).map(|i| &spec.alpha_derivative(i) * &s[i]).collect();
    Ok((a, b))
}

/// Solves [`error_value_system`].
pub fn error_values(positions: &[usize], s: &[RatFun], spec: &CodeSpec) -> Result<Vec<RatFun>> {
    let (a, b) = error_value_system(positions, s, spec)?;
    if !a.is_invertible() {
        return Err(beyond("error value system is singular"));
    }
    a.solve_left(&b)
}

/// Shared engine for both decoders.
fn run(y: &[RatFun], spec: &CodeSpec, full: bool, trace: &mut DecodeTrace) -> Result<BasicOutcome> {
    let s = syndromes(y, spec)?;
    trace.syndromes = s.clone();
    if s.iter().all(RatFun::is_zero) {
        return Ok(BasicOutcome::ZeroError);
    }
    let table = syndrome_table(&s, spec)?;
    trace.table = Some(table.table.clone());
    let rc = table.table.rcef();
    trace.rcef = Some(rc.clone());
    let (divisor, _) = locator_from_rcef(&rc, spec)?;
    trace.divisor = Some(divisor.clone());
    let rho_n = rho_evaluations(&divisor.rho, spec)?;
    let candidates = zero_indices(&rho_n);
    trace.rho_n = Some(rho_n);
    trace.candidates = Some(candidates.clone());

    let positions = if candidates.len() == divisor.mu {
        candidates
    } else if !full {
        return Ok(BasicOutcome::DecodingFailure);
    } else {
        let (positions, h) = full_positions(&divisor.rho, spec)?;
        trace.h_rho = Some(h);
        positions
    };
    trace.positions = Some(positions.clone());
    if positions.is_empty() || positions.len() > spec.tau() {
        return Err(beyond(format!("{} candidate error positions for capacity {}", positions.len(), spec.tau())));
    }
    trace.value_system = Some(error_value_system(&positions, &s, spec)?);
    let values = error_values(&positions, &s, spec)?;
    trace.values = Some(values.clone());
    let err = ErrorVector::new(positions, values).map_err(|e| beyond(e.to_string()))?;

    let corrected: Vec<RatFun> = y.iter().zip(err.to_dense(spec)).map(|(a, b)| a - &b).collect();
    if !spec.is_codeword(&corrected)? {
        return Err(beyond("corrected word fails the parity check"));
    }
    Ok(BasicOutcome::Errors(err))
}

/// Decoder that reports a failure instead of running the full position
/// search.
pub fn decode_basic(y: &[RatFun], spec: &CodeSpec) -> Result<BasicOutcome> {
    run(y, spec, false, &mut DecodeTrace::default())
}

/// Full decoder; always succeeds for at most `tau` errors.
pub fn decode(y: &[RatFun], spec: &CodeSpec) -> Result<Decoded> {
    decode_traced(y, spec, true).map(|(d, _)| d)
}

/// Runs either decoder and returns every intermediate object. With
/// `full = false` a decoding failure becomes [`Error::BeyondCapacity`].
pub fn decode_traced(y: &[RatFun], spec: &CodeSpec, full: bool) -> Result<(Decoded, DecodeTrace)> {
    let mut trace = DecodeTrace::default();
    match run(y, spec, full, &mut trace)? {
        BasicOutcome::ZeroError => Ok((Decoded::ZeroError, trace)),
        BasicOutcome::Errors(e) => Ok((Decoded::Errors(e), trace)),
        BasicOutcome::DecodingFailure => Err(beyond("decoding failure in the basic decoder")),
    }
}

/// Like [`decode_basic`] but keeps the trace.
pub fn decode_basic_traced(y: &[RatFun], spec: &CodeSpec) -> Result<(BasicOutcome, DecodeTrace)> {
    let mut trace = DecodeTrace::default();
    let out = run(y, spec, false, &mut trace)?;
    Ok((out, trace))
}

/// Decodes and returns the corrected codeword with its message.
pub fn correct(y: &[RatFun], spec: &CodeSpec) -> Result<(Codeword, Message)> {
    let e = decode(y, spec)?.to_dense(spec);
    let c: Vec<RatFun> = y.iter().zip(&e).map(|(a, b)| a - b).collect();
    let m = spec.unencode(&c)?;
    Ok((spec.codeword(c)?, m))
}
