//! Reed-Solomon differential convolutional codes.
//!
//! A code of length `p` is built from a derivation `delta`, a cyclic vector
//! `alpha` (its orbit `alpha, delta(alpha), ..., delta^(p-1)(alpha)` is a
//! basis of `F_p(z)` over the constants), a designed distance `d` and an
//! offset `r`. The generator is the least left common multiple of the
//! linear factors `x - L(delta^(r+i)(alpha))`, `0 <= i <= d-2`, and the code
//! is the left ideal it generates in `R / R(x^p - gamma x)`, written in the
//! coordinates `1, x, ..., x^(p-1)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::FunMatrix;
use crate::ore::{llcm_all, n_values, OrePoly, QuotientElem};
use crate::rfield::{Derivation, Prime, RatFun};

/// Construction parameters of a code, as stored in a code specification file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub delta_z: RatFun,
    pub alpha: RatFun,
    pub d: usize,
    pub r: usize,
}

impl CodeParams {
    pub fn new(delta_z: RatFun, alpha: RatFun, d: usize, r: usize) -> Self {
        CodeParams { delta_z, alpha, d, r }
    }

    pub fn prime(&self) -> Prime {
        self.delta_z.prime()
    }

    pub fn build(&self) -> Result<CodeSpec> {
        CodeSpec::build(self.delta_z.clone(), self.alpha.clone(), self.d, self.r)
    }
}

/// A fully built code with every structural invariant verified.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    der: Arc<Derivation>,
    alpha: RatFun,
    d: usize,
    r: usize,
    tau: usize,
    /// `delta^i(alpha)` for `0 <= i < 2p`.
    orbit: Vec<RatFun>,
    /// `L(delta^j(alpha))` for `0 <= j < p`.
    roots: Vec<RatFun>,
    g: OrePoly,
    nmat: FunMatrix,
    hmat: FunMatrix,
}

/// Codeword coordinates, guaranteed to lie in the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword(Vec<RatFun>);

impl Codeword {
    pub fn coords(&self) -> &[RatFun] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<RatFun> {
        self.0
    }

    /// Number of nonzero coordinates.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl AsRef<[RatFun]> for Codeword {
    fn as_ref(&self) -> &[RatFun] {
        &self.0
    }
}

/// Message coefficients, one per dimension of the code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Message(Vec<RatFun>);

impl Message {
    pub fn new(coeffs: Vec<RatFun>) -> Self {
        Message(coeffs)
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<RatFun> {
        self.0
    }
}

impl CodeSpec {
    /// Builds the code and checks its invariants eagerly.
    ///
    /// Fails with [`Error::NotCyclicVector`] when the Wronskian of the orbit
    /// of `alpha` is singular and with range errors for `d` or `r`.
    pub fn build(delta_z: RatFun, alpha: RatFun, d: usize, r: usize) -> Result<Self> {
        let p = delta_z.prime();
        if alpha.prime() != p {
            return Err(Error::ContextMismatch);
        }
        let n = p.get() as usize;
        if d == 0 || d > n {
            return Err(Error::DesignedDistanceOutOfRange { d, p: p.get() });
        }
        if r > n - d {
            return Err(Error::OffsetOutOfRange { r, max: n - d });
        }
        let der = Arc::new(Derivation::new(delta_z)?);
        let orbit = der.orbit(&alpha, 2 * n);

        let basis = FunMatrix::from_rows(p, (0..n).map(|i| orbit[i..i + n].to_vec()).collect())?;
        if !basis.is_invertible() {
            return Err(Error::NotCyclicVector);
        }
        let roots = orbit[..n].iter().map(|a| der.log_derivative(a)).collect::<Result<Vec<_>>>()?;

        let factors: Vec<OrePoly> = roots[r..r + d - 1].iter().map(|a| OrePoly::x_minus(&der, a)).collect();
        let g = llcm_all(&der, &factors)?;

        let mut nmat = FunMatrix::zeros(p, n, n);
        for (j, a) in roots.iter().enumerate() {
            for (i, v) in n_values(&der, a, n - 1).into_iter().enumerate() {
                nmat.set(i, j, v);
            }
        }
        let mut hmat = FunMatrix::zeros(p, n, d - 1);
        for i in 0..n {
            for j in 0..d - 1 {
                hmat.set(i, j, orbit[r + j + i].clone());
            }
        }

        let spec = CodeSpec { tau: (d - 1) / 2, der, alpha, d, r, orbit, roots, g, nmat, hmat };
        spec.verify()?;
        Ok(spec)
    }

    fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Internal(format!("code construction: {what}")));
        if self.g.degree() != Some(self.d - 1) || !self.g.is_monic() {
            return fail("generator is not monic of degree d-1");
        }
        let (_, rem) = OrePoly::center(&self.der).right_divmod(&self.g)?;
        if !rem.is_zero() {
            return fail("generator does not right-divide x^p - gamma x");
        }
        if self.generator_by_linear_system()? != self.g {
            return fail("llcm and linear-system generators disagree");
        }
        Ok(())
    }

    /// The generator as the unique monic polynomial of degree `d-1` whose
    /// right evaluations at the `d-1` code roots vanish, found by solving
    /// `(g_0, ..., g_(d-2)) A = -b` against the evaluation matrix `N`.
    pub fn generator_by_linear_system(&self) -> Result<OrePoly> {
        let m = self.d - 1;
        let p = self.prime();
        if m == 0 {
            return Ok(OrePoly::one(&self.der));
        }
        let cols: Vec<usize> = (self.r..self.r + m).collect();
        let a = self.nmat.submatrix(&(0..m).collect::<Vec<_>>(), &cols)?;
        let b: Vec<RatFun> = cols.iter().map(|&j| -self.nmat.get(m, j)).collect();
        if !a.is_invertible() {
            return Err(Error::Internal("principal block of N is singular".into()));
        }
        let mut coeffs = a.solve_left(&b)?;
        coeffs.push(RatFun::one(p));
        Ok(OrePoly::from_coeffs(&self.der, coeffs))
    }

    pub fn prime(&self) -> Prime {
        self.der.prime()
    }

    /// Code length `p`.
    pub fn length(&self) -> usize {
        self.prime().get() as usize
    }

    /// Code dimension `p - d + 1`.
    pub fn dimension(&self) -> usize {
        self.length() - self.d + 1
    }

    pub fn derivation(&self) -> &Arc<Derivation> {
        &self.der
    }

    pub fn alpha(&self) -> &RatFun {
        &self.alpha
    }

    pub fn gamma(&self) -> &RatFun {
        self.der.gamma()
    }

    pub fn designed_distance(&self) -> usize {
        self.d
    }

    pub fn offset(&self) -> usize {
        self.r
    }

    /// Error-correction capacity `floor((d-1)/2)`.
    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn generator(&self) -> &OrePoly {
        &self.g
    }

    /// The `p x p` evaluation matrix, entry `(i, j) = N_i(L(delta^j(alpha)))`.
    pub fn n_matrix(&self) -> &FunMatrix {
        &self.nmat
    }

    /// The `p x (d-1)` parity-check Wronskian of `delta^r(alpha), ..., delta^(r+d-2)(alpha)`.
    pub fn parity_check(&self) -> &FunMatrix {
        &self.hmat
    }

    /// `L(delta^j(alpha))`.
    pub fn root(&self, j: usize) -> &RatFun {
        &self.roots[j]
    }

    /// `delta^i(alpha)`.
    pub fn alpha_derivative(&self, i: usize) -> RatFun {
        match self.orbit.get(i) {
            Some(v) => v.clone(),
            None => self.der.iterate(&self.orbit[self.orbit.len() - 1], i + 1 - self.orbit.len()),
        }
    }

    pub fn params(&self) -> CodeParams {
        CodeParams::new(self.der.dz().clone(), self.alpha.clone(), self.d, self.r)
    }

    fn check_len(&self, actual: usize, expected: usize) -> Result<()> {
        if actual != expected {
            return Err(Error::LengthMismatch { expected, actual });
        }
        Ok(())
    }

    /// The word polynomial with the given coordinates.
    pub fn word_poly(&self, coords: &[RatFun]) -> Result<OrePoly> {
        Ok(QuotientElem::from_coords(&self.der, coords)?.into_rep())
    }

    pub fn encode(&self, m: &Message) -> Result<Codeword> {
        self.check_len(m.0.len(), self.dimension())?;
        let mpoly = OrePoly::from_coeffs(&self.der, m.0.clone());
        let word = mpoly.try_mul(&self.g)?.reduce_mod_center();
        Ok(Codeword(word.coords()))
    }

    /// Recovers the message of a codeword by right division by `g`.
    pub fn unencode(&self, c: &[RatFun]) -> Result<Message> {
        self.check_len(c.len(), self.length())?;
        let (q, rem) = self.word_poly(c)?.right_divmod(&self.g)?;
        if !rem.is_zero() {
            return Err(Error::NotACodeword);
        }
        let mut coeffs = q.into_coeffs();
        coeffs.resize(self.dimension(), RatFun::zero(self.prime()));
        Ok(Message(coeffs))
    }

    /// Parity check `c * H = 0`.
    pub fn is_codeword(&self, c: &[RatFun]) -> Result<bool> {
        self.check_len(c.len(), self.length())?;
        Ok(self.hmat.left_apply(c)?.iter().all(RatFun::is_zero))
    }

    /// Wraps coordinates as a [`Codeword`] after the parity check.
    pub fn codeword(&self, coords: Vec<RatFun>) -> Result<Codeword> {
        if self.is_codeword(&coords)? {
            Ok(Codeword(coords))
        } else {
            Err(Error::NotACodeword)
        }
    }
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

    pub(crate) fn p11() -> CodeSpec {
        CodeSpec::build(rf("1", 11), rf("1/z", 11), 7, 0).unwrap()
    }

    pub(crate) fn p5() -> CodeSpec {
        CodeSpec::build(rf("z", 5), rf("1/(z+1)", 5), 3, 0).unwrap()
    }

    #[test]
    fn generator_p11() {
        let spec = p11();
        let expect = rfs(&["5/z^6", "8/z^5", "10/z^4", "2/z^3", "10/z^2", "3/z", "1"], 11);
        assert_eq!(spec.generator().coeffs(), &expect[..]);
        assert_eq!(spec.tau(), 3);
        assert_eq!(spec.dimension(), 5);
        assert!(spec.gamma().is_zero());
    }

    #[test]
    fn generator_p5() {
        let spec = p5();
        let expect = rfs(&["(2*z^2)/(z^2+2*z+1)", "(3*z+4)/(z+1)", "1"], 5);
        assert_eq!(spec.generator().coeffs(), &expect[..]);
        assert!(spec.gamma().is_one());
    }

    #[test]
    fn distance_one_is_whole_space() {
        let spec = CodeSpec::build(rf("1", 7), rf("1/z", 7), 1, 0).unwrap();
        assert_eq!(spec.generator(), &OrePoly::one(spec.derivation()));
        assert_eq!(spec.tau(), 0);
        assert_eq!(spec.dimension(), 7);
        assert_eq!(spec.parity_check().cols(), 0);
        let m = Message::new(rfs(&["1", "z", "0", "0", "1/z", "3", "z^2"], 7));
        let c = spec.encode(&m).unwrap();
        assert_eq!(c.coords(), m.coeffs());
    }

    #[test]
    fn distance_two_generator_is_single_factor() {
        for r in [0, 3] {
            let spec = CodeSpec::build(rf("z", 7), rf("1/(z+1)", 7), 2, r).unwrap();
            let expect = OrePoly::x_minus(spec.derivation(), spec.root(r));
            assert_eq!(spec.generator(), &expect);
            assert_eq!(spec.generator_by_linear_system().unwrap(), expect);
            let h = spec.parity_check();
            assert_eq!(h.col(0), (0..7).map(|i| spec.alpha_derivative(r + i)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn parameter_validation() {
        assert_eq!(
            CodeSpec::build(rf("1", 5), rf("1/z", 5), 6, 0).unwrap_err(),
            Error::DesignedDistanceOutOfRange { d: 6, p: 5 }
        );
        assert_eq!(
            CodeSpec::build(rf("1", 5), rf("1/z", 5), 0, 0).unwrap_err(),
            Error::DesignedDistanceOutOfRange { d: 0, p: 5 }
        );
        assert_eq!(
            CodeSpec::build(rf("1", 5), rf("1/z", 5), 3, 3).unwrap_err(),
            Error::OffsetOutOfRange { r: 3, max: 2 }
        );
        assert_eq!(CodeSpec::build(rf("0", 5), rf("1/z", 5), 3, 0).unwrap_err(), Error::ZeroDerivation);
    }

    #[test]
    fn non_cyclic_vectors_rejected() {
        // constants, p-th powers and low-degree polynomials under d/dz
        for alpha in ["3", "z^5+1", "z^2", "0"] {
            assert_eq!(CodeSpec::build(rf("1", 5), rf(alpha, 5), 3, 0).unwrap_err(), Error::NotCyclicVector, "{alpha}");
        }
    }

    #[test]
    fn n_matrix_p11_closed_form() {
        let spec = p11();
        let p = Prime::new(11).unwrap();
        let n = spec.n_matrix();
        let fact = |k: u64| (1..=k).product::<u64>();
        for i in 0..11 {
            for j in 0..11 {
                // (-1)^i (i+j)!/j! / z^i, where (i+j)! vanishes mod 11 past 10
                let expect = if i + j >= 11 {
                    RatFun::zero(p)
                } else {
                    let c = (fact((i + j) as u64) / fact(j as u64)) % 11;
                    let c = if i % 2 == 1 { (11 - c) % 11 } else { c };
                    RatFun::monomial(p, c as u32, -(i as i32))
                };
                assert_eq!(n.get(i, j), &expect, "entry ({i},{j})");
            }
        }
        assert!(n.row(0).iter().all(RatFun::is_one));
        assert_eq!(n.get(10, 0), &rf("10/z^10", 11));
    }

    #[test]
    fn n_times_diag_is_wronskian() {
        let spec = p5();
        let orbit: Vec<RatFun> = (0..5).map(|j| spec.alpha_derivative(j)).collect();
        let diag = FunMatrix::diag(spec.prime(), &orbit);
        let nw = spec.n_matrix().mat_mul(&diag).unwrap();
        assert_eq!(nw, crate::linalg::wronskian(spec.derivation(), &orbit, 5).unwrap());
    }

    #[test]
    fn encode_golden_p11() {
        let spec = p11();
        let m = Message::new(rfs(&["1", "z", "0", "0", "z^4"], 11));
        let c = spec.encode(&m).unwrap();
        let expect =
            rfs(&["3/z^6", "5/z^5", "3/z^4", "7/z^3", "8/z^2", "5/z", "3", "3*z", "9*z^2", "3*z^3", "z^4"], 11);
        assert_eq!(c.coords(), &expect[..]);
        assert!(spec.is_codeword(c.coords()).unwrap());
        assert_eq!(spec.unencode(c.coords()).unwrap(), m);
    }

    #[test]
    fn encode_golden_p5() {
        let spec = p5();
        let c = spec.encode(&Message::new(rfs(&["1", "0", "0"], 5))).unwrap();
        assert_eq!(c.coords(), &rfs(&["(2*z^2)/(z^2+2*z+1)", "(3*z+4)/(z+1)", "1", "0", "0"], 5)[..]);
    }

    #[test]
    fn encode_zero_and_length_errors() {
        let spec = p5();
        let zero = spec.encode(&Message::new(rfs(&["0", "0", "0"], 5))).unwrap();
        assert!(zero.coords().iter().all(RatFun::is_zero));
        assert!(spec.is_codeword(zero.coords()).unwrap());
        assert_eq!(
            spec.encode(&Message::new(rfs(&["1"], 5))).unwrap_err(),
            Error::LengthMismatch { expected: 3, actual: 1 }
        );
        assert!(spec.is_codeword(&rfs(&["1"], 5)).is_err());
    }

    #[test]
    fn corrupted_word_is_rejected() {
        let spec = p11();
        let m = Message::new(rfs(&["1", "z", "0", "0", "z^4"], 11));
        let mut y = spec.encode(&m).unwrap().into_coords();
        y[3] = &y[3] + &rf("z", 11);
        assert!(!spec.is_codeword(&y).unwrap());
        assert_eq!(spec.unencode(&y).unwrap_err(), Error::NotACodeword);
        assert_eq!(spec.codeword(y).unwrap_err(), Error::NotACodeword);
    }

    #[test]
    fn mds_submatrices_p5() {
        let spec = p5();
        let h = spec.parity_check();
        let mut count = 0;
        for a in 0..5 {
            for b in a + 1..5 {
                assert!(h.submatrix(&[a, b], &[0, 1]).unwrap().is_invertible(), "rows {a},{b}");
                count += 1;
            }
        }
        assert_eq!(count, 10);
    }
}
