use super::prime::Prime;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// A derivation of `F_p(z)`, fixed by the nonzero value `delta(z)`.
///
/// Every derivation acts as `f -> f' * delta(z)`. Its minimal polynomial
/// as a map over the constants `K = F_p(z^p)` is `t^p - gamma * t`, and
/// `gamma = delta^p(z) / delta(z)` is computed once at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    p: Prime,
    dz: RatFun,
    gamma: RatFun,
}

impl Derivation {
    pub fn new(dz: RatFun) -> Result<Self> {
        if dz.is_zero() {
            return Err(Error::ZeroDerivation);
        }
        let p = dz.prime();
        let gamma = compute_gamma(&dz)?;
        Ok(Derivation { p, dz, gamma })
    }

    /// The standard derivation `d/dz`.
    pub fn standard(p: Prime) -> Self {
        Self::new(RatFun::one(p)).expect("d/dz is a valid derivation")
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    /// The value `delta(z)`.
    pub fn dz(&self) -> &RatFun {
        &self.dz
    }

    pub fn gamma(&self) -> &RatFun {
        &self.gamma
    }

    pub fn derive(&self, f: &RatFun) -> RatFun {
        derive_with(f, &self.dz)
    }

    /// `delta^k(f)`.
    pub fn iterate(&self, f: &RatFun, k: usize) -> RatFun {
        let mut acc = f.clone();
        for _ in 0..k {
            if acc.is_zero() {
                break;
            }
            acc = self.derive(&acc);
        }
        acc
    }

    /// `[f, delta(f), ..., delta^(n-1)(f)]`.
    pub fn orbit(&self, f: &RatFun, n: usize) -> Vec<RatFun> {
        let mut out = Vec::with_capacity(n);
        let mut acc = f.clone();
        for _ in 0..n {
            let next = self.derive(&acc);
            out.push(acc);
            acc = next;
        }
        out
    }

    /// Membership in the constant field `K`, decided by `delta(f) = 0`.
    pub fn in_constant_field(&self, f: &RatFun) -> bool {
        self.derive(f).is_zero()
    }

    /// Logarithmic derivative `L(a) = delta(a) / a`.
    pub fn log_derivative(&self, a: &RatFun) -> Result<RatFun> {
        self.derive(a).checked_div(a)
    }
}

impl std::fmt::Debug for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Derivation(p={}, dz={}, gamma={})", self.p, self.dz, self.gamma)
    }
}

fn derive_with(f: &RatFun, dz: &RatFun) -> RatFun {
    let fp = f.formal_derivative();
    if fp.is_zero() {
        return fp;
    }
    fp * dz
}

/// `gamma = delta^p(z) / delta(z)`, checked to be a constant.
pub fn compute_gamma(dz: &RatFun) -> Result<RatFun> {
    if dz.is_zero() {
        return Err(Error::ZeroDerivation);
    }
    let p = dz.prime();
    let mut acc = RatFun::z(p);
    for _ in 0..p.get() {
        acc = derive_with(&acc, dz);
    }
    let gamma = acc.checked_div(dz)?;
    if !derive_with(&gamma, dz).is_zero() {
        return Err(Error::Internal(format!("gamma = {gamma} is not a constant of the derivation")));
    }
    Ok(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn rf(text: &str, p: u32) -> RatFun {
        RatFun::parse(text, pr(p)).unwrap()
    }

    fn der(dz: &str, p: u32) -> Derivation {
        Derivation::new(rf(dz, p)).unwrap()
    }

    #[test]
    fn derive_examples() {
        assert_eq!(der("1", 11).derive(&rf("1/z", 11)), rf("10/z^2", 11));
        assert!(der("z^2+3", 11).derive(&rf("7", 11)).is_zero());
        // -1/(z+1)^2 * z over F_5
        assert_eq!(der("z", 5).derive(&rf("1/(z+1)", 5)), rf("(4*z)/(z^2+2*z+1)", 5));
    }

    #[test]
    fn iterate_examples() {
        let d = der("1", 11);
        let alpha = rf("1/z", 11);
        assert_eq!(d.iterate(&alpha, 6), rf("5/z^7", 11));
        assert_eq!(d.iterate(&alpha, 0), alpha);
        assert!(d.iterate(&alpha, 11).is_zero());
    }

    #[test]
    fn gamma_examples() {
        assert!(der("1", 11).gamma().is_zero());
        assert_eq!(der("z", 5).gamma(), &RatFun::one(pr(5)));
        // oracle: five-fold derivation of z, divided by dz, killed by delta
        let d = der("z^2", 5);
        let five = (0..5).fold(rf("z", 5), |acc, _| acc.formal_derivative() * rf("z^2", 5));
        let expect = five / rf("z^2", 5);
        assert_eq!(d.gamma(), &expect);
        assert!(d.in_constant_field(d.gamma()));
    }

    #[test]
    fn zero_derivation_rejected() {
        assert_eq!(Derivation::new(RatFun::zero(pr(5))), Err(Error::ZeroDerivation));
    }

    #[test]
    fn constant_field_membership() {
        let d = der("1", 5);
        assert!(d.in_constant_field(&rf("(z^5)/(z^5+1)", 5)));
        assert!(!d.in_constant_field(&rf("z", 5)));
        assert!(der("z", 5).in_constant_field(&rf("z^10+3*z^5", 5)));
        assert!(!der("z", 5).in_constant_field(&rf("z^10+3*z^4", 5)));
    }

    #[test]
    fn log_derivative_examples() {
        let d = der("1", 11);
        let alpha = rf("1/z", 11);
        for i in 0..11 {
            let a = d.iterate(&alpha, i);
            let expect = RatFun::from_int(pr(11), -(i as i64 + 1)) * rf("1/z", 11);
            assert_eq!(d.log_derivative(&a).unwrap(), expect);
        }
        assert!(d.log_derivative(&rf("4", 11)).unwrap().is_zero());
        assert_eq!(der("z", 5).log_derivative(&rf("1/(z+1)", 5)).unwrap(), rf("(4*z)/(z+1)", 5));
        assert_eq!(d.log_derivative(&RatFun::zero(pr(11))), Err(Error::DivisionByZero));
    }
}
