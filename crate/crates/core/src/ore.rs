//! The differential operator ring `R = F_p(z)[x; delta]`.
//!
//! Elements are polynomials in `x` with coefficients written on the left,
//! multiplied through the commutation rule `x * a = a * x + delta(a)`.
//! `R` has left and right Euclidean division, so greatest common right
//! divisors and least left common multiples exist and are computed here by
//! the (extended) right Euclidean algorithm.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rfield::{Derivation, ParseMode, Prime, RatFun};

/// Element of `F_p(z)[x; delta]`, coefficient `k` multiplies `x^k`.
#[derive(Clone)]
pub struct OrePoly {
    der: Arc<Derivation>,
    coeffs: Vec<RatFun>,
}

pub(crate) fn same_derivation(a: &Arc<Derivation>, b: &Arc<Derivation>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PartialEq for OrePoly {
    fn eq(&self, other: &Self) -> bool {
        same_derivation(&self.der, &other.der) && self.coeffs == other.coeffs
    }
}

impl Eq for OrePoly {}

impl OrePoly {
    pub fn zero(der: &Arc<Derivation>) -> Self {
        OrePoly { der: der.clone(), coeffs: Vec::new() }
    }

    pub fn one(der: &Arc<Derivation>) -> Self {
        Self::constant(der, RatFun::one(der.prime()))
    }

    pub fn x(der: &Arc<Derivation>) -> Self {
        Self::monomial(der, RatFun::one(der.prime()), 1)
    }

    pub fn constant(der: &Arc<Derivation>, a: RatFun) -> Self {
        Self::from_coeffs(der, vec![a])
    }

    /// `a * x^k`.
    pub fn monomial(der: &Arc<Derivation>, a: RatFun, k: usize) -> Self {
        let mut coeffs = vec![RatFun::zero(der.prime()); k];
        coeffs.push(a);
        Self::from_coeffs(der, coeffs)
    }

    /// The linear polynomial `x - a`.
    pub fn x_minus(der: &Arc<Derivation>, a: &RatFun) -> Self {
        Self::from_coeffs(der, vec![-a, RatFun::one(der.prime())])
    }

    /// The central element `x^p - gamma * x`.
    pub fn center(der: &Arc<Derivation>) -> Self {
        let p = der.prime().get() as usize;
        let mut coeffs = vec![RatFun::zero(der.prime()); p + 1];
        coeffs[1] = -der.gamma();
        coeffs[p] = RatFun::one(der.prime());
        Self::from_coeffs(der, coeffs)
    }

    pub fn from_coeffs(der: &Arc<Derivation>, coeffs: Vec<RatFun>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.prime() == der.prime()));
        let mut out = OrePoly { der: der.clone(), coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(RatFun::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn derivation(&self) -> &Arc<Derivation> {
        &self.der
    }

    pub fn prime(&self) -> Prime {
        self.der.prime()
    }

    pub fn coeffs(&self) -> &[RatFun] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<RatFun> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RatFun {
        self.coeffs.get(k).cloned().unwrap_or_else(|| RatFun::zero(self.prime()))
    }

    /// `None` for the zero polynomial, which orders below every degree.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&RatFun> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(RatFun::is_one)
    }

    /// Left scalar multiple `a * self`.
    pub fn scale_left(&self, a: &RatFun) -> Self {
        if a.is_zero() {
            return Self::zero(&self.der);
        }
        Self::from_coeffs(&self.der, self.coeffs.iter().map(|c| a * c).collect())
    }

    /// Left-normalized so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale_left(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if same_derivation(&self.der, &other.der) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// `x * self`.
    pub fn mul_x(&self) -> Self {
        let p = self.prime();
        let mut coeffs = vec![RatFun::zero(p); self.coeffs.len() + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j + 1] = &coeffs[j + 1] + c;
            coeffs[j] = &coeffs[j] + &self.der.derive(c);
        }
        Self::from_coeffs(&self.der, coeffs)
    }

    /// `self * x^k`, a plain shift.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![RatFun::zero(self.prime()); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(&self.der, coeffs)
    }

    /// Ring product, failing on mismatched derivations.
    ///
    /// Uses `x^i * a = sum_k C(i, k) delta^k(a) x^(i-k)` with the binomials
    /// reduced mod `p`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let p = self.prime();
        let (Some(df), Some(dg)) = (self.degree(), other.degree()) else {
            return Ok(Self::zero(&self.der));
        };
        let binom: Vec<Vec<u32>> = (0..=df).map(|i| p.binomial_row(i)).collect();
        let mut acc = vec![RatFun::zero(p); df + dg + 1];
        for (j, gj) in other.coeffs.iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            let derivs = self.der.orbit(gj, df + 1);
            for (i, fi) in self.coeffs.iter().enumerate() {
                if fi.is_zero() {
                    continue;
                }
                for (k, dk) in derivs.iter().enumerate().take(i + 1) {
                    let b = binom[i][k];
                    if b == 0 || dk.is_zero() {
                        continue;
                    }
                    let term = (fi * dk).scale(b);
                    let slot = &mut acc[i - k + j];
                    *slot = &*slot + &term;
                }
            }
        }
        Ok(Self::from_coeffs(&self.der, acc))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.check_context(other).expect("Ore polynomials over different derivations");
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let (a, b) = (self.coeff(k), other.coeff(k));
                if negate {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::from_coeffs(&self.der, coeffs)
    }

    /// Right Euclidean division: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn right_divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_context(divisor)?;
        let dg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let p = self.prime();
        let Some(df) = self.degree() else {
            return Ok((Self::zero(&self.der), Self::zero(&self.der)));
        };
        if df < dg {
            return Ok((Self::zero(&self.der), self.clone()));
        }
        let lc_inv = divisor.leading().unwrap().inv()?;
        // shifted[k] = x^k * divisor
        let mut shifted = Vec::with_capacity(df - dg + 1);
        shifted.push(divisor.clone());
        for k in 1..=df - dg {
            let next = shifted[k - 1].mul_x();
            shifted.push(next);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatFun::zero(p); df - dg + 1];
        for top in (dg..=df).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let k = top - dg;
            let c = &rem[top] * &lc_inv;
            for (idx, s) in shifted[k].coeffs.iter().enumerate() {
                if !s.is_zero() {
                    rem[idx] = &rem[idx] - &(&c * s);
                }
            }
            debug_assert!(rem[top].is_zero());
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::from_coeffs(&self.der, quot), Self::from_coeffs(&self.der, rem)))
    }

    /// Left Euclidean division: `self = divisor * q + r`, `deg r < deg divisor`.
    pub fn left_divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_context(divisor)?;
        let dg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let p = self.prime();
        let lc_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![RatFun::zero(p); self.degree().map_or(0, |d| d.saturating_sub(dg) + 1)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let k = dr - dg;
            let c = rem.leading().unwrap() * &lc_inv;
            let step = divisor.try_mul(&Self::constant(&self.der, c.clone()))?.shift(k);
            let next = &rem - &step;
            if next.degree() >= rem.degree() {
                return Err(Error::Internal("left division failed to reduce degree".into()));
            }
            quot[k] = &quot[k] + &c;
            rem = next;
        }
        Ok((Self::from_coeffs(&self.der, quot), rem))
    }

    /// Right remainder by `x^p - gamma x`; the result has degree `< p`.
    pub fn reduce_mod_center(&self) -> QuotientElem {
        let p = self.prime().get() as usize;
        let rep = if self.degree().is_some_and(|d| d >= p) {
            self.right_divmod(&Self::center(&self.der)).expect("center is nonzero").1
        } else {
            self.clone()
        };
        QuotientElem { rep }
    }

    /// Right evaluation `f[a] = sum_i f_i N_i(a)`, the remainder of right
    /// division by `x - a`.
    pub fn right_eval(&self, a: &RatFun) -> RatFun {
        let Some(deg) = self.degree() else {
            return RatFun::zero(self.prime());
        };
        let n = n_values(&self.der, a, deg);
        self.coeffs
            .iter()
            .zip(n.iter())
            .filter(|(c, _)| !c.is_zero())
            .fold(RatFun::zero(self.prime()), |acc, (c, nk)| acc + c * nk)
    }

    /// Coefficient list text `[c0, c1, ...]`.
    pub fn to_list_text(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(RatFun::to_text).collect();
        format!("[{}]", parts.join(", "))
    }

    /// Parses the coefficient list text `[c0, c1, ...]`.
    pub fn parse_list(text: &str, der: &Arc<Derivation>, mode: ParseMode) -> Result<Self> {
        let coeffs = parse_list(text, der.prime(), mode)?;
        Ok(Self::from_coeffs(der, coeffs))
    }
}

/// Parses `[c0, c1, ...]` into rational functions.
pub fn parse_list(text: &str, p: Prime, mode: ParseMode) -> Result<Vec<RatFun>> {
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = trimmed
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Parse { pos: offset, msg: "expected '[...]'".into() })?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut start = offset + 1;
    for part in inner.split(',') {
        let c = crate::rfield::parse_ratfun(part, p, mode).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse { pos: start + pos, msg },
            other => other,
        })?;
        out.push(c);
        start += part.len() + 1;
    }
    Ok(out)
}

/// `[N_0(a), ..., N_kmax(a)]` from `N_0 = 1`, `N_(n+1) = N_n a + delta(N_n)`.
pub fn n_values(der: &Derivation, a: &RatFun, kmax: usize) -> Vec<RatFun> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut cur = RatFun::one(der.prime());
    for _ in 0..kmax {
        let next = &cur * a + der.derive(&cur);
        out.push(cur);
        cur = next;
    }
    out.push(cur);
    out
}

/// Greatest common right divisor, monic. Fails when both inputs are zero.
pub fn gcrd(f: &OrePoly, g: &OrePoly) -> Result<OrePoly> {
    f.check_context(g)?;
    if f.is_zero() && g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.right_divmod(&b)?.1;
        a = b;
        b = r;
    }
    Ok(a.monic())
}

/// Least left common multiple, monic, by the extended right Euclidean
/// algorithm: the last Bezout row `u f + v g = 0` gives `u f`.
pub fn llcm(f: &OrePoly, g: &OrePoly) -> Result<OrePoly> {
    f.check_context(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let der = f.derivation().clone();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut u0, mut u1) = (OrePoly::one(&der), OrePoly::zero(&der));
    while !r1.is_zero() {
        let (q, r) = r0.right_divmod(&r1)?;
        let u2 = &u0 - &(&q * &u1);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u2;
    }
    let lcm = (&u1 * f).monic();
    if lcm.is_zero() {
        return Err(Error::Internal("llcm cofactor vanished".into()));
    }
    Ok(lcm)
}

/// Least left common multiple of a list; the empty list gives 1.
pub fn llcm_all<'a, I>(der: &Arc<Derivation>, polys: I) -> Result<OrePoly>
where
    I: IntoIterator<Item = &'a OrePoly>,
{
    let mut acc = OrePoly::one(der);
    for f in polys {
        acc = llcm(&acc, f)?;
    }
    Ok(acc)
}

impl Add for &OrePoly {
    type Output = OrePoly;
    fn add(self, rhs: &OrePoly) -> OrePoly {
        self.add_impl(rhs, false)
    }
}

impl Sub for &OrePoly {
    type Output = OrePoly;
    fn sub(self, rhs: &OrePoly) -> OrePoly {
        self.add_impl(rhs, true)
    }
}

impl Mul for &OrePoly {
    type Output = OrePoly;
    fn mul(self, rhs: &OrePoly) -> OrePoly {
        self.try_mul(rhs).expect("Ore polynomials over different derivations")
    }
}

impl Neg for &OrePoly {
    type Output = OrePoly;
    fn neg(self) -> OrePoly {
        OrePoly::from_coeffs(&self.der, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::fmt::Display for OrePoly {
    /// Human-readable form with descending powers, e.g. `x^2 + (1)/(z)*x`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let ctext = c.to_text();
            let ctext = if c.is_polynomial() && c.num().coeffs().iter().filter(|&&v| v != 0).count() > 1 {
                format!("({ctext})")
            } else {
                ctext
            };
            match k {
                0 => write!(f, "{ctext}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{ctext}*")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_list_text())
    }
}

/// Element of the word algebra `R / R(x^p - gamma x)`, represented by its
/// unique remainder of degree `< p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientElem {
    rep: OrePoly,
}

impl QuotientElem {
    pub fn rep(&self) -> &OrePoly {
        &self.rep
    }

    pub fn into_rep(self) -> OrePoly {
        self.rep
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Ok(self.rep.try_mul(&other.rep)?.reduce_mod_center())
    }

    /// Coordinates in the basis `1, x, ..., x^(p-1)`.
    pub fn coords(&self) -> Vec<RatFun> {
        let p = self.rep.prime();
        (0..p.get() as usize).map(|k| self.rep.coeff(k)).collect()
    }

    pub fn from_coords(der: &Arc<Derivation>, coords: &[RatFun]) -> Result<Self> {
        let p = der.prime().get() as usize;
        if coords.len() != p {
            return Err(Error::LengthMismatch { expected: p, actual: coords.len() });
        }
        if coords.iter().any(|c| c.prime() != der.prime()) {
            return Err(Error::ContextMismatch);
        }
        Ok(QuotientElem { rep: OrePoly::from_coeffs(der, coords.to_vec()) })
    }
}
