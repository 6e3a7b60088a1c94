use super::prime::Prime;

/// Dense polynomial in `F_p[z]`, little-endian coefficients.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial
/// is the empty vector and equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyZ {
    p: Prime,
    coeffs: Vec<u32>,
}

impl PolyZ {
    pub fn zero(p: Prime) -> Self {
        PolyZ { p, coeffs: Vec::new() }
    }

    pub fn one(p: Prime) -> Self {
        PolyZ { p, coeffs: vec![1] }
    }

    pub fn constant(p: Prime, c: u32) -> Self {
        Self::from_coeffs(p, vec![c % p.get()])
    }

    /// `c * z^k`.
    pub fn monomial(p: Prime, c: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c % p.get();
        Self::from_coeffs(p, coeffs)
    }

    /// Builds a polynomial from residues; values are reduced mod `p`.
    pub fn from_coeffs(p: Prime, mut coeffs: Vec<u32>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p.get();
        }
        let mut out = PolyZ { p, coeffs };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| p.add(self.coeff(k), other.coeff(k))).collect();
        Self::from_coeffs(p, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| p.sub(self.coeff(k), other.coeff(k))).collect();
        Self::from_coeffs(p, coeffs)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        PolyZ { p, coeffs: self.coeffs.iter().map(|&c| p.neg(c)).collect() }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p;
        let c = c % p.get();
        if c == 0 {
            return Self::zero(p);
        }
        PolyZ { p, coeffs: self.coeffs.iter().map(|&a| p.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p.get();
        // Products are < 31^2, so accumulating in u64 never overflows.
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] += (a * b) as u64;
            }
        }
        Self::from_coeffs(self.p, acc.into_iter().map(|v| (v % p as u64) as u32).collect())
    }

    /// Euclidean division `self = q * divisor + r`. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Self::zero(p), Self::zero(p));
        };
        if nd < dd {
            return (Self::zero(p), self.clone());
        }
        let lead_inv = p.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = p.mul(rem[k + dd], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = p.sub(rem[k + j], p.mul(c, b));
            }
        }
        rem.truncate(dd);
        (Self::from_coeffs(p, quot), Self::from_coeffs(p, rem))
    }

    /// Exact division; the caller guarantees `divisor | self`.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.p.inv(self.leading()))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Formal derivative with respect to `z`.
    pub fn derivative(&self) -> Self {
        let p = self.p;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| p.mul(c, (k as u32) % p.get())).collect();
        Self::from_coeffs(p, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Canonical text with descending powers, e.g. `3*z^2+z+4`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (k, 1) => format!("z^{k}"),
                (k, c) => format!("{c}*z^{k}"),
            };
            terms.push(term);
        }
        terms.join("+")
    }
}

impl std::fmt::Debug for PolyZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl std::fmt::Display for PolyZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, c: &[u32]) -> PolyZ {
        PolyZ::from_coeffs(Prime::new(p).unwrap(), c.to_vec())
    }

    #[test]
    fn zero_has_no_degree() {
        let z = poly(5, &[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert!(None < Some(0usize));
    }

    #[test]
    fn division_identity() {
        let a = poly(7, &[3, 1, 4, 1, 5, 2]);
        let b = poly(7, &[2, 0, 3]);
        let (q, r) = a.div_rem(&b);
        assert!(r.degree() < b.degree());
        assert_eq!(q.mul(&b).add(&r), a);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        // (z+1)(z+2) and (z+1)(z+3) over F_5
        let f = poly(5, &[1, 1]).mul(&poly(5, &[2, 1]));
        let g = poly(5, &[1, 1]).mul(&poly(5, &[3, 1]));
        assert_eq!(f.gcd(&g), poly(5, &[1, 1]));
        assert_eq!(f.scale(3).gcd(&PolyZ::zero(f.prime())), f);
    }

    #[test]
    fn derivative_kills_p_powers() {
        let f = poly(5, &[1, 0, 0, 0, 0, 3]);
        assert!(f.derivative().is_zero());
        assert_eq!(poly(5, &[0, 0, 2]).derivative(), poly(5, &[0, 4]));
    }

    #[test]
    fn text_form() {
        assert_eq!(poly(11, &[4, 3]).to_text(), "3*z+4");
        assert_eq!(poly(11, &[0, 1, 0, 1]).to_text(), "z^3+z");
        assert_eq!(poly(11, &[]).to_text(), "0");
    }
}
