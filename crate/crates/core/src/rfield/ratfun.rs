use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::PolyZ;
use super::prime::Prime;
use crate::error::{Error, Result};

/// Element of `F_p(z)` kept as a reduced fraction.
///
/// The denominator is monic and coprime to the numerator, and zero is
/// stored as `0/1`, so derived `PartialEq` is field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: PolyZ,
    den: PolyZ,
}

impl RatFun {
    pub fn zero(p: Prime) -> Self {
        RatFun { num: PolyZ::zero(p), den: PolyZ::one(p) }
    }

    pub fn one(p: Prime) -> Self {
        RatFun { num: PolyZ::one(p), den: PolyZ::one(p) }
    }

    /// The element `c` of `F_p`; `c` is reduced mod `p`.
    pub fn constant(p: Prime, c: u32) -> Self {
        Self::from_poly(PolyZ::constant(p, c))
    }

    /// Signed integer embedded through `Z -> F_p`.
    pub fn from_int(p: Prime, c: i64) -> Self {
        Self::constant(p, p.reduce_signed(c))
    }

    /// The element `z`.
    pub fn z(p: Prime) -> Self {
        Self::from_poly(PolyZ::monomial(p, 1, 1))
    }

    /// `c * z^k` for signed `k`.
    pub fn monomial(p: Prime, c: u32, k: i32) -> Self {
        if k >= 0 {
            Self::from_poly(PolyZ::monomial(p, c, k as usize))
        } else {
            Self::from_parts(PolyZ::constant(p, c), PolyZ::monomial(p, 1, (-k) as usize))
                .expect("monomial denominator is nonzero")
        }
    }

    pub fn from_poly(num: PolyZ) -> Self {
        let p = num.prime();
        RatFun { num, den: PolyZ::one(p) }
    }

    /// Canonical form of `num / den`: cancels the gcd and makes the
    /// denominator monic.
    pub fn from_parts(num: PolyZ, den: PolyZ) -> Result<Self> {
        if num.prime() != den.prime() {
            return Err(Error::ContextMismatch);
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: PolyZ, den: PolyZ) -> Self {
        let p = num.prime();
        if num.is_zero() {
            return Self::zero(p);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        Self::with_monic_den(num, den)
    }

    fn with_monic_den(num: PolyZ, den: PolyZ) -> Self {
        let lead = den.leading();
        if lead == 1 {
            return RatFun { num, den };
        }
        let inv = num.prime().inv(lead);
        RatFun { num: num.scale(inv), den: den.scale(inv) }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.num.prime()
    }

    #[inline]
    pub fn num(&self) -> &PolyZ {
        &self.num
    }

    #[inline]
    pub fn den(&self) -> &PolyZ {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when the element lies in `F_p`.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().unwrap_or(0) == 0
    }

    /// Sum of numerator and denominator degrees, a rough size measure.
    pub fn height(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_monic_den(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFun { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = c % self.prime().get();
        if c == 0 {
            return Self::zero(self.prime());
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Formal `d/dz` by the quotient rule, renormalized.
    pub fn formal_derivative(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derivative());
        }
        let top = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::normalize(top, self.den.mul(&self.den))
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        assert_eq!(self.prime(), rhs.prime(), "field mismatch");
        let rnum = if negate { rhs.num.neg() } else { rhs.num.clone() };
        if self.den == rhs.den {
            return Self::normalize(self.num.add(&rnum), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let b = self.den.div_exact(&g);
        let d = rhs.den.div_exact(&g);
        let num = self.num.mul(&d).add(&rnum.mul(&b));
        Self::normalize(num, b.mul(&rhs.den))
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        assert_eq!(self.prime(), rhs.prime(), "field mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.prime());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = self.num.div_exact(&g1).mul(&rhs.num.div_exact(&g2));
        let den = self.den.div_exact(&g2).mul(&rhs.den.div_exact(&g1));
        Self::with_monic_den(num, den)
    }

    /// Canonical text: `num` when the denominator is 1, `a/b` when both
    /// parts are single terms, else `(num)/(den)`.
    pub fn to_text(&self) -> String {
        let single = |f: &PolyZ| f.coeffs().iter().filter(|&&c| c != 0).count() <= 1;
        if self.den.is_one() {
            self.num.to_text()
        } else if single(&self.num) && single(&self.den) {
            format!("{}/{}", self.num, self.den)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }

    /// Lenient parse: coefficients are reduced mod `p`.
    pub fn parse(text: &str, p: Prime) -> Result<Self> {
        parse_ratfun(text, p, ParseMode::Lenient)
    }
}

impl std::fmt::Debug for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                let f: fn(&RatFun, &RatFun) -> RatFun = $body;
                f(self, rhs)
            }
        }
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $method(self, rhs: &RatFun) -> RatFun {
                (&self).$method(rhs)
            }
        }
        impl $tr<RatFun> for &RatFun {
            type Output = RatFun;
            fn $method(self, rhs: RatFun) -> RatFun {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
// Like integer division, `/` panics on a zero divisor; use `checked_div`
// when the divisor is not known to be nonzero.
forward_binop!(Div, div, |a, b| a.checked_div(b).expect("rational function division by zero"));

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

/// How the parser treats integer coefficients outside `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// Reject coefficients `>= p`.
    Strict,
    /// Reduce coefficients mod `p`.
    #[default]
    Lenient,
}

/// Parses the rational-function grammar
///
/// ```text
/// ratfun := poly | poly "/" poly | "(" poly ")" "/" "(" poly ")"
/// poly   := term (("+" | "-") term)*
/// term   := coeff | coeff "*" "z" ["^" int] | "z" ["^" int]
/// ```
///
/// Whitespace is ignored. A parenthesized polynomial without a
/// denominator and a leading minus sign are also accepted.
pub fn parse_ratfun(text: &str, p: Prime, mode: ParseMode) -> Result<RatFun> {
    let mut parser = Parser { bytes: text.as_bytes(), pos: 0, p, mode };
    let num = parser.operand()?;
    parser.skip_ws();
    let den = if parser.eat(b'/') {
        let den_pos = parser.pos;
        let den = parser.operand()?;
        if den.is_zero() {
            return Err(Error::Parse { pos: den_pos, msg: "zero denominator".into() });
        }
        den
    } else {
        PolyZ::one(p)
    };
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    RatFun::from_parts(num, den)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    p: Prime,
    mode: ParseMode,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn operand(&mut self) -> Result<PolyZ> {
        if self.eat(b'(') {
            let poly = self.poly()?;
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            Ok(poly)
        } else {
            self.poly()
        }
    }

    fn poly(&mut self) -> Result<PolyZ> {
        let negate_first = self.eat(b'-');
        let mut acc = self.term()?;
        if negate_first {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolyZ> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                let value = self.integer()?;
                if self.mode == ParseMode::Strict && value >= self.p.get() as u64 {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("coefficient {value} is not in [0, {})", self.p),
                    });
                }
                let c = self.p.reduce(value);
                if !self.eat(b'*') {
                    return Ok(PolyZ::constant(self.p, c));
                }
                c
            }
            Some(b'z') => 1,
            _ => return Err(self.error("expected a coefficient or 'z'")),
        };
        if !self.eat(b'z') {
            return Err(self.error("expected 'z'"));
        }
        let exp = if self.eat(b'^') { self.integer()? } else { 1 };
        if exp > 100_000 {
            return Err(self.error("exponent too large"));
        }
        Ok(PolyZ::monomial(self.p, coeff, exp as usize))
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .parse::<u64>()
            .map_err(|_| Error::Parse { pos: start, msg: "integer too large".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn poly(p: u32, c: &[u32]) -> PolyZ {
        PolyZ::from_coeffs(pr(p), c.to_vec())
    }

    fn rf(text: &str, p: u32) -> RatFun {
        RatFun::parse(text, pr(p)).unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = RatFun::from_parts(poly(11, &[2, 2]), poly(11, &[1, 1])).unwrap();
        assert_eq!(f, RatFun::constant(pr(11), 2));
        assert!(f.is_polynomial());
    }

    #[test]
    fn normalize_zero_numerator() {
        let f = RatFun::from_parts(PolyZ::zero(pr(7)), poly(7, &[0, 0, 0, 1])).unwrap();
        assert_eq!(f, RatFun::zero(pr(7)));
        assert_eq!(f.den(), &PolyZ::one(pr(7)));
    }

    #[test]
    fn normalize_rejects_vanishing_denominator() {
        // 5z + 5 is the zero polynomial over F_5.
        let err = RatFun::from_parts(poly(5, &[4, 3]), poly(5, &[5, 5])).unwrap_err();
        assert_eq!(err, Error::ZeroDenominator);
    }

    #[test]
    fn normalize_makes_denominator_monic() {
        // (3z+4)/(2z+2) over F_5 = (3z+4)*3/(z+1) = (4z+2)/(z+1)
        let f = RatFun::from_parts(poly(5, &[4, 3]), poly(5, &[2, 2])).unwrap();
        assert_eq!(f.num(), &poly(5, &[2, 4]));
        assert_eq!(f.den(), &poly(5, &[1, 1]));
    }

    #[test]
    fn field_arithmetic_examples() {
        let p = pr(11);
        assert_eq!(rf("1/z", 11) * RatFun::z(p), RatFun::one(p));
        assert!((rf("3/z", 11) + rf("8/z", 11)).is_zero());
        assert_eq!(rf("(z+4)/(z+1)", 5).inv().unwrap(), rf("(z+1)/(z+4)", 5));
        assert_eq!(RatFun::zero(p).inv(), Err(Error::DivisionByZero));
        assert_eq!(rf("z", 11).checked_div(&RatFun::zero(p)), Err(Error::DivisionByZero));
        assert_eq!(rf("1/z", 11).pow(-3).unwrap(), rf("z^3", 11));
    }

    #[test]
    fn parse_examples() {
        let f = rf("(3*z+4)/(z+1)", 5);
        assert_eq!(f.num(), &poly(5, &[4, 3]));
        assert_eq!(f.den(), &poly(5, &[1, 1]));
        assert_eq!(rf("0", 5), RatFun::zero(pr(5)));
        let g = rf("10/z^10", 11);
        assert_eq!(g.num(), &poly(11, &[10]));
        assert_eq!(g.den(), &PolyZ::monomial(pr(11), 1, 10));
        assert_eq!(rf(" ( z ^ 2 - 1 ) / ( z - 1 ) ", 7), rf("z+1", 7));
        assert_eq!(rf("-z", 7), rf("6*z", 7));
    }

    #[test]
    fn parse_strict_and_lenient() {
        let p = pr(5);
        assert_eq!(parse_ratfun("7*z", p, ParseMode::Lenient).unwrap(), rf("2*z", 5));
        let err = parse_ratfun("7*z", p, ParseMode::Strict).unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 0, .. }), "{err:?}");
        assert!(parse_ratfun("4*z+1", p, ParseMode::Strict).is_ok());
    }

    #[test]
    fn parse_errors_carry_position() {
        let p = pr(5);
        assert!(matches!(RatFun::parse("z+", p), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(RatFun::parse("(z+1", p), Err(Error::Parse { .. })));
        assert!(matches!(RatFun::parse("1/0", p), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(RatFun::parse("z z", p), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(RatFun::parse("", p), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(rf("(3*z+4)/(z+1)", 5).to_text(), "(3*z+4)/(z+1)");
        assert_eq!(rf("z^4", 11).to_text(), "z^4");
        assert_eq!(rf("10/z^10", 11).to_text(), "10/z^10");
        assert_eq!(RatFun::zero(pr(3)).to_text(), "0");
    }
}
