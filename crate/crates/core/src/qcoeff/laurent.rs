//! Rational functions in `s = q^{1/2}` with integer coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::cyclotomic::{cyclotomic_poly, CyclotomicScalar};
use super::poly::{LaurentPoly, Poly};
use super::QError;

/// `num / den` in lowest terms; `den(0) ≠ 0` and `lead(den) > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentScalar {
    num: LaurentPoly,
    den: Poly,
}

impl Default for LaurentScalar {
    fn default() -> Self {
        LaurentScalar::zero()
    }
}

impl From<LaurentPoly> for LaurentScalar {
    fn from(p: LaurentPoly) -> Self {
        LaurentScalar { num: p, den: Poly::one() }
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        LaurentScalar::from_int(c)
    }
}

impl LaurentScalar {
    pub fn zero() -> Self {
        LaurentPoly::zero().into()
    }

    pub fn one() -> Self {
        LaurentPoly::one().into()
    }

    pub fn from_int(c: i64) -> Self {
        LaurentPoly::constant(c as i128).into()
    }

    /// `q^{k/2}`.
    pub fn s_pow(k: i32) -> Self {
        LaurentPoly::monomial(1, k).into()
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::s_pow(2 * k)
    }

    /// `num / den` brought to canonical form.
    pub fn fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let num = num.mul_s_pow(-den.shift());
        Ok(Self::reduce(num, den.poly().clone()))
    }

    fn reduce(num: LaurentPoly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(num.poly(), &den);
        let (mut n, mut d) = if g.is_one() {
            (num, den)
        } else {
            (
                LaurentPoly::new(num.shift(), num.poly().div_exact(&g).expect("gcd divides")),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        if d.lead() < 0 {
            n = n.neg();
            d = d.neg();
        }
        LaurentScalar { num: n, den: d }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return n.into();
            }
            return Self::reduce(n, self.den.clone());
        }
        let n = self
            .num
            .mul(&LaurentPoly::new(0, o.den.clone()))
            .add(&o.num.mul(&LaurentPoly::new(0, self.den.clone())));
        Self::reduce(n, self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        LaurentScalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return self.num.mul(&o.num).into();
        }
        Self::reduce(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: i128) -> Self {
        if c == 0 {
            return Self::zero();
        }
        if self.den.is_one() {
            return self.num.scale(c).into();
        }
        Self::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn mul_s_pow(&self, k: i32) -> Self {
        LaurentScalar { num: self.num.mul_s_pow(k), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        Self::fraction(LaurentPoly::new(0, self.den.clone()), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, QError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<Self, QError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Value at `q^{1/2} = ṽ`, a primitive `ℓ`-th root of unity.
    pub fn specialize(&self, ell: u32) -> Result<CyclotomicScalar, QError> {
        check_modulus(ell)?;
        if self.den.is_one() {
            return Ok(CyclotomicScalar::eval_laurent(ell, &self.num));
        }
        specialize_fraction(&self.num, &LaurentPoly::new(0, self.den.clone()), ell)
    }

    /// Value at `q^{1/2} = 1`.
    pub fn at_one(&self) -> Result<BigRational, QError> {
        at_one_fraction(&self.num, &LaurentPoly::new(0, self.den.clone()))
    }
}

pub(crate) fn check_modulus(ell: u32) -> Result<(), QError> {
    if ell.is_multiple_of(2) || ell == 0 {
        Err(QError::EvenModulus(ell))
    } else {
        Ok(())
    }
}

fn int_eval_at_one(p: &Poly) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |a, c| a + BigInt::from(*c))
}

fn s_minus_one() -> Poly {
    Poly::from_coeffs(vec![-1, 1])
}

/// `num / den` at `s = ṽ`, cancelling common factors of Φ_ℓ first.
pub fn specialize_fraction(
    num: &LaurentPoly,
    den: &LaurentPoly,
    ell: u32,
) -> Result<CyclotomicScalar, QError> {
    check_modulus(ell)?;
    if den.is_zero() {
        return Err(QError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(CyclotomicScalar::zero(ell));
    }
    let phi = cyclotomic_poly(ell);
    let (a, n1) = num.poly().strip_factor(&phi);
    let (b, d1) = den.poly().strip_factor(&phi);
    if b > a {
        return Err(QError::Pole);
    }
    if a > b {
        return Ok(CyclotomicScalar::zero(ell));
    }
    let n = CyclotomicScalar::eval_laurent(ell, &LaurentPoly::new(num.shift(), n1));
    let d = CyclotomicScalar::eval_laurent(ell, &LaurentPoly::new(den.shift(), d1));
    n.div(&d)
}

/// `num / den` at `s = 1`.
pub fn at_one_fraction(num: &LaurentPoly, den: &LaurentPoly) -> Result<BigRational, QError> {
    if den.is_zero() {
        return Err(QError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(BigRational::zero());
    }
    let m = s_minus_one();
    let (a, n1) = num.poly().strip_factor(&m);
    let (b, d1) = den.poly().strip_factor(&m);
    if b > a {
        return Err(QError::Pole);
    }
    if a > b {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(int_eval_at_one(&n1), int_eval_at_one(&d1)))
}

/// Value at `ṽ` of `(num/den) / (s − ṽ)`; requires `num/den` to vanish at `ṽ`.
pub fn vanishing_quotient_at_root(
    num: &LaurentPoly,
    den: &LaurentPoly,
    ell: u32,
) -> Result<CyclotomicScalar, QError> {
    check_modulus(ell)?;
    if den.is_zero() {
        return Err(QError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(CyclotomicScalar::zero(ell));
    }
    let phi = cyclotomic_poly(ell);
    let (a, n1) = num.poly().strip_factor(&phi);
    let (b, d1) = den.poly().strip_factor(&phi);
    if a < b + 1 {
        return Err(QError::Pole);
    }
    if a > b + 1 {
        return Ok(CyclotomicScalar::zero(ell));
    }
    let dphi = CyclotomicScalar::from_int_poly(ell, &phi.derivative());
    let n = CyclotomicScalar::eval_laurent(ell, &LaurentPoly::new(num.shift(), n1));
    let d = CyclotomicScalar::eval_laurent(ell, &LaurentPoly::new(den.shift(), d1));
    Ok(dphi.mul(&n.div(&d)?))
}

/// Value at `s = 1` of `(num/den) / (s − 1)`.
pub fn vanishing_quotient_at_one(
    num: &LaurentPoly,
    den: &LaurentPoly,
) -> Result<BigRational, QError> {
    if den.is_zero() {
        return Err(QError::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(BigRational::zero());
    }
    let m = s_minus_one();
    let (a, n1) = num.poly().strip_factor(&m);
    let (b, d1) = den.poly().strip_factor(&m);
    if a < b + 1 {
        return Err(QError::Pole);
    }
    if a > b + 1 {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::new(int_eval_at_one(&n1), int_eval_at_one(&d1)))
}

fn fmt_laurent(p: &LaurentPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let terms: Vec<(i32, i128)> = p.terms().collect();
    for (idx, (e, c)) in terms.iter().rev().enumerate() {
        let a = c.abs();
        if idx == 0 {
            if *c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
        }
        match (*e, a) {
            (0, _) => write!(f, "{a}")?,
            (_, 1) => write!(f, "q^({e}/2)")?,
            _ => write!(f, "{a}*q^({e}/2)")?,
        }
    }
    Ok(())
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return fmt_laurent(&self.num, f);
        }
        write!(f, "(")?;
        fmt_laurent(&self.num, f)?;
        write!(f, ")/(")?;
        fmt_laurent(&LaurentPoly::new(0, self.den.clone()), f)?;
        write!(f, ")")
    }
}

fn parse_laurent(src: &str) -> Result<LaurentPoly, QError> {
    let err = || QError::Parse(src.to_string());
    let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err());
    }
    let mut terms = Vec::new();
    let bytes = compact.as_bytes();
    let mut start = 0;
    let mut depth = 0;
    let mut pieces = Vec::new();
    for (k, b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 && k > start => {
                pieces.push(&compact[start..k]);
                start = k;
            }
            _ => {}
        }
    }
    pieces.push(&compact[start..]);
    for piece in pieces {
        let (sign, body) = match piece.as_bytes()[0] {
            b'-' => (-1i128, &piece[1..]),
            b'+' => (1, &piece[1..]),
            _ => (1, piece),
        };
        let (coeff, exp) = match body.find("q^(") {
            None => (body.parse::<i128>().map_err(|_| err())?, 0),
            Some(pos) => {
                let c = match body[..pos].trim_end_matches('*') {
                    "" => 1,
                    t => t.parse::<i128>().map_err(|_| err())?,
                };
                let inner = body[pos + 3..].strip_suffix(')').ok_or_else(err)?;
                let e = inner.strip_suffix("/2").ok_or_else(err)?;
                (c, e.parse::<i32>().map_err(|_| err())?)
            }
        };
        terms.push((exp, sign * coeff));
    }
    Ok(LaurentPoly::from_terms(terms))
}

impl FromStr for LaurentScalar {
    type Err = QError;
    fn from_str(src: &str) -> Result<Self, QError> {
        let t = src.trim();
        if let Some(rest) = t.strip_prefix('(') {
            if let Some(split) = rest.find(")/(") {
                let num = parse_laurent(&rest[..split])?;
                let den = rest[split + 3..]
                    .strip_suffix(')')
                    .ok_or_else(|| QError::Parse(src.to_string()))?;
                return Self::fraction(num, parse_laurent(den)?);
            }
        }
        Ok(parse_laurent(t)?.into())
    }
}

impl serde::Serialize for LaurentScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for LaurentScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> LaurentScalar {
        LaurentScalar::q_pow(1)
    }

    #[test]
    fn canonical_fraction() {
        // (q - q^{-1}) / (s - s^{-1}) = s + s^{-1}
        let a = q().sub(&LaurentScalar::q_pow(-1));
        let b = LaurentScalar::s_pow(1).sub(&LaurentScalar::s_pow(-1));
        let c = a.div(&b).unwrap();
        assert_eq!(c, LaurentScalar::s_pow(1).add(&LaurentScalar::s_pow(-1)));
        assert!(c.as_laurent().is_some());
    }

    #[test]
    fn content_is_cancelled() {
        let a = LaurentScalar::from_int(6).div(&LaurentScalar::from_int(-4)).unwrap();
        assert_eq!(a.to_string(), "(-3)/(2)");
        assert_eq!(a.denominator().coeffs(), &[2]);
    }

    #[test]
    fn display_round_trip() {
        let a = q().add(&LaurentScalar::from_int(3)).sub(&LaurentScalar::s_pow(-3).scale(2));
        assert_eq!(a.to_string(), "q^(2/2) + 3 - 2*q^(-3/2)");
        assert_eq!(a.to_string().parse::<LaurentScalar>().unwrap(), a);
        let b = a.div(&q().add(&LaurentScalar::one())).unwrap();
        assert_eq!(b.to_string().parse::<LaurentScalar>().unwrap(), b);
    }

    #[test]
    fn specialize_q_is_v() {
        let v = q().specialize(3).unwrap();
        assert_eq!(v, CyclotomicScalar::root_pow(3, 2));
    }

    #[test]
    fn pole_at_root() {
        let x = LaurentScalar::one().div(&LaurentScalar::q_pow(3).sub(&LaurentScalar::one())).unwrap();
        assert_eq!(x.specialize(3), Err(QError::Pole));
        assert!(LaurentScalar::one().specialize(4).is_err());
    }

    #[test]
    fn removable_common_factor() {
        let phi = LaurentPoly::new(0, (*cyclotomic_poly(3)).clone());
        let num = phi.mul(&LaurentPoly::monomial(5, 1));
        let v = specialize_fraction(&num, &phi, 3).unwrap();
        assert_eq!(v, CyclotomicScalar::root_pow(3, 1).scale(&BigRational::from_integer(5.into())));
    }

    #[test]
    fn quotient_at_one() {
        // (q - q^{-1}) / (s - 1) at s = 1 is 4
        let f = LaurentPoly::from_terms([(2, 1), (-2, -1)]);
        let v = vanishing_quotient_at_one(&f, &LaurentPoly::one()).unwrap();
        assert_eq!(v, BigRational::from_integer(4.into()));
        assert_eq!(vanishing_quotient_at_one(&LaurentPoly::one(), &LaurentPoly::one()), Err(QError::Pole));
    }
}
