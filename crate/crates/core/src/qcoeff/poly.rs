//! Dense integer polynomials in `s = q^{1/2}` and their Laurent shifts.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[inline]
pub(crate) fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer coefficient overflow")
}

#[inline]
pub(crate) fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer coefficient overflow")
}

pub(crate) fn igcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Integer polynomial, lowest degree first, never with trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<i128>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    pub fn constant(c: i128) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: i128, k: usize) -> Self {
        if c == 0 {
            return Poly::zero();
        }
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly(v)
    }

    pub fn from_coeffs(mut v: Vec<i128>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> i128 {
        self.0.last().copied().unwrap_or(0)
    }

    /// Number of vanishing low-order coefficients.
    pub fn low_order(&self) -> usize {
        self.0.iter().take_while(|c| **c == 0).count()
    }

    pub fn drop_low(&self, k: usize) -> Poly {
        Poly(self.0[k.min(self.0.len())..].to_vec())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.0.len().max(o.0.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k).copied().unwrap_or(0);
            let b = o.0.get(k).copied().unwrap_or(0);
            v.push(cadd(a, b));
        }
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0i128; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] = cadd(v[i + j], cmul(*a, *b));
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn scale(&self, c: i128) -> Poly {
        if c == 0 {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|a| cmul(*a, c)).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn content(&self) -> i128 {
        self.0.iter().fold(0, |g, c| igcd(g, *c))
    }

    pub fn div_scalar(&self, c: i128) -> Poly {
        Poly(self.0.iter().map(|a| a / c).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| cmul(*c, k as i128))
                .collect(),
        )
    }

    /// Quotient and remainder by a monic divisor.
    pub fn divrem_monic(&self, m: &Poly) -> (Poly, Poly) {
        assert_eq!(m.lead(), 1, "divisor must be monic");
        let dm = m.0.len() - 1;
        if self.0.len() <= dm {
            return (Poly::zero(), self.clone());
        }
        let mut r = self.0.clone();
        let mut q = vec![0i128; r.len() - dm];
        for k in (dm..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            q[k - dm] = c;
            for (j, mc) in m.0.iter().enumerate() {
                let idx = k - dm + j;
                r[idx] = cadd(r[idx], -cmul(c, *mc));
            }
        }
        r.truncate(dm);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Exact quotient over ℤ, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let dd = d.0.len() - 1;
        if self.0.len() <= dd {
            return None;
        }
        let lc = d.lead();
        let mut r = self.0.clone();
        let mut q = vec![0i128; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            if c % lc != 0 {
                return None;
            }
            let t = c / lc;
            q[k - dd] = t;
            for (j, dc) in d.0.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = cadd(r[idx], -cmul(t, *dc));
            }
        }
        if r[..dd].iter().any(|c| *c != 0) {
            return None;
        }
        Some(Poly::from_coeffs(q))
    }

    /// Largest `k` with `m^k | self`, together with the cofactor; `m` monic and non-constant.
    pub fn strip_factor(&self, m: &Poly) -> (u32, Poly) {
        let mut k = 0;
        let mut cur = self.clone();
        if cur.is_zero() {
            return (u32::MAX, cur);
        }
        loop {
            let (q, r) = cur.divrem_monic(m);
            if !r.is_zero() {
                return (k, cur);
            }
            cur = q;
            k += 1;
        }
    }

    /// Greatest common divisor over ℤ[s], with positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        let ca = a.content();
        let cb = b.content();
        let c = igcd(ca, cb);
        if a.0.len() == 1 || b.0.len() == 1 {
            return Poly::constant(c);
        }
        let mut x = big_primitive(&to_big(&a.div_scalar(ca)));
        let mut y = big_primitive(&to_big(&b.div_scalar(cb)));
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = big_prem(&x, &y);
            x = y;
            y = big_primitive(&r);
        }
        let mut g = from_big(&x);
        if g.lead() < 0 {
            g = g.neg();
        }
        g.scale(c)
    }

    fn normalize_sign(&self) -> Poly {
        if self.lead() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

fn to_big(p: &Poly) -> Vec<BigInt> {
    p.0.iter().map(|c| BigInt::from(*c)).collect()
}

fn from_big(v: &[BigInt]) -> Poly {
    Poly::from_coeffs(
        v.iter()
            .map(|c| c.to_i128().expect("gcd coefficient exceeds i128"))
            .collect(),
    )
}

fn big_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn big_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let v = big_trim(v.to_vec());
    if v.is_empty() {
        return v;
    }
    let mut g = BigInt::zero();
    for c in &v {
        g = g.gcd(c);
    }
    let mut out: Vec<BigInt> = v.iter().map(|c| c / &g).collect();
    if out.last().unwrap().is_negative() {
        out.iter_mut().for_each(|c| *c = -c.clone());
    }
    out
}

fn big_prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = r[k].clone();
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (j, bc) in b.iter().enumerate() {
            r[k - db + j] -= &c * bc;
        }
        r = big_trim(r);
        if r.len() <= db {
            break;
        }
    }
    r
}

/// `s^shift · poly(s)` with `poly(0) ≠ 0` unless the value is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    shift: i32,
    poly: Poly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { shift: 0, poly: Poly::zero() }
    }

    pub fn one() -> Self {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: i128) -> Self {
        LaurentPoly::new(0, Poly::constant(c))
    }

    /// `c · s^k`.
    pub fn monomial(c: i128, k: i32) -> Self {
        LaurentPoly::new(k, Poly::constant(c))
    }

    pub fn new(shift: i32, poly: Poly) -> Self {
        if poly.is_zero() {
            return LaurentPoly::zero();
        }
        let lo = poly.low_order();
        LaurentPoly { shift: shift + lo as i32, poly: if lo > 0 { poly.drop_low(lo) } else { poly } }
    }

    /// From `(exponent of s, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i32, i128)>>(terms: I) -> Self {
        let terms: Vec<(i32, i128)> = terms.into_iter().collect();
        if terms.is_empty() {
            return LaurentPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut v = vec![0i128; (hi - lo + 1) as usize];
        for (e, c) in terms {
            v[(e - lo) as usize] = cadd(v[(e - lo) as usize], c);
        }
        LaurentPoly::new(lo, Poly::from_coeffs(v))
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.poly.is_one()
    }

    /// Nonzero terms as `(exponent of s, coefficient)`, increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i128)> + '_ {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(k, c)| (self.shift + k as i32, *c))
    }

    pub fn as_constant(&self) -> Option<i128> {
        if self.is_zero() {
            Some(0)
        } else if self.shift == 0 && self.poly.coeffs().len() == 1 {
            Some(self.poly.coeffs()[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(o.shift);
        let a = Poly::from_coeffs(pad_front(self.poly.coeffs(), (self.shift - lo) as usize));
        let b = Poly::from_coeffs(pad_front(o.poly.coeffs(), (o.shift - lo) as usize));
        LaurentPoly::new(lo, a.add(&b))
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { shift: self.shift, poly: self.poly.neg() }
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { shift: self.shift + o.shift, poly: self.poly.mul(&o.poly) }
    }

    pub fn scale(&self, c: i128) -> LaurentPoly {
        if c == 0 {
            return LaurentPoly::zero();
        }
        LaurentPoly { shift: self.shift, poly: self.poly.scale(c) }
    }

    pub fn mul_s_pow(&self, k: i32) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { shift: self.shift + k, poly: self.poly.clone() }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative in `s`.
    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms()
                .filter(|(e, _)| *e != 0)
                .map(|(e, c)| (e - 1, cmul(c, e as i128))),
        )
    }

    /// Substitute `s ↦ s^{-1}`.
    pub fn bar(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().map(|(e, c)| (-e, c)))
    }

    pub fn cmp_terms(&self, o: &LaurentPoly) -> Ordering {
        (self.shift, self.poly.coeffs()).cmp(&(o.shift, o.poly.coeffs()))
    }
}

fn pad_front(c: &[i128], k: usize) -> Vec<i128> {
    let mut v = vec![0i128; k];
    v.extend_from_slice(c);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i128]) -> Poly {
        Poly::from_coeffs(v.to_vec())
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 0, 1]);
        let c = p(&[2, 0, 3]);
        let g = Poly::gcd(&a.mul(&c), &b.mul(&c));
        assert_eq!(g, a.mul(&c));
    }

    #[test]
    fn gcd_content() {
        assert_eq!(Poly::gcd(&p(&[4, 6]), &p(&[6, 9])), p(&[2, 3]));
        assert_eq!(Poly::gcd(&p(&[4]), &p(&[6, 9])), p(&[1]));
        assert_eq!(Poly::gcd(&p(&[2, 2]), &p(&[4])), p(&[2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 2, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[2, 4]).div_exact(&p(&[2])), Some(p(&[1, 2])));
    }

    #[test]
    fn strip_monic_factor() {
        let phi = p(&[1, 1, 1]);
        let f = phi.mul(&phi).mul(&p(&[3, 1]));
        let (k, rest) = f.strip_factor(&phi);
        assert_eq!(k, 2);
        assert_eq!(rest, p(&[3, 1]));
    }

    #[test]
    fn laurent_normalizes_shift() {
        let a = LaurentPoly::new(-3, p(&[0, 0, 5]));
        assert_eq!(a.shift(), -1);
        assert_eq!(a, LaurentPoly::monomial(5, -1));
        let b = LaurentPoly::from_terms([(2, 1), (-2, -1)]);
        assert_eq!(b.mul(&b.bar()).terms().collect::<Vec<_>>(), vec![(-4, -1), (0, 2), (4, -1)]);
    }

    #[test]
    fn derivative_of_laurent() {
        let a = LaurentPoly::from_terms([(-1, 2), (3, 1)]);
        assert_eq!(a.derivative(), LaurentPoly::from_terms([(-2, -2), (2, 3)]));
    }
}
