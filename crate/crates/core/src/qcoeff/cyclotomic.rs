//! The cyclotomic field ℚ[x]/Φ_ℓ(x) with distinguished root `x`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{LaurentPoly, Poly};
use super::QError;

fn table() -> &'static RwLock<HashMap<u32, Arc<Poly>>> {
    static T: OnceLock<RwLock<HashMap<u32, Arc<Poly>>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Φ_n as an integer polynomial.
pub fn cyclotomic_poly(n: u32) -> Arc<Poly> {
    assert!(n >= 1);
    if let Some(p) = table().read().unwrap().get(&n) {
        return p.clone();
    }
    let mut num = vec![0i128; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    let mut p = Poly::from_coeffs(num);
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.divrem_monic(&cyclotomic_poly(d)).0;
        }
    }
    let p = Arc::new(p);
    table().write().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u32) -> usize {
    cyclotomic_poly(n).degree().unwrap()
}

/// An element of ℚ(ζ_ℓ) stored as its residue of degree < φ(ℓ).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclotomicScalar {
    ell: u32,
    coeffs: Vec<BigRational>,
}

impl CyclotomicScalar {
    pub fn zero(ell: u32) -> Self {
        CyclotomicScalar { ell, coeffs: vec![BigRational::zero(); euler_phi(ell)] }
    }

    pub fn one(ell: u32) -> Self {
        Self::from_rational(ell, BigRational::one())
    }

    pub fn from_int(ell: u32, c: i64) -> Self {
        Self::from_rational(ell, BigRational::from_integer(c.into()))
    }

    pub fn from_ratio(ell: u32, n: i64, d: i64) -> Self {
        Self::from_rational(ell, BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(ell: u32, c: BigRational) -> Self {
        let mut z = Self::zero(ell);
        z.coeffs[0] = c;
        z
    }

    /// `ṽ^k`, the `k`-th power of the distinguished primitive root.
    pub fn root_pow(ell: u32, k: i64) -> Self {
        let e = k.rem_euclid(ell as i64) as usize;
        let mut v = vec![0i128; e + 1];
        v[e] = 1;
        Self::from_int_poly(ell, &Poly::from_coeffs(v))
    }

    /// Residue class of a rational-coefficient polynomial.
    pub fn from_residue(ell: u32, coeffs: Vec<BigRational>) -> Self {
        reduce(ell, coeffs)
    }

    pub(crate) fn from_int_poly(ell: u32, p: &Poly) -> Self {
        let phi = cyclotomic_poly(ell);
        let r = p.divrem_monic(&phi).1;
        let mut coeffs = vec![BigRational::zero(); euler_phi(ell)];
        for (k, c) in r.coeffs().iter().enumerate() {
            coeffs[k] = BigRational::from_integer(BigInt::from(*c));
        }
        CyclotomicScalar { ell, coeffs }
    }

    /// Value of a Laurent polynomial in `s` at `s = ṽ`.
    pub fn eval_laurent(ell: u32, p: &LaurentPoly) -> Self {
        let mut folded = vec![0i128; ell as usize];
        for (e, c) in p.terms() {
            let k = (e as i64).rem_euclid(ell as i64) as usize;
            folded[k] = super::poly::cadd(folded[k], c);
        }
        Self::from_int_poly(ell, &Poly::from_coeffs(folded))
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value when the residue is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.ell, o.ell, "mixing cyclotomic fields of different level");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        CyclotomicScalar {
            ell: self.ell,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicScalar { ell: self.ell, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        reduce(self.ell, prod)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CyclotomicScalar { ell: self.ell, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.ell);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, QError> {
        if self.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.ell)
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(BigInt::from(*c)))
            .collect();
        // extended Euclid: track t with t·self ≡ r (mod Φ)
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut t0, mut t1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = rat_divrem(&r0, &r1);
            let t2 = rat_sub(&t0, &rat_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        assert_eq!(r0.len(), 1, "Φ_ℓ is irreducible");
        let c = r0[0].clone();
        let t: Vec<BigRational> = t0.iter().map(|x| x / &c).collect();
        Ok(reduce(self.ell, t))
    }

    pub fn div(&self, o: &Self) -> Result<Self, QError> {
        Ok(self.mul(&o.inv()?))
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
    v
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim(v)
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (db..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = &r[k] / &b[db];
        for (j, bc) in b.iter().enumerate() {
            let t = &c * bc;
            r[k - db + j] -= t;
        }
        q[k - db] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn reduce(ell: u32, mut v: Vec<BigRational>) -> CyclotomicScalar {
    let phi = cyclotomic_poly(ell);
    let d = phi.degree().unwrap();
    let pc = phi.coeffs();
    for k in (d..v.len()).rev() {
        if v[k].is_zero() {
            continue;
        }
        let c = v[k].clone();
        for j in 0..=d {
            if pc[j] != 0 {
                let t = &c * BigRational::from_integer(BigInt::from(pc[j]));
                v[k - d + j] -= t;
            }
        }
    }
    v.resize(d, BigRational::zero());
    CyclotomicScalar { ell, coeffs: v }
}

impl fmt::Display for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{a}*z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{a}*z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Wire form: modulus plus residue coefficients as rational strings.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicWire {
    pub ell: u32,
    pub coeffs: Vec<String>,
}

impl From<&CyclotomicScalar> for CyclotomicWire {
    fn from(c: &CyclotomicScalar) -> Self {
        CyclotomicWire { ell: c.ell, coeffs: c.coeffs.iter().map(|x| x.to_string()).collect() }
    }
}

impl TryFrom<CyclotomicWire> for CyclotomicScalar {
    type Error = QError;
    fn try_from(w: CyclotomicWire) -> Result<Self, QError> {
        if w.ell.is_multiple_of(2) {
            return Err(QError::EvenModulus(w.ell));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(|_| QError::Parse(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(reduce(w.ell, coeffs))
    }
}

impl Serialize for CyclotomicScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CyclotomicWire::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = CyclotomicWire::deserialize(d)?;
        CyclotomicScalar::try_from(w).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(3).coeffs(), &[1, 1, 1]);
        assert_eq!(cyclotomic_poly(9).coeffs(), &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(15).degree(), Some(8));
        assert_eq!(euler_phi(7), 6);
    }

    #[test]
    fn root_has_exact_order() {
        for ell in [3u32, 5, 7, 9, 15] {
            let z = CyclotomicScalar::root_pow(ell, 1);
            assert!(z.pow(ell).is_one());
            for k in 1..ell {
                assert!(!z.pow(k).is_one());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = CyclotomicScalar::root_pow(5, 1).add(&CyclotomicScalar::from_int(5, 3));
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
        assert!(CyclotomicScalar::zero(5).inv().is_err());
    }

    #[test]
    fn wire_round_trip() {
        let a = CyclotomicScalar::root_pow(7, 3).scale(&BigRational::new(2.into(), 3.into()));
        let s = serde_json::to_string(&a).unwrap();
        let b: CyclotomicScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
    }
}
