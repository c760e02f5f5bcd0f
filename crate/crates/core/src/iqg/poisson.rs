//! Semiclassical brackets. Brackets are formed on generic lifts and only then evaluated, so nested
//! brackets reuse the lift of the inner one.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::qcoeff::{vanishing_quotient_at_root, CyclotomicScalar, LaurentPoly, LaurentScalar};
use crate::uq::{Monomial, UqAlgebra, UqElement, UqError};

use super::IqgError;

type Generic = UqElement<LaurentScalar>;

/// Where the bracket is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMode {
    /// `q^{1/2} = 1`, dividing by `2(q^{1/2} − 1)`.
    AtOne,
    /// `q^{1/2} = ṽ` with `ṽ` a primitive `ℓ`-th root, dividing by `ℓ(q^ℓ − 1)`.
    AtRoot(u32),
}

fn divisor(mode: BracketMode) -> LaurentScalar {
    match mode {
        BracketMode::AtOne => LaurentScalar::s_pow(1).sub(&LaurentScalar::one()).scale(2),
        BracketMode::AtRoot(ell) => LaurentScalar::q_pow(ell as i32).sub(&LaurentScalar::one()).scale(ell as i128),
    }
}

/// A generic lift of `{x, y}`; fails with a pole when the commutator does not vanish at the point.
pub fn bracket_lift(alg: &UqAlgebra<LaurentScalar>, x: &Generic, y: &Generic, mode: BracketMode) -> Result<Generic, IqgError> {
    let c = alg.commutator(x, y)?;
    let inv = divisor(mode).inv()?;
    let lift = c.scale(&inv);
    match mode {
        BracketMode::AtOne => {
            at_one(&lift)?;
        }
        BracketMode::AtRoot(ell) => {
            lift.specialize::<CyclotomicScalar>(&ell)?;
        }
    }
    Ok(lift)
}

/// `{x, y}` in `U_v`.
pub fn poisson_bracket_at_root(
    alg: &UqAlgebra<LaurentScalar>,
    x: &Generic,
    y: &Generic,
    ell: u32,
) -> Result<UqElement<CyclotomicScalar>, IqgError> {
    Ok(bracket_lift(alg, x, y, BracketMode::AtRoot(ell))?.specialize(&ell)?)
}

/// `{x, y}` with the divisor `ℓ²(q v^{-1} − 1)` applied literally, one coefficient at a time.
pub fn poisson_bracket_literal(
    alg: &UqAlgebra<LaurentScalar>,
    x: &Generic,
    y: &Generic,
    ell: u32,
) -> Result<UqElement<CyclotomicScalar>, IqgError> {
    // q v^{-1} − 1 = (s − ṽ)(s + ṽ) ṽ^{-2}, so the quotient is c/(s − ṽ) · ṽ / (2ℓ²).
    let c = alg.commutator(x, y)?;
    let factor = CyclotomicScalar::root_pow(ell, 1).mul(&CyclotomicScalar::from_ratio(ell, 1, 2 * (ell as i64).pow(2)));
    let mut terms = BTreeMap::new();
    for (m, coeff) in c.terms() {
        let den = LaurentPoly::new(0, coeff.denominator().clone());
        let value = vanishing_quotient_at_root(coeff.numerator(), &den, ell)
            .map_err(|_| UqError::Pole { monomial: m.to_string() })?
            .mul(&factor);
        if !value.is_zero() {
            terms.insert(m.clone(), value);
        }
    }
    Ok(UqElement::from_terms(terms))
}

/// An element of the commutative algebra `U_1`: words are sorted, coefficients rational.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ClassicalElement(pub BTreeMap<Monomial, BigRational>);

impl ClassicalElement {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.0.clone();
        for (m, c) in &o.0 {
            let e = out.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(m);
            }
        }
        ClassicalElement(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::default();
        }
        ClassicalElement(self.0.iter().map(|(m, x)| (m.clone(), x * c)).collect())
    }
}

impl fmt::Display for ClassicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(|(m, c)| format!("({c}) * {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Image of a generic element at `q^{1/2} = 1`.
pub fn at_one(x: &Generic) -> Result<ClassicalElement, IqgError> {
    let mut out = ClassicalElement::default();
    for (m, c) in x.terms() {
        let v = c.at_one().map_err(|_| UqError::Pole { monomial: m.to_string() })?;
        let mut key = m.clone();
        key.f.sort_unstable();
        key.e.sort_unstable();
        out = out.add(&ClassicalElement(BTreeMap::from([(key, v)])));
    }
    Ok(out)
}

/// `{x, y}` in `U_1`.
pub fn poisson_bracket_at_one(alg: &UqAlgebra<LaurentScalar>, x: &Generic, y: &Generic) -> Result<ClassicalElement, IqgError> {
    at_one(&bracket_lift(alg, x, y, BracketMode::AtOne)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanDatum;

    #[test]
    fn f_e_bracket_in_a1() {
        let u = UqAlgebra::new(&CartanDatum::from_type("A1").unwrap(), 12).unwrap();
        let got = poisson_bracket_at_one(&u, &u.f(0), &u.e(0)).unwrap();
        let want = at_one(&u.k_alpha(0, 1).sub(&u.k_alpha(0, -1)).scale(&LaurentScalar::from_int(2))).unwrap();
        assert_eq!(got, want);
        assert!(poisson_bracket_at_one(&u, &u.e(0), &u.e(0)).unwrap().is_zero());
    }

    #[test]
    fn non_central_pair_has_pole_at_root() {
        let u = UqAlgebra::new(&CartanDatum::from_type("A1").unwrap(), 12).unwrap();
        assert!(poisson_bracket_at_root(&u, &u.f(0), &u.e(0), 3).is_err());
        let f3 = u.pow(&u.f(0), 3).unwrap();
        let e3 = u.pow(&u.e(0), 3).unwrap();
        let a = poisson_bracket_at_root(&u, &f3, &e3, 3).unwrap();
        let b = poisson_bracket_literal(&u, &f3, &e3, 3).unwrap();
        assert!(!a.is_zero());
        assert_eq!(a, b);
    }
}
