//! Exact scalars: rational functions in `q^{1/2}` and their values in ℚ(ζ_ℓ).

mod cyclotomic;
mod laurent;
mod poly;
mod qnumber;
mod unity;

use std::fmt;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_poly, euler_phi, CyclotomicScalar, CyclotomicWire};
pub use laurent::{
    at_one_fraction, specialize_fraction, vanishing_quotient_at_one, vanishing_quotient_at_root,
    LaurentScalar,
};
pub use poly::{LaurentPoly, Poly};
pub use qnumber::{
    qbinom, qbinom_poly, qdfact, qdfact_poly, qfact, qfact_poly, qint, qint_poly, qnumber, QKind,
};
pub use unity::{alternating_sum, verify_unity_identities, IdentityCheck, UnityReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the specialization point")]
    Pole,
    #[error("modulus {0} must be odd and at least 3")]
    EvenModulus(u32),
    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

/// Coefficient ring interface shared by generic and specialized algebras.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Data needed to build constants, e.g. the level `ℓ`.
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn int_in(ctx: &Self::Ctx, c: i64) -> Self;
    /// `q^{k/2}`.
    fn s_pow_in(ctx: &Self::Ctx, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for LaurentScalar {
    type Ctx = ();

    fn zero_in(_: &()) -> Self {
        LaurentScalar::zero()
    }
    fn one_in(_: &()) -> Self {
        LaurentScalar::one()
    }
    fn int_in(_: &(), c: i64) -> Self {
        LaurentScalar::from_int(c)
    }
    fn s_pow_in(_: &(), k: i64) -> Self {
        LaurentScalar::s_pow(k as i32)
    }
    fn is_zero(&self) -> bool {
        LaurentScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        LaurentScalar::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        LaurentScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        LaurentScalar::neg(self)
    }
}

impl Scalar for CyclotomicScalar {
    type Ctx = u32;

    fn zero_in(ell: &u32) -> Self {
        CyclotomicScalar::zero(*ell)
    }
    fn one_in(ell: &u32) -> Self {
        CyclotomicScalar::one(*ell)
    }
    fn int_in(ell: &u32, c: i64) -> Self {
        CyclotomicScalar::from_int(*ell, c)
    }
    fn s_pow_in(ell: &u32, k: i64) -> Self {
        CyclotomicScalar::root_pow(*ell, k)
    }
    fn is_zero(&self) -> bool {
        CyclotomicScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CyclotomicScalar::add(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CyclotomicScalar::mul(self, o)
    }
    fn neg(&self) -> Self {
        CyclotomicScalar::neg(self)
    }
}

/// Scalars that admit division and receive generic coefficients.
pub trait FieldScalar: Scalar {
    /// Image of a generic coefficient; fails on a pole.
    fn from_generic(ctx: &Self::Ctx, x: &LaurentScalar) -> Result<Self, QError>;
    fn inv(&self) -> Result<Self, QError>;
}

impl FieldScalar for LaurentScalar {
    fn from_generic(_: &(), x: &LaurentScalar) -> Result<Self, QError> {
        Ok(x.clone())
    }
    fn inv(&self) -> Result<Self, QError> {
        LaurentScalar::inv(self)
    }
}

impl FieldScalar for CyclotomicScalar {
    fn from_generic(ell: &u32, x: &LaurentScalar) -> Result<Self, QError> {
        x.specialize(*ell)
    }
    fn inv(&self) -> Result<Self, QError> {
        CyclotomicScalar::inv(self)
    }
}
