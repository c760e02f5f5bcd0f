//! Exact root-of-unity identities used by the Frobenius computations.

use num_rational::BigRational;
use serde::Serialize;

use super::cyclotomic::CyclotomicScalar;
use super::laurent::{check_modulus, LaurentScalar};
use super::qnumber::{qbinom, qfact};
use super::QError;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub expected: String,
    pub value: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct UnityReport {
    pub ell: u32,
    pub checks: Vec<IdentityCheck>,
}

impl UnityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn check(name: &'static str, value: CyclotomicScalar, expected: CyclotomicScalar) -> IdentityCheck {
    IdentityCheck {
        name,
        expected: expected.to_string(),
        value: value.to_string(),
        pass: value == expected,
    }
}

/// `q - q^{-1}`.
fn q_gap() -> LaurentScalar {
    LaurentScalar::q_pow(1).sub(&LaurentScalar::q_pow(-1))
}

/// `Σ_{r=1}^{ℓ-1} (-1)^r v^r / ((v - v^{-1})^ℓ [r]! [ℓ-r]!)`, each summand specialized separately.
pub fn alternating_sum(ell: u32) -> Result<CyclotomicScalar, QError> {
    let l = ell as i64;
    let gap = q_gap().pow(ell as i32)?;
    let mut total = CyclotomicScalar::zero(ell);
    for r in 1..l {
        let den = gap.mul(&qfact(r, 1)?).mul(&qfact(l - r, 1)?);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let term = LaurentScalar::q_pow(r as i32).scale(sign).div(&den)?;
        total = total.add(&term.specialize(ell)?);
    }
    Ok(total)
}

pub fn verify_unity_identities(ell: u32) -> Result<UnityReport, QError> {
    check_modulus(ell)?;
    if ell < 3 {
        return Err(QError::EvenModulus(ell));
    }
    let l = ell as i64;
    let a = alternating_sum(ell)?;
    let a_expected = CyclotomicScalar::from_rational(ell, BigRational::new((1 - l).into(), (2 * l).into()));

    let b = q_gap().pow(ell as i32 - 1)?.mul(&qfact(l - 1, 1)?).specialize(ell)?;
    let b_expected = CyclotomicScalar::from_int(ell, l);

    let c = qbinom(2 * l, l, 1).specialize(ell)?;
    let c_expected = CyclotomicScalar::from_int(ell, 2);

    Ok(UnityReport {
        ell,
        checks: vec![
            check("alternating_sum", a, a_expected),
            check("gap_factorial", b, b_expected),
            check("central_binomial", c, c_expected),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell_three() {
        let r = verify_unity_identities(3).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.checks[0].value, "-1/3");
        assert_eq!(r.checks[1].value, "3");
    }

    #[test]
    fn rejects_even() {
        assert!(verify_unity_identities(4).is_err());
        assert!(verify_unity_identities(1).is_err());
    }
}
