//! Quantum integers, factorials and binomials in the variable `q_i = q^{ε}`.

use super::laurent::LaurentScalar;
use super::poly::LaurentPoly;
use super::QError;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum QKind {
    Int,
    Fact,
    DFact,
    Binom,
}

impl std::str::FromStr for QKind {
    type Err = QError;
    fn from_str(s: &str) -> Result<Self, QError> {
        match s {
            "int" => Ok(QKind::Int),
            "fact" => Ok(QKind::Fact),
            "dfact" => Ok(QKind::DFact),
            "binom" => Ok(QKind::Binom),
            _ => Err(QError::Parse(s.to_string())),
        }
    }
}

/// `[n]_ε` as a Laurent polynomial in `s`.
pub fn qint_poly(n: i64, eps: u32) -> LaurentPoly {
    let m = n.unsigned_abs() as i64;
    let e = 2 * eps as i64;
    let p = LaurentPoly::from_terms((0..m).map(|k| ((e * (m - 1 - 2 * k)) as i32, 1i128)));
    if n < 0 {
        p.neg()
    } else {
        p
    }
}

pub fn qfact_poly(n: i64, eps: u32) -> Result<LaurentPoly, QError> {
    if n < 0 {
        return Err(QError::NegativeFactorial(n));
    }
    Ok((1..=n).fold(LaurentPoly::one(), |acc, k| acc.mul(&qint_poly(k, eps))))
}

/// `[m]!! = [m][m-2]···`, ending at `[1]` or `[2]`.
pub fn qdfact_poly(m: i64, eps: u32) -> Result<LaurentPoly, QError> {
    if m < 0 {
        return Err(QError::NegativeFactorial(m));
    }
    let mut acc = LaurentPoly::one();
    let mut k = m;
    while k > 0 {
        acc = acc.mul(&qint_poly(k, eps));
        k -= 2;
    }
    Ok(acc)
}

/// `[m choose r]_ε` for any integer `m`; zero when `r < 0`.
pub fn qbinom_poly(m: i64, r: i64, eps: u32) -> LaurentPoly {
    if r < 0 {
        return LaurentPoly::zero();
    }
    if m >= 0 && r > m {
        return LaurentPoly::zero();
    }
    let num = (0..r).fold(LaurentPoly::one(), |acc, k| acc.mul(&qint_poly(m - k, eps)));
    let den = qfact_poly(r, eps).expect("r is non-negative");
    let den_shift = den.shift();
    let quotient = num
        .poly()
        .div_exact(den.poly())
        .expect("quantum binomials are Laurent polynomials");
    LaurentPoly::new(num.shift() - den_shift, quotient)
}

pub fn qint(n: i64, eps: u32) -> LaurentScalar {
    qint_poly(n, eps).into()
}

pub fn qfact(n: i64, eps: u32) -> Result<LaurentScalar, QError> {
    qfact_poly(n, eps).map(Into::into)
}

pub fn qdfact(m: i64, eps: u32) -> Result<LaurentScalar, QError> {
    qdfact_poly(m, eps).map(Into::into)
}

pub fn qbinom(m: i64, r: i64, eps: u32) -> LaurentScalar {
    qbinom_poly(m, r, eps).into()
}

/// Dispatch by kind; `args` is `[n]` or `[m, r]` for binomials.
pub fn qnumber(kind: QKind, args: &[i64], eps: u32) -> Result<LaurentScalar, QError> {
    let want = if kind == QKind::Binom { 2 } else { 1 };
    if args.len() != want {
        return Err(QError::Arity { expected: want, got: args.len() });
    }
    match kind {
        QKind::Int => Ok(qint(args[0], eps)),
        QKind::Fact => qfact(args[0], eps),
        QKind::DFact => qdfact(args[0], eps),
        QKind::Binom => Ok(qbinom(args[0], args[1], eps)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(qint(2, 1).to_string(), "q^(2/2) + q^(-2/2)");
        assert_eq!(qint(0, 1), LaurentScalar::zero());
        assert_eq!(qint(-3, 1), qint(3, 1).neg());
        assert_eq!(qint(2, 2).to_string(), "q^(4/2) + q^(-4/2)");
        assert_eq!(qbinom(5, 0, 1), LaurentScalar::one());
        assert_eq!(qdfact(3, 1).unwrap().to_string(), "q^(4/2) + 1 + q^(-4/2)");
        assert!(qfact(-1, 1).is_err());
    }

    #[test]
    fn binomial_pascal() {
        for m in 1..8 {
            for r in 1..m {
                let lhs = qbinom(m, r, 1);
                let rhs = qbinom(m - 1, r, 1)
                    .mul(&LaurentScalar::q_pow(r as i32))
                    .add(&qbinom(m - 1, r - 1, 1).mul(&LaurentScalar::q_pow(-(m - r) as i32)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn signed_extension() {
        // [-m choose r] = (-1)^r [m+r-1 choose r]
        for m in 1..5 {
            for r in 0..4 {
                let sign = if r % 2 == 0 { 1 } else { -1 };
                assert_eq!(qbinom(-m, r, 1), qbinom(m + r - 1, r, 1).scale(sign));
            }
        }
        assert!(qbinom(3, -1, 1).is_zero());
    }
}
