//! Localized twisted polynomial algebras `x_i x_j = q^{h_ij} x_j x_i`.

mod modp;
mod rep;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{image_size_mod, integer_kernel, kernel_mod, IntMatrix};
use crate::qcoeff::Scalar;

pub use rep::{clock_shift_rep, MatrixRep, MonomialMatrix, RepReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TwistedError {
    #[error("form must be a square skew-symmetric matrix")]
    NotSkew,
    #[error("inverted index {0} is out of range")]
    BadIndex(usize),
    #[error("exponent vector has length {got}, expected {want}")]
    Length { got: usize, want: usize },
    #[error("negative exponent at non-inverted index {0}")]
    NegativeExponent(usize),
    #[error("modulus {0} must be odd and at least 3")]
    BadModulus(i128),
    #[error("character must have {want} entries, got {got}")]
    CharacterLength { got: usize, want: usize },
    #[error("character scalar at coordinate {0} is zero")]
    ZeroCharacter(usize),
}

/// A skew form `H` together with the set `J` of inverted generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormWire", into = "FormWire")]
pub struct SkewForm {
    h: IntMatrix,
    inverted: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct FormWire {
    matrix: IntMatrix,
    #[serde(default)]
    inverted: Vec<usize>,
}

impl TryFrom<FormWire> for SkewForm {
    type Error = TwistedError;
    fn try_from(w: FormWire) -> Result<Self, TwistedError> {
        SkewForm::new(w.matrix, &w.inverted.iter().map(|j| j.wrapping_sub(1)).collect::<Vec<_>>())
    }
}

impl From<SkewForm> for FormWire {
    fn from(f: SkewForm) -> Self {
        FormWire { inverted: f.inverted_indices().iter().map(|j| j + 1).collect(), matrix: f.h }
    }
}

impl SkewForm {
    /// `inverted` holds 0-based indices.
    pub fn new(h: IntMatrix, inverted: &[usize]) -> Result<Self, TwistedError> {
        if h.rows() != h.cols() || !h.is_skew() {
            return Err(TwistedError::NotSkew);
        }
        let n = h.rows();
        let mut mask = vec![false; n];
        for &j in inverted {
            *mask.get_mut(j).ok_or(TwistedError::BadIndex(j))? = true;
        }
        Ok(SkewForm { h, inverted: mask })
    }

    pub fn from_rows(rows: &[Vec<i128>], inverted: &[usize]) -> Result<Self, TwistedError> {
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(TwistedError::NotSkew);
        }
        Self::new(IntMatrix::from_rows(rows), inverted)
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.h
    }

    pub fn h(&self, i: usize, j: usize) -> i128 {
        self.h[(i, j)]
    }

    pub fn is_inverted(&self, i: usize) -> bool {
        self.inverted[i]
    }

    pub fn inverted_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|i| self.inverted[*i]).collect()
    }

    pub fn check_exponents(&self, a: &[i64]) -> Result<(), TwistedError> {
        if a.len() != self.dim() {
            return Err(TwistedError::Length { got: a.len(), want: self.dim() });
        }
        match a.iter().enumerate().find(|(i, e)| **e < 0 && !self.inverted[*i]) {
            Some((i, _)) => Err(TwistedError::NegativeExponent(i)),
            None => Ok(()),
        }
    }

    /// Exponent of `q` in `x^a x^b = q^{..} x^{a+b}`.
    pub fn reorder_exponent(&self, a: &[i64], b: &[i64]) -> i128 {
        let n = self.dim();
        let mut e = 0i128;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..i {
                e += a[i] as i128 * b[j] as i128 * self.h[(i, j)];
            }
        }
        e
    }

    /// `Σ a_i b_j h_ij`, so that `x^a x^b = q^{pairing} x^b x^a`.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i128 {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i] as i128 * b[j] as i128 * self.h[(i, j)])
            .sum()
    }

    pub fn generator<S: Scalar>(&self, ctx: &S::Ctx, i: usize) -> TwistedElement<S> {
        let mut e = vec![0; self.dim()];
        e[i] = 1;
        TwistedElement::monomial(ctx, e, S::one_in(ctx))
    }

    pub fn monomial<S: Scalar>(&self, ctx: &S::Ctx, a: Vec<i64>, c: S) -> Result<TwistedElement<S>, TwistedError> {
        self.check_exponents(&a)?;
        Ok(TwistedElement::monomial(ctx, a, c))
    }

    pub fn multiply<S: Scalar>(
        &self,
        a: &TwistedElement<S>,
        b: &TwistedElement<S>,
    ) -> Result<TwistedElement<S>, TwistedError> {
        for e in a.terms.keys().chain(b.terms.keys()) {
            self.check_exponents(e)?;
        }
        let mut out = TwistedElement::zero(&a.ctx);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let k = self.reorder_exponent(ea, eb);
                let c = ca.mul(cb).mul(&S::s_pow_in(&a.ctx, 2 * k as i64));
                let sum: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(sum, c);
            }
        }
        Ok(out)
    }

    pub fn commutator<S: Scalar>(
        &self,
        a: &TwistedElement<S>,
        b: &TwistedElement<S>,
    ) -> Result<TwistedElement<S>, TwistedError> {
        Ok(self.multiply(a, b)?.sub(&self.multiply(b, a)?))
    }

    /// Whether `x^a` commutes with every generator at `q = v`, a primitive `ℓ`-th root.
    pub fn is_central_exponent(&self, a: &[i64], ell: i128) -> bool {
        (0..self.dim()).all(|j| {
            let mut e = vec![0; self.dim()];
            e[j] = 1;
            self.pairing(a, &e).rem_euclid(ell) == 0
        })
    }

    /// The lattice `K = ker(H mod ℓ)`; the centre is spanned by `x^a`, `a ∈ K`, `a_i ≥ 0` off `J`.
    pub fn center_basis(&self, ell: i128) -> Result<CenterBasis, TwistedError> {
        check_ell(ell)?;
        Ok(CenterBasis { lattice: kernel_mod(&self.h, ell), inverted: self.inverted_indices() })
    }

    /// Square root of `|image of H mod ℓ|`.
    pub fn degree(&self, ell: i128) -> Result<u128, TwistedError> {
        check_ell(ell)?;
        let size = image_size_mod(&self.h, ell);
        let root = isqrt(size);
        assert_eq!(root * root, size, "image of a skew form has square cardinality");
        Ok(root)
    }

    /// Casimir exponents: the integer kernel of `H`.
    pub fn poisson_center(&self) -> IntMatrix {
        integer_kernel(&self.h)
    }
}

pub(crate) fn check_ell(ell: i128) -> Result<(), TwistedError> {
    if ell < 3 || ell % 2 == 0 {
        Err(TwistedError::BadModulus(ell))
    } else {
        Ok(())
    }
}

fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterBasis {
    /// Columns generate `K`.
    pub lattice: IntMatrix,
    pub inverted: Vec<usize>,
}

impl CenterBasis {
    /// Exponents in `[0, bound)ⁿ` lying in `K`.
    pub fn monomials_in_box(&self, bound: i64) -> Vec<Vec<i64>> {
        let n = self.lattice.rows();
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut k = 0;
            while k < n {
                cur[k] += 1;
                if cur[k] < bound {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
            if k == n {
                return out;
            }
        }
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        let target: Vec<i128> = a.iter().map(|x| *x as i128).collect();
        crate::lattice::solve_integer(&self.lattice, &target).is_some()
    }
}

/// Finite combination of normal-ordered monomials `x^a`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistedElement<S: Scalar> {
    ctx: S::Ctx,
    terms: BTreeMap<Vec<i64>, S>,
}

impl<S: Scalar> TwistedElement<S> {
    pub fn zero(ctx: &S::Ctx) -> Self {
        TwistedElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &S::Ctx, n: usize) -> Self {
        Self::monomial(ctx, vec![0; n], S::one_in(ctx))
    }

    pub fn monomial(ctx: &S::Ctx, a: Vec<i64>, c: S) -> Self {
        let mut e = Self::zero(ctx);
        e.add_term(a, c);
        e
    }

    fn add_term(&mut self, a: Vec<i64>, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&a);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(a, c);
            }
        }
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, S> {
        &self.terms
    }

    pub fn coefficient(&self, a: &[i64]) -> Option<&S> {
        self.terms.get(a)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &o.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        TwistedElement { ctx: self.ctx.clone(), terms: self.terms.iter().map(|(a, c)| (a.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (a, x) in &self.terms {
            out.add_term(a.clone(), x.mul(c));
        }
        out
    }
}

impl<S: Scalar> fmt::Display for TwistedElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                let e: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                format!("({c})*x^[{}]", e.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::LaurentScalar;

    fn hyperbolic(d: i128) -> SkewForm {
        SkewForm::from_rows(&[vec![0, d], vec![-d, 0]], &[]).unwrap()
    }

    #[test]
    fn swap_picks_up_q_inverse() {
        let f = hyperbolic(1);
        let x1 = f.generator::<LaurentScalar>(&(), 0);
        let x2 = f.generator::<LaurentScalar>(&(), 1);
        let p = f.multiply(&x2, &x1).unwrap();
        assert_eq!(p, TwistedElement::monomial(&(), vec![1, 1], LaurentScalar::q_pow(-1)));
        let x12 = f.multiply(&x1, &x2).unwrap();
        let sq = f.multiply(&x12, &x12).unwrap();
        assert_eq!(sq, TwistedElement::monomial(&(), vec![2, 2], LaurentScalar::q_pow(-1)));
    }

    #[test]
    fn negative_exponent_needs_inversion() {
        let f = hyperbolic(1);
        assert_eq!(
            f.monomial::<LaurentScalar>(&(), vec![-1, 0], LaurentScalar::one()),
            Err(TwistedError::NegativeExponent(0))
        );
        let g = SkewForm::from_rows(&[vec![0, 1], vec![-1, 0]], &[0]).unwrap();
        assert!(g.monomial::<LaurentScalar>(&(), vec![-1, 0], LaurentScalar::one()).is_ok());
    }

    #[test]
    fn degrees_and_centres() {
        assert_eq!(hyperbolic(1).degree(5).unwrap(), 5);
        assert_eq!(hyperbolic(3).degree(9).unwrap(), 3);
        assert_eq!(hyperbolic(0).degree(7).unwrap(), 1);
        let c = hyperbolic(1).center_basis(3).unwrap();
        assert!(c.contains(&[3, 0]) && c.contains(&[0, 3]) && !c.contains(&[1, 0]));
        assert_eq!(crate::lattice::lattice_index(&c.lattice), Some(9));
        let c = hyperbolic(3).center_basis(9).unwrap();
        assert_eq!(crate::lattice::lattice_index(&c.lattice), Some(9));
        assert!(c.contains(&[3, 6]) && !c.contains(&[1, 0]));
        assert!(matches!(hyperbolic(1).degree(4), Err(TwistedError::BadModulus(4))));
    }

    #[test]
    fn casimirs() {
        assert_eq!(hyperbolic(1).poisson_center().cols(), 0);
        assert_eq!(hyperbolic(0).poisson_center().cols(), 2);
        let f = SkewForm::from_rows(&[vec![0, 2, 0], vec![-2, 0, 0], vec![0, 0, 0]], &[]).unwrap();
        let k = f.poisson_center();
        assert_eq!(k.columns(), vec![vec![0, 0, 1]]);
    }

    #[test]
    fn json_form() {
        let f: SkewForm = serde_json::from_str(r#"{"matrix": [[0, 1], [-1, 0]], "inverted": [2]}"#).unwrap();
        assert!(f.is_inverted(1) && !f.is_inverted(0));
        assert!(serde_json::from_str::<SkewForm>(r#"{"matrix": [[0, 1], [1, 0]]}"#).is_err());
    }
}
