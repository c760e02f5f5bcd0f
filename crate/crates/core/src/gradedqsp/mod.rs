//! The skew form of the associated graded iquantum group, its kernel mod `ℓ`, degree and centre.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{image_size_mod, kernel_mod, lattice_index, solve_integer, IntMatrix};
use crate::qcoeff::CyclotomicScalar;
use crate::rootdata::{Root, Weight};
use crate::satake::{AdaptedWord, SatakeDiagram, SatakeError};
use crate::twistedpoly::{SkewForm, TwistedElement, TwistedError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradedError {
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    Twisted(#[from] TwistedError),
    #[error("weight {0} is not in P^imath")]
    NotInPImath(Weight),
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("level {ell} must be odd, at least 3 and coprime to the symmetrizer {eps}")]
    BadLevel { ell: i128, eps: i64 },
}

/// Blocks of the skew form for a Satake diagram and an adapted reduced word.
///
/// Coordinates are ordered as `B_{β_1..β_N}`, `E_{γ_1..γ_M}`, `K_{ω⁰_1..ω⁰_r}`.
#[derive(Clone, Debug, Serialize)]
pub struct GradedPresentation {
    #[serde(skip)]
    diagram: SatakeDiagram,
    pub word: AdaptedWord,
    pub a: IntMatrix,
    pub a_prime: IntMatrix,
    pub b: IntMatrix,
    pub b_prime: IntMatrix,
    pub s: IntMatrix,
    /// ℤ-basis `ω⁰_s` of `P^θ`.
    pub torus: Vec<Weight>,
}

fn sgn(k: isize) -> i128 {
    k.signum() as i128
}

fn ordered_form(roots: &[Root], d: &crate::rootdata::CartanDatum) -> IntMatrix {
    let n = roots.len();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = sgn(j as isize - i as isize) * roots[i].inner(d, &roots[j]) as i128;
        }
    }
    m
}

fn pairing_block(torus: &[Weight], roots: &[Root], d: &crate::rootdata::CartanDatum) -> IntMatrix {
    let mut m = IntMatrix::zeros(torus.len(), roots.len());
    for (s, w) in torus.iter().enumerate() {
        for (j, beta) in roots.iter().enumerate() {
            let p = w.pair_root(d, &beta.0).to_integer().expect("(P, Q) is integral");
            m[(s, j)] = -(p as i128);
        }
    }
    m
}

pub fn build_s(diagram: &SatakeDiagram, word: Option<&AdaptedWord>) -> GradedPresentation {
    let d = diagram.datum();
    let word = word.cloned().unwrap_or_else(|| diagram.adapted_word());
    let betas = word.all_roots();
    let gammas = word.gammas.clone();
    let torus = diagram.p_theta_basis();
    let (n, m, r) = (betas.len(), gammas.len(), torus.len());
    let a = ordered_form(&betas, d);
    let a_prime = ordered_form(&gammas, d);
    let b = pairing_block(&torus, &betas, d);
    let b_prime = pairing_block(&torus, &gammas, d);
    let mut s = IntMatrix::zeros(n + m + r, n + m + r);
    for i in 0..n {
        for j in 0..n {
            s[(i, j)] = a[(i, j)];
        }
        for t in 0..r {
            s[(i, n + m + t)] = -b[(t, i)];
            s[(n + m + t, i)] = b[(t, i)];
        }
    }
    for i in 0..m {
        for j in 0..m {
            s[(n + i, n + j)] = a_prime[(i, j)];
        }
        for t in 0..r {
            s[(n + i, n + m + t)] = b_prime[(t, i)];
            s[(n + m + t, n + i)] = -b_prime[(t, i)];
        }
    }
    GradedPresentation { diagram: diagram.clone(), word, a, a_prime, b, b_prime, s, torus }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KernelCertificate {
    pub ell: i128,
    pub kernel_basis: IntMatrix,
    pub witnesses: Vec<Vec<i128>>,
    pub image_size: u128,
    pub expected_image_size: u128,
    /// Index of `span{x(ν_i)} + ℓX` in `X`.
    pub witness_index: Option<u128>,
    pub failures: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeCheck {
    pub ell: i128,
    pub degree: u128,
    pub expected: u128,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CentralMonomial {
    pub label: String,
    pub exponents: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CenterReport {
    pub ell: i128,
    pub monomials: Vec<CentralMonomial>,
    pub non_central: Vec<String>,
    pub pass: bool,
}

/// Exponent data of the leading monomial `c_ν K_μ Π B^a Π E^c`; the unit `c_ν` stays symbolic.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LeadingTerm {
    pub scalar: String,
    pub k_weight: Weight,
    pub b_exponents: Vec<i64>,
    pub e_exponents: Vec<i64>,
    pub weight: Weight,
    pub expected_weight: Weight,
}

impl GradedPresentation {
    pub fn diagram(&self) -> &SatakeDiagram {
        &self.diagram
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn m(&self) -> usize {
        self.a_prime.rows()
    }

    pub fn r(&self) -> usize {
        self.torus.len()
    }

    pub fn dim(&self) -> usize {
        self.s.rows()
    }

    pub fn form(&self) -> SkewForm {
        let torus: Vec<usize> = (self.n() + self.m()..self.dim()).collect();
        SkewForm::new(self.s.clone(), &torus).expect("S is skew-symmetric")
    }

    fn full_letters(&self) -> Vec<usize> {
        self.word.full().0
    }

    /// `c_k(μ) = ⟨α^∨_{i_k}, μ⟩` along the full word.
    pub fn u(&self, mu: &Weight) -> Vec<i64> {
        self.full_letters().iter().map(|i| half_int(mu.coroot(*i))).collect()
    }

    /// `c'_k(μ) = ⟨α^∨_{j'_k}, μ⟩` along the primed black word.
    pub fn u_prime(&self, mu: &Weight) -> Vec<i64> {
        self.word.primed.0.iter().map(|j| half_int(mu.coroot(*j))).collect()
    }

    /// Coordinates of `λ ∈ P^θ` in the basis `ω⁰`.
    pub fn torus_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let n = self.diagram.rank();
        let cols: Vec<Vec<i128>> = self
            .torus
            .iter()
            .map(|w| w.to_ints().expect("P^θ basis is integral").iter().map(|x| *x as i128).collect())
            .collect();
        let target: Vec<i128> = lambda.to_ints()?.iter().map(|x| *x as i128).collect();
        solve_integer(&IntMatrix::from_columns(n, &cols), &target).map(|v| v.iter().map(|x| *x as i64).collect())
    }

    fn w0(&self, mu: &Weight) -> Weight {
        self.diagram.roots().w0().act(self.diagram.datum(), mu)
    }

    fn w_black(&self, mu: &Weight) -> Weight {
        self.diagram.w_black().act(self.diagram.datum(), mu)
    }

    /// `x(ν) = u(ν) + u'(−w•ν) + (1+w₀)ν`.
    pub fn x_nu(&self, nu: &Weight) -> Result<Vec<i128>, GradedError> {
        if !self.diagram.in_p_imath(nu) {
            return Err(GradedError::NotInPImath(nu.clone()));
        }
        let torus_part = self.torus_coords(&nu.add(&self.w0(nu))).expect("(1+w₀)P^ι ⊂ P^θ");
        Ok(self
            .u(nu)
            .into_iter()
            .chain(self.u_prime(&self.w_black(nu).neg()))
            .chain(torus_part)
            .map(|x| x as i128)
            .collect())
    }

    /// Violations of `A u(μ) = −ᵗB̃(1+w₀)μ`, `A' u'(μ) = −ᵗB̃'(1+w•)μ`, `B̃u(μ) = (1−w₀)μ` and
    /// `B̃'u'(μ) = (1−w•)μ` over the fundamental weights.
    pub fn lattice_identity_failures(&self) -> Vec<String> {
        let d = self.diagram.datum();
        let betas = self.word.all_roots();
        let gammas = &self.word.gammas;
        let mut bad = Vec::new();
        let combine = |coeffs: &[i64], roots: &[Root]| {
            coeffs
                .iter()
                .zip(roots)
                .fold(Weight::zero(d.rank()), |acc, (c, r)| acc.add(&r.to_weight(d).scale(*c)))
        };
        for i in 0..d.rank() {
            let mu = Weight::fundamental(d.rank(), i);
            let c = self.u(&mu);
            let cp = self.u_prime(&mu);
            let lam = mu.add(&self.w0(&mu));
            let lam_b = mu.add(&self.w_black(&mu));
            for (k, beta) in betas.iter().enumerate() {
                let lhs: i128 = (0..betas.len()).map(|j| self.a[(k, j)] * c[j] as i128).sum();
                if lhs != -half_int(lam.pair_root(d, &beta.0)) as i128 {
                    bad.push(format!("Au + (beta, (1+w0)mu) row {} at omega_{}", k + 1, i + 1));
                }
            }
            for (k, gamma) in gammas.iter().enumerate() {
                let lhs: i128 = (0..gammas.len()).map(|j| self.a_prime[(k, j)] * cp[j] as i128).sum();
                if lhs != -half_int(lam_b.pair_root(d, &gamma.0)) as i128 {
                    bad.push(format!("A'u' + (gamma, (1+wb)mu) row {} at omega_{}", k + 1, i + 1));
                }
            }
            if combine(&c, &betas) != mu.sub(&self.w0(&mu)) {
                bad.push(format!("B u = (1-w0)mu at omega_{}", i + 1));
            }
            if combine(&cp, gammas) != mu.sub(&self.w_black(&mu)) {
                bad.push(format!("B' u' = (1-wb)mu at omega_{}", i + 1));
            }
        }
        bad
    }

    pub fn check_level(&self, ell: i128) -> Result<(), GradedError> {
        let eps = self.diagram.datum().symmetrizers();
        match eps.iter().find(|e| crate::lattice::gcd(**e as i128, ell) != 1) {
            _ if ell < 3 || ell % 2 == 0 => Err(GradedError::BadLevel { ell, eps: 1 }),
            Some(e) => Err(GradedError::BadLevel { ell, eps: *e }),
            None => Ok(()),
        }
    }

    pub fn verify_kernel_lemma(&self, ell: i128) -> Result<KernelCertificate, GradedError> {
        self.check_level(ell)?;
        let dim = self.dim();
        let mut failures = self.lattice_identity_failures();
        let witnesses: Vec<Vec<i128>> =
            self.diagram.p_imath_basis().iter().map(|nu| self.x_nu(nu)).collect::<Result<_, _>>()?;
        for (i, x) in witnesses.iter().enumerate() {
            if self.s.mul_vec(x).iter().any(|y| y.rem_euclid(ell) != 0) {
                failures.push(format!("S x(nu_{}) != 0 mod {ell}: {x:?}", i + 1));
            }
        }
        let image_size = image_size_mod(&self.s, ell);
        let kernel_basis = kernel_mod(&self.s, ell);
        let mut ell_x = IntMatrix::identity(dim);
        for i in 0..dim {
            ell_x[(i, i)] = ell;
        }
        let gens = IntMatrix::from_columns(dim, &witnesses).hcat(&ell_x);
        let witness_index = lattice_index(&gens);
        if witness_index != Some(image_size) {
            failures.push(format!("index of span x(nu) + lX is {witness_index:?}, |image| is {image_size}"));
        }
        let n0 = self.diagram.invariants().n0 as u32;
        let expected_image_size = (ell as u128).pow(2 * n0);
        if image_size != expected_image_size {
            failures.push(format!("|image| = {image_size}, expected {expected_image_size}"));
        }
        Ok(KernelCertificate {
            ell,
            kernel_basis,
            witnesses,
            image_size,
            expected_image_size,
            witness_index,
            pass: failures.is_empty(),
            failures,
        })
    }

    pub fn graded_degree(&self, ell: i128) -> Result<DegreeCheck, GradedError> {
        self.check_level(ell)?;
        let degree = self.form().degree(ell)?;
        let expected = (ell as u128).pow(self.diagram.invariants().n0 as u32);
        Ok(DegreeCheck { ell, degree, expected, pass: degree == expected })
    }

    /// `K_{(1+w₀)ν} Π B_{β_t}^{⟨α^∨_{i_t}, ν⟩} Π E_{γ_t}^{⟨α^∨_{j_t}, −w₀ν⟩}`.
    pub fn kolb_letzter_monomial(&self, nu: &Weight) -> Result<Vec<i64>, GradedError> {
        if !self.diagram.in_p_imath(nu) {
            return Err(GradedError::NotInPImath(nu.clone()));
        }
        let minus_w0 = self.w0(nu).neg();
        let e_part = self.word.black.0.iter().map(|j| half_int(minus_w0.coroot(*j)));
        let k_part = self.torus_coords(&nu.add(&self.w0(nu))).expect("(1+w₀)P^ι ⊂ P^θ");
        Ok(self.u(nu).into_iter().chain(e_part).chain(k_part).collect())
    }

    pub fn graded_center_generators(&self, ell: i128) -> Result<CenterReport, GradedError> {
        self.check_level(ell)?;
        let (n, m, dim) = (self.n(), self.m(), self.dim());
        let unit = |k: usize| {
            let mut e = vec![0i64; dim];
            e[k] = ell as i64;
            e
        };
        let mut monomials = Vec::new();
        for (i, nu) in self.diagram.p_imath_basis().iter().enumerate() {
            monomials.push(CentralMonomial { label: format!("nu_{}", i + 1), exponents: self.kolb_letzter_monomial(nu)? });
        }
        monomials.extend((0..n).map(|t| CentralMonomial { label: format!("B_beta_{}^l", t + 1), exponents: unit(t) }));
        monomials.extend((0..m).map(|t| CentralMonomial { label: format!("E_gamma_{}^l", t + 1), exponents: unit(n + t) }));
        monomials.extend(
            (0..self.r()).map(|s| CentralMonomial { label: format!("K_l_omega0_{}", s + 1), exponents: unit(n + m + s) }),
        );
        let form = self.form();
        let ctx = ell as u32;
        let gens: Vec<TwistedElement<CyclotomicScalar>> = (0..dim).map(|i| form.generator(&ctx, i)).collect();
        let mut non_central = Vec::new();
        for mono in &monomials {
            let z = form.monomial(&ctx, mono.exponents.clone(), CyclotomicScalar::one(ctx))?;
            for g in &gens {
                if !form.commutator(&z, g)?.is_zero() {
                    non_central.push(mono.label.clone());
                    break;
                }
            }
        }
        Ok(CenterReport { ell, pass: non_central.is_empty(), monomials, non_central })
    }
}

/// Leading monomial data `K_{−(1+w₀)ν} Π B_{β_k}^{⟨α^∨_{i_k}, −w₀ν⟩} Π E_{γ_k}^{⟨α^∨_{j_k}, ν⟩}`.
pub fn kl_leading_term(
    diagram: &SatakeDiagram,
    word: Option<&AdaptedWord>,
    nu: &Weight,
) -> Result<LeadingTerm, GradedError> {
    if !diagram.in_p_imath(nu) {
        return Err(GradedError::NotInPImath(nu.clone()));
    }
    if !nu.is_dominant() {
        return Err(GradedError::NotDominant(nu.clone()));
    }
    let d = diagram.datum();
    let word = word.cloned().unwrap_or_else(|| diagram.adapted_word());
    let w0nu = diagram.roots().w0().act(d, nu);
    let minus_w0nu = w0nu.neg();
    let b_exponents: Vec<i64> = word.full().0.iter().map(|i| half_int(minus_w0nu.coroot(*i))).collect();
    let e_exponents: Vec<i64> = word.black.0.iter().map(|j| half_int(nu.coroot(*j))).collect();
    let f_weight = word
        .all_roots()
        .iter()
        .zip(&b_exponents)
        .fold(Weight::zero(d.rank()), |acc, (b, c)| acc.sub(&b.to_weight(d).scale(*c)));
    let weight = word.gammas.iter().zip(&e_exponents).fold(f_weight, |acc, (g, c)| acc.add(&g.to_weight(d).scale(*c)));
    Ok(LeadingTerm {
        scalar: "c_nu in ±q^(Z/D)".into(),
        k_weight: nu.add(&w0nu).neg(),
        b_exponents,
        e_exponents,
        weight,
        expected_weight: w0nu.sub(&diagram.w_black().act(d, nu)),
    })
}

fn half_int(h: crate::rootdata::Half) -> i64 {
    h.to_integer().expect("integral weight")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn split_a1_is_trivial() {
        let p = build_s(&catalog::load("split_a1").unwrap(), None);
        assert_eq!(p.s.to_rows(), vec![vec![0]]);
        assert_eq!(p.x_nu(&Weight::fundamental(1, 0)).unwrap(), vec![1]);
        assert_eq!(p.x_nu(&Weight::zero(1)).unwrap(), vec![0]);
        let cert = p.verify_kernel_lemma(7).unwrap();
        assert!(cert.pass && cert.image_size == 1);
    }

    #[test]
    fn diagonal_blocks() {
        let p = build_s(&catalog::load("diagonal_a1xa1").unwrap(), None);
        assert_eq!(p.dim(), 3);
        assert!(p.a.is_zero());
        assert_eq!(p.b.to_rows(), vec![vec![-1, 1]]);
        assert_eq!(p.x_nu(&Weight::from_ints(&[1, 1])).unwrap(), vec![1, 1, 0]);
        assert_eq!(p.x_nu(&Weight::from_ints(&[1, 0])), Err(GradedError::NotInPImath(Weight::from_ints(&[1, 0]))));
    }

    #[test]
    fn level_must_be_coprime() {
        let p = build_s(&catalog::load("split_b2").unwrap(), None);
        assert!(matches!(p.verify_kernel_lemma(4), Err(GradedError::BadLevel { .. })));
        assert!(p.verify_kernel_lemma(3).unwrap().pass);
    }
}
