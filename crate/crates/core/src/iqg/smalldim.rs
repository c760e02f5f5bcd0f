//! The small iquantum group: the image of `U^ι_v` in the fibre of `U_v` over the identity of the
//! Frobenius center.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::qcoeff::CyclotomicScalar;
use crate::satake::SatakeDiagram;
use crate::uq::{Monomial, UqAlgebra, UqElement};

use super::frobenius::check_level;
use super::generators::IQuantum;
use super::IqgError;

type Special = UqElement<CyclotomicScalar>;
type Vector = BTreeMap<Monomial, CyclotomicScalar>;

#[derive(Clone, Debug, Serialize)]
pub struct SmallDimReport {
    pub case: String,
    pub ell: u32,
    pub ambient_dim: usize,
    pub expected_ambient: usize,
    pub dim: usize,
    pub expected: usize,
    pub pbw_monomials: usize,
    pub pbw_independent: bool,
    pub pass: bool,
    pub millis: u128,
}

/// Projection `U_v → 𝔲`: `E_i^ℓ = F_i^ℓ = 0`, `K_μ^ℓ = 1`. Valid when every positive root is simple,
/// so that a letter repeated `ℓ` times in a normal word is a central `ℓ`-th power.
fn reduce(x: &Special, ell: u32) -> Vector {
    let short = |w: &[u8]| w.iter().all(|a| w.iter().filter(|b| *b == a).count() < ell as usize);
    let mut out = Vector::new();
    for (m, c) in x.terms().iter().filter(|(m, _)| short(&m.f) && short(&m.e)) {
        let mut key = m.clone();
        key.k.iter_mut().for_each(|x| *x = x.rem_euclid(ell as i64));
        let e = out.entry(key).or_insert_with(|| CyclotomicScalar::zero(ell));
        *e = e.add(c);
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Row-reduced spanning set with pivot monomials.
struct Echelon {
    rows: Vec<(Monomial, Vector)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn len(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    fn insert(&mut self, mut v: Vector) -> Result<bool, IqgError> {
        for (pivot, row) in &self.rows {
            if let Some(c) = v.get(pivot).cloned() {
                for (m, x) in row {
                    let e = v.entry(m.clone()).or_insert_with(|| CyclotomicScalar::zero(x.ell()));
                    *e = e.sub(&x.mul(&c));
                }
                v.retain(|_, x| !x.is_zero());
            }
        }
        let Some((pivot, lead)) = v.iter().next().map(|(m, c)| (m.clone(), c.clone())) else {
            return Ok(false);
        };
        let inv = lead.inv()?;
        let v: Vector = v.into_iter().map(|(m, c)| (m, c.mul(&inv))).collect();
        for (_, row) in self.rows.iter_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                for (m, x) in &v {
                    let e = row.entry(m.clone()).or_insert_with(|| CyclotomicScalar::zero(x.ell()));
                    *e = e.sub(&x.mul(&c));
                }
                row.retain(|_, x| !x.is_zero());
            }
        }
        self.rows.push((pivot, v));
        Ok(true)
    }
}

fn count_small_words(alg: &UqAlgebra<CyclotomicScalar>, ell: u32) -> usize {
    // Normal words with every letter repeated fewer than ℓ times.
    let n = alg.rank();
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    let mut total = 1;
    loop {
        words = words
            .iter()
            .flat_map(|w| (0..n as u8).map(move |x| [w.clone(), vec![x]].concat()))
            .filter(|w| alg.rewrite_system().is_normal(w) && (0..n as u8).all(|a| w.iter().filter(|&&b| b == a).count() < ell as usize))
            .collect();
        if words.is_empty() {
            return total;
        }
        total += words.len();
    }
}

/// `dim 𝔲^ι = ℓ^{dim 𝔨}` by spanning the image of `U^ι_v` and by independence of PBW monomials.
pub fn small_iqg_dim_check(diagram: &SatakeDiagram, ell: u32) -> Result<SmallDimReport, IqgError> {
    let started = Instant::now();
    check_level(diagram.datum(), ell)?;
    let inv = diagram.invariants();
    if diagram.roots().positive_roots().len() != diagram.rank() {
        return Err(IqgError::Unsupported("identity fibre needs every positive root simple".into()));
    }
    let iq = IQuantum::new(diagram)?;
    let alg = iq.algebra().at_root(ell)?;
    let words = count_small_words(&alg, ell);
    let ambient_dim = words * words * (ell as usize).pow(diagram.rank() as u32);
    let gens: Vec<Special> =
        iq.generators()?.into_iter().map(|g| g.value.specialize(&ell)).collect::<Result<_, _>>()?;

    // Closure of 1 under right multiplication by generators.
    let mut span = Echelon::new();
    span.insert(reduce(&alg.one(), ell))?;
    let mut queue = vec![alg.one()];
    while let Some(x) = queue.pop() {
        for g in &gens {
            let y = alg.mul(&x, g)?;
            let r = reduce(&y, ell);
            if span.insert(r.clone())? {
                queue.push(UqElement::from_terms(r));
            }
        }
    }

    // Ordered monomials: powers of each white B, then K over a basis of P^θ.
    let mut pbw: Vec<Special> = vec![alg.one()];
    for i in diagram.white_nodes() {
        let b = iq.b_generator(i)?.value.specialize::<CyclotomicScalar>(&ell)?;
        pbw = pbw
            .iter()
            .flat_map(|x| (0..ell).map(move |a| (x.clone(), a)))
            .map(|(x, a)| alg.mul(&x, &alg.pow(&b, a)?))
            .collect::<Result<_, _>>()?;
    }
    for mu in iq.p_theta() {
        pbw = pbw
            .iter()
            .flat_map(|x| (0..ell as i64).map(move |c| (x.clone(), c)))
            .map(|(x, c)| alg.mul(&x, &alg.k(&mu.iter().map(|v| v * c).collect::<Vec<_>>())))
            .collect::<Result<_, _>>()?;
    }
    let mut basis = Echelon::new();
    let mut independent = true;
    for x in &pbw {
        independent &= basis.insert(reduce(x, ell))?;
    }
    let expected = (ell as usize).pow(inv.dim_k as u32);
    let expected_ambient = (ell as usize).pow(inv.dim_g as u32);
    let pass = ambient_dim == expected_ambient && span.len() == expected && independent && pbw.len() == expected;
    Ok(SmallDimReport {
        case: diagram.name().unwrap_or("diagram").into(),
        ell,
        ambient_dim,
        expected_ambient,
        dim: span.len(),
        expected,
        pbw_monomials: pbw.len(),
        pbw_independent: independent,
        pass,
        millis: started.elapsed().as_millis(),
    })
}
