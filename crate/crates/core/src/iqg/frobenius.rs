use std::time::Instant;

use serde::Serialize;

use crate::qcoeff::{CyclotomicScalar, LaurentScalar};
use crate::rootdata::CartanDatum;
use crate::uq::{UqAlgebra, UqElement};

use super::generators::IQuantum;
use super::IqgError;

type Special = UqElement<CyclotomicScalar>;

/// `ℓ` must be odd, at least 3 and prime to every `ε_i`.
pub fn check_level(datum: &CartanDatum, ell: u32) -> Result<(), IqgError> {
    if ell < 3 || ell.is_multiple_of(2) {
        return Err(IqgError::Level { ell, reason: "must be odd and at least 3".into() });
    }
    if let Some(e) = datum.symmetrizers().iter().find(|e| num_integer::gcd(**e, ell as i64) != 1) {
        return Err(IqgError::Level { ell, reason: format!("shares a factor with symmetrizer {e}") });
    }
    Ok(())
}

/// One verification outcome, as emitted on the report stream.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub case: String,
    pub ell: u32,
    pub pass: bool,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(check: &str, case: &str, ell: u32, started: Instant, diff: Option<String>) -> Self {
        CheckReport {
            check: check.into(),
            case: case.into(),
            ell,
            pass: diff.is_none(),
            millis: started.elapsed().as_millis(),
            detail: None,
            diff,
        }
    }

    pub(crate) fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

/// `B_i^{[kℓ]}` and `(F_i^ℓ + Y_i^ℓ)^k`, stored only once they agree in `U_v`.
#[derive(Clone, Debug)]
pub struct FrobeniusGenerator {
    pub node: usize,
    pub ell: u32,
    pub k: u32,
    pub divided: Special,
    pub image: Special,
}

/// `B_i^{[kℓ]} = (F_i^ℓ + Y_i^ℓ)^k` in `U_v`.
pub fn frobenius_generator_check(iq: &IQuantum, i: usize, ell: u32, k: u32) -> Result<FrobeniusGenerator, IqgError> {
    check_level(iq.diagram().datum(), ell)?;
    let alg = iq.algebra();
    let divided = iq.idivided_power(i, k * ell)?.value.specialize::<CyclotomicScalar>(&ell)?;
    let base = iq.frobenius_image(i, ell)?;
    let image = alg.pow(&base, k)?.specialize::<CyclotomicScalar>(&ell)?;
    if divided != image {
        return Err(IqgError::Mismatch { check: format!("B{}^[{}]", i + 1, k * ell), diff: divided.sub(&image).to_string() });
    }
    Ok(FrobeniusGenerator { node: i, ell, k, divided, image })
}

/// Report form of [`frobenius_generator_check`]; configuration errors still propagate.
pub fn frobenius_report(iq: &IQuantum, i: usize, ell: u32, k: u32) -> Result<CheckReport, IqgError> {
    let t = Instant::now();
    let case = format!("{} node {} k={}", iq.label(), i + 1, k);
    match frobenius_generator_check(iq, i, ell, k) {
        Ok(_) => Ok(CheckReport::new("frobenius", &case, ell, t, None)),
        Err(IqgError::Mismatch { diff, .. }) => Ok(CheckReport::new("frobenius", &case, ell, t, Some(diff))),
        Err(e) => Err(e),
    }
}

/// Frobenius-center generators of `U^ι_v`: `B_i^{[ℓ]}`, `E_j^ℓ`, `F_j^ℓ` (black) and `K_{±ℓμ}`.
pub fn frobenius_center_generators(iq: &IQuantum, ell: u32) -> Result<Vec<(String, UqElement<LaurentScalar>)>, IqgError> {
    let alg = iq.algebra();
    let dg = iq.diagram();
    let mut out = Vec::new();
    for i in 0..dg.rank() {
        if dg.is_black(i) {
            out.push((format!("E{}^{ell}", i + 1), alg.pow(&alg.e(i), ell)?));
            out.push((format!("F{}^{ell}", i + 1), alg.pow(&alg.f(i), ell)?));
        } else {
            out.push((format!("B{}^[{ell}]", i + 1), iq.idivided_power(i, ell)?.value));
        }
    }
    for mu in iq.p_theta() {
        for sign in [1i64, -1] {
            let w: Vec<i64> = mu.iter().map(|x| sign * ell as i64 * x).collect();
            out.push((format!("K{w:?}"), alg.k(&w)));
        }
    }
    Ok(out)
}

/// Every Frobenius-center generator commutes with every generator of `U^ι` in `U_v`.
pub fn centrality_check(iq: &IQuantum, ell: u32) -> Result<CheckReport, IqgError> {
    check_level(iq.diagram().datum(), ell)?;
    let t = Instant::now();
    let spec = iq.algebra().at_root(ell)?;
    let gens: Vec<Special> =
        iq.generators()?.into_iter().map(|g| g.value.specialize(&ell)).collect::<Result<_, _>>()?;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (name, z) in frobenius_center_generators(iq, ell)? {
        let z = z.specialize::<CyclotomicScalar>(&ell)?;
        for (k, x) in gens.iter().enumerate() {
            checked += 1;
            let c = spec.commutator(&z, x)?;
            if !c.is_zero() {
                failures.push(format!("[{name}, generator {k}] = {c}"));
            }
        }
    }
    let diff = if failures.is_empty() { None } else { Some(failures.join("; ")) };
    Ok(CheckReport::new("centrality", &iq.label(), ell, t, diff).with_detail(format!("{checked} commutators")))
}

/// `B_i^{[a]} B_i^{[ℓ−a]} = B_i^{[ℓ]}` and `B_i^{[a]} B_i^{[2ℓ−a]} = B_i^{[2ℓ]}` in `U_v` for `0 ≤ a ≤ ℓ`.
pub fn product_rule_check(iq: &IQuantum, i: usize, ell: u32, doubled: bool) -> Result<CheckReport, IqgError> {
    check_level(iq.diagram().datum(), ell)?;
    let t = Instant::now();
    let alg: &UqAlgebra<LaurentScalar> = iq.algebra();
    let mut failures = Vec::new();
    let tops: &[u32] = if doubled { &[ell, 2 * ell] } else { &[ell] };
    for &top in tops {
        let want = iq.idivided_power(i, top)?.value.specialize::<CyclotomicScalar>(&ell)?;
        for a in 0..=ell {
            let lhs = alg.mul(&iq.idivided_power(i, a)?.value, &iq.idivided_power(i, top - a)?.value)?;
            let lhs = lhs.specialize::<CyclotomicScalar>(&ell)?;
            if lhs != want {
                failures.push(format!("a={a}, top={top}: {}", lhs.sub(&want)));
            }
        }
    }
    let diff = if failures.is_empty() { None } else { Some(failures.join("; ")) };
    Ok(CheckReport::new("product_rule", &format!("{} node {}", iq.label(), i + 1), ell, t, diff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn level_validation() {
        let d = CartanDatum::from_type("B2").unwrap();
        assert!(check_level(&d, 4).is_err());
        assert!(check_level(&d, 3).is_ok());
        assert!(check_level(&CartanDatum::from_type("G2").unwrap(), 3).is_err());
    }

    #[test]
    fn split_a1_frobenius() {
        let iq = IQuantum::new(&catalog::load("split_a1").unwrap()).unwrap();
        for (ell, k) in [(3, 1), (3, 2), (5, 1)] {
            frobenius_generator_check(&iq, 0, ell, k).unwrap();
        }
    }
}
