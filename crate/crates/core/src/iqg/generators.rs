use std::collections::HashMap;
use std::sync::RwLock;

use serde::Serialize;

use crate::qcoeff::{qbinom, qint, LaurentScalar};
use crate::rootdata::Root;
use crate::satake::SatakeDiagram;
use crate::uq::{UqAlgebra, UqElement, DEFAULT_BOUND};

use super::IqgError;

type Generic = UqElement<LaurentScalar>;

/// Which power of `q^{1/2}` carries the exponent in front of `T_{w•}(E_{τi})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PrefactorBase {
    /// `q^{-⟨α_i^∨, w•α_{τi}⟩/2}`.
    Uniform,
    /// `q_i^{-⟨α_i^∨, w•α_{τi}⟩/2}`.
    NodeScaled,
}

/// Shape of the idivided powers at a white node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DividedCase {
    /// `i = τi = w•i`: products of `B² + (q_i − q_i^{-1})²[k]_i²`.
    Fixed,
    /// `τi ≠ i`: plain powers.
    Swapped,
    /// `i = τi ≠ w•i`: the `Y`/`F` binomial sum.
    Twisted,
}

/// How an element of `U^ι` was produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Generator { node: usize },
    BlackE { node: usize },
    Cartan { weight: Vec<i64> },
    Divided { node: usize, power: u32 },
}

/// An element of `U` together with the certificate that it lies in `U^ι`.
#[derive(Clone, Debug)]
pub struct IqgElement {
    pub value: Generic,
    pub origin: Origin,
}

/// The coideal subalgebra of one Satake diagram, realized inside the generic engine.
#[derive(Debug)]
pub struct IQuantum {
    diagram: SatakeDiagram,
    alg: UqAlgebra<LaurentScalar>,
    base: PrefactorBase,
    divided: RwLock<HashMap<(usize, u32), Generic>>,
}

impl IQuantum {
    pub fn new(diagram: &SatakeDiagram) -> Result<Self, IqgError> {
        Self::with_base(diagram, PrefactorBase::NodeScaled)
    }

    pub fn with_base(diagram: &SatakeDiagram, base: PrefactorBase) -> Result<Self, IqgError> {
        let alg = UqAlgebra::new(diagram.datum(), DEFAULT_BOUND)?;
        Ok(IQuantum { diagram: diagram.clone(), alg, base, divided: RwLock::new(HashMap::new()) })
    }

    pub fn diagram(&self) -> &SatakeDiagram {
        &self.diagram
    }

    pub fn algebra(&self) -> &UqAlgebra<LaurentScalar> {
        &self.alg
    }

    pub fn base(&self) -> PrefactorBase {
        self.base
    }

    pub fn label(&self) -> String {
        self.diagram.name().map(str::to_string).unwrap_or_else(|| "diagram".into())
    }

    fn white(&self, i: usize) -> Result<(), IqgError> {
        if i >= self.diagram.rank() {
            return Err(IqgError::BadNode(i));
        }
        if self.diagram.is_black(i) {
            return Err(IqgError::BlackNode(i));
        }
        Ok(())
    }

    /// `−c_i q^{?}_{(i)}^{-⟨α_i^∨, w•α_{τi}⟩/2} T_{w•}(E_{τi}) K_i^{-1}`.
    pub fn y_element(&self, i: usize) -> Result<Generic, IqgError> {
        self.white(i)?;
        let d = self.diagram.datum();
        let n = d.rank();
        let ti = self.diagram.tau(i);
        let moved = self.diagram.w_black().act_root(d, &Root::simple(n, ti));
        let pairing: i64 = (0..n).map(|k| d.a(i, k) * moved.0[k]).sum();
        let unit = match self.base {
            PrefactorBase::Uniform => 1,
            PrefactorBase::NodeScaled => d.eps(i),
        };
        let e = self.alg.braid_word(self.diagram.w_black().letters(), &self.alg.e(ti))?;
        let c = LaurentScalar::s_pow((-pairing * unit) as i32).scale(-self.diagram.sign(i) as i128);
        Ok(self.alg.mul(&e, &self.alg.k_alpha(i, -1))?.scale(&c))
    }

    /// `B_i = F_i + Y_i` on white nodes and `F_j` on black ones.
    pub fn b_generator(&self, i: usize) -> Result<IqgElement, IqgError> {
        if i >= self.diagram.rank() {
            return Err(IqgError::BadNode(i));
        }
        let value = if self.diagram.is_black(i) { self.alg.f(i) } else { self.alg.f(i).add(&self.y_element(i)?) };
        Ok(IqgElement { value, origin: Origin::Generator { node: i } })
    }

    pub fn divided_case(&self, i: usize) -> Result<DividedCase, IqgError> {
        self.white(i)?;
        let d = self.diagram.datum();
        let n = d.rank();
        if self.diagram.tau(i) != i {
            return Ok(DividedCase::Swapped);
        }
        let a = Root::simple(n, i);
        Ok(if self.diagram.w_black().act_root(d, &a) == a { DividedCase::Fixed } else { DividedCase::Twisted })
    }

    /// `B_i^{[m]}`.
    pub fn idivided_power(&self, i: usize, m: u32) -> Result<IqgElement, IqgError> {
        let origin = Origin::Divided { node: i, power: m };
        if let Some(hit) = self.divided.read().expect("lock").get(&(i, m)) {
            return Ok(IqgElement { value: hit.clone(), origin });
        }
        let eps = self.diagram.datum().eps(i);
        let alg = &self.alg;
        let b = self.b_generator(i)?.value;
        let value = match self.divided_case(i)? {
            DividedCase::Swapped => alg.pow(&b, m)?,
            DividedCase::Fixed => {
                let diff = alg.q_diff(i);
                let b2 = alg.mul(&b, &b)?;
                let mut acc = if m % 2 == 1 { b.clone() } else { alg.one() };
                for r in 1..=(m / 2) as i64 {
                    let k = if m.is_multiple_of(2) { 2 * r - 1 } else { 2 * r };
                    let c = diff.mul(&qint(k, eps as u32));
                    acc = alg.mul(&acc, &b2.add(&alg.scalar(c.mul(&c))))?;
                }
                acc
            }
            DividedCase::Twisted => {
                let y = self.y_element(i)?;
                let f = alg.f(i);
                let mut acc = UqElement::zero();
                for a in 0..=m as i64 {
                    let c = LaurentScalar::q_pow((-a * (m as i64 - a) * eps) as i32).mul(&qbinom(m as i64, a, eps as u32));
                    let term = alg.mul(&alg.pow(&y, a as u32)?, &alg.pow(&f, (m as i64 - a) as u32)?)?;
                    acc = acc.add(&term.scale(&c));
                }
                acc
            }
        };
        self.divided.write().expect("lock").insert((i, m), value.clone());
        Ok(IqgElement { value, origin })
    }

    /// `F_i^ℓ + Y_i^ℓ`, the image of the classical `B_i` under the Frobenius map.
    pub fn frobenius_image(&self, i: usize, ell: u32) -> Result<Generic, IqgError> {
        let y = self.y_element(i)?;
        Ok(self.alg.pow(&self.alg.f(i), ell)?.add(&self.alg.pow(&y, ell)?))
    }

    /// `k_i = K_{α_i − α_{τi}}`, raised to `power`.
    pub fn k_theta(&self, i: usize, power: i64) -> Generic {
        let ti = self.diagram.tau(i);
        let a = self.alg.alpha(i);
        let b = self.alg.alpha(ti);
        let mu: Vec<i64> = a.iter().zip(&b).map(|(x, y)| power * (x - y)).collect();
        self.alg.k(&mu)
    }

    /// A ℤ-basis of `P^θ` in fundamental-weight coordinates.
    pub fn p_theta(&self) -> Vec<Vec<i64>> {
        self.diagram.p_theta_basis().iter().map(|w| w.to_ints().expect("integral basis")).collect()
    }

    /// `B_i` (white), `E_j`, `F_j` (black) and `K_{±μ}` for a basis of `P^θ`.
    pub fn generators(&self) -> Result<Vec<IqgElement>, IqgError> {
        let n = self.diagram.rank();
        let mut out = Vec::new();
        for i in 0..n {
            out.push(self.b_generator(i)?);
            if self.diagram.is_black(i) {
                out.push(IqgElement { value: self.alg.e(i), origin: Origin::BlackE { node: i } });
            }
        }
        for mu in self.p_theta() {
            for sign in [1, -1] {
                let w: Vec<i64> = mu.iter().map(|x| sign * x).collect();
                out.push(IqgElement { value: self.alg.k(&w), origin: Origin::Cartan { weight: w } });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn split_a1_generator() {
        let iq = IQuantum::new(&catalog::load("split_a1").unwrap()).unwrap();
        let u = iq.algebra();
        let want = u.f(0).add(&u.mul(&u.e(0), &u.k_alpha(0, -1)).unwrap().scale(&LaurentScalar::q_pow(-1)));
        assert_eq!(iq.b_generator(0).unwrap().value, want);
    }

    #[test]
    fn quasi_split_a2_generator() {
        let iq = IQuantum::new(&catalog::load("quasisplit_a2").unwrap()).unwrap();
        let u = iq.algebra();
        let want = u.f(0).add(&u.mul(&u.e(1), &u.k_alpha(0, -1)).unwrap().scale(&LaurentScalar::s_pow(1)));
        assert_eq!(iq.b_generator(0).unwrap().value, want);
    }

    #[test]
    fn low_divided_powers() {
        let iq = IQuantum::new(&catalog::load("split_a1").unwrap()).unwrap();
        let u = iq.algebra();
        let b = iq.b_generator(0).unwrap().value;
        assert_eq!(iq.idivided_power(0, 1).unwrap().value, b);
        let d = u.q_diff(0);
        let want = u.mul(&b, &b).unwrap().add(&u.scalar(d.mul(&d)));
        assert_eq!(iq.idivided_power(0, 2).unwrap().value, want);
    }

    #[test]
    fn leading_term_is_f() {
        for name in ["split_a2", "quasisplit_a3", "a3_black2"] {
            let dg = catalog::load(name).unwrap();
            let iq = IQuantum::new(&dg).unwrap();
            let white: Vec<bool> = (0..dg.rank()).map(|k| !dg.is_black(k)).collect();
            for i in dg.white_nodes() {
                let b = iq.b_generator(i).unwrap().value;
                assert_eq!(b.leading_part(&white), iq.algebra().f(i), "{name} {i}");
            }
        }
    }
}
