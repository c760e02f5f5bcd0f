//! Lusztig's symmetries `T_i = T''_{i,+1}`, entered on the rescaled generators and transported to
//! `E_i`, `F_i`.

use crate::qcoeff::{qfact, FieldScalar, LaurentScalar};
use crate::rootdata::{RootSystem, WeylWord};

use super::algebra::{Letter, UqAlgebra};
use super::element::{Monomial, UqElement};
use super::UqError;

/// `q_i^{1/2}(q_i − q_i^{-1})`, so that the rescaled `F̃_i = F_i / f_scale(i)`.
fn f_scale(eps: i64) -> LaurentScalar {
    LaurentScalar::s_pow(eps as i32).mul(&LaurentScalar::q_pow(eps as i32).sub(&LaurentScalar::q_pow(-eps as i32)))
}

/// `q_i^{-1/2}(q_i^{-1} − q_i)`, so that `Ẽ_i = E_i / e_scale(i)`.
fn e_scale(eps: i64) -> LaurentScalar {
    LaurentScalar::s_pow(-eps as i32).mul(&LaurentScalar::q_pow(-eps as i32).sub(&LaurentScalar::q_pow(eps as i32)))
}

impl<S: FieldScalar> UqAlgebra<S> {
    /// `T_i` of a single generator letter.
    fn image_of(&self, i: usize, l: &Letter) -> Result<UqElement<S>, UqError> {
        let key = (i, l.clone());
        if let Some(hit) = self.images.read().expect("lock").get(&key) {
            return Ok(hit.clone());
        }
        let d = self.datum().clone();
        let ei = d.eps(i);
        let out = match l {
            Letter::K(mu) => {
                let mut nu = mu.clone();
                let a = self.alpha(i);
                nu.iter_mut().zip(&a).for_each(|(x, y)| *x -= mu[i] * y);
                self.k(&nu)
            }
            Letter::E(j) if *j == i => self.mul(&self.f(i), &self.k_alpha(i, 1))?.scale(&self.q_pow(-ei)),
            Letter::F(j) if *j == i => self.mul(&self.k_alpha(i, -1), &self.e(i))?.scale(&self.q_pow(ei)),
            Letter::E(j) => {
                // Σ_r (−1)^r q_i^{−r} Ẽ_i^{(n−r)} Ẽ_j Ẽ_i^{(r)}, n = −a_ij.
                let n = -d.a(i, *j);
                let mut acc = UqElement::zero();
                for r in 0..=n {
                    let s = n - r;
                    let den = qfact(r, ei as u32)?.mul(&qfact(s, ei as u32)?).mul(&e_scale(ei).pow(n as i32)?);
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let c = LaurentScalar::q_pow((-r * ei) as i32).scale(sign).div(&den)?;
                    let w = self.product(&[&self.pow(&self.e(i), s as u32)?, &self.e(*j), &self.pow(&self.e(i), r as u32)?])?;
                    acc = acc.add(&w.scale(&self.coeff(&c)?));
                }
                acc
            }
            Letter::F(j) => {
                // Σ_r (−1)^r q_i^{r} F̃_i^{(r)} F̃_j F̃_i^{(n−r)}.
                let n = -d.a(i, *j);
                let mut acc = UqElement::zero();
                for r in 0..=n {
                    let s = n - r;
                    let den = qfact(r, ei as u32)?.mul(&qfact(s, ei as u32)?).mul(&f_scale(ei).pow(n as i32)?);
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let c = LaurentScalar::q_pow((r * ei) as i32).scale(sign).div(&den)?;
                    let w = self.product(&[&self.pow(&self.f(i), r as u32)?, &self.f(*j), &self.pow(&self.f(i), s as u32)?])?;
                    acc = acc.add(&w.scale(&self.coeff(&c)?));
                }
                acc
            }
        };
        self.images.write().expect("lock").insert(key, out.clone());
        Ok(out)
    }

    fn braid_monomial(&self, i: usize, m: &Monomial) -> Result<UqElement<S>, UqError> {
        let mut acc = self.image_of(i, &Letter::K(m.k.clone()))?;
        for &j in &m.f {
            acc = self.mul(&acc, &self.image_of(i, &Letter::F(j as usize))?)?;
        }
        for &j in &m.e {
            acc = self.mul(&acc, &self.image_of(i, &Letter::E(j as usize))?)?;
        }
        Ok(acc)
    }

    /// `T_i(x)`.
    pub fn braid_t(&self, i: usize, x: &UqElement<S>) -> Result<UqElement<S>, UqError> {
        self.check_node(i)?;
        let mut acc = UqElement::zero();
        for (m, c) in x.terms() {
            acc = acc.add(&self.braid_monomial(i, m)?.scale(c));
        }
        Ok(acc)
    }

    /// `T_{i_1} ⋯ T_{i_k}(x)`.
    pub fn braid_word(&self, word: &[usize], x: &UqElement<S>) -> Result<UqElement<S>, UqError> {
        word.iter().rev().try_fold(x.clone(), |acc, &i| self.braid_t(i, &acc))
    }

    /// `(F_{β_k}, E_{β_k})` for the `k`-th letter (0-based) of a reduced word.
    pub fn root_vector(&self, word: &WeylWord, k: usize) -> Result<(UqElement<S>, UqElement<S>), UqError> {
        word.validate(self.datum())?;
        if !word.is_reduced(self.datum()) {
            return Err(UqError::NotReduced);
        }
        let letters = word.letters();
        let i = *letters.get(k).ok_or(UqError::BadNode(k))?;
        let prefix = &letters[..k];
        Ok((self.braid_word(prefix, &self.f(i))?, self.braid_word(prefix, &self.e(i))?))
    }

    /// Root vectors along a reduced word, in the order of the word.
    pub fn root_vectors(&self, word: &WeylWord) -> Result<Vec<(UqElement<S>, UqElement<S>)>, UqError> {
        (0..word.len()).map(|k| self.root_vector(word, k)).collect()
    }

    /// Positive roots in the convex order of `word`, as simple-root coordinates.
    pub fn convex_roots(&self, word: &WeylWord) -> Result<Vec<Vec<i64>>, UqError> {
        let rs = RootSystem::new(self.datum().clone());
        Ok(rs.convex_order(word)?.into_iter().map(|r| r.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanDatum;

    #[test]
    fn rescaled_e_goes_to_minus_f_k() {
        let u = UqAlgebra::new(&CartanDatum::from_type("A1").unwrap(), 12).unwrap();
        // T(Ẽ) = −F̃ K, i.e. T(E) = q^{-1} F K.
        let t = u.braid_t(0, &u.e(0)).unwrap();
        let want = u.mul(&u.f(0), &u.k_alpha(0, 1)).unwrap().scale(&u.q_pow(-1));
        assert_eq!(t, want);
    }

    #[test]
    fn a2_root_vector_weight() {
        let u = UqAlgebra::new(&CartanDatum::from_type("A2").unwrap(), 12).unwrap();
        let w = WeylWord(vec![0, 1, 0]);
        let (f, e) = u.root_vector(&w, 1).unwrap();
        assert_eq!(f.homogeneous_degree(2), Some(vec![-1, -1]));
        assert_eq!(e.homogeneous_degree(2), Some(vec![1, 1]));
        let (f0, _) = u.root_vector(&w, 0).unwrap();
        assert_eq!(f0, u.f(0));
    }
}
