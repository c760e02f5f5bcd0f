use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::qcoeff::{CyclotomicScalar, FieldScalar, LaurentScalar};
use crate::rootdata::CartanDatum;

use super::element::{pair_word, Monomial, UqElement};
use super::rewrite::{RewriteSystem, Word};
use super::UqError;

/// Largest rank accepted by the engine.
pub const MAX_RANK: usize = 4;

/// A generator of `U`: `E_i`, `F_i` or `K_μ` with `μ` in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    E(usize),
    F(usize),
    K(Vec<i64>),
}

type Straight<S> = Vec<(Vec<i64>, Word, Word, S)>;

/// Product engine for `U` over a coefficient ring `S`; immutable apart from memo tables.
#[derive(Debug)]
pub struct UqAlgebra<S: FieldScalar> {
    datum: CartanDatum,
    ctx: S::Ctx,
    words: RewriteSystem<S>,
    straight: RwLock<HashMap<(Word, Word), Arc<Straight<S>>>>,
    pub(crate) images: RwLock<HashMap<(usize, Letter), UqElement<S>>>,
}

impl UqAlgebra<LaurentScalar> {
    /// Generic engine over `ℚ(q^{1/2})` with Serre completion up to `bound` letters.
    pub fn new(datum: &CartanDatum, bound: usize) -> Result<Self, UqError> {
        if datum.rank() > MAX_RANK {
            return Err(UqError::RankTooLarge(datum.rank()));
        }
        let words = RewriteSystem::serre(datum, bound)?;
        Ok(Self::assemble(datum.clone(), (), words))
    }

    /// The same presentation with coefficients at `q^{1/2} = ṽ`.
    pub fn at_root(&self, ell: u32) -> Result<UqAlgebra<CyclotomicScalar>, UqError> {
        let words = self.words.specialize::<CyclotomicScalar>(&ell)?;
        Ok(UqAlgebra::assemble(self.datum.clone(), ell, words))
    }
}

impl<S: FieldScalar> UqAlgebra<S> {
    fn assemble(datum: CartanDatum, ctx: S::Ctx, words: RewriteSystem<S>) -> Self {
        UqAlgebra { datum, ctx, words, straight: RwLock::new(HashMap::new()), images: RwLock::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn rewrite_system(&self) -> &RewriteSystem<S> {
        &self.words
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<(), UqError> {
        if i < self.rank() {
            Ok(())
        } else {
            Err(UqError::BadNode(i))
        }
    }

    /// `q^{k/2}`.
    pub fn s_pow(&self, k: i64) -> S {
        S::s_pow_in(&self.ctx, k)
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> S {
        S::s_pow_in(&self.ctx, 2 * k)
    }

    pub fn int(&self, c: i64) -> S {
        S::int_in(&self.ctx, c)
    }

    pub fn coeff(&self, x: &LaurentScalar) -> Result<S, UqError> {
        Ok(S::from_generic(&self.ctx, x)?)
    }

    /// `q_i − q_i^{-1}`.
    pub fn q_diff(&self, i: usize) -> S {
        let e = self.datum.eps(i);
        self.q_pow(e).add(&self.q_pow(-e).neg())
    }

    /// `α_i` in fundamental-weight coordinates.
    pub fn alpha(&self, i: usize) -> Vec<i64> {
        (0..self.rank()).map(|j| self.datum.a(j, i)).collect()
    }

    pub fn one(&self) -> UqElement<S> {
        UqElement::from_monomial(Monomial::unit(self.rank()), S::one_in(&self.ctx))
    }

    pub fn scalar(&self, c: S) -> UqElement<S> {
        UqElement::from_monomial(Monomial::unit(self.rank()), c)
    }

    pub fn e(&self, i: usize) -> UqElement<S> {
        let mut m = Monomial::unit(self.rank());
        m.e.push(i as u8);
        UqElement::from_monomial(m, S::one_in(&self.ctx))
    }

    pub fn f(&self, i: usize) -> UqElement<S> {
        let mut m = Monomial::unit(self.rank());
        m.f.push(i as u8);
        UqElement::from_monomial(m, S::one_in(&self.ctx))
    }

    pub fn k(&self, mu: &[i64]) -> UqElement<S> {
        let mut m = Monomial::unit(self.rank());
        m.k = mu.to_vec();
        UqElement::from_monomial(m, S::one_in(&self.ctx))
    }

    /// `K_i^{±1} = K_{±α_i}`.
    pub fn k_alpha(&self, i: usize, power: i64) -> UqElement<S> {
        let a: Vec<i64> = self.alpha(i).iter().map(|x| x * power).collect();
        self.k(&a)
    }

    pub fn letter(&self, l: &Letter) -> Result<UqElement<S>, UqError> {
        match l {
            Letter::E(i) => self.check_node(*i).map(|_| self.e(*i)),
            Letter::F(i) => self.check_node(*i).map(|_| self.f(*i)),
            Letter::K(mu) if mu.len() == self.rank() => Ok(self.k(mu)),
            Letter::K(mu) => Err(UqError::WeightLength { got: mu.len(), want: self.rank() }),
        }
    }

    /// Normal form of an arbitrary word in the generators.
    pub fn normal_form(&self, word: &[Letter]) -> Result<UqElement<S>, UqError> {
        word.iter().try_fold(self.one(), |acc, l| self.mul(&acc, &self.letter(l)?))
    }

    /// `e · f` for an E-word `e` and an F-word `f`, as `Σ c K_μ f' e'` with unreduced subwords.
    fn straighten(&self, e: &[u8], f: &[u8]) -> Arc<Straight<S>> {
        let rank = self.rank();
        if e.is_empty() || f.is_empty() {
            return Arc::new(vec![(vec![0; rank], f.to_vec(), e.to_vec(), S::one_in(&self.ctx))]);
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(hit) = self.straight.read().expect("lock").get(&key) {
            return hit.clone();
        }
        let i = *e.last().expect("nonempty") as usize;
        let rest = &e[..e.len() - 1];
        let mut acc: HashMap<(Vec<i64>, Word, Word), S> = HashMap::new();
        let mut push = |k: Vec<i64>, fw: Word, ew: Word, c: S| {
            let key = (k, fw, ew);
            match acc.get_mut(&key) {
                Some(x) => *x = x.add(&c),
                None => {
                    acc.insert(key, c);
                }
            }
        };
        for (k, fw, ew, c) in self.straighten(rest, f).iter() {
            let mut ew = ew.clone();
            ew.push(i as u8);
            push(k.clone(), fw.clone(), ew, c.clone());
        }
        let alpha = self.alpha(i);
        let diff = self.q_diff(i);
        // (α_i, wt(rest)) for moving K_{±α_i} left past the remaining E-letters.
        let past_e: i64 = rest.iter().map(|&j| self.datum.sym(i, j as usize)).sum();
        for p in (0..f.len()).filter(|&p| f[p] as usize == i) {
            let past_f: i64 = f[..p].iter().map(|&j| self.datum.sym(i, j as usize)).sum();
            let mut g = f[..p].to_vec();
            g.extend_from_slice(&f[p + 1..]);
            let inner = self.straighten(rest, &g);
            for sign in [-1i64, 1] {
                // −α_i term carries +1, +α_i term carries −1.
                let c0 = diff.mul(&self.q_pow(sign * past_f - sign * past_e));
                let c0 = if sign < 0 { c0 } else { c0.neg() };
                for (k, fw, ew, c) in inner.iter() {
                    let kk: Vec<i64> = k.iter().zip(&alpha).map(|(a, b)| a + sign * b).collect();
                    push(kk, fw.clone(), ew.clone(), c0.mul(c));
                }
            }
        }
        let out: Straight<S> = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((k, f, e), c)| (k, f, e, c)).collect();
        let out = Arc::new(out);
        self.straight.write().expect("lock").insert(key, out.clone());
        out
    }

    fn mul_monomials(&self, a: &Monomial, b: &Monomial, c: &S, acc: &mut HashMap<Monomial, S>) -> Result<(), UqError> {
        let d = &self.datum;
        let shift = pair_word(d, &b.k, &a.f) - pair_word(d, &b.k, &a.e);
        let base = c.mul(&self.q_pow(shift));
        for (k, fw, ew, x) in self.straighten(&a.e, &b.f).iter() {
            let kk: Vec<i64> = a.k.iter().zip(&b.k).zip(k).map(|((p, q), r)| p + q + r).collect();
            let scale = base.mul(x).mul(&self.q_pow(pair_word(d, k, &a.f)));
            let fs = self.words.reduce_concat(&self.ctx, &a.f, fw)?;
            let es = self.words.reduce_concat(&self.ctx, ew, &b.e)?;
            for (fword, fc) in &fs {
                let sf = scale.mul(fc);
                for (eword, ec) in &es {
                    let m = Monomial { k: kk.clone(), f: fword.clone(), e: eword.clone() };
                    let v = sf.mul(ec);
                    match acc.get_mut(&m) {
                        Some(y) => *y = y.add(&v),
                        None => {
                            acc.insert(m, v);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, a: &UqElement<S>, b: &UqElement<S>) -> Result<UqElement<S>, UqError> {
        let mut acc = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.mul_monomials(ma, mb, &ca.mul(cb), &mut acc)?;
            }
        }
        Ok(UqElement::from_map(acc))
    }

    pub fn product(&self, factors: &[&UqElement<S>]) -> Result<UqElement<S>, UqError> {
        factors.iter().try_fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn pow(&self, a: &UqElement<S>, n: u32) -> Result<UqElement<S>, UqError> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &UqElement<S>, b: &UqElement<S>) -> Result<UqElement<S>, UqError> {
        Ok(self.mul(a, b)?.sub(&self.mul(b, a)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcoeff::qint;

    fn a(name: &str) -> UqAlgebra<LaurentScalar> {
        UqAlgebra::new(&CartanDatum::from_type(name).unwrap(), 12).unwrap()
    }

    #[test]
    fn ef_in_a1() {
        let u = a("A1");
        let ef = u.mul(&u.e(0), &u.f(0)).unwrap();
        let rhs = u
            .mul(&u.f(0), &u.e(0))
            .unwrap()
            .add(&u.k_alpha(0, -1).scale(&u.q_diff(0)))
            .sub(&u.k_alpha(0, 1).scale(&u.q_diff(0)));
        assert_eq!(ef, rhs);
    }

    #[test]
    fn k_moves_past_e() {
        let u = a("A2");
        let mu = vec![1, 0];
        let ke = u.mul(&u.k(&mu), &u.e(0)).unwrap();
        let ek = u.mul(&u.e(0), &u.k(&mu)).unwrap().scale(&u.q_pow(1));
        assert_eq!(ke, ek);
    }

    #[test]
    fn serre_vanishes_in_a2() {
        let u = a("A2");
        let (e1, e2) = (u.e(0), u.e(1));
        let t1 = u.product(&[&e1, &e1, &e2]).unwrap();
        let t2 = u.product(&[&e1, &e2, &e1]).unwrap().scale(&qint(2, 1));
        let t3 = u.product(&[&e2, &e1, &e1]).unwrap();
        assert!(t1.sub(&t2).add(&t3).is_zero());
    }

    #[test]
    fn mixed_commute() {
        let u = a("B2");
        assert!(u.commutator(&u.e(0), &u.f(1)).unwrap().is_zero());
    }
}
