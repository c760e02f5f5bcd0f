use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cartan::CartanDatum;

/// An element of `½ℤ`, stored as twice its value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Half(pub i64);

impl Half {
    pub fn int(n: i64) -> Self {
        Half(2 * n)
    }

    pub fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl Mul<i64> for Half {
    type Output = Half;
    fn mul(self, k: i64) -> Half {
        Half(self.0 * k)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A weight in fundamental-weight coordinates, `μ = Σ μ_i ω_i` with `μ_i ∈ ½ℤ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct Weight(Vec<Half>);

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight::from_ints(&v)
    }
}

impl From<Weight> for Vec<i64> {
    fn from(w: Weight) -> Self {
        w.0.iter().map(|h| h.to_integer().expect("serialized weights are integral")).collect()
    }
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Half(0); rank])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight(v.iter().map(|x| Half::int(*x)).collect())
    }

    pub fn from_halves(v: Vec<Half>) -> Self {
        Weight(v)
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = Half(2);
        w
    }

    /// `ρ = Σ ω_i`.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![Half(2); rank])
    }

    /// `Σ_j β_j α_j` for `β` in simple-root coordinates.
    pub fn from_root(d: &CartanDatum, beta: &[i64]) -> Self {
        let n = d.rank();
        Weight((0..n).map(|i| Half::int((0..n).map(|j| d.a(i, j) * beta[j]).sum())).collect())
    }

    pub fn simple_root(d: &CartanDatum, j: usize) -> Self {
        Weight((0..d.rank()).map(|i| Half::int(d.a(i, j))).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Half] {
        &self.0
    }

    /// `⟨α_i^∨, μ⟩`.
    pub fn coroot(&self, i: usize) -> Half {
        self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|h| h.0 == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|h| h.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|h| h.0 >= 0)
    }

    /// Integer coordinates, or `None` if some coordinate is a proper half.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|h| h.to_integer()).collect()
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| *a + *b).collect())
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| *a - *b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -*a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| *a * k).collect())
    }

    pub fn halve(&self) -> Weight {
        assert!(self.0.iter().all(|h| h.0 % 2 == 0), "weight is not divisible by 2 in ½P");
        Weight(self.0.iter().map(|h| Half(h.0 / 2)).collect())
    }

    /// `s_i μ = μ − ⟨α_i^∨, μ⟩ α_i`.
    pub fn reflect(&self, d: &CartanDatum, i: usize) -> Weight {
        let c = self.0[i];
        Weight(self.0.iter().enumerate().map(|(j, x)| *x - c * d.a(j, i)).collect())
    }

    /// `(μ, β)` for `β` in simple-root coordinates.
    pub fn pair_root(&self, d: &CartanDatum, beta: &[i64]) -> Half {
        beta.iter()
            .enumerate()
            .fold(Half(0), |acc, (j, b)| acc + self.0[j] * (b * d.eps(j)))
    }

    /// Simple-root coordinates, generally rational.
    pub fn root_coords(&self, d: &CartanDatum) -> Vec<BigRational> {
        let n = d.rank();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    (0..n).map(|j| BigRational::from_integer(BigInt::from(d.a(i, j)))).collect();
                row.push(BigRational::new(BigInt::from(self.0[i].0), BigInt::from(2)));
                row
            })
            .collect();
        for p in 0..n {
            let r = (p..n).find(|&r| !m[r][p].is_zero()).expect("Cartan matrix is invertible");
            m.swap(p, r);
            let piv = m[p][p].clone();
            for x in m[p].iter_mut() {
                *x = &*x / &piv;
            }
            for r in 0..n {
                if r != p && !m[r][p].is_zero() {
                    let f = m[r][p].clone();
                    for c in p..=n {
                        let t = &f * &m[p][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        m.into_iter().map(|row| row[n].clone()).collect()
    }

    /// `(μ, ν)`, a rational number.
    pub fn inner(&self, d: &CartanDatum, o: &Weight) -> BigRational {
        o.root_coords(d)
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (j, c)| {
                acc + c * BigRational::new(BigInt::from(self.0[j].0 * d.eps(j)), BigInt::from(2))
            })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_of_fundamental() {
        let a2 = CartanDatum::from_type("A2").unwrap();
        let w1 = Weight::fundamental(2, 0);
        let alpha1 = Weight::simple_root(&a2, 0);
        assert_eq!(w1.reflect(&a2, 0), w1.sub(&alpha1));
    }

    #[test]
    fn inner_products() {
        let b2 = CartanDatum::from_type("B2").unwrap();
        let a1 = Weight::simple_root(&b2, 0);
        assert_eq!(a1.inner(&b2, &a1), BigRational::from_integer(4.into()));
        let w2 = Weight::fundamental(2, 1);
        assert_eq!(w2.pair_root(&b2, &[0, 1]), Half::int(1));
        assert_eq!(w2.inner(&b2, &Weight::simple_root(&b2, 1)), BigRational::from_integer(1.into()));
    }
}
