//! Reduction of `ℤ[ζ_ℓ]`-valued monomial matrices modulo a split prime.
//!
//! Ranks can only drop under reduction, so a full rank found here is a proof of full rank over
//! the cyclotomic field.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::rep::MonomialMatrix;
use crate::qcoeff::CyclotomicScalar;

pub(crate) struct Reduction {
    p: u64,
    root: u64,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Reduction {
    pub(crate) fn new(ell: u32) -> Self {
        let ell = ell as u64;
        let mut p = (1u64 << 30) / ell * ell + 1;
        while !is_prime(p) {
            p += ell;
        }
        let factors = prime_factors(ell);
        let root = (2..p)
            .map(|a| pow_mod(a, (p - 1) / ell, p))
            .find(|w| factors.iter().all(|r| pow_mod(*w, ell / r, p) != 1))
            .expect("a primitive root of unity exists mod p");
        Reduction { p, root }
    }

    fn big(&self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = ((x % &m) + &m) % &m;
        r.to_u64().expect("reduced residue fits")
    }

    /// Image under `ζ ↦ root`, or `None` when a denominator vanishes mod `p`.
    pub(crate) fn reduce(&self, c: &CyclotomicScalar) -> Option<u64> {
        let mut acc = 0u64;
        let mut w = 1u64;
        for x in c.coeffs() {
            if !x.is_zero() {
                let den = self.big(x.denom());
                if den == 0 {
                    return None;
                }
                let v = mul_mod(self.big(x.numer()), inv_mod(den, self.p), self.p);
                acc = (acc + mul_mod(v, w, self.p)) % self.p;
            }
            w = mul_mod(w, self.root, self.p);
        }
        Some(acc)
    }

    /// Dimension over `𝔽_p` of the algebra generated by the reduced matrices.
    pub(crate) fn span_dim(&self, gens: &[MonomialMatrix], dim: usize) -> Option<usize> {
        let p = self.p;
        let reduced: Vec<(Vec<usize>, Vec<u64>)> = gens
            .iter()
            .map(|g| Some((g.perm().to_vec(), g.diag().iter().map(|c| self.reduce(c)).collect::<Option<Vec<_>>>()?)))
            .collect::<Option<_>>()?;
        if reduced.iter().any(|(_, d)| d.contains(&0)) {
            return None;
        }
        let start = ((0..dim).collect::<Vec<_>>(), vec![1u64; dim]);
        let mut seen: HashSet<(Vec<usize>, Vec<u64>)> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let mut by_perm: BTreeMap<Vec<usize>, Vec<Vec<u64>>> = BTreeMap::new();
        while let Some((perm, diag)) = queue.pop_front() {
            for (gp, gd) in &reduced {
                let mut np = vec![0; dim];
                let mut nd = vec![0; dim];
                for j in 0..dim {
                    np[j] = perm[gp[j]];
                    nd[j] = mul_mod(diag[gp[j]], gd[j], p);
                }
                let s = inv_mod(nd[0], p);
                nd.iter_mut().for_each(|x| *x = mul_mod(*x, s, p));
                if seen.insert((np.clone(), nd.clone())) {
                    queue.push_back((np, nd));
                }
            }
            by_perm.entry(perm).or_default().push(diag);
            if seen.len() > 4 * dim * dim + 16 {
                break;
            }
        }
        Some(by_perm.into_values().map(|rows| rank_mod(rows, p)).sum())
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        let pivot: Vec<u64> = rows[r].iter().map(|x| mul_mod(*x, inv, p)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x = (*x + p - mul_mod(*y, f, p)) % p;
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}
