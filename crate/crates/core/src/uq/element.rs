use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::qcoeff::{FieldScalar, LaurentScalar, Scalar};
use crate::rootdata::CartanDatum;

use super::rewrite::Word;
use super::UqError;

/// `K_μ · F_{f_1}⋯F_{f_a} · E_{e_1}⋯E_{e_b}`; `k` holds `μ` in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub k: Vec<i64>,
    pub f: Word,
    pub e: Word,
}

impl Monomial {
    pub fn unit(rank: usize) -> Self {
        Monomial { k: vec![0; rank], f: Vec::new(), e: Vec::new() }
    }

    /// Q-degree in simple-root coordinates.
    pub fn degree(&self, rank: usize) -> Vec<i64> {
        let mut d = vec![0; rank];
        self.e.iter().for_each(|&i| d[i as usize] += 1);
        self.f.iter().for_each(|&i| d[i as usize] -= 1);
        d
    }
}

fn join(v: impl Iterator<Item = String>) -> String {
    v.collect::<Vec<_>>().join(",")
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "K[{}] F[{}] E[{}]",
            join(self.k.iter().map(|x| x.to_string())),
            join(self.f.iter().map(|x| (x + 1).to_string())),
            join(self.e.iter().map(|x| (x + 1).to_string()))
        )
    }
}

/// Finite linear combination of normal monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct UqElement<S> {
    pub(crate) terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> Default for UqElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> UqElement<S> {
    pub fn zero() -> Self {
        UqElement { terms: BTreeMap::new() }
    }

    pub fn from_monomial(m: Monomial, c: S) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        UqElement { terms }
    }

    pub fn from_terms(terms: BTreeMap<Monomial, S>) -> Self {
        UqElement { terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub(crate) fn from_map(map: HashMap<Monomial, S>) -> Self {
        UqElement { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&S> {
        self.terms.get(m)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            match terms.get_mut(m) {
                Some(x) => {
                    *x = x.add(c);
                    if x.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        UqElement { terms }
    }

    pub fn neg(&self) -> Self {
        UqElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UqElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    /// Distinct Q-degrees of the terms.
    pub fn degrees(&self, rank: usize) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self.terms.keys().map(|m| m.degree(rank)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The single Q-degree of a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, rank: usize) -> Option<Vec<i64>> {
        match self.degrees(rank).as_slice() {
            [d] => Some(d.clone()),
            _ => None,
        }
    }

    /// Filtration degree: the largest `−ht^ι` of a term's weight, counting only `white` nodes.
    pub fn hi_degree(&self, white: &[bool]) -> i64 {
        self.terms
            .keys()
            .map(|m| {
                let d = m.degree(white.len());
                -d.iter().zip(white).filter(|(_, w)| **w).map(|(x, _)| x).sum::<i64>()
            })
            .max()
            .unwrap_or(0)
            .max(0)
    }

    /// Terms whose weight has the largest `−ht^ι`.
    pub fn leading_part(&self, white: &[bool]) -> Self {
        let top = self.hi_degree(white);
        let ht = |m: &Monomial| -> i64 {
            -m.degree(white.len()).iter().zip(white).filter(|(_, w)| **w).map(|(x, _)| x).sum::<i64>()
        };
        UqElement { terms: self.terms.iter().filter(|(m, _)| ht(m) == top).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }
}

impl UqElement<LaurentScalar> {
    /// Coefficient-wise image in another scalar ring; a pole names the offending monomial.
    pub fn specialize<T: FieldScalar>(&self, ctx: &T::Ctx) -> Result<UqElement<T>, UqError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let x = T::from_generic(ctx, c).map_err(|_| UqError::Pole { monomial: m.to_string() })?;
            if !x.is_zero() {
                terms.insert(m.clone(), x);
            }
        }
        Ok(UqElement { terms })
    }
}

/// `q^{(μ, Σ α_{w_t})}` exponent in units of `q`.
pub(crate) fn pair_word(datum: &CartanDatum, mu: &[i64], w: &[u8]) -> i64 {
    w.iter().map(|&j| datum.eps(j as usize) * mu[j as usize]).sum()
}

impl<S: Scalar> fmt::Display for UqElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}) * {m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn parse_list(s: &str, tag: char, one_based: bool) -> Result<Vec<i64>, UqError> {
    let bad = || UqError::Parse(s.to_string());
    let inner = s.trim().strip_prefix(tag).and_then(|r| r.strip_prefix('[')).and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<i64>().map(|x| if one_based { x - 1 } else { x }).map_err(|_| bad()))
        .collect()
}

impl FromStr for Monomial {
    type Err = UqError;
    fn from_str(s: &str) -> Result<Self, UqError> {
        let bad = || UqError::Parse(s.to_string());
        let ki = s.find("K[").ok_or_else(bad)?;
        let fi = s.find("F[").ok_or_else(bad)?;
        let ei = s.find("E[").ok_or_else(bad)?;
        let k = parse_list(&s[ki..fi], 'K', false)?;
        let word = |v: Vec<i64>| -> Result<Word, UqError> {
            v.into_iter().map(|x| u8::try_from(x).map_err(|_| bad())).collect()
        };
        let f = word(parse_list(&s[fi..ei], 'F', true)?)?;
        let e = word(parse_list(&s[ei..], 'E', true)?)?;
        Ok(Monomial { k, f, e })
    }
}

impl FromStr for UqElement<LaurentScalar> {
    type Err = UqError;
    /// Inverse of `Display`: terms `(coeff) * K[..] F[..] E[..]` joined by ` + `.
    fn from_str(s: &str) -> Result<Self, UqError> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        let mut rest = s;
        while !rest.is_empty() {
            let bad = || UqError::Parse(rest.to_string());
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let mut depth = 1usize;
            let close = body
                .char_indices()
                .find(|&(_, ch)| {
                    match ch {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .map(|(p, _)| p)
                .ok_or_else(bad)?;
            let coeff: LaurentScalar = body[..close].parse().map_err(|_| bad())?;
            let after = body[close + 1..].trim_start().strip_prefix('*').ok_or_else(bad)?;
            let end = after.find(" + (").unwrap_or(after.len());
            let m: Monomial = after[..end].trim().parse()?;
            terms.insert(m, coeff);
            rest = after[end..].strip_prefix(" + ").unwrap_or("");
        }
        Ok(UqElement { terms })
    }
}
