//! Word rewriting for the positive and negative halves: Serre relations completed in deglex order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::RwLock;

use crate::qcoeff::{qbinom, FieldScalar, LaurentScalar, QError};
use crate::rootdata::CartanDatum;

use super::UqError;

pub type Word = Vec<u8>;

/// Longer words are larger; equal lengths compare letter by letter.
pub fn deglex(a: &[u8], b: &[u8]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// `lead → Σ tail`, every tail word smaller than `lead`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<S> {
    pub lead: Word,
    pub tail: Vec<(Word, S)>,
}

type Poly = BTreeMap<Word, LaurentScalar>;

fn add_term(p: &mut Poly, w: Word, c: LaurentScalar) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x = x.add(&c);
            if x.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c);
        }
    }
}

fn leading(p: &Poly) -> Option<(&Word, &LaurentScalar)> {
    p.iter().max_by(|a, b| deglex(a.0, b.0))
}

/// `Σ_r (-1)^r [n choose r]_i x_i^r x_j x_i^{n-r}` with `n = 1 - a_ij`.
pub fn serre_relation(datum: &CartanDatum, i: usize, j: usize) -> Vec<(Word, LaurentScalar)> {
    let n = 1 - datum.a(i, j);
    let eps = datum.eps(i) as u32;
    (0..=n)
        .map(|r| {
            let mut w = vec![i as u8; r as usize];
            w.push(j as u8);
            w.extend(std::iter::repeat_n(i as u8, (n - r) as usize));
            let c = qbinom(n, r, eps);
            (w, if r % 2 == 0 { c } else { c.neg() })
        })
        .collect()
}

/// Completed rule set over a fixed alphabet with a per-word normal form cache.
#[derive(Debug)]
pub struct RewriteSystem<S> {
    letters: usize,
    rules: Vec<Rule<S>>,
    lead_index: HashMap<Word, usize>,
    lead_lengths: Vec<usize>,
    bound: usize,
    complete: bool,
    cache: RwLock<HashMap<Word, Vec<(Word, S)>>>,
}

impl<S: Clone> Clone for RewriteSystem<S> {
    fn clone(&self) -> Self {
        Self::from_rules(self.letters, self.rules.clone(), self.bound, self.complete)
    }
}

impl<S: Clone> RewriteSystem<S> {
    fn from_rules(letters: usize, mut rules: Vec<Rule<S>>, bound: usize, complete: bool) -> Self {
        rules.sort_by(|a, b| deglex(&a.lead, &b.lead));
        let lead_index = rules.iter().enumerate().map(|(k, r)| (r.lead.clone(), k)).collect();
        let mut lead_lengths: Vec<usize> = rules.iter().map(|r| r.lead.len()).collect();
        lead_lengths.sort_unstable();
        lead_lengths.dedup();
        RewriteSystem { letters, rules, lead_index, lead_lengths, bound, complete, cache: RwLock::new(HashMap::new()) }
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// True when every overlap resolved, so normal forms are valid in all degrees.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn max_lead(&self) -> usize {
        self.lead_lengths.last().copied().unwrap_or(0)
    }

    /// First `(position, rule)` whose lead occurs in `w`.
    pub fn find_lead(&self, w: &[u8]) -> Option<(usize, usize)> {
        for p in 0..w.len() {
            for &len in &self.lead_lengths {
                if p + len > w.len() {
                    break;
                }
                if let Some(&k) = self.lead_index.get(&w[p..p + len]) {
                    return Some((p, k));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_lead(w).is_none()
    }
}

impl<S: FieldScalar> RewriteSystem<S> {
    fn check_length(&self, w: &[u8]) -> Result<(), UqError> {
        if !self.complete && w.len() > self.bound {
            return Err(UqError::BoundExceeded { len: w.len(), bound: self.bound });
        }
        Ok(())
    }

    /// Normal form of a single word.
    pub fn reduce_word(&self, ctx: &S::Ctx, w: &[u8]) -> Result<Vec<(Word, S)>, UqError> {
        if let Some(hit) = self.cache.read().expect("cache lock").get(w) {
            return Ok(hit.clone());
        }
        self.check_length(w)?;
        let out = match self.find_lead(w) {
            None => vec![(w.to_vec(), S::one_in(ctx))],
            Some((p, k)) => {
                let rule = &self.rules[k];
                let mut acc: HashMap<Word, S> = HashMap::new();
                for (t, c) in &rule.tail {
                    let mut v = w[..p].to_vec();
                    v.extend_from_slice(t);
                    v.extend_from_slice(&w[p + rule.lead.len()..]);
                    for (u, d) in self.reduce_word(ctx, &v)? {
                        let x = c.mul(&d);
                        match acc.get_mut(&u) {
                            Some(y) => *y = y.add(&x),
                            None => {
                                acc.insert(u, x);
                            }
                        }
                    }
                }
                let mut out: Vec<(Word, S)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                out.sort_by(|a, b| deglex(&a.0, &b.0));
                out
            }
        };
        self.cache.write().expect("cache lock").insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// Normal form of the concatenation `a·b`.
    pub fn reduce_concat(&self, ctx: &S::Ctx, a: &[u8], b: &[u8]) -> Result<Vec<(Word, S)>, UqError> {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        self.reduce_word(ctx, &w)
    }
}

impl RewriteSystem<LaurentScalar> {
    /// The same rules with coefficients carried into another scalar ring.
    pub fn specialize<T: FieldScalar>(&self, ctx: &T::Ctx) -> Result<RewriteSystem<T>, QError> {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                let tail = r
                    .tail
                    .iter()
                    .map(|(w, c)| Ok((w.clone(), T::from_generic(ctx, c)?)))
                    .collect::<Result<Vec<_>, QError>>()?;
                Ok(Rule { lead: r.lead.clone(), tail })
            })
            .collect::<Result<Vec<_>, QError>>()?;
        Ok(RewriteSystem::from_rules(self.letters, rules, self.bound, self.complete))
    }

    /// Serre relations of `datum`, completed up to overlap length `bound`.
    pub fn serre(datum: &CartanDatum, bound: usize) -> Result<Self, UqError> {
        let n = datum.rank();
        let mut pending: Vec<Poly> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut p = Poly::new();
                    for (w, c) in serre_relation(datum, i, j) {
                        add_term(&mut p, w, c);
                    }
                    pending.push(p);
                }
            }
        }
        let mut rules: Vec<Rule<LaurentScalar>> = Vec::new();
        let mut seen_pairs: HashSet<(Word, Word, usize)> = HashSet::new();
        let mut skipped: Vec<(Word, Word)> = Vec::new();
        // Smallest leading word first keeps intermediate rules short.
        while let Some(pos) = (0..pending.len()).min_by(|&x, &y| {
            let lx = pending[x].keys().max_by(|a, b| deglex(a, b));
            let ly = pending[y].keys().max_by(|a, b| deglex(a, b));
            match (lx, ly) {
                (Some(a), Some(b)) => deglex(a, b),
                (a, b) => a.is_some().cmp(&b.is_some()),
            }
        }) {
            let p = pending.swap_remove(pos);
            let p = reduce_poly(&rules, p);
            let Some((lead, lc)) = leading(&p) else { continue };
            let lead = lead.clone();
            let inv = lc.inv().map_err(UqError::Scalar)?;
            let tail: Vec<(Word, LaurentScalar)> =
                p.iter().filter(|(w, _)| **w != lead).map(|(w, c)| (w.clone(), c.mul(&inv).neg())).collect();
            let new = Rule { lead: lead.clone(), tail };
            // Older rules whose lead contains the new lead go back to the queue.
            let (keep, drop): (Vec<_>, Vec<_>) = rules.into_iter().partition(|r| !contains(&r.lead, &lead));
            rules = keep;
            for r in drop {
                pending.push(rule_poly(&r));
            }
            rules.push(new);
            rules = rules
                .iter()
                .enumerate()
                .map(|(k, r)| {
                    let others: Vec<Rule<LaurentScalar>> =
                        rules.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, r)| r.clone()).collect();
                    let mut t = Poly::new();
                    for (w, c) in &r.tail {
                        add_term(&mut t, w.clone(), c.clone());
                    }
                    let t = reduce_poly(&others, t);
                    Rule { lead: r.lead.clone(), tail: t.into_iter().collect() }
                })
                .collect();
            for a in &rules {
                for b in &rules {
                    for k in 1..a.lead.len().min(b.lead.len()) {
                        if a.lead[a.lead.len() - k..] != b.lead[..k] {
                            continue;
                        }
                        let key = (a.lead.clone(), b.lead.clone(), k);
                        if !seen_pairs.insert(key) {
                            continue;
                        }
                        if a.lead.len() + b.lead.len() - k > bound {
                            skipped.push((a.lead.clone(), b.lead.clone()));
                            continue;
                        }
                        pending.push(overlap_poly(a, b, k));
                    }
                }
            }
        }
        // Only ambiguities between surviving rules count against completeness.
        let complete = skipped.iter().all(|(a, b)| !(rules.iter().any(|r| &r.lead == a) && rules.iter().any(|r| &r.lead == b)));
        Ok(RewriteSystem::from_rules(n, rules, bound, complete))
    }
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

fn rule_poly(r: &Rule<LaurentScalar>) -> Poly {
    let mut p = Poly::new();
    add_term(&mut p, r.lead.clone(), LaurentScalar::one());
    for (w, c) in &r.tail {
        add_term(&mut p, w.clone(), c.neg());
    }
    p
}

/// `tail_a · b_suffix − a_prefix · tail_b` for the overlap `a = xy`, `b = yz`, `|y| = k`.
fn overlap_poly(a: &Rule<LaurentScalar>, b: &Rule<LaurentScalar>, k: usize) -> Poly {
    let suffix = &b.lead[k..];
    let prefix = &a.lead[..a.lead.len() - k];
    let mut p = Poly::new();
    for (w, c) in &a.tail {
        let mut v = w.clone();
        v.extend_from_slice(suffix);
        add_term(&mut p, v, c.clone());
    }
    for (w, c) in &b.tail {
        let mut v = prefix.to_vec();
        v.extend_from_slice(w);
        add_term(&mut p, v, c.neg());
    }
    p
}

/// Full reduction of a polynomial by a rule list.
fn reduce_poly(rules: &[Rule<LaurentScalar>], mut p: Poly) -> Poly {
    let mut out = Poly::new();
    while let Some(w) = p.keys().max_by(|a, b| deglex(a, b)).cloned() {
        let c = p.remove(&w).expect("present");
        let hit = (0..w.len()).find_map(|pos| {
            rules
                .iter()
                .find(|r| pos + r.lead.len() <= w.len() && w[pos..pos + r.lead.len()] == r.lead[..])
                .map(|r| (pos, r))
        });
        match hit {
            None => add_term(&mut out, w, c),
            Some((pos, r)) => {
                for (t, d) in &r.tail {
                    let mut v = w[..pos].to_vec();
                    v.extend_from_slice(t);
                    v.extend_from_slice(&w[pos + r.lead.len()..]);
                    add_term(&mut p, v, c.mul(d));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_needs_no_new_rules() {
        let d = CartanDatum::from_type("A2").unwrap();
        let rs = RewriteSystem::serre(&d, 12).unwrap();
        assert!(rs.is_complete());
        let leads: Vec<Word> = rs.rules().iter().map(|r| r.lead.clone()).collect();
        assert_eq!(leads, vec![vec![1, 0, 0], vec![1, 1, 0]]);
    }

    #[test]
    fn commuting_letters_sort() {
        let d = CartanDatum::from_type("A1xA1").unwrap();
        let rs = RewriteSystem::serre(&d, 12).unwrap();
        let nf = rs.reduce_word(&(), &[1, 0, 1, 0]).unwrap();
        assert_eq!(nf, vec![(vec![0, 0, 1, 1], LaurentScalar::one())]);
    }
}
