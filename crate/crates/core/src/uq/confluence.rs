//! Overlap resolution for the full presentation: Serre rules on both halves, `E_i F_j`, `K`-commutation.

use serde::Serialize;

use crate::qcoeff::FieldScalar;

use super::algebra::{Letter, UqAlgebra};
use super::element::UqElement;
use super::rewrite::serre_relation;
use super::UqError;

type FullWord = Vec<Letter>;

struct FullRule<S> {
    lead: FullWord,
    tail: Vec<(FullWord, S)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfluenceReport {
    pub cartan: String,
    pub bound: usize,
    pub word_rules: usize,
    pub complete: bool,
    pub overlaps: usize,
    pub skipped: usize,
    pub relations: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

fn unit(rank: usize, j: usize, s: i64) -> Letter {
    let mut v = vec![0; rank];
    v[j] = s;
    Letter::K(v)
}

fn k_tokens(mu: &[i64]) -> FullWord {
    let rank = mu.len();
    mu.iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat_n(unit(rank, j, c.signum()), c.unsigned_abs() as usize))
        .collect()
}

fn token(l: &Letter) -> Option<(usize, i64)> {
    match l {
        Letter::K(v) => v.iter().enumerate().find(|(_, c)| **c != 0).map(|(j, c)| (j, *c)),
        _ => None,
    }
}

fn full_rules<S: FieldScalar>(alg: &UqAlgebra<S>) -> Vec<FullRule<S>> {
    let n = alg.rank();
    let d = alg.datum();
    let one = || alg.int(1);
    let mut out = Vec::new();
    for r in alg.rewrite_system().rules() {
        for wrap in [Letter::E as fn(usize) -> Letter, Letter::F] {
            out.push(FullRule {
                lead: r.lead.iter().map(|&x| wrap(x as usize)).collect(),
                tail: r.tail.iter().map(|(w, c)| (w.iter().map(|&x| wrap(x as usize)).collect(), c.clone())).collect(),
            });
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut tail = vec![(vec![Letter::F(j), Letter::E(i)], one())];
            if i == j {
                let a = alg.alpha(i);
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                tail.push((k_tokens(&neg), alg.q_diff(i)));
                tail.push((k_tokens(&a), alg.q_diff(i).neg()));
            }
            out.push(FullRule { lead: vec![Letter::E(i), Letter::F(j)], tail });
        }
    }
    for i in 0..n {
        for j in 0..n {
            for s in [-1i64, 1] {
                let k = unit(n, j, s);
                let ex = if i == j { s * d.eps(i) } else { 0 };
                out.push(FullRule { lead: vec![Letter::E(i), k.clone()], tail: vec![(vec![k.clone(), Letter::E(i)], alg.q_pow(-ex))] });
                out.push(FullRule { lead: vec![Letter::F(i), k.clone()], tail: vec![(vec![k.clone(), Letter::F(i)], alg.q_pow(ex))] });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for s in [-1i64, 1] {
                for t in [-1i64, 1] {
                    let (a, b) = (unit(n, j, s), unit(n, i, t));
                    if j > i {
                        out.push(FullRule { lead: vec![a.clone(), b.clone()], tail: vec![(vec![b, a], one())] });
                    } else if j == i && s != t {
                        out.push(FullRule { lead: vec![a, b], tail: vec![(Vec::new(), one())] });
                    }
                }
            }
        }
    }
    out
}

fn nf_sum<S: FieldScalar>(alg: &UqAlgebra<S>, parts: &[(FullWord, S)]) -> Result<UqElement<S>, UqError> {
    parts.iter().try_fold(UqElement::zero(), |acc, (w, c)| Ok(acc.add(&alg.normal_form(w)?.scale(c))))
}

fn show(w: &[Letter]) -> String {
    w.iter()
        .map(|l| match l {
            Letter::E(i) => format!("E{}", i + 1),
            Letter::F(i) => format!("F{}", i + 1),
            Letter::K(_) => {
                let (j, s) = token(l).expect("unit token");
                format!("K{}{}", j + 1, if s > 0 { "+" } else { "-" })
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks every ambiguity of the rewriting system up to `bound` letters, and that both sides of
/// every defining relation share a normal form.
pub fn confluence_suite<S: FieldScalar>(alg: &UqAlgebra<S>, bound: usize) -> Result<ConfluenceReport, UqError> {
    let rules = full_rules(alg);
    let mut failures = Vec::new();
    let (mut overlaps, mut skipped) = (0, 0);
    for a in &rules {
        for b in &rules {
            for k in 1..a.lead.len().min(b.lead.len()) {
                if a.lead[a.lead.len() - k..] != b.lead[..k] {
                    continue;
                }
                let mut word = a.lead.clone();
                word.extend_from_slice(&b.lead[k..]);
                if word.len() > bound {
                    skipped += 1;
                    continue;
                }
                overlaps += 1;
                let left: Vec<(FullWord, S)> = a
                    .tail
                    .iter()
                    .map(|(t, c)| {
                        let mut w = t.clone();
                        w.extend_from_slice(&b.lead[k..]);
                        (w, c.clone())
                    })
                    .collect();
                let head = &a.lead[..a.lead.len() - k];
                let right: Vec<(FullWord, S)> = b
                    .tail
                    .iter()
                    .map(|(t, c)| {
                        let mut w = head.to_vec();
                        w.extend_from_slice(t);
                        (w, c.clone())
                    })
                    .collect();
                if nf_sum(alg, &left)? != nf_sum(alg, &right)? {
                    failures.push(format!("overlap {}", show(&word)));
                }
            }
        }
    }
    let relations = relation_failures(alg, &mut failures)?;
    let words = alg.rewrite_system();
    Ok(ConfluenceReport {
        cartan: label(alg),
        bound,
        word_rules: words.rules().len(),
        complete: words.is_complete(),
        overlaps,
        skipped,
        relations,
        pass: failures.is_empty() && words.is_complete(),
        failures,
    })
}

type Relation<S> = (String, Vec<(FullWord, S)>);

/// Defining relations as formal sums of letter words.
fn defining_relations<S: FieldScalar>(alg: &UqAlgebra<S>) -> Result<Vec<Relation<S>>, UqError> {
    let n = alg.rank();
    let d = alg.datum();
    let one = || alg.int(1);
    let mut out = Vec::new();
    for j in 0..n {
        let (w, winv) = (unit(n, j, 1), unit(n, j, -1));
        out.push((format!("K{0} K{0}^-1 = 1", j + 1), vec![(vec![w.clone(), winv], one()), (Vec::new(), one().neg())]));
        for i in 0..n {
            let ex = if i == j { d.eps(i) } else { 0 };
            out.push((
                format!("K_w{} E{}", j + 1, i + 1),
                vec![(vec![w.clone(), Letter::E(i)], one()), (vec![Letter::E(i), w.clone()], alg.q_pow(ex).neg())],
            ));
            out.push((
                format!("K_w{} F{}", j + 1, i + 1),
                vec![(vec![w.clone(), Letter::F(i)], one()), (vec![Letter::F(i), w.clone()], alg.q_pow(-ex).neg())],
            ));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut rel = vec![(vec![Letter::E(i), Letter::F(j)], one()), (vec![Letter::F(j), Letter::E(i)], one().neg())];
            if i == j {
                let a = alg.alpha(i);
                rel.push((vec![Letter::K(a.iter().map(|x| -x).collect())], alg.q_diff(i).neg()));
                rel.push((vec![Letter::K(a)], alg.q_diff(i)));
            }
            out.push((format!("[E{}, F{}]", i + 1, j + 1), rel));
            if i != j {
                for (tag, wrap) in [("E", Letter::E as fn(usize) -> Letter), ("F", Letter::F)] {
                    let rel = serre_relation(d, i, j)
                        .into_iter()
                        .map(|(w, c)| Ok((w.iter().map(|&x| wrap(x as usize)).collect(), alg.coeff(&c)?)))
                        .collect::<Result<Vec<_>, UqError>>()?;
                    out.push((format!("serre {tag} ({}, {})", i + 1, j + 1), rel));
                }
            }
        }
    }
    Ok(out)
}

/// `Σ c · image(l_1)⋯image(l_k)` over the words of a relation.
fn evaluate<S: FieldScalar>(
    alg: &UqAlgebra<S>,
    rel: &[(FullWord, S)],
    image: &dyn Fn(&Letter) -> Result<UqElement<S>, UqError>,
) -> Result<UqElement<S>, UqError> {
    let mut acc = UqElement::zero();
    for (w, c) in rel {
        let mut term = alg.one();
        for l in w {
            term = alg.mul(&term, &image(l)?)?;
        }
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}

/// Defining relations checked through normal forms; returns how many were checked.
fn relation_failures<S: FieldScalar>(alg: &UqAlgebra<S>, failures: &mut Vec<String>) -> Result<usize, UqError> {
    let rels = defining_relations(alg)?;
    for (name, rel) in &rels {
        if !evaluate(alg, rel, &|l| alg.letter(l))?.is_zero() {
            failures.push(name.clone());
        }
    }
    Ok(rels.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    pub cartan: String,
    pub relations_checked: usize,
    pub braid_checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Order of `s_i s_j` from `a_ij a_ji`.
pub fn coxeter_exponent(a_ij: i64, a_ji: i64) -> Option<usize> {
    match a_ij * a_ji {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// Each `T_i` kills every defining relation, and the `T_i` satisfy the braid relations on generators.
pub fn braid_suite<S: FieldScalar>(alg: &UqAlgebra<S>) -> Result<BraidReport, UqError> {
    let n = alg.rank();
    let d = alg.datum();
    let rels = defining_relations(alg)?;
    let mut failures = Vec::new();
    let mut relations_checked = 0;
    for i in 0..n {
        for (name, rel) in &rels {
            relations_checked += 1;
            if !evaluate(alg, rel, &|l| alg.braid_t(i, &alg.letter(l)?))?.is_zero() {
                failures.push(format!("T{} on {}", i + 1, name));
            }
        }
    }
    let mut gens: Vec<UqElement<S>> = (0..n).flat_map(|i| [alg.e(i), alg.f(i)]).collect();
    gens.extend((0..n).map(|j| alg.k(&unit_weight(n, j))));
    let mut braid_checked = 0;
    for i in 0..n {
        for j in i + 1..n {
            let m = coxeter_exponent(d.a(i, j), d.a(j, i)).ok_or(UqError::BadNode(j))?;
            let left: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { i } else { j }).collect();
            let right: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { j } else { i }).collect();
            for g in &gens {
                braid_checked += 1;
                if alg.braid_word(&left, g)? != alg.braid_word(&right, g)? {
                    failures.push(format!("braid ({}, {}) on {}", i + 1, j + 1, g));
                }
            }
        }
    }
    Ok(BraidReport {
        cartan: label(alg),
        relations_checked,
        braid_checked,
        pass: failures.is_empty(),
        failures,
    })
}

fn unit_weight(rank: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[j] = 1;
    v
}

fn label<S: FieldScalar>(alg: &UqAlgebra<S>) -> String {
    alg.datum().label().map(str::to_string).unwrap_or_else(|| format!("{:?}", alg.datum().matrix()))
}
