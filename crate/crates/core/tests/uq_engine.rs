use std::collections::HashMap;

use iquantum::qcoeff::{qint, CyclotomicScalar, LaurentScalar};
use iquantum::rootdata::{CartanDatum, RootSystem, WeylWord};
use iquantum::uq::{braid_suite, confluence_suite, Letter, UqAlgebra, UqElement, UqError, DEFAULT_BOUND};
use proptest::prelude::*;

const TYPES: [&str; 6] = ["A1", "A1xA1", "A2", "B2", "A3", "A4"];

fn engine(t: &str) -> UqAlgebra<LaurentScalar> {
    UqAlgebra::new(&CartanDatum::from_type(t).unwrap(), DEFAULT_BOUND).unwrap()
}

#[test]
fn serre_completion_is_finite() {
    for t in TYPES {
        assert!(engine(t).rewrite_system().is_complete(), "{t}");
    }
}

#[test]
fn all_ambiguities_resolve() {
    for t in TYPES {
        let r = confluence_suite(&engine(t), DEFAULT_BOUND).unwrap();
        assert!(r.pass, "{t}: {:?}", r.failures);
        assert_eq!(r.skipped, 0, "{t}");
    }
}

#[test]
fn ambiguities_resolve_at_roots_of_unity() {
    for t in ["A2", "B2", "A3"] {
        for ell in [3u32, 5, 7] {
            let u = engine(t).at_root(ell).unwrap();
            let r = confluence_suite(&u, DEFAULT_BOUND).unwrap();
            assert!(r.pass, "{t} at {ell}: {:?}", r.failures);
        }
    }
}

#[test]
fn symmetries_respect_relations_and_braid() {
    for t in TYPES {
        let r = braid_suite(&engine(t)).unwrap();
        assert!(r.pass, "{t}: {:?}", r.failures);
    }
}

#[test]
fn symmetry_moves_degree_by_reflection() {
    for t in ["A2", "B2", "A3"] {
        let u = engine(t);
        let d = u.datum().clone();
        let n = d.rank();
        for i in 0..n {
            for j in 0..n {
                let img = u.braid_t(i, &u.e(j)).unwrap();
                let mut want = vec![0; n];
                want[j] = 1;
                want[i] -= d.a(i, j);
                assert_eq!(img.homogeneous_degree(n), Some(want), "{t} T{i} E{j}");
            }
        }
    }
}

#[test]
fn distinct_nodes_commute() {
    let u = engine("B2");
    for i in 0..2 {
        for j in 0..2 {
            let c = u.commutator(&u.e(i), &u.f(j)).unwrap();
            assert_eq!(c.is_zero(), i != j);
        }
    }
}

fn partitions(roots: &[Vec<i64>], target: &[i64]) -> usize {
    fn go(roots: &[Vec<i64>], k: usize, rest: &mut Vec<i64>) -> usize {
        if rest.iter().all(|x| *x == 0) {
            return 1;
        }
        if k == roots.len() {
            return 0;
        }
        let mut total = go(roots, k + 1, rest);
        let mut used = 0;
        while roots[k].iter().zip(rest.iter()).all(|(r, x)| r <= x) {
            rest.iter_mut().zip(&roots[k]).for_each(|(x, r)| *x -= r);
            used += 1;
            total += go(roots, k + 1, rest);
        }
        rest.iter_mut().zip(&roots[k]).for_each(|(x, r)| *x += used * r);
        total
    }
    go(roots, 0, &mut target.to_vec())
}

#[test]
fn normal_words_match_partition_function() {
    for (t, max_len) in [("A2", 6), ("B2", 6), ("A3", 5)] {
        let u = engine(t);
        let d = u.datum().clone();
        let n = d.rank();
        let roots: Vec<Vec<i64>> = RootSystem::new(d.clone()).positive_roots().iter().map(|r| r.0.clone()).collect();
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
        for _ in 0..max_len {
            words = words
                .iter()
                .flat_map(|w| (0..n as u8).map(move |x| [w.clone(), vec![x]].concat()))
                .filter(|w| u.rewrite_system().is_normal(w))
                .collect();
            for w in &words {
                let mut deg = vec![0; n];
                w.iter().for_each(|&x| deg[x as usize] += 1);
                *counts.entry(deg).or_default() += 1;
            }
        }
        for (deg, c) in counts {
            if deg.iter().sum::<i64>() as usize <= max_len {
                assert_eq!(c, partitions(&roots, &deg), "{t} {deg:?}");
            }
        }
    }
}

#[test]
fn pole_is_reported() {
    let u = engine("A1");
    let x = u.e(0).scale(&qint(3, 1).inv().unwrap());
    assert!(matches!(x.specialize::<CyclotomicScalar>(&3), Err(UqError::Pole { .. })));
    assert!(u.e(0).scale(&qint(2, 1)).specialize::<CyclotomicScalar>(&3).is_ok());
}

#[test]
fn text_round_trip() {
    let u = engine("B2");
    let w = WeylWord(vec![0, 1, 0, 1]);
    for (f, e) in u.root_vectors(&w).unwrap() {
        for x in [f, e] {
            let back: UqElement<LaurentScalar> = x.to_string().parse().unwrap();
            assert_eq!(back, x);
        }
    }
}

#[test]
fn root_vectors_have_convex_degrees() {
    for (t, w) in [("A2", vec![0, 1, 0]), ("B2", vec![0, 1, 0, 1]), ("A3", vec![0, 1, 0, 2, 1, 0])] {
        let u = engine(t);
        let word = WeylWord(w);
        let roots = u.convex_roots(&word).unwrap();
        for ((_, e), beta) in u.root_vectors(&word).unwrap().iter().zip(&roots) {
            assert_eq!(e.homogeneous_degree(u.rank()).as_ref(), Some(beta), "{t}");
        }
    }
    assert!(matches!(engine("A2").root_vector(&WeylWord(vec![0, 0]), 1), Err(UqError::NotReduced)));
}

fn letter(n: usize) -> impl Strategy<Value = Letter> {
    prop_oneof![
        (0..n).prop_map(Letter::E),
        (0..n).prop_map(Letter::F),
        prop::collection::vec(-1i64..=1, n).prop_map(Letter::K),
    ]
}

fn word_element(u: &UqAlgebra<LaurentScalar>, w: &[Letter]) -> UqElement<LaurentScalar> {
    u.normal_form(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetry_is_multiplicative(a in prop::collection::vec(letter(2), 0..4), b in prop::collection::vec(letter(2), 0..4), t in prop::sample::select(vec!["A2", "B2"]), i in 0usize..2) {
        let u = engine(t);
        let (x, y) = (word_element(&u, &a), word_element(&u, &b));
        let lhs = u.braid_t(i, &u.mul(&x, &y).unwrap()).unwrap();
        let rhs = u.mul(&u.braid_t(i, &x).unwrap(), &u.braid_t(i, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_associative(a in prop::collection::vec(letter(3), 0..4), b in prop::collection::vec(letter(3), 0..4), c in prop::collection::vec(letter(3), 0..4)) {
        let u = engine("A3");
        let (x, y, z) = (word_element(&u, &a), word_element(&u, &b), word_element(&u, &c));
        let l = u.mul(&u.mul(&x, &y).unwrap(), &z).unwrap();
        let r = u.mul(&x, &u.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}

#[test]
fn rank_limit() {
    let d = CartanDatum::from_type("A5").unwrap();
    assert!(matches!(UqAlgebra::new(&d, DEFAULT_BOUND), Err(UqError::RankTooLarge(5))));
}
