use iquantum::catalog;
use iquantum::rootdata::{Root, Weight, WeylWord};

/// (name, dim 𝔨, rank 𝔨) from the classical list of symmetric pairs:
/// so2, so3, so2+so3, gl2, sp4 ⊂ sl4 ... written out by hand.
const CLASSICAL: &[(&str, usize, usize)] = &[
    ("split_a1", 1, 1),       // so(2)
    ("split_a2", 3, 1),       // so(3)
    ("split_b2", 4, 2),       // so(2) + so(3)
    ("quasisplit_a2", 4, 2),  // s(gl1 + gl2) ≅ gl2
    ("quasisplit_a3", 7, 3),  // s(gl2 + gl2)
    ("diagonal_a1xa1", 3, 1), // diagonal sl2
    ("a3_black2", 9, 3),      // s(gl1 + gl3) ≅ gl3
    ("quasisplit_a4", 12, 4), // s(gl2 + gl3)
    ("a4_black23", 16, 4),    // s(gl1 + gl4)
];

#[test]
fn dim_k_matches_classical_table() {
    for (name, dim_k, rank_k) in CLASSICAL {
        let d = catalog::load(name).unwrap();
        let inv = d.invariants();
        assert_eq!(inv.dim_k, *dim_k, "{name}");
        assert_eq!(inv.rank_k, *rank_k, "{name}");
        assert_eq!(inv.n0 * 2 + inv.rank_k, inv.dim_k);
        assert_eq!(inv.dim_k, inv.n + inv.m + inv.rank_p_theta);
    }
}

#[test]
fn spec_examples() {
    let a1 = catalog::load("split_a1").unwrap().invariants();
    assert_eq!((a1.dim_k, a1.rank_k, a1.n0, a1.max_class_dim, a1.max_leaf_dim), (1, 1, 0, 2, 0));
    let qs = catalog::load("quasisplit_a2").unwrap().invariants();
    assert_eq!((qs.dim_k, qs.rank_k, qs.n0, qs.max_class_dim, qs.max_leaf_dim), (4, 2, 1, 6, 2));
    let a3 = catalog::load("a3_black2").unwrap().invariants();
    assert_eq!((a3.dim_k, a3.rank_k, a3.n0, a3.covering_degree), (9, 3, 3, 2));
}

#[test]
fn relative_structure_examples() {
    let s = catalog::load("split_a2").unwrap().relative_structure();
    assert_eq!((s.l, s.m), (3, 0));
    assert!(s.reflections.iter().all(|r| r.length == 1));
    let q = catalog::load("quasisplit_a2").unwrap().relative_structure();
    assert_eq!(q.reflections.len(), 1);
    assert_eq!(q.reflections[0].length, 3);
    let b = catalog::load("a3_black2").unwrap().relative_structure();
    assert_eq!((b.l, b.m), (5, 1));
}

#[test]
fn p_imath_examples() {
    let a1 = catalog::load("split_a1").unwrap();
    assert_eq!(a1.p_imath_basis(), vec![Weight::from_ints(&[1])]);
    let a2 = catalog::load("split_a2").unwrap();
    assert_eq!(a2.p_imath_basis(), vec![Weight::from_ints(&[1, 1])]);
    let qs = catalog::load("quasisplit_a2").unwrap();
    assert_eq!(qs.p_imath_basis(), vec![Weight::from_ints(&[1, 0]), Weight::from_ints(&[0, 1])]);
}

#[test]
fn lattice_identities_hold() {
    for name in catalog::names() {
        let d = catalog::load(name).unwrap();
        let dat = d.datum();
        let n = d.rank();
        for i in 0..n {
            let w = Weight::fundamental(n, i);
            assert_eq!(d.theta(&d.theta(&w)), w, "{name}");
        }
        for j in d.black_nodes() {
            let a = Weight::simple_root(dat, j);
            assert_eq!(d.theta(&a), a);
        }
        for nu in d.p_imath_basis() {
            let w0 = d.roots().w0();
            let one_plus = nu.add(&w0.act(dat, &nu));
            assert_eq!(d.theta(&one_plus), one_plus, "{name}");
            let diff = w0.act(dat, &nu).sub(&d.w_black().act(dat, &nu));
            assert_eq!(d.theta(&diff), diff.neg(), "{name}");
        }
        // P^ι = {μ : ττ₀ μ = μ} on a box of weights
        let tau0 = d.roots().tau0();
        let range: Vec<i64> = (-2..=2).collect();
        let mut stack = vec![vec![]];
        for _ in 0..n {
            stack = stack
                .into_iter()
                .flat_map(|v: Vec<i64>| range.iter().map(move |x| [v.clone(), vec![*x]].concat()))
                .collect();
        }
        for c in stack {
            let mu = Weight::from_ints(&c);
            let fixed = (0..n).all(|i| c[i] == c[tau0[d.tau(i)]]);
            assert_eq!(d.in_p_imath(&mu), fixed, "{name} {mu}");
        }
    }
}

#[test]
fn relative_height_vanishes_on_black_roots() {
    let d = catalog::load("a3_black2").unwrap();
    assert_eq!(d.rel_height(&Root(vec![0, 1, 0])), 0);
    assert_eq!(d.rel_height(&Root(vec![1, 1, 1])), 2);
    let a = d.adapted_word();
    assert_eq!(a.gammas, vec![Root(vec![0, 1, 0])]);
    assert_eq!(a.full().len(), 6);
}

#[test]
fn word_override_is_checked() {
    let d = catalog::load("split_a2").unwrap();
    let a = d.adapted_word_from(&WeylWord(vec![1, 0, 1])).unwrap();
    assert_eq!(a.betas[0], Root(vec![0, 1]));
    assert!(d.adapted_word_from(&WeylWord(vec![0, 0, 1])).is_err());
}
