use iquantum::catalog;
use iquantum::iqg::*;
use iquantum::qcoeff::LaurentScalar;
use iquantum::satake::{DiagramSpec, SatakeDiagram};
use iquantum::uq::UqElement;
use proptest::prelude::*;

fn diagram(src: &str) -> SatakeDiagram {
    serde_json::from_str::<DiagramSpec>(src).unwrap().build().unwrap()
}

fn iquantum(name: &str) -> IQuantum {
    IQuantum::new(&catalog::load(name).unwrap()).unwrap()
}

#[test]
fn frobenius_generators_split_a1() {
    let iq = iquantum("split_a1");
    for (ell, k) in [(3, 1), (3, 2), (5, 1)] {
        let g = frobenius_generator_check(&iq, 0, ell, k).unwrap();
        assert_eq!(g.divided, g.image);
    }
}

#[test]
fn frobenius_generators_rank_two() {
    for name in ["diagonal_a1xa1", "quasisplit_a2", "split_a2", "split_b2"] {
        let iq = iquantum(name);
        for i in iq.diagram().white_nodes() {
            let r = frobenius_report(&iq, i, 3, 1).unwrap();
            assert!(r.pass, "{name} node {i}: {:?}", r.diff);
        }
    }
}

#[test]
fn frobenius_generators_twisted_case() {
    for src in [r#"{"type":"B2","black":[2]}"#, r#"{"type":"A3","black":[1,3]}"#] {
        let iq = IQuantum::new(&diagram(src)).unwrap();
        for i in iq.diagram().white_nodes() {
            assert_eq!(iq.divided_case(i).unwrap(), DividedCase::Twisted);
            frobenius_generator_check(&iq, i, 3, 1).unwrap();
        }
    }
}

#[test]
fn prefactor_needs_node_length() {
    let dg = catalog::load("split_b2").unwrap();
    let uniform = IQuantum::with_base(&dg, PrefactorBase::Uniform).unwrap();
    let failing: Vec<usize> =
        (0..2).filter(|&i| !frobenius_report(&uniform, i, 3, 1).unwrap().pass).collect();
    assert!(!failing.is_empty());
    let scaled = IQuantum::new(&dg).unwrap();
    assert!((0..2).all(|i| frobenius_report(&scaled, i, 3, 1).unwrap().pass));
}

#[test]
fn even_level_rejected() {
    let iq = iquantum("split_a1");
    assert!(matches!(frobenius_generator_check(&iq, 0, 4, 1), Err(IqgError::Level { .. })));
    assert!(matches!(iquantum("a3_black2").b_generator(7), Err(IqgError::BadNode(7))));
}

#[test]
fn frobenius_center_is_central() {
    for name in ["quasisplit_a2", "diagonal_a1xa1", "split_a1"] {
        let r = centrality_check(&iquantum(name), 3).unwrap();
        assert!(r.pass, "{name}: {:?}", r.diff);
    }
}

#[test]
fn product_of_divided_powers() {
    let r = product_rule_check(&iquantum("split_a1"), 0, 3, true).unwrap();
    assert!(r.pass, "{:?}", r.diff);
}

#[test]
fn braid_compatibility_split() {
    let r = braid_frobenius_check(RankTwoCase::Split, 3).unwrap();
    assert!(r.pass && r.product_rule, "{:?}", r.diff);
}

#[test]
fn braid_compatibility_diagonal() {
    let r = braid_frobenius_check(RankTwoCase::Diagonal, 3).unwrap();
    assert!(r.pass && r.product_rule, "{:?}", r.diff);
}

#[test]
fn braid_compatibility_quasi_split() {
    let r = braid_frobenius_check(RankTwoCase::QuasiSplit, 3).unwrap();
    assert!(r.pass && r.product_rule, "{:?}", r.diff);
    assert_eq!(r.flipped_torus_term_matches, Some(false));
}

#[test]
fn small_iquantum_dimensions() {
    for (name, dim, ambient) in [("split_a1", 3, 27), ("diagonal_a1xa1", 27, 729)] {
        let r = small_iqg_dim_check(&catalog::load(name).unwrap(), 3).unwrap();
        assert!(r.pass && r.pbw_independent, "{r:?}");
        assert_eq!((r.dim, r.ambient_dim), (dim, ambient));
    }
    assert!(small_iqg_dim_check(&catalog::load("split_a2").unwrap(), 3).is_err());
}

type Generic = UqElement<LaurentScalar>;

fn a1_element(iq: &IQuantum, spec: &[(i8, u8, u8, i8)]) -> Generic {
    let u = iq.algebra();
    spec.iter().fold(UqElement::zero(), |acc, &(c, f, e, k)| {
        let m = u
            .product(&[&u.pow(&u.f(0), f as u32).unwrap(), &u.k_alpha(0, k as i64), &u.pow(&u.e(0), e as u32).unwrap()])
            .unwrap();
        acc.add(&m.scale(&LaurentScalar::from_int(c as i64)))
    })
}

fn term() -> impl Strategy<Value = (i8, u8, u8, i8)> {
    (-3i8..=3, 0u8..=2, 0u8..=2, -1i8..=1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn classical_bracket_is_poisson(
        x in prop::collection::vec(term(), 1..3),
        y in prop::collection::vec(term(), 1..3),
        z in prop::collection::vec(term(), 1..3),
    ) {
        let iq = iquantum("split_a1");
        let u = iq.algebra();
        let (x, y, z) = (a1_element(&iq, &x), a1_element(&iq, &y), a1_element(&iq, &z));
        let lift = |a: &Generic, b: &Generic| bracket_lift(u, a, b, BracketMode::AtOne).unwrap();

        let xy = poisson_bracket_at_one(u, &x, &y).unwrap();
        let yx = poisson_bracket_at_one(u, &y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());

        let whole = lift(&x, &u.mul(&y, &z).unwrap());
        let split = u.mul(&lift(&x, &y), &z).unwrap().add(&u.mul(&y, &lift(&x, &z)).unwrap());
        prop_assert_eq!(at_one(&whole).unwrap(), at_one(&split).unwrap());

        let jacobi = lift(&x, &lift(&y, &z)).add(&lift(&y, &lift(&z, &x))).add(&lift(&z, &lift(&x, &y)));
        prop_assert!(at_one(&jacobi).unwrap().is_zero());
    }
}
