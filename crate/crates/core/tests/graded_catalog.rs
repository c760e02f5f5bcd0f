use iquantum::catalog;
use iquantum::gradedqsp::{build_s, kl_leading_term, GradedError};
use iquantum::rootdata::{Weight, WeylWord};
use iquantum::twistedpoly::clock_shift_rep;

fn valid_levels(name: &str) -> Vec<i128> {
    let d = catalog::load(name).unwrap();
    [3i128, 5, 7].into_iter().filter(|l| d.datum().symmetrizers().iter().all(|e| (*e as i128) % l != 0)).collect()
}

#[test]
fn s_is_skew_everywhere() {
    for name in catalog::names() {
        let p = build_s(&catalog::load(name).unwrap(), None);
        assert!(p.s.is_skew(), "{name}");
        assert_eq!(p.dim(), p.n() + p.m() + p.r());
        assert!(p.lattice_identity_failures().is_empty(), "{name}: {:?}", p.lattice_identity_failures());
    }
}

#[test]
fn kernel_lemma_on_catalog() {
    for name in catalog::names() {
        let p = build_s(&catalog::load(name).unwrap(), None);
        for ell in valid_levels(name) {
            let cert = p.verify_kernel_lemma(ell).unwrap();
            assert!(cert.pass, "{name} at {ell}: {:?}", cert.failures);
        }
    }
}

#[test]
fn kernel_examples() {
    let diag = build_s(&catalog::load("diagonal_a1xa1").unwrap(), None);
    let cert = diag.verify_kernel_lemma(3).unwrap();
    assert_eq!(cert.witnesses, vec![vec![1, 1, 0]]);
    assert_eq!(cert.image_size, 9);
    let a3 = build_s(&catalog::load("a3_black2").unwrap(), None);
    assert_eq!(a3.verify_kernel_lemma(5).unwrap().image_size, 5u128.pow(6));
    let qs = build_s(&catalog::load("quasisplit_a2").unwrap(), None);
    assert_eq!((qs.dim(), qs.n(), qs.m(), qs.r()), (4, 3, 0, 1));
}

#[test]
fn degrees() {
    assert_eq!(build_s(&catalog::load("split_a1").unwrap(), None).graded_degree(7).unwrap().degree, 1);
    assert_eq!(build_s(&catalog::load("quasisplit_a2").unwrap(), None).graded_degree(5).unwrap().degree, 5);
    assert_eq!(build_s(&catalog::load("a3_black2").unwrap(), None).graded_degree(3).unwrap().degree, 27);
    for name in catalog::names() {
        let p = build_s(&catalog::load(name).unwrap(), None);
        for ell in valid_levels(name) {
            assert!(p.graded_degree(ell).unwrap().pass, "{name} at {ell}");
        }
    }
}

#[test]
fn centre_generators_are_central_and_match_witnesses() {
    for name in catalog::names() {
        let d = catalog::load(name).unwrap();
        let p = build_s(&d, None);
        let report = p.graded_center_generators(3).unwrap();
        assert!(report.pass, "{name}: {:?}", report.non_central);
        for (nu, mono) in d.p_imath_basis().iter().zip(&report.monomials) {
            let x: Vec<i64> = p.x_nu(nu).unwrap().iter().map(|v| *v as i64).collect();
            assert_eq!(mono.exponents, x, "{name}");
        }
    }
    let a2 = build_s(&catalog::load("split_a2").unwrap(), None);
    assert_eq!(a2.graded_center_generators(3).unwrap().monomials[0].exponents, vec![1, 1, 1]);
}

#[test]
fn leading_terms() {
    let a1 = catalog::load("split_a1").unwrap();
    let t = kl_leading_term(&a1, None, &Weight::fundamental(1, 0)).unwrap();
    assert_eq!((t.b_exponents.clone(), t.k_weight.clone()), (vec![1], Weight::zero(1)));
    let zero = kl_leading_term(&a1, None, &Weight::zero(1)).unwrap();
    assert_eq!(zero.b_exponents, vec![0]);

    let qs = catalog::load("quasisplit_a2").unwrap();
    let word = qs.adapted_word_from(&WeylWord::parse("1,2,1").unwrap()).unwrap();
    let t = kl_leading_term(&qs, Some(&word), &Weight::fundamental(2, 0)).unwrap();
    assert_eq!(t.b_exponents, vec![0, 1, 0]);
    assert_eq!(t.k_weight, Weight::from_ints(&[-1, 1]));
    assert!(matches!(
        kl_leading_term(&qs, None, &Weight::from_ints(&[1, -1])),
        Err(GradedError::NotDominant(_))
    ));

    for name in catalog::names() {
        let d = catalog::load(name).unwrap();
        for nu in d.p_imath_basis() {
            let t = kl_leading_term(&d, None, &nu.scale(2)).unwrap();
            assert_eq!(t.weight, t.expected_weight, "{name}");
        }
    }
}

#[test]
fn graded_clock_shift_witness() {
    for d in catalog::core() {
        let p = build_s(&d, None);
        let rep = clock_shift_rep(&p.form(), 3, None).unwrap();
        let n0 = d.invariants().n0 as u32;
        assert_eq!(rep.dim(), 3usize.pow(n0));
        let report = rep.verify();
        assert!(report.pass, "{:?}", report);
        assert_eq!(report.span_dim, 9usize.pow(n0));
    }
}
