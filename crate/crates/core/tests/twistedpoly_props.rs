use iquantum::lattice::IntMatrix;
use iquantum::qcoeff::{CyclotomicScalar, LaurentScalar};
use iquantum::twistedpoly::{clock_shift_rep, SkewForm, TwistedElement};
use proptest::prelude::*;

fn skew(n: usize) -> impl Strategy<Value = SkewForm> {
    prop::collection::vec(-3i128..=3, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = IntMatrix::zeros(n, n);
        let mut it = upper.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let x = it.next().unwrap();
                m[(i, j)] = x;
                m[(j, i)] = -x;
            }
        }
        SkewForm::new(m, &[0]).unwrap()
    })
}

fn element(n: usize) -> impl Strategy<Value = TwistedElement<LaurentScalar>> {
    prop::collection::vec((prop::collection::vec(0i64..3, n), -2i64..=2, -2i32..=2), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(TwistedElement::zero(&()), |acc, (mut a, c, k)| {
            a[0] -= 1;
            acc.add(&TwistedElement::monomial(&(), a, LaurentScalar::from_int(c).mul(&LaurentScalar::q_pow(k))))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative((f, a, b, c) in skew(3).prop_flat_map(|f| (Just(f), element(3), element(3), element(3)))) {
        let ab_c = f.multiply(&f.multiply(&a, &b).unwrap(), &c).unwrap();
        let a_bc = f.multiply(&a, &f.multiply(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn centre_monomials_commute(f in skew(3), ell in prop::sample::select(vec![3i128, 5, 9])) {
        let ctx = ell as u32;
        let centre = f.center_basis(ell).unwrap();
        for col in centre.lattice.columns() {
            let a: Vec<i64> = col.iter().map(|x| x.rem_euclid(ell) as i64).collect();
            let z = TwistedElement::monomial(&ctx, a, CyclotomicScalar::one(ctx));
            for i in 0..3 {
                let x = f.generator::<CyclotomicScalar>(&ctx, i);
                prop_assert!(f.commutator(&z, &x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn degree_squared_times_centre_rank_is_full(f in skew(4), ell in prop::sample::select(vec![3i128, 5])) {
        let deg = f.degree(ell).unwrap();
        let box_count = f.center_basis(ell).unwrap().monomials_in_box(ell as i64).len() as u128;
        prop_assert_eq!(deg * deg * box_count, (ell as u128).pow(4));
    }

    #[test]
    fn clock_shift_is_irreducible(f in skew(4), ell in prop::sample::select(vec![3u32, 5])) {
        let rep = clock_shift_rep(&f, ell, None).unwrap();
        prop_assert_eq!(rep.dim() as u128, f.degree(ell as i128).unwrap());
        let report = rep.verify();
        prop_assert!(report.pass, "{:?}", report);
    }
}

#[test]
fn commutative_when_form_vanishes() {
    let f = SkewForm::new(IntMatrix::zeros(2, 2), &[]).unwrap();
    let x = f.generator::<LaurentScalar>(&(), 0);
    let y = f.generator::<LaurentScalar>(&(), 1);
    assert_eq!(f.multiply(&x, &y).unwrap(), f.multiply(&y, &x).unwrap());
}
