use proptest::prelude::*;

use weylstab::characters::character_from_label;
use weylstab::spectra::smallest_nonzero_eigenvalue;
use weylstab::stability::{kroencke_test_with, neutral_search_bound};
use weylstab::{
    analyze, freudenthal_eigenvalue, int, integrate_class_function, rat, verify_quadrature, RootSystem,
    StabilityError, TorusPolynomial, Verdict,
};

#[test]
fn g2_end_to_end() {
    let g2 = RootSystem::g2();
    let bottom = smallest_nonzero_eigenvalue(&g2, &int(40)).unwrap();
    assert_eq!(bottom.len(), 1);
    assert_eq!(*bottom[0].to_killing().value(), rat(-1, 2));

    let report = analyze(&g2, &rat(1, 4), None).unwrap();
    assert_eq!(report.verdict, Verdict::DynamicallyUnstable);
    assert_eq!(report.cube_integrals.len(), 1);
    assert_eq!(report.cube_integrals[0].1.raw_display(), "48*pi^2");
    assert_eq!(neutral_search_bound(&g2, &rat(1, 4)), int(13));
}

#[test]
fn non_neutral_weight_rejected() {
    let g2 = RootSystem::g2();
    let omega2 = g2.fundamental_weights()[1].clone();
    assert!(matches!(
        kroencke_test_with(&g2, &omega2, &rat(1, 4)),
        Err(StabilityError::NotNeutral { .. })
    ));
}

#[test]
fn every_preset_integrates_one_to_one() {
    for rs in [RootSystem::a1(), RootSystem::a2(), RootSystem::g2()] {
        let one = TorusPolynomial::one(rs.rank());
        assert_eq!(integrate_class_function(&rs, &one).unwrap().unit_haar_value, int(1), "{}", rs.name());
    }
}

fn label() -> impl Strategy<Value = (i64, i64)> {
    (0i64..3, 0i64..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // Schur orthogonality: ∫ χ_λ conj(χ_μ) = [λ = μ].
    #[test]
    fn g2_characters_orthonormal(a in label(), b in label()) {
        let g2 = RootSystem::g2();
        let x = character_from_label(&g2, &[a.0, a.1]).unwrap().into_poly();
        let y = character_from_label(&g2, &[b.0, b.1]).unwrap().into_poly();
        let v = integrate_class_function(&g2, &(&x * &y.conj())).unwrap().unit_haar_value;
        prop_assert_eq!(v, int(i64::from(a == b)));
    }

    // Nontrivial representations have strictly negative eigenvalue.
    #[test]
    fn eigenvalues_negative_off_trivial(a in 0i64..6, b in 0i64..6) {
        let g2 = RootSystem::g2();
        let e = freudenthal_eigenvalue(&g2, &g2.weight_from_fundamental(&[a, b])).unwrap();
        prop_assert_eq!(*e.value() < int(0), a + b > 0);
    }

    // Tensor multiplicities are nonnegative integers.
    #[test]
    fn a2_product_multiplicities(a in label(), b in label(), c in label()) {
        let a2 = RootSystem::a2();
        let chi = |l: (i64, i64)| character_from_label(&a2, &[l.0, l.1]).unwrap().into_poly();
        let v = integrate_class_function(&a2, &(&(&chi(a) * &chi(b)) * &chi(c).conj())).unwrap().unit_haar_value;
        prop_assert!(v.is_integer() && v >= int(0));
    }
}

#[test]
fn quadrature_agrees_on_a2() {
    let a2 = RootSystem::a2();
    let adj = character_from_label(&a2, &[1, 1]).unwrap().into_poly();
    let check = verify_quadrature(&a2, &adj.pow(3), 128).unwrap();
    assert!(check.pass, "{check:?}");
    assert_eq!(check.exact_value, int(2));
}
