use proptest::prelude::*;

use critpoly::construct::{canonical, construct, hat, p_beta, reflection_residual, Form};
use critpoly::exact::rat::{rat, Rat};
use critpoly::verify::{certify_critical_line, check_difference_equation, hat_shift_residual};

/// Admissible lambda: positive rationals and a few negative ones above -1/2.
fn lambda() -> impl Strategy<Value = Rat> {
    prop_oneof![
        (1i64..40, 1i64..9).prop_map(|(p, q)| rat(p, q)),
        (1i64..4).prop_map(|q| rat(-1, 2 * q + 2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reflection_symmetry(n in 0usize..16, l in lambda()) {
        let p = canonical(n, &l).unwrap();
        prop_assert!(reflection_residual(&p, n).is_zero());
    }

    #[test]
    fn zeros_on_the_line(n in 0usize..14, l in lambda()) {
        let p = construct(n, &l, Form::S41).unwrap();
        let c = certify_critical_line(&p).unwrap();
        prop_assert!(c.pass, "{c:?}");
        prop_assert_eq!(c.distinct_real_roots, n / 2);
    }

    #[test]
    fn beta_family_zeros_on_the_line(n in 0usize..12, b in 0i64..5) {
        let beta = rat(1, 2) - Rat::from_integer(b.into());
        let c = certify_critical_line(&p_beta(n, &beta).unwrap()).unwrap();
        prop_assert!(c.pass, "{c:?}");
    }

    #[test]
    fn construction_paths_agree(n in 0usize..12, l in lambda()) {
        let a = construct(n, &l, Form::S41).unwrap().poly;
        prop_assert_eq!(&construct(n, &l, Form::S32).unwrap().poly, &a);
        // the hypergeometric path differs by a constant normalization
        prop_assert_eq!(construct(n, &l, Form::Hyp).unwrap().poly.monic(), a.monic());
    }

    #[test]
    fn difference_equation(n in 0usize..14, l in lambda()) {
        let p = canonical(n, &l).unwrap();
        prop_assert!(check_difference_equation(&p, n / 2, n % 2 == 1, &l));
    }

    #[test]
    fn hat_shift(n in 0usize..12, l in lambda()) {
        prop_assert!(hat_shift_residual(n, &l).unwrap().is_zero());
        prop_assert!(!hat(n, &l).unwrap().is_zero());
    }
}
