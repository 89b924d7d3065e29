//! Properties of the Frank t-norms and t-conorms.

use coherence::frank::{
    frechet_bounds_conjunction, frechet_bounds_disjunction, generic_tnorm, solve_lambda, tconorm, tnorm,
    FrankParameter, Uniqueness,
};
use coherence::ratio;
use proptest::prelude::*;

fn parameter() -> impl Strategy<Value = FrankParameter> {
    prop_oneof![
        Just(FrankParameter::Min),
        Just(FrankParameter::Product),
        Just(FrankParameter::Lukasiewicz),
        (-30.0f64..30.0).prop_map(|t| FrankParameter::Generic(t.exp())),
    ]
}

fn args(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(0.0f64..=1.0, n)
}

proptest! {
    #[test]
    fn decreasing_in_lambda(xs in args(2..=5), a in -30.0f64..30.0, b in -30.0f64..30.0) {
        let (lo, hi) = (a.min(b).exp(), a.max(b).exp());
        prop_assert!(generic_tnorm(lo, &xs) >= generic_tnorm(hi, &xs) - 1e-12);
    }

    #[test]
    fn inside_frechet_envelope(xs in args(1..=5), p in parameter()) {
        let (lo, hi) = frechet_bounds_conjunction(&xs).unwrap();
        let t = tnorm(p, &xs).unwrap();
        prop_assert!(lo - 1e-12 <= t && t <= hi + 1e-12, "{lo} {t} {hi}");
        let (slo, shi) = frechet_bounds_disjunction(&xs).unwrap();
        let s = tconorm(p, &xs).unwrap();
        prop_assert!(slo - 1e-12 <= s && s <= shi + 1e-12);
    }

    #[test]
    fn conorm_is_dual(x in 0.0f64..=1.0, y in 0.0f64..=1.0, p in parameter()) {
        let s = tconorm(p, &[x, y]).unwrap();
        let t = tnorm(p, &[x, y]).unwrap();
        prop_assert!((s - (x + y - t)).abs() < 1e-12);
    }

    #[test]
    fn nary_is_iterated_binary(xs in args(3..=5), p in parameter()) {
        let n = xs.len();
        let head = tnorm(p, &xs[..n - 1]).unwrap();
        let nested = tnorm(p, &[head, xs[n - 1]]).unwrap();
        prop_assert!((tnorm(p, &xs).unwrap() - nested).abs() < 1e-12);
    }

    #[test]
    fn commutative(xs in args(2..=4), p in parameter()) {
        let mut rev = xs.clone();
        rev.reverse();
        prop_assert!((tnorm(p, &xs).unwrap() - tnorm(p, &rev).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn lukasiewicz_convex_minimum_concave(a in args(3..=3), b in args(3..=3)) {
        let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect();
        let tl = |v: &[f64]| tnorm(FrankParameter::Lukasiewicz, v).unwrap();
        let tm = |v: &[f64]| tnorm(FrankParameter::Min, v).unwrap();
        prop_assert!(tl(&mid) <= (tl(&a) + tl(&b)) / 2.0 + 1e-12);
        prop_assert!(tm(&mid) >= (tm(&a) + tm(&b)) / 2.0 - 1e-12);
    }

    #[test]
    fn inversion_round_trips(xs in proptest::collection::vec(0.05f64..0.95, 2..=3), t in -10.0f64..10.0) {
        let target = generic_tnorm(t.exp(), &xs);
        let (lo, hi) = frechet_bounds_conjunction(&xs).unwrap();
        prop_assume!(target > lo && target < hi);
        let fit = solve_lambda(&xs, &target).unwrap();
        prop_assert_eq!(fit.uniqueness, Uniqueness::Unique);
        prop_assert!((fit.parameter.lambda().ln() - t).abs() < 1e-10);
    }
}

#[test]
fn exact_named_kinds_on_rationals() {
    let xs = [ratio(1, 2), ratio(3, 5), ratio(7, 10)];
    assert_eq!(tnorm(FrankParameter::Lukasiewicz, &xs).unwrap(), ratio(0, 1));
    assert_eq!(frechet_bounds_conjunction(&xs).unwrap(), (ratio(0, 1), ratio(1, 2)));
    assert_eq!(frechet_bounds_disjunction(&xs).unwrap(), (ratio(7, 10), ratio(1, 1)));
    assert_eq!(
        tconorm(FrankParameter::Product, &[ratio(3, 10), ratio(2, 5)]).unwrap(),
        ratio(29, 50)
    );
}

#[test]
fn inversion_at_the_oracle_value() {
    // T_2(1/2, 1/2) from an independent 50-digit evaluation.
    let target = 0.228_446_696_836_388_03_f64;
    let fit = solve_lambda(&[0.5, 0.5], &target).unwrap();
    assert!((fit.parameter.lambda() - 2.0).abs() < 1e-9);
}
