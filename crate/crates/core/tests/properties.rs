use availpref::{
    check_certificate, compute_u, cross_validate_choice, maximal_set, membership, AlternativeSet, BuiltinOracle,
    Menu, PreferenceSpec, Raf,
};
use proptest::prelude::*;

const N: usize = 4;

fn alts() -> AlternativeSet {
    AlternativeSet::numbered(N).unwrap()
}

fn coordinate() -> impl Strategy<Value = f64> {
    prop_oneof![
        6 => 0.0..=1.0f64,
        1 => Just(0.0),
        1 => Just(1.0),
        1 => (0u8..=4).prop_map(|k| f64::from(k) / 4.0),
    ]
}

fn values() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(coordinate(), N)
}

fn weights() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05..1.0f64, N).prop_map(|w| {
        let total: f64 = w.iter().sum();
        let mut w: Vec<f64> = w.iter().map(|x| x / total).collect();
        // Put the rounding residue on the last weight so they sum to 1.
        let head: f64 = w[..N - 1].iter().sum();
        w[N - 1] = 1.0 - head;
        w
    })
}

/// Weakly dominant built-ins over `N` alternatives.
fn dominant_spec() -> impl Strategy<Value = PreferenceSpec> {
    prop_oneof![
        weights().prop_map(|weights| PreferenceSpec::Additive { weights }),
        Just(PreferenceSpec::Min),
        Just(PreferenceSpec::Geometric),
        Just(PreferenceSpec::Lexicographic {
            priority: vec!["x3".into(), "x1".into(), "x4".into(), "x2".into()],
        }),
        (0.05..0.95f64).prop_map(|cutoff| PreferenceSpec::Threshold { cutoff }),
    ]
}

fn score_spec() -> impl Strategy<Value = PreferenceSpec> {
    prop_oneof![
        weights().prop_map(|weights| PreferenceSpec::Additive { weights }),
        Just(PreferenceSpec::Min),
        Just(PreferenceSpec::Geometric),
    ]
}

fn build(spec: PreferenceSpec) -> BuiltinOracle {
    spec.build(&alts()).unwrap()
}

fn raf(v: Vec<f64>) -> Raf {
    Raf::new(&alts(), v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_is_an_up_set(spec in dominant_spec(), v in values(), t in 0.0..=1.0f64, t2 in 0.0..=1.0f64) {
        let oracle = build(spec);
        let a = raf(v);
        let (lo, hi) = if t <= t2 { (t, t2) } else { (t2, t) };
        if membership(&oracle, &a, lo).unwrap() {
            prop_assert!(membership(&oracle, &a, hi).unwrap());
        }
    }

    #[test]
    fn utility_brackets_are_certified(spec in dominant_spec(), v in values(), exp in 3i32..=9) {
        let oracle = build(spec);
        let a = raf(v);
        let tol = 10f64.powi(-exp);
        let r = compute_u(&oracle, &a, tol).unwrap();
        prop_assert!(r.lo <= r.u && r.u <= r.hi);
        prop_assert!(r.hi - r.lo <= 2.0 * tol);
        prop_assert!((0.0..=1.0).contains(&r.u));
        prop_assert!(r.oracle_calls <= availpref::wold::call_budget(tol));
        prop_assert!(check_certificate(&oracle, &a, &r).unwrap());
    }

    #[test]
    fn diagonal_utility_is_the_scale(spec in dominant_spec(), t in 0.0..=1.0f64) {
        let oracle = build(spec);
        let tol = 1e-9;
        let r = compute_u(&oracle, &Raf::scale_top(t, &alts()).unwrap(), tol).unwrap();
        prop_assert!((r.u - t).abs() <= tol, "u = {}, t = {}", r.u, t);
    }

    #[test]
    fn utility_respects_pointwise_dominance(spec in dominant_spec(), v in values(), shrink in values()) {
        let oracle = build(spec);
        let a = raf(v.clone());
        let b = raf(v.iter().zip(&shrink).map(|(x, s)| x * s).collect());
        let tol = 1e-9;
        let ua = compute_u(&oracle, &a, tol).unwrap();
        let ub = compute_u(&oracle, &b, tol).unwrap();
        prop_assert!(ua.u >= ub.u - 2.0 * tol, "u(A) = {}, u(B) = {}", ua.u, ub.u);
    }

    #[test]
    fn utility_matches_score(spec in score_spec(), v in values()) {
        let oracle = build(spec);
        let a = raf(v);
        let r = compute_u(&oracle, &a, 1e-9).unwrap();
        let closed = match oracle.spec() {
            PreferenceSpec::Geometric => oracle.score(&a).unwrap().powf(1.0 / N as f64),
            _ => oracle.score(&a).unwrap(),
        };
        prop_assert!((r.u - closed).abs() <= 1e-9 + 1e-12, "u = {}, closed form = {}", r.u, closed);
    }

    #[test]
    fn maximal_set_is_the_score_argmax(
        spec in score_spec(),
        items in prop::collection::vec(values(), 1..12),
        dup in prop::option::of(any::<prop::sample::Index>()),
    ) {
        let oracle = build(spec);
        let mut rafs: Vec<Raf> = items.into_iter().map(raf).collect();
        if let Some(i) = dup {
            let copy = rafs[i.index(rafs.len())].clone();
            rafs.push(copy);
        }
        let scores: Vec<f64> = rafs.iter().map(|r| oracle.score(r).unwrap()).collect();
        let best = scores.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let menu = Menu::unlabeled(&alts(), rafs.clone()).unwrap();
        let expected: Vec<String> = menu
            .items()
            .iter()
            .zip(&scores)
            .filter(|(_, &s)| s == best)
            .map(|(item, _)| item.label.clone())
            .collect();
        let result = maximal_set(&oracle, &menu).unwrap();
        prop_assert_eq!(&result.maximal_labels, &expected);

        // No maximal item is strictly dominated by another menu item.
        for label in &result.maximal_labels {
            let chosen = &menu.items().iter().find(|i| &i.label == label).unwrap().raf;
            for other in menu.items() {
                prop_assert!(!other.raf.strictly_dominates(chosen).unwrap());
            }
        }

        let cv = cross_validate_choice(&oracle, &menu, 1e-9).unwrap();
        prop_assert!(cv.contained);
        prop_assert!(cv.missing_from_band.is_empty());
    }
}
