use proptest::prelude::*;

use twouni_core::migrativity::{
    audit_pair, brute_force_migrative, characterize_thm31, characterize_thm32, corollary_dispatch, lambda_mu,
    MigrativePair, MigrativityError, Outcome, TwoUninorm,
};
use twouni_core::operators::{discretize, OperatorSpec, Param};
use twouni_core::{make_grid, UnitGrid};

fn build(spec: &OperatorSpec, grid: UnitGrid) -> Option<TwoUninorm> {
    let table = discretize(spec, grid).ok()?;
    let triple = spec.natural_triple_on(grid)?.ok()?;
    TwoUninorm::new(table, triple).ok()
}

fn tnorm() -> impl Strategy<Value = OperatorSpec> {
    prop_oneof![
        Just(OperatorSpec::Min),
        Just(OperatorSpec::Lukasiewicz),
        Just(OperatorSpec::Drastic),
    ]
}

fn tconorm() -> impl Strategy<Value = OperatorSpec> {
    prop_oneof![
        Just(OperatorSpec::Max),
        Just(OperatorSpec::dual(OperatorSpec::Lukasiewicz)),
        Just(OperatorSpec::dual(OperatorSpec::Drastic)),
    ]
}

/// A family member with parameters on the grid with `n` subdivisions.
fn family(n: u32) -> impl Strategy<Value = OperatorSpec> {
    let p = move |i: u32| Param::new(i as i64, n as i64);
    let triple = (0..=n, 0..=n, 0..=n).prop_map(|(x, y, z)| {
        let mut v = [x, y, z];
        v.sort();
        (v[0], v[1], v[2])
    });
    prop_oneof![
        tnorm(),
        tconorm(),
        triple.prop_map(move |(e, a, f)| OperatorSpec::example(p(e), p(a), p(f)).unwrap()),
        (0..=n, tnorm(), tconorm()).prop_map(move |(e, t, s)| OperatorSpec::uninorm_min(p(e), t, s).unwrap()),
        (0..=n, tnorm(), tconorm()).prop_map(move |(e, t, s)| OperatorSpec::uninorm_max(p(e), t, s).unwrap()),
        (0..=n, tconorm(), tnorm()).prop_map(move |(a, s, t)| OperatorSpec::nullnorm(p(a), s, t).unwrap()),
        (0..=n, prop_oneof![tnorm(), tconorm()], prop_oneof![tnorm(), tconorm()])
            .prop_map(move |(a, lo, hi)| OperatorSpec::glued(p(a), lo, hi).unwrap()),
    ]
}

fn instance() -> impl Strategy<Value = (u32, OperatorSpec, OperatorSpec, u32)> {
    (2u32..=12).prop_flat_map(|n| (Just(n), family(n), family(n), 0..=n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn brute_force_and_both_splits_agree((n, s1, s2, k) in instance()) {
        let g = make_grid(n).unwrap();
        let (Some(u1), Some(u2)) = (build(&s1, g), build(&s2, g)) else {
            return Err(TestCaseError::reject("not a 2-uninorm on this grid"));
        };
        let p = MigrativePair::new(&u1, &u2, g.point(k).unwrap()).unwrap();
        let brute = brute_force_migrative(&p);
        let t31 = characterize_thm31(&p);
        let t32 = characterize_thm32(&p);
        prop_assert_eq!(brute.migrative, t31.migrative, "{:?}", t31);
        prop_assert_eq!(brute.migrative, t32.migrative, "{:?}", t32);

        if let Some(w) = brute.witness {
            prop_assert!(w.recheck(&p));
        }
        for v in [&t31, &t32] {
            prop_assert_eq!(v.condition_failure.is_some(), !v.migrative);
            if let Some(c) = v.condition_failure {
                prop_assert!(c.recheck(&p));
            }
        }

        let lm = lambda_mu(&p);
        prop_assert!(lm.lambda <= lm.mu);

        let a = audit_pair(&p);
        for (_, verdict) in a.thm31.iter().chain(&a.thm32) {
            prop_assert_eq!(*verdict, brute.migrative);
        }
        prop_assert_ne!(a.lemma32, Outcome::Violated);
        prop_assert_ne!(a.prop31, Outcome::Violated);
        prop_assert_ne!(a.prop33, Outcome::Violated);
        prop_assert_ne!(a.post_identity, Outcome::Violated);

        match corollary_dispatch(&p) {
            Ok(c) => prop_assert_eq!(c.migrative, t31.migrative, "{:?}", c),
            Err(MigrativityError::ShapeMismatch { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}

#[test]
fn example_pair_sweep() {
    let g = make_grid(20).unwrap();
    let r = |p, q| Param::new(p, q);
    let u1 = build(&OperatorSpec::example(r(1, 5), r(3, 5), r(4, 5)).unwrap(), g).unwrap();
    let u2 = build(&OperatorSpec::example(r(3, 10), r(1, 2), r(7, 10)).unwrap(), g).unwrap();
    let migrative: Vec<u32> = g
        .carrier()
        .filter(|&a| brute_force_migrative(&MigrativePair::new(&u1, &u2, a).unwrap()).migrative)
        .map(|a| a.index())
        .collect();
    assert_eq!(migrative, vec![14, 17, 18, 19, 20]);
}

#[test]
fn min_is_min_migrative() {
    let g = make_grid(20).unwrap();
    let m = build(&OperatorSpec::Min, g).unwrap();
    for a in g.carrier() {
        assert!(brute_force_migrative(&MigrativePair::new(&m, &m, a).unwrap()).migrative);
    }
}

#[test]
fn conorm_against_example_operator_at_zero() {
    // S = Max against U = (0.3, 0.5, 0.7) at alpha = 0: S(U(0,0), x) = x, but
    // U(0, 0.6) = 0.5.
    let g = make_grid(10).unwrap();
    let s = build(&OperatorSpec::Max, g).unwrap();
    let r = |p, q| Param::new(p, q);
    let u = build(&OperatorSpec::example(r(3, 10), r(1, 2), r(7, 10)).unwrap(), g).unwrap();
    let p = MigrativePair::new(&s, &u, g.zero()).unwrap();
    let v = corollary_dispatch(&p).unwrap();
    assert!(!v.migrative);
    assert_eq!(v.migrative, characterize_thm31(&p).migrative);
    assert_eq!(v.migrative, brute_force_migrative(&p).migrative);
    assert_eq!(u.table().get(0, 6), 5);
}
