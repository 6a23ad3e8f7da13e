use num_complex::Complex64;
use num_rational::Rational64;
use proptest::prelude::*;

use effham_core::expansion::{a2_closed_form, check_nonresonant, corrector_recursion, DEFAULT_ETA};
use effham_core::io::{potential_from_json, potential_to_json};
use effham_core::lattice;
use effham_core::rigidity::{build_a_set, decide, sole_vectors};
use effham_core::{Orientation, Transform, TrigPotential};

fn mode_vectors(dim: usize, count: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), count).prop_filter(
        "nonzero, pairwise non-parallel",
        |ks| {
            ks.iter().all(|k| !lattice::is_zero(k))
                && ks
                    .iter()
                    .enumerate()
                    .all(|(i, a)| ks[i + 1..].iter().all(|b| !lattice::is_parallel(a, b)))
        },
    )
}

fn potential(dim: usize, max_modes: usize) -> impl Strategy<Value = TrigPotential> {
    (1..=max_modes)
        .prop_flat_map(move |m| {
            (
                mode_vectors(dim, m),
                prop::collection::vec((0.1f64..1.0, -3.1f64..3.1), m),
                -1.0f64..1.0,
            )
        })
        .prop_map(move |(ks, amps, mean)| {
            let pairs: Vec<_> = ks
                .into_iter()
                .zip(amps)
                .map(|(k, (r, w))| (k, Complex64::from_polar(r, w)))
                .collect();
            TrigPotential::from_pairs(dim, mean, &pairs).unwrap()
        })
}

fn point(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..1.0, dim)
}

fn transform(dim: usize) -> impl Strategy<Value = Transform> {
    (
        prop::sample::select(vec![1i64, 2, 3]),
        any::<bool>(),
        prop::collection::vec(0.0f64..1.0, dim),
    )
        .prop_map(|(q, reflect, x0)| {
            let o = if reflect { Orientation::Reversing } else { Orientation::Preserving };
            Transform::new(Rational64::new(1, q), x0, o).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_keeps_values(v in potential(2, 4), x in point(2)) {
        let c = v.canonicalize().unwrap();
        prop_assert!(c.is_canonical());
        prop_assert!((c.eval(&x).unwrap() - v.eval(&x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn real_forms_round_trip(v in potential(3, 3)) {
        for (m, f) in v.modes().iter().zip(v.real_forms()) {
            let back = f.to_mode();
            prop_assert_eq!(&back.k, &m.k);
            prop_assert!((back.amplitude - m.amplitude).norm() < 1e-12);
        }
    }

    #[test]
    fn transform_composes_pointwise(v in potential(2, 3), t in transform(2), x in point(2)) {
        let w = v.transform(&t).unwrap();
        let y = t.apply_point(&x);
        prop_assert!((w.eval(&x).unwrap() - v.eval(&y).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn inverse_transform_restores(v in potential(2, 3), t in transform(2), x in point(2)) {
        let back = v.transform(&t).unwrap().transform(&t.inverse()).unwrap();
        prop_assert!((back.eval(&x).unwrap() - v.eval(&x).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn json_round_trip(v in potential(3, 3)) {
        let back = potential_from_json(&potential_to_json(&v)).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn decide_is_symmetric(v in potential(3, 3), t in transform(3)) {
        let w = v.transform(&t).unwrap();
        let forward = decide(&v, &w);
        let backward = decide(&w, &v);
        prop_assert!(forward.is_equivalent(), "{:?}", forward);
        prop_assert_eq!(forward.tag(), backward.tag());
    }

    #[test]
    fn sole_vectors_are_simple(v in potential(2, 3)) {
        let a = build_a_set(&v);
        let sole = sole_vectors(&a, &v);
        prop_assert!(a.is_negation_closed());
        prop_assert!(sole.is_negation_closed());
        for (w, _) in sole.iter() {
            prop_assert_eq!(a.multiplicity(w), 1);
        }
    }

    #[test]
    fn second_coefficient_matches_closed_form(v in potential(2, 3), q in prop::collection::vec(-2.0f64..2.0, 2)) {
        prop_assume!(check_nonresonant(&v, &q, 2) > 1e-2);
        let e = corrector_recursion(&v, &q, 2, DEFAULT_ETA).unwrap();
        let closed = a2_closed_form(&v, &q).unwrap();
        prop_assert!((e.a[2] - closed).abs() <= 1e-10 * closed.abs().max(1.0));
        prop_assert!((e.a[1] - v.mean()).abs() < 1e-15);
    }

    #[test]
    fn torus_maximum_dominates_samples(v in potential(2, 3), x in point(2)) {
        prop_assert!(v.max_on_torus(64) >= v.eval(&x).unwrap() - 1e-12);
        prop_assert!(v.max_on_torus(64) <= v.mean() + v.oscillation_bound() / 2.0 + 1e-12);
    }
}
