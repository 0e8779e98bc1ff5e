mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use testcover::compose::{bit_vector, gadget_width, Side};
use testcover::duality::dual_parameter_of_composition;
use testcover::{
    compose, dualize, extract_witness, lift_witness, solve_exact, verify_composition, DualQuery,
    Error, Instance, SizeGuard, TestOrigin, VERTEX_COUNT,
};

use common::{brute_is_cover, brute_min_cover, combinations, instances};

fn inst(n: usize, tests: &[&[usize]]) -> Instance {
    Instance::new(n, tests.iter().map(|t| t.to_vec()).collect()).unwrap()
}

/// Small inputs sharing `n`, each with at least one test.
fn families(max_t: usize) -> impl Strategy<Value = Vec<Instance>> {
    (2..=3usize, 1..=max_t).prop_flat_map(|(n, t)| {
        prop::collection::vec(
            prop::collection::btree_set(prop::collection::btree_set(0..n, 1..=n), 1..=3),
            t,
        )
        .prop_map(move |family| {
            family
                .into_iter()
                .map(|sets| {
                    let tests = sets.into_iter().map(|s| s.into_iter().collect()).collect();
                    Instance::new(n, tests).unwrap()
                })
                .collect()
        })
    })
}

#[test]
fn two_input_example() {
    let x = inst(4, &[&[0, 1], &[0, 2]]);
    let y = inst(4, &[&[0], &[1], &[2]]);
    let out = compose(&[x, y], 2).unwrap();
    assert_eq!(out.layout.l, 2);
    assert_eq!(out.kstar, 6);
    assert_eq!(out.qstar.n(), 18);
    // 4 gadget tests, (2 + 3) input tests times 2 rows
    assert_eq!(out.qstar.m(), 14);
    assert!(solve_exact(&out.qstar, 6).decision.is_yes());
    assert!(!solve_exact(&out.qstar, 5).decision.is_yes());
}

#[test]
fn brute_force_agrees_on_a_tiny_composition() {
    // Independent check of the composed instance: exhaustive minimum cover.
    let yes = inst(2, &[&[0]]);
    let no = inst(2, &[&[0, 1]]);
    for (inputs, expect) in [
        (vec![yes.clone(), no.clone()], Some(6)),
        (vec![no.clone(), yes.clone()], Some(6)),
        (vec![no.clone(), no.clone()], None),
    ] {
        let out = compose(&inputs, 2).unwrap();
        assert_eq!(out.kstar, 6);
        let brute = brute_min_cover(&out.qstar).map(|(k, _)| k);
        match expect {
            Some(k) => assert_eq!(brute, Some(k)),
            None => assert!(brute.is_none_or(|k| k > out.kstar)),
        }
    }
}

#[test]
fn rejects_bad_families() {
    assert!(matches!(compose(&[], 2), Err(Error::EmptyComposition)));
    let err = compose(&[inst(4, &[&[0]]), inst(5, &[&[0]])], 2).unwrap_err();
    assert!(matches!(
        err,
        Error::EquivalenceMismatch {
            input: 1,
            expected: 4,
            found: 5
        }
    ));
    let lone = inst(1, &[]);
    assert!(matches!(
        compose(&[lone.clone(), lone], 1),
        Err(Error::DegenerateComposition(_))
    ));
}

#[test]
fn single_input_is_unchanged() {
    let x = inst(4, &[&[0, 1], &[0, 2]]);
    let out = compose(std::slice::from_ref(&x), 2).unwrap();
    assert_eq!(out.qstar, x);
    assert_eq!(out.kstar, 2);
    assert_eq!(lift_witness(&out, 0, &[1, 0]).unwrap(), vec![0, 1]);
    assert_eq!(extract_witness(&out, &[0, 1]).unwrap(), (0, vec![0, 1]));
}

#[test]
fn budget_and_dual_parameter_closed_forms() {
    let x = inst(2, &[&[0]]);
    for p in 2..=3usize {
        for t in 1..=1024usize {
            let l = gadget_width(t).unwrap();
            let bound = 2.0 * ((t as f64).log2() + 2.0) + p as f64;
            assert!((2 * l + p) as f64 <= bound, "t = {t}");
            // Composing the larger families is only worth it at a sample of sizes.
            if t > 16 && !t.is_power_of_two() && t % 97 != 0 {
                continue;
            }
            let out = compose(&vec![x.clone(); t], p).unwrap();
            let expected = if t == 1 {
                2usize.saturating_sub(p)
            } else {
                2 + 2 * l * (p + 1) + l - (2 * l + p)
            };
            assert_eq!(out.kstar, 2 * l + p);
            match dual_parameter_of_composition(&out) {
                Ok(d) => assert_eq!(d, expected, "t = {t}, p = {p}"),
                Err(_) => assert!(t == 1 && p > 2),
            }
        }
    }
}

#[test]
fn one_row_selectors_collide_on_shared_tests() {
    // With p = 1 every selector is the same cell column, so a test shared by
    // two inputs would appear twice.
    let x = inst(2, &[&[0]]);
    assert!(matches!(
        compose(&[x.clone(), x], 1),
        Err(Error::DuplicateComposedTest { .. })
    ));
    let no = inst(2, &[&[0, 1]]);
    let yes = inst(2, &[&[1]]);
    let out = compose(&[no.clone(), yes], 1).unwrap();
    assert_eq!(out.kstar, 5);
    assert!(solve_exact(&out.qstar, 5).decision.is_yes());
    let out = compose(&[no, inst(2, &[&[]])], 1).unwrap();
    assert!(!solve_exact(&out.qstar, 5).decision.is_yes());
}

#[test]
fn selector_rows_follow_the_bits() {
    let x = inst(3, &[&[0], &[1]]);
    let inputs = vec![x; 5];
    let out = compose(&inputs, 3).unwrap();
    let lay = out.layout;
    for (idx, origin) in out.origins.iter().enumerate() {
        if let TestOrigin::Lifted { input, row, .. } = *origin {
            let bits = bit_vector(input, lay.l).unwrap();
            let test = out.qstar.test(idx);
            for (j, &bit) in bits.iter().enumerate() {
                assert!(test.contains(&lay.cell(2 * j, row)));
                let shifted = (row + usize::from(bit)) % lay.p;
                assert!(test.contains(&lay.cell(2 * j + 1, shifted)));
            }
        }
    }
}

#[test]
fn verify_reports_pass() {
    let yes = inst(4, &[&[0, 1], &[0, 2]]);
    let no = inst(4, &[&[0], &[1], &[2]]);
    let report = verify_composition(&[no.clone(), yes], 2, SizeGuard::default()).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.qstar_optimum, Some(6));
    let report = verify_composition(&[no.clone(), no], 2, SizeGuard::default()).unwrap();
    assert!(report.passed(), "{report}");
    assert!(!report.qstar.is_yes());

    let big = vec![inst(4, &[&[0]]); 5];
    assert!(matches!(
        verify_composition(&big, 3, SizeGuard::default()),
        Err(Error::SizeGuard(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composed_tests_have_the_layer_structure(inputs in families(5), p in 2..=3usize) {
        let out = compose(&inputs, p).unwrap();
        prop_assume!(out.t() >= 2);
        let lay = out.layout;
        let distinct: BTreeSet<_> = out.qstar.tests().iter().collect();
        prop_assert_eq!(distinct.len(), out.qstar.m());
        prop_assert_eq!(out.origins.len(), out.qstar.m());
        let mut gadgets = 0;
        for (idx, origin) in out.origins.iter().enumerate() {
            let test = out.qstar.test(idx);
            match *origin {
                TestOrigin::Gadget { pair, side } => {
                    gadgets += 1;
                    let layer = 2 * pair + usize::from(side == Side::Second);
                    let mut expected: Vec<usize> = vec![lay.pair_vertex(pair), lay.anchor(layer)];
                    expected.extend(lay.cells(layer));
                    expected.sort_unstable();
                    prop_assert_eq!(test, expected.as_slice());
                }
                TestOrigin::Lifted { input, test: j, .. } => {
                    let original = inputs[input].test(j);
                    prop_assert_eq!(&test[..original.len()], original);
                    for layer in 0..lay.layers() {
                        let hits = test
                            .iter()
                            .filter(|&&v| v == lay.anchor(layer) || lay.cells(layer).contains(&v))
                            .count();
                        prop_assert_eq!(hits, 1);
                        prop_assert!(!test.contains(&lay.anchor(layer)));
                    }
                    for pair in 0..lay.l {
                        prop_assert!(!test.contains(&lay.pair_vertex(pair)));
                    }
                }
            }
        }
        prop_assert_eq!(gadgets, 2 * lay.l);
    }

    #[test]
    fn composition_is_an_or(inputs in families(3), p in 2..=3usize) {
        let out = compose(&inputs, p).unwrap();
        let any_yes = inputs
            .iter()
            .any(|x| combinations(x.m(), p.min(x.m())).iter().any(|s| brute_is_cover(x, s)));
        let res = solve_exact(&out.qstar, out.kstar);
        prop_assert_eq!(res.decision.is_yes(), any_yes);
        if let Some(w) = res.witness {
            prop_assert!(brute_is_cover(&out.qstar, &w));
            let (r, cover) = extract_witness(&out, &w).unwrap();
            prop_assert!(cover.len() <= p);
            prop_assert!(brute_is_cover(&inputs[r], &cover));
            if out.t() >= 2 {
                prop_assert_eq!(w.len(), out.kstar);
            }
        }
    }

    #[test]
    fn lifting_round_trips(inputs in families(4), p in 2..=3usize) {
        let out = compose(&inputs, p).unwrap();
        for (i, x) in inputs.iter().enumerate() {
            let Some((_, cover)) = brute_min_cover(x) else { continue };
            if cover.len() > p {
                continue;
            }
            let lifted = lift_witness(&out, i, &cover).unwrap();
            prop_assert!(brute_is_cover(&out.qstar, &lifted));
            if out.t() >= 2 {
                prop_assert_eq!(lifted.len(), out.kstar);
            }
            let (r, back) = extract_witness(&out, &lifted).unwrap();
            prop_assert_eq!(r, i);
            prop_assert_eq!(back, cover);
        }
    }

    #[test]
    fn dualize_is_an_involution(x in instances(7, 6), k in 0..=7usize) {
        prop_assume!(k <= x.n());
        let q = DualQuery::new(x, k, VERTEX_COUNT).unwrap();
        let d = dualize(&q).unwrap();
        prop_assert_eq!(d.k, q.instance.n() - k);
        prop_assert_eq!(dualize(&d).unwrap(), q);
    }
}
