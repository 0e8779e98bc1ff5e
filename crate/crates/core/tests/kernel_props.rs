mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use testcover::kernel::{kernel_test_bound, kernel_vertex_bound, max_classes};
use testcover::{
    kernelize_bounded, refine, solve_exact, Decision, Instance, KernelResult, MaxTestSize,
    Partition,
};

use common::{brute_class_count, combinations};

/// Nonempty subsets of `0..n` with at most `r` elements.
fn small_tests(n: usize, r: usize) -> Vec<Vec<usize>> {
    (1..=r.min(n)).flat_map(|s| combinations(n, s)).collect()
}

/// Largest class count any `s` distinct tests of size `≤ r` induce on `n` vertices.
fn brute_max_classes(n: usize, s: usize, r: usize) -> usize {
    let pool = small_tests(n, r);
    let all = Instance::new(n, pool.clone()).unwrap();
    combinations(pool.len(), s)
        .iter()
        .map(|family| brute_class_count(&all, family))
        .max()
        .unwrap_or(1)
}

#[test]
fn max_classes_bounds_exhaustive_search() {
    for s in 0..=3 {
        let n = max_classes(s, 2).unwrap();
        assert!(brute_max_classes(n, s, 2) <= n, "s = {s}, r = 2");
        assert!(brute_max_classes(6, s, 2) <= n, "s = {s}, r = 2, n = 6");
    }
    for s in 0..=2 {
        assert_eq!(brute_max_classes(6, s, 2), max_classes(s, 2).unwrap());
    }
    // Six distinct membership vectors over three tests need total weight
    // 0+1+1+1+2+2 = 7, but three pairs only have 6 memberships.
    assert_eq!(max_classes(3, 2).unwrap(), 6);
    assert_eq!(brute_max_classes(6, 3, 2), 5);
    // Singleton tests each peel off one vertex.
    for s in 0..=4 {
        assert_eq!(brute_max_classes(6, s, 1), max_classes(s, 1).unwrap());
    }
    // With r = 3 two tests still induce at most 2^2 = 4 classes, below the bound 5.
    for s in 0..=2 {
        let brute = brute_max_classes(6, s, 3);
        assert!(brute <= max_classes(s, 3).unwrap());
        assert_eq!(brute, 1 << s);
    }
}

#[test]
fn closed_form_for_single_vertex_tests() {
    // The closed form gives 5·1 − (0 − 1)·1 = 6, matching the class bound.
    assert_eq!(kernel_vertex_bound(1, 5).unwrap(), 6);
    assert_eq!(brute_max_classes(7, 5, 1), 6);
}

#[test]
fn kernel_is_sound_exhaustively() {
    // Every instance on n = bound + 1 or bound + 2 vertices built from a
    // sample of small-test families is a NO instance at budget k.
    for r in 2..=3 {
        for k in 0..=3 {
            let bound = max_classes(k, r).unwrap();
            for n in bound + 1..=bound + 2 {
                let pool = small_tests(n, r);
                let step = (pool.len() / 6).max(1);
                for start in 0..pool.len().min(6) {
                    let tests: Vec<Vec<usize>> =
                        pool.iter().skip(start).step_by(step).cloned().collect();
                    let inst = Instance::new(n, tests).unwrap();
                    let out = kernelize_bounded(&inst, MaxTestSize::Explicit(r), k).unwrap();
                    assert_eq!(out.result, KernelResult::TrivialNo);
                    assert_eq!(
                        solve_exact(&inst, k).decision,
                        Decision::No,
                        "r={r} k={k} n={n}"
                    );
                }
                // the full pool of small tests is the strongest possible family
                let inst = Instance::new(n, pool.clone()).unwrap();
                if inst.m() <= 24 {
                    assert_eq!(
                        solve_exact(&inst, k).decision,
                        Decision::No,
                        "r={r} k={k} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn bound_is_attained_on_the_boundary() {
    // n = bound with the full pool of pairs: a cover of k tests exists for
    // k ≤ 2. At k = 3 the bound 6 is not attained (see above).
    for k in 1..=2 {
        let n = max_classes(k, 2).unwrap();
        let inst = Instance::new(n, small_tests(n, 2)).unwrap();
        let out = kernelize_bounded(&inst, MaxTestSize::Explicit(2), k).unwrap();
        assert!(matches!(out.result, KernelResult::Pass(_)));
        assert_eq!(solve_exact(&inst, k).decision, Decision::Yes, "k = {k}");
    }
    let six = Instance::new(6, small_tests(6, 2)).unwrap();
    let out = kernelize_bounded(&six, MaxTestSize::Explicit(2), 3).unwrap();
    assert!(matches!(out.result, KernelResult::Pass(_)));
    assert_eq!(solve_exact(&six, 3).decision, Decision::No);
}

#[test]
fn test_bound_counts_distinct_small_tests() {
    for r in 2usize..=4 {
        for k in r.ilog2() as usize..=4 {
            if k == 0 {
                continue;
            }
            let vertices = kernel_vertex_bound(r, k).unwrap();
            let distinct = small_tests(vertices, r).len() as u128;
            assert!(kernel_test_bound(r, k).unwrap() >= distinct, "r={r} k={k}");
        }
    }
    // For r = 1 the closed-form vertex bound k + 1 exceeds r·k, so the
    // count over r·k vertices falls one short.
    assert_eq!(kernel_test_bound(1, 3).unwrap(), 3);
    assert_eq!(small_tests(kernel_vertex_bound(1, 3).unwrap(), 1).len(), 4);
}

proptest! {
    #[test]
    fn class_bound_below_closed_form(r in 1usize..64, extra in 0usize..20) {
        let s = r.ilog2() as usize + extra;
        prop_assert!(max_classes(s, r).unwrap() <= kernel_vertex_bound(r, s).unwrap());
    }

    #[test]
    fn growth_is_at_most_min_classes_and_r(
        labels in prop::collection::vec(0usize..5, 1..10),
        test in prop::collection::btree_set(0usize..10, 0..10),
    ) {
        let n = labels.len();
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); 5];
        for (v, &c) in labels.iter().enumerate() {
            blocks[c].push(v);
        }
        blocks.retain(|b| !b.is_empty());
        let p = Partition::from_blocks(blocks).unwrap();
        let test: Vec<usize> = test.into_iter().filter(|&v| v < n).collect();
        let next = refine(&p, &test).unwrap();
        prop_assert!(next.len() - p.len() <= p.len().min(test.len()));
    }

    #[test]
    fn pass_respects_all_bounds(i in common::instances(7, 9), k in 0usize..5) {
        let r = i.max_test_size().max(1);
        let out = kernelize_bounded(&i, MaxTestSize::Auto, k).unwrap();
        prop_assert_eq!(out.r, r);
        match &out.result {
            KernelResult::TrivialNo => {
                prop_assert!(i.n() > out.vertex_bound);
                prop_assert_eq!(solve_exact(&i, k).decision, Decision::No);
            }
            KernelResult::Pass(kept) => {
                prop_assert_eq!(kept, &i);
                prop_assert!(i.n() <= out.vertex_bound);
                prop_assert!(i.m() as u128 <= out.test_bound);
                if r >= 2 {
                    prop_assert!(i.n() <= k * r);
                }
            }
        }
        let distinct: BTreeSet<&Vec<usize>> = i.tests().iter().collect();
        prop_assert_eq!(distinct.len(), i.m());
    }
}
