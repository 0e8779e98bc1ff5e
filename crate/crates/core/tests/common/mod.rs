//! Brute-force oracles shared by the integration tests. Nothing here goes
//! through partition refinement or the branch-and-bound search.

#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use testcover::Instance;

/// Every pair `u < v` has a selected test containing exactly one of them.
pub fn brute_is_cover(instance: &Instance, subset: &[usize]) -> bool {
    let n = instance.n();
    (0..n).all(|u| {
        (u + 1..n).all(|v| {
            subset.iter().any(|&t| {
                let test = instance.test(t);
                test.contains(&u) != test.contains(&v)
            })
        })
    })
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Minimum cover size and the lexicographically smallest minimum cover,
/// by enumerating subsets in order of size.
pub fn brute_min_cover(instance: &Instance) -> Option<(usize, Vec<usize>)> {
    (0..=instance.m()).find_map(|k| {
        combinations(instance.m(), k)
            .into_iter()
            .find(|s| brute_is_cover(instance, s))
            .map(|s| (k, s))
    })
}

/// Minimum cover size by scanning all `2^m` subsets as bitmasks.
pub fn bitmask_min_cover(instance: &Instance) -> Option<usize> {
    let m = instance.m();
    assert!(m < 20);
    (0u32..1 << m)
        .filter(|mask| {
            let subset: Vec<usize> = (0..m).filter(|&t| mask >> t & 1 == 1).collect();
            brute_is_cover(instance, &subset)
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
}

/// Class count induced by `subset`, via membership signatures.
pub fn brute_class_count(instance: &Instance, subset: &[usize]) -> usize {
    (0..instance.n())
        .map(|v| {
            subset
                .iter()
                .map(|&t| instance.test(t).contains(&v))
                .collect::<Vec<bool>>()
        })
        .collect::<BTreeSet<_>>()
        .len()
}

/// Valid instances with `1 ≤ n ≤ max_n` and at most `max_m` tests.
pub fn instances(max_n: usize, max_m: usize) -> impl Strategy<Value = Instance> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 0..=n), 0..=max_m).prop_map(
            move |sets| {
                let mut seen = BTreeSet::new();
                let tests: Vec<Vec<usize>> = sets
                    .into_iter()
                    .filter(|s| seen.insert(s.clone()))
                    .map(|s| s.into_iter().collect())
                    .collect();
                Instance::new(n, tests).expect("deduplicated sorted tests are valid")
            },
        )
    })
}
