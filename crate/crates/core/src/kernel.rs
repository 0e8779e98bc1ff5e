//! Kernelization for instances whose tests have at most `r` vertices.
//!
//! Adding a test to a partial cover with `t` classes creates at most
//! `min(t, r)` new classes, so `s` tests induce at most [`max_classes`]`(s, r)`
//! classes. An instance with more vertices than that cannot have a cover of
//! `k` tests and is replaced by a canonical NO instance; anything else is
//! already small and passes through unchanged.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{floor_log2, Instance, Query};

/// Upper bound on the classes induced by `s` tests of size at most `r`.
///
/// Doubling while `s ≤ ⌊log₂ r⌋`, then `+r` per test.
pub fn max_classes(s: usize, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let doubling = floor_log2(r) as usize;
    if s <= doubling {
        return Ok(1usize << s);
    }
    (s - doubling)
        .checked_mul(r)
        .and_then(|linear| linear.checked_add(1usize << doubling))
        .ok_or(Error::Overflow("max_classes"))
}

/// Closed-form vertex bound `k·r − (⌊log₂ r⌋ − 1)·r`, valid for `k ≥ ⌊log₂ r⌋`.
pub fn kernel_vertex_bound(r: usize, k: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let doubling = floor_log2(r) as usize;
    if k < doubling {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is below ⌊log₂ r⌋ = {doubling}; use max_classes instead"
        )));
    }
    // k·r − (d − 1)·r = (k − d + 1)·r
    (k - doubling + 1)
        .checked_mul(r)
        .ok_or(Error::Overflow("kernel_vertex_bound"))
}

pub(crate) fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Test-count bound `Σ_{s=1}^{r} C(r·k, s)` on a kernel.
pub fn kernel_test_bound(r: usize, k: usize) -> Result<u128> {
    if r == 0 || k == 0 {
        return Err(Error::InvalidArgument("r and k must be at least 1".into()));
    }
    let ground = (r as u128)
        .checked_mul(k as u128)
        .ok_or(Error::Overflow("kernel_test_bound"))?;
    (1..=r as u128).try_fold(0u128, |acc, s| {
        binomial(ground, s)
            .and_then(|c| acc.checked_add(c))
            .ok_or(Error::Overflow("kernel_test_bound"))
    })
}

/// Number of distinct tests (the empty one included) of size at most `r`
/// over `n` vertices.
fn distinct_tests_up_to(n: usize, r: usize) -> Result<u128> {
    (0..=r.min(n) as u128).try_fold(0u128, |acc, s| {
        binomial(n as u128, s)
            .and_then(|c| acc.checked_add(c))
            .ok_or(Error::Overflow("test count"))
    })
}

/// How the maximum test size is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxTestSize {
    Explicit(usize),
    /// The largest test of the instance (at least 1).
    Auto,
}

impl MaxTestSize {
    pub fn resolve(self, instance: &Instance) -> usize {
        match self {
            MaxTestSize::Explicit(r) => r,
            MaxTestSize::Auto => instance.max_test_size().max(1),
        }
    }
}

impl FromStr for MaxTestSize {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(MaxTestSize::Auto);
        }
        s.parse()
            .map(MaxTestSize::Explicit)
            .map_err(|_| format!("expected a positive integer or `auto`, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelResult {
    /// The instance is already within the bounds and is returned unchanged.
    Pass(Instance),
    /// The instance is a NO instance.
    TrivialNo,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelOutcome {
    pub result: KernelResult,
    pub r: usize,
    pub k: usize,
    /// Most classes `k` tests of size `≤ r` can induce.
    pub vertex_bound: usize,
    /// Most distinct tests of size `≤ r` over `vertex_bound` vertices.
    pub test_bound: u128,
}

impl KernelOutcome {
    /// The kernel as a decision query: the instance with budget `k`, or the
    /// canonical NO instance (two vertices, no tests, budget 0).
    pub fn query(&self) -> Query {
        match &self.result {
            KernelResult::Pass(instance) => Query::new(instance.clone(), self.k, Some(self.k)),
            KernelResult::TrivialNo => Query::new(canonical_no(), 0, Some(0)),
        }
    }

    pub fn is_trivial_no(&self) -> bool {
        self.result == KernelResult::TrivialNo
    }
}

pub fn canonical_no() -> Instance {
    Instance::new(2, Vec::new()).expect("two vertices and no tests is valid")
}

pub fn kernelize_bounded(instance: &Instance, r: MaxTestSize, k: usize) -> Result<KernelOutcome> {
    let r = r.resolve(instance);
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    if let Some((test, t)) = instance
        .tests()
        .iter()
        .enumerate()
        .find(|(_, t)| t.len() > r)
    {
        return Err(Error::TestTooLarge {
            test,
            size: t.len(),
            r,
        });
    }
    let vertex_bound = max_classes(k, r)?;
    let test_bound = distinct_tests_up_to(vertex_bound, r)?;
    let result = if instance.n() > vertex_bound {
        KernelResult::TrivialNo
    } else {
        KernelResult::Pass(instance.clone())
    };
    Ok(KernelOutcome {
        result,
        r,
        k,
        vertex_bound,
        test_bound,
    })
}
