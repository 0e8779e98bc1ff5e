//! The Test Cover instance model.
//!
//! Vertices are the indices `0..n`. A test is a strictly ascending list of
//! vertex indices, and the tests of an instance are pairwise distinct.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result, Violation};

/// A vertex subset, stored as strictly ascending vertex indices.
pub type Test = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    n: usize,
    tests: Vec<Test>,
}

impl Instance {
    /// Builds an instance, rejecting anything [`validate`] would reject.
    pub fn new(n: usize, tests: Vec<Test>) -> Result<Self> {
        check(n, &tests)?;
        Ok(Instance { n, tests })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of tests, `m`.
    pub fn m(&self) -> usize {
        self.tests.len()
    }

    pub fn tests(&self) -> &[Test] {
        &self.tests
    }

    pub fn test(&self, idx: usize) -> &[usize] {
        &self.tests[idx]
    }

    /// Largest test size, or 0 when there are no tests.
    pub fn max_test_size(&self) -> usize {
        self.tests.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The same instance with its tests in lexicographic order.
    pub fn canonical(&self) -> Instance {
        let mut tests = self.tests.clone();
        tests.sort();
        Instance { n: self.n, tests }
    }

    pub fn into_tests(self) -> Vec<Test> {
        self.tests
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} tests={:?}", self.n, self.tests)
    }
}

/// Checks every instance invariant and reports the first violation.
pub fn validate(n: usize, tests: &[Test]) -> std::result::Result<(), Violation> {
    if n == 0 {
        return Err(Violation::NoVertices);
    }
    let mut seen: HashMap<&[usize], usize> = HashMap::with_capacity(tests.len());
    for (t, test) in tests.iter().enumerate() {
        if let Some(&index) = test.iter().find(|&&v| v >= n) {
            return Err(Violation::IndexOutOfRange { test: t, index, n });
        }
        if let Some(w) = test.windows(2).find(|w| w[0] >= w[1]) {
            return Err(if w[0] == w[1] {
                Violation::RepeatedVertex {
                    test: t,
                    vertex: w[0],
                }
            } else {
                Violation::UnsortedTest { test: t }
            });
        }
        if let Some(&first) = seen.get(test.as_slice()) {
            return Err(Violation::DuplicateTest { first, second: t });
        }
        seen.insert(test, t);
    }
    Ok(())
}

fn check(n: usize, tests: &[Test]) -> Result<()> {
    validate(n, tests).map_err(Error::from)
}

/// Non-fatal observations about an otherwise valid instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lint {
    /// The test is empty and separates no pair.
    EmptyTest { test: usize },
    /// The test holds every vertex and separates no pair.
    FullTest { test: usize },
}

impl fmt::Display for Lint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lint::EmptyTest { test } => write!(f, "test {test} is empty and separates nothing"),
            Lint::FullTest { test } => {
                write!(f, "test {test} contains every vertex and separates nothing")
            }
        }
    }
}

pub fn lint(instance: &Instance) -> Vec<Lint> {
    instance
        .tests()
        .iter()
        .enumerate()
        .filter_map(|(t, test)| {
            if test.is_empty() {
                Some(Lint::EmptyTest { test: t })
            } else if test.len() == instance.n() {
                Some(Lint::FullTest { test: t })
            } else {
                None
            }
        })
        .collect()
}

/// True iff exactly one of `u`, `v` lies in `test`.
///
/// `n` is the ambient vertex count; `test` must be sorted.
pub fn separates(test: &[usize], u: usize, v: usize, n: usize) -> Result<bool> {
    if u == v {
        return Err(Error::InvalidArgument(format!(
            "cannot separate vertex {u} from itself"
        )));
    }
    if u >= n || v >= n {
        return Err(Error::InvalidArgument(format!(
            "pair ({u}, {v}) out of range for n = {n}"
        )));
    }
    let has_u = test.binary_search(&u).is_ok();
    let has_v = test.binary_search(&v).is_ok();
    Ok(has_u != has_v)
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub(crate) fn ceil_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// `⌊log₂ x⌋` for `x ≥ 1`.
pub(crate) fn floor_log2(x: usize) -> u32 {
    debug_assert!(x >= 1);
    usize::BITS - 1 - x.leading_zeros()
}

/// Minimum possible size of any test cover on `n` vertices, `⌈log₂ n⌉`.
pub fn log_lower_bound(n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "lower bound needs at least one vertex".into(),
        ));
    }
    Ok(ceil_log2(n) as usize)
}

/// A decision query: does `instance` have a test cover of at most `budget` tests?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub instance: Instance,
    pub budget: usize,
    pub parameter: Option<usize>,
}

impl Query {
    /// Budgets above `m` are clamped to `m`; no cover can use more tests than exist.
    pub fn new(instance: Instance, budget: usize, parameter: Option<usize>) -> Self {
        let budget = budget.min(instance.m());
        Query {
            instance,
            budget,
            parameter,
        }
    }
}
