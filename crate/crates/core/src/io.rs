//! Instance files and random instances.
//!
//! Instances are stored as compact JSON:
//!
//! ```text
//! {"n":4,"tests":[[0,1],[0,2]],"budget":2,"parameter":2}
//! ```
//!
//! `budget` and `parameter` are optional. The canonical form lists every
//! test in ascending vertex order, tests in lexicographic order, and no
//! whitespace. Parsing accepts any valid file and keeps the test order of
//! the file, so witness indices refer to the file as written.

use std::collections::HashSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, Test};
use crate::kernel::binomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub tests: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<usize>,
}

/// A parsed instance together with the optional query fields of its file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub instance: Instance,
    pub budget: Option<usize>,
    pub parameter: Option<usize>,
}

pub fn parse(text: &str) -> Result<Parsed> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let tests = file
        .tests
        .into_iter()
        .map(|mut t| {
            t.sort_unstable();
            t
        })
        .collect();
    Ok(Parsed {
        instance: Instance::new(file.n, tests)?,
        budget: file.budget,
        parameter: file.parameter,
    })
}

/// Canonical text of an instance and its optional query fields.
pub fn serialize(instance: &Instance, budget: Option<usize>, parameter: Option<usize>) -> String {
    let canonical = instance.canonical();
    let file = InstanceFile {
        n: canonical.n(),
        tests: canonical.into_tests(),
        budget,
        parameter,
    };
    serde_json::to_string(&file).expect("instance files always serialize")
}

/// Re-encodes any valid instance text in canonical form.
pub fn canonicalize(text: &str) -> Result<String> {
    let parsed = parse(text)?;
    Ok(serialize(&parsed.instance, parsed.budget, parsed.parameter))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub m: usize,
    /// Largest test size.
    pub r: usize,
    pub seed: u64,
}

/// Candidate pools up to this size are enumerated and sampled directly.
const ENUMERATION_LIMIT: u128 = 1 << 16;

fn subsets_up_to(n: usize, r: usize) -> Vec<Test> {
    fn extend(n: usize, r: usize, current: &mut Vec<usize>, out: &mut Vec<Test>) {
        let next = current.last().map_or(0, |&v| v + 1);
        for v in next..n {
            current.push(v);
            out.push(current.clone());
            if current.len() < r {
                extend(n, r, current, out);
            }
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, r, &mut Vec::new(), &mut out);
    out
}

/// `m` distinct tests of size `1..=r`, drawn uniformly without replacement
/// from all such subsets of `0..n`. Tests come out in canonical order.
pub fn gen_random(cfg: GeneratorConfig) -> Result<Instance> {
    if cfg.n == 0 || cfg.r == 0 {
        return Err(Error::InvalidArgument("n and r must be at least 1".into()));
    }
    let r = cfg.r.min(cfg.n);
    let available = (1..=r as u128).try_fold(0u128, |acc, s| {
        binomial(cfg.n as u128, s)
            .and_then(|c| acc.checked_add(c))
            .ok_or(Error::Overflow("generator pool size"))
    })?;
    if cfg.m as u128 > available {
        return Err(Error::Infeasible {
            m: cfg.m,
            available,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tests: Vec<Test> = if available <= ENUMERATION_LIMIT {
        let pool = subsets_up_to(cfg.n, r);
        index::sample(&mut rng, pool.len(), cfg.m)
            .into_iter()
            .map(|i| pool[i].clone())
            .collect()
    } else {
        let mut seen = HashSet::with_capacity(cfg.m);
        let mut tests = Vec::with_capacity(cfg.m);
        while tests.len() < cfg.m {
            let size = rng.gen_range(1..=r);
            let mut test = index::sample(&mut rng, cfg.n, size).into_vec();
            test.sort_unstable();
            if seen.insert(test.clone()) {
                tests.push(test);
            }
        }
        tests
    };
    tests.sort();
    Instance::new(cfg.n, tests)
}
