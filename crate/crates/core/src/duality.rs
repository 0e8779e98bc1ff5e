//! Size functions and dual parameterizations.
//!
//! For a size function `s` with `0 ≤ k ≤ s(x) ≤ |x|`, the dual of a query
//! `(x, k)` is `(x, s(x) − k)`. With `s(x) = n` the dual of the standard
//! Test Cover parameterization asks for a cover of at most `n − k` tests.

use std::fmt;

use crate::compose::CompositionOutput;
use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Clone, Copy)]
pub struct SizeFunction {
    pub name: &'static str,
    pub eval: fn(&Instance) -> usize,
}

impl SizeFunction {
    pub fn apply(&self, instance: &Instance) -> usize {
        (self.eval)(instance)
    }
}

impl PartialEq for SizeFunction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for SizeFunction {}

impl fmt::Debug for SizeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SizeFunction({})", self.name)
    }
}

/// `s(x) = n`, the vertex count.
pub fn size_function_n(instance: &Instance) -> usize {
    instance.n()
}

pub const VERTEX_COUNT: SizeFunction = SizeFunction {
    name: "vertex-count",
    eval: size_function_n,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualQuery {
    pub instance: Instance,
    pub k: usize,
    pub size_fn: SizeFunction,
}

impl DualQuery {
    pub fn new(instance: Instance, k: usize, size_fn: SizeFunction) -> Result<Self> {
        let size = size_fn.apply(&instance);
        if k > size {
            return Err(Error::SizeFunction { k, size });
        }
        Ok(DualQuery {
            instance,
            k,
            size_fn,
        })
    }
}

/// `(x, k) ↦ (x, s(x) − k)`. Applying it twice gives back the query.
pub fn dualize(q: &DualQuery) -> Result<DualQuery> {
    let size = q.size_fn.apply(&q.instance);
    let k = size
        .checked_sub(q.k)
        .ok_or(Error::SizeFunction { k: q.k, size })?;
    Ok(DualQuery {
        instance: q.instance.clone(),
        k,
        size_fn: q.size_fn,
    })
}

/// Dual parameter `s(Q*) − k*` of a composed instance, with `s` the vertex count.
///
/// Only a single-input composition with `p > n` can fail.
pub fn dual_parameter_of_composition(out: &CompositionOutput) -> Result<usize> {
    let size = size_function_n(&out.qstar);
    size.checked_sub(out.kstar)
        .ok_or(Error::SizeFunction { k: out.kstar, size })
}
