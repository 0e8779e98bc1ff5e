use std::fmt;

use thiserror::Error;

/// First invariant violation found while validating an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The instance has no vertices.
    NoVertices,
    /// A test mentions a vertex outside `0..n`.
    IndexOutOfRange { test: usize, index: usize, n: usize },
    /// A test lists its vertices out of ascending order.
    UnsortedTest { test: usize },
    /// A test lists the same vertex twice.
    RepeatedVertex { test: usize, vertex: usize },
    /// Two tests contain exactly the same vertices.
    DuplicateTest { first: usize, second: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "instance must have at least one vertex"),
            Violation::IndexOutOfRange { test, index, n } => {
                write!(f, "test {test}: index out of range ({index} >= {n})")
            }
            Violation::UnsortedTest { test } => {
                write!(
                    f,
                    "test {test}: unsorted encoding (indices must be ascending)"
                )
            }
            Violation::RepeatedVertex { test, vertex } => {
                write!(f, "test {test}: vertex {vertex} listed twice")
            }
            Violation::DuplicateTest { first, second } => {
                write!(f, "test {second}: duplicate test (same as test {first})")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(Violation),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter {k} exceeds size function value {size}")]
    SizeFunction { k: usize, size: usize },

    #[error("test {test} has {size} vertices, more than r = {r}")]
    TestTooLarge { test: usize, size: usize, r: usize },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("input {input} has {found} vertices, expected {expected} (inputs must share the vertex count)")]
    EquivalenceMismatch {
        input: usize,
        expected: usize,
        found: usize,
    },

    #[error("composition needs at least one input")]
    EmptyComposition,

    #[error("composition is degenerate: {0}")]
    DegenerateComposition(String),

    #[error("witness is not a test cover of {0}")]
    NotACover(String),

    #[error("witness has {size} tests, more than the allowed {limit}")]
    WitnessTooLarge { size: usize, limit: usize },

    #[error("witness mixes lifted tests of inputs {first} and {second}")]
    MixedOrigins { first: usize, second: usize },

    #[error("composed instance generated duplicate tests {first} and {second}")]
    DuplicateComposedTest { first: usize, second: usize },

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("generator cannot produce {m} distinct tests: only {available} exist")]
    Infeasible { m: usize, available: u128 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidInstance(v)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
