//! Test Cover: given vertices `0..n` and distinct vertex subsets called
//! tests, pick as few tests as possible so that every pair of vertices is
//! separated (exactly one of the two lies in some picked test).
//!
//! The crate provides exact, greedy and parameterized solvers, a kernel for
//! instances with bounded test size, an OR-composition of instances that
//! share a vertex count, and the dual parameterization `n − k`.

pub mod cli;
pub mod compose;
pub mod duality;
pub mod error;
pub mod instance;
pub mod io;
pub mod kernel;
pub mod partition;
pub mod solver;

pub use compose::{
    compose, extract_witness, lift_witness, verify_composition, CompositionOutput,
    CompositionReport, SizeGuard, TestOrigin, VertexLayout,
};
pub use duality::{dualize, DualQuery, SizeFunction, VERTEX_COUNT};
pub use error::{Error, Result, Violation};
pub use instance::{log_lower_bound, separates, validate, Instance, Query, Test};
pub use kernel::{kernelize_bounded, KernelOutcome, KernelResult, MaxTestSize};
pub use partition::{induced_classes, is_test_cover, refine, Partition};
pub use solver::{
    greedy_cover, min_test_cover, solve_dual, solve_exact, solve_fpt_standard, Decision,
    SolveOutcome, Solver,
};
