//! Compact linearization of binary quadratic programs whose variables are
//! governed by assignment constraints.
//!
//! Products x_i * x_j are replaced by variables y_ij that are forced to the
//! product value not by the usual three bound rows per pair but by equations
//! obtained from multiplying assignment constraints with single variables.
//! The price is a closure: the set of y variables may have to grow beyond
//! the products appearing in the objective. This crate computes such
//! closures (exactly for disjoint assignment sets, heuristically otherwise),
//! proves or refutes their consistency by exhaustive verification, minimizes
//! their size with a small branch and bound over a set covering relaxation,
//! and emits the resulting models in LP format.

pub mod cli;
pub mod emit;
pub mod error;
pub mod instance;
pub mod linearize;
pub mod lp;
pub mod milp;
pub mod verify;

pub use cli::run;
pub use emit::{emit_compact, emit_standard, size_report};
pub use error::{Error, Result};
pub use instance::{parse_instance, BqpInstance, Pair};
pub use linearize::{check_conditions, construct_sets, LinearizationPlan};
pub use lp::write_lp;
pub use milp::{build_min_milp, check_tu_structure, solve_exact};
pub use verify::{check_consistency, enumerate_feasible_x, liberti_plan};
