//! Workbench for generalized unique games whose edge weights may be
//! negative.
//!
//! The crate builds the instance families and reduction gadgets of this
//! problem area ([`reduce`]), evaluates labelings exactly ([`eval`]),
//! solves small instances by exhaustive search and runs the factor-2 local
//! search for all-negative instances ([`solve`]), and checks the gadgets'
//! combinatorial claims on concrete inputs ([`verify`]). Every weight and
//! value is an exact [`Rational`].

pub mod error;
pub mod eval;
pub mod format;
pub mod generate;
pub mod instance;
pub mod perm;
pub mod rational;
pub mod reduce;
pub mod rng;
pub mod solve;
pub mod verify;

pub use error::{Error, Result};
pub use eval::{
    labeling_value, relational_satisfied_weight, satisfied_weight, unsatisfied_weight, Objective,
};
pub use format::{parse, Document, Format};
pub use generate::{generate, Family, GenSpec, Generated};
pub use instance::{
    metrics, GugpEdge, GugpInstance, InstanceMetrics, Labeling, RelationalEdge, RelationalInstance,
    Side,
};
pub use perm::{classify_relation, Classification, Permutation, Relation, RelationKind};
pub use rational::Rational;
pub use solve::{
    brute_force, brute_force_relational, local_search_half, LocalSearchOptions, SolveResult,
};
pub use verify::{Verdict, VerifyReport, Witness};
