//! Algorithms for co-secure domination in simple undirected graphs.
//!
//! The crate provides an immutable graph type with set-based structural
//! queries ([`graph`]), certificate-producing verifiers for domination
//! variants ([`verify`]), brute-force optimal solvers used as ground-truth
//! oracles ([`exact`]), approximation algorithms for general and regular
//! graphs ([`approx`]), approximation-preserving reductions from minimum
//! domination with structural validators ([`reduce`]), and instance
//! generators ([`gen`]).

pub mod approx;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod reduce;
pub mod verify;

pub use approx::{ConversionOutcome, GreedyTrace, PathOrCycle};
pub use exact::{Diagnostic, Method, SolveResult};
pub use graph::{DegreeProfile, Graph, GraphError, Residual, VertexSet};
pub use verify::{Certificate, FailureKind, SetProperty};
