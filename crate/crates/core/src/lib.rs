//! Spectral graph toolkit core.
//!
//! Everything here is a pure function of immutable inputs and builds under
//! `no_std` with `alloc`. File formats, reports and the command line live in
//! the companion `sgt` crate.
//!
//! Module map:
//!
//! - [`graph`]: packed-bit adjacency graphs, family generators, combinatorial
//!   counters and the cluster-editing oracle.
//! - [`linalg`]: dense symmetric eigensolver (Householder + implicit QL) and
//!   small vector helpers.
//! - [`spectral`]: [`Spectrum`], energy, threshold sums `S_T` / level sets
//!   `L_T`, flatness, embedding vectors and residual Gram mass.
//! - [`recursion`]: verifiers for the threshold-sum recursions, the generic
//!   recursion solver and the top-concentration check.
//! - [`probe`]: Gaussian probes on Hadamard-product subspaces, clipping and the
//!   truncation-effect Monte Carlo.
//! - [`surplus`]: exact and heuristic max-cut, surplus certificates and the
//!   low-rank SDP lower bound.
//! - [`structure`]: spectral partitioning into near-cliques and the
//!   eigen-witness / closeness dichotomy.
//! - [`increment`]: high-degree peeling, densest neighborhoods and the
//!   density-increment loop.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod graph;
pub mod increment;
pub mod linalg;
pub mod probe;
pub mod recursion;
pub mod rng;
pub mod spectral;
pub mod structure;
pub mod surplus;

pub use error::{Error, Result};
pub use graph::{Graph, GraphFamily};
pub use spectral::{Spectrum, ThresholdProfile};

use serde::Serialize;

/// Outcome of a gated check.
///
/// Checks whose hypotheses do not hold report `NotApplicable` so that corpus
/// statistics never count vacuous truth as verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Verdict::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        }
    }
}
