//! SCL-SUP: the SCL strategy that rebuilds the superposition model operator
//! on the trail, plus the machinery that checks it against an independent
//! SUP-MO run.

mod invariants;
mod lockstep;
mod strategy;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::Clause;
use crate::ordering::GammaMap;
use crate::scl::{SclError, SclState, SclStep};

pub use invariants::{check_invariants, InvariantReport, INVARIANT_NAMES};
pub use lockstep::{lockstep_verify, Failure, FailureKind, VerifyEvent, VerifyReport};
pub use strategy::{
    atomic_part1, atomic_part2, initial_state, next_decision_aid, pending_negative_decisions,
    run_scl_sup, SclSupOutcome, SclSupRun,
};

/// Simulation bookkeeping attached to an SCL state: the index of the
/// superposition state being simulated, the decision aid (⊥ = empty
/// clause), and γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub i: usize,
    pub aid: Clause,
    pub gamma: GammaMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedState {
    pub scl: SclState,
    pub ann: Annotation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeqKind {
    #[serde(rename = "P1-2a")]
    P1Decide,
    #[serde(rename = "P1-2b")]
    P1PropagateConflict,
    #[serde(rename = "P1-2c")]
    P1NoRule,
    #[serde(rename = "P2-2a")]
    P2Refutation,
    #[serde(rename = "P2-4a")]
    P2Propagate,
    #[serde(rename = "P2-4b")]
    P2Decide,
    #[serde(rename = "P2-4c")]
    P2PropagateConflict,
}

impl SeqKind {
    pub fn label(self) -> &'static str {
        match self {
            SeqKind::P1Decide => "P1-2a",
            SeqKind::P1PropagateConflict => "P1-2b",
            SeqKind::P1NoRule => "P1-2c",
            SeqKind::P2Refutation => "P2-2a",
            SeqKind::P2Propagate => "P2-4a",
            SeqKind::P2Decide => "P2-4b",
            SeqKind::P2PropagateConflict => "P2-4c",
        }
    }

    pub fn is_part2(self) -> bool {
        matches!(
            self,
            SeqKind::P2Refutation
                | SeqKind::P2Propagate
                | SeqKind::P2Decide
                | SeqKind::P2PropagateConflict
        )
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The rule burst between two annotated states at which the simulation
/// invariants are expected to hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomicSequence {
    pub kind: SeqKind,
    pub steps: Vec<SclStep>,
    pub before: AnnotatedState,
    pub after: AnnotatedState,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("{rule} failed: {error}")]
    Rule { rule: &'static str, error: SclError },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no decision aid follows the current one")]
    NoDecisionAid,
    #[error("state is neither final nor covered by an atomic sequence: {0}")]
    Stuck(String),
    #[error("step cap of {0} atomic sequences exceeded")]
    CapExceeded(usize),
    #[error("annotation index {i} is outside the superposition run ({states} states)")]
    IndexOutOfRange { i: usize, states: usize },
}
