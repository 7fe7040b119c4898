//! Search for tournaments with short square paths: exhaustive enumeration
//! for tiny `n`, simulated annealing over single-pair flips beyond that.

pub mod anneal;
pub mod canon;
pub mod enumerate;
pub mod output;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::solver::PowerPath;
use crate::tournament::{Tournament, TournamentError};

pub use anneal::{anneal_chains, anneal_min_pp, AnnealCheckpoint, AnnealConfig, AnnealOutcome, Annealer};
pub use canon::{canonical_fingerprint, Fingerprint, CANONICAL_LIMIT};
pub use enumerate::{enumerate_min_pp, Enumeration, ENUMERATION_LIMIT};
pub use output::{csv_row, write_record, CSV_HEADER};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Enumeration,
    Anneal,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Enumeration => "enumeration",
            Method::Anneal => "anneal",
        }
    }
}

/// Whether `pp` is the exact value or only the length of a witness found
/// before the solver budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundFlag {
    Exact,
    Lower,
}

impl BoundFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundFlag::Exact => "exact",
            BoundFlag::Lower => "lower",
        }
    }
}

/// One result row. `pp == witness.len()` and the witness verifies in
/// `tournament`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRecord {
    pub n: usize,
    pub k: usize,
    pub fingerprint: Fingerprint,
    pub pp: usize,
    pub bound: BoundFlag,
    pub witness: PowerPath,
    pub tournament: Tournament,
    pub seed: u64,
    pub method: Method,
    pub chain: usize,
    pub iteration: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("enumeration is limited to n <= {ENUMERATION_LIMIT} (got {0}); use annealing")]
    UseAnnealInstead(usize),
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}
