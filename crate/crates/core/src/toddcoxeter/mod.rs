//! Todd–Coxeter coset enumeration.
//!
//! Two strategies are provided. [`Strategy::Hlt`] scans every relator from
//! every coset in turn, defining new cosets to fill gaps, and runs a
//! lookahead pass (scanning without defining) when the table is full.
//! [`Strategy::Felsch`] defines cosets one at a time in table order and
//! closes every consequence of each definition before making the next.
//! Coincidences are processed through a union-find forest with an explicit
//! queue in both cases.

mod engine;
mod table;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpgroup::{Presentation, Word};

pub use table::CosetTable;

pub const DEFAULT_MAX_COSETS: usize = 10_000_000;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    #[default]
    Hlt,
    Felsch,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!(
                "unknown strategy `{}` (expected hlt or felsch)",
                other
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TcLimits {
    pub max_cosets: usize,
    pub max_seconds: Option<f64>,
    pub strategy: Strategy,
}

impl Default for TcLimits {
    fn default() -> Self {
        TcLimits {
            max_cosets: DEFAULT_MAX_COSETS,
            max_seconds: None,
            strategy: Strategy::Hlt,
        }
    }
}

impl TcLimits {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        TcLimits {
            max_cosets,
            ..Default::default()
        }
    }

    pub fn strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TcError {
    #[error("coset limit must be at least 1")]
    ZeroLimit,
    #[error("subgroup generator {index} uses generator g{generator}, presentation has {ngens}")]
    SubgroupOutOfRange {
        index: usize,
        generator: usize,
        ngens: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcOutcome {
    Enumerated { index: usize, table: CosetTable },
    Overflow,
    TimedOut,
}

impl TcOutcome {
    pub fn index(&self) -> Option<usize> {
        match self {
            TcOutcome::Enumerated { index, .. } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupOrder {
    Finite(usize),
    Overflow,
    TimedOut,
}

/// Enumerates the cosets of the subgroup generated by `subgroup`.
pub fn enumerate(
    p: &Presentation,
    subgroup: &[Word],
    limits: &TcLimits,
) -> Result<TcOutcome, TcError> {
    if limits.max_cosets == 0 {
        return Err(TcError::ZeroLimit);
    }
    for (index, w) in subgroup.iter().enumerate() {
        if let Some(g) = w.max_generator().filter(|&g| g >= p.ngens()) {
            return Err(TcError::SubgroupOutOfRange {
                index,
                generator: g + 1,
                ngens: p.ngens(),
            });
        }
    }
    Ok(engine::Enumerator::new(p, subgroup, limits).run())
}

/// Order of the group, via enumeration over the trivial subgroup.
pub fn order(p: &Presentation, limits: &TcLimits) -> GroupOrder {
    match enumerate(p, &[], limits) {
        Ok(TcOutcome::Enumerated { index, .. }) => GroupOrder::Finite(index),
        Ok(TcOutcome::Overflow) => GroupOrder::Overflow,
        Ok(TcOutcome::TimedOut) => GroupOrder::TimedOut,
        Err(e) => unreachable!("trivial subgroup cannot be malformed: {e}"),
    }
}
