//! Shortlex Knuth–Bendix completion for group presentations.
//!
//! Rules are kept in two tries over their left sides: a reversed one that
//! drives suffix-matching reduction on a stack, and a forward one used to
//! find overlaps. Completion takes rules in shortlex order of their left
//! sides, resolves each rule's overlaps with every rule already taken, and
//! interreduces the whole system in periodic passes. A system is only ever
//! reported confluent after an exhaustive critical-pair check.

mod automaton;
mod complete;
mod order;
mod rewrite;
mod trie;

use serde::{Deserialize, Serialize};

use crate::fpgroup::{Presentation, Word};

pub use automaton::{count_irreducible, IrreducibleCount};
pub use order::ShortlexOrder;
pub(crate) use rewrite::ser_word;
pub use rewrite::{RewriteStep, RewriteSystem, Rule, UnresolvedPair};

pub const DEFAULT_KB_SECONDS: f64 = 300.0;
pub const DEFAULT_MAX_RULES: usize = 2_000_000;
pub const DEFAULT_NO_PROGRESS_WINDOW: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KbLimits {
    pub max_rules: usize,
    /// `None` means no wall-clock limit.
    pub max_seconds: Option<f64>,
    pub max_rule_length: Option<usize>,
    /// Stop after this many consecutive new rules without an interreduction
    /// deletion.
    pub no_progress_window: Option<usize>,
}

impl Default for KbLimits {
    fn default() -> Self {
        KbLimits {
            max_rules: DEFAULT_MAX_RULES,
            max_seconds: Some(DEFAULT_KB_SECONDS),
            max_rule_length: None,
            no_progress_window: None,
        }
    }
}

impl KbLimits {
    pub fn seconds(secs: f64) -> Self {
        KbLimits {
            max_seconds: Some(secs),
            ..Default::default()
        }
    }

    /// No time limit; halted by the no-progress heuristic instead.
    pub fn until_stalled() -> Self {
        KbLimits {
            max_seconds: None,
            no_progress_window: Some(DEFAULT_NO_PROGRESS_WINDOW),
            ..Default::default()
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HaltReason {
    TimedOut,
    RuleLimit,
    NoProgress,
    /// Some rule was discarded for exceeding `max_rule_length`.
    LengthCap,
}

#[derive(Clone, Debug)]
pub enum KbOutcome {
    Confluent(RewriteSystem),
    Halted {
        reason: HaltReason,
        partial: RewriteSystem,
    },
}

impl KbOutcome {
    pub fn system(&self) -> &RewriteSystem {
        match self {
            KbOutcome::Confluent(rs) => rs,
            KbOutcome::Halted { partial, .. } => partial,
        }
    }

    pub fn is_confluent(&self) -> bool {
        matches!(self, KbOutcome::Confluent(_))
    }
}

/// Runs completion on `p`. Involutive generators have their inverse letter
/// rewritten to the generator itself.
pub fn complete(p: &Presentation, ord: &ShortlexOrder, limits: &KbLimits) -> KbOutcome {
    match complete::run(p, ord, limits, None) {
        complete::Finish::Confluent(rs) => KbOutcome::Confluent(rs),
        complete::Finish::Halted(reason, partial) => KbOutcome::Halted { reason, partial },
        complete::Finish::TargetReached(..) => unreachable!("no target was set"),
    }
}

pub fn reduce(rs: &RewriteSystem, w: &Word) -> Word {
    rs.reduce(w)
}

#[derive(Clone, Debug)]
pub enum Consequence {
    /// The word rewrites to the identity; every rule used is a consequence of
    /// the relators.
    True {
        trace: Vec<RewriteStep>,
    },
    /// A confluent system reduces the word to this nontrivial normal form.
    False {
        normal_form: Word,
    },
    Unknown {
        reason: HaltReason,
    },
}

/// Decides whether `w` is trivial in the group of `p`. Completion stops as
/// soon as the rules found so far reduce `w` to the identity.
pub fn is_consequence(
    p: &Presentation,
    w: &Word,
    ord: &ShortlexOrder,
    limits: &KbLimits,
) -> Consequence {
    match complete::run(p, ord, limits, Some(w)) {
        complete::Finish::TargetReached(trace) => Consequence::True { trace },
        complete::Finish::Confluent(rs) => {
            let (nf, trace) = rs.reduce_traced(w);
            if nf.is_empty() {
                Consequence::True { trace }
            } else {
                Consequence::False { normal_form: nf }
            }
        }
        complete::Finish::Halted(reason, _) => Consequence::Unknown { reason },
    }
}
