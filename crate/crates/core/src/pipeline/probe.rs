use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::default_tc_limits;
use crate::fpgroup::build_gnk;
use crate::toddcoxeter::{self, GroupOrder, Strategy, TcLimits};

/// Budgets for the staggered probe: in round `r` depth `k` may use
/// `initial_cosets * growth^r / 2^k` cosets, never more than `max_cosets`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSchedule {
    pub initial_cosets: usize,
    pub growth: usize,
    pub rounds: usize,
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for ProbeSchedule {
    fn default() -> Self {
        let cap = default_tc_limits().max_cosets;
        ProbeSchedule {
            initial_cosets: 1 << 17,
            growth: 8,
            rounds: 4,
            max_cosets: cap,
            strategy: Strategy::Hlt,
        }
    }
}

impl ProbeSchedule {
    pub fn budget(&self, round: usize, k: usize) -> usize {
        let mut b = self.initial_cosets as u128;
        for _ in 0..round {
            b = b.saturating_mul(self.growth as u128);
        }
        b >>= k.min(64);
        (b.min(self.max_cosets as u128) as usize).max(64.min(self.max_cosets))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeEntry {
    pub k: usize,
    pub result: GroupOrder,
    /// Largest coset budget tried.
    pub max_cosets: usize,
    pub relators: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeReport {
    /// Smallest depth with a finite order, with that order. A finite G_{n,k}
    /// certifies G_n finite.
    pub fn least_finite(&self) -> Option<(usize, usize)> {
        self.entries.iter().find_map(|e| match e.result {
            GroupOrder::Finite(m) => Some((e.k, m)),
            _ => None,
        })
    }
}

impl fmt::Display for ProbeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let res = match e.result {
                GroupOrder::Finite(m) => format!("INDEX = {}", m),
                GroupOrder::Overflow => "OVERFLOW".to_string(),
                GroupOrder::TimedOut => "TIMEOUT".to_string(),
            };
            writeln!(
                f,
                "n={} k={} relators={} max_cosets={} {}",
                self.n, e.k, e.relators, e.max_cosets, res
            )?;
        }
        match self.least_finite() {
            Some((k, m)) => write!(
                f,
                "G_{} finite: order {} first reached at k={}",
                self.n, m, k
            ),
            None => write!(f, "G_{} inconclusive within the given budgets", self.n),
        }
    }
}

/// Enumerates G_{n,k} for every k up to `k_max` in rounds of growing coset
/// budgets, deeper presentations starting smaller.
pub fn probe_gn(n: usize, k_max: usize, schedule: &ProbeSchedule) -> ProbeReport {
    let presentations: Vec<_> = (0..=k_max).map(|k| build_gnk(n, k)).collect();
    let mut entries: Vec<ProbeEntry> = presentations
        .iter()
        .enumerate()
        .map(|(k, p)| ProbeEntry {
            k,
            result: GroupOrder::Overflow,
            max_cosets: 0,
            relators: p.relators().len(),
        })
        .collect();
    for round in 0..schedule.rounds.max(1) {
        let todo: Vec<usize> = entries
            .iter()
            .filter(|e| {
                !matches!(e.result, GroupOrder::Finite(_))
                    && e.max_cosets < schedule.budget(round, e.k)
            })
            .map(|e| e.k)
            .collect();
        let results: Vec<(usize, usize, GroupOrder)> = todo
            .par_iter()
            .map(|&k| {
                let budget = schedule.budget(round, k);
                let limits = TcLimits::with_max_cosets(budget).strategy(schedule.strategy);
                (k, budget, toddcoxeter::order(&presentations[k], &limits))
            })
            .collect();
        for (k, budget, res) in results {
            entries[k].result = res;
            entries[k].max_cosets = budget;
        }
    }
    ProbeReport { n, entries }
}
