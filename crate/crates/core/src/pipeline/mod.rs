//! Staged classification of knots, batch census runs, the G_{n,k} probe and
//! the built-in identity and order checks.

mod census;
mod checks;
mod probe;

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fpgroup::{build_gk, Presentation};
use crate::knotcodes::{knot_presentation, GaussCode};
use crate::knuthbendix::{
    complete, count_irreducible, HaltReason, IrreducibleCount, KbLimits, KbOutcome, ShortlexOrder,
};
use crate::toddcoxeter::{self, GroupOrder, Strategy, TcLimits};

pub use census::{
    classify_text, run_census, write_jsonl, BatchReport, CensusOptions, CensusRecord,
};
pub use checks::{reference_checks, CheckRow, ReferenceChecks, G35_PUBLISHED_ORDER};
pub use probe::{probe_gn, ProbeEntry, ProbeReport, ProbeSchedule};

pub const ENV_MAX_COSETS: &str = "FOURMOVE_MAX_COSETS";
pub const ENV_KB_SECONDS: &str = "FOURMOVE_KB_SECONDS";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("stage list is empty")]
    Empty,
    #[error("stage {index}: depth {depth} is below the previous stage's depth {previous}")]
    DepthDecreases {
        index: usize,
        depth: usize,
        previous: usize,
    },
    #[error("stage {index}: {message}")]
    BadLimit { index: usize, message: String },
    #[error("invalid stage file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("environment variable {name}: cannot parse `{value}`")]
    Env { name: &'static str, value: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Tc,
    Kb,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StageLimits {
    Tc(TcLimits),
    Kb(KbLimits),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stage {
    pub depth: usize,
    pub limits: StageLimits,
}

impl Stage {
    pub fn method(&self) -> Method {
        match self.limits {
            StageLimits::Tc(_) => Method::Tc,
            StageLimits::Kb(_) => Method::Kb,
        }
    }
}

/// One stage as written in a stage file. Limits not mentioned keep their
/// defaults.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageSpec {
    method: Method,
    depth: usize,
    max_cosets: Option<usize>,
    strategy: Option<Strategy>,
    max_seconds: Option<f64>,
    #[serde(default)]
    no_time_limit: bool,
    max_rules: Option<usize>,
    max_rule_length: Option<usize>,
    no_progress_window: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StageFile {
    stages: Vec<StageSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StageConfig {
    stages: Vec<Stage>,
}

impl StageConfig {
    pub fn new(stages: Vec<Stage>) -> Result<Self, ConfigError> {
        if stages.is_empty() {
            return Err(ConfigError::Empty);
        }
        for (i, pair) in stages.windows(2).enumerate() {
            if pair[1].depth < pair[0].depth {
                return Err(ConfigError::DepthDecreases {
                    index: i + 2,
                    depth: pair[1].depth,
                    previous: pair[0].depth,
                });
            }
        }
        for (i, s) in stages.iter().enumerate() {
            let bad = |message: &str| ConfigError::BadLimit {
                index: i + 1,
                message: message.into(),
            };
            match &s.limits {
                StageLimits::Tc(t) if t.max_cosets == 0 => {
                    return Err(bad("max_cosets must be positive"))
                }
                StageLimits::Kb(k) if k.max_rules == 0 => {
                    return Err(bad("max_rules must be positive"))
                }
                StageLimits::Tc(TcLimits {
                    max_seconds: Some(x),
                    ..
                })
                | StageLimits::Kb(KbLimits {
                    max_seconds: Some(x),
                    ..
                }) if x.is_nan() || *x <= 0.0 => return Err(bad("max_seconds must be positive")),
                _ => {}
            }
        }
        Ok(StageConfig { stages })
    }

    /// Coset enumeration at depth 0, then completion at depths 0 and 1 with
    /// a 300 s budget, then completion at depth 2 until it stalls.
    pub fn standard() -> Self {
        StageConfig {
            stages: vec![
                Stage {
                    depth: 0,
                    limits: StageLimits::Tc(TcLimits::default()),
                },
                Stage {
                    depth: 0,
                    limits: StageLimits::Kb(KbLimits::default()),
                },
                Stage {
                    depth: 1,
                    limits: StageLimits::Kb(KbLimits::default()),
                },
                Stage {
                    depth: 2,
                    limits: StageLimits::Kb(KbLimits::until_stalled()),
                },
            ],
        }
    }

    /// [`standard`](Self::standard) with limits overridden from
    /// `FOURMOVE_MAX_COSETS` and `FOURMOVE_KB_SECONDS` when set.
    pub fn from_env() -> Result<Self, ConfigError> {
        let mut cfg = StageConfig::standard();
        let cosets = env_number::<usize>(ENV_MAX_COSETS)?;
        let secs = env_number::<f64>(ENV_KB_SECONDS)?;
        for s in &mut cfg.stages {
            match &mut s.limits {
                StageLimits::Tc(t) => {
                    if let Some(c) = cosets {
                        t.max_cosets = c;
                    }
                }
                StageLimits::Kb(k) => {
                    if let (Some(x), Some(_)) = (secs, k.max_seconds) {
                        k.max_seconds = Some(x);
                    }
                }
            }
        }
        StageConfig::new(cfg.stages)
    }

    /// Parses a stage file:
    /// `{"stages": [{"method": "tc", "depth": 0, "max_cosets": 1000000}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let file: StageFile = serde_json::from_str(text)?;
        let stages = file
            .stages
            .into_iter()
            .map(|s| {
                let limits = match s.method {
                    Method::Tc => {
                        let mut t = default_tc_limits();
                        if let Some(c) = s.max_cosets {
                            t.max_cosets = c;
                        }
                        if let Some(st) = s.strategy {
                            t.strategy = st;
                        }
                        t.max_seconds = s.max_seconds;
                        StageLimits::Tc(t)
                    }
                    Method::Kb => {
                        let mut k = default_kb_limits();
                        if s.no_time_limit {
                            k.max_seconds = None;
                        } else if let Some(x) = s.max_seconds {
                            k.max_seconds = Some(x);
                        }
                        if let Some(r) = s.max_rules {
                            k.max_rules = r;
                        }
                        k.max_rule_length = s.max_rule_length;
                        k.no_progress_window = s.no_progress_window;
                        StageLimits::Kb(k)
                    }
                };
                Stage {
                    depth: s.depth,
                    limits,
                }
            })
            .collect();
        StageConfig::new(stages)
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }
}

fn env_number<T: std::str::FromStr>(name: &'static str) -> Result<Option<T>, ConfigError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| ConfigError::Env { name, value: v }),
        Err(_) => Ok(None),
    }
}

/// Default coset enumeration limits, honouring `FOURMOVE_MAX_COSETS`.
pub fn default_tc_limits() -> TcLimits {
    let mut t = TcLimits::default();
    if let Ok(Some(c)) = env_number::<usize>(ENV_MAX_COSETS) {
        t.max_cosets = c;
    }
    t
}

/// Default completion limits, honouring `FOURMOVE_KB_SECONDS`.
pub fn default_kb_limits() -> KbLimits {
    let mut k = KbLimits::default();
    if let Ok(Some(x)) = env_number::<f64>(ENV_KB_SECONDS) {
        k.max_seconds = Some(x);
    }
    k
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StageResult {
    Finite {
        order: u128,
    },
    /// Completion succeeded but the truncated group is infinite.
    InfiniteApproximant,
    Overflow,
    TimedOut,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StageOutcome {
    pub method: Method,
    pub depth: usize,
    pub result: StageResult,
    /// Why completion stopped, when it did not finish.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halt: Option<HaltReason>,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    TriviallyValued {
        order: u128,
        /// 1-based index of the stage that proved finiteness
        stage: usize,
        nonstandard_order: bool,
    },
    Unresolved,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnotVerdict {
    /// 1-based line number in the input, 0 for a code given directly.
    pub line: usize,
    pub code: GaussCode,
    pub stages: Vec<StageOutcome>,
    pub status: Status,
}

impl KnotVerdict {
    pub fn order(&self) -> Option<u128> {
        match self.status {
            Status::TriviallyValued { order, .. } => Some(order),
            Status::Unresolved => None,
        }
    }

    pub fn is_resolved(&self) -> bool {
        self.order().is_some()
    }
}

/// G_k presentations of one knot, built on first use.
pub struct DepthCache {
    base: Presentation,
    by_depth: BTreeMap<usize, Presentation>,
}

impl DepthCache {
    pub fn new(gc: &GaussCode) -> Self {
        DepthCache {
            base: knot_presentation(gc),
            by_depth: BTreeMap::new(),
        }
    }

    pub fn get(&mut self, k: usize) -> &Presentation {
        let base = &self.base;
        self.by_depth.entry(k).or_insert_with(|| build_gk(base, k))
    }
}

/// Runs one engine on one presentation.
pub fn run_stage(p: &Presentation, depth: usize, limits: &StageLimits) -> StageOutcome {
    let started = Instant::now();
    let (result, halt) = match limits {
        StageLimits::Tc(t) => (
            match toddcoxeter::order(p, t) {
                GroupOrder::Finite(m) => StageResult::Finite { order: m as u128 },
                GroupOrder::Overflow => StageResult::Overflow,
                GroupOrder::TimedOut => StageResult::TimedOut,
            },
            None,
        ),
        StageLimits::Kb(k) => match complete(p, &ShortlexOrder::standard(p.ngens()), k) {
            KbOutcome::Confluent(rs) => (
                match count_irreducible(&rs) {
                    IrreducibleCount::Finite(m) => StageResult::Finite { order: m },
                    IrreducibleCount::Infinite => StageResult::InfiniteApproximant,
                    IrreducibleCount::TooLarge => StageResult::Overflow,
                },
                None,
            ),
            KbOutcome::Halted { reason, .. } => (
                match reason {
                    HaltReason::TimedOut | HaltReason::NoProgress => StageResult::TimedOut,
                    HaltReason::RuleLimit | HaltReason::LengthCap => StageResult::Overflow,
                },
                Some(reason),
            ),
        },
    };
    StageOutcome {
        method: match limits {
            StageLimits::Tc(_) => Method::Tc,
            StageLimits::Kb(_) => Method::Kb,
        },
        depth,
        result,
        halt,
        seconds: started.elapsed().as_secs_f64(),
    }
}

/// Runs the stages in order and stops at the first finite order.
pub fn classify(gc: &GaussCode, cfg: &StageConfig) -> KnotVerdict {
    let mut cache = DepthCache::new(gc);
    let mut stages = Vec::new();
    let mut status = Status::Unresolved;
    for (i, stage) in cfg.stages().iter().enumerate() {
        let p = cache.get(stage.depth);
        let outcome = run_stage(p, stage.depth, &stage.limits);
        let result = outcome.result;
        stages.push(outcome);
        if let StageResult::Finite { order } = result {
            status = Status::TriviallyValued {
                order,
                stage: i + 1,
                nonstandard_order: order != 2,
            };
            break;
        }
    }
    KnotVerdict {
        line: 0,
        code: gc.clone(),
        stages,
        status,
    }
}
