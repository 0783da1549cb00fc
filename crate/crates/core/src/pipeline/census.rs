use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{classify, KnotVerdict, StageConfig, Status};
use crate::knotcodes::parse_gauss_code;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub workers: usize,
    /// Include per-stage wall times in the JSON output. Off by default so
    /// that output is reproducible byte for byte.
    pub timings: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            timings: false,
        }
    }
}

#[derive(Clone, Debug)]
pub enum CensusRecord {
    Classified(KnotVerdict),
    InputError {
        line: usize,
        raw: String,
        message: String,
    },
}

impl CensusRecord {
    pub fn line(&self) -> usize {
        match self {
            CensusRecord::Classified(v) => v.line,
            CensusRecord::InputError { line, .. } => *line,
        }
    }

    pub fn to_json(&self, timings: bool) -> Value {
        match self {
            CensusRecord::Classified(v) => {
                let mut obj = Map::new();
                obj.insert("line".into(), json!(v.line));
                obj.insert("code".into(), json!(v.code.to_string()));
                obj.insert("crossings".into(), json!(v.code.crossings()));
                let stages: Vec<Value> = v
                    .stages
                    .iter()
                    .map(|s| {
                        let mut o = serde_json::to_value(s).expect("stage outcome serializes");
                        if timings {
                            o["seconds"] = json!(s.seconds);
                        }
                        o
                    })
                    .collect();
                obj.insert("stages".into(), Value::Array(stages));
                match v.status {
                    Status::TriviallyValued {
                        order,
                        stage,
                        nonstandard_order,
                    } => {
                        obj.insert("status".into(), json!("trivially_valued"));
                        obj.insert("order".into(), json!(order));
                        obj.insert("proving_stage".into(), json!(stage));
                        obj.insert("nonstandard_order".into(), json!(nonstandard_order));
                    }
                    Status::Unresolved => {
                        obj.insert("status".into(), json!("unresolved"));
                    }
                }
                Value::Object(obj)
            }
            CensusRecord::InputError { line, raw, message } => json!({
                "line": line,
                "code": raw,
                "status": "input_error",
                "error": message,
            }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BatchReport {
    pub total: usize,
    pub trivially_valued: usize,
    pub unresolved: usize,
    pub input_errors: usize,
    /// Resolutions per stage, indexed like the stage list.
    pub resolved_by_stage: Vec<usize>,
    pub nonstandard_orders: usize,
    /// Raw codes of unresolved knots, in input order.
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl BatchReport {
    pub fn from_records(records: &[CensusRecord], nstages: usize) -> Self {
        let mut r = BatchReport {
            resolved_by_stage: vec![0; nstages],
            ..Default::default()
        };
        for rec in records {
            r.total += 1;
            match rec {
                CensusRecord::InputError { .. } => r.input_errors += 1,
                CensusRecord::Classified(v) => match v.status {
                    Status::TriviallyValued {
                        stage,
                        nonstandard_order,
                        ..
                    } => {
                        r.trivially_valued += 1;
                        r.resolved_by_stage[stage - 1] += 1;
                        if nonstandard_order {
                            r.nonstandard_orders += 1;
                        }
                    }
                    Status::Unresolved => {
                        r.unresolved += 1;
                        r.failures.push(v.code.to_string());
                    }
                },
            }
        }
        r
    }
}

impl fmt::Display for BatchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "knots            {}", self.total)?;
        writeln!(f, "trivially valued {}", self.trivially_valued)?;
        writeln!(f, "unresolved       {}", self.unresolved)?;
        writeln!(f, "input errors     {}", self.input_errors)?;
        for (i, n) in self.resolved_by_stage.iter().enumerate() {
            writeln!(f, "stage {} resolved {}", i + 1, n)?;
        }
        writeln!(f, "order != 2       {}", self.nonstandard_orders)?;
        write!(f, "wall time        {:.1} s", self.seconds)
    }
}

fn classify_line(line: usize, raw: &str, cfg: &StageConfig) -> CensusRecord {
    match parse_gauss_code(raw) {
        Ok(gc) => {
            let mut v = classify(&gc, cfg);
            v.line = line;
            CensusRecord::Classified(v)
        }
        Err(e) => CensusRecord::InputError {
            line,
            raw: raw.to_string(),
            message: e.to_string(),
        },
    }
}

/// Classifies every non-blank line of `text`. Results come back in input
/// order whatever the number of workers.
pub fn classify_text(text: &str, cfg: &StageConfig, workers: usize) -> Vec<CensusRecord> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(|| {
        lines
            .par_iter()
            .with_max_len(1)
            .map(|&(i, l)| classify_line(i, l, cfg))
            .collect()
    })
}

/// Writes one JSON object per record.
pub fn write_jsonl(
    records: &[CensusRecord],
    timings: bool,
    out: &mut impl Write,
) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut *out, &r.to_json(timings))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Classifies every line of `input`, writing JSON lines to `output` and the
/// raw codes of unresolved knots to `failures`.
pub fn run_census(
    input: &Path,
    cfg: &StageConfig,
    opts: &CensusOptions,
    output: &Path,
    failures: &Path,
) -> io::Result<BatchReport> {
    let started = Instant::now();
    let text = fs::read_to_string(input)?;
    let records = classify_text(&text, cfg, opts.workers);
    let mut out = BufWriter::new(fs::File::create(output)?);
    write_jsonl(&records, opts.timings, &mut out)?;
    out.flush()?;
    let mut report = BatchReport::from_records(&records, cfg.stages().len());
    let mut fail = BufWriter::new(fs::File::create(failures)?);
    for code in &report.failures {
        writeln!(fail, "{}", code)?;
    }
    fail.flush()?;
    report.seconds = started.elapsed().as_secs_f64();
    Ok(report)
}
