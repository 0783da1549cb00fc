use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use fourmove::fpgroup::Presentation;
use fourmove::knotcodes::parse_gauss_code;
use fourmove::knuthbendix::{
    complete, count_irreducible, HaltReason, IrreducibleCount, KbLimits, KbOutcome, ShortlexOrder,
    DEFAULT_KB_SECONDS, DEFAULT_MAX_RULES,
};
use fourmove::pipeline::{
    classify_text, probe_gn, reference_checks, write_jsonl, BatchReport, ProbeSchedule,
    StageConfig, ENV_KB_SECONDS, ENV_MAX_COSETS,
};
use fourmove::toddcoxeter::{self, Strategy, TcLimits, TcOutcome, DEFAULT_MAX_COSETS};

#[derive(Parser)]
#[command(
    name = "fourmove",
    version,
    about = "Finiteness tests for 4-move knot group quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one Gauss code or every line of a census file.
    Classify {
        /// A comma-separated Gauss code, or a file with one code per line.
        input: String,
        /// `default` or a JSON stage file.
        #[arg(long, default_value = "default")]
        stages: String,
        #[arg(long)]
        workers: Option<usize>,
        /// JSON-lines output; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the codes of unresolved knots.
        #[arg(long)]
        fail_out: Option<PathBuf>,
        /// Include per-stage wall times in the output.
        #[arg(long)]
        timings: bool,
    },
    /// Enumerate G_{n,k} for k = 0..=kmax with staggered coset budgets.
    ProbeGn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kmax: usize,
        #[arg(long, default_value_t = 1 << 17)]
        initial_cosets: usize,
        #[arg(long, default_value_t = 8)]
        growth: usize,
        #[arg(long, default_value_t = 4)]
        rounds: usize,
        #[arg(long, env = ENV_MAX_COSETS, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
    },
    /// Check the word identities and reference group orders.
    VerifyPaper {
        /// Directory for JSON rewrite traces.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
        #[arg(long, env = ENV_KB_SECONDS, default_value_t = DEFAULT_KB_SECONDS)]
        kb_seconds: f64,
        #[arg(long, env = ENV_MAX_COSETS, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
    },
    /// Coset enumeration over the trivial subgroup.
    Tc {
        presentation: PathBuf,
        #[arg(long, env = ENV_MAX_COSETS, default_value_t = DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
        #[arg(long)]
        seconds: Option<f64>,
    },
    /// Knuth-Bendix completion.
    Kb {
        presentation: PathBuf,
        #[arg(long, env = ENV_KB_SECONDS, default_value_t = DEFAULT_KB_SECONDS)]
        seconds: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_RULES)]
        max_rules: usize,
    },
}

/// Bad user input, reported with exit status 2.
#[derive(Debug)]
struct InputFault(anyhow::Error);

enum Failure {
    Input(InputFault),
    Other(anyhow::Error),
}

impl From<InputFault> for Failure {
    fn from(e: InputFault) -> Self {
        Failure::Input(e)
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn input<T, E: Into<anyhow::Error>>(
    r: Result<T, E>,
    what: impl FnOnce() -> String,
) -> Result<T, InputFault> {
    r.map_err(|e| InputFault(e.into().context(what())))
}

fn read_presentation(path: &Path) -> Result<Presentation, InputFault> {
    let text = input(fs::read_to_string(path), || {
        format!("reading {}", path.display())
    })?;
    input(Presentation::parse(&text), || {
        format!("parsing {}", path.display())
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Input(InputFault(e))) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Classify {
            input: what,
            stages,
            workers,
            out,
            fail_out,
            timings,
        } => classify(&what, &stages, workers, out, fail_out, timings),
        Command::ProbeGn {
            n,
            kmax,
            initial_cosets,
            growth,
            rounds,
            max_cosets,
            strategy,
        } => {
            if n == 0 {
                return Err(InputFault(anyhow::anyhow!("--n must be at least 1")).into());
            }
            let schedule = ProbeSchedule {
                initial_cosets,
                growth,
                rounds,
                max_cosets,
                strategy,
            };
            println!("{}", probe_gn(n, kmax, &schedule));
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyPaper {
            trace_dir,
            kb_seconds,
            max_cosets,
        } => {
            let kb = KbLimits::seconds(kb_seconds);
            let tc = TcLimits::with_max_cosets(max_cosets);
            let checks = reference_checks(&tc, &kb);
            print!("{}", checks);
            if let Some(dir) = trace_dir {
                fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
                for (i, rep) in checks.identities.iter().enumerate() {
                    let path = dir.join(format!("identity-{}.json", i + 1));
                    let text = serde_json::to_string_pretty(rep).context("serializing trace")?;
                    fs::write(&path, text)
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            Ok(if checks.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Tc {
            presentation,
            max_cosets,
            strategy,
            seconds,
        } => {
            let p = read_presentation(&presentation)?;
            if max_cosets == 0 {
                return Err(InputFault(anyhow::anyhow!("--max-cosets must be positive")).into());
            }
            let limits = TcLimits {
                max_cosets,
                max_seconds: seconds,
                strategy,
            };
            let out = input(toddcoxeter::enumerate(&p, &[], &limits), || {
                "enumeration".into()
            })?;
            match out {
                TcOutcome::Enumerated { index, .. } => println!("INDEX = {}", index),
                TcOutcome::Overflow => println!("OVERFLOW"),
                TcOutcome::TimedOut => println!("TIMEOUT"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kb {
            presentation,
            seconds,
            max_rules,
        } => {
            let p = read_presentation(&presentation)?;
            let limits = KbLimits {
                max_rules,
                max_seconds: Some(seconds),
                ..Default::default()
            };
            match complete(&p, &ShortlexOrder::standard(p.ngens()), &limits) {
                KbOutcome::Confluent(rs) => {
                    let order = match count_irreducible(&rs) {
                        IrreducibleCount::Finite(m) => m.to_string(),
                        IrreducibleCount::Infinite => "infinite".into(),
                        IrreducibleCount::TooLarge => "too-large".into(),
                    };
                    println!("CONFLUENT rules={} order={}", rs.len(), order);
                }
                KbOutcome::Halted {
                    reason: HaltReason::TimedOut,
                    partial,
                } => println!("TIMEOUT rules={}", partial.len()),
                KbOutcome::Halted { reason, partial } => {
                    println!("HALTED rules={} reason={:?}", partial.len(), reason)
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn classify(
    what: &str,
    stages: &str,
    workers: Option<usize>,
    out: Option<PathBuf>,
    fail_out: Option<PathBuf>,
    timings: bool,
) -> Result<ExitCode, Failure> {
    let cfg = if stages == "default" {
        input(StageConfig::from_env(), || "default stages".into())?
    } else {
        let text = input(fs::read_to_string(stages), || format!("reading {}", stages))?;
        input(StageConfig::from_json(&text), || {
            format!("parsing {}", stages)
        })?
    };
    let path = Path::new(what);
    let text = if path.is_file() {
        input(fs::read_to_string(path), || format!("reading {}", what))?
    } else {
        // a literal code must parse; census files tolerate bad lines
        input(parse_gauss_code(what), || {
            format!("`{}` is neither a file nor a valid Gauss code", what)
        })?;
        what.to_string()
    };
    let workers = match workers {
        Some(0) => return Err(InputFault(anyhow::anyhow!("--workers must be positive")).into()),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let started = Instant::now();
    let records = classify_text(&text, &cfg, workers);
    let mut report = BatchReport::from_records(&records, cfg.stages().len());
    report.seconds = started.elapsed().as_secs_f64();
    match &out {
        Some(p) => {
            let mut f = io::BufWriter::new(
                fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
            );
            write_jsonl(&records, timings, &mut f)?;
            f.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_jsonl(&records, timings, &mut lock)?;
        }
    }
    if let Some(p) = &fail_out {
        let mut text = String::new();
        for code in &report.failures {
            text.push_str(code);
            text.push('\n');
        }
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    if out.is_some() {
        println!("{}", report);
    } else {
        eprintln!("{}", report);
    }
    Ok(ExitCode::SUCCESS)
}
