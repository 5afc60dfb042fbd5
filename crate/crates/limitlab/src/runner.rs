//! Executes a parsed experiment config and writes its artifacts.
//!
//! Every run produces an echoed config.json, a plain-text report.txt, and
//! (for trace-shaped experiments) a CSV. Artifacts are byte-identical across
//! runs of the same config and seed: nothing time- or machine-dependent is
//! ever written into them. Wall-clock belongs to the caller's terminal.
//!
//! CSV conventions: a `#`-prefixed metadata block (config echo, effective
//! seed, generator constants), then the documented header row. Floats carry
//! 12 significant digits; exact rationals ride in dedicated columns as
//! "p/q"; fields are quoted only when they contain commas or quotes.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::adversary::{self, obstruction_witnessed, run_adversary, Policy};
use crate::chains::{convergence_experiment, default_ladder};
use crate::config::{
    ChainConvergenceConfig, AdversaryConfig, ConfigError, ExperimentConfig, LockingSearchConfig,
    LockingVerifyConfig, MetricAxiomsConfig, SimulateConfig, TelltaleCheckConfig,
};
use crate::distance::{rat_to_f64, rat_to_string, Distance, Rat};
use crate::locking::{verify_locking, LockingReport, LockingVerdict, SearchBounds};
use crate::metrics::verify_metric_axioms;
use crate::rng::{GOLDEN_GAMMA, MIX_MUL_1, MIX_MUL_2};
use crate::simulate::{check_exact_stabilization, check_limit_convergence};
use crate::telltale::{check_family, MemberVerdict};
use crate::texts::DataSet;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{context}: {message}")]
    Domain { context: String, message: String },
}

#[derive(Debug)]
pub struct RunOutcome {
    pub out_dir: PathBuf,
    /// One-line summary suitable for a terminal.
    pub verdict_line: String,
}

/// Twelve significant digits, scientific notation.
fn sig12(x: f64) -> String {
    format!("{:.11e}", x)
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn distance_columns(distance: &Option<Distance>) -> (String, String, String) {
    match distance {
        None => (String::new(), String::new(), String::new()),
        Some(d) => {
            let exact = match d.exact_value() {
                Some(v) => rat_to_string(v),
                None => String::new(),
            };
            (sig12(rat_to_f64(d.lo())), sig12(rat_to_f64(d.hi())), exact)
        }
    }
}

fn data_set_display(data: &DataSet) -> String {
    let words: Vec<String> = data.items().iter().map(|w| w.as_string()).collect();
    format!("({})", words.join(", "))
}

fn write_file(dir: &Path, name: &str, content: &str) -> Result<(), RunError> {
    let path = dir.join(name);
    fs::write(&path, content).map_err(|source| RunError::Io {
        context: format!("writing {}", path.display()),
        source,
    })
}

fn csv_metadata(config: &ExperimentConfig, seed: Option<u64>, extra: &[(&str, String)]) -> String {
    let mut block = String::new();
    let _ = writeln!(block, "# experiment: {}", config.kind_name());
    let compact = serde_json::to_string(config).expect("configs serialize");
    let _ = writeln!(block, "# config: {compact}");
    if let Some(seed) = seed {
        let _ = writeln!(block, "# seed: {seed}");
        let _ = writeln!(
            block,
            "# rng: splitmix64 gamma={GOLDEN_GAMMA:#018x} mix1={MIX_MUL_1:#018x} mix2={MIX_MUL_2:#018x}"
        );
    }
    for (key, value) in extra {
        let _ = writeln!(block, "# {key}: {value}");
    }
    block
}

/// Resolves the effective seed: command-line override, then the text spec's
/// own seed, then the config-level seed, then zero.
fn resolve_seed(
    override_seed: Option<u64>,
    spec_seed: Option<u64>,
    config_seed: Option<u64>,
) -> u64 {
    override_seed.or(spec_seed).or(config_seed).unwrap_or(0)
}

/// Parses `path` and runs it. `out_override` replaces the config's
/// output_dir; `seed_override` replaces any seed for seeded texts.
pub fn run_config_file(
    path: &Path,
    out_override: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<RunOutcome, RunError> {
    let text = fs::read_to_string(path).map_err(|source| RunError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    let config = ExperimentConfig::from_json(&text)?;
    run_config(&config, out_override, seed_override)
}

pub fn run_config(
    config: &ExperimentConfig,
    out_override: Option<&Path>,
    seed_override: Option<u64>,
) -> Result<RunOutcome, RunError> {
    let out_dir: PathBuf = match (out_override, &config.common().output_dir) {
        (Some(dir), _) => dir.to_path_buf(),
        (None, Some(dir)) => PathBuf::from(dir),
        (None, None) => {
            return Err(ConfigError::BadField {
                field: "output_dir",
                detail: "missing; give it in the config or with --out".into(),
            }
            .into())
        }
    };
    fs::create_dir_all(&out_dir).map_err(|source| RunError::Io {
        context: format!("creating {}", out_dir.display()),
        source,
    })?;
    write_file(&out_dir, "config.json", &config.to_json())?;

    let verdict_line = match config {
        ExperimentConfig::Simulate(c) => run_simulate(config, c, &out_dir, seed_override)?,
        ExperimentConfig::LockingVerify(c) => run_locking_verify(c, &out_dir)?,
        ExperimentConfig::LockingSearch(c) => run_locking_search(c, &out_dir)?,
        ExperimentConfig::TelltaleCheck(c) => run_telltale(c, &out_dir)?,
        ExperimentConfig::ChainConvergence(c) => run_chain(config, c, &out_dir)?,
        ExperimentConfig::Adversary(c) => run_adversary_experiment(config, c, &out_dir)?,
        ExperimentConfig::MetricAxioms(c) => run_axioms(c, &out_dir)?,
    };
    Ok(RunOutcome { out_dir, verdict_line })
}

fn run_simulate(
    full: &ExperimentConfig,
    c: &SimulateConfig,
    out_dir: &Path,
    seed_override: Option<u64>,
) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let target = c.target.build(&alphabet, "target")?;
    let learner = c.learner.build(&alphabet)?;
    let metric = c.metric.build(&alphabet)?;
    let horizon = if c.horizon == 0 {
        return Err(ConfigError::NonPositive { field: "horizon" }.into());
    } else {
        c.horizon
    };
    let seed = resolve_seed(seed_override, c.text.seed(), c.common.seed);
    let text = c.text.build(&target, seed)?;
    let trace = crate::simulate::run(&learner, &text, &target, &metric, horizon);

    let seed_used = c.text.uses_seed().then_some(seed);
    let mut csv = csv_metadata(full, seed_used, &[("horizon", horizon.to_string())]);
    csv.push_str("k,hypothesis_kind,hypothesis_card,distance_lo,distance_hi,changed,flag\n");
    for step in &trace.steps {
        let (lo, hi, _) = distance_columns(&step.distance);
        let flag = step.flag.as_deref().unwrap_or("");
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            step.k,
            step.hypothesis.kind(),
            step.hypothesis.cardinality(),
            lo,
            hi,
            step.hyp_changed,
            csv_field(flag)
        );
    }
    write_file(out_dir, "trace.csv", &csv)?;

    let stabilized = check_exact_stabilization(&trace);
    let stabilized_text =
        stabilized.map_or("NONE".to_string(), |k| k.to_string());
    let mut report = String::new();
    let _ = writeln!(report, "experiment: simulate");
    let _ = writeln!(report, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(report, "target: {target}");
    let _ = writeln!(report, "learner: {}", learner.name());
    let _ = writeln!(report, "metric: {}", metric.name());
    let _ = writeln!(report, "text: {}", text.kind_name());
    if let Some(seed) = seed_used {
        let _ = writeln!(report, "seed: {seed}");
    }
    let _ = writeln!(report, "horizon: {horizon}");
    let flagged = trace.steps.iter().filter(|s| s.flag.is_some()).count();
    let _ = writeln!(report, "flagged_steps: {flagged}");
    let _ = writeln!(report, "mind_changes: {}", adversary::mind_changes(&trace));
    let _ = writeln!(report, "exact_stabilization: {stabilized_text}");
    for epsilon in default_ladder() {
        let hit = check_limit_convergence(&trace, &epsilon);
        let _ = writeln!(
            report,
            "convergence epsilon {}: {}",
            rat_to_string(&epsilon),
            hit.map_or("NONE".to_string(), |k| format!("entered_at {k}"))
        );
    }
    write_file(out_dir, "report.txt", &report)?;
    Ok(format!("simulate: exact_stabilization={stabilized_text}"))
}

fn locking_report_lines(report: &LockingReport, out: &mut String) {
    let _ = writeln!(out, "candidate: {}", data_set_display(&report.candidate));
    let _ = writeln!(out, "epsilon: {}", rat_to_string(&report.epsilon));
    let _ = writeln!(out, "continuation_universe: {}", report.continuation_sample);
    let _ = writeln!(out, "verified_up_to_length: {}", report.verified_up_to);
    match &report.verdict {
        LockingVerdict::Pass => {
            let _ = writeln!(out, "verdict: PASS (no counterexample in the searched universe)");
        }
        LockingVerdict::FailNotSubset { word } => {
            let _ = writeln!(out, "verdict: FAIL");
            let _ = writeln!(out, "reason: not a subset (\"{word}\" is outside the target)");
        }
        LockingVerdict::FailBase { distance } => {
            let _ = writeln!(out, "verdict: FAIL");
            match distance {
                Some(d) => {
                    let _ = writeln!(
                        out,
                        "reason: the hypothesis on the candidate alone is {d} away"
                    );
                }
                None => {
                    let _ = writeln!(out, "reason: the metric declined the base pair");
                }
            }
        }
        LockingVerdict::FailContinuation { continuation, distance } => {
            let _ = writeln!(out, "verdict: FAIL");
            let _ = writeln!(out, "counterexample: {}", data_set_display(continuation));
            match distance {
                Some(d) => {
                    let _ = writeln!(out, "achieved_distance: {d}");
                }
                None => {
                    let _ = writeln!(out, "achieved_distance: (metric declined the pair)");
                }
            }
        }
    }
}

fn run_locking_verify(c: &LockingVerifyConfig, out_dir: &Path) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let target = c.target.build(&alphabet, "target")?;
    let learner = c.learner.build(&alphabet)?;
    let metric = c.metric.build(&alphabet)?;
    let epsilon = c.epsilon.to_rat()?;
    let bounds = c.bounds.unwrap_or(crate::config::LockingBoundsSpec {
        max_prefix_len: None,
        max_cont_len: None,
        word_pool_size: None,
    });
    let bounds = bounds.build()?;
    let refs: Vec<&str> = c.prefix.iter().map(|w| w.as_str()).collect();
    let prefix = DataSet::from_texts(&alphabet, &refs).map_err(|source| ConfigError::Text {
        context: "prefix".into(),
        source,
    })?;
    let report = verify_locking(
        &prefix,
        &target,
        &learner,
        &metric,
        &epsilon,
        bounds.max_cont_len,
        bounds.word_pool_size,
    );
    let mut out = String::new();
    let _ = writeln!(out, "experiment: locking-verify");
    let _ = writeln!(out, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(out, "target: {target}");
    let _ = writeln!(out, "learner: {}", learner.name());
    let _ = writeln!(out, "metric: {}", metric.name());
    let _ = writeln!(
        out,
        "bounds: max_cont_len={} word_pool_size={}",
        bounds.max_cont_len, bounds.word_pool_size
    );
    locking_report_lines(&report, &mut out);
    write_file(out_dir, "report.txt", &out)?;
    let verdict = if report.verdict.passed() { "PASS" } else { "FAIL" };
    Ok(format!("locking-verify: {verdict}"))
}

fn run_locking_search(c: &LockingSearchConfig, out_dir: &Path) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let target = c.target.build(&alphabet, "target")?;
    let learner = c.learner.build(&alphabet)?;
    let metric = c.metric.build(&alphabet)?;
    let epsilon = c.epsilon.to_rat()?;
    let bounds = c.bounds.unwrap_or(crate::config::LockingBoundsSpec {
        max_prefix_len: None,
        max_cont_len: None,
        word_pool_size: None,
    });
    let bounds: SearchBounds = bounds.build()?;
    let found = crate::locking::search_locking(&target, &learner, &metric, &epsilon, &bounds);
    let mut out = String::new();
    let _ = writeln!(out, "experiment: locking-search");
    let _ = writeln!(out, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(out, "target: {target}");
    let _ = writeln!(out, "learner: {}", learner.name());
    let _ = writeln!(out, "metric: {}", metric.name());
    let _ = writeln!(
        out,
        "bounds: max_prefix_len={} max_cont_len={} word_pool_size={}",
        bounds.max_prefix_len, bounds.max_cont_len, bounds.word_pool_size
    );
    let verdict_line = match &found {
        Some(report) => {
            let _ = writeln!(out, "found_at_prefix_length: {}", report.candidate.len());
            locking_report_lines(report, &mut out);
            format!("locking-search: PASS at prefix length {}", report.candidate.len())
        }
        None => {
            let _ = writeln!(
                out,
                "verdict: NONE (not found under search policy: canonical prefixes 1..={}, \
                 continuations from the first {} shortlex words up to length {})",
                bounds.max_prefix_len, bounds.word_pool_size, bounds.max_cont_len
            );
            "locking-search: NONE".to_string()
        }
    };
    write_file(out_dir, "report.txt", &out)?;
    Ok(verdict_line)
}

fn run_telltale(c: &TelltaleCheckConfig, out_dir: &Path) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let family = c.family.build(&alphabet)?;
    let bounds = c
        .bounds
        .unwrap_or(crate::config::TelltaleBoundsSpec { max_subset_size: None, max_word_len: None })
        .build()?;
    let report = check_family(&family, &bounds).map_err(|e| RunError::Domain {
        context: "telltale-check".into(),
        message: e.to_string(),
    })?;
    let mut out = String::new();
    let _ = writeln!(out, "experiment: telltale-check");
    let _ = writeln!(out, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(out, "members: {}", report.members.len());
    let _ = writeln!(
        out,
        "bounds: max_subset_size={} max_word_len={}",
        report.bounds.max_subset_size, report.bounds.max_word_len
    );
    for (idx, member) in report.members.iter().enumerate() {
        let _ = writeln!(out, "member {idx}: {member}");
    }
    for (idx, verdict) in report.verdicts.iter().enumerate() {
        match verdict {
            MemberVerdict::Witness { words } => {
                let list: Vec<String> = words.iter().map(|w| w.as_string()).collect();
                let _ = writeln!(out, "MEMBER {idx} WITNESS {{{}}}", list.join(", "));
            }
            MemberVerdict::Refuted { blocking } => {
                let _ = writeln!(
                    out,
                    "MEMBER {idx} REFUTED every candidate subset is itself a family member \
                     properly contained in the language"
                );
                for (candidate, blocker) in blocking {
                    let list: Vec<String> = candidate.iter().map(|w| w.as_string()).collect();
                    let _ =
                        writeln!(out, "  blocked: {{{}}} by member {blocker}", list.join(", "));
                }
            }
            MemberVerdict::Inconclusive { blocking } => {
                let _ = writeln!(out, "MEMBER {idx} INCONCLUSIVE search bounds exhausted");
                for (candidate, blocker) in blocking {
                    let list: Vec<String> = candidate.iter().map(|w| w.as_string()).collect();
                    let _ =
                        writeln!(out, "  blocked: {{{}}} by member {blocker}", list.join(", "));
                }
            }
        }
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    write_file(out_dir, "report.txt", &out)?;
    Ok(format!("telltale-check: {}", report.verdict))
}

fn run_chain(
    full: &ExperimentConfig,
    c: &ChainConvergenceConfig,
    out_dir: &Path,
) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let chain = c.chain.build(&alphabet)?;
    let metric = c.metric.build(&alphabet)?;
    if c.n_max == 0 {
        return Err(ConfigError::NonPositive { field: "n_max" }.into());
    }
    let ladder: Vec<Rat> = match &c.ladder {
        None => default_ladder(),
        Some(specs) => specs
            .iter()
            .map(|e| e.to_rat())
            .collect::<Result<Vec<_>, _>>()?,
    };
    if ladder.is_empty() {
        return Err(ConfigError::BadField {
            field: "ladder",
            detail: "needs at least one epsilon".into(),
        }
        .into());
    }
    let report = convergence_experiment(&chain, &metric, c.n_max, &ladder).map_err(|e| {
        RunError::Domain { context: "chain-convergence".into(), message: e.to_string() }
    })?;

    let mut csv = csv_metadata(full, None, &[("n_max", c.n_max.to_string())]);
    csv.push_str("n,distance_lo,distance_hi,distance_exact\n");
    for row in &report.rows {
        let (lo, hi, exact) = distance_columns(&row.distance);
        let _ = writeln!(csv, "{},{},{},{}", row.n, lo, hi, exact);
    }
    write_file(out_dir, "chain.csv", &csv)?;

    let mut out = String::new();
    let _ = writeln!(out, "experiment: chain-convergence");
    let _ = writeln!(out, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(out, "chain: {}", chain.kind_name());
    let _ = writeln!(out, "limit: {}", chain.limit());
    let _ = writeln!(out, "metric: {}", report.metric_name);
    let _ = writeln!(out, "n_max: {}", report.n_max);
    let flagged = report.rows.iter().filter(|r| r.flag.is_some()).count();
    let _ = writeln!(out, "flagged_rows: {flagged}");
    for (epsilon, hit) in &report.rungs {
        let _ = writeln!(
            out,
            "rung {}: {}",
            rat_to_string(epsilon),
            hit.map_or("NONE".to_string(), |n| format!("entered_at {n}"))
        );
    }
    let _ = writeln!(out, "verdict: {}", report.verdict);
    write_file(out_dir, "report.txt", &out)?;
    Ok(format!("chain-convergence: {}", report.verdict))
}

fn run_adversary_experiment(
    full: &ExperimentConfig,
    c: &AdversaryConfig,
    out_dir: &Path,
) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let limit = c.l_inf.build(&alphabet, "L_inf")?;
    let learner = c.learner.build(&alphabet)?;
    if c.horizon == 0 {
        return Err(ConfigError::NonPositive { field: "horizon" }.into());
    }
    if limit.cardinality() != crate::Cardinality::Infinite {
        return Err(ConfigError::BadField {
            field: "L_inf",
            detail: "the adversary needs an infinite language".into(),
        }
        .into());
    }
    let run = run_adversary(&learner, &limit, c.horizon);

    let mut csv = csv_metadata(full, None, &[("horizon", c.horizon.to_string())]);
    csv.push_str("k,word,policy,hypothesis_kind,changed\n");
    for step in &run.steps {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            step.k,
            step.word,
            step.policy,
            step.hypothesis.kind(),
            step.hyp_changed
        );
    }
    write_file(out_dir, "adversary.csv", &csv)?;

    let fresh = run.steps.iter().filter(|s| s.policy == Policy::FeedFresh).count();
    let mut out = String::new();
    let _ = writeln!(out, "experiment: adversary");
    let _ = writeln!(out, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(out, "L_inf: {limit}");
    let _ = writeln!(out, "learner: {}", learner.name());
    let _ = writeln!(out, "horizon: {}", run.horizon);
    let _ = writeln!(out, "mind_changes: {}", run.mind_change_count);
    let _ = writeln!(out, "fresh_words: {fresh}");
    let _ = writeln!(out, "repeats: {}", run.steps.len() - fresh);
    let _ = writeln!(out, "tail_pattern: {}", run.tail_pattern);
    let _ = writeln!(out, "obstruction_witnessed: {}", obstruction_witnessed(&run));
    write_file(out_dir, "report.txt", &out)?;
    Ok(format!(
        "adversary: {} mind changes, {}",
        run.mind_change_count, run.tail_pattern
    ))
}

fn run_axioms(c: &MetricAxiomsConfig, out_dir: &Path) -> Result<String, RunError> {
    let alphabet = c.alphabet()?;
    let metric = c.metric.build(&alphabet)?;
    if c.sample.is_empty() {
        return Err(ConfigError::BadField {
            field: "sample",
            detail: "needs at least one language".into(),
        }
        .into());
    }
    let sample = c
        .sample
        .iter()
        .enumerate()
        .map(|(i, spec)| spec.build(&alphabet, &format!("sample[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let tolerance_f = c.tolerance.unwrap_or(1e-9);
    let tolerance = Rat::from_float(tolerance_f).ok_or(ConfigError::BadField {
        field: "tolerance",
        detail: "not a finite number".into(),
    })?;
    let report = verify_metric_axioms(&metric, &sample, &tolerance);
    let mut out = String::new();
    let _ = writeln!(out, "experiment: metric-axioms");
    let _ = writeln!(out, "alphabet: {}", c.common.alphabet);
    let _ = writeln!(out, "metric: {}", report.metric_name);
    let _ = writeln!(out, "sample_size: {}", report.sample_size);
    let _ = writeln!(out, "tolerance: {}", sig12(tolerance_f));
    let _ = writeln!(out, "pairs_checked: {}", report.pairs_checked);
    let _ = writeln!(out, "triples_checked: {}", report.triples_checked);
    let _ = writeln!(out, "skipped_pairs: {}", report.skipped_pairs.len());
    for (i, j, reason) in &report.skipped_pairs {
        let _ = writeln!(out, "  skipped ({i}, {j}): {reason}");
    }
    let _ = writeln!(out, "violations: {}", report.violations.len());
    for violation in &report.violations {
        let _ = writeln!(
            out,
            "  {} at {:?}: {}",
            violation.axiom, violation.indices, violation.detail
        );
    }
    let _ = writeln!(out, "passed: {}", report.passed);
    write_file(out_dir, "report.txt", &out)?;
    Ok(format!("metric-axioms: passed={}", report.passed))
}

/// Stable catalog of built-in learners, metrics, text kinds, and chain
/// kinds with their config parameters.
pub fn builtin_catalog() -> String {
    let mut out = String::new();
    let _ = writeln!(out, "learners:");
    let _ = writeln!(out, "  range                 {{\"kind\":\"range\"}}");
    let _ = writeln!(out, "  enumeration           {{\"kind\":\"enumeration\",\"family\":[<language>...]}} (order significant)");
    let _ = writeln!(out, "  memorizing            {{\"kind\":\"memorizing\",\"L_inf\":<language>,\"threshold\":N}}");
    let _ = writeln!(out, "metrics:");
    let _ = writeln!(out, "  exact                 {{\"kind\":\"exact\"}} (0/1; gap 1)");
    let _ = writeln!(out, "  counting              {{\"kind\":\"counting\",\"L_inf\":<language>}} (reciprocal intersection size)");
    let _ = writeln!(out, "  symdiff               {{\"kind\":\"symdiff\",\"base\":B[,\"truncation_rank\":R]}} (weighted symmetric difference)");
    let _ = writeln!(out, "texts:");
    let _ = writeln!(out, "  canonical             {{\"kind\":\"canonical\"}} (shortlex; cyclic for finite targets)");
    let _ = writeln!(out, "  random                {{\"kind\":\"random\",\"seed\":N}} (seeded fair interleaving)");
    let _ = writeln!(out, "  locking_prefix        {{\"kind\":\"locking_prefix\",\"prefix\":[words...]}} (verbatim prefix, then canonical)");
    let _ = writeln!(out, "chains:");
    let _ = writeln!(out, "  enumeration           {{\"kind\":\"enumeration\",\"L_inf\":<language>}} (shortlex prefixes)");
    let _ = writeln!(out, "  decomposition         {{\"kind\":\"decomposition\",\"parts\":[<language>...],\"L_inf\":<language>}} (cumulative unions)");
    let _ = writeln!(out, "languages:");
    let _ = writeln!(out, "  finite                {{\"kind\":\"finite\",\"words\":[...]}}");
    let _ = writeln!(out, "  pattern               {{\"kind\":\"pattern\",\"pattern\":\"...\"}} (symbols, |, +, *, parentheses; never the empty word)");
    let _ = writeln!(out, "experiments: simulate, locking-verify, locking-search, telltale-check, chain-convergence, adversary, metric-axioms");
    out
}
