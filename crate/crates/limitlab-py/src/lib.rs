//! Python bindings: thin wrappers over the core types plus dict-shaped
//! reports for the experiment entry points. Build the cdylib with cargo,
//! then import `limitlab_py` (see python/smoke_test.py).

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use limitlab::alphabet::Alphabet as CoreAlphabet;
use limitlab::alphabet::Word;
use limitlab::chains::default_ladder;
use limitlab::distance::{parse_rat, rat_to_f64, rat_to_string, Distance, Rat};
use limitlab::language::{Cardinality, Language as CoreLanguage};
use limitlab::telltale::{Family, TelltaleBounds};
use limitlab::texts::{DataSet, Text as CoreText};
use limitlab::{
    check_exact_stabilization, check_limit_convergence, convergence_experiment, mind_changes,
    obstruction_witnessed, run_adversary, verify_metric_axioms, LanguageChain,
    Learner as CoreLearner, LockingVerdict, MemberVerdict, Metric as CoreMetric, SearchBounds,
    Trace as CoreTrace,
};

fn value_err<E: std::fmt::Display>(err: E) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// Accepts "p/q", "0.25", or a bare integer string.
fn parse_epsilon(text: &str) -> PyResult<Rat> {
    let value = parse_rat(text)
        .or_else(|| text.parse::<f64>().ok().and_then(Rat::from_float))
        .ok_or_else(|| value_err(format!("cannot read \"{text}\" as a ratio")))?;
    if value <= Rat::from_integer(0.into()) {
        return Err(value_err("epsilon must be positive"));
    }
    Ok(value)
}

fn distance_triple(d: &Distance) -> (f64, f64, Option<String>) {
    (
        rat_to_f64(d.lo()),
        rat_to_f64(d.hi()),
        d.exact_value().map(rat_to_string),
    )
}

#[pyclass(name = "Alphabet", skip_from_py_object)]
#[derive(Clone)]
struct PyAlphabet {
    inner: CoreAlphabet,
}

#[pymethods]
impl PyAlphabet {
    #[new]
    fn new(symbols: &str) -> PyResult<Self> {
        Ok(PyAlphabet { inner: CoreAlphabet::new(symbols).map_err(value_err)? })
    }

    fn symbols(&self) -> String {
        self.inner.symbols().iter().collect()
    }

    fn __repr__(&self) -> String {
        format!("Alphabet({:?})", self.symbols())
    }
}

#[pyclass(name = "Language", from_py_object)]
#[derive(Clone)]
struct PyLanguage {
    inner: CoreLanguage,
}

#[pymethods]
impl PyLanguage {
    #[staticmethod]
    fn finite(alphabet: &PyAlphabet, words: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = words.iter().map(|s| s.as_str()).collect();
        let inner =
            CoreLanguage::finite_from_texts(&alphabet.inner, &refs).map_err(value_err)?;
        Ok(PyLanguage { inner })
    }

    #[staticmethod]
    fn pattern(alphabet: &PyAlphabet, text: &str) -> PyResult<Self> {
        let inner = CoreLanguage::from_pattern(&alphabet.inner, text).map_err(value_err)?;
        Ok(PyLanguage { inner })
    }

    /// Number of words, or None when infinite.
    fn cardinality(&self) -> Option<u64> {
        match self.inner.cardinality() {
            Cardinality::Finite(n) => Some(n),
            Cardinality::Infinite => None,
        }
    }

    fn contains(&self, word: &str) -> PyResult<bool> {
        let parsed = Word::parse(word, self.inner.alphabet()).map_err(value_err)?;
        self.inner.contains(&parsed).map_err(value_err)
    }

    fn equals(&self, other: &PyLanguage) -> PyResult<bool> {
        self.inner.equals(&other.inner).map_err(value_err)
    }

    fn is_subset(&self, other: &PyLanguage) -> PyResult<bool> {
        self.inner.is_subset(&other.inner).map_err(value_err)
    }

    /// First `count` words no longer than `max_len`, shortlex order.
    fn enumerate(&self, count: usize, max_len: usize) -> Vec<String> {
        self.inner.enumerate(count, max_len).iter().map(Word::as_string).collect()
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

#[pyclass(name = "Metric", skip_from_py_object)]
#[derive(Clone)]
struct PyMetric {
    inner: CoreMetric,
}

#[pymethods]
impl PyMetric {
    #[staticmethod]
    fn exact() -> Self {
        PyMetric { inner: CoreMetric::exact() }
    }

    #[staticmethod]
    fn counting(hub: &PyLanguage) -> PyResult<Self> {
        Ok(PyMetric { inner: CoreMetric::counting(hub.inner.clone()).map_err(value_err)? })
    }

    #[staticmethod]
    fn symdiff(base: i64) -> PyResult<Self> {
        let base = Rat::from_integer(base.into());
        Ok(PyMetric { inner: CoreMetric::symdiff(base).map_err(value_err)? })
    }

    fn name(&self) -> String {
        self.inner.name()
    }

    /// (lower, upper, exact "p/q" or None); raises when the pair is
    /// outside the metric's domain.
    fn distance(&self, l: &PyLanguage, g: &PyLanguage) -> PyResult<(f64, f64, Option<String>)> {
        let d = self.inner.distance(&l.inner, &g.inner).map_err(value_err)?;
        Ok(distance_triple(&d))
    }

    fn __repr__(&self) -> String {
        format!("Metric({})", self.name())
    }
}

#[pyclass(name = "Learner", skip_from_py_object)]
#[derive(Clone)]
struct PyLearner {
    inner: CoreLearner,
}

#[pymethods]
impl PyLearner {
    #[staticmethod]
    fn range() -> Self {
        PyLearner { inner: CoreLearner::range() }
    }

    /// Family order is significant: the first member containing the range
    /// wins.
    #[staticmethod]
    fn enumeration(family: Vec<PyLanguage>) -> Self {
        let members = family.into_iter().map(|l| l.inner).collect();
        PyLearner { inner: CoreLearner::enumeration(members) }
    }

    #[staticmethod]
    fn memorizing(target: &PyLanguage, threshold: usize) -> Self {
        PyLearner { inner: CoreLearner::memorizing(target.inner.clone(), threshold) }
    }

    fn name(&self) -> String {
        self.inner.name()
    }

    fn hypothesize(&self, alphabet: &PyAlphabet, items: Vec<String>) -> PyResult<PyLanguage> {
        let refs: Vec<&str> = items.iter().map(|s| s.as_str()).collect();
        let data = DataSet::from_texts(&alphabet.inner, &refs).map_err(value_err)?;
        Ok(PyLanguage { inner: self.inner.hypothesize(&data) })
    }

    fn __repr__(&self) -> String {
        format!("Learner({})", self.name())
    }
}

#[pyclass(name = "Text", skip_from_py_object)]
#[derive(Clone)]
struct PyText {
    inner: CoreText,
}

#[pymethods]
impl PyText {
    #[staticmethod]
    fn canonical(language: &PyLanguage) -> PyResult<Self> {
        Ok(PyText { inner: CoreText::canonical(language.inner.clone()).map_err(value_err)? })
    }

    #[staticmethod]
    fn random(language: &PyLanguage, seed: u64) -> PyResult<Self> {
        Ok(PyText {
            inner: CoreText::random_fair(language.inner.clone(), seed).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn locking_prefix(language: &PyLanguage, prefix: Vec<String>) -> PyResult<Self> {
        let refs: Vec<&str> = prefix.iter().map(|s| s.as_str()).collect();
        let data =
            DataSet::from_texts(language.inner.alphabet(), &refs).map_err(value_err)?;
        Ok(PyText {
            inner: CoreText::locking_prefix(data, language.inner.clone()).map_err(value_err)?,
        })
    }

    /// 1-based item of the infinite presentation.
    fn item(&self, k: u64) -> PyResult<String> {
        if k == 0 {
            return Err(value_err("items are numbered from 1"));
        }
        Ok(self.inner.item(k).as_string())
    }

    fn prefix(&self, n: u64) -> Vec<String> {
        self.inner.prefix(n).items().iter().map(Word::as_string).collect()
    }

    fn __repr__(&self) -> String {
        format!("Text({})", self.inner.kind_name())
    }
}

#[pyclass(name = "Trace")]
struct PyTrace {
    inner: CoreTrace,
}

#[pymethods]
impl PyTrace {
    fn __len__(&self) -> usize {
        self.inner.steps.len()
    }

    /// First step from which the hypothesis never changes again.
    fn stabilized_at(&self) -> Option<u64> {
        check_exact_stabilization(&self.inner)
    }

    /// First step from which the distance stays strictly below epsilon.
    fn convergence(&self, epsilon: &str) -> PyResult<Option<u64>> {
        Ok(check_limit_convergence(&self.inner, &parse_epsilon(epsilon)?))
    }

    fn mind_changes(&self) -> u64 {
        mind_changes(&self.inner)
    }

    fn step(&self, py: Python<'_>, k: u64) -> PyResult<Py<PyDict>> {
        let step = self
            .inner
            .steps
            .get((k as usize).checked_sub(1).ok_or_else(|| value_err("steps start at 1"))?)
            .ok_or_else(|| value_err(format!("no step {k} in a trace of {}", self.inner.steps.len())))?;
        let d = PyDict::new(py);
        d.set_item("k", step.k)?;
        d.set_item("hypothesis", format!("{}", step.hypothesis))?;
        d.set_item("changed", step.hyp_changed)?;
        d.set_item("distance", step.distance.as_ref().map(distance_triple))?;
        d.set_item("flag", step.flag.clone())?;
        Ok(d.unbind())
    }

    fn final_hypothesis(&self) -> PyResult<PyLanguage> {
        let last = self.inner.steps.last().ok_or_else(|| value_err("empty trace"))?;
        Ok(PyLanguage { inner: last.hypothesis.clone() })
    }
}

/// Feed the learner ever-longer prefixes of the text, measuring each
/// hypothesis against the target.
#[pyfunction]
fn simulate(
    learner: &PyLearner,
    text: &PyText,
    target: &PyLanguage,
    metric: &PyMetric,
    horizon: u64,
) -> PyResult<PyTrace> {
    if horizon == 0 {
        return Err(value_err("horizon must be positive"));
    }
    let inner =
        limitlab::simulate::run(&learner.inner, &text.inner, &target.inner, &metric.inner, horizon);
    Ok(PyTrace { inner })
}

/// Search canonical prefixes for a data set that pins the learner within
/// epsilon of the target under every in-language continuation.
#[pyfunction]
fn search_locking(
    py: Python<'_>,
    target: &PyLanguage,
    learner: &PyLearner,
    metric: &PyMetric,
    epsilon: &str,
) -> PyResult<Option<Py<PyDict>>> {
    let found = limitlab::search_locking(
        &target.inner,
        &learner.inner,
        &metric.inner,
        &parse_epsilon(epsilon)?,
        &SearchBounds::default(),
    );
    match found {
        None => Ok(None),
        Some(report) => {
            let d = PyDict::new(py);
            d.set_item(
                "candidate",
                report.candidate.items().iter().map(Word::as_string).collect::<Vec<_>>(),
            )?;
            d.set_item("passed", report.verdict.passed())?;
            d.set_item("continuations", report.continuation_sample)?;
            if let LockingVerdict::FailContinuation { continuation, .. } = &report.verdict {
                d.set_item(
                    "counterexample",
                    continuation.items().iter().map(Word::as_string).collect::<Vec<_>>(),
                )?;
            }
            Ok(Some(d.unbind()))
        }
    }
}

/// Tell-tale search over an explicit family: per-member verdicts plus the
/// family-level learnability verdict.
#[pyfunction]
fn telltale_check(py: Python<'_>, members: Vec<PyLanguage>) -> PyResult<Py<PyDict>> {
    let family = Family::Explicit(members.into_iter().map(|l| l.inner).collect());
    let report =
        limitlab::check_family(&family, &TelltaleBounds::default()).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("verdict", report.verdict.to_string())?;
    let verdicts: Vec<(String, Option<Vec<String>>)> = report
        .verdicts
        .iter()
        .map(|v| match v {
            MemberVerdict::Witness { words } => (
                "WITNESS".to_string(),
                Some(words.iter().map(Word::as_string).collect()),
            ),
            other => (other.kind_name().to_string(), None),
        })
        .collect();
    d.set_item("members", report.members.iter().map(|m| format!("{m}")).collect::<Vec<_>>())?;
    d.set_item("verdicts", verdicts)?;
    Ok(d.unbind())
}

/// Distances from the shortlex-prefix chain of an infinite language to the
/// language itself, with an epsilon ladder verdict.
#[pyfunction]
fn chain_convergence(
    py: Python<'_>,
    limit: &PyLanguage,
    metric: &PyMetric,
    n_max: u64,
) -> PyResult<Py<PyDict>> {
    let chain = LanguageChain::from_enumeration(limit.inner.clone()).map_err(value_err)?;
    let ladder = default_ladder();
    let report =
        convergence_experiment(&chain, &metric.inner, n_max, &ladder).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("verdict", report.verdict.to_string())?;
    d.set_item(
        "rungs",
        report
            .rungs
            .iter()
            .map(|(eps, hit)| (rat_to_string(eps), *hit))
            .collect::<Vec<_>>(),
    )?;
    d.set_item(
        "distances",
        report
            .rows
            .iter()
            .map(|row| row.distance.as_ref().map(distance_triple))
            .collect::<Vec<_>>(),
    )?;
    Ok(d.unbind())
}

/// Adversarial presentation of an infinite language against a learner.
#[pyfunction]
fn adversary(
    py: Python<'_>,
    learner: &PyLearner,
    limit: &PyLanguage,
    horizon: u64,
) -> PyResult<Py<PyDict>> {
    if limit.inner.cardinality() != Cardinality::Infinite {
        return Err(value_err("the adversary needs an infinite language"));
    }
    if horizon == 0 {
        return Err(value_err("horizon must be positive"));
    }
    let run = run_adversary(&learner.inner, &limit.inner, horizon);
    let d = PyDict::new(py);
    d.set_item("mind_changes", run.mind_change_count)?;
    d.set_item("tail_pattern", run.tail_pattern.to_string())?;
    d.set_item("obstruction", obstruction_witnessed(&run))?;
    d.set_item(
        "words",
        run.steps.iter().map(|s| s.word.as_string()).collect::<Vec<_>>(),
    )?;
    Ok(d.unbind())
}

/// Identity, symmetry, and triangle checks over a finite sample.
#[pyfunction]
fn metric_axioms(py: Python<'_>, metric: &PyMetric, sample: Vec<PyLanguage>) -> PyResult<Py<PyDict>> {
    let langs: Vec<CoreLanguage> = sample.into_iter().map(|l| l.inner).collect();
    let tolerance = Rat::from_float(1e-9).expect("constant tolerance");
    let report = verify_metric_axioms(&metric.inner, &langs, &tolerance);
    let d = PyDict::new(py);
    d.set_item("passed", report.passed)?;
    d.set_item("pairs_checked", report.pairs_checked)?;
    d.set_item("triples_checked", report.triples_checked)?;
    d.set_item("skipped_pairs", report.skipped_pairs.len())?;
    d.set_item(
        "violations",
        report
            .violations
            .iter()
            .map(|v| format!("{} at {:?}: {}", v.axiom, v.indices, v.detail))
            .collect::<Vec<_>>(),
    )?;
    Ok(d.unbind())
}

/// Run an experiment config file, returning the one-line verdict.
#[pyfunction]
#[pyo3(signature = (path, out_dir=None, seed=None))]
fn run_config(path: &str, out_dir: Option<&str>, seed: Option<u64>) -> PyResult<String> {
    let out = out_dir.map(PathBuf::from);
    let outcome = limitlab::run_config_file(std::path::Path::new(path), out.as_deref(), seed)
        .map_err(value_err)?;
    Ok(outcome.verdict_line)
}

#[pyfunction]
fn builtin_catalog() -> String {
    limitlab::builtin_catalog()
}

#[pymodule]
fn limitlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAlphabet>()?;
    m.add_class::<PyLanguage>()?;
    m.add_class::<PyMetric>()?;
    m.add_class::<PyLearner>()?;
    m.add_class::<PyText>()?;
    m.add_class::<PyTrace>()?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(search_locking, m)?)?;
    m.add_function(wrap_pyfunction!(telltale_check, m)?)?;
    m.add_function(wrap_pyfunction!(chain_convergence, m)?)?;
    m.add_function(wrap_pyfunction!(adversary, m)?)?;
    m.add_function(wrap_pyfunction!(metric_axioms, m)?)?;
    m.add_function(wrap_pyfunction!(run_config, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_catalog, m)?)?;
    Ok(())
}
