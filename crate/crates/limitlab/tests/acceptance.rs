//! The acceptance gate: nine end-to-end criteria, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them). A criterion that
//! panics mid-check still prints its FAIL line via the drop guard.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use limitlab::alphabet::{Alphabet, Word};
use limitlab::config::ExperimentConfig;
use limitlab::distance::{rat, rat_int, Rat};
use limitlab::language::{Cardinality, Language};
use limitlab::rng::draw;
use limitlab::telltale::{Family, TelltaleBounds};
use limitlab::texts::Text;
use limitlab::{
    check_exact_stabilization, check_family, check_limit_convergence, convergence_experiment,
    obstruction_witnessed, order_for_enumeration, run_adversary, run_config_file, search_locking,
    verify_metric_axioms, verify_witness, ChainVerdict, FamilyVerdict, LanguageChain, Learner,
    MemberVerdict, Metric, SearchBounds,
};

use num_traits::Zero;

struct Criterion(&'static str);

impl Criterion {
    fn pass(self) {
        println!("{}: PASS", self.0);
        std::mem::forget(self);
    }
}

impl Drop for Criterion {
    fn drop(&mut self) {
        println!("{}: FAIL", self.0);
    }
}

fn unary() -> Alphabet {
    Alphabet::new("a").unwrap()
}

fn binary() -> Alphabet {
    Alphabet::new("ab").unwrap()
}

fn language(alphabet: &Alphabet, words: &[&str]) -> Language {
    Language::finite_from_texts(alphabet, words).unwrap()
}

fn pattern(alphabet: &Alphabet, text: &str) -> Language {
    Language::from_pattern(alphabet, text).unwrap()
}

/// The shared target battery: ten finite languages of at most four words,
/// plus the full binary language.
fn target_battery(alphabet: &Alphabet) -> Vec<Language> {
    let mut targets: Vec<Language> = [
        vec!["a"],
        vec!["b"],
        vec!["a", "b"],
        vec!["a", "aa"],
        vec!["b", "ba"],
        vec!["a", "b", "ab"],
        vec!["a", "ab", "ba"],
        vec!["a", "b", "ab", "ba"],
        vec!["aa", "ab", "bb"],
        vec!["a", "aa", "aaa", "b"],
    ]
    .iter()
    .map(|words| language(alphabet, words))
    .collect();
    targets.push(pattern(alphabet, "(a|b)+"));
    targets
}

#[test]
fn criterion_1_reciprocal_chain_converges_under_counting() {
    let guard = Criterion("criterion 1 (reciprocal chain distances converge under the counting metric)");
    let started = Instant::now();
    let full = pattern(&unary(), "a+");
    let chain = LanguageChain::from_enumeration(full.clone()).unwrap();
    let metric = Metric::counting(full).unwrap();
    let ladder = limitlab::chains::default_ladder();
    let report = convergence_experiment(&chain, &metric, 1000, &ladder).unwrap();
    assert_eq!(report.rows.len(), 1000);
    for row in &report.rows {
        let expected = rat(1, row.n as i64);
        assert_eq!(
            row.distance.as_ref().and_then(|d| d.exact_value()),
            Some(&expected),
            "distance at n={}",
            row.n
        );
    }
    for (epsilon, entered) in &report.rungs {
        assert!(entered.is_some(), "rung {epsilon} never entered");
    }
    assert_eq!(report.verdict, ChainVerdict::Converging);
    assert!(started.elapsed().as_secs_f64() < 5.0, "took {:?}", started.elapsed());
    guard.pass();
}

#[test]
fn criterion_2_exact_metric_obstructs_the_same_chain() {
    let guard = Criterion("criterion 2 (the exact metric obstructs the same chain)");
    let full = pattern(&unary(), "a+");
    let chain = LanguageChain::from_enumeration(full).unwrap();
    let ladder = limitlab::chains::default_ladder();
    let report = convergence_experiment(&chain, &Metric::exact(), 1000, &ladder).unwrap();
    for row in &report.rows {
        assert_eq!(
            row.distance.as_ref().and_then(|d| d.exact_value()),
            Some(&rat_int(1)),
            "every proper stage sits at distance one, n={}",
            row.n
        );
    }
    for (epsilon, entered) in &report.rungs {
        assert_eq!(entered, &None, "rung {epsilon} cannot be entered");
    }
    assert_eq!(report.verdict, ChainVerdict::Obstructed);
    guard.pass();
}

#[test]
fn criterion_3_range_learner_converges_on_fair_texts() {
    let guard = Criterion("criterion 3 (range learner converges on fair texts at every threshold)");
    let alphabet = binary();
    let hub = pattern(&alphabet, "(a|b)+");
    let metric = Metric::counting(hub.clone()).unwrap();
    let learner = Learner::range();
    let thresholds = [rat(1, 2), rat(1, 8), rat(1, 32)];
    for target in &target_battery(&alphabet) {
        let mut texts = vec![("canonical", Text::canonical(target.clone()).unwrap())];
        for seed in [11u64, 12, 13] {
            texts.push(("random", Text::random_fair(target.clone(), seed).unwrap()));
        }
        let infinite = target.cardinality() == Cardinality::Infinite;
        for (kind, text) in &texts {
            let trace = limitlab::simulate::run(&learner, text, target, &metric, 2000);
            for epsilon in &thresholds {
                let entered = check_limit_convergence(&trace, epsilon);
                assert!(
                    entered.is_some(),
                    "{target} on {kind} text never settled below {epsilon}"
                );
                if infinite && *kind == "canonical" {
                    // Canonical items are all distinct, so the distance
                    // after k steps is exactly 1/k: strictly below 1/m
                    // first at k = m + 1.
                    let denom = epsilon.denom().try_into().unwrap_or(u64::MAX);
                    assert_eq!(entered, Some(denom + 1), "entry point at {epsilon}");
                }
            }
            if !infinite {
                let last = trace.steps.last().unwrap();
                assert_eq!(
                    last.distance.as_ref().and_then(|d| d.exact_value()),
                    Some(&Rat::zero()),
                    "fair text must reveal all of {target}"
                );
            }
        }
    }
    guard.pass();
}

#[test]
fn criterion_4_adversary_blocks_every_builtin_learner() {
    let guard = Criterion("criterion 4 (the adversary blocks every built-in learner on the full unary language)");
    let alphabet = unary();
    let full = pattern(&alphabet, "a+");
    let family = Family::Schema {
        alphabet: alphabet.clone(),
        max_words: 4,
        max_len: 6,
        extras: vec![full.clone()],
    };
    let ordered = order_for_enumeration(&family.expand().unwrap());
    let learners = [
        Learner::range(),
        Learner::enumeration(ordered),
        Learner::memorizing(full.clone(), 3),
    ];
    for learner in &learners {
        let run = run_adversary(learner, &full, 1000);
        assert_eq!(run.steps.len(), 1000);
        assert!(
            run.produced().range().is_subset(&full).unwrap(),
            "{} was fed a word outside the language",
            learner.name()
        );
        assert!(
            obstruction_witnessed(&run),
            "{} escaped the adversary: {} mind changes, tail {}",
            learner.name(),
            run.mind_change_count,
            run.tail_pattern
        );
    }
    guard.pass();
}

#[test]
fn criterion_5_telltale_verdicts_split_the_reference_families() {
    let guard = Criterion("criterion 5 (tell-tale verdicts split the three reference families)");
    let alphabet = unary();
    let bounds = TelltaleBounds::default();
    let full = pattern(&alphabet, "a+");

    // Family built from every small finite language plus the full one:
    // the full language has no finite tell-tale among finite companions.
    let schema = Family::Schema {
        alphabet: alphabet.clone(),
        max_words: 4,
        max_len: 6,
        extras: vec![full.clone()],
    };
    let report = check_family(&schema, &bounds).unwrap();
    assert_eq!(report.verdict, FamilyVerdict::NotLearnable);
    assert_eq!(report.members.len(), 57);
    let expanded = schema.expand().unwrap();
    let mut refuted = 0;
    for (member, verdict) in report.members.iter().zip(&report.verdicts) {
        match verdict {
            MemberVerdict::Witness { words } => {
                assert!(
                    verify_witness(member, words, &expanded),
                    "stale witness for {member}"
                );
            }
            MemberVerdict::Refuted { .. } => {
                refuted += 1;
                assert!(member.equals(&full).unwrap(), "only the full language is blocked");
            }
            MemberVerdict::Inconclusive { .. } => panic!("no member may stay undecided"),
        }
    }
    assert_eq!(refuted, 1);

    // Two-member families that are learnable, with the expected witnesses.
    let nested_finite = Family::Explicit(vec![
        language(&alphabet, &["a"]),
        language(&alphabet, &["a", "aa"]),
    ]);
    let finite_below_full =
        Family::Explicit(vec![language(&alphabet, &["a"]), full.clone()]);
    for family in [&nested_finite, &finite_below_full] {
        let report = check_family(family, &bounds).unwrap();
        assert_eq!(report.verdict, FamilyVerdict::Learnable);
        let expanded = family.expand().unwrap();
        let mut witness_sizes = Vec::new();
        for (member, verdict) in report.members.iter().zip(&report.verdicts) {
            match verdict {
                MemberVerdict::Witness { words } => {
                    assert!(verify_witness(member, words, &expanded));
                    witness_sizes.push(words.len() as u64);
                }
                other => panic!("expected witness for {member}, got {}", other.kind_name()),
            }
        }

        // The enumeration learner over the canonically ordered family must
        // lock onto each member within a short horizon.
        let ordered = order_for_enumeration(&expanded);
        let learner = Learner::enumeration(ordered);
        let largest_finite = expanded
            .iter()
            .filter_map(|m| match m.cardinality() {
                Cardinality::Finite(n) => Some(n),
                Cardinality::Infinite => None,
            })
            .max()
            .unwrap();
        for (member, witness_size) in expanded.iter().zip(&witness_sizes) {
            let horizon = 4 * (largest_finite + witness_size);
            let text = Text::canonical(member.clone()).unwrap();
            let metric = Metric::exact();
            let trace = limitlab::simulate::run(&learner, &text, member, &metric, horizon);
            let settled = check_exact_stabilization(&trace);
            assert!(settled.is_some(), "no stabilization on {member} within {horizon}");
            assert!(
                trace.steps.last().unwrap().hypothesis.equals(member).unwrap(),
                "stabilized on the wrong language for {member}"
            );
        }
    }
    guard.pass();
}

#[test]
fn criterion_6_locking_prefixes_found_where_promised() {
    let guard = Criterion("criterion 6 (locking prefixes found where promised, absent where impossible)");
    let alphabet = binary();
    let hub = pattern(&alphabet, "(a|b)+");
    let metric = Metric::counting(hub.clone()).unwrap();
    let learner = Learner::range();
    let epsilon = rat(1, 4);
    let bounds = SearchBounds::default();
    for target in &target_battery(&alphabet) {
        let found = search_locking(target, &learner, &metric, &epsilon, &bounds);
        let report = found.unwrap_or_else(|| panic!("no locking prefix for {target}"));
        assert!(report.verdict.passed());
        for word in report.candidate.items() {
            assert!(target.contains(word).unwrap());
        }
    }

    // The exact metric demands a hypothesis equal to the infinite target,
    // which no finite-range hypothesis reaches: the search must come back
    // empty and the report must say so.
    let full = pattern(&unary(), "a+");
    assert!(search_locking(&full, &learner, &Metric::exact(), &epsilon, &bounds).is_none());
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("search.json");
    std::fs::write(
        &config_path,
        r#"{
            "experiment": "locking-search",
            "alphabet": "a",
            "target": {"kind": "pattern", "pattern": "a+"},
            "learner": {"kind": "range"},
            "metric": {"kind": "exact"},
            "epsilon": "1/4"
        }"#,
    )
    .unwrap();
    let out = dir.path().join("artifacts");
    run_config_file(&config_path, Some(&out), None).unwrap();
    let report = std::fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(
        report.contains("not found under search policy"),
        "absence must be reported as a search-policy limit:\n{report}"
    );
    guard.pass();
}

#[test]
fn criterion_7_metric_axioms_on_the_sample() {
    let guard = Criterion("criterion 7 (metric axioms verified on the 25-language sample)");
    let started = Instant::now();
    let alphabet = binary();
    let finite_words: [&[&str]; 18] = [
        &["a"],
        &["b"],
        &["aa"],
        &["ab"],
        &["ba"],
        &["bb"],
        &["a", "b"],
        &["a", "aa"],
        &["b", "bb"],
        &["ab", "ba"],
        &["a", "b", "ab"],
        &["a", "ab", "abb"],
        &["aa", "bb"],
        &["a", "ba", "bab"],
        &["a", "aa", "aaa"],
        &["b", "ab", "aab"],
        &["a", "b", "aa", "bb"],
        &["a", "b", "ab", "ba"],
    ];
    let mut sample: Vec<Language> =
        finite_words.iter().map(|words| language(&alphabet, words)).collect();
    for text in ["a+", "b+", "(a|b)+", "a(a|b)*", "b(a|b)*", "(ab)+", "(a|b)(a|b)"] {
        sample.push(pattern(&alphabet, text));
    }
    assert_eq!(sample.len(), 25);

    let tolerance = Rat::from_float(1e-9).unwrap();
    let metrics = [
        Metric::exact(),
        Metric::counting(pattern(&alphabet, "a+")).unwrap(),
        Metric::symdiff(rat_int(2)).unwrap(),
    ];
    for metric in &metrics {
        let report = verify_metric_axioms(metric, &sample, &tolerance);
        assert!(report.pairs_checked > 0);
        assert!(
            report.passed,
            "{} violated: {:?}",
            metric.name(),
            report.violations
        );
    }
    assert!(started.elapsed().as_secs_f64() < 10.0, "took {:?}", started.elapsed());
    guard.pass();
}

#[test]
fn criterion_8_set_predicates_match_brute_force_on_random_pairs() {
    let guard = Criterion("criterion 8 (automaton set predicates match brute force on random pairs)");
    let alphabet = binary();
    let seed = 0xC8;
    let mut index = 0u64;
    let mut next = |bound: u64| {
        let value = draw(seed, index) % bound;
        index += 1;
        value
    };

    for _ in 0..200 {
        let build = |next: &mut dyn FnMut(u64) -> u64| -> (Language, BTreeSet<String>) {
            let count = 1 + next(30);
            let mut spelled = BTreeSet::new();
            for _ in 0..count {
                let len = 1 + next(5);
                let word: String =
                    (0..len).map(|_| if next(2) == 0 { 'a' } else { 'b' }).collect();
                spelled.insert(word);
            }
            let refs: Vec<&str> = spelled.iter().map(|s| s.as_str()).collect();
            (language(&alphabet, &refs), spelled)
        };
        let (left, l) = build(&mut next);
        let (right, r) = build(&mut next);
        assert_eq!(left.equals(&right).unwrap(), l == r);
        assert_eq!(left.is_proper_subset(&right).unwrap(), l.is_subset(&r) && l != r);
        let both = l.intersection(&r).count() as u64;
        assert_eq!(left.intersection_cardinality(&right).unwrap(), Cardinality::Finite(both));
    }

    // Pattern pairs: automaton equality must agree with enumeration out to
    // length eight. The catalog is chosen so that distinct languages in it
    // always differ within that length.
    let catalog = [
        "a+", "b+", "(a|b)+", "a(a|b)*", "b(a|b)*", "(ab)+", "(ba)+", "(a|b)(a|b)", "a*a",
        "(a|b)(a|b)*", "a(ba)*b",
    ];
    for _ in 0..50 {
        let left = pattern(&alphabet, catalog[next(catalog.len() as u64) as usize]);
        let right = pattern(&alphabet, catalog[next(catalog.len() as u64) as usize]);
        let spelled_left: BTreeSet<String> =
            left.enumerate(usize::MAX, 8).iter().map(Word::as_string).collect();
        let spelled_right: BTreeSet<String> =
            right.enumerate(usize::MAX, 8).iter().map(Word::as_string).collect();
        assert_eq!(
            left.equals(&right).unwrap(),
            spelled_left == spelled_right,
            "{left} vs {right}"
        );
    }
    guard.pass();
}

#[test]
fn criterion_9_shipped_configs_replay_byte_for_byte() {
    let guard = Criterion("criterion 9 (shipped configs replay byte-for-byte)");
    let configs_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&configs_dir)
        .unwrap()
        .map(|entry| entry.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    assert_eq!(paths.len(), 7, "one shipped config per experiment kind");

    let mut kinds = BTreeSet::new();
    for path in &paths {
        let text = std::fs::read_to_string(path).unwrap();
        kinds.insert(ExperimentConfig::from_json(&text).unwrap().kind_name());

        let first = tempfile::tempdir().unwrap();
        let second = tempfile::tempdir().unwrap();
        run_config_file(path, Some(first.path()), None).unwrap();
        run_config_file(path, Some(second.path()), None).unwrap();

        let list = |dir: &Path| -> Vec<String> {
            let mut names: Vec<String> = std::fs::read_dir(dir)
                .unwrap()
                .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
                .collect();
            names.sort();
            names
        };
        let names = list(first.path());
        assert_eq!(names, list(second.path()), "artifact sets differ for {path:?}");
        assert!(names.contains(&"config.json".to_string()));
        assert!(names.contains(&"report.txt".to_string()));
        for name in &names {
            let a = std::fs::read(first.path().join(name)).unwrap();
            let b = std::fs::read(second.path().join(name)).unwrap();
            assert_eq!(a, b, "{name} differs between runs of {path:?}");
        }
    }
    assert_eq!(kinds.len(), 7, "configs must cover every experiment kind");
    guard.pass();
}
