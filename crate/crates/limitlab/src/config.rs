//! JSON experiment configurations.
//!
//! One config file describes one experiment: a top-level "experiment"
//! discriminator, the alphabet, experiment-specific parameters, and an
//! optional output directory and seed. Specs here are pure descriptions;
//! `build` methods turn them into domain values against the declared
//! alphabet. Parsing rejects unknown fields so typos surface as errors
//! naming the field.

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::chains::LanguageChain;
use crate::distance::{parse_rat, Rat};
use crate::language::Language;
use crate::learners::Learner;
use crate::locking::SearchBounds;
use crate::metrics::Metric;
use crate::telltale::{Family, TelltaleBounds};
use crate::texts::{DataSet, Text};
use num_traits::Zero;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("alphabet: {0}")]
    Alphabet(#[from] crate::alphabet::AlphabetError),
    #[error("{context}: {source}")]
    Language {
        context: String,
        #[source]
        source: crate::language::LanguageError,
    },
    #[error("{context}: {source}")]
    Text {
        context: String,
        #[source]
        source: crate::texts::TextError,
    },
    #[error("{context}: {source}")]
    Metric {
        context: String,
        #[source]
        source: crate::metrics::MetricError,
    },
    #[error("{context}: {source}")]
    Chain {
        context: String,
        #[source]
        source: crate::chains::ChainError,
    },
    #[error("{field} must be positive")]
    NonPositive { field: &'static str },
    #[error("{field}: {detail}")]
    BadField { field: &'static str, detail: String },
    #[error("unknown field \"{path}\"")]
    UnknownField { path: String },
}

/// Tag-style enums deserialize through a buffer that ignores
/// deny_unknown_fields, so unknown keys are caught by diffing the raw JSON
/// against the re-serialized config: any raw key the echo lacks is a typo.
/// Keys holding null or empty containers carry no information and pass.
fn check_no_extra_keys(
    raw: &serde_json::Value,
    echo: &serde_json::Value,
    path: &str,
) -> Result<(), ConfigError> {
    use serde_json::Value;
    match (raw, echo) {
        (Value::Object(r), Value::Object(e)) => {
            for (key, value) in r {
                let here = if path.is_empty() { key.clone() } else { format!("{path}.{key}") };
                match e.get(key) {
                    Some(ev) => check_no_extra_keys(value, ev, &here)?,
                    None => {
                        let empty = matches!(value, Value::Null)
                            || matches!(value, Value::Array(a) if a.is_empty())
                            || matches!(value, Value::Object(o) if o.is_empty());
                        if !empty {
                            return Err(ConfigError::UnknownField { path: here });
                        }
                    }
                }
            }
            Ok(())
        }
        (Value::Array(r), Value::Array(e)) => {
            for (i, (rv, ev)) in r.iter().zip(e.iter()).enumerate() {
                check_no_extra_keys(rv, ev, &format!("{path}[{i}]"))?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

fn positive(value: u64, field: &'static str) -> Result<u64, ConfigError> {
    if value == 0 {
        Err(ConfigError::NonPositive { field })
    } else {
        Ok(value)
    }
}

/// A language description: an explicit word list or a pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LanguageSpec {
    Finite { words: Vec<String> },
    Pattern { pattern: String },
}

impl LanguageSpec {
    pub fn build(&self, alphabet: &Alphabet, context: &str) -> Result<Language, ConfigError> {
        let built = match self {
            LanguageSpec::Finite { words } => {
                let refs: Vec<&str> = words.iter().map(|w| w.as_str()).collect();
                Language::finite_from_texts(alphabet, &refs)
            }
            LanguageSpec::Pattern { pattern } => Language::from_pattern(alphabet, pattern),
        };
        built.map_err(|source| ConfigError::Language { context: context.to_string(), source })
    }
}

/// A text description over a target language.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TextSpec {
    Canonical,
    Random {
        #[serde(skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    LockingPrefix { prefix: Vec<String> },
}

impl TextSpec {
    /// Builds the text over `target`. For random texts the seed is resolved
    /// outside (overrides beat the spec) and passed in.
    pub fn build(&self, target: &Language, seed: u64) -> Result<Text, ConfigError> {
        let context = "text";
        match self {
            TextSpec::Canonical => Text::canonical(target.clone()),
            TextSpec::Random { .. } => Text::random_fair(target.clone(), seed),
            TextSpec::LockingPrefix { prefix } => {
                let refs: Vec<&str> = prefix.iter().map(|w| w.as_str()).collect();
                let data = DataSet::from_texts(target.alphabet(), &refs)
                    .map_err(|source| ConfigError::Text { context: context.into(), source })?;
                Text::locking_prefix(data, target.clone())
            }
        }
        .map_err(|source| ConfigError::Text { context: context.into(), source })
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            TextSpec::Random { seed } => *seed,
            _ => None,
        }
    }

    pub fn uses_seed(&self) -> bool {
        matches!(self, TextSpec::Random { .. })
    }
}

/// A metric description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MetricSpec {
    Exact,
    Counting {
        #[serde(rename = "L_inf")]
        l_inf: LanguageSpec,
    },
    Symdiff {
        base: i64,
        #[serde(skip_serializing_if = "Option::is_none")]
        truncation_rank: Option<u64>,
    },
}

impl MetricSpec {
    pub fn build(&self, alphabet: &Alphabet) -> Result<Metric, ConfigError> {
        let context = "metric";
        match self {
            MetricSpec::Exact => Ok(Metric::exact()),
            MetricSpec::Counting { l_inf } => {
                let hub = l_inf.build(alphabet, "metric.L_inf")?;
                Metric::counting(hub)
                    .map_err(|source| ConfigError::Metric { context: context.into(), source })
            }
            MetricSpec::Symdiff { base, truncation_rank } => {
                let base = Rat::from_integer((*base).into());
                match truncation_rank {
                    None => Metric::symdiff(base),
                    Some(rank) => Metric::symdiff_with_rank(base, *rank),
                }
                .map_err(|source| ConfigError::Metric { context: context.into(), source })
            }
        }
    }
}

/// A learner description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LearnerSpec {
    Range,
    Enumeration { family: Vec<LanguageSpec> },
    Memorizing {
        #[serde(rename = "L_inf")]
        l_inf: LanguageSpec,
        threshold: u64,
    },
}

impl LearnerSpec {
    pub fn build(&self, alphabet: &Alphabet) -> Result<Learner, ConfigError> {
        match self {
            LearnerSpec::Range => Ok(Learner::range()),
            LearnerSpec::Enumeration { family } => {
                if family.is_empty() {
                    return Err(ConfigError::BadField {
                        field: "learner.family",
                        detail: "needs at least one language".into(),
                    });
                }
                let members = family
                    .iter()
                    .enumerate()
                    .map(|(i, spec)| spec.build(alphabet, &format!("learner.family[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Learner::enumeration(members))
            }
            LearnerSpec::Memorizing { l_inf, threshold } => {
                let target = l_inf.build(alphabet, "learner.L_inf")?;
                let threshold = positive(*threshold, "learner.threshold")?;
                if target.cardinality() != crate::Cardinality::Infinite {
                    return Err(ConfigError::BadField {
                        field: "learner.L_inf",
                        detail: "the memorizing learner needs an infinite language".into(),
                    });
                }
                Ok(Learner::memorizing(target, threshold as usize))
            }
        }
    }
}

/// An epsilon: an exact fraction string "p/q" or a JSON number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsilonSpec {
    Fraction(String),
    Number(f64),
}

impl EpsilonSpec {
    pub fn to_rat(&self) -> Result<Rat, ConfigError> {
        let value = match self {
            EpsilonSpec::Fraction(text) => parse_rat(text).ok_or(ConfigError::BadField {
                field: "epsilon",
                detail: format!("\"{text}\" is not a fraction"),
            })?,
            EpsilonSpec::Number(x) => Rat::from_float(*x).ok_or(ConfigError::BadField {
                field: "epsilon",
                detail: "not a finite number".into(),
            })?,
        };
        if value <= Rat::zero() {
            return Err(ConfigError::NonPositive { field: "epsilon" });
        }
        Ok(value)
    }
}

/// A family description: an explicit member list, or a finite-language
/// schema with optional extras.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<LanguageSpec>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schema: Option<SchemaSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extras: Vec<LanguageSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemaSpec {
    pub max_words: u64,
    pub max_len: u64,
}

impl FamilySpec {
    pub fn build(&self, alphabet: &Alphabet) -> Result<Family, ConfigError> {
        match (&self.members, &self.schema) {
            (Some(_), Some(_)) => Err(ConfigError::BadField {
                field: "family",
                detail: "give either members or a schema, not both".into(),
            }),
            (None, None) => Err(ConfigError::BadField {
                field: "family",
                detail: "needs members or a schema".into(),
            }),
            (Some(members), None) => {
                if !self.extras.is_empty() {
                    return Err(ConfigError::BadField {
                        field: "family.extras",
                        detail: "extras only apply to schema families".into(),
                    });
                }
                let built = members
                    .iter()
                    .enumerate()
                    .map(|(i, spec)| spec.build(alphabet, &format!("family.members[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Family::Explicit(built))
            }
            (None, Some(schema)) => {
                positive(schema.max_words, "family.schema.max_words")?;
                positive(schema.max_len, "family.schema.max_len")?;
                let extras = self
                    .extras
                    .iter()
                    .enumerate()
                    .map(|(i, spec)| spec.build(alphabet, &format!("family.extras[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Family::Schema {
                    alphabet: alphabet.clone(),
                    max_words: schema.max_words,
                    max_len: schema.max_len,
                    extras,
                })
            }
        }
    }
}

/// A chain description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ChainSpec {
    Enumeration {
        #[serde(rename = "L_inf")]
        l_inf: LanguageSpec,
    },
    Decomposition {
        parts: Vec<LanguageSpec>,
        #[serde(rename = "L_inf")]
        l_inf: LanguageSpec,
        #[serde(skip_serializing_if = "Option::is_none")]
        coverage_len_bound: Option<u64>,
    },
}

/// Default word-length bound for decomposition coverage validation.
pub const DEFAULT_COVERAGE_LEN_BOUND: u64 = 4;

impl ChainSpec {
    pub fn build(&self, alphabet: &Alphabet) -> Result<LanguageChain, ConfigError> {
        let context = "chain";
        match self {
            ChainSpec::Enumeration { l_inf } => {
                let limit = l_inf.build(alphabet, "chain.L_inf")?;
                LanguageChain::from_enumeration(limit)
                    .map_err(|source| ConfigError::Chain { context: context.into(), source })
            }
            ChainSpec::Decomposition { parts, l_inf, coverage_len_bound } => {
                let limit = l_inf.build(alphabet, "chain.L_inf")?;
                let parts = parts
                    .iter()
                    .enumerate()
                    .map(|(i, spec)| spec.build(alphabet, &format!("chain.parts[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let bound = coverage_len_bound.unwrap_or(DEFAULT_COVERAGE_LEN_BOUND);
                positive(bound, "chain.coverage_len_bound")?;
                LanguageChain::from_decomposition(&parts, limit, bound as usize)
                    .map_err(|source| ConfigError::Chain { context: context.into(), source })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LockingBoundsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_prefix_len: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_cont_len: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word_pool_size: Option<u64>,
}

impl LockingBoundsSpec {
    pub fn build(&self) -> Result<SearchBounds, ConfigError> {
        let defaults = SearchBounds::default();
        Ok(SearchBounds {
            max_prefix_len: positive(
                self.max_prefix_len.unwrap_or(defaults.max_prefix_len),
                "bounds.max_prefix_len",
            )?,
            max_cont_len: positive(
                self.max_cont_len.unwrap_or(defaults.max_cont_len),
                "bounds.max_cont_len",
            )?,
            word_pool_size: positive(
                self.word_pool_size.unwrap_or(defaults.word_pool_size),
                "bounds.word_pool_size",
            )?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TelltaleBoundsSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_subset_size: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_word_len: Option<u64>,
}

impl TelltaleBoundsSpec {
    pub fn build(&self) -> Result<TelltaleBounds, ConfigError> {
        let defaults = TelltaleBounds::default();
        Ok(TelltaleBounds {
            max_subset_size: positive(
                self.max_subset_size.unwrap_or(defaults.max_subset_size),
                "bounds.max_subset_size",
            )?,
            max_word_len: positive(
                self.max_word_len.unwrap_or(defaults.max_word_len),
                "bounds.max_word_len",
            )?,
        })
    }
}

/// One experiment per file; the "experiment" field selects the shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "kebab-case")]
pub enum ExperimentConfig {
    Simulate(SimulateConfig),
    LockingVerify(LockingVerifyConfig),
    LockingSearch(LockingSearchConfig),
    TelltaleCheck(TelltaleCheckConfig),
    ChainConvergence(ChainConvergenceConfig),
    Adversary(AdversaryConfig),
    MetricAxioms(MetricAxiomsConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommonFields {
    pub alphabet: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<String>,
}

macro_rules! common_accessors {
    ($($ty:ty),*) => {$(
        impl $ty {
            pub fn alphabet(&self) -> Result<Alphabet, ConfigError> {
                Ok(Alphabet::new(&self.common.alphabet)?)
            }
        }
    )*};
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub target: LanguageSpec,
    pub learner: LearnerSpec,
    pub metric: MetricSpec,
    pub text: TextSpec,
    pub horizon: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LockingVerifyConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub target: LanguageSpec,
    pub learner: LearnerSpec,
    pub metric: MetricSpec,
    pub epsilon: EpsilonSpec,
    pub prefix: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<LockingBoundsSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LockingSearchConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub target: LanguageSpec,
    pub learner: LearnerSpec,
    pub metric: MetricSpec,
    pub epsilon: EpsilonSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<LockingBoundsSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TelltaleCheckConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub family: FamilySpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<TelltaleBoundsSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConvergenceConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub chain: ChainSpec,
    pub metric: MetricSpec,
    pub n_max: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<EpsilonSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdversaryConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub learner: LearnerSpec,
    #[serde(rename = "L_inf")]
    pub l_inf: LanguageSpec,
    pub horizon: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricAxiomsConfig {
    #[serde(flatten)]
    pub common: CommonFields,
    pub metric: MetricSpec,
    pub sample: Vec<LanguageSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

common_accessors!(
    SimulateConfig,
    LockingVerifyConfig,
    LockingSearchConfig,
    TelltaleCheckConfig,
    ChainConvergenceConfig,
    AdversaryConfig,
    MetricAxiomsConfig
);

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<ExperimentConfig, ConfigError> {
        let raw: serde_json::Value = serde_json::from_str(text)?;
        let config: ExperimentConfig = serde_json::from_value(raw.clone())?;
        let echo = serde_json::to_value(&config).expect("configs serialize");
        check_no_extra_keys(&raw, &echo, "")?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("configs serialize");
        text.push('\n');
        text
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            ExperimentConfig::Simulate(_) => "simulate",
            ExperimentConfig::LockingVerify(_) => "locking-verify",
            ExperimentConfig::LockingSearch(_) => "locking-search",
            ExperimentConfig::TelltaleCheck(_) => "telltale-check",
            ExperimentConfig::ChainConvergence(_) => "chain-convergence",
            ExperimentConfig::Adversary(_) => "adversary",
            ExperimentConfig::MetricAxioms(_) => "metric-axioms",
        }
    }

    pub fn common(&self) -> &CommonFields {
        match self {
            ExperimentConfig::Simulate(c) => &c.common,
            ExperimentConfig::LockingVerify(c) => &c.common,
            ExperimentConfig::LockingSearch(c) => &c.common,
            ExperimentConfig::TelltaleCheck(c) => &c.common,
            ExperimentConfig::ChainConvergence(c) => &c.common,
            ExperimentConfig::Adversary(c) => &c.common,
            ExperimentConfig::MetricAxioms(c) => &c.common,
        }
    }
}
