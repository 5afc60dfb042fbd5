pub mod adversary;
pub mod alphabet;
pub mod chains;
pub mod config;
pub mod dfa;
pub mod distance;
pub mod language;
pub mod learners;
pub mod locking;
pub mod metrics;
pub mod pattern;
pub mod rng;
pub mod runner;
pub mod simulate;
pub mod telltale;
pub mod texts;

pub use adversary::{mind_changes, obstruction_witnessed, run_adversary, AdversaryRun, Policy};
pub use alphabet::{Alphabet, Word};
pub use chains::{convergence_experiment, ChainVerdict, ConvergenceReport, LanguageChain};
pub use distance::Distance;
pub use language::{Cardinality, Language};
pub use learners::Learner;
pub use locking::{search_locking, verify_locking, LockingReport, LockingVerdict, SearchBounds};
pub use metrics::{verify_metric_axioms, AxiomReport, Metric};
pub use runner::{builtin_catalog, run_config, run_config_file, RunError, RunOutcome};
pub use simulate::{check_exact_stabilization, check_limit_convergence, Trace, TraceStep};
pub use telltale::{
    check_family, find_telltale, order_for_enumeration, verify_witness, Family, FamilyVerdict,
    MemberVerdict, TelltaleBounds, TelltaleReport,
};
pub use texts::{DataSet, Text};
