//! Theorem-level verification: graph populations, the main-theorem verdict
//! pipeline, a replay of the case analysis on concrete closed graphs, and the
//! suite runner that drives all of them.

mod populations;
mod suite;
mod theorem;
mod trace;

use thiserror::Error;

use crate::bigraph::GraphError;
use crate::hamilton::HamiltonError;
use crate::spectral::SpectralError;
use crate::toughness::ToughnessError;

pub use populations::{
    enumerate_balanced, sample_bipartite, sample_near_extremal, sample_near_extremal_with_budget,
    sub_seed, MAX_ENUMERATION_N, THRESHOLD_SLACK,
};
pub use suite::{
    run_suite, write_report, RecordFormat, SuiteConfig, SuiteName, SuiteRecord, SuiteReport,
    SuiteSummary,
};
pub use theorem::{
    verify_main_theorem, verify_main_theorem_with, CounterexampleDump, TheoremOptions, Verdict,
    VerificationRecord,
};
pub use trace::{proof_trace, ProofTrace, TraceStep, TraceVerdict, THEOREM_MIN_N};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("exhaustive enumeration is limited to n <= 4, got {0}")]
    EnumerationTooLarge(usize),
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("bad suite configuration: {0}")]
    BadConfig(String),
    #[error("cannot write {path}: {reason}")]
    Output { path: String, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Toughness(#[from] ToughnessError),
    #[error(transparent)]
    Hamilton(#[from] HamiltonError),
}

impl VerifyError {
    /// Whether the error is a refused resource limit rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            VerifyError::EnumerationTooLarge(_)
                | VerifyError::Toughness(ToughnessError::TooLarge { .. })
                | VerifyError::Hamilton(HamiltonError::BudgetExhausted(_))
                | VerifyError::Spectral(SpectralError::NoConvergence { .. })
                | VerifyError::Graph(GraphError::PartTooLarge { .. })
        )
    }
}
