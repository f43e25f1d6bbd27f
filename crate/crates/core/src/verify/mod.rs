//! Exact verification: exhaustive enumeration of allocations and oracles for
//! the truncated model.

mod certify;
mod entropy;
mod lemmas;

pub use certify::{
    certify_scheme, grid_certify, mutation_suite, GridFailure, GridSummary, Mutant, MutationSummary, Property,
    VerificationReport, DEFAULT_BUDGET,
};
pub use entropy::{conditional_entropy, mutual_information, Exactness, JointCounts, Measure};
pub use lemmas::{
    lemma2_oracle, lemma3_oracle, lemma_sweep, Dyadic, LemmaFailure, LemmaSummary, TruncatedSignal, MAX_ORACLE_WIDTH,
};
