//! Self-audit: linear complexity, statistical tests, avalanche matrices and
//! attack-cost calculators.

mod avalanche;
mod cost;
mod linear_complexity;
mod randomness;
mod report;

pub use avalanche::{avalanche_matrix, AvalancheMatrix, MIN_TRIALS};
pub use cost::{
    cube_cost, keyspace_log2, log2_biguint, tmto_cost, CostReport, Formula, KeyspaceReport,
    RegisterCount, KEYSPACE_CLAIM_LOG2,
};
pub use linear_complexity::{berlekamp_massey, LinearComplexityProfile};
pub use randomness::{
    monobit, poker, randomness_suite, runs, RandomnessReport, TestResult, MIN_BITS, POKER_BLOCK,
    SIGNIFICANCE,
};
pub use report::{Metric, Report, Verdict, AVALANCHE_BAND, AVALANCHE_TRIALS, LC_PREFIX};
