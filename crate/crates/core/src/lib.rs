//! Benchmark-regret robust mean-variance portfolio fronts.
//!
//! Pipeline: per-regime benchmark portfolios ([`benchmark`]), per-regime
//! efficient fronts ([`pareto`]), the robust front minimizing worst-case
//! deviation from the benchmark variances ([`robust`]), and hypervolume
//! scoring of robust sets against the regime fronts ([`evaluation`]).
//! Datasets, CSV and SVG output live in [`data_io`]; [`cli`] wires it all
//! into the `regretfolio` binary.

pub mod benchmark;
pub mod cli;
pub mod data_io;
pub mod error;
pub mod evaluation;
pub mod model;
pub mod pareto;
pub mod robust;
pub mod simplex;

#[cfg(test)]
#[path = "../tests/common/oracle.rs"]
pub(crate) mod oracle;

pub use error::{Error, Result};
pub use model::{
    assemble_covariance, dominates, nondominated_filter, portfolio_return, portfolio_variance,
    AssetUniverse, ObjectivePoint, Portfolio, RegimeScenario, UncertaintySet,
};
pub use simplex::{SignMode, SolveReport, SolverConfig};
