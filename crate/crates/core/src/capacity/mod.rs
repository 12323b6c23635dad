//! Uniform-power capacity: the greedy separation/affectance algorithm, an
//! exhaustive optimum, partition lemmas and the amicable-subset pipeline.

mod algorithm;
mod amicable;
mod oracle;
mod partition;

pub use algorithm::{capacity_uniform, capacity_with_oracle, CapacityResult};
pub use amicable::{amicable_subset, AmicableResult};
pub use oracle::{capacity_oracle, OracleResult, DEFAULT_ORACLE_MAX};
pub use partition::{
    check_onezetasep, separation_strengthen, signal_strengthen, Certificate, OneZetaSep,
    Partition,
};

/// `e^2`, the feasibility level at which feasible sets become `1/zeta`-separated.
pub const E_SQUARED: f64 = std::f64::consts::E * std::f64::consts::E;
