use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::LinkSystem;
use crate::metricity::QuasiMetric;

use super::oracle::capacity_oracle;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    /// Returned feasible set `S`, ascending.
    pub selected: Vec<usize>,
    /// Intermediate set `X` built by the greedy pass, ascending.
    pub intermediate: Vec<usize>,
    pub zeta: f64,
    pub opt: Option<usize>,
    /// `opt / |S|` when the optimum is known and `S` is non-empty.
    pub ratio: Option<f64>,
    /// Link-gain inputs only compare the two sender/receiver cross terms.
    pub cross_only_separation: bool,
}

/// Greedy uniform-power capacity.
///
/// Links are scanned by increasing own decay (ties by index). A link joins
/// `X` when it is `zeta/2`-separated from `X` and `a_v(X) + a_X(v) <= 1/2`.
/// The result keeps the members of `X` with in-affectance at most 1.
pub fn capacity_uniform(sys: &LinkSystem, zeta: f64) -> Result<CapacityResult> {
    if !sys.power_assignment().is_uniform() {
        return Err(Error::NonUniformPower);
    }
    if !(zeta >= 1.0) {
        return Err(Error::InvalidParameter(format!("zeta = {zeta} must be at least 1")));
    }
    let quasi = QuasiMetric::new_unchecked(sys.space(), zeta);
    let aff = sys.affectance_matrix();

    let mut x: Vec<usize> = Vec::new();
    for &v in sys.order() {
        if aff.is_drowned(v) {
            continue;
        }
        if !sys.check_separation(&quasi, v, &x, zeta / 2.0) {
            continue;
        }
        let out: f64 = x.iter().map(|&w| aff.capped(v, w)).sum();
        let inn: f64 = x.iter().map(|&w| aff.capped(w, v)).sum();
        if out + inn <= 0.5 {
            x.push(v);
        }
    }
    // Every pairwise term inside X is at most 1/2, so capping changes nothing
    // here and the filter below agrees with the uncapped feasibility test.
    let mut selected: Vec<usize> = x
        .iter()
        .copied()
        .filter(|&v| x.iter().map(|&w| aff.capped(w, v)).sum::<f64>() <= 1.0)
        .collect();
    selected.sort_unstable();
    x.sort_unstable();
    Ok(CapacityResult {
        selected,
        intermediate: x,
        zeta,
        opt: None,
        ratio: None,
        cross_only_separation: sys.is_link_gain(),
    })
}

/// Runs the greedy algorithm and the exhaustive optimum, filling in the ratio.
pub fn capacity_with_oracle(sys: &LinkSystem, zeta: f64, max_n: usize) -> Result<CapacityResult> {
    let mut result = capacity_uniform(sys, zeta)?;
    let opt = capacity_oracle(sys, max_n)?;
    result.opt = Some(opt.size);
    result.ratio = if result.selected.is_empty() {
        None
    } else {
        Some(opt.size as f64 / result.selected.len() as f64)
    };
    Ok(result)
}
