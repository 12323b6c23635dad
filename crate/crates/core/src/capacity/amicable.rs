use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::LinkSystem;
use crate::metricity::QuasiMetric;

use super::partition::{separation_strengthen, signal_strengthen};
use super::E_SQUARED;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmicableResult {
    /// `S'`: members of the separated class with out-affectance at most 2.
    pub subset: Vec<usize>,
    /// Largest `e^2/beta`-feasible class of the input.
    pub strengthened: Vec<usize>,
    /// Largest `zeta`-separated class of `strengthened`.
    pub separated: Vec<usize>,
    pub signal_classes: usize,
    pub separation_classes: usize,
    /// `max_v a_v(S')` over every link of the system.
    pub max_out_affectance: f64,
    /// `|S| / |S'|`.
    pub shrink_factor: f64,
}

/// Extracts a large subset with bounded out-affectance from a feasible set.
///
/// Strengthens the set to `e^2/beta`-feasibility, strengthens the largest
/// class from `1/zeta`- to `zeta`-separation, and keeps the links of the
/// largest separated class whose out-affectance on that class is at most 2.
/// Steps whose target level does not exceed the current one are skipped.
pub fn amicable_subset(
    sys: &LinkSystem,
    quasi: &QuasiMetric,
    zeta: f64,
    set: &[usize],
) -> Result<AmicableResult> {
    if !sys.power_assignment().is_uniform() {
        return Err(Error::NonUniformPower);
    }
    let k = E_SQUARED / sys.params().beta;
    let (strengthened, signal_classes) = if k > 1.0 {
        let p = signal_strengthen(sys, set, 1.0, k)?;
        (p.largest().to_vec(), p.len())
    } else {
        let f = sys.is_feasible(set, 1.0);
        if !f.feasible {
            return Err(Error::NotFeasible {
                k: 1.0,
                link: f.worst_link.unwrap_or_default(),
                value: f.worst_affectance,
            });
        }
        (sorted(set), 1)
    };

    let (separated, separation_classes) = if zeta > 1.0 / zeta {
        let p = separation_strengthen(sys, quasi, &strengthened, 1.0 / zeta, zeta)?;
        (p.largest().to_vec(), p.len())
    } else {
        (strengthened.clone(), usize::from(!strengthened.is_empty()))
    };

    let aff = sys.affectance_matrix();
    let subset: Vec<usize> = separated
        .iter()
        .copied()
        .filter(|&v| separated.iter().map(|&w| aff.capped(v, w)).sum::<f64>() <= 2.0)
        .collect();
    let max_out_affectance = (0..sys.len())
        .map(|v| subset.iter().map(|&w| aff.capped(v, w)).sum::<f64>())
        .fold(0.0, f64::max);
    let shrink_factor = if subset.is_empty() {
        f64::INFINITY
    } else {
        set.len() as f64 / subset.len() as f64
    };
    Ok(AmicableResult {
        subset,
        strengthened,
        separated,
        signal_classes,
        separation_classes,
        max_out_affectance,
        shrink_factor,
    })
}

fn sorted(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v
}
