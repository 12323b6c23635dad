//! Fading parameter `gamma(r)` and its annulus-argument upper bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metricity::QuasiMetric;
use crate::search::max_weight_independent_set;
use crate::space::DecaySpace;

use super::zeta_fn::riemann_zeta;

/// Units in which node-set separation is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeparationUnits {
    #[default]
    Decay,
    Quasi,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FadingReport {
    pub r: f64,
    pub gamma: f64,
    /// `gamma_z(r)` for every node `z`.
    pub per_node: Vec<f64>,
    /// Node attaining `gamma`.
    pub witness_node: Option<usize>,
    /// Maximizing separated set for `witness_node`.
    pub witness_set: Vec<usize>,
    pub units: SeparationUnits,
    pub exact: bool,
}

/// `gamma_z(r) = r * max_X sum_{x in X} 1/f(x, z)` over sets `X` of other
/// nodes such that `X + {z}` is `r`-separated, and `gamma = max_z gamma_z`.
///
/// Separation between two nodes is the smaller of the two directed decays
/// (or quasi-distances when `quasi` is given together with
/// [`SeparationUnits::Quasi`]).
pub fn fading_parameter(
    space: &DecaySpace,
    r: f64,
    exact_limit: usize,
    units: SeparationUnits,
    quasi: Option<&QuasiMetric>,
) -> Result<FadingReport> {
    if !(r > 0.0) {
        return Err(Error::InvalidParameter(format!("separation r = {r} must be positive")));
    }
    let sep: Box<dyn Fn(usize, usize) -> f64 + '_> = match (units, quasi) {
        (SeparationUnits::Decay, _) => {
            Box::new(|a, b| space.decay(a, b).min(space.decay(b, a)))
        }
        (SeparationUnits::Quasi, Some(q)) => Box::new(move |a, b| q.dist(a, b).min(q.dist(b, a))),
        (SeparationUnits::Quasi, None) => {
            return Err(Error::InvalidParameter(
                "quasi-distance separation needs a quasi-metric".into(),
            ))
        }
    };
    let n = space.len();
    let mut per_node = Vec::with_capacity(n);
    let mut best: Option<(usize, f64, Vec<usize>)> = None;
    let mut exact = true;
    for z in 0..n {
        let cand: Vec<usize> = (0..n).filter(|&x| x != z && sep(x, z) >= r).collect();
        let weights: Vec<f64> = cand.iter().map(|&x| 1.0 / space.decay(x, z)).collect();
        let sel = max_weight_independent_set(cand.len(), &weights, exact_limit, |i, j| {
            sep(cand[i], cand[j]) < r
        });
        exact &= sel.exact;
        let gamma_z = r * sel.weight;
        per_node.push(gamma_z);
        if best.as_ref().is_none_or(|(_, g, _)| gamma_z > *g) {
            best = Some((z, gamma_z, sel.members.iter().map(|&i| cand[i]).collect()));
        }
    }
    let (witness_node, gamma, witness_set) = match best {
        Some((z, g, set)) => (Some(z), g, set),
        None => (None, 0.0, Vec::new()),
    };
    Ok(FadingReport {
        r,
        gamma,
        per_node,
        witness_node,
        witness_set,
        units,
        exact,
    })
}

/// Annulus-argument bound `C * 2^(A+1) * (zeta(2 - A) - 1)` on the fading
/// parameter of a space with Assouad dimension `A < 1` and constant `C`.
pub fn fading_bound(c: f64, a: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::InvalidParameter(format!("packing constant C = {c} must be positive")));
    }
    if !(a < 1.0) {
        return Err(Error::Divergent(2.0 - a));
    }
    Ok(c * 2f64.powf(a + 1.0) * (riemann_zeta(2.0 - a)? - 1.0))
}
