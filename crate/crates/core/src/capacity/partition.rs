//! Partition lemmas: signal strengthening (feasibility level `p` to `q`) and
//! separation strengthening (separation `tau` to `eta`). Every class is
//! re-verified from scratch before a partition is returned.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{AffectanceMatrix, LinkSystem};
use crate::metricity::QuasiMetric;

use super::E_SQUARED;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Certificate {
    /// Each class is `k`-feasible.
    Feasibility { k: f64 },
    /// Each class is `eta`-separated.
    Separation { eta: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Partition {
    pub classes: Vec<Vec<usize>>,
    pub certificate: Certificate,
    /// Class-count bound for these parameters.
    pub bound: usize,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Largest class; ties go to the earliest class.
    pub fn largest(&self) -> &[usize] {
        self.classes
            .iter()
            .fold(None::<&Vec<usize>>, |best, c| match best {
                Some(b) if b.len() >= c.len() => Some(b),
                _ => Some(c),
            })
            .map_or(&[], Vec::as_slice)
    }

    /// Classes are disjoint and cover exactly `set`.
    pub fn covers(&self, set: &[usize]) -> bool {
        let mut all: Vec<usize> = self.classes.iter().flatten().copied().collect();
        all.sort_unstable();
        let mut want = set.to_vec();
        want.sort_unstable();
        all == want
    }

    /// Re-checks each class against the certificate. `quasi` is needed for
    /// separation certificates.
    pub fn verify(&self, sys: &LinkSystem, quasi: Option<&QuasiMetric>) -> bool {
        match self.certificate {
            Certificate::Feasibility { k } => {
                self.classes.iter().all(|c| sys.is_feasible(c, k).feasible)
            }
            Certificate::Separation { eta } => match quasi {
                Some(q) => self
                    .classes
                    .iter()
                    .all(|c| sys.set_separation(q, c, eta).is_ok()),
                None => false,
            },
        }
    }
}

fn ensure_feasible(sys: &LinkSystem, set: &[usize], k: f64) -> Result<()> {
    let f = sys.is_feasible(set, k);
    if f.feasible {
        Ok(())
    } else {
        Err(Error::NotFeasible {
            k,
            link: f.worst_link.unwrap_or_default(),
            value: f.worst_affectance,
        })
    }
}

/// Splits a `p`-feasible set into at most `ceil(2q/p)^2` classes, each
/// `q`-feasible.
///
/// Links are scanned by decreasing own decay. The first pass assigns each
/// link to the first class where the in-affectance from links already in that
/// class is at most `1/(2q)`; the second pass repeats this inside every
/// first-pass class in the reverse order. A final class then receives at most
/// `1/(2q)` from links on either side of the scan.
pub fn signal_strengthen(sys: &LinkSystem, set: &[usize], p: f64, q: f64) -> Result<Partition> {
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "feasibility levels p = {p}, q = {q} must be positive"
        )));
    }
    ensure_feasible(sys, set, p)?;
    let per_phase = (2.0 * q / p).ceil() as usize;
    let bound = per_phase * per_phase;
    let certificate = Certificate::Feasibility { k: q };
    if set.is_empty() {
        return Ok(Partition {
            classes: Vec::new(),
            certificate,
            bound,
        });
    }
    if sys.is_feasible(set, q).feasible {
        return Ok(Partition {
            classes: vec![sorted(set.to_vec())],
            certificate,
            bound,
        });
    }

    let aff = sys.affectance_matrix();
    let threshold = 1.0 / (2.0 * q);
    let mut scan = set.to_vec();
    scan.sort_by(|&a, &b| sys.own_decay(b).total_cmp(&sys.own_decay(a)).then(a.cmp(&b)));

    let first = first_fit(&aff, &scan, threshold);
    let mut classes = Vec::new();
    for class in first {
        let reversed: Vec<usize> = class.into_iter().rev().collect();
        classes.extend(first_fit(&aff, &reversed, threshold));
    }
    let mut partition = Partition {
        classes: classes.into_iter().map(sorted).collect(),
        certificate,
        bound,
    };
    if partition.len() > bound || !partition.verify(sys, None) {
        partition = exhaustive_feasible_partition(sys, &aff, set, q, bound)?;
    }
    Ok(partition)
}

fn first_fit(aff: &AffectanceMatrix, scan: &[usize], threshold: f64) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in scan {
        let slot = classes
            .iter()
            .position(|c| aff.in_affectance(c, v) <= threshold);
        match slot {
            Some(i) => classes[i].push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

const EXHAUSTIVE_LIMIT: usize = 16;

/// Backtracking fallback for tiny inputs; only reached if the first-fit
/// construction misbehaves.
fn exhaustive_feasible_partition(
    sys: &LinkSystem,
    aff: &AffectanceMatrix,
    set: &[usize],
    q: f64,
    bound: usize,
) -> Result<Partition> {
    if set.len() > EXHAUSTIVE_LIMIT {
        return Err(Error::PartitionBound {
            links: set.len(),
            bound,
        });
    }
    fn place(
        aff: &AffectanceMatrix,
        set: &[usize],
        i: usize,
        q: f64,
        bound: usize,
        classes: &mut Vec<Vec<usize>>,
    ) -> bool {
        if i == set.len() {
            return true;
        }
        let v = set[i];
        for c in 0..classes.len() {
            classes[c].push(v);
            if aff.is_feasible(&classes[c], q) && place(aff, set, i + 1, q, bound, classes) {
                return true;
            }
            classes[c].pop();
        }
        if classes.len() < bound {
            classes.push(vec![v]);
            if aff.is_feasible(&classes[classes.len() - 1], q)
                && place(aff, set, i + 1, q, bound, classes)
            {
                return true;
            }
            classes.pop();
        }
        false
    }
    let mut classes = Vec::new();
    if place(aff, set, 0, q, bound, &mut classes) {
        let partition = Partition {
            classes: classes.into_iter().map(sorted).collect(),
            certificate: Certificate::Feasibility { k: q },
            bound,
        };
        debug_assert!(partition.verify(sys, None));
        Ok(partition)
    } else {
        Err(Error::PartitionBound {
            links: set.len(),
            bound,
        })
    }
}

/// Splits a `tau`-separated set into `eta`-separated classes.
///
/// Two links conflict when one is not `eta`-separated from the other. Links
/// are colored first-fit in order of non-increasing length; the reported
/// bound is one more than the largest number of conflicting links preceding
/// any link in that order.
pub fn separation_strengthen(
    sys: &LinkSystem,
    quasi: &QuasiMetric,
    set: &[usize],
    tau: f64,
    eta: f64,
) -> Result<Partition> {
    if !(tau > 0.0 && eta > tau) {
        return Err(Error::InvalidParameter(format!(
            "separation levels need 0 < tau < eta (tau = {tau}, eta = {eta})"
        )));
    }
    if let Err((v, w)) = sys.set_separation(quasi, set, tau) {
        return Err(Error::NotSeparated { v, w, eta: tau });
    }
    let mut order = set.to_vec();
    order.sort_by(|&a, &b| {
        sys.link_length(quasi, b)
            .total_cmp(&sys.link_length(quasi, a))
            .then(a.cmp(&b))
    });
    let conflict = |v: usize, w: usize| {
        !sys.check_separation(quasi, v, &[w], eta) || !sys.check_separation(quasi, w, &[v], eta)
    };

    let mut color = vec![usize::MAX; order.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut back_degree = 0;
    for i in 0..order.len() {
        let v = order[i];
        let mut used = Vec::new();
        for j in 0..i {
            if conflict(v, order[j]) {
                used.push(color[j]);
            }
        }
        back_degree = back_degree.max(used.len());
        let c = (0..).find(|c| !used.contains(c)).unwrap_or_default();
        color[i] = c;
        if c == classes.len() {
            classes.push(Vec::new());
        }
        classes[c].push(v);
    }
    let partition = Partition {
        classes: classes.into_iter().map(sorted).collect(),
        certificate: Certificate::Separation { eta },
        bound: back_degree + 1,
    };
    debug_assert!(partition.verify(sys, Some(quasi)));
    Ok(partition)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum OneZetaSep {
    /// The set is `e^2/beta`-feasible and `1/zeta`-separated.
    Ok,
    /// The set is not `e^2/beta`-feasible; nothing to check.
    Inapplicable { link: Option<usize>, affectance: f64 },
    /// Feasible at `e^2/beta` yet not `1/zeta`-separated.
    Violation { v: usize, w: usize },
}

/// Checks that an `e^2/beta`-feasible uniform-power set is `1/zeta`-separated.
pub fn check_onezetasep(
    sys: &LinkSystem,
    quasi: &QuasiMetric,
    zeta: f64,
    set: &[usize],
) -> Result<OneZetaSep> {
    if !sys.power_assignment().is_uniform() {
        return Err(Error::NonUniformPower);
    }
    if !(zeta >= 1.0) {
        return Err(Error::InvalidParameter(format!("zeta = {zeta} must be at least 1")));
    }
    let k = E_SQUARED / sys.params().beta;
    let f = sys.is_feasible(set, k);
    if !f.feasible {
        return Ok(OneZetaSep::Inapplicable {
            link: f.worst_link,
            affectance: f.worst_affectance,
        });
    }
    Ok(match sys.set_separation(quasi, set, 1.0 / zeta) {
        Ok(()) => OneZetaSep::Ok,
        Err((v, w)) => OneZetaSep::Violation { v, w },
    })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{Link, PowerAssignment, SinrParams};
    use crate::metricity::quasi_distances;
    use crate::space::{DecaySpace, SpaceMode};

    fn planar(points: &[(f64, f64)], alpha: f64) -> LinkSystem {
        let space = DecaySpace::from_fn(SpaceMode::NodeSpace, points.len(), |p, q| {
            let (dx, dy) = (points[p].0 - points[q].0, points[p].1 - points[q].1);
            dx.hypot(dy).powf(alpha)
        });
        let links = (0..points.len() / 2).map(|i| Link::new(2 * i, 2 * i + 1)).collect();
        LinkSystem::new(space, links, SinrParams::default(), PowerAssignment::uniform(1.0)).unwrap()
    }

    #[test]
    fn already_feasible_is_identity() {
        let sys = planar(&[(0.0, 0.0), (1.0, 0.0), (50.0, 0.0), (51.0, 0.0)], 2.0);
        let p = signal_strengthen(&sys, &[0, 1], 1.0, 1.0).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!(p.bound, 4);
        let p = signal_strengthen(&sys, &[1], 1.0, 3.0).unwrap();
        assert_eq!(p.classes, vec![vec![1]]);
    }

    #[test]
    fn splits_when_needed() {
        // Unit links spaced 1.5 apart: 1-feasible but not 3-feasible.
        let pts: Vec<(f64, f64)> = (0..6)
            .flat_map(|i| [(1.5 * i as f64, 0.0), (1.5 * i as f64, 1.0)])
            .collect();
        let sys = planar(&pts, 3.0);
        let set: Vec<usize> = (0..6).collect();
        assert!(sys.is_feasible(&set, 1.0).feasible);
        assert!(!sys.is_feasible(&set, 3.0).feasible);
        let p = signal_strengthen(&sys, &set, 1.0, 3.0).unwrap();
        assert!(p.len() > 1 && p.len() <= 36);
        assert!(p.covers(&set));
        assert!(p.verify(&sys, None));
    }

    #[test]
    fn rejects_infeasible_input() {
        let sys = planar(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.1), (2.0, 0.1)], 2.0);
        assert!(matches!(
            signal_strengthen(&sys, &[0, 1], 1.0, 3.0),
            Err(Error::NotFeasible { .. })
        ));
    }

    #[test]
    fn separation_examples() {
        let sys = planar(&[(0.0, 0.0), (1.0, 0.0), (100.0, 0.0), (101.0, 0.0)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        let p = separation_strengthen(&sys, &q, &[0], 0.5, 2.0).unwrap();
        assert_eq!(p.classes, vec![vec![0]]);
        let p = separation_strengthen(&sys, &q, &[0, 1], 0.5, 2.0).unwrap();
        assert_eq!(p.classes, vec![vec![0, 1]]);
        assert_eq!(p.bound, 1);
    }

    #[test]
    fn separation_precondition() {
        let sys = planar(&[(0.0, 0.0), (1.0, 0.0), (1.0, 0.1), (2.0, 0.1)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        assert!(matches!(
            separation_strengthen(&sys, &q, &[0, 1], 0.5, 2.0),
            Err(Error::NotSeparated { .. })
        ));
        assert!(separation_strengthen(&sys, &q, &[0], 2.0, 1.0).is_err());
    }

    #[test]
    fn onezetasep_examples() {
        let sys = planar(&[(0.0, 0.0), (1.0, 0.0), (40.0, 0.0), (41.0, 0.0)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        assert_eq!(check_onezetasep(&sys, &q, 2.0, &[0]).unwrap(), OneZetaSep::Ok);
        assert_eq!(check_onezetasep(&sys, &q, 2.0, &[0, 1]).unwrap(), OneZetaSep::Ok);

        // Two links sharing a receiver location.
        let sys = planar(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (1.0, 1e-9)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        assert!(matches!(
            check_onezetasep(&sys, &q, 2.0, &[0, 1]).unwrap(),
            OneZetaSep::Inapplicable { .. }
        ));
    }
}
