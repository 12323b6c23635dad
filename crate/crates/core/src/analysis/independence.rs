//! Independence dimension and guard sets.

use serde::{Deserialize, Serialize};

use crate::metricity::QuasiMetric;
use crate::search::max_weight_independent_set;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub dim: usize,
    /// Center `x` of the largest independent set.
    pub center: Option<usize>,
    pub witness: Vec<usize>,
    pub exact: bool,
}

/// Whether `z` and `w` may both belong to a set independent w.r.t. `x`:
/// each is strictly closer to `x` than to the other.
fn compatible(quasi: &QuasiMetric, x: usize, z: usize, w: usize) -> bool {
    let between = quasi.dist(z, w).min(quasi.dist(w, z));
    between > quasi.dist(z, x).max(quasi.dist(w, x))
}

/// Checks that `set` (excluding `x`) is independent with respect to `x`.
pub fn is_independent(quasi: &QuasiMetric, x: usize, set: &[usize]) -> bool {
    set.iter().enumerate().all(|(i, &z)| {
        z != x && set[i + 1..].iter().all(|&w| compatible(quasi, x, z, w))
    })
}

/// Largest set independent with respect to some center.
pub fn independence_dimension(quasi: &QuasiMetric, exact_limit: usize) -> IndependenceReport {
    let n = quasi.len();
    let mut report = IndependenceReport {
        dim: 0,
        center: None,
        witness: Vec::new(),
        exact: true,
    };
    for x in 0..n {
        let cand: Vec<usize> = (0..n).filter(|&z| z != x).collect();
        let sel = max_weight_independent_set(cand.len(), &vec![1.0; cand.len()], exact_limit, |i, j| {
            !compatible(quasi, x, cand[i], cand[j])
        });
        report.exact &= sel.exact;
        if sel.members.len() > report.dim {
            report.dim = sel.members.len();
            report.center = Some(x);
            report.witness = sel.members.iter().map(|&i| cand[i]).collect();
        }
    }
    report
}

/// Search-node budget for improving the greedy guard set.
const GUARD_SEARCH_BUDGET: usize = 200_000;

/// A set `J` of nodes other than `x` such that every `z != x` has some
/// `y in J` with `d(z, y) <= d(z, x)`.
///
/// Greedy set cover, then an exact search for a smaller cover within a fixed
/// node budget when the space has at most 65 nodes. Minimality is not
/// guaranteed when the budget runs out.
pub fn guard_set(quasi: &QuasiMetric, x: usize) -> Vec<usize> {
    let n = quasi.len();
    let others: Vec<usize> = (0..n).filter(|&z| z != x).collect();
    if others.is_empty() {
        return Vec::new();
    }
    // covers[i] = elements (positions in `others`) guarded by others[i].
    let covers: Vec<Vec<usize>> = others
        .iter()
        .map(|&y| {
            (0..others.len())
                .filter(|&k| quasi.dist(others[k], y) <= quasi.dist(others[k], x))
                .collect()
        })
        .collect();

    let mut greedy = Vec::new();
    let mut covered = vec![false; others.len()];
    while covered.iter().any(|c| !c) {
        let (pick, _) = covers
            .iter()
            .enumerate()
            .map(|(i, c)| (i, c.iter().filter(|&&k| !covered[k]).count()))
            .fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        for &k in &covers[pick] {
            covered[k] = true;
        }
        greedy.push(pick);
    }

    let mut best = greedy;
    if others.len() <= 64 {
        let masks: Vec<u64> = covers
            .iter()
            .map(|c| c.iter().fold(0u64, |m, &k| m | 1 << k))
            .collect();
        let full = if others.len() == 64 {
            u64::MAX
        } else {
            (1u64 << others.len()) - 1
        };
        let mut search = CoverSearch {
            masks: &masks,
            full,
            best: best.clone(),
            budget: GUARD_SEARCH_BUDGET,
            current: Vec::new(),
        };
        search.go(0);
        best = search.best;
    }
    let mut guards: Vec<usize> = best.into_iter().map(|i| others[i]).collect();
    guards.sort_unstable();
    guards
}

struct CoverSearch<'a> {
    masks: &'a [u64],
    full: u64,
    best: Vec<usize>,
    budget: usize,
    current: Vec<usize>,
}

impl CoverSearch<'_> {
    fn go(&mut self, covered: u64) {
        if self.budget == 0 {
            return;
        }
        self.budget -= 1;
        if covered == self.full {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + 1 >= self.best.len() {
            return;
        }
        let e = (!covered & self.full).trailing_zeros() as usize;
        let mut options: Vec<usize> = (0..self.masks.len())
            .filter(|&i| self.masks[i] >> e & 1 == 1)
            .collect();
        options.sort_by_key(|&i| std::cmp::Reverse((self.masks[i] & !covered).count_ones()));
        for i in options {
            self.current.push(i);
            self.go(covered | self.masks[i]);
            self.current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{DecaySpace, SpaceMode};

    fn uniform(n: usize) -> QuasiMetric {
        let s = DecaySpace::from_fn(SpaceMode::NodeSpace, n, |p, q| if p == q { 0.0 } else { 1.0 });
        QuasiMetric::new_unchecked(&s, 1.0)
    }

    fn planar(points: &[(f64, f64)]) -> QuasiMetric {
        let s = DecaySpace::from_fn(SpaceMode::NodeSpace, points.len(), |p, q| {
            (points[p].0 - points[q].0).hypot(points[p].1 - points[q].1)
        });
        QuasiMetric::new_unchecked(&s, 1.0)
    }

    #[test]
    fn uniform_space_has_dimension_one() {
        let r = independence_dimension(&uniform(8), 24);
        assert_eq!(r.dim, 1);
        assert!(r.exact);
    }

    #[test]
    fn pentagon_around_origin() {
        let mut pts = vec![(0.0, 0.0)];
        for k in 0..5 {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 5.0;
            pts.push((a.cos(), a.sin()));
        }
        let q = planar(&pts);
        assert!(is_independent(&q, 0, &[1, 2, 3, 4, 5]));
        let r = independence_dimension(&q, 24);
        assert_eq!(r.dim, 5);
        assert_eq!(r.center, Some(0));
    }

    #[test]
    fn guard_examples() {
        let q = planar(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(guard_set(&q, 0), vec![1]);
        let g = guard_set(&uniform(6), 2);
        assert_eq!(g.len(), 1);
        assert!(!g.contains(&2));
    }

    #[test]
    fn guards_cover_every_node() {
        let pts: Vec<(f64, f64)> = (0..15)
            .map(|i| {
                let t = i as f64 * 0.77;
                (t.cos() * (1.0 + i as f64), t.sin() * (2.0 + 0.3 * i as f64))
            })
            .collect();
        let q = planar(&pts);
        for x in 0..pts.len() {
            let g = guard_set(&q, x);
            assert!(g.len() <= 6);
            for z in (0..pts.len()).filter(|&z| z != x) {
                assert!(g.iter().any(|&y| q.dist(z, y) <= q.dist(z, x)));
            }
        }
    }
}
