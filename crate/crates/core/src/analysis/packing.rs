//! Decay balls, packing numbers and Assouad dimension estimates.

use serde::{Deserialize, Serialize};

use crate::search::max_weight_independent_set;
use crate::space::DecaySpace;

pub const DEFAULT_Q_GRID: [f64; 6] = [1.5, 2.0, 3.0, 4.0, 8.0, 16.0];

/// Open ball `{x : f(x, y) < t}`; contains `y` for any `t > 0`.
pub fn ball(space: &DecaySpace, y: usize, t: f64) -> Vec<usize> {
    (0..space.len()).filter(|&x| space.decay(x, y) < t).collect()
}

/// Closed ball `{x : f(x, y) <= t}`.
pub fn ball_closed(space: &DecaySpace, y: usize, t: f64) -> Vec<usize> {
    (0..space.len()).filter(|&x| space.decay(x, y) <= t).collect()
}

/// Two centers whose open balls of radius `t/2` jointly cover `ball(y, t)`,
/// or `None` when no pair of nodes does.
pub fn half_radius_cover(space: &DecaySpace, y: usize, t: f64) -> Option<(usize, usize)> {
    let body = ball(space, y, t);
    let n = space.len();
    let half = t / 2.0;
    for a in 0..n {
        for b in a..n {
            if body
                .iter()
                .all(|&x| space.decay(x, a) < half || space.decay(x, b) < half)
            {
                return Some((a, b));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingResult {
    pub count: usize,
    pub exact: bool,
    pub witness: Vec<usize>,
}

/// Largest subset of `body` whose pairwise decays (in both directions) exceed
/// `2t`. Exact up to `exact_limit` nodes, a greedy lower bound beyond.
pub fn packing_number(space: &DecaySpace, body: &[usize], t: f64, exact_limit: usize) -> PackingResult {
    let threshold = 2.0 * t;
    let sel = max_weight_independent_set(body.len(), &vec![1.0; body.len()], exact_limit, |i, j| {
        let (a, b) = (body[i], body[j]);
        space.decay(a, b).min(space.decay(b, a)) <= threshold
    });
    PackingResult {
        count: sel.members.len(),
        exact: sel.exact,
        witness: sel.members.iter().map(|&i| body[i]).collect(),
    }
}

/// How the packing constant `C` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum PackingConstant {
    Fixed(f64),
    /// Least-squares slope of `ln g(q)` against `ln q`, with `C` the smallest
    /// constant such that `g(q) <= C q^A` on the whole grid.
    Fitted,
}

impl Default for PackingConstant {
    fn default() -> Self {
        PackingConstant::Fixed(1.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub assouad: f64,
    #[serde(rename = "C")]
    pub c: f64,
    /// `(q, g(q))` pairs.
    pub samples: Vec<(f64, usize)>,
    /// Distinct ball radii examined.
    pub r_grid: Vec<f64>,
    /// Every packing was solved exactly.
    pub exact: bool,
}

/// Densest `q`-packing `g(q)` for each `q` in the grid, and the Assouad
/// estimate `max_q log_q(g(q) / C)`.
///
/// `g(q)` is the supremum over centers `x` and radii `r` of the packing number
/// of `B(x, r)` at radius `r/q`. Ball contents only change at the decays into
/// `x`, and within one content class the packing condition is loosest as `r`
/// approaches the class's lower end from above, so it suffices to examine
/// closed balls at those decays with pairwise threshold `2v/q`.
pub fn assouad_estimate(
    space: &DecaySpace,
    constant: PackingConstant,
    q_grid: &[f64],
    exact_limit: usize,
) -> DimensionEstimate {
    let n = space.len();
    let mut exact = true;
    let mut radii: Vec<f64> = Vec::new();
    let mut g = vec![1usize.min(n); q_grid.len()];
    for x in 0..n {
        let mut incoming: Vec<f64> = (0..n)
            .filter(|&y| y != x)
            .map(|y| space.decay(y, x))
            .filter(|v| *v > 0.0)
            .collect();
        incoming.sort_by(f64::total_cmp);
        incoming.dedup();
        for &v in &incoming {
            radii.push(v);
            let body = ball_closed(space, x, v);
            for (qi, &q) in q_grid.iter().enumerate() {
                // A packing never exceeds the body.
                if body.len() <= g[qi] {
                    continue;
                }
                let p = packing_number(space, &body, v / q, exact_limit);
                exact &= p.exact;
                g[qi] = g[qi].max(p.count);
            }
        }
    }
    radii.sort_by(f64::total_cmp);
    radii.dedup();

    let samples: Vec<(f64, usize)> = q_grid.iter().copied().zip(g.iter().copied()).collect();
    let c = match constant {
        PackingConstant::Fixed(c) => c,
        PackingConstant::Fitted => fitted_constant(&samples),
    };
    let assouad = samples
        .iter()
        .map(|&(q, gq)| (gq.max(1) as f64 / c).ln() / q.ln())
        .fold(f64::NEG_INFINITY, f64::max);
    DimensionEstimate {
        assouad: if assouad.is_finite() { assouad } else { 0.0 },
        c,
        samples,
        r_grid: radii,
        exact,
    }
}

fn fitted_constant(samples: &[(f64, usize)]) -> f64 {
    if samples.len() < 2 {
        return 1.0;
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(q, gq)| (q.ln(), (gq.max(1) as f64).ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { (sxy / sxx).max(0.0) } else { 0.0 };
    samples
        .iter()
        .map(|&(q, gq)| gq.max(1) as f64 / q.powf(slope))
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::SpaceMode;
    use approx::assert_abs_diff_eq;

    fn line(n: usize) -> DecaySpace {
        DecaySpace::from_fn(SpaceMode::NodeSpace, n, |p, q| p.abs_diff(q) as f64)
    }

    #[test]
    fn ball_examples() {
        let s = line(5);
        assert_eq!(ball(&s, 2, 1.5), vec![1, 2, 3]);
        assert_eq!(ball(&s, 2, 1.0), vec![2]);
        assert_eq!(ball(&s, 2, 10.0), vec![0, 1, 2, 3, 4]);
        assert_eq!(ball_closed(&s, 2, 1.0), vec![1, 2, 3]);
    }

    #[test]
    fn half_radius_cover_on_a_line() {
        let s = line(5);
        // ball(2, 3) = {0..4}; radius-1.5 balls around 0 and 3 cover it.
        assert!(half_radius_cover(&s, 2, 3.0).is_some());
        let u = DecaySpace::from_fn(SpaceMode::NodeSpace, 3, |p, q| if p == q { 0.0 } else { 1.0 });
        assert_eq!(half_radius_cover(&u, 0, 1.5), None);
    }

    #[test]
    fn packing_examples() {
        let s = line(5);
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(packing_number(&s, &[3], 1.0, 24).count, 1);

        // Oracle: enumerate all 32 subsets.
        let mut best = 0;
        for mask in 0u32..32 {
            let m: Vec<usize> = (0..5).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = m.iter().enumerate().all(|(i, &a)| {
                m[i + 1..].iter().all(|&b| s.decay(a, b) > 2.0)
            });
            if ok {
                best = best.max(m.len());
            }
        }
        let p = packing_number(&s, &all, 1.0, 24);
        assert_eq!(p.count, best);
        assert_eq!(p.count, 2);
        assert!(p.exact);
        assert_eq!(packing_number(&s, &all, 1e-9, 24).count, 5);
    }

    #[test]
    fn uniform_space_is_not_doubling() {
        let s = DecaySpace::from_fn(SpaceMode::NodeSpace, 16, |p, q| if p == q { 0.0 } else { 1.0 });
        let est = assouad_estimate(&s, PackingConstant::Fixed(1.0), &DEFAULT_Q_GRID, 24);
        assert!(est.assouad > 1.0);
        assert_abs_diff_eq!(est.assouad, 16f64.ln() / 3f64.ln(), epsilon = 1e-12);
        assert!(est.exact);
    }

    #[test]
    fn two_nodes() {
        let s = DecaySpace::from_rows(SpaceMode::NodeSpace, vec![vec![0.0, 5.0], vec![5.0, 0.0]])
            .unwrap();
        let est = assouad_estimate(&s, PackingConstant::Fixed(1.0), &DEFAULT_Q_GRID, 24);
        // Both nodes pack once the radius r/q drops below 5/2.
        assert_eq!(est.samples[1], (2.0, 1));
        assert_eq!(est.samples[2], (3.0, 2));
        assert_abs_diff_eq!(est.assouad, 2f64.ln() / 3f64.ln(), epsilon = 1e-12);
        assert_eq!(est.r_grid, vec![5.0]);
    }

    #[test]
    fn fitted_constant_bounds_every_sample() {
        let s = line(12);
        let est = assouad_estimate(&s, PackingConstant::Fitted, &DEFAULT_Q_GRID, 24);
        for &(q, gq) in &est.samples {
            assert!(gq as f64 <= est.c * q.powf(est.assouad) * (1.0 + 1e-12));
        }
    }
}
