//! Maximum-weight independent set over small conflict graphs.
//!
//! Several diagnostics (packings, fading values, independence) reduce to
//! "largest/heaviest subset with no conflicting pair". Graphs with at most
//! 64 vertices are solved exactly by branch and bound on bitmasks; larger
//! inputs fall back to a greedy lower bound.

/// Hard upper limit for the exact solver.
pub const MAX_EXACT: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    /// Selected vertex indices, ascending.
    pub members: Vec<usize>,
    pub weight: f64,
    pub exact: bool,
}

/// Solves max-weight independent set. `conflict(i, j)` must be symmetric.
/// Weights must be non-negative. Exact when `n <= exact_limit.min(64)`.
pub fn max_weight_independent_set(
    n: usize,
    weights: &[f64],
    exact_limit: usize,
    conflict: impl Fn(usize, usize) -> bool,
) -> Selection {
    debug_assert_eq!(weights.len(), n);
    if n == 0 {
        return Selection {
            members: Vec::new(),
            weight: 0.0,
            exact: true,
        };
    }
    if n <= exact_limit.min(MAX_EXACT) {
        exact(n, weights, &conflict)
    } else {
        greedy(n, weights, &conflict)
    }
}

fn exact(n: usize, weights: &[f64], conflict: &impl Fn(usize, usize) -> bool) -> Selection {
    // Vertices in order of decreasing weight, ties by index, so that the
    // first incumbent found is already good.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    let w: Vec<f64> = perm.iter().map(|&i| weights[i]).collect();
    let mut adj = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            if conflict(perm[a], perm[b]) {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }

    struct Bnb<'a> {
        w: &'a [f64],
        adj: &'a [u64],
        best: f64,
        best_set: u64,
    }

    impl Bnb<'_> {
        fn bound(&self, cand: u64) -> f64 {
            let mut c = cand;
            let mut s = 0.0;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                s += self.w[i];
                c &= c - 1;
            }
            s
        }

        fn go(&mut self, cand: u64, chosen: u64, weight: f64) {
            if cand == 0 {
                if weight > self.best {
                    self.best = weight;
                    self.best_set = chosen;
                }
                return;
            }
            if weight + self.bound(cand) <= self.best {
                return;
            }
            let i = cand.trailing_zeros() as usize;
            let bit = 1u64 << i;
            self.go(cand & !bit & !self.adj[i], chosen | bit, weight + self.w[i]);
            self.go(cand & !bit, chosen, weight);
        }
    }

    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut bnb = Bnb {
        w: &w,
        adj: &adj,
        best: f64::NEG_INFINITY,
        best_set: 0,
    };
    bnb.go(all, 0, 0.0);
    let mut members: Vec<usize> = (0..n)
        .filter(|&i| bnb.best_set >> i & 1 == 1)
        .map(|i| perm[i])
        .collect();
    members.sort_unstable();
    Selection {
        members,
        weight: bnb.best.max(0.0),
        exact: true,
    }
}

fn greedy(n: usize, weights: &[f64], conflict: &impl Fn(usize, usize) -> bool) -> Selection {
    let degree: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && conflict(i, j)).count())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    // Heavy, low-degree vertices first.
    order.sort_by(|&a, &b| {
        let ka = weights[a] / (degree[a] + 1) as f64;
        let kb = weights[b] / (degree[b] + 1) as f64;
        kb.total_cmp(&ka).then(a.cmp(&b))
    });
    let mut members: Vec<usize> = Vec::new();
    for i in order {
        if members.iter().all(|&j| !conflict(i, j)) {
            members.push(i);
        }
    }
    members.sort_unstable();
    let weight = members.iter().map(|&i| weights[i]).sum();
    Selection {
        members,
        weight,
        exact: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(n: usize, weights: &[f64], conflict: impl Fn(usize, usize) -> bool) -> f64 {
        let mut best = 0.0_f64;
        for mask in 0u32..1 << n {
            let ok = (0..n).all(|a| {
                (a + 1..n).all(|b| mask >> a & 1 == 0 || mask >> b & 1 == 0 || !conflict(a, b))
            });
            if ok {
                let w: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| weights[i]).sum();
                best = best.max(w);
            }
        }
        best
    }

    #[test]
    fn path_graph() {
        let c = |a: usize, b: usize| a.abs_diff(b) == 1;
        let s = max_weight_independent_set(3, &[1.0; 3], 24, c);
        assert_eq!(s.members, vec![0, 2]);
        assert!(s.exact);
        let s = max_weight_independent_set(3, &[1.0, 5.0, 1.0], 24, c);
        assert_eq!(s.members, vec![1]);
    }

    #[test]
    fn empty_input() {
        let s = max_weight_independent_set(0, &[], 24, |_, _| false);
        assert!(s.members.is_empty());
    }

    #[test]
    fn greedy_is_flagged() {
        let s = max_weight_independent_set(5, &[1.0; 5], 3, |_, _| false);
        assert!(!s.exact);
        assert_eq!(s.members.len(), 5);
    }

    proptest! {
        #[test]
        fn exact_matches_enumeration(
            n in 1usize..11,
            edges in proptest::collection::vec(any::<bool>(), 55),
            weights in proptest::collection::vec(0.0f64..10.0, 11),
        ) {
            let idx = |a: usize, b: usize| {
                let (a, b) = (a.min(b), a.max(b));
                b * (b - 1) / 2 + a
            };
            let conflict = |a: usize, b: usize| a != b && edges[idx(a, b)];
            let w = &weights[..n];
            let s = max_weight_independent_set(n, w, 24, conflict);
            prop_assert!((s.weight - brute(n, w, conflict)).abs() < 1e-9);
            for (i, &a) in s.members.iter().enumerate() {
                for &b in &s.members[i + 1..] {
                    prop_assert!(!conflict(a, b));
                }
            }
            let g = max_weight_independent_set(n, w, 0, conflict);
            prop_assert!(g.weight <= s.weight + 1e-9);
        }
    }
}
