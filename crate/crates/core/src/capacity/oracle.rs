use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{AffectanceMatrix, LinkSystem};

pub const DEFAULT_ORACLE_MAX: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub size: usize,
    /// Lexicographically least maximum feasible set, ascending.
    pub witness: Vec<usize>,
}

/// Exhaustive maximum-cardinality feasible subset under uniform power.
///
/// Depth-first over index-increasing subsets; a branch dies as soon as the
/// partial set is infeasible, since every superset of an infeasible set is
/// infeasible.
pub fn capacity_oracle(sys: &LinkSystem, max_n: usize) -> Result<OracleResult> {
    if !sys.power_assignment().is_uniform() {
        return Err(Error::NonUniformPower);
    }
    let n = sys.len();
    if n > max_n {
        return Err(Error::TooManyLinks { links: n, max: max_n });
    }
    let aff = sys.affectance_matrix();
    let mut search = Search {
        aff: &aff,
        n,
        incoming: vec![0.0; n],
        current: Vec::with_capacity(n),
        best: Vec::new(),
    };
    search.descend(0);
    Ok(OracleResult {
        size: search.best.len(),
        witness: search.best,
    })
}

struct Search<'a> {
    aff: &'a AffectanceMatrix,
    n: usize,
    /// In-affectance on each link from the current set.
    incoming: Vec<f64>,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn descend(&mut self, next: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        for v in next..self.n {
            if self.current.len() + (self.n - v) <= self.best.len() {
                return;
            }
            if self.aff.is_drowned(v) {
                continue;
            }
            let own_in: f64 = self.incoming[v];
            if own_in > 1.0 {
                continue;
            }
            let fits = self
                .current
                .iter()
                .all(|&u| self.incoming[u] + self.aff.get(v, u) <= 1.0);
            if !fits {
                continue;
            }
            for u in 0..self.n {
                self.incoming[u] += self.aff.get(v, u);
            }
            self.current.push(v);
            self.descend(v + 1);
            self.current.pop();
            for u in 0..self.n {
                self.incoming[u] -= self.aff.get(v, u);
            }
        }
    }
}
