//! Metricity parameters of a decay space and the induced quasi-distances.
//!
//! The metricity `zeta` is the smallest exponent for which
//! `f(x,y)^(1/zeta) <= f(x,z)^(1/zeta) + f(z,y)^(1/zeta)` holds on every ordered
//! triple. The multiplicative variant `phi_mult` is the smallest factor with
//! `f(x,z) <= phi_mult * (f(x,y) + f(y,z))`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::DecaySpace;

/// Default bisection tolerance on the metricity.
pub const DEFAULT_TOL: f64 = 1e-9;

const MAX_BISECTION_STEPS: usize = 400;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaResult {
    pub zeta_raw: f64,
    pub zeta: f64,
    /// Ordered triple `(x, y, z)` whose constraint
    /// `d(x,y) <= d(x,z) + d(z,y)` is binding.
    pub witness: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiResult {
    pub phi_mult: f64,
    /// `lg phi_mult`; `None` when the space has no triples.
    pub phi: Option<f64>,
    /// Ordered triple `(x, y, z)` attaining `f(x,z) / (f(x,y) + f(y,z))`.
    pub witness: Option<[usize; 3]>,
    pub has_triples: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricityReport {
    pub zeta: f64,
    pub zeta_raw: f64,
    pub phi_mult: f64,
    pub phi: Option<f64>,
    pub zeta0: Option<f64>,
    pub witness_zeta: Option<[usize; 3]>,
    pub witness_phi: Option<[usize; 3]>,
}

/// Outcome of solving a single triple's constraint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TripleZeta {
    /// Holds for every positive exponent.
    Unconstrained,
    /// Holds exactly for exponents at or above the value.
    AtLeast(f64),
    /// Holds for no exponent (a zero leg against a positive direct decay).
    Unbounded,
}

/// Smallest `zeta` for which one triple's constraint holds.
///
/// `direct` is `f(x,y)`; `a` and `b` are the two legs through the middle node.
/// Feasibility is a half-line `[zeta*, inf)` because `(a^t + b^t)^(1/t)` is
/// non-increasing in `t = 1/zeta`. The returned value lies on the feasible
/// side within `tol`.
pub fn triple_zeta(direct: f64, a: f64, b: f64, tol: f64) -> TripleZeta {
    if direct <= a.max(b) {
        return TripleZeta::Unconstrained;
    }
    if a <= 0.0 || b <= 0.0 {
        return TripleZeta::Unbounded;
    }
    let (ra, rb) = (a / direct, b / direct);
    let holds = |t: f64| ra.powf(t) + rb.powf(t) >= 1.0;

    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    while holds(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..MAX_BISECTION_STEPS {
        if lo > 0.0 && 1.0 / lo - 1.0 / hi <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    TripleZeta::AtLeast(1.0 / lo)
}

/// Computes the metricity of a space.
///
/// Ties between triples are broken towards the lexicographically smallest
/// `(x, y, z)`. Spaces with fewer than three nodes have `zeta_raw = 1`.
/// When no triple constrains the exponent (every triple satisfies
/// `f(x,y) <= max(f(x,z), f(z,y))`), `zeta_raw` is 0.
pub fn compute_zeta(space: &DecaySpace, tol: f64) -> Result<ZetaResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tol} must be positive")));
    }
    space.ensure_valid()?;
    let n = space.len();
    if n < 3 {
        return Ok(ZetaResult {
            zeta_raw: 1.0,
            zeta: 1.0,
            witness: None,
        });
    }

    let mut best = 0.0_f64;
    let mut witness = None;
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            let direct = space.decay(x, y);
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let (a, b) = (space.decay(x, z), space.decay(z, y));
                if direct <= a.max(b) {
                    continue;
                }
                // Skip the bisection when the current best already satisfies
                // this triple.
                if best > 0.0 {
                    let t = 1.0 / best;
                    if (a / direct).powf(t) + (b / direct).powf(t) >= 1.0 {
                        continue;
                    }
                }
                match triple_zeta(direct, a, b, tol) {
                    TripleZeta::AtLeast(z_star) if z_star > best => {
                        best = z_star;
                        witness = Some([x, y, z]);
                    }
                    TripleZeta::Unbounded => return Err(Error::UnboundedMetricity([x, y, z])),
                    _ => {}
                }
            }
        }
    }
    Ok(ZetaResult {
        zeta_raw: best,
        zeta: best.max(1.0),
        witness,
    })
}

/// Multiplicative metricity `max f(x,z) / (f(x,y) + f(y,z))`.
pub fn compute_phi(space: &DecaySpace) -> Result<PhiResult> {
    space.ensure_valid()?;
    let n = space.len();
    if n < 3 {
        return Ok(PhiResult {
            phi_mult: 0.0,
            phi: None,
            witness: None,
            has_triples: false,
        });
    }
    let mut best = f64::NEG_INFINITY;
    let mut witness = None;
    for x in 0..n {
        for y in 0..n {
            if y == x {
                continue;
            }
            for z in 0..n {
                if z == x || z == y {
                    continue;
                }
                let ratio = space.decay(x, z) / (space.decay(x, y) + space.decay(y, z));
                if ratio > best {
                    best = ratio;
                    witness = Some([x, y, z]);
                }
            }
        }
    }
    Ok(PhiResult {
        phi_mult: best,
        phi: Some(best.log2()),
        witness,
        has_triples: true,
    })
}

/// Trivial upper bound `lg(max / min)` over off-diagonal decays.
pub fn zeta_upper_bound(space: &DecaySpace) -> Result<f64> {
    space.ensure_valid()?;
    let (lo, hi) = space
        .off_diagonal()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if space.len() < 2 {
        return Err(Error::InvalidParameter(
            "upper bound needs at least one off-diagonal entry".into(),
        ));
    }
    Ok((hi / lo).log2())
}

/// Full metricity report: zeta, phi and the trivial bound.
pub fn metricity_report(space: &DecaySpace, tol: f64) -> Result<MetricityReport> {
    let zeta = compute_zeta(space, tol)?;
    let phi = compute_phi(space)?;
    let zeta0 = if space.len() >= 2 {
        Some(zeta_upper_bound(space)?)
    } else {
        None
    };
    Ok(MetricityReport {
        zeta: zeta.zeta,
        zeta_raw: zeta.zeta_raw,
        phi_mult: phi.phi_mult,
        phi: phi.phi,
        zeta0,
        witness_zeta: zeta.witness,
        witness_phi: phi.witness,
    })
}

/// Quasi-distances `d(p,q) = f(p,q)^(1/zeta)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuasiMetric {
    n: usize,
    zeta: f64,
    d: Vec<f64>,
}

impl QuasiMetric {
    /// Exponentiates without checking the triangle inequality.
    pub fn new_unchecked(space: &DecaySpace, zeta: f64) -> Self {
        let n = space.len();
        let inv = 1.0 / zeta;
        let mut d = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                d.push(space.decay(p, q).powf(inv));
            }
        }
        Self { n, zeta, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    #[inline]
    pub fn dist(&self, p: usize, q: usize) -> f64 {
        self.d[p * self.n + q]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|p| (p + 1..self.n).all(|q| self.dist(p, q) == self.dist(q, p)))
    }

    /// First ordered triple `(x, y, z)` of distinct nodes with
    /// `d(x,y) > d(x,z) + d(z,y)` beyond a relative tolerance.
    pub fn triangle_violation(&self, tol: f64) -> Option<[usize; 3]> {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                if y == x {
                    continue;
                }
                let direct = self.dist(x, y);
                for z in 0..n {
                    if z == x || z == y {
                        continue;
                    }
                    let detour = self.dist(x, z) + self.dist(z, y);
                    if direct > detour + tol * direct.max(1.0) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    }
}

/// Builds quasi-distances and checks the triangle inequality on every triple.
pub fn quasi_distances(space: &DecaySpace, zeta: f64, tol: f64) -> Result<QuasiMetric> {
    if !(zeta > 0.0) {
        return Err(Error::InvalidParameter(format!("zeta {zeta} must be positive")));
    }
    space.ensure_valid()?;
    let quasi = QuasiMetric::new_unchecked(space, zeta);
    match quasi.triangle_violation(tol) {
        None => Ok(quasi),
        Some([x, y, z]) => Err(Error::TriangleViolation { zeta, x, y, z }),
    }
}
