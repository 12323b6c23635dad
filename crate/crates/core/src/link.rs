//! Links, power assignments, affectance and feasibility.
//!
//! The affectance of link `w` on link `v` is the interference `w` causes at
//! the receiver of `v`, normalized by the signal `v` receives and scaled by
//! the noise constant `c_v = beta / (1 - beta * N / (P_v G_vv))`:
//!
//! ```text
//! a_w(v) = min(1, c_v * (P_w / P_v) * (f_vv / f_wv)),   a_v(v) = 0
//! ```
//!
//! A set is `K`-feasible when every member's in-affectance is at most `1/K`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metricity::QuasiMetric;
use crate::space::{DecaySpace, SpaceMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Link {
    pub sender: usize,
    pub receiver: usize,
}

impl Link {
    pub fn new(sender: usize, receiver: usize) -> Self {
        Self { sender, receiver }
    }
}

impl From<[usize; 2]> for Link {
    fn from([sender, receiver]: [usize; 2]) -> Self {
        Self { sender, receiver }
    }
}

impl From<Link> for [usize; 2] {
    fn from(l: Link) -> Self {
        [l.sender, l.receiver]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SinrParams {
    pub beta: f64,
    pub noise: f64,
}

impl Default for SinrParams {
    fn default() -> Self {
        Self {
            beta: 1.0,
            noise: 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PowerAssignment {
    Uniform {
        #[serde(rename = "P")]
        power: f64,
    },
    Explicit {
        #[serde(rename = "P")]
        powers: Vec<f64>,
    },
}

impl PowerAssignment {
    pub fn uniform(power: f64) -> Self {
        PowerAssignment::Uniform { power }
    }

    pub fn is_uniform(&self) -> bool {
        matches!(self, PowerAssignment::Uniform { .. })
    }
}

/// Direction of an aggregate affectance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `a_S(v)`: affectance of the set on `v`.
    In,
    /// `a_v(S)`: affectance of `v` on the set.
    Out,
}

/// Links over a decay space with SINR parameters and powers.
///
/// In link-gain mode link `i` is `(i, i)` and `f[w][v]` is the decay from the
/// sender of `w` to the receiver of `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinkSystem {
    space: DecaySpace,
    links: Vec<Link>,
    params: SinrParams,
    power: PowerAssignment,
    order: Vec<usize>,
}

impl LinkSystem {
    pub fn new(
        space: DecaySpace,
        links: Vec<Link>,
        params: SinrParams,
        power: PowerAssignment,
    ) -> Result<Self> {
        space.ensure_valid()?;
        if !(params.beta >= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "beta = {} must be at least 1",
                params.beta
            )));
        }
        if !(params.noise >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise = {} must be non-negative",
                params.noise
            )));
        }
        let n = space.len();
        for (index, l) in links.iter().enumerate() {
            let bad = |reason: String| Err(Error::InvalidLink { index, reason });
            if l.sender >= n || l.receiver >= n {
                return bad(format!("node index out of range for {n} nodes"));
            }
            match space.mode() {
                SpaceMode::NodeSpace if l.sender == l.receiver => {
                    return bad("sender equals receiver".into());
                }
                SpaceMode::LinkGain if l.sender != l.receiver => {
                    return bad("link-gain links must be (i, i)".into());
                }
                _ => {}
            }
            if !(space.decay(l.sender, l.receiver) > 0.0) {
                return bad("own-link decay must be positive".into());
            }
        }
        match &power {
            PowerAssignment::Uniform { power } if !(*power > 0.0 && power.is_finite()) => {
                return Err(Error::InvalidParameter(format!("power {power} must be positive")));
            }
            PowerAssignment::Explicit { powers } => {
                if powers.len() != links.len() {
                    return Err(Error::InvalidParameter(format!(
                        "{} powers given for {} links",
                        powers.len(),
                        links.len()
                    )));
                }
                if let Some(p) = powers.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
                    return Err(Error::InvalidParameter(format!("power {p} must be positive")));
                }
            }
            _ => {}
        }
        let mut sys = Self {
            space,
            links,
            params,
            power,
            order: Vec::new(),
        };
        let mut order: Vec<usize> = (0..sys.links.len()).collect();
        order.sort_by(|&a, &b| sys.own_decay(a).total_cmp(&sys.own_decay(b)).then(a.cmp(&b)));
        sys.order = order;
        Ok(sys)
    }

    /// Link system over a link-gain matrix: one link per row.
    pub fn from_link_gain(
        space: DecaySpace,
        params: SinrParams,
        power: PowerAssignment,
    ) -> Result<Self> {
        if space.mode() != SpaceMode::LinkGain {
            return Err(Error::InvalidParameter("expected a link-gain matrix".into()));
        }
        let links = (0..space.len()).map(|i| Link::new(i, i)).collect();
        Self::new(space, links, params, power)
    }

    pub fn space(&self) -> &DecaySpace {
        &self.space
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn params(&self) -> SinrParams {
        self.params
    }

    pub fn power_assignment(&self) -> &PowerAssignment {
        &self.power
    }

    /// Links sorted by own decay, ties by index.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_link_gain(&self) -> bool {
        self.space.mode() == SpaceMode::LinkGain
    }

    pub fn power(&self, v: usize) -> f64 {
        match &self.power {
            PowerAssignment::Uniform { power } => *power,
            PowerAssignment::Explicit { powers } => powers[v],
        }
    }

    /// `f(s_w, r_v)`.
    #[inline]
    pub fn cross_decay(&self, w: usize, v: usize) -> f64 {
        self.space
            .decay(self.links[w].sender, self.links[v].receiver)
    }

    /// `f_vv`.
    #[inline]
    pub fn own_decay(&self, v: usize) -> f64 {
        self.cross_decay(v, v)
    }

    /// Received signal strength `P_v G_vv`.
    pub fn signal(&self, v: usize) -> f64 {
        self.power(v) / self.own_decay(v)
    }

    /// `c_v`, or an error when the link cannot overcome noise alone.
    pub fn noise_constant(&self, v: usize) -> Result<f64> {
        let SinrParams { beta, noise } = self.params;
        let slack = 1.0 - beta * noise / self.signal(v);
        if slack <= 0.0 {
            return Err(Error::DrownedLink(v));
        }
        Ok(beta / slack)
    }

    /// Affectance without the cap at 1.
    pub fn raw_affectance(&self, w: usize, v: usize) -> Result<f64> {
        let c = self.noise_constant(v)?;
        if w == v {
            return Ok(0.0);
        }
        Ok(c * (self.power(w) / self.power(v)) * (self.own_decay(v) / self.cross_decay(w, v)))
    }

    /// `a_w(v)`, capped at 1.
    pub fn affectance(&self, w: usize, v: usize) -> Result<f64> {
        Ok(self.raw_affectance(w, v)?.min(1.0))
    }

    /// Capped aggregate affectance in the given direction.
    pub fn aggregate_affectance(&self, set: &[usize], v: usize, dir: Direction) -> Result<f64> {
        set.iter().try_fold(0.0, |acc, &w| {
            let a = match dir {
                Direction::In => self.affectance(w, v)?,
                Direction::Out => self.affectance(v, w)?,
            };
            Ok(acc + a)
        })
    }

    /// `SINR_v` when the links of `set` transmit simultaneously.
    pub fn sinr(&self, set: &[usize], v: usize) -> f64 {
        let interference: f64 = set
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| self.power(w) / self.cross_decay(w, v))
            .sum();
        self.signal(v) / (self.params.noise + interference)
    }

    /// Whether `set` is `k`-feasible.
    ///
    /// The decision sums uncapped affectances, so for `k = 1` it coincides
    /// with `SINR_v >= beta` for every member. A saturated (capped) term
    /// always exceeds `1/k` on its own, so the capped and uncapped readings
    /// differ only where the capped sum would hide such a term.
    pub fn is_feasible(&self, set: &[usize], k: f64) -> Feasibility {
        let mut worst: Option<(usize, f64)> = None;
        for &v in set {
            let a = match self.noise_constant(v) {
                Err(_) => f64::INFINITY,
                Ok(_) => set
                    .iter()
                    .map(|&w| self.raw_affectance(w, v).unwrap_or(f64::INFINITY))
                    .sum(),
            };
            if worst.is_none_or(|(_, b)| a > b) {
                worst = Some((v, a));
            }
        }
        let (worst_link, worst_affectance) = match worst {
            Some((l, a)) => (Some(l), a),
            None => (None, 0.0),
        };
        Feasibility {
            feasible: worst_affectance <= 1.0 / k,
            worst_link,
            worst_affectance,
        }
    }

    /// Precomputes every pairwise uncapped affectance.
    pub fn affectance_matrix(&self) -> AffectanceMatrix {
        let n = self.len();
        let drowned: Vec<bool> = (0..n).map(|v| self.noise_constant(v).is_err()).collect();
        let mut raw = vec![0.0; n * n];
        for w in 0..n {
            for v in 0..n {
                raw[w * n + v] = if drowned[v] {
                    f64::INFINITY
                } else {
                    self.raw_affectance(w, v).unwrap_or(f64::INFINITY)
                };
            }
        }
        AffectanceMatrix { n, raw, drowned }
    }

    /// Quasi-distance between two links: the minimum over the four
    /// sender/receiver pairings.
    ///
    /// In link-gain mode senders and receivers share a pseudo-node, so only
    /// the cross terms `d(s_v, r_w)` and `d(s_w, r_v)` carry information.
    pub fn link_distance(&self, quasi: &QuasiMetric, v: usize, w: usize) -> f64 {
        if v == w {
            return 0.0;
        }
        let (lv, lw) = (self.links[v], self.links[w]);
        quasi
            .dist(lv.sender, lw.receiver)
            .min(quasi.dist(lw.sender, lv.receiver))
            .min(quasi.dist(lv.sender, lw.sender))
            .min(quasi.dist(lv.receiver, lw.receiver))
    }

    /// Link length `d_vv`.
    pub fn link_length(&self, quasi: &QuasiMetric, v: usize) -> f64 {
        let l = self.links[v];
        quasi.dist(l.sender, l.receiver)
    }

    /// Whether `v` is `eta`-separated from every other link of `set`.
    pub fn check_separation(&self, quasi: &QuasiMetric, v: usize, set: &[usize], eta: f64) -> bool {
        self.separation_witness(quasi, v, set, eta).is_none()
    }

    /// First link of `set` that `v` is not `eta`-separated from.
    pub fn separation_witness(
        &self,
        quasi: &QuasiMetric,
        v: usize,
        set: &[usize],
        eta: f64,
    ) -> Option<usize> {
        let need = eta * self.link_length(quasi, v);
        set.iter()
            .copied()
            .find(|&w| w != v && self.link_distance(quasi, v, w) < need)
    }

    /// Whether every member of `set` is `eta`-separated from the rest;
    /// returns the first violating pair otherwise.
    pub fn set_separation(&self, quasi: &QuasiMetric, set: &[usize], eta: f64) -> Result<(), (usize, usize)> {
        for &v in set {
            if let Some(w) = self.separation_witness(quasi, v, set, eta) {
                return Err((v, w));
            }
        }
        Ok(())
    }

    /// Checks the monotonicity conditions `P_v <= P_w` and
    /// `P_w / f_ww <= P_v / f_vv` for every `v` before `w` in the link order.
    pub fn is_monotone_power(&self) -> Monotonicity {
        const REL: f64 = 1e-12;
        for (i, &v) in self.order.iter().enumerate() {
            for &w in &self.order[i + 1..] {
                let (pv, pw) = (self.power(v), self.power(w));
                let grows = pv <= pw * (1.0 + REL);
                let weakens = pw / self.own_decay(w) <= (pv / self.own_decay(v)) * (1.0 + REL);
                if !(grows && weakens) {
                    return Monotonicity {
                        monotone: false,
                        witness: Some((v, w)),
                    };
                }
            }
        }
        Monotonicity {
            monotone: true,
            witness: None,
        }
    }

    /// Certifies that no power assignment makes `{v, w}` feasible:
    /// `beta^2 f_vv f_ww / (f_vw f_wv) > 1`.
    pub fn pairwise_power_infeasible(&self, v: usize, w: usize) -> PairwiseVerdict {
        let beta = self.params.beta;
        let product = beta * beta * self.own_decay(v) * self.own_decay(w)
            / (self.cross_decay(v, w) * self.cross_decay(w, v));
        PairwiseVerdict {
            infeasible: product > 1.0,
            product,
            conservative: self.params.noise > 0.0,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let file: SystemFile = serde_json::from_str(&text)?;
        let space = match &file.space {
            SpaceRef::Inline(s) => s.clone(),
            SpaceRef::Path(p) => {
                let p = Path::new(p);
                let resolved = if p.is_relative() {
                    path.parent().unwrap_or(Path::new(".")).join(p)
                } else {
                    p.to_path_buf()
                };
                DecaySpace::load(resolved)?
            }
        };
        file.into_system(space)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(s)?;
        match file.space {
            SpaceRef::Inline(ref s) => {
                let space = s.clone();
                file.into_system(space)
            }
            SpaceRef::Path(_) => Err(Error::Parse(
                "space given by path; use LinkSystem::load".into(),
            )),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        let file = SystemFile {
            space: SpaceRef::Inline(self.space.clone()),
            links: Some(self.links.clone()),
            beta: self.params.beta,
            noise: self.params.noise,
            power: self.power.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SpaceRef {
    Inline(DecaySpace),
    Path(String),
}

/// JSON layout of a link system. `links` may be omitted for link-gain spaces.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct SystemFile {
    space: SpaceRef,
    #[serde(default)]
    links: Option<Vec<Link>>,
    beta: f64,
    noise: f64,
    power: PowerAssignment,
}

impl SystemFile {
    fn into_system(self, space: DecaySpace) -> Result<LinkSystem> {
        let params = SinrParams {
            beta: self.beta,
            noise: self.noise,
        };
        match self.links {
            Some(links) => LinkSystem::new(space, links, params, self.power),
            None => LinkSystem::from_link_gain(space, params, self.power),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Feasibility {
    pub feasible: bool,
    /// Member with the largest in-affectance.
    pub worst_link: Option<usize>,
    /// Its uncapped in-affectance (infinite for a drowned link).
    pub worst_affectance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Monotonicity {
    pub monotone: bool,
    pub witness: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairwiseVerdict {
    pub infeasible: bool,
    pub product: f64,
    /// Set when noise is present: the test stays sound but is only sufficient.
    pub conservative: bool,
}

/// Uncapped pairwise affectances, shared read-only by feasibility queries.
#[derive(Clone, Debug)]
pub struct AffectanceMatrix {
    n: usize,
    raw: Vec<f64>,
    drowned: Vec<bool>,
}

impl AffectanceMatrix {
    /// Uncapped `a_w(v)`.
    #[inline]
    pub fn get(&self, w: usize, v: usize) -> f64 {
        self.raw[w * self.n + v]
    }

    pub fn capped(&self, w: usize, v: usize) -> f64 {
        self.get(w, v).min(1.0)
    }

    pub fn is_drowned(&self, v: usize) -> bool {
        self.drowned[v]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn in_affectance(&self, set: &[usize], v: usize) -> f64 {
        set.iter().map(|&w| self.get(w, v)).sum()
    }

    pub fn out_affectance(&self, set: &[usize], v: usize) -> f64 {
        set.iter().map(|&w| self.get(v, w)).sum()
    }

    pub fn is_feasible(&self, set: &[usize], k: f64) -> bool {
        set.iter()
            .all(|&v| !self.drowned[v] && self.in_affectance(set, v) <= 1.0 / k)
    }
}

/// Total received power at `target` from uniform-power `senders`.
pub fn interference_at(space: &DecaySpace, senders: &[usize], target: usize, power: f64) -> Result<f64> {
    if senders.contains(&target) {
        return Err(Error::InvalidParameter(format!(
            "target {target} is among the senders"
        )));
    }
    Ok(senders.iter().map(|&y| power / space.decay(y, target)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricity::quasi_distances;
    use approx::assert_abs_diff_eq;

    /// Two links in link-gain form with the given own and cross decays.
    fn pair(own: [f64; 2], cross: [f64; 2], params: SinrParams) -> LinkSystem {
        let space = DecaySpace::from_rows(
            SpaceMode::LinkGain,
            vec![vec![own[0], cross[0]], vec![cross[1], own[1]]],
        )
        .unwrap();
        LinkSystem::from_link_gain(space, params, PowerAssignment::uniform(1.0)).unwrap()
    }

    fn planar(points: &[(f64, f64)], links: &[(usize, usize)], alpha: f64) -> LinkSystem {
        let space = DecaySpace::from_fn(SpaceMode::NodeSpace, points.len(), |p, q| {
            let (dx, dy) = (points[p].0 - points[q].0, points[p].1 - points[q].1);
            dx.hypot(dy).powf(alpha)
        });
        LinkSystem::new(
            space,
            links.iter().map(|&(s, r)| Link::new(s, r)).collect(),
            SinrParams::default(),
            PowerAssignment::uniform(1.0),
        )
        .unwrap()
    }

    #[test]
    fn affectance_examples() {
        let sys = pair([1.0, 1.0], [4.0, 4.0], SinrParams::default());
        assert_eq!(sys.affectance(0, 0).unwrap(), 0.0);
        assert_abs_diff_eq!(sys.affectance(1, 0).unwrap(), 0.25, epsilon = 1e-15);

        let sys = pair([4.0, 4.0], [1.0, 1.0], SinrParams::default());
        assert_eq!(sys.affectance(1, 0).unwrap(), 1.0);
        assert_eq!(sys.raw_affectance(1, 0).unwrap(), 4.0);

        let noisy = pair([1.0, 1.0], [4.0, 4.0], SinrParams { beta: 1.0, noise: 0.5 });
        assert_abs_diff_eq!(noisy.noise_constant(0).unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(noisy.affectance(1, 0).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn drowned_link_is_an_error() {
        let sys = pair([1.0, 1.0], [4.0, 4.0], SinrParams { beta: 2.0, noise: 0.5 });
        assert!(matches!(sys.affectance(1, 0), Err(Error::DrownedLink(0))));
        let f = sys.is_feasible(&[0], 1.0);
        assert!(!f.feasible);
        assert_eq!(f.worst_link, Some(0));
    }

    #[test]
    fn aggregate_examples() {
        let sys = pair([1.0, 1.0], [3.0, 3.0], SinrParams::default());
        for dir in [Direction::In, Direction::Out] {
            assert_eq!(sys.aggregate_affectance(&[0], 0, dir).unwrap(), 0.0);
            assert_eq!(sys.aggregate_affectance(&[], 0, dir).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(
            sys.aggregate_affectance(&[1], 0, Direction::In).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn feasibility_examples() {
        let sys = pair([1.0, 1.0], [3.0, 3.0], SinrParams::default());
        let f = sys.is_feasible(&[0, 1], 1.0);
        assert!(f.feasible);
        assert_abs_diff_eq!(f.worst_affectance, 1.0 / 3.0, epsilon = 1e-15);
        assert!(sys.is_feasible(&[0, 1], 3.0).feasible);
        assert!(!sys.is_feasible(&[0, 1], 3.1).feasible);
        assert!(sys.is_feasible(&[1], 1.0).feasible);
        assert!(sys.affectance_matrix().is_feasible(&[0, 1], 1.0));
    }

    #[test]
    fn saturated_pair_is_infeasible_even_though_capped_sum_is_one() {
        let sys = pair([1.0, 1.0], [0.5, 0.5], SinrParams::default());
        assert_eq!(sys.aggregate_affectance(&[0, 1], 0, Direction::In).unwrap(), 1.0);
        assert!(!sys.is_feasible(&[0, 1], 1.0).feasible);
        assert!(sys.sinr(&[0, 1], 0) < 1.0);
    }

    #[test]
    fn link_distances_on_the_plane() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (0.0, 0.5), (1.0, 0.5), (99.0, 0.0), (100.0, 0.0)];
        let sys = planar(&pts, &[(0, 1), (2, 3), (4, 5)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        assert_eq!(sys.link_distance(&q, 0, 0), 0.0);
        assert_abs_diff_eq!(sys.link_distance(&q, 0, 1), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(sys.link_distance(&q, 0, 2), 98.0, epsilon = 1e-12);

        assert!(sys.check_separation(&q, 0, &[], 1.0));
        assert!(!sys.check_separation(&q, 0, &[1], 1.0));
        assert!(sys.set_separation(&q, &[0, 1], 1.0).is_err());
    }

    #[test]
    fn far_links_are_separated() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (99.0, 0.0), (100.0, 0.0)];
        let sys = planar(&pts, &[(0, 1), (2, 3)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        assert_abs_diff_eq!(sys.link_distance(&q, 0, 1), 98.0, epsilon = 1e-12);
        let pts = [(0.0, 0.0), (1.0, 0.0), (100.0, 0.0), (101.0, 0.0)];
        let sys = planar(&pts, &[(0, 1), (2, 3)], 2.0);
        let q = quasi_distances(sys.space(), 2.0, 1e-9).unwrap();
        assert_abs_diff_eq!(sys.link_distance(&q, 0, 1), 99.0, epsilon = 1e-12);
        assert!(sys.set_separation(&q, &[0, 1], 2.0).is_ok());
    }

    fn lengths(own: &[f64], powers: PowerAssignment) -> LinkSystem {
        let n = own.len();
        let space = DecaySpace::from_fn(SpaceMode::LinkGain, n, |i, j| {
            if i == j {
                own[i]
            } else {
                100.0
            }
        });
        LinkSystem::from_link_gain(space, SinrParams::default(), powers).unwrap()
    }

    #[test]
    fn monotone_power_examples() {
        let own = [4.0, 1.0, 2.0];
        assert!(lengths(&own, PowerAssignment::uniform(3.0)).is_monotone_power().monotone);
        let linear = PowerAssignment::Explicit { powers: own.to_vec() };
        assert!(lengths(&own, linear).is_monotone_power().monotone);

        let quad = PowerAssignment::Explicit { powers: vec![1.0, 16.0] };
        let m = lengths(&[1.0, 4.0], quad).is_monotone_power();
        assert!(!m.monotone);
        assert_eq!(m.witness, Some((0, 1)));
    }

    #[test]
    fn pairwise_product_test() {
        let sys = pair([1.0, 1.0], [1.0, 1.0], SinrParams::default());
        let v = sys.pairwise_power_infeasible(0, 1);
        assert!(!v.infeasible);
        assert_eq!(v.product, 1.0);
        let sys = pair([1.0, 1.0], [0.9, 0.9], SinrParams { beta: 1.0, noise: 0.01 });
        let v = sys.pairwise_power_infeasible(0, 1);
        assert!(v.infeasible && v.conservative);
    }

    #[test]
    fn interference_examples() {
        let s = DecaySpace::from_rows(SpaceMode::NodeSpace, vec![vec![0.0, 2.0], vec![2.0, 0.0]])
            .unwrap();
        assert_eq!(interference_at(&s, &[], 0, 1.0).unwrap(), 0.0);
        assert_eq!(interference_at(&s, &[1], 0, 3.0).unwrap(), 1.5);
        assert!(interference_at(&s, &[0], 0, 1.0).is_err());
    }

    #[test]
    fn rejects_malformed_systems() {
        let s = DecaySpace::from_rows(SpaceMode::NodeSpace, vec![vec![0.0, 2.0], vec![2.0, 0.0]])
            .unwrap();
        let p = PowerAssignment::uniform(1.0);
        let d = SinrParams::default();
        assert!(LinkSystem::new(s.clone(), vec![Link::new(0, 0)], d, p.clone()).is_err());
        assert!(LinkSystem::new(s.clone(), vec![Link::new(0, 2)], d, p.clone()).is_err());
        let low_beta = SinrParams { beta: 0.5, noise: 0.0 };
        assert!(LinkSystem::new(s.clone(), vec![Link::new(0, 1)], low_beta, p).is_err());
        let short = PowerAssignment::Explicit { powers: vec![] };
        assert!(LinkSystem::new(s, vec![Link::new(0, 1)], d, short).is_err());
    }

    #[test]
    fn system_json_layout() {
        let text = r#"{
            "space": {"mode":"node-space","n":3,"f":[[0,1,4],[1,0,1],[4,1,0]]},
            "links": [[0,1],[2,1]],
            "beta": 1.5, "noise": 0.0,
            "power": {"kind":"explicit","P":[1.0, 2.0]}
        }"#;
        let sys = LinkSystem::from_json_str(text).unwrap();
        assert_eq!(sys.links()[1], Link::new(2, 1));
        assert_eq!(sys.power(1), 2.0);
        let back = LinkSystem::from_json_str(&sys.to_json_string().unwrap()).unwrap();
        assert_eq!(back, sys);

        let gain = r#"{
            "space": {"mode":"link-gain","n":2,"f":[[1,3],[3,1]]},
            "beta": 1.0, "noise": 0.0, "power": {"kind":"uniform","P":2.0}
        }"#;
        let sys = LinkSystem::from_json_str(gain).unwrap();
        assert_eq!(sys.len(), 2);
        assert!(sys.is_link_gain());
    }
}
