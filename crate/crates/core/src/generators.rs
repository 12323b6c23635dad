//! Instance families: planar path-loss spaces, the star and Welzl spaces,
//! graph reductions and the three-point space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::link::{Link, LinkSystem, PowerAssignment, SinrParams};
use crate::space::{DecaySpace, SpaceMode};

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct Graph {
    n: usize,
    edges: Vec<[usize; 2]>,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(g: GraphFile) -> Result<Self> {
        Graph::new(g.n, g.edges)
    }
}

impl From<Graph> for GraphFile {
    fn from(g: Graph) -> Self {
        GraphFile { n: g.n, edges: g.edges }
    }
}

/// Largest vertex count a [`Graph`] accepts.
pub const MAX_GRAPH_VERTICES: usize = 64;

impl Graph {
    /// Normalizes edges to `[min, max]`, sorted and deduplicated.
    pub fn new(n: usize, edges: impl IntoIterator<Item = [usize; 2]>) -> Result<Self> {
        if n > MAX_GRAPH_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "graphs are limited to {MAX_GRAPH_VERTICES} vertices, got {n}"
            )));
        }
        let mut list = Vec::new();
        let mut adj = vec![0u64; n];
        for [a, b] in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameter(format!("edge [{a}, {b}] out of range for {n} vertices")));
            }
            if a == b {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {a}")));
            }
            list.push([a.min(b), a.max(b)]);
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        list.sort_unstable();
        list.dedup();
        Ok(Self { n, edges: list, adj })
    }

    /// Erdos-Renyi graph `G(n, p)`.
    pub fn random(n: usize, p: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("edge probability {p} outside [0, 1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    edges.push([a, b]);
                }
            }
        }
        Self::new(n, edges)
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| [a, b]));
        Self::new(n, edges).expect("complete graph is simple")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &a)| set[i + 1..].iter().all(|&b| !self.has_edge(a, b)))
    }
}

/// Planar point set with decays `f(p, q) = |p - q|^alpha`.
pub fn gen_euclidean(points: &[[f64; 2]], alpha: f64) -> Result<DecaySpace> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must be at least 1")));
    }
    let space = DecaySpace::from_fn(SpaceMode::NodeSpace, points.len(), |p, q| {
        let [x0, y0] = points[p];
        let [x1, y1] = points[q];
        (x0 - x1).hypot(y0 - y1).powf(alpha)
    });
    space.ensure_valid()?;
    Ok(space)
}

/// Side of the square random clouds are drawn from.
pub const CLOUD_SIDE: f64 = 10.0;

/// `n` uniform points in a square. With `planted`, points 0, 1 and 2 are
/// collinear with point 1 strictly between the others.
pub fn random_cloud(n: usize, planted: bool, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.gen::<f64>() * CLOUD_SIDE, rng.gen::<f64>() * CLOUD_SIDE])
        .collect();
    if planted && n >= 3 {
        let lambda = rng.gen_range(0.25..0.75);
        let [a, c] = [pts[0], pts[2]];
        pts[1] = [a[0] + lambda * (c[0] - a[0]), a[1] + lambda * (c[1] - a[1])];
    }
    pts
}

/// Star metric: node 0 is `x_-1`, node 1 the center `x_0`, nodes `2..k+2`
/// the leaves. Edge lengths are `r` for `x_-1 x_0` and `k^2` for each leaf;
/// decays are shortest-path distances.
pub fn gen_star(k: usize, r: f64) -> Result<DecaySpace> {
    if k == 0 {
        return Err(Error::InvalidParameter("star needs at least one leaf".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!("r = {r} must be positive")));
    }
    let leaf = (k * k) as f64;
    // Depth from the center along the unique path.
    let depth = |p: usize| match p {
        0 => r,
        1 => 0.0,
        _ => leaf,
    };
    Ok(DecaySpace::from_fn(SpaceMode::NodeSpace, k + 2, |p, q| {
        if p == q {
            0.0
        } else {
            depth(p) + depth(q)
        }
    }))
}

/// Welzl's space: node 0 is `v_-1`, node `i + 1` is `v_i` for `i in 0..=n`.
/// `d(v_-1, v_i) = 2^i - eps` and `d(v_j, v_i) = 2^max(i, j)`.
pub fn gen_welzl(n: usize, eps: f64) -> Result<DecaySpace> {
    if n == 0 {
        return Err(Error::InvalidParameter("welzl needs n >= 1".into()));
    }
    if !(eps > 0.0 && eps <= 0.25) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must lie in (0, 1/4]")));
    }
    let pow = |i: usize| 2f64.powi(i as i32);
    Ok(DecaySpace::from_fn(SpaceMode::NodeSpace, n + 2, |p, q| match (p, q) {
        _ if p == q => 0.0,
        (0, v) | (v, 0) => pow(v - 1) - eps,
        _ => pow(p.max(q) - 1),
    }))
}

/// Link-gain system with one unit-decay link per vertex. Adjacent links see
/// each other at decay `1/2` (affectance 2); non-adjacent ones at decay `n`
/// (affectance `1/n`). Feasible sets are exactly the independent sets.
pub fn gen_equidecay_graph(graph: &Graph) -> Result<LinkSystem> {
    let n = graph.len();
    let far = n as f64;
    let space = DecaySpace::from_fn(SpaceMode::LinkGain, n, |w, v| {
        if w == v {
            1.0
        } else if graph.has_edge(w, v) {
            0.5
        } else {
            far
        }
    });
    LinkSystem::from_link_gain(space, SinrParams::default(), PowerAssignment::uniform(1.0))
}

/// Two parallel lines: senders `s_i = (0, i)` are nodes `0..n`, receivers
/// `r_i = (n, i)` are nodes `n..2n`, and link `i` is `(s_i, r_i)`.
///
/// Within a line `f = d^(alpha - 1)`. Across lines `f(s_i, r_j)` is
/// `n^(alpha-1)` for `i = j`, `n^(alpha-1) - delta` for an edge and
/// `n^alpha` otherwise, completed symmetrically.
pub fn gen_twoline(graph: &Graph, alpha: f64, delta: f64) -> Result<(DecaySpace, LinkSystem)> {
    if !(alpha >= 1.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} must be at least 1")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must lie in (0, 1/2)")));
    }
    let n = graph.len();
    let a1 = alpha - 1.0;
    let nf = n as f64;
    let base = nf.powf(a1);
    let space = DecaySpace::from_fn(SpaceMode::NodeSpace, 2 * n, |p, q| {
        let (lp, ip) = (p / n.max(1), p % n.max(1));
        let (lq, iq) = (q / n.max(1), q % n.max(1));
        if p == q {
            0.0
        } else if lp == lq {
            (ip.abs_diff(iq) as f64).powf(a1)
        } else if ip == iq {
            base
        } else if graph.has_edge(ip, iq) {
            base - delta
        } else {
            base * nf
        }
    });
    let links = (0..n).map(|i| Link::new(i, n + i)).collect();
    let sys = LinkSystem::new(space.clone(), links, SinrParams::default(), PowerAssignment::uniform(1.0))?;
    Ok((space, sys))
}

/// Three nodes `a, b, c` with `f_ab = 1`, `f_bc = q`, `f_ac = 2q`.
pub fn gen_threepoint(q: f64) -> Result<DecaySpace> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("q = {q} must exceed 1")));
    }
    let rows = vec![
        vec![0.0, 1.0, 2.0 * q],
        vec![1.0, 0.0, q],
        vec![2.0 * q, q, 0.0],
    ];
    DecaySpace::from_rows(SpaceMode::NodeSpace, rows)?
        .with_labels(vec!["a".into(), "b".into(), "c".into()])
}

/// Source of the points of a Euclidean instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSource {
    Explicit { points: Vec<[f64; 2]> },
    Random { n: usize, #[serde(default)] planted: bool },
}

/// A generator family together with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum Family {
    Euclidean {
        #[serde(flatten)]
        points: PointSource,
        alpha: f64,
    },
    Star {
        k: usize,
        r: f64,
    },
    Welzl {
        n: usize,
        eps: f64,
    },
    EquidecayGraph {
        graph: Graph,
    },
    Twoline {
        graph: Graph,
        alpha: f64,
        delta: f64,
    },
    Threepoint {
        q: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Output of a generator: a bare space or a full link system.
#[derive(Clone, Debug, PartialEq)]
pub enum Generated {
    Space(DecaySpace),
    System(LinkSystem),
}

impl Generated {
    pub fn space(&self) -> &DecaySpace {
        match self {
            Generated::Space(s) => s,
            Generated::System(sys) => sys.space(),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        match self {
            Generated::Space(s) => s.to_json_string(),
            Generated::System(sys) => sys.to_json_string(),
        }
    }
}

impl GeneratorSpec {
    /// Builds a generator request from a family name and a JSON parameter record.
    pub fn from_parts(family: &str, params: serde_json::Value, seed: Option<u64>) -> Result<Self> {
        let tagged = serde_json::json!({ "family": family, "params": params });
        let family = serde_json::from_value(tagged)?;
        Ok(Self { family, seed })
    }

    pub fn generate(&self) -> Result<Generated> {
        Ok(match &self.family {
            Family::Euclidean { points, alpha } => {
                let pts = match points {
                    PointSource::Explicit { points } => points.clone(),
                    PointSource::Random { n, planted } => {
                        random_cloud(*n, *planted, self.seed.unwrap_or(0))
                    }
                };
                Generated::Space(gen_euclidean(&pts, *alpha)?)
            }
            Family::Star { k, r } => Generated::Space(gen_star(*k, *r)?),
            Family::Welzl { n, eps } => Generated::Space(gen_welzl(*n, *eps)?),
            Family::EquidecayGraph { graph } => Generated::System(gen_equidecay_graph(graph)?),
            Family::Twoline { graph, alpha, delta } => {
                Generated::System(gen_twoline(graph, *alpha, *delta)?.1)
            }
            Family::Threepoint { q } => Generated::Space(gen_threepoint(*q)?),
        })
    }
}
