//! Invariant suites over a corpus of spaces and link systems.

use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use decayspace::analysis::{
    fading_parameter, half_radius_cover, is_independent, packing_number, SeparationUnits,
    DEFAULT_EXACT_LIMIT,
};
use decayspace::capacity::{
    capacity_oracle, capacity_uniform, check_onezetasep, signal_strengthen, OneZetaSep, E_SQUARED,
};
use decayspace::generators::{
    gen_equidecay_graph, gen_euclidean, gen_star, gen_threepoint, gen_twoline, gen_welzl,
    random_cloud, Graph,
};
use decayspace::link::interference_at;
use decayspace::metricity::{compute_phi, compute_zeta, quasi_distances, zeta_upper_bound};
use decayspace::{DecaySpace, Link, LinkSystem, PowerAssignment, QuasiMetric, SinrParams};

use crate::{Verdict, VerifyArgs};

/// Largest link count for which the exhaustive optimum is computed.
const ORACLE_LIMIT: usize = 14;

/// Family-specific facts an item is checked against.
#[derive(Clone, Debug)]
pub enum Hint {
    None,
    Euclidean { alpha: f64, planted: bool },
    Threepoint,
    Star { k: usize, r: f64 },
    Welzl { n: usize, eps: f64 },
    Equidecay(Graph),
    Twoline(Graph),
}

#[derive(Clone, Debug)]
pub enum ItemData {
    Space(DecaySpace),
    System(LinkSystem),
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub name: String,
    pub data: ItemData,
    pub hint: Hint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusItemReport {
    pub name: String,
    pub kind: String,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub corpus: String,
    pub seed: u64,
    pub items: Vec<CorpusItemReport>,
    pub checks: usize,
    pub failed: usize,
}

impl VerifyReport {
    /// One verdict per item, carrying the failed invariants as witness.
    pub fn failures(&self) -> Vec<Verdict> {
        self.items
            .iter()
            .map(|item| {
                let failed: Vec<String> = item
                    .verdicts
                    .iter()
                    .filter(|v| !v.passed)
                    .map(|v| format!("{}: {}", v.invariant, v.witness.as_deref().unwrap_or("")))
                    .collect();
                Verdict::new(&format!("corpus.{}", item.name), failed.is_empty(), || failed.join("; "))
            })
            .collect()
    }
}

pub fn run_verify(a: &VerifyArgs) -> anyhow::Result<VerifyReport> {
    if !(a.tol > 0.0 && a.tol < 1.0) {
        bail!("tolerance {} must lie in (0, 1)", a.tol);
    }
    let mut items = if a.corpus == "builtin" {
        builtin_corpus(a.seed)?
    } else {
        file_corpus(Path::new(&a.corpus))?
    };
    items.sort_by(|x, y| x.name.cmp(&y.name));
    let reports: Vec<CorpusItemReport> = items
        .iter()
        .map(|item| CorpusItemReport {
            name: item.name.clone(),
            kind: match item.data {
                ItemData::Space(_) => "space".into(),
                ItemData::System(_) => "system".into(),
            },
            verdicts: check_item(item, a.tol),
        })
        .collect();
    let checks = reports.iter().map(|r| r.verdicts.len()).sum();
    let failed = reports
        .iter()
        .flat_map(|r| &r.verdicts)
        .filter(|v| !v.passed)
        .count();
    Ok(VerifyReport {
        corpus: a.corpus.clone(),
        seed: a.seed,
        items: reports,
        checks,
        failed,
    })
}

/// Planar links: senders uniform in a square, receivers at a random
/// direction and length in `[0.5, 2]`.
pub fn random_planar_links(links: usize, side: f64, seed: u64) -> Vec<[f64; 2]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(2 * links);
    for _ in 0..links {
        let s = [rng.gen::<f64>() * side, rng.gen::<f64>() * side];
        let len = rng.gen_range(0.5..2.0);
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        pts.push(s);
        pts.push([s[0] + len * theta.cos(), s[1] + len * theta.sin()]);
    }
    pts
}

/// Uniform-power system whose link `i` joins points `2i` and `2i + 1`.
pub fn planar_system(points: &[[f64; 2]], alpha: f64) -> decayspace::Result<LinkSystem> {
    let space = gen_euclidean(points, alpha)?;
    let links = (0..points.len() / 2).map(|i| Link::new(2 * i, 2 * i + 1)).collect();
    LinkSystem::new(space, links, SinrParams::default(), PowerAssignment::uniform(1.0))
}

/// Deterministic corpus covering every generator family.
pub fn builtin_corpus(seed: u64) -> anyhow::Result<Vec<CorpusItem>> {
    let mut items = Vec::new();
    let mut push = |name: String, data: ItemData, hint: Hint| items.push(CorpusItem { name, data, hint });
    for alpha in [2.0, 3.0] {
        for i in 0..3u64 {
            let pts = random_cloud(20, true, seed.wrapping_add(100 * alpha as u64 + i));
            push(
                format!("euclidean-a{alpha}-{i:02}"),
                ItemData::Space(gen_euclidean(&pts, alpha)?),
                Hint::Euclidean { alpha, planted: true },
            );
        }
    }
    for q in [16.0, 65536.0] {
        push(format!("threepoint-q{q}"), ItemData::Space(gen_threepoint(q)?), Hint::Threepoint);
    }
    for k in [4, 16] {
        push(format!("star-k{k:02}"), ItemData::Space(gen_star(k, 1.0)?), Hint::Star { k, r: 1.0 });
    }
    for n in [4, 6] {
        push(format!("welzl-n{n}"), ItemData::Space(gen_welzl(n, 0.25)?), Hint::Welzl { n, eps: 0.25 });
    }
    let fixed = [
        ("equidecay-k3", Graph::complete(3)),
        ("equidecay-p3", Graph::new(3, [[0, 1], [1, 2]])?),
        ("equidecay-empty5", Graph::new(5, [])?),
    ];
    for (name, g) in fixed {
        push(name.into(), ItemData::System(gen_equidecay_graph(&g)?), Hint::Equidecay(g));
    }
    for i in 0..3u64 {
        let g = Graph::random(9, 0.35, seed.wrapping_add(200 + i))?;
        push(format!("equidecay-random-{i:02}"), ItemData::System(gen_equidecay_graph(&g)?), Hint::Equidecay(g));
    }
    for i in 0..2u64 {
        let g = Graph::random(7, 0.4, seed.wrapping_add(300 + i))?;
        let (_, sys) = gen_twoline(&g, 2.0, 0.25)?;
        push(format!("twoline-random-{i:02}"), ItemData::System(sys), Hint::Twoline(g));
    }
    for alpha in [2.0, 3.0] {
        for i in 0..3u64 {
            let pts = random_planar_links(12, 12.0, seed.wrapping_add(400 + 10 * alpha as u64 + i));
            push(format!("planar-links-a{alpha}-{i:02}"), ItemData::System(planar_system(&pts, alpha)?), Hint::None);
        }
    }
    Ok(items)
}

/// Every `.json` or `.csv` file under `path` (or `path` itself). JSON files
/// with a `space` key are link systems.
fn file_corpus(path: &Path) -> anyhow::Result<Vec<CorpusItem>> {
    let files: Vec<std::path::PathBuf> = if path.is_dir() {
        let mut v: Vec<_> = std::fs::read_dir(path)
            .with_context(|| format!("listing {}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "csv")))
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    let mut items = Vec::new();
    for file in files {
        let name = file.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let is_system = file.extension().and_then(|e| e.to_str()) == Some("json") && {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let v: serde_json::Value =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
            v.get("space").is_some()
        };
        let data = if is_system {
            ItemData::System(LinkSystem::load(&file).with_context(|| format!("reading {}", file.display()))?)
        } else {
            ItemData::Space(DecaySpace::load(&file).with_context(|| format!("reading {}", file.display()))?)
        };
        items.push(CorpusItem {
            name,
            data,
            hint: Hint::None,
        });
    }
    Ok(items)
}

fn check_item(item: &CorpusItem, tol: f64) -> Vec<Verdict> {
    let mut out = Vec::new();
    match &item.data {
        ItemData::Space(space) => space_suite(space, &item.hint, tol, &mut out),
        ItemData::System(sys) => system_suite(sys, &item.hint, tol, &mut out),
    }
    out
}

fn error_verdict(invariant: &str, e: impl std::fmt::Display) -> Verdict {
    Verdict {
        invariant: invariant.into(),
        passed: false,
        witness: Some(e.to_string()),
    }
}

fn space_suite(space: &DecaySpace, hint: &Hint, tol: f64, out: &mut Vec<Verdict>) {
    let validation = space.validate();
    out.push(Verdict::new("space.axioms", validation.is_ok(), || {
        validation.violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
    }));
    if !validation.is_ok() {
        return;
    }
    let zeta = match compute_zeta(space, tol) {
        Ok(z) => z,
        Err(e) => return out.push(error_verdict("metricity.zeta", e)),
    };
    let quasi = quasi_distances(space, zeta.zeta, 10.0 * tol);
    out.push(Verdict::new("metricity.quasi-triangle", quasi.is_ok(), || {
        quasi.as_ref().err().map(ToString::to_string).unwrap_or_default()
    }));
    if space.len() >= 2 {
        if let Ok(bound) = zeta_upper_bound(space) {
            out.push(Verdict::new(
                "metricity.trivial-bound",
                bound < 1.0 || zeta.zeta_raw <= bound + tol,
                || format!("zeta_raw = {} above lg(max/min) = {bound}", zeta.zeta_raw),
            ));
        }
    }

    // Packing numbers of the whole space never grow with the radius.
    let body: Vec<usize> = (0..space.len()).collect();
    let mut radii: Vec<f64> = space.off_diagonal().map(|v| v / 2.0).collect();
    radii.sort_by(f64::total_cmp);
    radii.dedup();
    let counts: Vec<usize> = radii
        .iter()
        .map(|&t| packing_number(space, &body, t, DEFAULT_EXACT_LIMIT).count)
        .collect();
    let bad = counts.windows(2).position(|w| w[1] > w[0]);
    out.push(Verdict::new("packing.monotone-in-radius", bad.is_none(), || {
        let i = bad.unwrap_or(0);
        format!("count rises from {} to {} between t = {} and {}", counts[i], counts[i + 1], radii[i], radii[i + 1])
    }));

    // Fading witnesses re-verify as separated at the median decay.
    let mut decays: Vec<f64> = space.off_diagonal().collect();
    decays.sort_by(f64::total_cmp);
    if let Some(&r) = decays.get(decays.len() / 2) {
        match fading_parameter(space, r, DEFAULT_EXACT_LIMIT, SeparationUnits::Decay, None) {
            Ok(f) => {
                let sep = |a: usize, b: usize| space.decay(a, b).min(space.decay(b, a));
                let ok = f.witness_node.map_or(f.witness_set.is_empty(), |z| {
                    f.witness_set.iter().enumerate().all(|(i, &x)| {
                        sep(x, z) >= r && f.witness_set[i + 1..].iter().all(|&y| sep(x, y) >= r)
                    })
                });
                let max_ok = f.per_node.iter().all(|&g| g <= f.gamma);
                out.push(Verdict::new("fading.witness-separated", ok && max_ok, || {
                    format!("witness {:?} around {:?} at r = {r}", f.witness_set, f.witness_node)
                }));
            }
            Err(e) => out.push(error_verdict("fading.witness-separated", e)),
        }
    }

    match hint {
        Hint::Euclidean { alpha, planted } => {
            out.push(Verdict::new("euclidean.zeta-at-most-alpha", zeta.zeta_raw <= alpha + 1e-6, || {
                format!("zeta = {} above alpha = {alpha}", zeta.zeta_raw)
            }));
            if *planted {
                out.push(Verdict::new("euclidean.collinear-tight", (zeta.zeta - alpha).abs() <= 1e-6, || {
                    format!("zeta = {} differs from alpha = {alpha}", zeta.zeta)
                }));
            }
        }
        Hint::Threepoint => match compute_phi(space) {
            Ok(phi) => out.push(Verdict::new("threepoint.phi-below-two", phi.phi_mult < 2.0, || {
                format!("phi_mult = {}", phi.phi_mult)
            })),
            Err(e) => out.push(error_verdict("threepoint.phi-below-two", e)),
        },
        Hint::Star { k, r } => {
            let leaves: Vec<usize> = (2..k + 2).collect();
            let expected = *k as f64 / ((k * k) as f64 + r);
            match interference_at(space, &leaves, 0, 1.0) {
                Ok(i) => out.push(Verdict::new("star.leaf-interference", (i - expected).abs() <= 1e-12, || {
                    format!("interference {i}, expected {expected}")
                })),
                Err(e) => out.push(error_verdict("star.leaf-interference", e)),
            }
        }
        Hint::Welzl { n, eps } => {
            let q = QuasiMetric::new_unchecked(space, 1.0);
            let others: Vec<usize> = (1..space.len()).collect();
            out.push(Verdict::new("welzl.independent-from-v-1", is_independent(&q, 0, &others), || {
                "V minus v_-1 is not independent w.r.t. v_-1".into()
            }));
            let radii: Vec<f64> = (0..=*n as i32).flat_map(|i| [2f64.powi(i), 2f64.powi(i) - eps]).collect();
            let mut failure = None;
            'outer: for y in 0..space.len() {
                for &t in &radii {
                    if half_radius_cover(space, y, t).is_none() {
                        failure = Some((y, t));
                        break 'outer;
                    }
                }
            }
            out.push(Verdict::new("welzl.half-radius-cover", failure.is_none(), || {
                format!("ball around {:?}", failure)
            }));
        }
        _ => {}
    }
}

fn system_suite(sys: &LinkSystem, hint: &Hint, tol: f64, out: &mut Vec<Verdict>) {
    let zeta = match compute_zeta(sys.space(), tol) {
        Ok(z) => z.zeta,
        Err(e) => return out.push(error_verdict("metricity.zeta", e)),
    };
    let cap = match capacity_uniform(sys, zeta) {
        Ok(c) => c,
        Err(e) => return out.push(error_verdict("capacity.run", e)),
    };
    let feas = sys.is_feasible(&cap.selected, 1.0);
    out.push(Verdict::new("capacity.selected-feasible", feas.feasible, || {
        format!("link {:?} has in-affectance {}", feas.worst_link, feas.worst_affectance)
    }));
    out.push(Verdict::new(
        "capacity.half-of-intermediate",
        2 * cap.selected.len() >= cap.intermediate.len(),
        || format!("|S| = {}, |X| = {}", cap.selected.len(), cap.intermediate.len()),
    ));
    out.push(Verdict::new(
        "capacity.selected-within-intermediate",
        cap.selected.iter().all(|v| cap.intermediate.contains(v)),
        || format!("S = {:?}, X = {:?}", cap.selected, cap.intermediate),
    ));
    let shrunk = (0..cap.selected.len()).find(|&i| {
        let mut sub = cap.selected.clone();
        sub.remove(i);
        !sys.is_feasible(&sub, 1.0).feasible
    });
    out.push(Verdict::new("link.feasibility-subset-monotone", shrunk.is_none(), || {
        format!("removing link {:?} breaks feasibility", shrunk.map(|i| cap.selected[i]))
    }));

    let mut opt = None;
    if sys.len() <= ORACLE_LIMIT {
        match capacity_oracle(sys, ORACLE_LIMIT) {
            Ok(o) => {
                out.push(Verdict::new("capacity.ratio-at-least-one", cap.selected.len() <= o.size, || {
                    format!("|S| = {} above optimum {}", cap.selected.len(), o.size)
                }));
                out.push(Verdict::new(
                    "capacity.nonempty-when-opt-positive",
                    o.size == 0 || !cap.selected.is_empty(),
                    || format!("optimum {} but nothing selected", o.size),
                ));
                opt = Some(o.size);
            }
            Err(e) => out.push(error_verdict("capacity.oracle", e)),
        }
    }

    match signal_strengthen(sys, &cap.selected, 1.0, 3.0) {
        Ok(p) => out.push(Verdict::new(
            "partition.signal-classes",
            p.covers(&cap.selected) && p.len() <= p.bound && p.verify(sys, None),
            || format!("{} classes, bound {}", p.len(), p.bound),
        )),
        Err(e) => out.push(error_verdict("partition.signal-classes", e)),
    }

    if !sys.is_link_gain() {
        let quasi = QuasiMetric::new_unchecked(sys.space(), zeta);
        let k = E_SQUARED / sys.params().beta;
        let mut thin: Vec<usize> = Vec::new();
        for &v in sys.order() {
            thin.push(v);
            if !sys.is_feasible(&thin, k).feasible {
                thin.pop();
            }
        }
        match check_onezetasep(sys, &quasi, zeta, &thin) {
            Ok(outcome) => out.push(Verdict::new(
                "partition.onezetasep",
                matches!(outcome, OneZetaSep::Ok),
                || format!("{outcome:?}"),
            )),
            Err(e) => out.push(error_verdict("partition.onezetasep", e)),
        }
    }

    match hint {
        Hint::Equidecay(g) => {
            let mis = brute_force_mis(g);
            out.push(Verdict::new("equidecay.oracle-equals-mis", opt == Some(mis), || {
                format!("oracle {opt:?}, independence number {mis}")
            }));
        }
        Hint::Twoline(g) => {
            let n = g.len();
            let mut mismatch = None;
            for mask in 0u32..1 << n {
                let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                if sys.is_feasible(&set, 1.0).feasible != g.is_independent(&set) {
                    mismatch = Some(set);
                    break;
                }
            }
            out.push(Verdict::new("twoline.feasible-iff-independent", mismatch.is_none(), || {
                format!("set {mismatch:?}")
            }));
            let bad = g.edges().iter().find(|[a, b]| !sys.pairwise_power_infeasible(*a, *b).infeasible);
            out.push(Verdict::new("twoline.edges-pairwise-infeasible", bad.is_none(), || {
                format!("edge {bad:?}")
            }));
        }
        _ => {}
    }
}

/// Independence number by subset enumeration.
pub fn brute_force_mis(g: &Graph) -> usize {
    let n = g.len();
    (0u64..1 << n)
        .filter(|&mask| {
            let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            g.is_independent(&set)
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}
