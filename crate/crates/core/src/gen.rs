//! Seeded instance generators: partial k-trees, planted modulators and
//! planted H-tree decompositions, plus the named suites used by `bench`.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomp::{validate_htd, FamilyPredicate, Forest, HTreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::problem::Problem;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random `w`-tree on `n` vertices with every edge kept independently with
/// probability `keep`; labels are shuffled.
pub fn random_partial_ktree(n: usize, w: usize, keep: f64, seed: u64) -> Result<Graph> {
    partial_ktree_with(&mut rng(seed), n, w, keep)
}

pub fn partial_ktree_with(rng: &mut Rng64, n: usize, w: usize, keep: f64) -> Result<Graph> {
    if n < w + 1 {
        return Err(Error::Precondition(format!("a partial {w}-tree needs at least {} vertices, got {n}", w + 1)));
    }
    if !(0.0..=1.0).contains(&keep) {
        return Err(Error::Precondition(format!("edge keep probability must lie in [0, 1], got {keep}")));
    }
    let mut edges = Vec::new();
    if w > 0 {
        for u in 0..=w {
            for v in u + 1..=w {
                edges.push((u, v));
            }
        }
        let mut cliques: Vec<Vec<Vertex>> = (0..=w).map(|skip| (0..=w).filter(|&v| v != skip).collect()).collect();
        for v in w + 1..n {
            let c = cliques[rng.gen_range(0..cliques.len())].clone();
            for &u in &c {
                edges.push((u, v));
            }
            for i in 0..c.len() {
                let mut next = c.clone();
                next[i] = v;
                cliques.push(next);
            }
        }
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let kept: Vec<_> = edges
        .into_iter()
        .filter(|_| rng.gen_bool(keep))
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::from_edges(n, kept)
}

fn family_width(family: FamilyPredicate) -> usize {
    match family {
        FamilyPredicate::Edgeless => 0,
        FamilyPredicate::Forests => 1,
        FamilyPredicate::TwAtMost(w) => w,
    }
}

/// Member of `family` on `n` vertices drawn from a partial k-tree.
fn family_member(rng: &mut Rng64, family: FamilyPredicate, n: usize, keep: f64) -> Result<Graph> {
    if n == 0 {
        return Ok(Graph::empty(0));
    }
    let w = family_width(family).min(n - 1);
    partial_ktree_with(rng, n, w, keep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeShape {
    Star,
    Path,
    Random,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HtdSpec {
    pub leaves: usize,
    /// Size of every internal bag; leaf non-base parts have `1..=ell` vertices.
    pub ell: usize,
    pub family: FamilyPredicate,
    pub base_size: (usize, usize),
    pub internal: usize,
    pub shape: TreeShape,
    /// Probability of each edge inside an internal bag and between a base
    /// vertex and its leaf's `R_t`.
    pub density: f64,
    /// Edge keep probability for the base components.
    pub keep: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlantedTruth {
    pub width: usize,
    pub leaves: Vec<usize>,
    pub family: FamilyPredicate,
    pub non_base: VertexSet,
}

/// Graph with a valid H-tree decomposition of width at most `ell − 1`.
/// Internal bags take fresh vertices plus a random part of the parent bag,
/// so each vertex occupies a connected subtree; base vertices only see
/// their own leaf's `R_t`.
pub fn plant_htd_instance(spec: &HtdSpec, seed: u64) -> Result<(Graph, HTreeDecomposition, PlantedTruth)> {
    let (lo, hi) = spec.base_size;
    if spec.leaves == 0 || lo == 0 || lo > hi {
        return Err(Error::Precondition("spec needs at least one leaf and a base size range 1 ≤ lo ≤ hi".into()));
    }
    if !(0.0..=1.0).contains(&spec.density) || !(0.0..=1.0).contains(&spec.keep) {
        return Err(Error::Precondition("probabilities must lie in [0, 1]".into()));
    }
    let internal = if spec.leaves == 1 && spec.internal == 0 { 0 } else { spec.internal.max(1) };
    if spec.ell == 0 && internal > 1 {
        return Err(Error::Precondition("ℓ = 0 leaves no room for internal bags".into()));
    }
    let rng = &mut rng(seed);
    let mut n = 0;
    let mut fresh = |k: usize| -> Vec<Vertex> {
        let out = (n..n + k).collect();
        n += k;
        out
    };
    let mut edges = Vec::new();
    let mut parents: Vec<Option<usize>> = Vec::new();
    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    for i in 0..internal {
        let parent = match (i, spec.shape) {
            (0, _) => None,
            (_, TreeShape::Star) => Some(0),
            (_, TreeShape::Path) => Some(i - 1),
            (_, TreeShape::Random) => Some(rng.gen_range(0..i)),
        };
        let mut bag: Vec<Vertex> = match parent {
            Some(p) => bags[p].iter().copied().filter(|_| rng.gen_bool(0.5)).collect(),
            None => Vec::new(),
        };
        let missing = spec.ell - bag.len();
        bag.extend(fresh(missing));
        for a in 0..bag.len() {
            for b in a + 1..bag.len() {
                if rng.gen_bool(spec.density) {
                    edges.push((bag[a], bag[b]));
                }
            }
        }
        parents.push(parent);
        bags.push(bag);
    }
    let mut base = VertexSet::new();
    let mut leaf_nodes = Vec::new();
    for _ in 0..spec.leaves {
        let parent = if internal == 0 { None } else { Some(rng.gen_range(0..internal)) };
        let r: Vec<Vertex> = match parent {
            Some(p) if !bags[p].is_empty() => {
                let k = rng.gen_range(1..=bags[p].len());
                bags[p].choose_multiple(rng, k).copied().collect()
            }
            _ => Vec::new(),
        };
        let size = rng.gen_range(lo..=hi);
        let h = family_member(rng, spec.family, size, spec.keep)?;
        let hv = fresh(size);
        edges.extend(h.edges().map(|(a, b)| (hv[a], hv[b])));
        for &x in &r {
            let mut touched = false;
            for &y in &hv {
                if rng.gen_bool(spec.density) {
                    edges.push((x, y));
                    touched = true;
                }
            }
            if !touched {
                edges.push((x, *hv.choose(rng).expect("nonempty leaf")));
            }
        }
        base.extend(hv.iter().copied());
        leaf_nodes.push(parents.len());
        parents.push(parent);
        bags.push(r.into_iter().chain(hv).collect());
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::from_edges(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b])))?;
    let relabel = |s: &mut dyn Iterator<Item = Vertex>| -> VertexSet { s.map(|v| perm[v]).collect() };
    let d = HTreeDecomposition {
        tree: Forest::from_parents(parents)?,
        bags: bags.iter().map(|b| relabel(&mut b.iter().copied())).collect(),
        base: relabel(&mut base.iter().copied()),
        family: spec.family,
    };
    validate_htd(&g, &d).map_err(|v| Error::Internal(format!("planted decomposition invalid: {v}")))?;
    let truth = PlantedTruth {
        width: d.width(),
        leaves: leaf_nodes,
        family: spec.family,
        non_base: g.vertices().filter(|v| !d.base.contains(v)).collect(),
    };
    Ok((g, d, truth))
}

#[derive(Clone, Debug, PartialEq)]
pub enum BaseSpec {
    Fixed {
        graph: Graph,
        family: FamilyPredicate,
    },
    /// `total` base vertices split into components of at most
    /// `max_component` vertices.
    Random {
        family: FamilyPredicate,
        total: usize,
        max_component: usize,
        keep: f64,
    },
}

impl BaseSpec {
    pub fn family(&self) -> FamilyPredicate {
        match self {
            BaseSpec::Fixed { family, .. } | BaseSpec::Random { family, .. } => *family,
        }
    }
}

/// Base graph plus `p` modulator vertices (labelled last), each edge from a
/// modulator vertex present with probability `attach`.
pub fn plant_modulator_instance(base: &BaseSpec, p: usize, attach: f64, seed: u64) -> Result<(Graph, VertexSet)> {
    if !(0.0..=1.0).contains(&attach) {
        return Err(Error::Precondition(format!("attach density must lie in [0, 1], got {attach}")));
    }
    let rng = &mut rng(seed);
    let b = match base {
        BaseSpec::Fixed { graph, .. } => graph.clone(),
        BaseSpec::Random {
            family,
            total,
            max_component,
            keep,
        } => {
            let mut g = Graph::empty(0);
            let mut left = *total;
            while left > 0 {
                let size = rng.gen_range(1..=left.min((*max_component).max(1)));
                g = g.disjoint_union(&family_member(rng, *family, size, *keep)?);
                left -= size;
            }
            g
        }
    };
    let n = b.n();
    let mut edges: Vec<_> = b.edges().collect();
    for m in n..n + p {
        for v in 0..m {
            if rng.gen_bool(attach) {
                edges.push((v, m));
            }
        }
    }
    Ok((Graph::from_edges(n + p, edges)?, (n..n + p).collect()))
}

/// Adds edges so the graph becomes connected, joining each further
/// component to a modulator vertex already reached (or any reached vertex).
pub fn connect_through(g: &Graph, m: &VertexSet, rng: &mut Rng64) -> Result<Graph> {
    let comps = g.components();
    let mut edges: Vec<_> = g.edges().collect();
    let mut joined = comps[0].clone();
    for c in comps.iter().skip(1) {
        let v = *c.iter().nth(rng.gen_range(0..c.len())).expect("nonempty");
        let mut choices: Vec<Vertex> = joined.intersection(m).copied().collect();
        if choices.is_empty() {
            choices = joined.iter().copied().collect();
        }
        edges.push((*choices.choose(rng).expect("anchor"), v));
        joined.extend(c.iter().copied());
    }
    Graph::from_edges(g.n(), edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Param {
    Mod,
    Twh,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::Mod => "mod",
            Param::Twh => "twh",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Planted {
    Modulator {
        m: VertexSet,
        family: FamilyPredicate,
    },
    Htd(HTreeDecomposition),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub spec: String,
    pub seed: u64,
    pub problem: Problem,
    pub param: Param,
    pub graph: Graph,
    pub planted: Planted,
}

/// Names accepted by [`generate`].
pub const SUITES: &[&str] = &[
    "vc-mod",
    "fvs-mod",
    "cycle-pack-mod",
    "ds-mod",
    "cvc-mod",
    "vc-twh",
    "fvs-twh",
    "is-twh",
    "cycle-pack-twh",
    "ds-twh",
    "ds-twh-large",
];

fn modulator_suite(rng: &mut Rng64, family: FamilyPredicate, n_max: usize, p_max: usize, max_component: usize) -> (BaseSpec, usize, f64) {
    let p = rng.gen_range(0..=p_max);
    let total = rng.gen_range((n_max / 2).max(1)..=n_max - p);
    let base = BaseSpec::Random {
        family,
        total,
        max_component,
        keep: rng.gen_range(0.6..=1.0),
    };
    (base, p, rng.gen_range(0.15..=0.6))
}

fn htd_suite(rng: &mut Rng64, family: FamilyPredicate, n_max: usize, base_hi: usize) -> HtdSpec {
    let ell = rng.gen_range(1..=3);
    let internal = rng.gen_range(1..=2);
    let leaves = rng.gen_range(1..=4);
    let budget = (n_max - ell * internal) / leaves;
    let hi = base_hi.min(budget).max(1);
    HtdSpec {
        leaves,
        ell,
        family,
        base_size: (1.max(hi / 2), hi),
        internal,
        shape: [TreeShape::Star, TreeShape::Path, TreeShape::Random][rng.gen_range(0..3)],
        density: rng.gen_range(0.2..=0.7),
        keep: rng.gen_range(0.7..=1.0),
    }
}

/// Instance of the named suite for `seed`.
pub fn generate(spec: &str, seed: u64) -> Result<Instance> {
    let rng = &mut rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let sub = rng.gen::<u64>();
    let (problem, param) = match spec {
        "vc-mod" | "vc-twh" => (Problem::VertexCover, spec.ends_with("twh")),
        "fvs-mod" | "fvs-twh" => (Problem::FeedbackVertexSet, spec.ends_with("twh")),
        "is-twh" => (Problem::IndependentSet, true),
        "cycle-pack-mod" | "cycle-pack-twh" => (Problem::CyclePacking, spec.ends_with("twh")),
        "ds-mod" | "ds-twh" | "ds-twh-large" => (Problem::dominating_set(), spec != "ds-mod"),
        "cvc-mod" => (Problem::ConnectedVertexCover, false),
        _ => return Err(Error::Input(format!("unknown suite '{spec}'; known: {}", SUITES.join(", ")))),
    };
    let (graph, planted) = match spec {
        "vc-mod" | "fvs-mod" | "cycle-pack-mod" | "ds-mod" | "cvc-mod" => {
            let (family, n_max) = match spec {
                "vc-mod" | "ds-mod" => (FamilyPredicate::Forests, 20),
                "fvs-mod" => (FamilyPredicate::TwAtMost(2), 20),
                "cycle-pack-mod" => (FamilyPredicate::TwAtMost(2), 14),
                _ => (FamilyPredicate::Forests, 16),
            };
            let (base, p, attach) = modulator_suite(rng, family, n_max, 5, 8);
            let (mut g, m) = plant_modulator_instance(&base, p, attach, sub)?;
            if spec == "cvc-mod" {
                g = connect_through(&g, &m, rng)?;
            }
            (g, Planted::Modulator { m, family })
        }
        "ds-twh-large" => {
            let spec = HtdSpec {
                leaves: rng.gen_range(1..=3),
                ell: 1,
                family: FamilyPredicate::Forests,
                base_size: (60, 200),
                internal: 1,
                shape: TreeShape::Star,
                density: 0.02,
                keep: 1.0,
            };
            let (g, d, _) = plant_htd_instance(&spec, sub)?;
            (g, Planted::Htd(d))
        }
        _ => {
            let (family, n_max, base_hi) = match spec {
                "vc-twh" | "ds-twh" => (FamilyPredicate::Forests, 22, 8),
                "fvs-twh" | "is-twh" => (FamilyPredicate::TwAtMost(2), 22, 8),
                _ => (FamilyPredicate::TwAtMost(2), 14, 6),
            };
            let hs = htd_suite(rng, family, n_max, base_hi);
            let (g, d, _) = plant_htd_instance(&hs, sub)?;
            (g, Planted::Htd(d))
        }
    };
    Ok(Instance {
        spec: spec.to_string(),
        seed,
        problem,
        param: if param { Param::Twh } else { Param::Mod },
        graph,
        planted,
    })
}

/// Manifest line `inst <seed> <specName>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub seed: u64,
    pub spec: String,
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            ["inst", seed, spec] => out.push(ManifestEntry {
                seed: seed
                    .parse()
                    .map_err(|_| Error::Input(format!("manifest line {}: bad seed '{seed}'", i + 1)))?,
                spec: spec.to_string(),
            }),
            _ => return Err(Error::Input(format!("manifest line {}: expected 'inst <seed> <spec>'", i + 1))),
        }
    }
    Ok(out)
}

pub fn write_manifest(entries: &[ManifestEntry]) -> String {
    entries.iter().map(|e| format!("inst {} {}\n", e.seed, e.spec)).collect()
}
