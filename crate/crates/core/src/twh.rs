//! Schemes over H-tree decompositions. Every leaf is solved on its base
//! part; leaves whose non-base part is small next to that solution are
//! good and keep it, and the rest of the graph is finished exactly.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::bucket_ocean::{at_most, ApproxResult, BaseSolver, Case, Stats, THRESHOLD_TOLERANCE};
use crate::decomp::{htd_to_td, project_htd, tree_decomposition_for, validate_htd, validate_td, HTreeDecomposition, TreeDecomposition};
use crate::error::{check_eps, Error, Result};
use crate::graph::{Graph, VertexMap, VertexSet};
use crate::model::PackingSolution;
use crate::problem::{Problem, ProblemInstance, Sense, Solution};
use crate::solvers::{exact_opt, restrict, supports_dp, td_dp_opt, DP_WIDTH_LIMIT};

/// Which leaf rule applies.
#[derive(Clone, Debug, PartialEq)]
pub enum ProblemKind {
    /// Vertex cover or feedback vertex set: good iff `|R_t| ≤ (ε/3)|S_t|`.
    VertexDeletion(Problem),
    /// Good iff `|R_t| ≤ (ε/2)|S_t|`.
    IndependentSet,
    /// Cycle, minor or subgraph packing: good iff `|R_t| ≤ (ε/2)|σ_t|`.
    Packing(Problem),
    /// Minimization with an `α`-approximate base: good iff
    /// `|R_t| ≤ (ε/(2α))|S_t|`.
    Alpha(Problem),
}

impl ProblemKind {
    pub fn problem(&self) -> Problem {
        match self {
            ProblemKind::VertexDeletion(p) | ProblemKind::Packing(p) | ProblemKind::Alpha(p) => p.clone(),
            ProblemKind::IndependentSet => Problem::IndependentSet,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeafRecord {
    /// `S_t` or `σ_t`, in labels of `G`.
    pub witness: Solution,
    pub r_size: usize,
    /// Right-hand side of the leaf inequality.
    pub threshold: f64,
    pub good: bool,
    /// For bad vertex-deletion leaves: `3ℓ/ε`, an upper bound on `OPT(G[H_t])`.
    pub certificate: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LeafClassification {
    pub ell: usize,
    pub good: BTreeSet<usize>,
    /// Bad leaves and every internal node.
    pub bad: BTreeSet<usize>,
    pub per_leaf: BTreeMap<usize, LeafRecord>,
}

impl LeafClassification {
    pub fn good_records(&self) -> impl Iterator<Item = (usize, &LeafRecord)> + '_ {
        self.per_leaf.iter().filter(|(_, r)| r.good).map(|(&t, r)| (t, r))
    }
}

fn checked(g: &Graph, d: &HTreeDecomposition, eps: f64) -> Result<()> {
    check_eps(eps)?;
    validate_htd(g, d).map_err(|v| Error::Input(format!("invalid decomposition: {v}")))
}

/// Solves every leaf's base part with `base` at `ε/2` and applies the rule
/// of `kind`. Leaves with an empty base part are bad.
pub fn classify_leaves(
    g: &Graph,
    d: &HTreeDecomposition,
    eps: f64,
    kind: &ProblemKind,
    base: &dyn BaseSolver,
) -> Result<LeafClassification> {
    checked(g, d, eps)?;
    let problem = kind.problem();
    let ell = d.bag_bound();
    let leaves = d.leaves();
    let records: Vec<(usize, LeafRecord)> = leaves
        .par_iter()
        .map(|&t| -> Result<(usize, LeafRecord)> {
            let h_t = d.base_part(t);
            let r_size = d.non_base_part(t).len();
            let (h, map) = g.induced_subgraph(&h_t)?;
            let local = base.solve(&ProblemInstance::new(h, restrict(&problem, &map))?, eps / 2.0)?;
            let witness = match local {
                Solution::Vertices(s) => Solution::Vertices(map.lift(&s)),
                Solution::Packing(p) => Solution::Packing(p.relabel(|v| map.to_old[v])),
            };
            let size = witness.value() as f64;
            let threshold = match kind {
                ProblemKind::VertexDeletion(_) => eps / 3.0 * size,
                ProblemKind::IndependentSet | ProblemKind::Packing(_) => eps / 2.0 * size,
                ProblemKind::Alpha(_) => {
                    let alpha = base.factor(Sense::Minimize, eps / 2.0).max(1.0);
                    eps / (2.0 * alpha) * size
                }
            };
            let good = !h_t.is_empty() && at_most(r_size as f64, threshold);
            let certificate = match kind {
                ProblemKind::VertexDeletion(_) if !good => Some(3.0 * ell as f64 / eps),
                _ => None,
            };
            Ok((
                t,
                LeafRecord {
                    witness,
                    r_size,
                    threshold,
                    good,
                    certificate,
                },
            ))
        })
        .collect::<Result<_>>()?;
    let per_leaf: BTreeMap<usize, LeafRecord> = records.into_iter().collect();
    let good: BTreeSet<usize> = per_leaf.iter().filter(|(_, r)| r.good).map(|(&t, _)| t).collect();
    let bad = (0..d.tree.len()).filter(|t| !good.contains(t)).collect();
    Ok(LeafClassification {
        ell,
        good,
        bad,
        per_leaf,
    })
}

/// Exact solver handed a tree decomposition of its instance.
pub type TwExact<'a> = dyn Fn(&ProblemInstance, &TreeDecomposition) -> Result<Solution> + Sync + 'a;

/// Exact solver for [`TwExact`]: the DP when it supports the problem and
/// the width is at most [`DP_WIDTH_LIMIT`], otherwise [`exact_opt`].
pub fn default_tw_exact(inst: &ProblemInstance, td: &TreeDecomposition) -> Result<Solution> {
    if supports_dp(&inst.problem) && td.width() <= DP_WIDTH_LIMIT {
        Ok(td_dp_opt(inst, td)?.1)
    } else {
        Ok(exact_opt(inst)?.1)
    }
}

/// `G[W]` with its map and a tree decomposition assembled from `D`
/// restricted to `W`; `leaf_td` receives the node `t`, `G[H_t]` and the map
/// from its labels back to `G`.
fn assemble(
    g: &Graph,
    d: &HTreeDecomposition,
    w: &VertexSet,
    leaf_td: &dyn Fn(usize, &Graph, &VertexMap) -> Result<TreeDecomposition>,
) -> Result<(Graph, VertexMap, TreeDecomposition)> {
    let (f, fmap) = g.induced_subgraph(w)?;
    let projected = project_htd(d, w).relabel(&fmap);
    let mut per_leaf = BTreeMap::new();
    for t in projected.leaves() {
        let base = projected.base_part(t);
        if base.is_empty() {
            continue;
        }
        let (h, hmap) = f.induced_subgraph(&base)?;
        let to_g = VertexMap {
            to_old: hmap.to_old.iter().map(|&v| fmap.to_old[v]).collect(),
            to_new: Default::default(),
        };
        per_leaf.insert(t, leaf_td(t, &h, &to_g)?);
    }
    let td = htd_to_td(&f, &projected, &per_leaf)?;
    validate_td(&f, &td).map_err(|v| Error::Internal(format!("assembled decomposition invalid: {v}")))?;
    Ok((f, fmap, td))
}

fn vertices_of(sol: &Solution) -> &VertexSet {
    sol.vertices().expect("vertex solution")
}

/// Trace of [`eta_modulated_fptas`] and [`twh_alpha`].
#[derive(Clone, Debug, PartialEq)]
pub struct TwhTrace {
    pub result: ApproxResult,
    pub classification: LeafClassification,
    pub s1: VertexSet,
    pub s2: VertexSet,
    pub s_b: VertexSet,
    /// `V_b`, the part finished exactly.
    pub bad_side: VertexSet,
    /// `ℓ + 3ℓ/ε + η` where asserted.
    pub width_bound: Option<f64>,
}

/// Vertex cover (`η = 0`) or feedback vertex set (`η = 1`), `(1+ε)`-
/// approximate. Good leaves contribute `S_t ∪ R_t`. Bad leaves have
/// `G[H_t] − S_t` of treewidth at most `η`, so adding `S_t` and `R_t` to a
/// decomposition of it yields a decomposition of `G[V_b]` of width at most
/// `ℓ + 3ℓ/ε + η`, which is asserted before the exact finish.
pub fn eta_modulated_fptas(
    g: &Graph,
    d: &HTreeDecomposition,
    problem: &Problem,
    eps: f64,
    eta: usize,
    base: &dyn BaseSolver,
    tw_exact: &TwExact<'_>,
) -> Result<TwhTrace> {
    if !matches!(problem, Problem::VertexCover | Problem::FeedbackVertexSet) {
        return Err(Error::Unsupported(format!("{problem} is not an η-modulated problem here")));
    }
    let cls = classify_leaves(g, d, eps, &ProblemKind::VertexDeletion(problem.clone()), base)?;
    let ell = cls.ell as f64;
    let bound = ell + 3.0 * ell / eps + eta as f64;
    let witness: BTreeMap<usize, VertexSet> =
        cls.per_leaf.iter().map(|(&t, r)| (t, vertices_of(&r.witness).clone())).collect();
    let leaf_td = |t: usize, h: &Graph, to_g: &VertexMap| -> Result<TreeDecomposition> {
        let s_t = &witness[&t];
        let s_local: VertexSet = h.vertices().filter(|&v| s_t.contains(&to_g.to_old[v])).collect();
        let (rest, rmap) = h.remove_vertices(&s_local)?;
        let inner = tree_decomposition_for(&rest);
        let mut bags: Vec<VertexSet> = inner.bags.iter().map(|b| rmap.lift(b)).collect();
        for b in &mut bags {
            b.extend(s_local.iter().copied());
        }
        Ok(TreeDecomposition { tree: inner.tree, bags })
    };
    finish_vertex_deletion(g, d, problem, eps, cls, Some(bound), &leaf_td, tw_exact)
}

/// `(α+ε)`-approximation for vertex cover or feedback vertex set from an
/// `α`-approximate base solver.
pub fn twh_alpha(
    g: &Graph,
    d: &HTreeDecomposition,
    problem: &Problem,
    eps: f64,
    alpha_base: &dyn BaseSolver,
    tw_exact: &TwExact<'_>,
) -> Result<TwhTrace> {
    if !matches!(problem, Problem::VertexCover | Problem::FeedbackVertexSet) {
        return Err(Error::Unsupported(format!("{problem} is not supported by the α variant")));
    }
    let cls = classify_leaves(g, d, eps, &ProblemKind::Alpha(problem.clone()), alpha_base)?;
    let leaf_td = |_: usize, h: &Graph, _: &VertexMap| Ok(tree_decomposition_for(h));
    finish_vertex_deletion(g, d, problem, eps, cls, None, &leaf_td, tw_exact)
}

#[allow(clippy::too_many_arguments)]
fn finish_vertex_deletion(
    g: &Graph,
    d: &HTreeDecomposition,
    problem: &Problem,
    eps: f64,
    cls: LeafClassification,
    width_bound: Option<f64>,
    leaf_td: &dyn Fn(usize, &Graph, &VertexMap) -> Result<TreeDecomposition>,
    tw_exact: &TwExact<'_>,
) -> Result<TwhTrace> {
    let mut s1 = VertexSet::new();
    let mut s2 = VertexSet::new();
    let mut covered = VertexSet::new();
    for (t, r) in cls.good_records() {
        s1.extend(vertices_of(&r.witness).iter().copied());
        s2.extend(d.non_base_part(t));
        covered.extend(d.bags[t].iter().copied());
    }
    let v_b: VertexSet = g.vertices().filter(|v| !covered.contains(v)).collect();
    let (f, fmap, td) = assemble(g, d, &v_b, leaf_td)?;
    if let Some(b) = width_bound {
        if td.width() as f64 > b + THRESHOLD_TOLERANCE {
            return Err(Error::Internal(format!(
                "bad-side decomposition has width {} above the bound {b}",
                td.width()
            )));
        }
    }
    let sb_local = tw_exact(&ProblemInstance::new(f, problem.clone())?, &td)?;
    let s_b = fmap.lift(vertices_of(&sb_local));
    let mut out = s1.clone();
    out.extend(s2.iter().copied());
    out.extend(s_b.iter().copied());
    let stats = Stats {
        base_calls: cls.per_leaf.len(),
        exact_calls: 1,
        base_value: cls.per_leaf.values().map(|r| r.witness.value()).sum(),
        assembled_width: Some(td.width()),
        ..Stats::default()
    };
    Ok(TwhTrace {
        result: ApproxResult {
            solution: Solution::Vertices(out),
            case: if cls.good.is_empty() { Case::Bucket } else { Case::Ocean },
            eps_used: eps,
            stats,
        },
        classification: cls,
        s1,
        s2,
        s_b,
        bad_side: v_b,
        width_bound,
    })
}

/// Independent set, `(1−ε)`-approximate: good leaves keep `S_t`, the rest
/// of the graph outside their bags is solved exactly through the
/// assembled decomposition.
pub fn twh_fptas_is(
    g: &Graph,
    d: &HTreeDecomposition,
    eps: f64,
    base: &dyn BaseSolver,
    tw_exact: &TwExact<'_>,
) -> Result<TwhTrace> {
    let cls = classify_leaves(g, d, eps, &ProblemKind::IndependentSet, base)?;
    let mut s1 = VertexSet::new();
    let mut covered = VertexSet::new();
    for (t, r) in cls.good_records() {
        s1.extend(vertices_of(&r.witness).iter().copied());
        covered.extend(d.bags[t].iter().copied());
    }
    let v_b: VertexSet = g.vertices().filter(|v| !covered.contains(v)).collect();
    let leaf_td = |_: usize, h: &Graph, _: &VertexMap| Ok(tree_decomposition_for(h));
    let (f, fmap, td) = assemble(g, d, &v_b, &leaf_td)?;
    let sb_local = tw_exact(&ProblemInstance::new(f, Problem::IndependentSet)?, &td)?;
    let s_b = fmap.lift(vertices_of(&sb_local));
    let mut out = s1.clone();
    out.extend(s_b.iter().copied());
    let stats = Stats {
        base_calls: cls.per_leaf.len(),
        exact_calls: 1,
        base_value: cls.per_leaf.values().map(|r| r.witness.value()).sum(),
        assembled_width: Some(td.width()),
        ..Stats::default()
    };
    Ok(TwhTrace {
        result: ApproxResult {
            solution: Solution::Vertices(out),
            case: if cls.good.is_empty() { Case::Bucket } else { Case::Ocean },
            eps_used: eps,
            stats,
        },
        classification: cls,
        s1,
        s2: VertexSet::new(),
        s_b,
        bad_side: v_b,
        width_bound: None,
    })
}

/// Exact packing solver for the bad side.
pub type PackingExact<'a> = dyn Fn(&ProblemInstance) -> Result<Solution> + Sync + 'a;

#[derive(Clone, Debug, PartialEq)]
pub struct PackingTrace {
    pub result: ApproxResult,
    pub classification: LeafClassification,
    pub sigma1: PackingSolution,
    pub sigma_b: PackingSolution,
    pub bad_side: VertexSet,
}

/// Packing, `(1−ε)`-approximate. Only the base parts of good leaves are
/// set aside; their `R_t` stay on the bad side.
pub fn twh_fptas_packing(
    g: &Graph,
    d: &HTreeDecomposition,
    problem: &Problem,
    eps: f64,
    base: &dyn BaseSolver,
    exact_packing: &PackingExact<'_>,
) -> Result<PackingTrace> {
    if !problem.is_packing() {
        return Err(Error::Unsupported(format!("{problem} is not a packing problem")));
    }
    let cls = classify_leaves(g, d, eps, &ProblemKind::Packing(problem.clone()), base)?;
    let mut sigma1 = PackingSolution::default();
    let mut v_g = VertexSet::new();
    for (t, r) in cls.good_records() {
        sigma1.extend(r.witness.packing().expect("packing solution").clone());
        v_g.extend(d.base_part(t));
    }
    let v_b: VertexSet = g.vertices().filter(|v| !v_g.contains(v)).collect();
    let (f, fmap) = g.induced_subgraph(&v_b)?;
    let local = exact_packing(&ProblemInstance::new(f, problem.clone())?)?;
    let sigma_b = local.packing().expect("packing solution").relabel(|v| fmap.to_old[v]);
    let mut all = sigma1.clone();
    all.extend(sigma_b.clone());
    all.normalize();
    let stats = Stats {
        base_calls: cls.per_leaf.len(),
        exact_calls: 1,
        base_value: cls.per_leaf.values().map(|r| r.witness.value()).sum(),
        ..Stats::default()
    };
    Ok(PackingTrace {
        result: ApproxResult {
            solution: Solution::Packing(all),
            case: if cls.good.is_empty() { Case::Bucket } else { Case::Ocean },
            eps_used: eps,
            stats,
        },
        classification: cls,
        sigma1,
        sigma_b,
        bad_side: v_b,
    })
}

/// Exact packing for [`PackingExact`].
pub fn default_packing_exact(inst: &ProblemInstance) -> Result<Solution> {
    Ok(exact_opt(inst)?.1)
}
