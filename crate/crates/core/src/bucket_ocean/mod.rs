//! Approximation schemes parameterized by a modulator `M` to the base
//! family. Each scheme solves `G − M` with a base solver; when `M` is small
//! next to that solution (OCEAN) it is absorbed, and otherwise (BUCKET) the
//! optimum is bounded in terms of `|M|` and found exactly.

pub mod base;

use std::collections::BTreeMap;
use std::fmt;

pub use base::{BaseSolver, BruteBySize, ExactBase, ExactBySize, LossyBase, MatchingVcBase, SelfReducingBySize};

use crate::decomp::{htd_from_modulator, htd_to_td, tree_decomposition_for, FamilyPredicate};
use crate::error::{check_eps, Error, Result};
use crate::graph::{Graph, VertexMap, VertexSet};
use crate::model::PackingSolution;
use crate::problem::{Problem, ProblemInstance, Solution};
use crate::solvers::{restrict, td_dp_opt};

/// Slack for threshold comparisons between products of floats and integers.
pub const THRESHOLD_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Ocean,
    Bucket,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Ocean => "OCEAN",
            Case::Bucket => "BUCKET",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Stats {
    pub base_calls: usize,
    pub exact_calls: usize,
    /// Size of the base solution on `G − M` (or summed over leaves).
    pub base_value: usize,
    /// Bound on the optimum asserted before an exact search.
    pub bucket_bound: Option<usize>,
    /// Connector vertices added by connectivity repair.
    pub repair_additions: usize,
    /// Width of a tree decomposition assembled for an exact finish.
    pub assembled_width: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxResult {
    pub solution: Solution,
    pub case: Case,
    pub eps_used: f64,
    pub stats: Stats,
}

impl ApproxResult {
    pub fn value(&self) -> usize {
        self.solution.value()
    }
}

/// `a ≤ b` up to [`THRESHOLD_TOLERANCE`].
pub(crate) fn at_most(a: f64, b: f64) -> bool {
    a <= b + THRESHOLD_TOLERANCE
}

fn check_modulator(g: &Graph, m: &VertexSet, family: FamilyPredicate) -> Result<(Graph, VertexMap)> {
    g.check_set(m)?;
    let (rest, map) = g.remove_vertices(m)?;
    for comp in rest.components() {
        let (h, _) = rest.induced_subgraph(&comp)?;
        if !family.contains(&h) {
            return Err(Error::Precondition(format!("M is not a modulator to {family}")));
        }
    }
    Ok((rest, map))
}

fn lift(sol: Solution, map: &VertexMap) -> Solution {
    match sol {
        Solution::Vertices(s) => Solution::Vertices(map.lift(&s)),
        Solution::Packing(p) => Solution::Packing(p.relabel(|v| map.to_old[v])),
    }
}

/// Vertex cover or feedback vertex set, `(1+ε)`-approximate.
pub fn mod_fptas_vertex_deletion(
    g: &Graph,
    m: &VertexSet,
    family: FamilyPredicate,
    problem: &Problem,
    eps: f64,
    base: &dyn BaseSolver,
    exact: &dyn ExactBySize,
) -> Result<ApproxResult> {
    check_eps(eps)?;
    if !matches!(problem, Problem::VertexCover | Problem::FeedbackVertexSet) {
        return Err(Error::Unsupported(format!("{problem} is not a supported vertex-deletion problem")));
    }
    let (rest, map) = check_modulator(g, m, family)?;
    let s = base.solve(&ProblemInstance::new(rest, problem.clone())?, eps / 2.0)?;
    let mut stats = Stats {
        base_calls: 1,
        base_value: s.value(),
        ..Stats::default()
    };
    let p = m.len();
    if at_most(p as f64, eps / 3.0 * s.value() as f64) {
        let mut out = map.lift(s.vertices().expect("vertex solution"));
        out.extend(m.iter().copied());
        return Ok(ApproxResult {
            solution: Solution::Vertices(out),
            case: Case::Ocean,
            eps_used: eps,
            stats,
        });
    }
    let bound = p + (3.0 * p as f64 / eps + THRESHOLD_TOLERANCE).floor() as usize;
    stats.bucket_bound = Some(bound);
    stats.exact_calls = 1;
    let sol = exact.solve_bounded(&ProblemInstance::new(g.clone(), problem.clone())?, bound)?;
    if sol.value() > bound {
        return Err(Error::Internal(format!("optimum {} exceeds bucket bound {bound}", sol.value())));
    }
    Ok(ApproxResult {
        solution: sol,
        case: Case::Bucket,
        eps_used: eps,
        stats,
    })
}

/// Largest modulator the guessing schemes enumerate subsets of.
pub const GUESS_LIMIT: usize = 20;

fn subsets(m: &VertexSet) -> Result<impl Iterator<Item = VertexSet> + '_> {
    if m.len() > GUESS_LIMIT {
        return Err(Error::Unsupported(format!("guessing over |M| = {} > {GUESS_LIMIT}", m.len())));
    }
    let items: Vec<_> = m.iter().copied().collect();
    Ok((0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    }))
}

/// Vertex cover by guessing the part `Y` of `M` in the solution.
pub fn vc_mod_guess(g: &Graph, m: &VertexSet, eps: f64, base: &dyn BaseSolver) -> Result<Solution> {
    check_eps(eps)?;
    g.check_set(m)?;
    let mut best: Option<VertexSet> = None;
    for y in subsets(m)? {
        let out: VertexSet = m.difference(&y).copied().collect();
        if !g.is_independent(&out) {
            continue;
        }
        let forced: VertexSet = g.neighborhood(&out).difference(m).copied().collect();
        let rest: VertexSet = g.vertices().filter(|v| !m.contains(v) && !forced.contains(v)).collect();
        let (h, map) = g.induced_subgraph(&rest)?;
        let s = base.solve(&ProblemInstance::new(h, Problem::VertexCover)?, eps)?;
        let mut cand = map.lift(s.vertices().expect("vertex solution"));
        cand.extend(y.iter().copied());
        cand.extend(forced.iter().copied());
        if best.as_ref().is_none_or(|b| cand.len() < b.len()) {
            best = Some(cand);
        }
    }
    Ok(Solution::Vertices(best.expect("the guess Y = M is always allowed")))
}

/// Independent set by guessing the part `Y` of `M` in the solution.
pub fn is_mod_guess(g: &Graph, m: &VertexSet, eps: f64, base: &dyn BaseSolver) -> Result<Solution> {
    check_eps(eps)?;
    g.check_set(m)?;
    let mut best: Option<VertexSet> = None;
    for y in subsets(m)? {
        if !g.is_independent(&y) {
            continue;
        }
        let blocked: VertexSet = g.neighborhood(&y).difference(m).copied().collect();
        let rest: VertexSet = g.vertices().filter(|v| !m.contains(v) && !blocked.contains(v)).collect();
        let (h, map) = g.induced_subgraph(&rest)?;
        let s = base.solve(&ProblemInstance::new(h, Problem::IndependentSet)?, eps)?;
        let mut cand = map.lift(s.vertices().expect("vertex solution"));
        cand.extend(y.iter().copied());
        if best.as_ref().is_none_or(|b| cand.len() > b.len()) {
            best = Some(cand);
        }
    }
    Ok(Solution::Vertices(best.expect("the empty guess is always allowed")))
}

/// `(α+ε)`-approximation from an `α`-approximate base solver. OCEAN when
/// `|M| ≤ (ε/(3α))·|S|`; otherwise `OPT ≤ |M| + 3α|M|/ε` and the optimum is
/// found exactly. With `α = 1` this is the threshold of
/// [`mod_fptas_vertex_deletion`].
pub fn mod_alpha(
    g: &Graph,
    m: &VertexSet,
    family: FamilyPredicate,
    problem: &Problem,
    eps: f64,
    alpha_base: &dyn BaseSolver,
    exact: &dyn ExactBySize,
) -> Result<ApproxResult> {
    check_eps(eps)?;
    if problem.sense() != crate::problem::Sense::Minimize || problem.is_packing() {
        return Err(Error::Unsupported(format!("mod_alpha handles minimization problems, not {problem}")));
    }
    let alpha = alpha_base.factor(problem.sense(), eps / 2.0).max(1.0);
    let (rest, map) = check_modulator(g, m, family)?;
    let s = alpha_base.solve(&ProblemInstance::new(rest, restrict(problem, &map))?, eps / 2.0)?;
    let mut stats = Stats {
        base_calls: 1,
        base_value: s.value(),
        ..Stats::default()
    };
    let p = m.len();
    if at_most(p as f64, eps / (3.0 * alpha) * s.value() as f64) {
        let mut out = map.lift(s.vertices().expect("vertex solution"));
        out.extend(m.iter().copied());
        return Ok(ApproxResult {
            solution: Solution::Vertices(out),
            case: Case::Ocean,
            eps_used: eps,
            stats,
        });
    }
    let bound = p + (3.0 * alpha * p as f64 / eps + THRESHOLD_TOLERANCE).floor() as usize;
    stats.bucket_bound = Some(bound);
    stats.exact_calls = 1;
    let sol = exact.solve_bounded(&ProblemInstance::new(g.clone(), problem.clone())?, bound)?;
    if sol.value() > bound {
        return Err(Error::Internal(format!("optimum {} exceeds bucket bound {bound}", sol.value())));
    }
    Ok(ApproxResult {
        solution: sol,
        case: Case::Bucket,
        eps_used: eps,
        stats,
    })
}

/// Cycle packing, `(1−ε)`-approximate. OCEAN returns the base packing of
/// `G − M` when `|M| ≤ (ε/2)·|S|`; BUCKET solves exactly, with
/// `OPT ≤ (1 + 4/ε)·|M|` checked on the result.
pub fn cycpack_mod_fptas(
    g: &Graph,
    m: &VertexSet,
    family: FamilyPredicate,
    eps: f64,
    base: &dyn BaseSolver,
    exact: &dyn ExactBySize,
) -> Result<ApproxResult> {
    check_eps(eps)?;
    let (rest, map) = check_modulator(g, m, family)?;
    let s = base.solve(&ProblemInstance::new(rest, Problem::CyclePacking)?, eps / 2.0)?;
    let mut stats = Stats {
        base_calls: 1,
        base_value: s.value(),
        ..Stats::default()
    };
    let p = m.len();
    if at_most(p as f64, eps / 2.0 * s.value() as f64) {
        return Ok(ApproxResult {
            solution: lift(s, &map),
            case: Case::Ocean,
            eps_used: eps,
            stats,
        });
    }
    let bound = ((1.0 + 4.0 / eps) * p as f64 + THRESHOLD_TOLERANCE).floor() as usize;
    stats.bucket_bound = Some(bound);
    stats.exact_calls = 1;
    let sol = exact.solve_bounded(&ProblemInstance::new(g.clone(), Problem::CyclePacking)?, bound)?;
    if sol.value() > bound {
        return Err(Error::Internal(format!("packing of {} exceeds bucket bound {bound}", sol.value())));
    }
    Ok(ApproxResult {
        solution: sol,
        case: Case::Bucket,
        eps_used: eps,
        stats,
    })
}

/// Annotated instance on `G − M`: the neighbors of `M` count as dominated
/// and edges among them are dropped.
pub fn ds_base_instance(g: &Graph, m: &VertexSet) -> Result<(ProblemInstance, VertexMap)> {
    let d: VertexSet = g.neighborhood(m);
    let (rest, map) = g.remove_vertices(m)?;
    let d_local = map.project(&d);
    let ann = crate::domset::annotate_normalize(&rest, &d_local)?;
    Ok((
        ProblemInstance::new(ann.graph, Problem::DominatingSet { dominated: ann.dominated })?,
        map,
    ))
}

/// Dominating set, `(1+ε)`-approximate. OCEAN returns `M ∪ S` when
/// `|M| ≤ (ε/3)·|S|`; BUCKET solves exactly over a tree decomposition of
/// `G` assembled from the modulator decomposition.
pub fn ds_mod_fptas(
    g: &Graph,
    m: &VertexSet,
    family: FamilyPredicate,
    eps: f64,
    annotated_base: &dyn BaseSolver,
) -> Result<ApproxResult> {
    check_eps(eps)?;
    check_modulator(g, m, family)?;
    let (inst, map) = ds_base_instance(g, m)?;
    let s = annotated_base.solve(&inst, eps / 2.0)?;
    let mut stats = Stats {
        base_calls: 1,
        base_value: s.value(),
        ..Stats::default()
    };
    let p = m.len();
    if at_most(p as f64, eps / 3.0 * s.value() as f64) {
        let mut out = map.lift(s.vertices().expect("vertex solution"));
        out.extend(m.iter().copied());
        return Ok(ApproxResult {
            solution: Solution::Vertices(out),
            case: Case::Ocean,
            eps_used: eps,
            stats,
        });
    }
    let td = modulator_td(g, m, family)?;
    stats.assembled_width = Some(td.width());
    stats.exact_calls = 1;
    let (_, sol) = td_dp_opt(&ProblemInstance::new(g.clone(), Problem::dominating_set())?, &td)?;
    Ok(ApproxResult {
        solution: sol,
        case: Case::Bucket,
        eps_used: eps,
        stats,
    })
}

/// Tree decomposition of `G` of width at most `tw(G − M) + |M|`: the
/// modulator decomposition with each component's decomposition hung under
/// its leaf.
pub fn modulator_td(g: &Graph, m: &VertexSet, family: FamilyPredicate) -> Result<crate::decomp::TreeDecomposition> {
    let d = htd_from_modulator(g, m, family)?;
    let mut per_leaf = BTreeMap::new();
    for t in d.leaves() {
        let base = d.base_part(t);
        if base.is_empty() {
            continue;
        }
        let (h, _) = g.induced_subgraph(&base)?;
        per_leaf.insert(t, tree_decomposition_for(&h));
    }
    htd_to_td(g, &d, &per_leaf)
}

/// Connected vertex cover, `(1+ε)`-approximate, through set-intersecting
/// vertex cover on `G − M` with `X = N(M)` at `ε′ = ε/5`.
pub fn cvc_mod_fptas(
    g: &Graph,
    m: &VertexSet,
    family: FamilyPredicate,
    eps: f64,
    sivc_base: &dyn BaseSolver,
    exact: &dyn ExactBySize,
) -> Result<ApproxResult> {
    check_eps(eps)?;
    let eps_prime = eps / 5.0;
    check_modulator(g, m, family)?;
    let nontrivial: Vec<VertexSet> = g.components().into_iter().filter(|c| c.len() > 1).collect();
    if nontrivial.len() > 1 {
        return Err(Error::Infeasible(
            "edges lie in two or more components, so no connected vertex cover exists".into(),
        ));
    }
    let mut stats = Stats::default();
    let Some(core) = nontrivial.into_iter().next() else {
        return Ok(ApproxResult {
            solution: Solution::Vertices(VertexSet::new()),
            case: Case::Bucket,
            eps_used: eps_prime,
            stats,
        });
    };
    // isolated vertices play no role
    let (h, hmap) = g.induced_subgraph(&core)?;
    let hm = hmap.project(m);
    let exact_on_h = |bound: usize, stats: &mut Stats| -> Result<ApproxResult> {
        stats.bucket_bound = Some(bound);
        stats.exact_calls += 1;
        let sol = exact.solve_bounded(&ProblemInstance::new(h.clone(), Problem::ConnectedVertexCover)?, bound)?;
        if sol.value() > bound {
            return Err(Error::Internal(format!("optimum {} exceeds bucket bound {bound}", sol.value())));
        }
        Ok(ApproxResult {
            solution: lift(sol, &hmap),
            case: Case::Bucket,
            eps_used: eps_prime,
            stats: stats.clone(),
        })
    };
    if hm.is_empty() {
        // no modulator inside the edge part: the graph itself is in the family
        return exact_on_h(h.n(), &mut stats);
    }
    let x_global = h.neighborhood(&hm);
    let (rest, map) = h.remove_vertices(&hm)?;
    let x = map.project(&x_global);
    let s = sivc_base.solve(
        &ProblemInstance::new(rest, Problem::SetIntersectingVertexCover { x })?,
        eps_prime,
    )?;
    stats.base_calls = 1;
    stats.base_value = s.value();
    let p = hm.len();
    if !at_most(p as f64, eps_prime * s.value() as f64) {
        let bound = (p as f64 / eps_prime + 2.0 * p as f64 + THRESHOLD_TOLERANCE).floor() as usize;
        return exact_on_h(bound, &mut stats);
    }
    let s_h = map.lift(s.vertices().expect("vertex solution"));
    let repaired = connectivity_repair(&h, &s_h, &hm)?;
    let base_union = s_h.len() + p;
    stats.repair_additions = repaired.len() - base_union;
    Ok(ApproxResult {
        solution: Solution::Vertices(hmap.lift(&repaired)),
        case: Case::Ocean,
        eps_used: eps_prime,
        stats,
    })
}

/// Grows `S ∪ M` into a connected vertex cover by repeatedly adding the
/// smallest vertex adjacent to two or more components of `G[S ∪ M]`.
pub fn connectivity_repair(g: &Graph, s: &VertexSet, m: &VertexSet) -> Result<VertexSet> {
    g.check_set(s)?;
    g.check_set(m)?;
    let mut z: VertexSet = s.union(m).copied().collect();
    if !g.is_vertex_cover(&z) {
        return Err(Error::Precondition("S ∪ M is not a vertex cover".into()));
    }
    loop {
        let comps = g.components_within(&z);
        if comps.len() <= 1 {
            return Ok(z);
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                owner[v] = i;
            }
        }
        let connector = g.vertices().filter(|v| !z.contains(v)).find(|&v| {
            let mut touched = g.neighbors(v).iter().map(|&w| owner[w]).filter(|&o| o != usize::MAX);
            let first = touched.next();
            first.is_some_and(|f| touched.any(|o| o != f))
        });
        match connector {
            Some(v) => {
                z.insert(v);
            }
            None => {
                return Err(Error::Precondition(
                    "G[S ∪ M] cannot be connected: the graph is disconnected".into(),
                ))
            }
        }
    }
}

/// Packing solution lifted from `G − M` labels (used by callers combining
/// packings across subgraphs).
pub fn lift_packing(p: &PackingSolution, map: &VertexMap) -> PackingSolution {
    p.relabel(|v| map.to_old[v])
}
