//! Exact solvers: brute force, tree decomposition DP, branching and
//! self-reduction.

pub mod brute;
pub mod fpt;
pub mod selfreduce;
pub mod tddp;

pub use brute::{brute_opt, BRUTE_PACKING_LIMIT, BRUTE_VERTEX_LIMIT};
pub use fpt::{vc_branch, vc_decide_branch};
pub use selfreduce::{extract_packing, extract_packing_counted, extract_vertex_deletion, Decider, PackingCalls};
pub use tddp::{td_dp_ds, td_dp_opt};

use crate::decomp::{tree_decomposition_for, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::VertexSet;
use crate::model::PackingSolution;
use crate::problem::{Problem, ProblemInstance, Solution};

/// Largest width at which [`exact_opt`] prefers the DP over enumeration.
pub const DP_WIDTH_LIMIT: usize = 16;

/// Exact optimum by the cheapest available engine: the DP over a computed
/// tree decomposition where it applies, otherwise brute force, run per
/// connected component for problems that split over components.
pub fn exact_opt(inst: &ProblemInstance) -> Result<(usize, Solution)> {
    let g = &inst.graph;
    if supports_dp(&inst.problem) {
        let td = tree_decomposition_for(g);
        if td.width() <= DP_WIDTH_LIMIT {
            return td_dp_opt(inst, &td);
        }
    }
    let limit = if inst.problem.is_packing() {
        BRUTE_PACKING_LIMIT
    } else {
        BRUTE_VERTEX_LIMIT
    };
    if g.n() <= limit || matches!(inst.problem, Problem::ConnectedVertexCover) {
        return brute_opt(inst);
    }
    let mut vertices = VertexSet::new();
    let mut packing = PackingSolution::default();
    for comp in g.components() {
        let (h, map) = g.induced_subgraph(&comp)?;
        let problem = restrict(&inst.problem, &map);
        match brute_opt(&ProblemInstance::new(h, problem)?)?.1 {
            Solution::Vertices(s) => vertices.extend(map.lift(&s)),
            Solution::Packing(p) => packing.extend(p.relabel(|v| map.to_old[v])),
        }
    }
    Ok(if inst.problem.is_packing() {
        (packing.size(), Solution::Packing(packing))
    } else {
        (vertices.len(), Solution::Vertices(vertices))
    })
}

/// Exact optimum using a supplied tree decomposition when the DP supports
/// the problem.
pub fn exact_opt_with(inst: &ProblemInstance, td: &TreeDecomposition) -> Result<(usize, Solution)> {
    if supports_dp(&inst.problem) {
        td_dp_opt(inst, td)
    } else {
        exact_opt(inst)
    }
}

pub fn supports_dp(p: &Problem) -> bool {
    matches!(
        p,
        Problem::VertexCover
            | Problem::IndependentSet
            | Problem::DominatingSet { .. }
            | Problem::BlueWhiteDominatingSet { .. }
    )
}

/// Problem restricted along an induced-subgraph map.
pub fn restrict(p: &Problem, map: &crate::graph::VertexMap) -> Problem {
    match p {
        Problem::DominatingSet { dominated } => Problem::DominatingSet {
            dominated: map.project(dominated),
        },
        Problem::BlueWhiteDominatingSet { blue } => Problem::BlueWhiteDominatingSet { blue: map.project(blue) },
        Problem::SetIntersectingVertexCover { x } => Problem::SetIntersectingVertexCover { x: map.project(x) },
        other => other.clone(),
    }
}

/// Decision by optimization: is the optimum at most (minimization) or at
/// least (maximization) `k`?
pub fn decide_by_opt(inst: &ProblemInstance, k: usize) -> Result<bool> {
    match exact_opt(inst) {
        Ok((v, _)) => Ok(match inst.problem.sense() {
            crate::problem::Sense::Minimize => v <= k,
            crate::problem::Sense::Maximize => v >= k,
        }),
        Err(Error::Infeasible(_)) => Ok(false),
        Err(e) => Err(e),
    }
}
