//! Problem instances, solutions and the feasibility verifier.

use std::fmt;

use crate::error::{input, Result};
use crate::graph::{named, Graph, VertexSet};
use crate::model::PackingSolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    VertexCover,
    FeedbackVertexSet,
    IndependentSet,
    /// Annotated dominating set: vertices of `dominated` need no domination.
    /// Plain dominating set is the case `dominated = ∅`.
    DominatingSet { dominated: VertexSet },
    /// Dominating set that must contain every blue vertex.
    BlueWhiteDominatingSet { blue: VertexSet },
    /// Vertex cover whose every induced component meets `x`.
    SetIntersectingVertexCover { x: VertexSet },
    ConnectedVertexCover,
    CyclePacking,
    MinorPacking { patterns: Vec<Graph> },
    SubgraphPacking { patterns: Vec<Graph> },
}

impl Problem {
    pub fn dominating_set() -> Self {
        Problem::DominatingSet {
            dominated: VertexSet::new(),
        }
    }

    pub fn sense(&self) -> Sense {
        match self {
            Problem::IndependentSet
            | Problem::CyclePacking
            | Problem::MinorPacking { .. }
            | Problem::SubgraphPacking { .. } => Sense::Maximize,
            _ => Sense::Minimize,
        }
    }

    pub fn is_packing(&self) -> bool {
        matches!(
            self,
            Problem::CyclePacking | Problem::MinorPacking { .. } | Problem::SubgraphPacking { .. }
        )
    }

    /// Pattern family of a packing problem (cycle packing packs `C3` minors).
    pub fn patterns(&self) -> Option<Vec<Graph>> {
        match self {
            Problem::CyclePacking => Some(vec![named::cycle(3)]),
            Problem::MinorPacking { patterns } | Problem::SubgraphPacking { patterns } => {
                Some(patterns.clone())
            }
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Problem::VertexCover => "vc",
            Problem::FeedbackVertexSet => "fvs",
            Problem::IndependentSet => "is",
            Problem::DominatingSet { .. } => "ds",
            Problem::BlueWhiteDominatingSet { .. } => "bwds",
            Problem::SetIntersectingVertexCover { .. } => "sivc",
            Problem::ConnectedVertexCover => "cvc",
            Problem::CyclePacking => "cycle-pack",
            Problem::MinorPacking { .. } => "minor-pack",
            Problem::SubgraphPacking { .. } => "subgraph-pack",
        }
    }

    /// Annotation sets referenced by the problem, for range checks.
    fn annotations(&self) -> Option<&VertexSet> {
        match self {
            Problem::DominatingSet { dominated } => Some(dominated),
            Problem::BlueWhiteDominatingSet { blue } => Some(blue),
            Problem::SetIntersectingVertexCover { x } => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub graph: Graph,
    pub problem: Problem,
}

impl ProblemInstance {
    pub fn new(graph: Graph, problem: Problem) -> Result<Self> {
        if let Some(a) = problem.annotations() {
            graph.check_set(a)?;
        }
        Ok(ProblemInstance { graph, problem })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Vertices(VertexSet),
    Packing(PackingSolution),
}

impl Solution {
    pub fn value(&self) -> usize {
        match self {
            Solution::Vertices(s) => s.len(),
            Solution::Packing(p) => p.size(),
        }
    }

    pub fn vertices(&self) -> Option<&VertexSet> {
        match self {
            Solution::Vertices(s) => Some(s),
            Solution::Packing(_) => None,
        }
    }

    pub fn packing(&self) -> Option<&PackingSolution> {
        match self {
            Solution::Packing(p) => Some(p),
            Solution::Vertices(_) => None,
        }
    }
}

/// True iff `sol` is feasible for `inst`. Witnesses naming vertices outside
/// the graph, or of the wrong shape for the problem, are input errors rather
/// than infeasible answers.
pub fn verify_solution(inst: &ProblemInstance, sol: &Solution) -> Result<bool> {
    let g = &inst.graph;
    match (&inst.problem, sol) {
        (p, Solution::Packing(pack)) if p.is_packing() => {
            for t in &pack.tuples {
                g.check_set(&t.vertices)?;
                for b in &t.model.branch_sets {
                    g.check_set(b)?;
                }
            }
            let patterns = p.patterns().unwrap_or_default();
            let embeddings = matches!(p, Problem::SubgraphPacking { .. });
            Ok(pack.check(g, &patterns, embeddings).is_ok())
        }
        (p, Solution::Vertices(s)) if !p.is_packing() => {
            g.check_set(s)?;
            Ok(vertex_set_feasible(g, p, s))
        }
        (p, _) => input(format!("solution shape does not match problem {p}")),
    }
}

pub(crate) fn vertex_set_feasible(g: &Graph, p: &Problem, s: &VertexSet) -> bool {
    match p {
        Problem::VertexCover => g.is_vertex_cover(s),
        Problem::IndependentSet => g.is_independent(s),
        Problem::FeedbackVertexSet => g.remove_vertices(s).map(|(h, _)| h.is_forest()).unwrap_or(false),
        Problem::DominatingSet { dominated } => dominates(g, s, dominated),
        Problem::BlueWhiteDominatingSet { blue } => blue.is_subset(s) && dominates(g, s, &VertexSet::new()),
        Problem::SetIntersectingVertexCover { x } => {
            g.is_vertex_cover(s)
                && g.components_within(s).iter().all(|c| !c.is_disjoint(x))
        }
        Problem::ConnectedVertexCover => g.is_vertex_cover(s) && g.is_connected_set(s),
        _ => false,
    }
}

/// Every vertex outside `dominated` has a closed neighbor in `s`.
pub fn dominates(g: &Graph, s: &VertexSet, dominated: &VertexSet) -> bool {
    g.vertices()
        .filter(|v| !dominated.contains(v))
        .all(|v| s.contains(&v) || g.neighbors(v).iter().any(|w| s.contains(w)))
}
