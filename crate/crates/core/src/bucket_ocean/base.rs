//! Pluggable solvers used by the approximation schemes: base-family
//! solvers with a stated guarantee, and exact solvers that may rely on a
//! bound on the optimum.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::problem::{verify_solution, Problem, ProblemInstance, Sense, Solution};
use crate::solvers::{decide_by_opt, exact_opt, extract_vertex_deletion, vc_decide_branch};

/// Solver for instances whose graph lies in the base family.
pub trait BaseSolver: Sync {
    fn solve(&self, inst: &ProblemInstance, eps: f64) -> Result<Solution>;

    /// Guaranteed ratio at accuracy `eps`: at most this times the optimum
    /// when minimizing, at least this times the optimum when maximizing.
    fn factor(&self, sense: Sense, eps: f64) -> f64;

    fn name(&self) -> String;
}

/// Exact base solver, which trivially meets any `1 ± ε` guarantee.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactBase;

impl BaseSolver for ExactBase {
    fn solve(&self, inst: &ProblemInstance, _eps: f64) -> Result<Solution> {
        Ok(exact_opt(inst)?.1)
    }

    fn factor(&self, _sense: Sense, _eps: f64) -> f64 {
        1.0
    }

    fn name(&self) -> String {
        "exact".into()
    }
}

/// Exact solution degraded on purpose: `slack` in `[0, 1]` is the share of
/// the allowed loss actually spent. With `alpha` set the allowance is
/// `(α − 1)·OPT` instead of `ε·OPT`.
#[derive(Clone, Copy, Debug)]
pub struct LossyBase {
    pub slack: f64,
    pub alpha: Option<f64>,
}

impl LossyBase {
    pub fn new(slack: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&slack) {
            return Err(Error::Precondition(format!("lossy slack must lie in [0, 1], got {slack}")));
        }
        Ok(LossyBase { slack, alpha: None })
    }

    pub fn with_alpha(alpha: f64) -> Result<Self> {
        if alpha < 1.0 {
            return Err(Error::Precondition(format!("alpha must be at least 1, got {alpha}")));
        }
        Ok(LossyBase {
            slack: 1.0,
            alpha: Some(alpha),
        })
    }

    fn allowance(&self, opt: usize, eps: f64) -> usize {
        let room = match self.alpha {
            Some(a) => a - 1.0,
            None => eps,
        };
        (self.slack * room * opt as f64 + 1e-9).floor() as usize
    }
}

impl BaseSolver for LossyBase {
    fn solve(&self, inst: &ProblemInstance, eps: f64) -> Result<Solution> {
        let (opt, sol) = exact_opt(inst)?;
        let extra = self.allowance(opt, eps);
        let out = match (inst.problem.sense(), sol) {
            (Sense::Minimize, Solution::Vertices(s)) => Solution::Vertices(inflate(&inst.graph, &inst.problem, s, extra)),
            (Sense::Maximize, Solution::Vertices(mut s)) => {
                for _ in 0..extra.min(s.len()) {
                    s.pop_last();
                }
                Solution::Vertices(s)
            }
            (_, Solution::Packing(mut p)) => {
                for _ in 0..extra.min(p.size()) {
                    p.tuples.pop();
                }
                Solution::Packing(p)
            }
        };
        debug_assert!(verify_solution(inst, &out).unwrap_or(false));
        Ok(out)
    }

    fn factor(&self, sense: Sense, eps: f64) -> f64 {
        match (self.alpha, sense) {
            (Some(a), _) => a,
            (None, Sense::Minimize) => 1.0 + eps,
            (None, Sense::Maximize) => 1.0 - eps,
        }
    }

    fn name(&self) -> String {
        match self.alpha {
            Some(a) => format!("lossy-alpha-{a}"),
            None => format!("lossy-{}", self.slack),
        }
    }
}

/// Adds up to `extra` vertices keeping `s` feasible: any vertex for
/// covering and domination problems, a vertex of `X` or a neighbor of `s`
/// for set-intersecting cover, a neighbor of `s` for connected cover.
fn inflate(g: &Graph, p: &Problem, mut s: VertexSet, extra: usize) -> VertexSet {
    for _ in 0..extra {
        let pick = g.vertices().find(|v| {
            !s.contains(v)
                && match p {
                    Problem::SetIntersectingVertexCover { x } => {
                        x.contains(v) || g.neighbors(*v).iter().any(|w| s.contains(w))
                    }
                    Problem::ConnectedVertexCover => g.neighbors(*v).iter().any(|w| s.contains(w)),
                    _ => true,
                }
        });
        match pick {
            Some(v) => {
                s.insert(v);
            }
            None => break,
        }
    }
    s
}

/// Both endpoints of a greedy maximal matching: a 2-approximate vertex cover.
#[derive(Clone, Copy, Debug, Default)]
pub struct MatchingVcBase;

impl BaseSolver for MatchingVcBase {
    fn solve(&self, inst: &ProblemInstance, _eps: f64) -> Result<Solution> {
        if inst.problem != Problem::VertexCover {
            return Err(Error::Unsupported("matching base solves vertex cover only".into()));
        }
        let mut s = VertexSet::new();
        for (u, v) in inst.graph.edges() {
            if !s.contains(&u) && !s.contains(&v) {
                s.insert(u);
                s.insert(v);
            }
        }
        Ok(Solution::Vertices(s))
    }

    fn factor(&self, _sense: Sense, _eps: f64) -> f64 {
        2.0
    }

    fn name(&self) -> String {
        "matching".into()
    }
}

/// Exact solver told that the optimum is at most `bound` (minimization) or
/// that it may search up to `bound` (maximization).
pub trait ExactBySize: Sync {
    fn solve_bounded(&self, inst: &ProblemInstance, bound: usize) -> Result<Solution>;

    fn name(&self) -> String;
}

/// Exact optimum ignoring the bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct BruteBySize;

impl ExactBySize for BruteBySize {
    fn solve_bounded(&self, inst: &ProblemInstance, _bound: usize) -> Result<Solution> {
        Ok(exact_opt(inst)?.1)
    }

    fn name(&self) -> String {
        "brute".into()
    }
}

/// Vertex-deletion optimum by increasing `k` up to the bound against a
/// decision procedure, then extracting a witness by self-reduction. Vertex
/// cover decides by branching; other problems decide by optimization.
#[derive(Clone, Copy, Debug, Default)]
pub struct SelfReducingBySize;

impl ExactBySize for SelfReducingBySize {
    fn solve_bounded(&self, inst: &ProblemInstance, bound: usize) -> Result<Solution> {
        if !matches!(inst.problem, Problem::VertexCover | Problem::FeedbackVertexSet) {
            return BruteBySize.solve_bounded(inst, bound);
        }
        let problem = inst.problem.clone();
        let mut decide = |h: &Graph, k: usize| -> Result<bool> {
            match problem {
                Problem::VertexCover => Ok(vc_decide_branch(h, k)),
                _ => decide_by_opt(&ProblemInstance::new(h.clone(), problem.clone())?, k),
            }
        };
        for k in 0..=bound.min(inst.graph.n()) {
            if decide(&inst.graph, k)? {
                return match extract_vertex_deletion(&mut decide, &inst.graph, k)? {
                    Some(s) => Ok(Solution::Vertices(s)),
                    None => Err(Error::OracleFault(format!("decision said yes at {k}, extraction said no"))),
                };
            }
        }
        Err(Error::Internal(format!("optimum exceeds the bound {bound}")))
    }

    fn name(&self) -> String {
        "self-reducing".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn lossy_base_stays_within_factor() {
        let inst = ProblemInstance::new(cycle(20), Problem::VertexCover).unwrap();
        let s = LossyBase::new(1.0).unwrap().solve(&inst, 0.2).unwrap();
        assert_eq!(s.value(), 12);
        assert!(verify_solution(&inst, &s).unwrap());
        let inst = ProblemInstance::new(cycle(20), Problem::IndependentSet).unwrap();
        let s = LossyBase::new(1.0).unwrap().solve(&inst, 0.2).unwrap();
        assert_eq!(s.value(), 8);
        let inst = ProblemInstance::new(path(9), Problem::ConnectedVertexCover).unwrap();
        let s = LossyBase::with_alpha(2.0).unwrap().solve(&inst, 0.1).unwrap();
        assert!(verify_solution(&inst, &s).unwrap());
        assert!(s.value() <= 14);
        assert!(LossyBase::new(1.5).is_err());
    }

    #[test]
    fn matching_is_a_cover() {
        let inst = ProblemInstance::new(wheel(7), Problem::VertexCover).unwrap();
        let s = MatchingVcBase.solve(&inst, 0.5).unwrap();
        assert!(verify_solution(&inst, &s).unwrap());
    }

    #[test]
    fn self_reduction_finds_optimum() {
        for p in [Problem::VertexCover, Problem::FeedbackVertexSet] {
            let inst = ProblemInstance::new(wheel(6), p).unwrap();
            let s = SelfReducingBySize.solve_bounded(&inst, 10).unwrap();
            assert!(verify_solution(&inst, &s).unwrap());
            assert_eq!(s.value(), exact_opt(&inst).unwrap().0);
        }
        let inst = ProblemInstance::new(complete(6), Problem::VertexCover).unwrap();
        assert!(matches!(
            SelfReducingBySize.solve_bounded(&inst, 3),
            Err(Error::Internal(_))
        ));
    }
}
