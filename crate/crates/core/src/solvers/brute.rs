//! Exhaustive ground-truth solver.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::model::{connected_sets_containing, partition_model, set_of, MinorModel, PackingSolution, PackingTuple};
use crate::problem::{Problem, ProblemInstance, Solution};

/// Vertex limit for vertex-set problems.
pub const BRUTE_VERTEX_LIMIT: usize = 22;
/// Vertex limit for packing problems.
pub const BRUTE_PACKING_LIMIT: usize = 14;

/// Exact optimum by enumeration. Vertex-set problems return the
/// lexicographically smallest optimal set; packings list tuples by smallest
/// vertex.
pub fn brute_opt(inst: &ProblemInstance) -> Result<(usize, Solution)> {
    let g = &inst.graph;
    if inst.problem.is_packing() {
        if g.n() > BRUTE_PACKING_LIMIT {
            return Err(Error::Unsupported(format!(
                "brute-force packing limited to {BRUTE_PACKING_LIMIT} vertices, got {}",
                g.n()
            )));
        }
        let patterns = inst.problem.patterns().unwrap_or_default();
        let subgraphs = matches!(inst.problem, Problem::SubgraphPacking { .. });
        let p = pack(g, &patterns, subgraphs);
        return Ok((p.size(), Solution::Packing(p)));
    }
    if g.n() > BRUTE_VERTEX_LIMIT {
        return Err(Error::Unsupported(format!(
            "brute force limited to {BRUTE_VERTEX_LIMIT} vertices, got {}",
            g.n()
        )));
    }
    let s = best_vertex_set(g, &inst.problem)?;
    Ok((s.len(), Solution::Vertices(s)))
}

struct Masks {
    adj: Vec<u64>,
    closed: Vec<u64>,
    n: usize,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let adj = g.masks();
        let closed = adj.iter().enumerate().map(|(v, &m)| m | 1 << v).collect();
        Masks { adj, closed, n: g.n() }
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    fn covers(&self, s: u64) -> bool {
        let out = self.all() & !s;
        bits(out).all(|v| self.adj[v] & out == 0)
    }

    fn independent(&self, s: u64) -> bool {
        bits(s).all(|v| self.adj[v] & s == 0)
    }

    fn dominates(&self, s: u64, need: u64) -> bool {
        bits(need).all(|v| self.closed[v] & s != 0)
    }

    /// Components of the subgraph induced by `within`.
    fn components(&self, within: u64) -> Vec<u64> {
        let mut left = within;
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let nb = self.adj[v] & within & !comp;
                comp |= nb;
                frontier |= nb;
            }
            left &= !comp;
            out.push(comp);
        }
        out
    }

    fn acyclic(&self, within: u64) -> bool {
        let edges: u32 = bits(within).map(|v| (self.adj[v] & within).count_ones()).sum::<u32>() / 2;
        edges as usize + self.components(within).len() == within.count_ones() as usize
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

fn mask(set: &VertexSet) -> u64 {
    set.iter().fold(0, |acc, &v| acc | 1u64 << v)
}

fn feasible(m: &Masks, p: &Problem, s: u64) -> bool {
    match p {
        Problem::VertexCover => m.covers(s),
        Problem::IndependentSet => m.independent(s),
        Problem::FeedbackVertexSet => m.acyclic(m.all() & !s),
        Problem::DominatingSet { dominated } => m.dominates(s, m.all() & !mask(dominated)),
        Problem::BlueWhiteDominatingSet { blue } => {
            let b = mask(blue);
            s & b == b && m.dominates(s, m.all())
        }
        Problem::SetIntersectingVertexCover { x } => {
            let x = mask(x);
            m.covers(s) && m.components(s).iter().all(|c| c & x != 0)
        }
        Problem::ConnectedVertexCover => m.covers(s) && m.components(s).len() <= 1,
        _ => false,
    }
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns true.
fn first_combination(n: usize, k: usize, f: &mut dyn FnMut(u64) -> bool) -> Option<u64> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let s = idx.iter().fold(0u64, |acc, &i| acc | 1 << i);
        if f(s) {
            return Some(s);
        }
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn best_vertex_set(g: &Graph, p: &Problem) -> Result<VertexSet> {
    if matches!(p, Problem::ConnectedVertexCover) {
        let nontrivial = g.components().iter().filter(|c| c.len() > 1).count();
        if nontrivial > 1 {
            return Err(Error::Infeasible(
                "edges lie in two or more components, so no connected vertex cover exists".into(),
            ));
        }
    }
    let m = Masks::new(g);
    let n = g.n();
    let sizes: Vec<usize> = match p {
        Problem::IndependentSet => (0..=n).rev().collect(),
        _ => (0..=n).collect(),
    };
    for k in sizes {
        if let Some(s) = first_combination(n, k, &mut |s| feasible(&m, p, s)) {
            return Ok(set_of(s));
        }
    }
    Err(Error::Infeasible(format!("no feasible solution for {p}")))
}

/// Maximum packing by memoized search over the set of unused vertices:
/// the smallest unused vertex is either left out or lies in the vertex set
/// of some tuple, which may be taken to be exactly a model's vertex set.
fn pack(g: &Graph, patterns: &[Graph], subgraphs: bool) -> PackingSolution {
    let masks = g.masks();
    let all = if g.n() == 0 { 0 } else { (1u64 << g.n()) - 1 };
    let mut realizes: HashMap<u64, Option<(usize, Vec<u64>)>> = HashMap::new();
    let mut memo: HashMap<u64, (usize, Option<(u64, usize)>)> = HashMap::new();
    let min_size = patterns.iter().map(|p| p.n()).min().unwrap_or(usize::MAX);
    let max_size = patterns.iter().map(|p| p.n()).max().unwrap_or(0);

    fn best(
        rest: u64,
        masks: &[u64],
        patterns: &[Graph],
        subgraphs: bool,
        min_size: usize,
        max_size: usize,
        realizes: &mut HashMap<u64, Option<(usize, Vec<u64>)>>,
        memo: &mut HashMap<u64, (usize, Option<(u64, usize)>)>,
    ) -> usize {
        if (rest.count_ones() as usize) < min_size {
            return 0;
        }
        if let Some(&(v, _)) = memo.get(&rest) {
            return v;
        }
        let v = rest.trailing_zeros() as usize;
        let mut value = best(rest & !(1 << v), masks, patterns, subgraphs, min_size, max_size, realizes, memo);
        let mut choice = None;
        let mut sets = Vec::new();
        connected_sets_containing(masks, v, rest, &mut |c| {
            let size = c.count_ones() as usize;
            if size >= min_size && (!subgraphs || size <= max_size) {
                sets.push(c);
            }
        });
        sets.sort_unstable();
        for c in sets {
            let found = realizes
                .entry(c)
                .or_insert_with(|| {
                    patterns.iter().enumerate().find_map(|(i, p)| {
                        if subgraphs && p.n() != c.count_ones() as usize {
                            return None;
                        }
                        partition_model(masks, c, p).map(|parts| (i, parts))
                    })
                })
                .as_ref()
                .map(|(i, _)| *i);
            if let Some(i) = found {
                let cand = 1 + best(rest & !c, masks, patterns, subgraphs, min_size, max_size, realizes, memo);
                if cand > value {
                    value = cand;
                    choice = Some((c, i));
                }
            }
        }
        memo.insert(rest, (value, choice));
        value
    }

    best(all, &masks, patterns, subgraphs, min_size, max_size, &mut realizes, &mut memo);
    let mut out = PackingSolution::default();
    let mut rest = all;
    while rest != 0 && memo.contains_key(&rest) {
        match memo[&rest].1 {
            Some((c, i)) => {
                let parts = realizes[&c].as_ref().expect("realized").1.clone();
                out.tuples.push(PackingTuple {
                    vertices: set_of(c),
                    pattern: i,
                    model: MinorModel {
                        pattern: patterns[i].clone(),
                        branch_sets: parts.into_iter().map(set_of).collect(),
                    },
                });
                rest &= !c;
            }
            None => rest &= !(1 << rest.trailing_zeros()),
        }
    }
    out.normalize();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::problem::verify_solution;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn opt(g: Graph, p: Problem) -> (usize, Solution) {
        let inst = ProblemInstance::new(g, p).unwrap();
        let (v, s) = brute_opt(&inst).unwrap();
        assert!(verify_solution(&inst, &s).unwrap());
        (v, s)
    }

    #[test]
    fn spec_examples() {
        let (v, s) = opt(cycle(4), Problem::VertexCover);
        assert_eq!(v, 2);
        assert_eq!(s, Solution::Vertices(set(&[0, 2])));
        assert_eq!(opt(complete(4), Problem::FeedbackVertexSet).0, 2);
        assert_eq!(opt(complete(3).disjoint_union(&complete(3)), Problem::CyclePacking).0, 2);
        let d = Problem::DominatingSet { dominated: set(&[0, 2]) };
        assert_eq!(opt(path(3), d).0, 1);
    }

    #[test]
    fn sivc_matches_filtered_covers() {
        let g = path(4);
        let x = set(&[0]);
        let (v, _) = opt(g.clone(), Problem::SetIntersectingVertexCover { x: x.clone() });
        // recompute by filtering every vertex cover
        let mut best = usize::MAX;
        for s in 0u64..16 {
            let s = set_of(s);
            if g.is_vertex_cover(&s) && g.components_within(&s).iter().all(|c| !c.is_disjoint(&x)) {
                best = best.min(s.len());
            }
        }
        assert_eq!(v, best);
    }

    #[test]
    fn independent_set_is_maximum() {
        assert_eq!(opt(cycle(7), Problem::IndependentSet).0, 3);
        assert_eq!(opt(Graph::empty(0), Problem::IndependentSet).0, 0);
    }

    #[test]
    fn cvc_on_two_edges_is_infeasible() {
        let g = path(2).disjoint_union(&path(2));
        let inst = ProblemInstance::new(g, Problem::ConnectedVertexCover).unwrap();
        assert!(matches!(brute_opt(&inst), Err(Error::Infeasible(_))));
        // isolated vertices do not matter
        let g = path(3).disjoint_union(&Graph::empty(2));
        assert_eq!(opt(g, Problem::ConnectedVertexCover).0, 1);
    }

    #[test]
    fn limits_are_reported() {
        let inst = ProblemInstance::new(path(23), Problem::VertexCover).unwrap();
        assert!(matches!(brute_opt(&inst), Err(Error::Unsupported(_))));
        let inst = ProblemInstance::new(path(15), Problem::CyclePacking).unwrap();
        assert!(matches!(brute_opt(&inst), Err(Error::Unsupported(_))));
    }

    #[test]
    fn packings() {
        assert_eq!(opt(cycle(9), Problem::CyclePacking).0, 1);
        assert_eq!(opt(wheel(6), Problem::CyclePacking).0, 1);
        assert_eq!(opt(complete(6), Problem::CyclePacking).0, 2);
        assert_eq!(opt(path(6), Problem::CyclePacking).0, 0);
        let p = Problem::SubgraphPacking { patterns: vec![path(2)] };
        assert_eq!(opt(path(7), p).0, 3);
        let k4 = Problem::MinorPacking { patterns: vec![complete(4)] };
        assert_eq!(opt(wheel(5), k4).0, 1);
        // a C4 has a triangle minor but no triangle subgraph
        let sub = Problem::SubgraphPacking { patterns: vec![cycle(3)] };
        assert_eq!(opt(cycle(4), sub).0, 0);
    }
}
