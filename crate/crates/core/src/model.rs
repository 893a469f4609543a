//! Minor models and packings of vertex-disjoint minor models.

use std::collections::HashMap;
use std::fmt;

use crate::graph::{Graph, Vertex, VertexSet};

/// Branch sets realizing `pattern` as a minor of some host graph;
/// `branch_sets[i]` is the image of pattern vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub pattern: Graph,
    pub branch_sets: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelViolation {
    WrongArity { expected: usize, got: usize },
    EmptyBranchSet(usize),
    DanglingVertex(Vertex),
    Overlap { a: usize, b: usize },
    Disconnected(usize),
    MissingEdge { a: usize, b: usize },
}

impl fmt::Display for ModelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelViolation::WrongArity { expected, got } => {
                write!(f, "expected {expected} branch sets, got {got}")
            }
            ModelViolation::EmptyBranchSet(i) => write!(f, "branch set {i} is empty"),
            ModelViolation::DanglingVertex(v) => write!(f, "vertex {v} is not in the host"),
            ModelViolation::Overlap { a, b } => write!(f, "branch sets {a} and {b} intersect"),
            ModelViolation::Disconnected(i) => write!(f, "branch set {i} is not connected"),
            ModelViolation::MissingEdge { a, b } => {
                write!(f, "pattern edge ({a}, {b}) has no host edge between its branch sets")
            }
        }
    }
}

impl MinorModel {
    pub fn vertices(&self) -> VertexSet {
        self.branch_sets.iter().flatten().copied().collect()
    }

    pub fn check(&self, host: &Graph) -> Result<(), ModelViolation> {
        let k = self.pattern.n();
        if self.branch_sets.len() != k {
            return Err(ModelViolation::WrongArity {
                expected: k,
                got: self.branch_sets.len(),
            });
        }
        let mut owner: HashMap<Vertex, usize> = HashMap::new();
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return Err(ModelViolation::EmptyBranchSet(i));
            }
            for &v in set {
                if v >= host.n() {
                    return Err(ModelViolation::DanglingVertex(v));
                }
                if let Some(&j) = owner.get(&v) {
                    return Err(ModelViolation::Overlap { a: j, b: i });
                }
                owner.insert(v, i);
            }
            if !host.is_connected_set(set) {
                return Err(ModelViolation::Disconnected(i));
            }
        }
        for (a, b) in self.pattern.edges() {
            let touched = self.branch_sets[a]
                .iter()
                .any(|&u| host.neighbors(u).iter().any(|w| self.branch_sets[b].contains(w)));
            if !touched {
                return Err(ModelViolation::MissingEdge { a, b });
            }
        }
        Ok(())
    }

    /// True when every branch set is a single vertex, i.e. the model is a
    /// subgraph embedding of the pattern.
    pub fn is_embedding(&self) -> bool {
        self.branch_sets.iter().all(|s| s.len() == 1)
    }
}

/// Checks disjointness, connectivity and edge coverage of a minor model.
pub fn verify_minor_model(host: &Graph, model: &MinorModel) -> bool {
    model.check(host).is_ok()
}

/// One member of a packing: a host subgraph (by vertex set), the index of
/// the pattern it realizes, and the realizing model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingTuple {
    pub vertices: VertexSet,
    pub pattern: usize,
    pub model: MinorModel,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PackingSolution {
    pub tuples: Vec<PackingTuple>,
}

impl PackingSolution {
    pub fn size(&self) -> usize {
        self.tuples.len()
    }

    pub fn vertices(&self) -> VertexSet {
        self.tuples.iter().flat_map(|t| t.vertices.iter().copied()).collect()
    }

    /// Orders tuples by smallest vertex.
    pub fn normalize(&mut self) {
        self.tuples
            .sort_by_key(|t| t.vertices.iter().next().copied().unwrap_or(usize::MAX));
    }

    /// Maps every vertex through `f` (used to lift packings to a host graph).
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> PackingSolution {
        let map = |s: &VertexSet| s.iter().map(|&v| f(v)).collect::<VertexSet>();
        let mut out = PackingSolution {
            tuples: self
                .tuples
                .iter()
                .map(|t| PackingTuple {
                    vertices: map(&t.vertices),
                    pattern: t.pattern,
                    model: MinorModel {
                        pattern: t.model.pattern.clone(),
                        branch_sets: t.model.branch_sets.iter().map(map).collect(),
                    },
                })
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn extend(&mut self, other: PackingSolution) {
        self.tuples.extend(other.tuples);
        self.normalize();
    }

    /// Validates each tuple against `patterns` and checks pairwise
    /// disjointness. `embeddings` demands singleton branch sets and
    /// `vertices == model.vertices()` (subgraph packing).
    pub fn check(&self, host: &Graph, patterns: &[Graph], embeddings: bool) -> Result<(), String> {
        let mut used = VertexSet::new();
        for (i, t) in self.tuples.iter().enumerate() {
            let pattern = patterns
                .get(t.pattern)
                .ok_or_else(|| format!("tuple {i} names unknown pattern {}", t.pattern))?;
            if &t.model.pattern != pattern {
                return Err(format!("tuple {i} carries a pattern different from family member {}", t.pattern));
            }
            t.model.check(host).map_err(|e| format!("tuple {i}: {e}"))?;
            if !t.model.vertices().is_subset(&t.vertices) {
                return Err(format!("tuple {i}: model leaves its subgraph"));
            }
            if embeddings && (!t.model.is_embedding() || t.model.vertices() != t.vertices) {
                return Err(format!("tuple {i}: not a subgraph isomorphism"));
            }
            if t.vertices.iter().any(|v| used.contains(v)) {
                return Err(format!("tuple {i} overlaps an earlier tuple"));
            }
            used.extend(t.vertices.iter().copied());
        }
        Ok(())
    }
}

/// Searches for a model of `pattern` whose branch sets partition exactly
/// `set` (given as a bitmask over a host with at most 64 vertices).
///
/// Every minimal host subgraph of a connected pattern is such a union, so
/// this is the primitive behind exact packing search.
pub(crate) fn partition_model(masks: &[u64], set: u64, pattern: &Graph) -> Option<Vec<u64>> {
    let k = pattern.n();
    let size = set.count_ones() as usize;
    if k == 0 || size < k {
        return None;
    }
    let set_edges = (0..64)
        .filter(|&v| set >> v & 1 == 1)
        .map(|v| (masks[v] & set).count_ones() as usize)
        .sum::<usize>()
        / 2;
    if set_edges < pattern.m() || set_edges + 1 < size {
        return None;
    }
    if size == k {
        return embedding(masks, set, pattern);
    }
    if is_triangle(pattern) {
        // connected with a cycle: contract onto the cycle, split it in three arcs
        return triangle_partition(masks, set);
    }
    let order = bfs_order(masks, set);
    let pattern_masks = pattern.masks();
    let mut parts = vec![0u64; k];
    if assign(masks, &order, 0, &mut parts, &pattern_masks) {
        Some(parts)
    } else {
        None
    }
}

fn is_triangle(p: &Graph) -> bool {
    p.n() == 3 && p.m() == 3
}

fn bfs_order(masks: &[u64], set: u64) -> Vec<usize> {
    let start = set.trailing_zeros() as usize;
    let mut order = vec![start];
    let mut seen = 1u64 << start;
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let mut nb = masks[v] & set & !seen;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            seen |= 1 << w;
            order.push(w);
        }
        i += 1;
    }
    order
}

fn connected_mask(masks: &[u64], set: u64) -> bool {
    if set == 0 {
        return true;
    }
    let start = set.trailing_zeros();
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let nb = masks[v] & set & !seen;
        seen |= nb;
        frontier |= nb;
    }
    seen == set
}

fn assign(masks: &[u64], order: &[usize], idx: usize, parts: &mut [u64], pat: &[u64]) -> bool {
    let k = parts.len();
    let empty = parts.iter().filter(|&&p| p == 0).count();
    if order.len() - idx < empty {
        return false;
    }
    if idx == order.len() {
        return parts_realize(masks, parts, pat);
    }
    let v = order[idx];
    for i in 0..k {
        parts[i] |= 1 << v;
        if assign(masks, order, idx + 1, parts, pat) {
            return true;
        }
        parts[i] &= !(1 << v);
    }
    false
}

fn parts_realize(masks: &[u64], parts: &[u64], pat: &[u64]) -> bool {
    for (i, &p) in parts.iter().enumerate() {
        if p == 0 || !connected_mask(masks, p) {
            return false;
        }
        let mut need = pat[i];
        while need != 0 {
            let j = need.trailing_zeros() as usize;
            need &= need - 1;
            if !touches(masks, p, parts[j]) {
                return false;
            }
        }
    }
    true
}

fn touches(masks: &[u64], a: u64, b: u64) -> bool {
    let mut rest = a;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if masks[v] & b != 0 {
            return true;
        }
    }
    false
}

fn embedding(masks: &[u64], set: u64, pattern: &Graph) -> Option<Vec<u64>> {
    let verts: Vec<usize> = (0..64).filter(|&v| set >> v & 1 == 1).collect();
    let k = pattern.n();
    let mut image = vec![usize::MAX; k];
    let mut used = 0u64;
    fn rec(
        i: usize,
        pattern: &Graph,
        masks: &[u64],
        verts: &[usize],
        image: &mut [usize],
        used: &mut u64,
    ) -> bool {
        if i == image.len() {
            return true;
        }
        for &w in verts {
            if *used >> w & 1 == 1 {
                continue;
            }
            let ok = pattern
                .neighbors(i)
                .iter()
                .filter(|&&j| j < i)
                .all(|&j| masks[w] >> image[j] & 1 == 1);
            if ok {
                image[i] = w;
                *used |= 1 << w;
                if rec(i + 1, pattern, masks, verts, image, used) {
                    return true;
                }
                *used &= !(1 << w);
            }
        }
        false
    }
    if rec(0, pattern, masks, &verts, &mut image, &mut used) {
        Some(image.into_iter().map(|w| 1u64 << w).collect())
    } else {
        None
    }
}

fn triangle_partition(masks: &[u64], set: u64) -> Option<Vec<u64>> {
    if !connected_mask(masks, set) {
        return None;
    }
    // find a cycle by DFS over the induced subgraph
    let cycle = find_cycle(masks, set)?;
    // grow arcs of the cycle into a partition of the whole set
    let len = cycle.len();
    let cuts = [0, len / 3, (2 * len) / 3];
    let mut parts = vec![0u64; 3];
    for (idx, &v) in cycle.iter().enumerate() {
        let part = if idx < cuts[1] {
            0
        } else if idx < cuts[2] {
            1
        } else {
            2
        };
        parts[part] |= 1 << v;
    }
    let mut assigned = parts[0] | parts[1] | parts[2];
    while assigned != set {
        let mut progressed = false;
        for p in 0..3 {
            let mut frontier = parts[p];
            let mut grow = 0u64;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                grow |= masks[v] & set & !assigned;
            }
            if grow != 0 {
                let w = grow.trailing_zeros();
                parts[p] |= 1 << w;
                assigned |= 1 << w;
                progressed = true;
            }
        }
        if !progressed {
            return None;
        }
    }
    Some(parts)
}

fn find_cycle(masks: &[u64], set: u64) -> Option<Vec<usize>> {
    let n = 64;
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let root = set.trailing_zeros() as usize;
    depth[root] = 0;
    let mut stack = vec![root];
    while let Some(v) = stack.pop() {
        let mut nb = masks[v] & set;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if w == parent[v] {
                continue;
            }
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                stack.push(w);
            } else {
                // non-tree edge v-w closes a cycle through their common ancestor
                let (mut a, mut b) = (v, w);
                let mut left = vec![a];
                let mut right = vec![b];
                while a != b {
                    if depth[a] >= depth[b] {
                        a = parent[a];
                        left.push(a);
                    } else {
                        b = parent[b];
                        right.push(b);
                    }
                }
                right.pop();
                right.reverse();
                left.extend(right);
                let mut seen = 0u64;
                for &x in &left {
                    seen |= 1 << x;
                }
                if left.len() >= 3 && seen.count_ones() as usize == left.len() {
                    return Some(left);
                }
            }
        }
    }
    None
}

/// Enumerates every connected vertex set containing `root` inside `within`
/// (bitmasks), calling `visit` once per set.
pub(crate) fn connected_sets_containing(
    masks: &[u64],
    root: usize,
    within: u64,
    visit: &mut dyn FnMut(u64),
) {
    fn rec(masks: &[u64], within: u64, s: u64, ext: u64, banned: u64, visit: &mut dyn FnMut(u64)) {
        if ext == 0 {
            visit(s);
            return;
        }
        let u = ext.trailing_zeros() as usize;
        let bit = 1u64 << u;
        let grown = s | bit;
        let new_ext = (ext | masks[u]) & within & !grown & !banned;
        rec(masks, within, grown, new_ext, banned, visit);
        rec(masks, within, s, ext & !bit, banned | bit, visit);
    }
    let s = 1u64 << root;
    let ext = masks[root] & within & !s;
    rec(masks, within, s, ext, 0, visit);
}

pub(crate) fn set_of(mask: u64) -> VertexSet {
    (0..64).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Finds some minor model of `pattern` in `host` (at most 64 vertices),
/// trying connected vertex sets in increasing size.
pub fn find_minor_model(host: &Graph, pattern: &Graph) -> Option<MinorModel> {
    assert!(host.n() <= 64, "minor search is limited to 64 vertices");
    if pattern.n() == 0 {
        return Some(MinorModel {
            pattern: pattern.clone(),
            branch_sets: vec![],
        });
    }
    let masks = host.masks();
    let all = if host.n() == 64 { u64::MAX } else { (1u64 << host.n()) - 1 };
    let mut candidates: Vec<u64> = Vec::new();
    for root in 0..host.n() {
        let within = all & !((1u64 << root) - 1);
        connected_sets_containing(&masks, root, within, &mut |s| {
            if s.count_ones() as usize >= pattern.n() {
                candidates.push(s)
            }
        });
    }
    candidates.sort_by_key(|s| (s.count_ones(), *s));
    candidates.into_iter().find_map(|s| {
        partition_model(&masks, s, pattern).map(|parts| MinorModel {
            pattern: pattern.clone(),
            branch_sets: parts.into_iter().map(set_of).collect(),
        })
    })
}
