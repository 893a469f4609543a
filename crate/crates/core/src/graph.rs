//! Simple undirected graphs over dense vertex labels `0..n`.
//!
//! Every derived graph (induced subgraph, deletion, contraction) comes with
//! an explicit label mapping so that solutions computed on the derived graph
//! can be lifted back to the original one.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{input, Error, Result};

pub type Vertex = usize;
pub type VertexSet = BTreeSet<Vertex>;

/// Largest vertex count accepted by the exhaustive isomorphism check.
pub const ISOMORPHISM_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

/// Label mapping between a graph and a graph derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    /// `to_old[new] = old`
    pub to_old: Vec<Vertex>,
    /// `to_new[old] = Some(new)` when the vertex survived.
    pub to_new: Vec<Option<Vertex>>,
}

impl VertexMap {
    pub fn identity(n: usize) -> Self {
        VertexMap {
            to_old: (0..n).collect(),
            to_new: (0..n).map(Some).collect(),
        }
    }

    /// Maps a set of derived-graph labels back to the original graph.
    pub fn lift(&self, set: &VertexSet) -> VertexSet {
        set.iter().map(|&v| self.to_old[v]).collect()
    }

    /// Maps original labels into the derived graph, dropping vertices that did not survive.
    pub fn project(&self, set: &VertexSet) -> VertexSet {
        set.iter().filter_map(|&v| self.to_new.get(v).copied().flatten()).collect()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a simple graph. Self-loops and out-of-range endpoints are
    /// rejected; repeated edges collapse into one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut sets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Self::from_sets(sets))
    }

    fn from_sets(sets: Vec<BTreeSet<Vertex>>) -> Self {
        let m = sets.iter().map(|s| s.len()).sum::<usize>() / 2;
        Graph {
            adj: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            m,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            input(format!("vertex {v} out of range for {} vertices", self.n()))
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.iter().next_back() {
            Some(&v) => self.check_vertex(v),
            None => Ok(()),
        }
    }

    /// `G[S]` relabeled to `0..|S|` in increasing order of the original labels.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<(Graph, VertexMap)> {
        self.check_set(set)?;
        let to_old: Vec<Vertex> = set.iter().copied().collect();
        let mut to_new = vec![None; self.n()];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let adj: Vec<Vec<Vertex>> = to_old
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|&w| to_new[w]).collect())
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok((Graph { adj, m }, VertexMap { to_old, to_new }))
    }

    /// `G - S`.
    pub fn remove_vertices(&self, set: &VertexSet) -> Result<(Graph, VertexMap)> {
        self.check_set(set)?;
        let keep: VertexSet = self.vertices().filter(|v| !set.contains(v)).collect();
        self.induced_subgraph(&keep)
    }

    pub fn delete_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return input(format!("({u}, {v}) is not an edge"));
        }
        let mut g = self.clone();
        g.adj[u].retain(|&w| w != v);
        g.adj[v].retain(|&w| w != u);
        g.m -= 1;
        Ok(g)
    }

    /// Contracts `uv` into a single vertex. The merged vertex takes the
    /// smaller label; labels above the larger endpoint shift down by one.
    /// Returns the contracted graph and the old-to-new label map.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<(Graph, Vec<Vertex>)> {
        if !self.has_edge(u, v) {
            return input(format!("cannot contract non-edge ({u}, {v})"));
        }
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let map: Vec<Vertex> = self
            .vertices()
            .map(|x| match x.cmp(&hi) {
                std::cmp::Ordering::Less => x,
                std::cmp::Ordering::Equal => lo,
                std::cmp::Ordering::Greater => x - 1,
            })
            .collect();
        let mut sets: Vec<BTreeSet<Vertex>> = vec![BTreeSet::new(); self.n() - 1];
        for (a, b) in self.edges() {
            let (x, y) = (map[a], map[b]);
            if x != y {
                sets[x].insert(y);
                sets[y].insert(x);
            }
        }
        Ok((Self::from_sets(sets), map))
    }

    /// `G1 ⊎ G2` with the second graph's labels shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|nb| nb.iter().map(|&w| w + shift).collect::<Vec<_>>()),
        );
        Graph {
            adj,
            m: self.m + other.m,
        }
    }

    /// Adds one vertex (label `n`) adjacent to `nbrs`.
    pub fn with_new_vertex(&self, nbrs: &VertexSet) -> Result<(Graph, Vertex)> {
        self.check_set(nbrs)?;
        let star = self.n();
        let edges = self.edges().chain(nbrs.iter().map(|&u| (u, star)));
        Ok((Graph::from_edges(star + 1, edges)?, star))
    }

    /// Connected components ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertex_set())
    }

    /// Components of `G[S]`, in original labels, ordered by smallest member.
    pub fn components_within(&self, set: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for &s in set {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = VertexSet::new();
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] && set.contains(&w) {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff `G[S]` is connected (the empty set counts as connected).
    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        self.components_within(set).len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.m + self.components().len() == self.n()
    }

    pub fn is_edgeless(&self) -> bool {
        self.m == 0
    }

    /// Open neighborhood `N(S) \ S`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        set.iter()
            .flat_map(|&v| self.adj[v].iter().copied())
            .filter(|w| !set.contains(w))
            .collect()
    }

    /// Closed neighborhood `N[S]`.
    pub fn closed_neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = self.neighborhood(set);
        out.extend(set.iter().copied());
        out
    }

    pub fn is_vertex_cover(&self, set: &VertexSet) -> bool {
        self.edges().all(|(u, v)| set.contains(&u) || set.contains(&v))
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|&u| self.adj[u].iter().all(|w| !set.contains(w)))
    }

    /// Adjacency as bitmasks; only valid for `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.n() <= 64);
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |acc, &w| acc | (1 << w)))
            .collect()
    }
}

/// Exhaustive isomorphism test for graphs with at most [`ISOMORPHISM_LIMIT`] vertices.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() > ISOMORPHISM_LIMIT || b.n() > ISOMORPHISM_LIMIT {
        return Err(Error::Unsupported(format!(
            "isomorphism check limited to {ISOMORPHISM_LIMIT} vertices"
        )));
    }
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    let n = a.n();
    let mut perm: Vec<Vertex> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(extend_isomorphism(a, b, &mut perm, &mut used))
}

fn extend_isomorphism(a: &Graph, b: &Graph, perm: &mut Vec<Vertex>, used: &mut [bool]) -> bool {
    let v = perm.len();
    if v == a.n() {
        return true;
    }
    for w in 0..b.n() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(perm[u], w));
        if consistent {
            used[w] = true;
            perm.push(w);
            if extend_isomorphism(a, b, perm, used) {
                return true;
            }
            perm.pop();
            used[w] = false;
        }
    }
    false
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("clique")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star")
    }

    /// Wheel over a rim cycle of length `rim`; the hub is the last vertex.
    pub fn wheel(rim: usize) -> Graph {
        let hub = rim;
        let edges = (0..rim).map(|i| (i, (i + 1) % rim)).chain((0..rim).map(|i| (i, hub)));
        Graph::from_edges(rim + 1, edges).expect("wheel")
    }
}
