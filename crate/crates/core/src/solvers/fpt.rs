//! Branching algorithms parameterized by solution size.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex, VertexSet};

/// True iff `g` has a vertex cover of at most `k` vertices.
pub fn vc_decide_branch(g: &Graph, k: usize) -> bool {
    vc_branch(g, k).is_some()
}

/// A vertex cover of at most `k` vertices, if one exists. Branches on a
/// maximum-degree vertex `v`: either `v` or all of `N(v)` is in the cover.
pub fn vc_branch(g: &Graph, k: usize) -> Option<VertexSet> {
    let adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut taken = VertexSet::new();
    if branch(adj, k, &mut taken) {
        Some(taken)
    } else {
        None
    }
}

fn take(adj: &mut [BTreeSet<Vertex>], v: Vertex) {
    let nb = std::mem::take(&mut adj[v]);
    for u in nb {
        adj[u].remove(&v);
    }
}

fn branch(mut adj: Vec<BTreeSet<Vertex>>, mut k: usize, taken: &mut VertexSet) -> bool {
    let mark = taken.clone();
    // a degree-one vertex never needs to be taken over its neighbor
    while let Some(v) = (0..adj.len()).find(|&v| adj[v].len() == 1) {
        if k == 0 {
            *taken = mark;
            return false;
        }
        let u = *adj[v].iter().next().expect("degree one");
        take(&mut adj, u);
        taken.insert(u);
        k -= 1;
    }
    let Some(v) = (0..adj.len()).max_by_key(|&v| (adj[v].len(), std::cmp::Reverse(v))) else {
        return true;
    };
    let d = adj[v].len();
    if d == 0 {
        return true;
    }
    let edges: usize = adj.iter().map(BTreeSet::len).sum::<usize>() / 2;
    if k == 0 || edges > k * d {
        *taken = mark;
        return false;
    }
    let before = taken.clone();
    let mut with_v = adj.clone();
    take(&mut with_v, v);
    taken.insert(v);
    if branch(with_v, k - 1, taken) {
        return true;
    }
    *taken = before;
    if d <= k {
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        for &u in &nb {
            take(&mut adj, u);
            taken.insert(u);
        }
        if branch(adj, k - d, taken) {
            return true;
        }
    }
    *taken = mark;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn cycle_thresholds() {
        assert!(!vc_decide_branch(&cycle(4), 1));
        assert!(vc_decide_branch(&cycle(4), 2));
        assert!(vc_decide_branch(&Graph::empty(3), 0));
    }

    #[test]
    fn witness_covers() {
        for (g, k) in [(wheel(6), 4), (complete(5), 4), (star(7), 1), (path(9), 4)] {
            let s = vc_branch(&g, k).expect("cover exists");
            assert!(s.len() <= k);
            assert!(g.is_vertex_cover(&s));
            assert!(vc_branch(&g, k - 1).is_none());
        }
    }
}
