//! Hybrid tree decompositions: H-tree decompositions, H-elimination
//! decompositions and standard tree decompositions, with validators,
//! conversions and a small exact treewidth solver.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexMap, VertexSet};

/// Vertex limit up to which [`treewidth_exact`] runs.
pub const EXACT_TREEWIDTH_LIMIT: usize = 14;

/// Three-valued family membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

/// Base graph family `H`. All three kinds are hereditary and closed under
/// disjoint union.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyPredicate {
    Edgeless,
    Forests,
    TwAtMost(usize),
}

impl fmt::Display for FamilyPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyPredicate::Edgeless => f.write_str("EDGELESS"),
            FamilyPredicate::Forests => f.write_str("FORESTS"),
            FamilyPredicate::TwAtMost(w) => write!(f, "TW {w}"),
        }
    }
}

impl FamilyPredicate {
    pub fn membership(&self, g: &Graph) -> Membership {
        let yes = |b: bool| if b { Membership::Yes } else { Membership::No };
        match *self {
            FamilyPredicate::Edgeless => yes(g.is_edgeless()),
            FamilyPredicate::Forests => yes(g.is_forest()),
            FamilyPredicate::TwAtMost(0) => yes(g.is_edgeless()),
            FamilyPredicate::TwAtMost(1) => yes(g.is_forest()),
            FamilyPredicate::TwAtMost(2) => yes(is_series_parallel(g)),
            FamilyPredicate::TwAtMost(w) => {
                let mut result = Membership::Yes;
                for comp in g.components() {
                    let (h, _) = g.induced_subgraph(&comp).expect("component");
                    match tw_at_most(&h, w) {
                        Membership::Yes => {}
                        Membership::No => return Membership::No,
                        Membership::Unknown => result = Membership::Unknown,
                    }
                }
                result
            }
        }
    }

    /// Strict membership; an undecided answer counts as "not a member".
    pub fn contains(&self, g: &Graph) -> bool {
        self.membership(g) == Membership::Yes
    }

    /// Treewidth bound every member obeys.
    pub fn treewidth_bound(&self) -> usize {
        match *self {
            FamilyPredicate::Edgeless => 0,
            FamilyPredicate::Forests => 1,
            FamilyPredicate::TwAtMost(w) => w,
        }
    }
}

fn tw_at_most(h: &Graph, w: usize) -> Membership {
    if h.n() <= w + 1 {
        return Membership::Yes;
    }
    if h.n() <= EXACT_TREEWIDTH_LIMIT {
        let (tw, _) = treewidth_exact(h).expect("within limit");
        return if tw <= w { Membership::Yes } else { Membership::No };
    }
    if treewidth_heuristic(h).width() <= w {
        Membership::Yes
    } else if treewidth_lower_bound(h) > w {
        Membership::No
    } else {
        Membership::Unknown
    }
}

/// Treewidth at most two, decided by series-parallel reduction: strip
/// vertices of degree at most one and suppress degree-two vertices; the graph
/// reduces to nothing iff it has no `K4` minor.
pub fn is_series_parallel(g: &Graph) -> bool {
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; g.n()];
    let mut stack: Vec<Vertex> = g.vertices().collect();
    while let Some(v) = stack.pop() {
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        alive[v] = false;
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        for &u in &nb {
            adj[u].remove(&v);
        }
        if nb.len() == 2 {
            adj[nb[0]].insert(nb[1]);
            adj[nb[1]].insert(nb[0]);
        }
        adj[v].clear();
        stack.extend(nb);
    }
    alive.iter().all(|a| !a)
}

/// Rooted forest over nodes `0..len`, stored as parent pointers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Forest {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Forest {
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == v {
                    return Err(Error::Input(format!("node {v} has invalid parent {p}")));
                }
                children[p].push(v);
            }
        }
        let f = Forest { parent, children };
        // every node must reach a root
        for v in 0..n {
            let mut cur = v;
            let mut steps = 0;
            while let Some(p) = f.parent[cur] {
                cur = p;
                steps += 1;
                if steps > n {
                    return Err(Error::Input("parent pointers contain a cycle".into()));
                }
            }
        }
        Ok(f)
    }

    /// Single rooted tree from undirected edges, rooted at `root`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], root: usize) -> Result<Self> {
        if n == 0 {
            return Ok(Forest::default());
        }
        if edges.len() + 1 != n || root >= n {
            return Err(Error::Input(format!("{} edges cannot form a tree on {n} nodes", edges.len())));
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Input(format!("tree edge ({a}, {b}) out of range")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Input("tree edges do not connect all nodes".into()));
        }
        Forest::from_parents(parent)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.is_leaf(v)).collect()
    }

    /// Edges as `(parent, child)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    pub fn depth_of(&self, v: usize) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            d += 1;
            cur = p;
        }
        d
    }

    /// Maximum number of edges on a root-to-leaf path.
    pub fn depth(&self) -> usize {
        (0..self.len()).map(|v| self.depth_of(v)).max().unwrap_or(0)
    }

    /// Preorder from the roots.
    pub fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack: Vec<usize> = self.roots().into_iter().rev().collect();
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    fn push(&mut self, parent: Option<usize>) -> usize {
        let id = self.parent.len();
        self.parent.push(parent);
        self.children.push(Vec::new());
        if let Some(p) = parent {
            self.children[p].push(id);
        }
        id
    }
}

/// Standard tree decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub tree: Forest,
    pub bags: Vec<VertexSet>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Maps bag contents through `f`.
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> TreeDecomposition {
        TreeDecomposition {
            tree: self.tree.clone(),
            bags: self.bags.iter().map(|b| b.iter().map(|&v| f(v)).collect()).collect(),
        }
    }

    pub fn single_bag(bag: VertexSet) -> Self {
        TreeDecomposition {
            tree: Forest::from_parents(vec![None]).expect("single node"),
            bags: vec![bag],
        }
    }
}

/// `(T, χ, L)` with a family for the leaf base components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTreeDecomposition {
    pub tree: Forest,
    pub bags: Vec<VertexSet>,
    pub base: VertexSet,
    pub family: FamilyPredicate,
}

/// `(T, χ, L)` over a rooted forest with singleton internal bags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HElimDecomposition {
    pub forest: Forest,
    pub bags: Vec<VertexSet>,
    pub base: VertexSet,
    pub family: FamilyPredicate,
}

/// First violated condition found by a validator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Structure(String),
    /// Nodes containing the vertex are empty or not connected.
    VertexSubtree(Vertex),
    EdgeNotCovered(Vertex, Vertex),
    /// Base vertex not in exactly one bag, or that bag is not a leaf.
    BasePlacement(Vertex),
    /// Leaf base component not (provably) in the family.
    LeafNotInFamily { node: usize, undecided: bool },
    /// Elimination decomposition: internal bag too large or holds base vertices.
    InternalBag(usize),
    /// Elimination decomposition: bags do not partition the vertex set.
    NotPartition(Vertex),
    /// Elimination decomposition: edge endpoints not in ancestor-descendant nodes.
    NotAncestral(Vertex, Vertex),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Structure(s) => write!(f, "malformed decomposition: {s}"),
            Violation::VertexSubtree(v) => write!(f, "condition 1: bags containing vertex {} do not form a nonempty subtree", v + 1),
            Violation::EdgeNotCovered(u, v) => write!(f, "condition 2: edge ({}, {}) is in no bag", u + 1, v + 1),
            Violation::BasePlacement(v) => write!(f, "condition 3: base vertex {} is not in exactly one leaf bag", v + 1),
            Violation::LeafNotInFamily { node, undecided } => {
                if *undecided {
                    write!(f, "condition 4: membership of leaf {} base component is undecided", node + 1)
                } else {
                    write!(f, "condition 4: leaf {} base component is not in the family", node + 1)
                }
            }
            Violation::InternalBag(t) => write!(f, "internal node {} has a bag that is not a single non-base vertex", t + 1),
            Violation::NotPartition(v) => write!(f, "vertex {} is not in exactly one bag", v + 1),
            Violation::NotAncestral(u, v) => write!(f, "edge ({}, {}) joins unrelated nodes", u + 1, v + 1),
        }
    }
}

fn check_shape(g: &Graph, tree: &Forest, bags: &[VertexSet], single_root: bool) -> std::result::Result<(), Violation> {
    if bags.len() != tree.len() {
        return Err(Violation::Structure(format!("{} bags for {} nodes", bags.len(), tree.len())));
    }
    if single_root && tree.roots().len() != 1 {
        return Err(Violation::Structure("tree must have exactly one root".into()));
    }
    for b in bags {
        if let Some(&v) = b.iter().next_back() {
            if v >= g.n() {
                return Err(Violation::Structure(format!("bag names vertex {} outside the graph", v + 1)));
            }
        }
    }
    Ok(())
}

fn check_subtrees_and_edges(g: &Graph, tree: &Forest, bags: &[VertexSet]) -> std::result::Result<(), Violation> {
    let mut tops = vec![0usize; g.n()];
    for t in 0..tree.len() {
        for &v in &bags[t] {
            let parent_has = tree.parent(t).is_some_and(|p| bags[p].contains(&v));
            if !parent_has {
                tops[v] += 1;
            }
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| tops[v] != 1) {
        return Err(Violation::VertexSubtree(v));
    }
    let mut covered: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    for b in bags {
        let items: Vec<Vertex> = b.iter().copied().collect();
        for (i, &u) in items.iter().enumerate() {
            for &v in &items[i + 1..] {
                if g.has_edge(u, v) {
                    covered.insert((u, v));
                }
            }
        }
    }
    if let Some((u, v)) = g.edges().find(|e| !covered.contains(e)) {
        return Err(Violation::EdgeNotCovered(u, v));
    }
    Ok(())
}

/// Validates a standard tree decomposition.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> std::result::Result<(), Violation> {
    if td.tree.is_empty() {
        return if g.n() == 0 {
            Ok(())
        } else {
            Err(Violation::VertexSubtree(0))
        };
    }
    check_shape(g, &td.tree, &td.bags, true)?;
    check_subtrees_and_edges(g, &td.tree, &td.bags)
}

/// Validates all four H-tree decomposition conditions, reporting the first
/// violated one.
pub fn validate_htd(g: &Graph, d: &HTreeDecomposition) -> std::result::Result<(), Violation> {
    if d.tree.is_empty() {
        return Err(Violation::Structure("decomposition has no nodes".into()));
    }
    check_shape(g, &d.tree, &d.bags, true)?;
    if let Some(&v) = d.base.iter().next_back() {
        if v >= g.n() {
            return Err(Violation::Structure(format!("base vertex {} outside the graph", v + 1)));
        }
    }
    check_subtrees_and_edges(g, &d.tree, &d.bags)?;
    for &v in &d.base {
        let holders: Vec<usize> = (0..d.tree.len()).filter(|&t| d.bags[t].contains(&v)).collect();
        if holders.len() != 1 || !d.tree.is_leaf(holders[0]) {
            return Err(Violation::BasePlacement(v));
        }
    }
    for t in d.tree.leaves() {
        let part = d.base_part(t);
        let (h, _) = g.induced_subgraph(&part).expect("checked range");
        match d.family.membership(&h) {
            Membership::Yes => {}
            m => {
                return Err(Violation::LeafNotInFamily {
                    node: t,
                    undecided: m == Membership::Unknown,
                })
            }
        }
    }
    Ok(())
}

impl HTreeDecomposition {
    /// `H_t = χ(t) ∩ L`
    pub fn base_part(&self, t: usize) -> VertexSet {
        self.bags[t].intersection(&self.base).copied().collect()
    }

    /// `R_t = χ(t) \ L`
    pub fn non_base_part(&self, t: usize) -> VertexSet {
        self.bags[t].difference(&self.base).copied().collect()
    }

    /// `max{0, max_t |χ(t) \ L| − 1}`
    pub fn width(&self) -> usize {
        (0..self.tree.len())
            .map(|t| self.bags[t].difference(&self.base).count())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// Bound on `|R_t|` for every node: `width + 1`.
    pub fn bag_bound(&self) -> usize {
        self.width() + 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.tree.leaves()
    }

    /// Maps vertices through `map` (e.g. into an induced subgraph); vertices
    /// without an image are dropped.
    pub fn relabel(&self, map: &VertexMap) -> HTreeDecomposition {
        let proj = |s: &VertexSet| map.project(s);
        HTreeDecomposition {
            tree: self.tree.clone(),
            bags: self.bags.iter().map(proj).collect(),
            base: proj(&self.base),
            family: self.family,
        }
    }
}

/// Width of an H-tree decomposition.
pub fn width(d: &HTreeDecomposition) -> usize {
    d.width()
}

/// Root bag `M`, one leaf per component `C` of `G − M` with bag `C ∪ M` and
/// base part `C`. With `M = ∅` the whole graph is a single leaf.
pub fn htd_from_modulator(g: &Graph, m: &VertexSet, family: FamilyPredicate) -> Result<HTreeDecomposition> {
    g.check_set(m)?;
    let rest: VertexSet = g.vertices().filter(|v| !m.contains(v)).collect();
    let comps = g.components_within(&rest);
    for c in &comps {
        let (h, _) = g.induced_subgraph(c)?;
        if !family.contains(&h) {
            return Err(Error::Precondition(format!(
                "component containing vertex {} of G - M is not in {family}",
                c.iter().next().map_or(0, |v| v + 1)
            )));
        }
    }
    if m.is_empty() {
        return Ok(HTreeDecomposition {
            tree: Forest::from_parents(vec![None])?,
            bags: vec![g.vertex_set()],
            base: g.vertex_set(),
            family,
        });
    }
    let mut parents = vec![None];
    let mut bags = vec![m.clone()];
    for c in &comps {
        parents.push(Some(0));
        bags.push(c.union(m).copied().collect());
    }
    Ok(HTreeDecomposition {
        tree: Forest::from_parents(parents)?,
        bags,
        base: rest,
        family,
    })
}

/// Validates an H-elimination decomposition.
pub fn validate_helim(g: &Graph, d: &HElimDecomposition) -> std::result::Result<(), Violation> {
    check_shape(g, &d.forest, &d.bags, false)?;
    let mut owner = vec![usize::MAX; g.n()];
    for t in 0..d.forest.len() {
        for &v in &d.bags[t] {
            if owner[v] != usize::MAX {
                return Err(Violation::NotPartition(v));
            }
            owner[v] = t;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| owner[v] == usize::MAX) {
        return Err(Violation::NotPartition(v));
    }
    for t in 0..d.forest.len() {
        let bag = &d.bags[t];
        if d.forest.is_leaf(t) {
            if !bag.is_subset(&d.base) {
                return Err(Violation::InternalBag(t));
            }
            let (h, _) = g.induced_subgraph(bag).expect("checked range");
            match d.family.membership(&h) {
                Membership::Yes => {}
                m => {
                    return Err(Violation::LeafNotInFamily {
                        node: t,
                        undecided: m == Membership::Unknown,
                    })
                }
            }
        } else if bag.len() > 1 || !bag.is_disjoint(&d.base) {
            return Err(Violation::InternalBag(t));
        }
    }
    let ancestor = |a: usize, b: usize| {
        let mut cur = Some(b);
        while let Some(c) = cur {
            if c == a {
                return true;
            }
            cur = d.forest.parent(c);
        }
        false
    };
    for (u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if !(ancestor(a, b) || ancestor(b, a)) {
            return Err(Violation::NotAncestral(u, v));
        }
    }
    Ok(())
}

/// Each node's bag becomes its own bag plus all ancestors' bags. A virtual
/// root with an empty bag joins multiple trees.
pub fn htd_from_helim(g: &Graph, e: &HElimDecomposition) -> Result<HTreeDecomposition> {
    validate_helim(g, e).map_err(|v| Error::Input(format!("invalid elimination decomposition: {v}")))?;
    let roots = e.forest.roots();
    let virtual_root = roots.len() != 1;
    let offset = usize::from(virtual_root);
    let mut parents: Vec<Option<usize>> = Vec::with_capacity(e.forest.len() + offset);
    let mut bags: Vec<VertexSet> = Vec::with_capacity(e.forest.len() + offset);
    if virtual_root {
        parents.push(None);
        bags.push(VertexSet::new());
    }
    for t in 0..e.forest.len() {
        let p = match e.forest.parent(t) {
            Some(p) => Some(p + offset),
            None if virtual_root => Some(0),
            None => None,
        };
        parents.push(p);
        let mut bag = e.bags[t].clone();
        let mut cur = e.forest.parent(t);
        while let Some(a) = cur {
            bag.extend(e.bags[a].iter().copied());
            cur = e.forest.parent(a);
        }
        bags.push(bag);
    }
    Ok(HTreeDecomposition {
        tree: Forest::from_parents(parents)?,
        bags,
        base: e.base.clone(),
        family: e.family,
    })
}

/// Restriction to `G[W]`, keeping original labels and the tree shape.
pub fn project_htd(d: &HTreeDecomposition, w: &VertexSet) -> HTreeDecomposition {
    HTreeDecomposition {
        tree: d.tree.clone(),
        bags: d.bags.iter().map(|b| b.intersection(w).copied().collect()).collect(),
        base: d.base.intersection(w).copied().collect(),
        family: d.family,
    }
}

/// Builds a standard tree decomposition of `G` by hanging, under each leaf
/// `t`, the given tree decomposition of `G[H_t]` (in the labels of
/// `g.induced_subgraph(H_t)`) with `R_t` added to every one of its bags.
/// Every node of `d` keeps only its non-base part.
pub fn htd_to_td(
    g: &Graph,
    d: &HTreeDecomposition,
    per_leaf: &BTreeMap<usize, TreeDecomposition>,
) -> Result<TreeDecomposition> {
    let mut tree = Forest::default();
    let mut bags: Vec<VertexSet> = Vec::new();
    let mut id = vec![usize::MAX; d.tree.len()];
    for t in d.tree.preorder() {
        let parent = d.tree.parent(t).map(|p| id[p]);
        id[t] = tree.push(parent);
        bags.push(d.non_base_part(t));
    }
    for t in d.tree.leaves() {
        let base = d.base_part(t);
        if base.is_empty() {
            continue;
        }
        let (h, map) = g.induced_subgraph(&base)?;
        let leaf_td = per_leaf
            .get(&t)
            .ok_or_else(|| Error::Input(format!("missing tree decomposition for leaf {}", t + 1)))?;
        validate_td(&h, leaf_td)
            .map_err(|v| Error::Input(format!("leaf {} decomposition invalid: {v}", t + 1)))?;
        let r = d.non_base_part(t);
        let mut local = vec![usize::MAX; leaf_td.tree.len()];
        for s in leaf_td.tree.preorder() {
            let parent = leaf_td.tree.parent(s).map(|p| local[p]).unwrap_or(id[t]);
            local[s] = tree.push(Some(parent));
            let mut bag: VertexSet = leaf_td.bags[s].iter().map(|&v| map.to_old[v]).collect();
            bag.extend(r.iter().copied());
            bags.push(bag);
        }
    }
    Ok(TreeDecomposition { tree, bags })
}

/// Tree decomposition from an elimination ordering: each vertex's bag is
/// itself plus its later neighbors in the filled graph.
pub fn td_from_elimination(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition::single_bag(VertexSet::new());
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut bags = vec![VertexSet::new(); n];
    let mut parent_vertex = vec![None; n];
    for &v in order {
        let later: Vec<Vertex> = adj[v].iter().copied().filter(|&w| pos[w] > pos[v]).collect();
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        parent_vertex[v] = later.iter().copied().min_by_key(|&w| pos[w]);
        let mut bag: VertexSet = later.into_iter().collect();
        bag.insert(v);
        bags[v] = bag;
    }
    // node i holds the bag of order[i]; trees of different components hang
    // under the last eliminated vertex
    let last = order[n - 1];
    let parents: Vec<Option<usize>> = order
        .iter()
        .map(|&v| {
            if v == last {
                None
            } else {
                Some(pos[parent_vertex[v].unwrap_or(last)])
            }
        })
        .collect();
    TreeDecomposition {
        tree: Forest::from_parents(parents).expect("elimination tree"),
        bags: order.iter().map(|&v| bags[v].clone()).collect(),
    }
}

/// Exact treewidth by dynamic programming over eliminated vertex subsets.
pub fn treewidth_exact(g: &Graph) -> Result<(usize, TreeDecomposition)> {
    let n = g.n();
    if n > EXACT_TREEWIDTH_LIMIT {
        return Err(Error::Unsupported(format!(
            "exact treewidth limited to {EXACT_TREEWIDTH_LIMIT} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok((0, TreeDecomposition::single_bag(VertexSet::new())));
    }
    let masks = g.masks();
    let full = (1usize << n) - 1;
    // q(s, v): vertices outside s ∪ {v} reachable from v through s
    let q = |s: usize, v: usize| -> u32 {
        let s = s as u64;
        let mut seen = 1u64 << v;
        let mut frontier = 1u64 << v;
        let mut out = 0u64;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = masks[x] & !seen;
            seen |= nb;
            out |= nb & !s;
            frontier |= nb & s;
        }
        out.count_ones()
    };
    let mut best = vec![u32::MAX; full + 1];
    let mut choice = vec![0u8; full + 1];
    best[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cand = best[prev].max(q(prev, v));
            if cand < best[s] {
                best[s] = cand;
                choice[s] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    let td = td_from_elimination(g, &order);
    Ok((best[full] as usize, td))
}

/// Greedy min-degree elimination; always valid, width is an upper bound.
pub fn treewidth_heuristic(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .expect("vertex left");
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        for (i, &a) in nb.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        if let Some(&last) = nb.last() {
            adj[last].remove(&v);
        }
        alive[v] = false;
        order.push(v);
    }
    td_from_elimination(g, &order)
}

/// Minor-min-width lower bound: repeatedly contract a minimum-degree vertex
/// into its lowest-degree neighbor, recording the largest minimum degree seen.
pub fn treewidth_lower_bound(g: &Graph) -> usize {
    let mut adj: Vec<BTreeSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: BTreeSet<Vertex> = g.vertices().collect();
    let mut lb = 0;
    while alive.len() > 1 {
        let v = *alive.iter().min_by_key(|&&v| (adj[v].len(), v)).expect("nonempty");
        lb = lb.max(adj[v].len());
        alive.remove(&v);
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        match nb.iter().copied().min_by_key(|&u| (adj[u].len(), u)) {
            None => {}
            Some(u) => {
                for &w in &nb {
                    adj[w].remove(&v);
                    if w != u {
                        adj[w].insert(u);
                        adj[u].insert(w);
                    }
                }
            }
        }
        adj[v].clear();
    }
    lb
}

/// Best-effort tree decomposition: exact per small component, greedy
/// otherwise, components glued under one root.
pub fn tree_decomposition_for(g: &Graph) -> TreeDecomposition {
    let comps = g.components();
    if comps.is_empty() {
        return TreeDecomposition::single_bag(VertexSet::new());
    }
    let mut tree = Forest::default();
    let mut bags = Vec::new();
    let root = tree.push(None);
    bags.push(VertexSet::new());
    for c in comps {
        let (h, map) = g.induced_subgraph(&c).expect("component");
        let td = if h.n() <= EXACT_TREEWIDTH_LIMIT {
            treewidth_exact(&h).expect("within limit").1
        } else {
            treewidth_heuristic(&h)
        };
        let mut local = vec![usize::MAX; td.tree.len()];
        for s in td.tree.preorder() {
            let parent = td.tree.parent(s).map(|p| local[p]).unwrap_or(root);
            local[s] = tree.push(Some(parent));
            bags.push(td.bags[s].iter().map(|&v| map.to_old[v]).collect());
        }
    }
    TreeDecomposition { tree, bags }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn treewidth_examples() {
        for t in [path(2), path(7), star(5)] {
            let (w, td) = treewidth_exact(&t).unwrap();
            assert_eq!(w, 1);
            assert!(validate_td(&t, &td).is_ok());
        }
        assert_eq!(treewidth_exact(&complete(4)).unwrap().0, 3);
        assert_eq!(treewidth_exact(&cycle(4)).unwrap().0, 2);
        assert!(matches!(treewidth_exact(&path(15)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn single_node_all_base() {
        let g = cycle(5);
        let d = htd_from_modulator(&g, &VertexSet::new(), FamilyPredicate::TwAtMost(2)).unwrap();
        assert_eq!(d.tree.len(), 1);
        assert!(validate_htd(&g, &d).is_ok());
        assert_eq!(d.width(), 0);
    }

    #[test]
    fn base_vertex_in_two_leaves() {
        let g = path(3);
        let d = HTreeDecomposition {
            tree: Forest::from_parents(vec![None, Some(0), Some(0)]).unwrap(),
            bags: vec![set(&[1]), set(&[0, 1]), set(&[1, 2, 0])],
            base: set(&[0, 2]),
            family: FamilyPredicate::Edgeless,
        };
        assert_eq!(validate_htd(&g, &d), Err(Violation::VertexSubtree(0)));
        // connected occurrence but still two bags: parent and leaf
        let d2 = HTreeDecomposition {
            tree: Forest::from_parents(vec![None, Some(0)]).unwrap(),
            bags: vec![set(&[0, 1]), set(&[0, 1, 2])],
            base: set(&[0, 2]),
            family: FamilyPredicate::Edgeless,
        };
        assert_eq!(validate_htd(&g, &d2), Err(Violation::BasePlacement(0)));
    }

    #[test]
    fn width_formula() {
        let g = complete(5);
        let d = HTreeDecomposition {
            tree: Forest::from_parents(vec![None]).unwrap(),
            bags: vec![g.vertex_set()],
            base: set(&[4]),
            family: FamilyPredicate::Edgeless,
        };
        assert_eq!(d.width(), 3);
        assert!(validate_htd(&g, &d).is_ok());
    }

    #[test]
    fn modulator_decompositions() {
        let w4 = wheel(4);
        let hub = set(&[4]);
        let d = htd_from_modulator(&w4, &hub, FamilyPredicate::TwAtMost(2)).unwrap();
        assert_eq!(d.tree.len(), 2);
        assert_eq!(d.width(), 0);
        assert!(validate_htd(&w4, &d).is_ok());

        let g = path(5);
        let d = htd_from_modulator(&g, &set(&[2]), FamilyPredicate::Forests).unwrap();
        assert_eq!(d.leaves().len(), 2);

        let m = set(&[0, 1, 2]);
        let d = htd_from_modulator(&complete(6), &m, FamilyPredicate::TwAtMost(2)).unwrap();
        assert_eq!(d.width(), 2);

        assert!(matches!(
            htd_from_modulator(&complete(4), &VertexSet::new(), FamilyPredicate::Forests),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn elimination_chain_width() {
        // chain of d singleton internal nodes above one leaf holding the rest
        let d = 3;
        let g = complete(5);
        let mut parents: Vec<Option<usize>> = vec![None];
        for i in 1..=d {
            parents.push(Some(i - 1));
        }
        let e = HElimDecomposition {
            forest: Forest::from_parents(parents).unwrap(),
            bags: vec![set(&[0]), set(&[1]), set(&[2]), set(&[3, 4])],
            base: set(&[3, 4]),
            family: FamilyPredicate::TwAtMost(1),
        };
        assert!(validate_helim(&g, &e).is_ok());
        assert_eq!(e.forest.depth(), d);
        let h = htd_from_helim(&g, &e).unwrap();
        assert!(validate_htd(&g, &h).is_ok());
        assert_eq!(h.width(), d - 1);
        assert!(h.width() <= e.forest.depth());
    }

    #[test]
    fn depth_zero_elimination() {
        let g = path(4);
        let e = HElimDecomposition {
            forest: Forest::from_parents(vec![None]).unwrap(),
            bags: vec![g.vertex_set()],
            base: g.vertex_set(),
            family: FamilyPredicate::Forests,
        };
        assert_eq!(htd_from_helim(&g, &e).unwrap().width(), 0);
    }

    #[test]
    fn projection_examples() {
        let g = wheel(4);
        let d = htd_from_modulator(&g, &set(&[4]), FamilyPredicate::TwAtMost(2)).unwrap();
        assert_eq!(project_htd(&d, &g.vertex_set()), d);
        let empty = project_htd(&d, &VertexSet::new());
        assert!(empty.bags.iter().all(|b| b.is_empty()));
        assert_eq!(empty.width(), 0);
    }

    #[test]
    fn htd_to_td_path_leaf() {
        // one leaf with |R_t| = 3 over a path base component
        let mut edges: Vec<(usize, usize)> = (0..4).map(|i| (i, i + 1)).collect();
        for r in 5..8 {
            edges.push((r, 0));
            edges.push((r, 4));
        }
        let g = Graph::from_edges(8, edges).unwrap();
        let d = HTreeDecomposition {
            tree: Forest::from_parents(vec![None]).unwrap(),
            bags: vec![g.vertex_set()],
            base: set(&[0, 1, 2, 3, 4]),
            family: FamilyPredicate::Forests,
        };
        assert!(validate_htd(&g, &d).is_ok());
        let (h, _) = g.induced_subgraph(&d.base).unwrap();
        let (_, leaf_td) = treewidth_exact(&h).unwrap();
        let per_leaf = BTreeMap::from([(0, leaf_td)]);
        let td = htd_to_td(&g, &d, &per_leaf).unwrap();
        assert!(validate_td(&g, &td).is_ok());
        assert!(td.width() <= 4);
    }

    #[test]
    fn htd_to_td_requires_leaf_decompositions() {
        let g = path(3);
        let d = htd_from_modulator(&g, &VertexSet::new(), FamilyPredicate::Forests).unwrap();
        assert!(matches!(htd_to_td(&g, &d, &BTreeMap::new()), Err(Error::Input(_))));
        let no_base = HTreeDecomposition {
            tree: Forest::from_parents(vec![None]).unwrap(),
            bags: vec![g.vertex_set()],
            base: VertexSet::new(),
            family: FamilyPredicate::Edgeless,
        };
        let td = htd_to_td(&g, &no_base, &BTreeMap::new()).unwrap();
        assert_eq!(td.width(), no_base.width());
    }

    #[test]
    fn series_parallel_agrees_with_exact() {
        assert!(is_series_parallel(&cycle(6)));
        assert!(!is_series_parallel(&wheel(3).disjoint_union(&path(2))));
        assert!(!is_series_parallel(&complete(4)));
        assert!(is_series_parallel(&Graph::empty(3)));
    }

    #[test]
    fn membership_in_families() {
        assert!(FamilyPredicate::Edgeless.contains(&Graph::empty(4)));
        assert!(!FamilyPredicate::Edgeless.contains(&path(2)));
        assert!(FamilyPredicate::Forests.contains(&path(9)));
        assert!(!FamilyPredicate::TwAtMost(2).contains(&complete(4)));
        assert!(FamilyPredicate::TwAtMost(3).contains(&complete(4)));
        assert_eq!(FamilyPredicate::TwAtMost(3).membership(&complete(5)), Membership::No);
    }

    #[test]
    fn lower_bound_and_heuristic_bracket_exact() {
        for g in [cycle(8), complete(5), wheel(6), path(6)] {
            let (w, _) = treewidth_exact(&g).unwrap();
            assert!(treewidth_lower_bound(&g) <= w);
            let td = treewidth_heuristic(&g);
            assert!(validate_td(&g, &td).is_ok());
            assert!(td.width() >= w);
        }
    }
}
