//! Dominating set machinery: annotated instances, the `Γ_k` grid, the
//! apex gadget, blue-white dominating set with its pendant reduction, and
//! the approximation scheme over H-tree decompositions.

use std::collections::BTreeMap;

use crate::bucket_ocean::{at_most, ApproxResult, Case, Stats};
use crate::decomp::{htd_to_td, project_htd, tree_decomposition_for, HTreeDecomposition, TreeDecomposition};
use crate::error::{check_eps, Error, Result};
use crate::graph::{Graph, Vertex, VertexMap, VertexSet};
use crate::problem::Solution;
use crate::solvers::td_dp_ds;

/// Dominating set instance where vertices of `dominated` need no domination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedDsInstance {
    pub graph: Graph,
    pub dominated: VertexSet,
}

/// Removes the edges inside `D`; they never help dominate anything that
/// needs domination.
pub fn annotate_normalize(g: &Graph, d: &VertexSet) -> Result<AnnotatedDsInstance> {
    g.check_set(d)?;
    let edges = g.edges().filter(|(u, v)| !(d.contains(u) && d.contains(v)));
    Ok(AnnotatedDsInstance {
        graph: Graph::from_edges(g.n(), edges)?,
        dominated: d.clone(),
    })
}

/// Contracts `uv`; the merged vertex needs domination.
pub fn contract_annotated(inst: &AnnotatedDsInstance, u: Vertex, v: Vertex) -> Result<AnnotatedDsInstance> {
    let (graph, map) = inst.graph.contract_edge(u, v)?;
    let dominated = inst
        .dominated
        .iter()
        .filter(|&&w| w != u && w != v)
        .map(|&w| map[w])
        .collect();
    Ok(AnnotatedDsInstance { graph, dominated })
}

/// `Γ_k`: the `k × k` grid with one diagonal per cell and the corner
/// `(k, k)` joined to every border vertex. Vertex `(x, y)`, `1 ≤ x, y ≤ k`,
/// gets index `(x − 1)·k + y − 1`.
pub fn gamma_grid(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::Unsupported(format!("gamma grid needs k >= 2, got {k}")));
    }
    let id = |x: usize, y: usize| (x - 1) * k + y - 1;
    let mut edges = Vec::new();
    for x in 1..=k {
        for y in 1..=k {
            if x < k {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y < k {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if x < k && y < k {
                edges.push((id(x + 1, y), id(x, y + 1)));
            }
            let border = x == 1 || y == 1 || x == k || y == k;
            if border && (x, y) != (k, k) {
                edges.push((id(k, k), id(x, y)));
            }
        }
    }
    Graph::from_edges(k * k, edges)
}

/// Closed-form edge count of [`gamma_grid`].
pub fn gamma_edge_count(k: usize) -> usize {
    2 * k * (k - 1) + (k - 1) * (k - 1) + 4 * k - 7
}

/// `G[V_t]` plus a new vertex `v*` adjacent to `R_t`. Returns the gadget,
/// the map from `V_t`, and `v*` (the last vertex).
pub fn ds_gadget_graph(g: &Graph, vt: &VertexSet, rt: &VertexSet) -> Result<(Graph, VertexMap, Vertex)> {
    if !rt.is_subset(vt) {
        return Err(Error::Input("R_t must be a subset of V_t".into()));
    }
    let (h, map) = g.induced_subgraph(vt)?;
    let (gadget, star) = h.with_new_vertex(&map.project(rt))?;
    Ok((gadget, map, star))
}

/// Dominating set that must contain `blue`, within budget `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BwdsInstance {
    pub graph: Graph,
    pub blue: VertexSet,
    pub k: usize,
}

impl BwdsInstance {
    pub fn white(&self) -> VertexSet {
        self.graph.vertices().filter(|v| !self.blue.contains(v)).collect()
    }
}

/// Attaches `n²` pendant vertices to every blue vertex; the budget carries
/// over unchanged. Requires `k ≤ n`.
pub fn bwds_to_ds(inst: &BwdsInstance) -> Result<(Graph, usize)> {
    let g = &inst.graph;
    g.check_set(&inst.blue)?;
    let n = g.n();
    if inst.k > n {
        return Err(Error::Unsupported(format!("pendant reduction needs k <= n, got k = {} > {n}", inst.k)));
    }
    let pendants = n * n;
    let total = n + pendants * inst.blue.len();
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut next = n;
    for &b in &inst.blue {
        for _ in 0..pendants {
            edges.push((b, next));
            next += 1;
        }
    }
    Ok((Graph::from_edges(total, edges)?, inst.k))
}

/// Minimum dominating set containing `blue`, by the forced-set DP.
pub fn bwds_solve_exact(g: &Graph, blue: &VertexSet) -> Result<(usize, VertexSet)> {
    bwds_solve_exact_with(g, blue, &tree_decomposition_for(g))
}

pub fn bwds_solve_exact_with(g: &Graph, blue: &VertexSet, td: &TreeDecomposition) -> Result<(usize, VertexSet)> {
    let s = td_dp_ds(g, td, &VertexSet::new(), blue)?;
    Ok((s.len(), s))
}

/// Blue-white decision procedure `(graph, blue, k) -> yes/no`.
pub type BwdsDecider<'a> = dyn FnMut(&Graph, &VertexSet, usize) -> Result<bool> + 'a;

/// Witness from a decision procedure: the smallest yes-budget `k*` from
/// `|B|` upward, then vertices are forced one at a time while the answer at
/// `k*` stays yes.
pub fn bwds_extract(decide: &mut BwdsDecider<'_>, g: &Graph, blue: &VertexSet) -> Result<VertexSet> {
    g.check_set(blue)?;
    let k_star = (blue.len()..=g.n())
        .find_map(|k| match decide(g, blue, k) {
            Ok(true) => Some(Ok(k)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .transpose()?
        .ok_or_else(|| Error::OracleFault("no budget up to n accepted".into()))?;
    let mut s = blue.clone();
    for u in g.vertices() {
        if crate::problem::dominates(g, &s, &VertexSet::new()) || s.len() == k_star {
            break;
        }
        if s.contains(&u) {
            continue;
        }
        s.insert(u);
        if !decide(g, &s, k_star)? {
            s.remove(&u);
        }
    }
    if !crate::problem::dominates(g, &s, &VertexSet::new()) || s.len() > k_star {
        return Err(Error::OracleFault(format!("forcing stopped at {} vertices without domination", s.len())));
    }
    Ok(s)
}

/// Modulator scheme used per leaf: `(gadget, modulator, ε) -> result`.
pub type DsModScheme<'a> = dyn Fn(&Graph, &VertexSet, f64) -> Result<ApproxResult> + 'a;

/// Per-leaf record of the classification.
#[derive(Clone, Debug, PartialEq)]
pub struct DsLeaf {
    pub node: usize,
    pub solution: VertexSet,
    pub r_size: usize,
    pub good: bool,
}

/// Full trace of [`twh_fptas_ds`].
#[derive(Clone, Debug, PartialEq)]
pub struct DsTrace {
    pub result: ApproxResult,
    pub ell: usize,
    pub leaves: Vec<DsLeaf>,
    pub s1: VertexSet,
    pub s2: VertexSet,
    pub s_b: VertexSet,
}

/// Dominating set over an H-tree decomposition, `(1+ε)`-approximate.
/// Each leaf is solved through the apex gadget at `ε/4`; a leaf is good
/// when `ℓ ≤ (ε/29)·|S_t|`. Good leaves contribute `S_t ∪ R_t`; the rest is
/// finished exactly as blue-white dominating set with `R_t` of good leaves
/// blue.
pub fn twh_fptas_ds(g: &Graph, d: &HTreeDecomposition, eps: f64, mod_scheme: &DsModScheme<'_>) -> Result<DsTrace> {
    check_eps(eps)?;
    crate::decomp::validate_htd(g, d).map_err(|v| Error::Input(format!("invalid decomposition: {v}")))?;
    let all_base = (0..d.tree.len()).all(|t| d.non_base_part(t).is_empty());
    let mut stats = Stats::default();
    if all_base {
        // G is a disjoint union of base components
        let (_, s) = bwds_solve_exact(g, &VertexSet::new())?;
        stats.exact_calls = 1;
        return Ok(DsTrace {
            result: ApproxResult {
                solution: Solution::Vertices(s.clone()),
                case: Case::Bucket,
                eps_used: eps,
                stats,
            },
            ell: 0,
            leaves: Vec::new(),
            s1: VertexSet::new(),
            s2: VertexSet::new(),
            s_b: s,
        });
    }
    let ell = d.bag_bound();
    let mut leaves = Vec::new();
    for t in d.leaves() {
        let vt = d.bags[t].clone();
        let rt = d.non_base_part(t);
        let (gadget, map, star) = ds_gadget_graph(g, &vt, &rt)?;
        let r = mod_scheme(&gadget, &map.project(&rt), eps / 4.0)?;
        stats.base_calls += 1;
        let mut local = r.solution.vertices().cloned().unwrap_or_default();
        local.remove(&star);
        let st = map.lift(&local);
        stats.base_value += st.len();
        let good = at_most(29.0 * ell as f64, eps * st.len() as f64);
        leaves.push(DsLeaf {
            node: t,
            solution: st,
            r_size: rt.len(),
            good,
        });
    }
    let mut s1 = VertexSet::new();
    let mut s2 = VertexSet::new();
    let mut v_g = VertexSet::new();
    for leaf in leaves.iter().filter(|l| l.good) {
        s1.extend(leaf.solution.iter().copied());
        s2.extend(d.non_base_part(leaf.node));
        v_g.extend(d.base_part(leaf.node));
    }
    let f_set: VertexSet = g.vertices().filter(|v| !v_g.contains(v)).collect();
    let (f, fmap) = g.induced_subgraph(&f_set)?;
    let projected = project_htd(d, &f_set).relabel(&fmap);
    let mut per_leaf = BTreeMap::new();
    for t in projected.leaves() {
        let base = projected.base_part(t);
        if !base.is_empty() {
            let (h, _) = f.induced_subgraph(&base)?;
            per_leaf.insert(t, tree_decomposition_for(&h));
        }
    }
    let td = htd_to_td(&f, &projected, &per_leaf)?;
    stats.assembled_width = Some(td.width());
    stats.exact_calls = 1;
    let (_, sb_local) = bwds_solve_exact_with(&f, &fmap.project(&s2), &td)?;
    let s_b = fmap.lift(&sb_local);
    let mut out = s1.clone();
    out.extend(s2.iter().copied());
    out.extend(s_b.iter().copied());
    let case = if leaves.iter().any(|l| l.good) {
        Case::Ocean
    } else {
        Case::Bucket
    };
    Ok(DsTrace {
        result: ApproxResult {
            solution: Solution::Vertices(out),
            case,
            eps_used: eps,
            stats,
        },
        ell,
        leaves,
        s1,
        s2,
        s_b,
    })
}
