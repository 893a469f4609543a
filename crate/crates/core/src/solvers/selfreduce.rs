//! Turning decision procedures into witnesses by self-reduction.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::model::{partition_model, set_of, MinorModel, PackingSolution, PackingTuple};

/// Decision procedure `(graph, k) -> yes/no`.
pub type Decider<'a> = dyn FnMut(&Graph, usize) -> Result<bool> + 'a;

/// Finds a solution of size at most `k` for a hereditary vertex-deletion
/// problem using only `decide`. Tries each vertex in label order, keeping
/// its deletion whenever the residual stays a yes-instance, and stops once
/// `k` vertices are deleted. A final `decide(G − S, 0)` is needed only when
/// the scan runs out first; it also separates no-instances (nothing was
/// deleted) from an inconsistent oracle. At most `n + 1` oracle calls.
pub fn extract_vertex_deletion(decide: &mut Decider<'_>, g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    let mut s = VertexSet::new();
    for v in g.vertices() {
        if k == 0 {
            break;
        }
        s.insert(v);
        let (h, _) = g.remove_vertices(&s)?;
        if !decide(&h, k - s.len())? {
            s.remove(&v);
        } else if s.len() == k {
            // that call was decide(G - S, 0)
            return Ok(Some(s));
        }
    }
    let (rest, _) = g.remove_vertices(&s)?;
    match (decide(&rest, 0)?, s.is_empty()) {
        (true, _) => Ok(Some(s)),
        (false, true) => Ok(None),
        (false, false) => Err(Error::OracleFault(format!(
            "accepted {} deletions within budget {k} but the residual is not a yes-instance",
            s.len()
        ))),
    }
}

/// Oracle calls spent per phase by [`extract_packing_counted`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PackingCalls {
    pub vertex: usize,
    pub edge: usize,
    pub contraction: usize,
    /// Call made only when nothing was accepted, to tell a no-instance
    /// from a faulty oracle.
    pub confirm: usize,
}

impl PackingCalls {
    pub fn total(&self) -> usize {
        self.vertex + self.edge + self.contraction + self.confirm
    }
}

/// Finds `k` disjoint models of members of `patterns` using only `decide`
/// (does the graph hold `k` disjoint tuples?). Deletes vertices, then edges,
/// then contracts edges while the answer stays yes; the residual then has
/// exactly `k` components, each a copy of a pattern whose merged vertices are
/// the branch sets. Subgraph packing (`subgraphs`) skips contractions.
/// `Ok(None)` on no-instances.
pub fn extract_packing(
    decide: &mut Decider<'_>,
    g: &Graph,
    k: usize,
    patterns: &[Graph],
    subgraphs: bool,
) -> Result<Option<PackingSolution>> {
    Ok(extract_packing_counted(decide, g, k, patterns, subgraphs)?.0)
}

/// [`extract_packing`] with its oracle calls. On yes-instances with a
/// consistent oracle the total is at most `n + m` plus the contraction
/// calls, each vertex and edge being tried once. A contraction that failed
/// is never retried: after further contractions the same contraction yields
/// a minor of the graph that already failed.
pub fn extract_packing_counted(
    decide: &mut Decider<'_>,
    g: &Graph,
    k: usize,
    patterns: &[Graph],
    subgraphs: bool,
) -> Result<(Option<PackingSolution>, PackingCalls)> {
    let mut calls = PackingCalls::default();
    if k == 0 {
        return Ok((Some(PackingSolution::default()), calls));
    }
    // current graph plus, per current vertex, the original vertices merged in
    let mut cur = g.clone();
    let mut members: Vec<VertexSet> = g.vertices().map(|v| VertexSet::from([v])).collect();
    let mut accepted = false;

    let mut v = 0;
    while v < cur.n() {
        let (h, map) = cur.remove_vertices(&VertexSet::from([v]))?;
        calls.vertex += 1;
        if decide(&h, k)? {
            members = map.to_old.iter().map(|&o| members[o].clone()).collect();
            cur = h;
            accepted = true;
        } else {
            v += 1;
        }
    }
    for (a, b) in cur.edges().collect::<Vec<_>>() {
        let h = cur.delete_edge(a, b)?;
        calls.edge += 1;
        if decide(&h, k)? {
            cur = h;
            accepted = true;
        }
    }
    let comps = cur.components();
    if comps.len() != k {
        if !accepted {
            calls.confirm += 1;
            if !decide(g, k)? {
                return Ok((None, calls));
            }
        }
        return Err(Error::OracleFault(format!(
            "deletion-minimal residual has {} components, expected {k}",
            comps.len()
        )));
    }
    if !subgraphs {
        let mut failed: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
        'scan: loop {
            for (a, b) in cur.edges().collect::<Vec<_>>() {
                let tried = failed.iter().any(|&(x, y)| {
                    (members[a].contains(&x) && members[b].contains(&y))
                        || (members[a].contains(&y) && members[b].contains(&x))
                });
                if tried {
                    continue;
                }
                let (h, map) = cur.contract_edge(a, b)?;
                calls.contraction += 1;
                if decide(&h, k)? {
                    let mut merged = vec![VertexSet::new(); h.n()];
                    for (old, &new) in map.iter().enumerate() {
                        merged[new].extend(members[old].iter().copied());
                    }
                    members = merged;
                    cur = h;
                    continue 'scan;
                }
                let x = *members[a].iter().next().expect("nonempty");
                let y = *members[b].iter().next().expect("nonempty");
                failed.insert((x, y));
            }
            break;
        }
    }
    let mut out = PackingSolution::default();
    for comp in cur.components() {
        let (h, map) = cur.induced_subgraph(&comp)?;
        let tuple = if h.n() <= 64 {
            let masks = h.masks();
            let all = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
            patterns.iter().enumerate().find_map(|(i, p)| {
                if p.n() != h.n() {
                    return None;
                }
                partition_model(&masks, all, p).map(|parts| (i, parts))
            })
        } else {
            None
        };
        let Some((i, parts)) = tuple else {
            if !accepted {
                calls.confirm += 1;
                if !decide(g, k)? {
                    return Ok((None, calls));
                }
            }
            return Err(Error::OracleFault(format!(
                "residual component of {} vertices is not a pattern copy",
                h.n()
            )));
        };
        let branch_sets: Vec<VertexSet> = parts
            .into_iter()
            .map(|m| {
                set_of(m)
                    .into_iter()
                    .flat_map(|local| members[map.to_old[local]].iter().copied())
                    .collect()
            })
            .collect();
        out.tuples.push(PackingTuple {
            vertices: branch_sets.iter().flatten().copied().collect(),
            pattern: i,
            model: MinorModel {
                pattern: patterns[i].clone(),
                branch_sets,
            },
        });
    }
    out.normalize();
    Ok((Some(out), calls))
}
