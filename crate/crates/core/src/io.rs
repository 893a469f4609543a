//! Text formats. Vertices and decomposition nodes are 1-based in files and
//! 0-based in memory.
//!
//! * graph: `p gr <n> <m>` then `e <u> <v>` per edge; `c` starts a comment.
//!   Annotation lines `blue`, `dominated`, `x` and `mod`, each followed by
//!   vertices, may follow.
//! * decomposition: `htd <nodes> <n>`, `b <node> <v…>`, `t <a> <b>`,
//!   `l <v…>`, `f <EDGELESS|FORESTS|TW> [w]`, rooted at node 1. A standard
//!   tree decomposition has an empty `l` and no `f`.
//! * elimination forest: `helim <nodes> <n>`, `b`, `l`, `f` as above and
//!   `t <parent> <child>`.
//! * patterns: graph blocks one after another, each opened by `p gr`.

use std::collections::BTreeMap;

use crate::decomp::{FamilyPredicate, Forest, HElimDecomposition, HTreeDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Input(format!("line {line}: {msg}"))
}

fn significant(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t: Vec<&str> = l.split_whitespace().collect();
        match t.first() {
            None => None,
            Some(&"c") | Some(&"#") => None,
            Some(_) => Some((i + 1, t)),
        }
    })
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| bad(line, format!("expected a number, got '{tok}'")))
}

/// 1-based label to a 0-based vertex below `n`.
fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v = number(line, tok)?;
    if v == 0 || v > n {
        return Err(bad(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn vertices(line: usize, toks: &[&str], n: usize) -> Result<VertexSet> {
    toks.iter().map(|t| vertex(line, t, n)).collect()
}

/// Vertex sets attached to a graph file.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Annotations {
    pub blue: Option<VertexSet>,
    pub dominated: Option<VertexSet>,
    pub x: Option<VertexSet>,
    pub modulator: Option<VertexSet>,
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    Ok(parse_graph_annotated(text)?.0)
}

pub fn parse_graph_annotated(text: &str) -> Result<(Graph, Annotations)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut ann = Annotations::default();
    for (line, t) in significant(text) {
        match t[0] {
            "p" => {
                if header.is_some() {
                    return Err(bad(line, "second header"));
                }
                if t.len() != 4 || t[1] != "gr" {
                    return Err(bad(line, "expected 'p gr <n> <m>'"));
                }
                header = Some((number(line, t[2])?, number(line, t[3])?));
            }
            kw => {
                let Some((n, _)) = header else {
                    return Err(bad(line, "content before the 'p gr' header"));
                };
                match kw {
                    "e" => {
                        if t.len() != 3 {
                            return Err(bad(line, "expected 'e <u> <v>'"));
                        }
                        edges.push((vertex(line, t[1], n)?, vertex(line, t[2], n)?));
                    }
                    "blue" | "dominated" | "x" | "mod" => {
                        let set = vertices(line, &t[1..], n)?;
                        let slot = match kw {
                            "blue" => &mut ann.blue,
                            "dominated" => &mut ann.dominated,
                            "x" => &mut ann.x,
                            _ => &mut ann.modulator,
                        };
                        slot.get_or_insert_with(VertexSet::new).extend(set);
                    }
                    other => return Err(bad(line, format!("unknown line type '{other}'"))),
                }
            }
        }
    }
    let Some((n, m)) = header else {
        return Err(Error::Input("missing 'p gr <n> <m>' header".into()));
    };
    let g = Graph::from_edges(n, edges)?;
    if g.m() != m {
        return Err(Error::Input(format!("header announces {m} edges, found {} distinct", g.m())));
    }
    Ok((g, ann))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p gr {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// `keyword v…` with 1-based labels.
pub fn write_vertex_line(keyword: &str, set: &VertexSet) -> String {
    let mut out = keyword.to_string();
    for v in set {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push('\n');
    out
}

/// Vertex set file: lines `mod v…` (or any single keyword) or bare labels.
pub fn parse_vertex_set(text: &str, n: usize) -> Result<VertexSet> {
    Ok(parse_modulator(text, n)?.0)
}

fn parse_family(line: usize, t: &[&str]) -> Result<FamilyPredicate> {
    match (t.get(1).copied(), t.get(2), t.len()) {
        (Some("EDGELESS"), None, 2) => Ok(FamilyPredicate::Edgeless),
        (Some("FORESTS"), None, 2) => Ok(FamilyPredicate::Forests),
        (Some("TW"), Some(w), 3) => Ok(FamilyPredicate::TwAtMost(number(line, w)?)),
        _ => Err(bad(line, "expected 'f EDGELESS', 'f FORESTS' or 'f TW <w>'")),
    }
}

/// Modulator file: vertex lines as in [`parse_vertex_set`] and an optional
/// `f` line naming the base family.
pub fn parse_modulator(text: &str, n: usize) -> Result<(VertexSet, Option<FamilyPredicate>)> {
    let mut out = VertexSet::new();
    let mut family = None;
    for (line, t) in significant(text) {
        if t[0] == "f" {
            family = Some(parse_family(line, &t)?);
            continue;
        }
        let start = usize::from(t[0].parse::<usize>().is_err());
        out.extend(vertices(line, &t[start..], n)?);
    }
    Ok((out, family))
}

pub fn write_modulator(m: &VertexSet, family: FamilyPredicate) -> String {
    format!("{}f {family}\n", write_vertex_line("mod", m))
}

/// Graph blocks one after another.
pub fn parse_patterns(text: &str) -> Result<Vec<Graph>> {
    let mut blocks: Vec<String> = Vec::new();
    for l in text.lines() {
        if l.split_whitespace().next() == Some("p") {
            blocks.push(String::new());
        }
        match blocks.last_mut() {
            Some(b) => {
                b.push_str(l);
                b.push('\n');
            }
            None if l.trim().is_empty() || l.trim_start().starts_with('c') => {}
            None => return Err(Error::Input("pattern file must start with a 'p gr' header".into())),
        }
    }
    if blocks.is_empty() {
        return Err(Error::Input("pattern file holds no graph".into()));
    }
    blocks.iter().map(|b| parse_graph(b)).collect()
}

pub fn write_patterns(patterns: &[Graph]) -> String {
    patterns.iter().map(write_graph).collect()
}

struct RawDecomposition {
    kind: String,
    nodes: usize,
    bags: Vec<VertexSet>,
    tree: Vec<(usize, usize)>,
    base: VertexSet,
    family: Option<FamilyPredicate>,
}

fn parse_raw(text: &str, n: usize) -> Result<RawDecomposition> {
    let mut raw: Option<RawDecomposition> = None;
    for (line, t) in significant(text) {
        if t[0] == "htd" || t[0] == "helim" {
            if raw.is_some() {
                return Err(bad(line, "second header"));
            }
            if t.len() != 3 {
                return Err(bad(line, format!("expected '{} <nodes> <n>'", t[0])));
            }
            let nodes = number(line, t[1])?;
            if number(line, t[2])? != n {
                return Err(bad(line, format!("decomposition is for {} vertices, graph has {n}", t[2])));
            }
            raw = Some(RawDecomposition {
                kind: t[0].to_string(),
                nodes,
                bags: vec![VertexSet::new(); nodes],
                tree: Vec::new(),
                base: VertexSet::new(),
                family: None,
            });
            continue;
        }
        let Some(r) = raw.as_mut() else {
            return Err(bad(line, "content before the header"));
        };
        let node = |tok: &str| -> Result<usize> {
            let x = number(line, tok)?;
            if x == 0 || x > r.nodes {
                return Err(bad(line, format!("node {x} outside 1..={}", r.nodes)));
            }
            Ok(x - 1)
        };
        match t[0] {
            "b" if t.len() >= 2 => {
                let x = node(t[1])?;
                let bag = vertices(line, &t[2..], n)?;
                r.bags[x].extend(bag);
            }
            "t" if t.len() == 3 => {
                let e = (node(t[1])?, node(t[2])?);
                r.tree.push(e);
            }
            "l" => r.base.extend(vertices(line, &t[1..], n)?),
            "f" => r.family = Some(parse_family(line, &t)?),
            other => return Err(bad(line, format!("malformed or unknown line '{other}'"))),
        }
    }
    raw.ok_or_else(|| Error::Input("missing decomposition header".into()))
}

fn expect_kind(raw: &RawDecomposition, kind: &str) -> Result<()> {
    if raw.kind != kind {
        return Err(Error::Input(format!("expected a '{kind}' file, found '{}'", raw.kind)));
    }
    Ok(())
}

/// Standard tree decomposition of a graph on `n` vertices; `l` must be empty.
pub fn parse_td(text: &str, n: usize) -> Result<TreeDecomposition> {
    let raw = parse_raw(text, n)?;
    expect_kind(&raw, "htd")?;
    if !raw.base.is_empty() {
        return Err(Error::Input("a standard tree decomposition has an empty 'l' line".into()));
    }
    Ok(TreeDecomposition {
        tree: Forest::from_edges(raw.nodes, &raw.tree, 0)?,
        bags: raw.bags,
    })
}

pub fn parse_htd(text: &str, n: usize) -> Result<HTreeDecomposition> {
    let raw = parse_raw(text, n)?;
    expect_kind(&raw, "htd")?;
    let family = raw
        .family
        .ok_or_else(|| Error::Input("H-tree decomposition needs an 'f' line".into()))?;
    Ok(HTreeDecomposition {
        tree: Forest::from_edges(raw.nodes, &raw.tree, 0)?,
        bags: raw.bags,
        base: raw.base,
        family,
    })
}

pub fn parse_helim(text: &str, n: usize) -> Result<HElimDecomposition> {
    let raw = parse_raw(text, n)?;
    expect_kind(&raw, "helim")?;
    let family = raw
        .family
        .ok_or_else(|| Error::Input("H-elimination decomposition needs an 'f' line".into()))?;
    let mut parent = vec![None; raw.nodes];
    for &(p, c) in &raw.tree {
        if parent[c].replace(p).is_some() {
            return Err(Error::Input(format!("node {} has two parents", c + 1)));
        }
    }
    Ok(HElimDecomposition {
        forest: Forest::from_parents(parent)?,
        bags: raw.bags,
        base: raw.base,
        family,
    })
}

/// Node ids in preorder so that the root becomes node 1.
fn numbering(tree: &Forest) -> BTreeMap<usize, usize> {
    tree.preorder().into_iter().enumerate().map(|(i, t)| (t, i + 1)).collect()
}

fn write_body(
    header: &str,
    n: usize,
    tree: &Forest,
    bags: &[VertexSet],
    base: &VertexSet,
    family: Option<FamilyPredicate>,
    directed: bool,
) -> String {
    let id = numbering(tree);
    let mut out = format!("{header} {} {n}\n", tree.len());
    let mut order: Vec<usize> = (0..tree.len()).collect();
    order.sort_by_key(|t| id[t]);
    for &t in &order {
        out.push_str(&write_vertex_line(&format!("b {}", id[&t]), &bags[t]));
    }
    let mut edges: Vec<(usize, usize)> = tree.edges().into_iter().map(|(p, c)| (id[&p], id[&c])).collect();
    edges.sort();
    for (p, c) in edges {
        if directed {
            out.push_str(&format!("t {p} {c}\n"));
        } else {
            out.push_str(&format!("t {} {}\n", p.min(c), p.max(c)));
        }
    }
    out.push_str(&write_vertex_line("l", base));
    if let Some(f) = family {
        out.push_str(&format!("f {f}\n"));
    }
    out
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    write_body("htd", n, &td.tree, &td.bags, &VertexSet::new(), None, false)
}

pub fn write_htd(d: &HTreeDecomposition, n: usize) -> String {
    write_body("htd", n, &d.tree, &d.bags, &d.base, Some(d.family), false)
}

pub fn write_helim(e: &HElimDecomposition, n: usize) -> String {
    write_body("helim", n, &e.forest, &e.bags, &e.base, Some(e.family), true)
}

/// Graph file with a `blue` line.
pub fn write_bwds(g: &Graph, blue: &VertexSet) -> String {
    let mut out = write_graph(g);
    out.push_str(&write_vertex_line("blue", blue));
    out
}

pub fn parse_bwds(text: &str) -> Result<(Graph, VertexSet)> {
    let (g, ann) = parse_graph_annotated(text)?;
    Ok((g, ann.blue.unwrap_or_default()))
}
