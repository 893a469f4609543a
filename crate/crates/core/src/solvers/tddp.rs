//! Dynamic programming over tree decompositions for vertex cover,
//! independent set and dominating set with dominated and forced sets.

use std::collections::HashMap;

use crate::decomp::{validate_td, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::problem::{Problem, ProblemInstance, Solution};

/// Exact optimum of `inst` using the tree decomposition `td`.
pub fn td_dp_opt(inst: &ProblemInstance, td: &TreeDecomposition) -> Result<(usize, Solution)> {
    let kind = match &inst.problem {
        Problem::VertexCover => Kind::Vc,
        Problem::IndependentSet => Kind::Is,
        Problem::DominatingSet { dominated } => Kind::Ds {
            dominated: dominated.clone(),
            forced: VertexSet::new(),
        },
        Problem::BlueWhiteDominatingSet { blue } => Kind::Ds {
            dominated: VertexSet::new(),
            forced: blue.clone(),
        },
        p => return Err(Error::Unsupported(format!("no tree decomposition DP for {p}"))),
    };
    let s = run(&inst.graph, td, &kind)?;
    Ok((s.len(), Solution::Vertices(s)))
}

/// Minimum dominating set of the vertices outside `dominated` that contains
/// `forced`.
pub fn td_dp_ds(g: &Graph, td: &TreeDecomposition, dominated: &VertexSet, forced: &VertexSet) -> Result<VertexSet> {
    g.check_set(dominated)?;
    g.check_set(forced)?;
    run(
        g,
        td,
        &Kind::Ds {
            dominated: dominated.clone(),
            forced: forced.clone(),
        },
    )
}

enum Kind {
    Vc,
    Is,
    Ds { dominated: VertexSet, forced: VertexSet },
}

impl Kind {
    /// Cost of taking one vertex; independent set maximizes.
    fn unit(&self) -> i64 {
        match self {
            Kind::Is => -1,
            _ => 1,
        }
    }
}

enum Step {
    Leaf,
    Introduce(Vertex, usize),
    Forget(Vertex, usize),
    Join(usize, usize),
}

struct Nice {
    steps: Vec<Step>,
    bags: Vec<Vec<Vertex>>,
}

impl Nice {
    fn push(&mut self, step: Step, bag: Vec<Vertex>) -> usize {
        self.steps.push(step);
        self.bags.push(bag);
        self.steps.len() - 1
    }

    /// Chain of introduce/forget nodes turning `node`'s bag into `target`.
    fn morph(&mut self, mut node: usize, target: &[Vertex]) -> usize {
        let current = self.bags[node].clone();
        for &v in current.iter().filter(|v| target.binary_search(v).is_err()) {
            let bag: Vec<Vertex> = self.bags[node].iter().copied().filter(|&w| w != v).collect();
            node = self.push(Step::Forget(v, node), bag);
        }
        for &v in target.iter().filter(|v| current.binary_search(v).is_err()) {
            let mut bag = self.bags[node].clone();
            let pos = bag.binary_search(&v).unwrap_err();
            bag.insert(pos, v);
            node = self.push(Step::Introduce(v, node), bag);
        }
        node
    }

    fn from_td(td: &TreeDecomposition) -> (Nice, usize) {
        let mut nice = Nice {
            steps: Vec::new(),
            bags: Vec::new(),
        };
        let bags: Vec<Vec<Vertex>> = td.bags.iter().map(|b| b.iter().copied().collect()).collect();
        let mut top = vec![usize::MAX; td.tree.len()];
        for t in td.tree.preorder().into_iter().rev() {
            let kids: Vec<usize> = td.tree.children(t).iter().map(|&c| nice.morph(top[c], &bags[t])).collect();
            top[t] = match kids.split_first() {
                None => {
                    let leaf = nice.push(Step::Leaf, Vec::new());
                    nice.morph(leaf, &bags[t])
                }
                Some((&first, rest)) => rest
                    .iter()
                    .fold(first, |acc, &k| nice.push(Step::Join(acc, k), bags[t].clone())),
            };
        }
        let root = td.tree.roots()[0];
        let end = nice.morph(top[root], &[]);
        (nice, end)
    }
}

type State = (u64, u64);

#[derive(Clone, Copy)]
enum Back {
    None,
    One(State),
    Two(State, State),
}

fn insert_bit(m: u64, p: usize, b: bool) -> u64 {
    let low = m & ((1u64 << p) - 1);
    let high = (m >> p) << (p + 1);
    low | high | (u64::from(b) << p)
}

fn remove_bit(m: u64, p: usize) -> u64 {
    let low = m & ((1u64 << p) - 1);
    let high = (m >> (p + 1)) << p;
    low | high
}

fn run(g: &Graph, td: &TreeDecomposition, kind: &Kind) -> Result<VertexSet> {
    validate_td(g, td).map_err(|v| Error::Input(format!("invalid tree decomposition: {v}")))?;
    if g.n() == 0 {
        return Ok(VertexSet::new());
    }
    if td.width() >= 63 {
        return Err(Error::Unsupported(format!("width {} too large for the DP", td.width())));
    }
    let (nice, root) = Nice::from_td(td);
    let unit = kind.unit();
    let mut tables: Vec<HashMap<State, (i64, Back)>> = Vec::with_capacity(nice.steps.len());
    let offer = |table: &mut HashMap<State, (i64, Back)>, s: State, cost: i64, back: Back| {
        let e = table.entry(s).or_insert((i64::MAX, Back::None));
        if cost < e.0 {
            *e = (cost, back);
        }
    };
    for (i, step) in nice.steps.iter().enumerate() {
        let bag = &nice.bags[i];
        let mut table = HashMap::new();
        match *step {
            Step::Leaf => {
                table.insert((0, 0), (0, Back::None));
            }
            Step::Introduce(v, c) => {
                let p = bag.binary_search(&v).expect("introduced vertex in bag");
                let nb = bag
                    .iter()
                    .enumerate()
                    .filter(|&(_, &w)| g.has_edge(v, w))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j);
                for (&(ins, dom), &(cost, _)) in &tables[c] {
                    let back = Back::One((ins, dom));
                    let take = insert_bit(ins, p, true);
                    let skip = insert_bit(ins, p, false);
                    match kind {
                        Kind::Vc => {
                            offer(&mut table, (take, 0), cost + unit, back);
                            if nb & skip == nb {
                                offer(&mut table, (skip, 0), cost, back);
                            }
                        }
                        Kind::Is => {
                            if nb & take == 0 {
                                offer(&mut table, (take, 0), cost + unit, back);
                            }
                            offer(&mut table, (skip, 0), cost, back);
                        }
                        Kind::Ds { forced, .. } => {
                            let d_take = insert_bit(dom, p, true) | nb;
                            offer(&mut table, (take, d_take), cost + unit, back);
                            if !forced.contains(&v) {
                                let d_skip = insert_bit(dom, p, nb & skip != 0);
                                offer(&mut table, (skip, d_skip), cost, back);
                            }
                        }
                    }
                }
            }
            Step::Forget(v, c) => {
                let p = nice.bags[c].binary_search(&v).expect("forgotten vertex in child bag");
                for (&(ins, dom), &(cost, _)) in &tables[c] {
                    if let Kind::Ds { dominated, .. } = kind {
                        let ok = (ins | dom) >> p & 1 == 1 || dominated.contains(&v);
                        if !ok {
                            continue;
                        }
                    }
                    let s = (remove_bit(ins, p), remove_bit(dom, p));
                    offer(&mut table, s, cost, Back::One((ins, dom)));
                }
            }
            Step::Join(a, b) => {
                let mut by_in: HashMap<u64, Vec<(u64, i64)>> = HashMap::new();
                for (&(ins, dom), &(cost, _)) in &tables[b] {
                    by_in.entry(ins).or_default().push((dom, cost));
                }
                for (&(ins, d1), &(c1, _)) in &tables[a] {
                    let shared = unit * i64::from(ins.count_ones());
                    for &(d2, c2) in by_in.get(&ins).map(Vec::as_slice).unwrap_or(&[]) {
                        offer(&mut table, (ins, d1 | d2), c1 + c2 - shared, Back::Two((ins, d1), (ins, d2)));
                    }
                }
            }
        }
        tables.push(table);
    }
    if !tables[root].contains_key(&(0, 0)) {
        return Err(Error::Infeasible("no feasible solution".into()));
    }
    // walk back from the root collecting introduced vertices taken
    let mut chosen = VertexSet::new();
    let mut stack = vec![(root, (0u64, 0u64))];
    while let Some((node, state)) = stack.pop() {
        let (_, back) = tables[node][&state];
        match (&nice.steps[node], back) {
            (Step::Introduce(v, c), Back::One(s)) => {
                let p = nice.bags[node].binary_search(v).expect("in bag");
                if state.0 >> p & 1 == 1 {
                    chosen.insert(*v);
                }
                stack.push((*c, s));
            }
            (Step::Forget(_, c), Back::One(s)) => stack.push((*c, s)),
            (Step::Join(a, b), Back::Two(sa, sb)) => {
                stack.push((*a, sa));
                stack.push((*b, sb));
            }
            _ => {}
        }
    }
    Ok(chosen)
}
