//! Witnesses from yes/no oracles, with the oracle calls counted.

use std::cell::Cell;

use hybridparam::graph::named::{complete, cycle, wheel};
use hybridparam::solvers::{brute_opt, extract_packing_counted, extract_vertex_deletion, vc_decide_branch};
use hybridparam::{Graph, Problem, ProblemInstance, Result};

fn main() -> Result<()> {
    let g = wheel(7);
    let calls = Cell::new(0);
    let mut decide = |h: &Graph, k: usize| {
        calls.set(calls.get() + 1);
        Ok(vc_decide_branch(h, k))
    };
    let s = extract_vertex_deletion(&mut decide, &g, 5)?.expect("cover of size 5");
    println!("vertex cover {s:?} using {} calls (n = {})", calls.get(), g.n());

    let host = cycle(5).disjoint_union(&complete(4));
    let patterns = vec![cycle(3)];
    let mut packs = |h: &Graph, k: usize| Ok(brute_opt(&ProblemInstance::new(h.clone(), Problem::CyclePacking)?)?.0 >= k);
    let (p, c) = extract_packing_counted(&mut packs, &host, 2, &patterns, false)?;
    for t in &p.expect("two disjoint cycles").tuples {
        println!("branch sets {:?}", t.model.branch_sets);
    }
    println!("calls: {c:?}, n + m = {}", host.n() + host.m());
    Ok(())
}
