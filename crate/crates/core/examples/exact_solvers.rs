//! Brute force against the tree decomposition DP on a random partial 3-tree.

use hybridparam::decomp::{td_from_elimination, treewidth_exact, validate_td};
use hybridparam::gen::random_partial_ktree;
use hybridparam::solvers::{brute_opt, td_dp_opt, vc_branch};
use hybridparam::{Problem, ProblemInstance, Result, VertexSet};

fn main() -> Result<()> {
    let g = random_partial_ktree(12, 3, 0.8, 7)?;
    let (tw, best) = treewidth_exact(&g)?;
    // any elimination order gives a valid, usually wider, decomposition
    let order: Vec<usize> = g.vertices().rev().collect();
    let td = td_from_elimination(&g, &order);
    assert!(validate_td(&g, &td).is_ok());
    println!("n = {}, m = {}, treewidth {tw}, reverse-order width {}", g.n(), g.m(), td.width());

    let problems = [
        Problem::VertexCover,
        Problem::IndependentSet,
        Problem::dominating_set(),
        Problem::DominatingSet { dominated: [0, 1, 2].into() },
        Problem::BlueWhiteDominatingSet { blue: [5].into() },
    ];
    for p in problems {
        let inst = ProblemInstance::new(g.clone(), p.clone())?;
        let (b, _) = brute_opt(&inst)?;
        let (d1, sol) = td_dp_opt(&inst, &best)?;
        let (d2, _) = td_dp_opt(&inst, &td)?;
        println!("{:<5} brute {b:>2}  dp {d1:>2} / {d2:>2}  witness {:?}", p.name(), sol.vertices().unwrap());
        assert!(b == d1 && d1 == d2);
    }

    let cover: VertexSet = vc_branch(&g, 8).expect("cover of size 8 exists");
    println!("branching vertex cover within budget 8: {cover:?}");
    Ok(())
}
