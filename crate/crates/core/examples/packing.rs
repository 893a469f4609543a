//! Maximization: independent set and cycle packing over H-tree
//! decompositions, and the cycle packing modulator scheme.

use hybridparam::bucket_ocean::{cycpack_mod_fptas, BruteBySize, ExactBase};
use hybridparam::decomp::{htd_from_modulator, FamilyPredicate};
use hybridparam::gen::{plant_htd_instance, HtdSpec, TreeShape};
use hybridparam::graph::named::{complete, wheel};
use hybridparam::problem::verify_solution;
use hybridparam::solvers::exact_opt;
use hybridparam::twh::{default_packing_exact, default_tw_exact, twh_fptas_is, twh_fptas_packing};
use hybridparam::{Graph, Problem, ProblemInstance, Result, Solution, VertexSet};

fn main() -> Result<()> {
    let spec = HtdSpec {
        leaves: 3,
        ell: 2,
        family: FamilyPredicate::TwAtMost(2),
        base_size: (8, 14),
        internal: 2,
        shape: TreeShape::Star,
        density: 0.4,
        keep: 0.9,
    };
    let (g, d, _) = plant_htd_instance(&spec, 5)?;
    let tr = twh_fptas_is(&g, &d, 0.5, &ExactBase, &default_tw_exact)?;
    let opt = exact_opt(&ProblemInstance::new(g.clone(), Problem::IndependentSet)?)?.0;
    println!("independent set: {} of {opt} ({} good leaves)", tr.result.value(), tr.classification.good.len());

    // two triangles, each its own leaf
    let two = complete(3).disjoint_union(&complete(3));
    let d = htd_from_modulator(&two, &VertexSet::new(), FamilyPredicate::TwAtMost(2))?;
    let p = Problem::CyclePacking;
    let tr = twh_fptas_packing(&two, &d, &p, 0.5, &ExactBase, &default_packing_exact)?;
    if let Solution::Packing(pk) = &tr.result.solution {
        for t in &pk.tuples {
            println!("cycle on {:?}", t.vertices);
        }
    }
    assert!(verify_solution(&ProblemInstance::new(two, p)?, &tr.result.solution)?);

    let g: Graph = wheel(9).disjoint_union(&complete(3));
    let m: VertexSet = [9].into();
    let r = cycpack_mod_fptas(&g, &m, FamilyPredicate::TwAtMost(2), 0.5, &ExactBase, &BruteBySize)?;
    println!("cycle packing with |M| = 1: case {}, {} cycles, bound {:?}", r.case, r.value(), r.stats.bucket_bound);
    Ok(())
}
