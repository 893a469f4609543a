//! Dominating set: annotated instances, the Γ_k grid, blue-white
//! dominating set with the pendant reduction, and both schemes.

use hybridparam::bucket_ocean::{ds_mod_fptas, ExactBase};
use hybridparam::decomp::FamilyPredicate;
use hybridparam::domset::{annotate_normalize, bwds_extract, bwds_solve_exact, bwds_to_ds, gamma_grid, twh_fptas_ds, BwdsInstance};
use hybridparam::gen::{plant_htd_instance, HtdSpec, TreeShape};
use hybridparam::graph::named::{cycle, path};
use hybridparam::problem::dominates;
use hybridparam::{Graph, Result, VertexSet};

fn main() -> Result<()> {
    for k in 2..=5 {
        let g = gamma_grid(k)?;
        println!("gamma_{k}: {} vertices, {} edges", g.n(), g.m());
    }

    let ann = annotate_normalize(&path(6), &[1, 2, 3].into())?;
    println!("annotated P6: {} edges left, D = {:?}", ann.graph.m(), ann.dominated);

    let inst = BwdsInstance { graph: cycle(5), blue: [0].into(), k: 2 };
    let (big, k) = bwds_to_ds(&inst)?;
    let (direct, _) = bwds_solve_exact(&inst.graph, &inst.blue)?;
    let (via, _) = bwds_solve_exact(&big, &VertexSet::new())?;
    println!("blue-white on C5: {direct}; plain DS after {} pendants: {via} (budget {k})", big.n() - 5);
    let mut decide = |h: &Graph, b: &VertexSet, k: usize| Ok(bwds_solve_exact(h, b)?.0 <= k);
    println!("extracted witness {:?}", bwds_extract(&mut decide, &cycle(7), &[3].into())?);

    let spec = HtdSpec {
        leaves: 2,
        ell: 1,
        family: FamilyPredicate::Forests,
        base_size: (150, 200),
        internal: 1,
        shape: TreeShape::Star,
        density: 0.02,
        keep: 1.0,
    };
    let (g, d, _) = plant_htd_instance(&spec, 2)?;
    let scheme = |h: &Graph, m: &VertexSet, e: f64| ds_mod_fptas(h, m, FamilyPredicate::Forests, e, &ExactBase);
    let tr = twh_fptas_ds(&g, &d, 1.0, &scheme)?;
    let (opt, _) = bwds_solve_exact(&g, &VertexSet::new())?;
    let s = tr.result.solution.vertices().unwrap();
    assert!(dominates(&g, s, &VertexSet::new()));
    let good = tr.leaves.iter().filter(|l| l.good).count();
    println!("n = {}: {good} good leaves, |S1| {} |S2| {} |Sb| {}, value {} vs opt {opt}", g.n(), tr.s1.len(), tr.s2.len(), tr.s_b.len(), s.len());
    Ok(())
}
