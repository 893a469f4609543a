//! Modulator schemes for vertex cover and feedback vertex set: the OCEAN
//! and BUCKET cases, the subset-guessing variant and an α-approximate base.

use hybridparam::bucket_ocean::{
    mod_alpha, mod_fptas_vertex_deletion, vc_mod_guess, ExactBase, LossyBase, MatchingVcBase, SelfReducingBySize,
};
use hybridparam::decomp::FamilyPredicate;
use hybridparam::graph::named::wheel;
use hybridparam::solvers::exact_opt;
use hybridparam::{Graph, Problem, ProblemInstance, Result, VertexSet};

fn main() -> Result<()> {
    // 100 disjoint edges plus ten isolated modulator vertices
    let g = Graph::from_edges(210, (0..100).map(|i| (2 * i, 2 * i + 1)))?;
    let m: VertexSet = (200..210).collect();
    let r = mod_fptas_vertex_deletion(&g, &m, FamilyPredicate::Forests, &Problem::VertexCover, 0.3, &ExactBase, &SelfReducingBySize)?;
    println!("matching + 10: case {}, value {}", r.case, r.value());

    let w = wheel(8);
    let hub: VertexSet = [8].into();
    for p in [Problem::VertexCover, Problem::FeedbackVertexSet] {
        let fam = FamilyPredicate::TwAtMost(2);
        let r = mod_fptas_vertex_deletion(&w, &hub, fam, &p, 0.5, &LossyBase::new(1.0)?, &SelfReducingBySize)?;
        let opt = exact_opt(&ProblemInstance::new(w.clone(), p.clone())?)?.0;
        println!("wheel {}: case {}, value {} (opt {opt}, bound {:?})", p.name(), r.case, r.value(), r.stats.bucket_bound);
    }

    let s = vc_mod_guess(&w, &[0, 8].into(), 0.2, &ExactBase)?;
    println!("guessing over M = {{0, 8}}: cover of size {}", s.value());

    let r = mod_alpha(&g, &m, FamilyPredicate::Forests, &Problem::VertexCover, 0.5, &MatchingVcBase, &SelfReducingBySize)?;
    println!("2-approximate base: case {}, value {} (opt 100)", r.case, r.value());
    Ok(())
}
