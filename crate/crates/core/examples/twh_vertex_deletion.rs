//! Vertex cover and feedback vertex set over planted H-tree
//! decompositions, with the asserted width of the exact side.

use hybridparam::bucket_ocean::{ExactBase, LossyBase};
use hybridparam::decomp::FamilyPredicate;
use hybridparam::gen::{plant_htd_instance, HtdSpec, TreeShape};
use hybridparam::solvers::exact_opt;
use hybridparam::twh::{default_tw_exact, eta_modulated_fptas, twh_alpha};
use hybridparam::{Problem, ProblemInstance, Result};

fn main() -> Result<()> {
    let spec = HtdSpec {
        leaves: 3,
        ell: 2,
        family: FamilyPredicate::Forests,
        base_size: (20, 40),
        internal: 2,
        shape: TreeShape::Path,
        density: 0.3,
        keep: 1.0,
    };
    for seed in 0..4 {
        let (g, d, _) = plant_htd_instance(&spec, seed)?;
        let opt = exact_opt(&ProblemInstance::new(g.clone(), Problem::VertexCover)?)?.0;
        let tr = eta_modulated_fptas(&g, &d, &Problem::VertexCover, 0.5, 0, &LossyBase::new(1.0)?, &default_tw_exact)?;
        println!(
            "seed {seed}: n {:>3}  good {:?}  |S1| {:>2} |S2| {} |Sb| {:>2}  value {:>2} / opt {opt:>2}  width {} <= {:.1}",
            g.n(),
            tr.classification.good,
            tr.s1.len(),
            tr.s2.len(),
            tr.s_b.len(),
            tr.result.value(),
            tr.result.stats.assembled_width.unwrap(),
            tr.width_bound.unwrap()
        );
    }

    let spec = HtdSpec {
        family: FamilyPredicate::TwAtMost(2),
        base_size: (4, 6),
        ..spec
    };
    let (g, d, _) = plant_htd_instance(&spec, 11)?;
    let fvs = eta_modulated_fptas(&g, &d, &Problem::FeedbackVertexSet, 0.5, 1, &ExactBase, &default_tw_exact)?;
    let alpha = twh_alpha(&g, &d, &Problem::FeedbackVertexSet, 0.5, &LossyBase::with_alpha(2.0)?, &default_tw_exact)?;
    let opt = exact_opt(&ProblemInstance::new(g.clone(), Problem::FeedbackVertexSet)?)?.0;
    println!("fvs: η-scheme {}, α = 2 scheme {}, opt {opt}", fvs.result.value(), alpha.result.value());
    Ok(())
}
