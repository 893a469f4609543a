//! Connected vertex cover through set-intersecting vertex cover and the
//! connectivity repair.

use hybridparam::bucket_ocean::{connectivity_repair, cvc_mod_fptas, BruteBySize, ExactBase, LossyBase};
use hybridparam::decomp::FamilyPredicate;
use hybridparam::gen::generate;
use hybridparam::gen::Planted;
use hybridparam::graph::named::path;
use hybridparam::solvers::brute_opt;
use hybridparam::{Problem, ProblemInstance, Result};

fn main() -> Result<()> {
    // P7 with S = {1, 5} and M = {3}: one connector joins each side
    let z = connectivity_repair(&path(7), &[1, 5].into(), &[3].into())?;
    println!("repaired cover of P7: {z:?}");

    for seed in 0..5 {
        let inst = generate("cvc-mod", seed)?;
        let Planted::Modulator { m, family } = &inst.planted else { unreachable!() };
        let r = cvc_mod_fptas(&inst.graph, m, *family, 0.5, &LossyBase::new(1.0)?, &BruteBySize)?;
        let opt = brute_opt(&ProblemInstance::new(inst.graph.clone(), Problem::ConnectedVertexCover)?)?.0;
        println!(
            "seed {seed}: n {:>2} |M| {}  case {}  value {:>2} / opt {opt:>2}  connectors {}",
            inst.graph.n(),
            m.len(),
            r.case,
            r.value(),
            r.stats.repair_additions
        );
    }

    let two_parts = path(3).disjoint_union(&path(3));
    let err = cvc_mod_fptas(&two_parts, &[1].into(), FamilyPredicate::Forests, 0.5, &ExactBase, &BruteBySize).unwrap_err();
    println!("{err}");
    Ok(())
}
