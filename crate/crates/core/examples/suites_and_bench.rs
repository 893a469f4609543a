//! Seeded suites, the manifest format, and a small benchmark report.

use hybridparam::cli::{bench, report_tsv, thread_cap};
use hybridparam::gen::{generate, parse_manifest, Planted, SUITES};
use hybridparam::Result;

fn main() -> Result<()> {
    for name in SUITES {
        let inst = generate(name, 1)?;
        let what = match &inst.planted {
            Planted::Modulator { m, family } => format!("|M| = {} to {family}", m.len()),
            Planted::Htd(d) => format!("{} nodes, width {}", d.tree.len(), d.width()),
        };
        println!("{name:<15} n {:>3} m {:>3}  {what}", inst.graph.n(), inst.graph.m());
    }
    let entries = parse_manifest("inst 1 vc-mod\ninst 2 fvs-twh\ninst 3 is-twh\ninst 4 cvc-mod\n")?;
    let rows = bench(&entries, &[0.2, 0.5], thread_cap())?;
    print!("{}", report_tsv(&rows));
    Ok(())
}
