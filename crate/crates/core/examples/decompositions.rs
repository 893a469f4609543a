//! H-tree decompositions: from a modulator, from an elimination forest, and
//! back to a standard tree decomposition, with the text formats.

use std::collections::BTreeMap;

use hybridparam::decomp::{
    htd_from_helim, htd_from_modulator, htd_to_td, tree_decomposition_for, validate_htd, validate_td, FamilyPredicate,
    Forest, HElimDecomposition,
};
use hybridparam::graph::named::wheel;
use hybridparam::{io, Result};

fn main() -> Result<()> {
    // wheel on 6 rim vertices; removing the hub and one rim vertex leaves a path
    let g = wheel(6);
    let d = htd_from_modulator(&g, &[0, 6].into(), FamilyPredicate::Forests)?;
    validate_htd(&g, &d).expect("modulator decomposition is valid");
    println!("modulator decomposition: {} nodes, width {}", d.tree.len(), d.width());
    print!("{}", io::write_htd(&d, g.n()));

    let mut per_leaf = BTreeMap::new();
    for t in d.leaves() {
        let (h, _) = g.induced_subgraph(&d.base_part(t))?;
        per_leaf.insert(t, tree_decomposition_for(&h));
    }
    let td = htd_to_td(&g, &d, &per_leaf)?;
    validate_td(&g, &td).expect("assembled decomposition is valid");
    println!("standard decomposition of width {}", td.width());

    // hub at the root, then rim vertex 0, then the remaining path
    let e = HElimDecomposition {
        forest: Forest::from_parents(vec![None, Some(0), Some(1)])?,
        bags: vec![[6].into(), [0].into(), (1..6).collect()],
        base: (1..6).collect(),
        family: FamilyPredicate::Forests,
    };
    let from_e = htd_from_helim(&g, &e)?;
    println!("elimination forest of depth {} gives width {}", e.forest.depth(), from_e.width());
    print!("{}", io::write_helim(&e, g.n()));

    let bad = {
        let mut d = d.clone();
        d.bags[0].clear();
        d
    };
    if let Err(v) = validate_htd(&g, &bad) {
        println!("emptied root bag: {v}");
    }
    Ok(())
}
