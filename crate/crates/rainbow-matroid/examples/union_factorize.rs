//! Matroid union on small graphic matroids: packing disjoint spanning
//! trees, reading the optimality certificate when the packing falls short,
//! and locating tight sets that block recursion-friendly splits.

use rainbow_matroid::graph::{identify_vertices, Multigraph, VertexId};
use rainbow_matroid::matroid::{ElemSet, Matroid};
use rainbow_matroid::union::{
    find_nontrivial_tight_set, is_two_base, k_base_factorize, max_union_with_certificate,
};

fn ids(s: &ElemSet) -> Vec<u32> {
    s.iter().map(|e| e.0).collect()
}

fn main() {
    // The complete graph on four vertices splits into two edge-disjoint
    // spanning trees.
    let k4 = Multigraph::complete(4);
    let m = Matroid::graphic(&k4);
    let f = k_base_factorize(&m, 2).expect("six edges, rank three");
    println!("K4 as two disjoint spanning trees:");
    for (i, part) in f.parts.iter().enumerate() {
        println!("  tree {i}: edges {:?}", ids(part));
    }

    // Three parallel edges and one pendant edge have the right count for
    // two trees, but the pendant edge is needed by both. The error carries
    // a witness set certifying that no packing can cover everything.
    let mut g = Multigraph::with_vertices(3);
    for _ in 0..3 {
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
    }
    g.add_edge(VertexId(1), VertexId(2)).unwrap();
    let m = Matroid::graphic(&g);
    println!("\nthree parallel edges plus a pendant edge:");
    match k_base_factorize(&m, 2) {
        Ok(_) => unreachable!("the pendant edge cannot sit in two trees at once"),
        Err(e) => println!("  {e}"),
    }

    // The same bound, read off the maximum union directly: the best two
    // forests cover |witness| + 2 * rank(rest) edges.
    let (parts, cert) = max_union_with_certificate(&m, 2).unwrap();
    let covered: usize = parts.iter().map(ElemSet::len).sum();
    println!("  best two forests cover {covered} of {} edges", m.size());
    println!("  witness {:?} caps the total at {}", ids(&cert.witness), cert.value);

    // Two K4 blocks sharing a cut vertex form a double tree whose blocks
    // are tight: each block alone is again a double tree. Covering
    // algorithms split there and recurse.
    let merged = identify_vertices(&[(&k4, VertexId(0)), (&k4, VertexId(0))]).unwrap();
    let m = Matroid::graphic(&merged.graph);
    assert!(is_two_base(&m));
    let tight = find_nontrivial_tight_set(&m).unwrap().expect("a block is tight");
    println!("\ntwo K4 blocks glued at a vertex:");
    println!("  tight set found: edges {:?}", ids(&tight));
    assert!(is_two_base(&m.restrict(&tight).unwrap()));
    assert!(is_two_base(&m.contract(&tight).unwrap()));
    println!("  restriction and contraction are both double trees again");
}
