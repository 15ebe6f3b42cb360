//! One spanning tree that respects a pairing of the edges and covers at
//! least half of a chosen target set, on a graph assembled from two
//! edge-disjoint spanning trees.

use rainbow_matroid::graph::random_k_multiple_tree;
use rainbow_matroid::matroid::{ElemSet, ElementId, Matroid};
use rainbow_matroid::partition::PairPartition;
use rainbow_matroid::rainbow::half_covering_rainbow_basis;

fn main() {
    let (g, _) = random_k_multiple_tree(8, 2, 11).unwrap();
    let m = g.edge_count();
    println!("double tree: {} vertices, {m} edges", g.vertex_count());

    // Pair each even edge id with its successor. A tree is rainbow when it
    // never takes both ends of a pair.
    let ground: Vec<ElementId> = (0..m as u32).map(ElementId).collect();
    let pairs: Vec<(ElementId, ElementId)> = (0..m as u32)
        .step_by(2)
        .map(|i| (ElementId(i), ElementId(i + 1)))
        .collect();
    let p = PairPartition::from_pairs(ground, &pairs).unwrap();

    // Target: the first third of the edges.
    let z: ElemSet = (0..(m / 3) as u32).map(ElementId).collect();

    let matroid = Matroid::graphic(&g);
    let b = half_covering_rainbow_basis(&[matroid.clone()], &z, &p).unwrap();

    let hit = b.intersection(&z).count();
    println!("target has {} edges, the tree contains {hit} of them", z.len());
    println!("tree: {:?}", b.iter().map(|e| e.0).collect::<Vec<_>>());

    assert!(matroid.is_basis(&b).unwrap());
    assert!(p.is_rainbow(&b));
    assert!(2 * hit >= z.len());
    println!("spanning, rainbow, and at least half the target: all hold");
}
