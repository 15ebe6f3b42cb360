//! Covering a k-fold tree union with a constant number of rainbow spanning
//! trees. For k = 3 at most 13 trees suffice; for k >= 4 the edge set is
//! first split into blocks of two or three bases, giving 5a + 4b trees
//! from a alpha double blocks and b triple blocks.

use rainbow_matroid::cover::{cover_k3, cover_k41, default_block_split};
use rainbow_matroid::graph::random_k_multiple_tree;
use rainbow_matroid::matroid::{ElementId, Matroid};
use rainbow_matroid::partition::PairPartition;

fn pair_up(m: usize) -> PairPartition {
    // Consecutive ids become partners; a trailing odd edge stays free.
    let ground: Vec<ElementId> = (0..m as u32).map(ElementId).collect();
    let pairs: Vec<(ElementId, ElementId)> = (0..m as u32 / 2)
        .map(|i| (ElementId(2 * i), ElementId(2 * i + 1)))
        .collect();
    PairPartition::from_pairs(ground, &pairs).unwrap()
}

fn main() {
    let (g, _) = random_k_multiple_tree(6, 3, 2).unwrap();
    let m = Matroid::graphic(&g);
    let p = pair_up(g.edge_count());
    let cover = cover_k3(&m, &p).unwrap();
    println!(
        "k = 3: {} edges covered by {} rainbow trees (bound 13)",
        g.edge_count(),
        cover.len()
    );
    assert!(cover.len() <= 13);
    assert_eq!(cover.covered(), m.ground_elems());

    let k = 5;
    let (g, _) = random_k_multiple_tree(6, k, 2).unwrap();
    let m = Matroid::graphic(&g);
    let p = pair_up(g.edge_count());
    let (alpha, beta) = default_block_split(k);
    let cover = cover_k41(&m, k, &p, alpha, beta).unwrap();
    println!(
        "k = {k}: {} edges covered by {} rainbow trees (bound {})",
        g.edge_count(),
        cover.len(),
        5 * alpha + 4 * beta
    );
    assert!(cover.len() <= 5 * alpha + 4 * beta);
    assert_eq!(cover.covered(), m.ground_elems());

    // Every entry records how it was built.
    for entry in &cover.entries {
        println!("  {:?}: {} edges", entry.origin, entry.elements.len());
    }
}
