//! Small named instances: the classic graphs showing that a double tree
//! with paired edges need not factorize into rainbow trees, a positive
//! companion, and a generator for random positive instances.

use std::collections::BTreeSet;

use crate::graph::{random_k_multiple_tree, EdgeId, Multigraph, VertexId};
use crate::matroid::ElementId;
use crate::partition::Partition;
use crate::reductions::RstkfInstance;

fn pairs_instance(g: Multigraph, pairs: &[(u32, u32)], k: usize) -> RstkfInstance {
    let classes = pairs.iter().map(|&(a, b)| vec![ElementId(a), ElementId(b)]).collect();
    let ground: Vec<ElementId> = (0..g.edge_count() as u32).map(ElementId).collect();
    let p = Partition::new(ground, classes).expect("classes are disjoint edge pairs");
    RstkfInstance::new(g, p, k).expect("well-formed instance")
}

/// The complete graph on four vertices where each pair of non-adjacent
/// edges forms a class. A double tree with a 2-uniform partition, yet it
/// has no rainbow 2-factorization: the two edges of any class are the only
/// way both trees can reach the two vertices the class misses.
pub fn k4_matching_instance() -> RstkfInstance {
    // Edge ids in lexicographic order: 01, 02, 03, 12, 13, 23.
    pairs_instance(Multigraph::complete(4), &[(0, 5), (1, 4), (2, 3)], 2)
}

/// The complete graph on four vertices with classes pairing edges that
/// share a vertex: {01,12}, {02,23}, {03,13}. Rainbow 2-factorizations
/// exist, e.g. {01,02,13} and {03,12,23}.
pub fn k4_star_pairs_instance() -> RstkfInstance {
    pairs_instance(Multigraph::complete(4), &[(0, 3), (1, 5), (2, 4)], 2)
}

/// The wheel on 8 vertices: a hub joined to a 7-cycle, with every spoke
/// classed together with the rim edge antipodal to the spoke's rim
/// endpoint. A double tree with a 2-uniform partition and no rainbow
/// 2-factorization.
pub fn wheel8_instance() -> RstkfInstance {
    let mut g = Multigraph::with_vertices(8);
    for i in 1..=7u32 {
        g.add_edge(VertexId(0), VertexId(i)).unwrap();
    }
    for p in 1..=7u32 {
        g.add_edge(VertexId(p), VertexId(p % 7 + 1)).unwrap();
    }
    // Spoke to rim vertex i (edge id i-1) pairs with the rim edge between
    // positions i+3 and i+4 around the cycle (edge id 7 + ((i+2) mod 7)).
    let pairs: Vec<(u32, u32)> = (1..=7u32).map(|i| (i - 1, 7 + (i + 2) % 7)).collect();
    pairs_instance(g, &pairs, 2)
}

/// A random positive instance together with a witness: a union of `k`
/// random spanning trees whose classes pair the i-th edge of consecutive
/// witness trees, so the witness trees themselves are rainbow.
///
/// Classes take one edge from tree 2j and one from tree 2j+1; when k is
/// odd the last tree's edges stay singletons. The partition is 2-uniform
/// exactly when k is even.
pub fn random_rainbow_positive(
    n: usize,
    k: usize,
    seed: u64,
) -> (RstkfInstance, Vec<BTreeSet<EdgeId>>) {
    let (g, witness) = random_k_multiple_tree(n, k, seed).expect("n, k >= 1");
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    for pair in witness.chunks(2) {
        if let [a, b] = pair {
            classes.extend(
                a.iter()
                    .zip(b.iter())
                    .map(|(&x, &y)| vec![ElementId(x.0), ElementId(y.0)]),
            );
        }
    }
    let ground: Vec<ElementId> = (0..g.edge_count() as u32).map(ElementId).collect();
    let p = Partition::new(ground, classes).expect("witness trees are disjoint");
    let inst = RstkfInstance::new(g, p, k).expect("well-formed instance");
    (inst, witness)
}
