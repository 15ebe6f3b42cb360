//! Covering every edge of a double tree with logarithmically many rainbow
//! spanning trees: each round grabs a tree that covers at least half of
//! whatever is still missing.

use rainbow_matroid::graph::random_k_multiple_tree;
use rainbow_matroid::matroid::{ElemSet, ElementId, Matroid};
use rainbow_matroid::partition::PairPartition;
use rainbow_matroid::rainbow::log_cover;

fn main() {
    for n in [5usize, 9, 17] {
        let (g, _) = random_k_multiple_tree(n, 2, 7).unwrap();
        let m = Matroid::graphic(&g);
        let edges = g.edge_count();

        let ground: Vec<ElementId> = (0..edges as u32).map(ElementId).collect();
        let pairs: Vec<(ElementId, ElementId)> = (0..edges as u32)
            .step_by(2)
            .map(|i| (ElementId(i), ElementId(i + 1)))
            .collect();
        let p = PairPartition::from_pairs(ground, &pairs).unwrap();

        let z = m.ground_elems();
        let trees = log_cover(&m, &z, &p).unwrap();
        let bound = edges.ilog2() as usize + 1;
        println!("{edges:>2} edges: {} rainbow trees (bound {bound})", trees.len());

        let mut covered = ElemSet::new();
        for t in &trees {
            assert!(m.is_basis(t).unwrap());
            assert!(p.is_rainbow(t));
            covered.extend(t.iter().copied());
        }
        assert_eq!(covered, z);
    }
}
