//! Graph coloring as tree factorization: every edge of the source graph
//! becomes a leaf gadget, and a proper k-coloring picks which of the k
//! rainbow spanning trees each gadget edge joins.

use rainbow_matroid::graph::Multigraph;
use rainbow_matroid::reductions::{
    coloring_to_trees, reduce_kcol_to_rstkf, trees_to_coloring, KColInstance,
};
use rainbow_matroid::solver::solve_kcol;
use rainbow_matroid::verify::{verify_coloring, verify_tree_factorization};

fn main() {
    let triangle = Multigraph::complete(3);
    let src = KColInstance::new(triangle, 3).unwrap();
    let colors = solve_kcol(&src).unwrap().expect("a triangle is 3-colorable");
    println!("coloring: {colors:?}");

    let red = reduce_kcol_to_rstkf(&src).unwrap();
    let g = red.instance.graph();
    println!(
        "reduced instance: {} vertices, {} edges, k = {}",
        g.vertex_count(),
        g.edge_count(),
        red.instance.k()
    );

    let trees = coloring_to_trees(&red, &colors).unwrap();
    let report = verify_tree_factorization(g, red.instance.partition(), src.k(), &trees);
    assert!(report.all_pass());
    for (i, t) in trees.iter().enumerate() {
        println!("  tree {i}: {} edges", t.len());
    }

    let back = trees_to_coloring(&red, &trees).unwrap();
    let report = verify_coloring(&src, &back);
    assert!(report.all_pass());
    println!("recovered coloring: {back:?}");
}
