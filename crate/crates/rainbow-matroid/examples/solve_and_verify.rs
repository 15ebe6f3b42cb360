//! Exact search on small instances: a proven negative, a found
//! factorization checked by the independent verifier, and the same
//! instance recast as an indegree-bounded branching problem.

use rainbow_matroid::instances::{k4_matching_instance, k4_star_pairs_instance};
use rainbow_matroid::reductions::{reduce_rstkf_to_bstkf, subgraphs_to_trees};
use rainbow_matroid::solver::{solve_bstkf, solve_rstkf, SearchConfig, SolveOutcome};
use rainbow_matroid::verify::{verify_branching_factorization, verify_tree_factorization};

fn main() {
    let cfg = SearchConfig::default();

    // Pairing opposite edges of K4 makes two rainbow spanning trees
    // impossible; the search exhausts the space and proves it.
    let neg = k4_matching_instance();
    match solve_rstkf(neg.graph(), neg.partition(), 2, &cfg).unwrap() {
        SolveOutcome::No => println!("K4 with matched opposite edges: no factorization exists"),
        other => panic!("expected a proven negative, got {other:?}"),
    }

    // Pairing each vertex star instead leaves room.
    let pos = k4_star_pairs_instance();
    let trees = match solve_rstkf(pos.graph(), pos.partition(), 2, &cfg).unwrap() {
        SolveOutcome::Found(trees) => trees,
        other => panic!("expected a factorization, got {other:?}"),
    };
    println!("\nK4 with star pairs, found factorization:");
    for (i, t) in trees.iter().enumerate() {
        println!("  tree {i}: edges {:?}", t.iter().map(|e| e.0).collect::<Vec<_>>());
    }
    let report = verify_tree_factorization(pos.graph(), pos.partition(), 2, &trees);
    print!("{}", report.render_human());

    // The same question as an arc problem: replace every edge by arc
    // gadgets through a collector vertex, bound indegrees by two, and ask
    // for k spanning subgraphs meeting every bound exactly.
    let red = reduce_rstkf_to_bstkf(&pos, None).unwrap();
    let d = red.instance.digraph();
    println!("\nas a branching problem: {} vertices, {} arcs", d.vertex_count(), d.arc_count());
    let parts = match solve_bstkf(d, red.instance.bounds(), 2, &cfg).unwrap() {
        SolveOutcome::Found(parts) => parts,
        other => panic!("expected a factorization, got {other:?}"),
    };
    let report = verify_branching_factorization(d, red.instance.bounds(), 2, &parts);
    assert!(report.all_pass());
    let back = subgraphs_to_trees(&red, &parts).unwrap();
    let report = verify_tree_factorization(pos.graph(), pos.partition(), 2, &back);
    assert!(report.all_pass());
    println!("branching solution maps back to spanning trees; both verifications pass");

    // Search effort is budgeted; a tiny node budget reports exhaustion
    // instead of an answer.
    let tight = SearchConfig { node_budget: 3, ..SearchConfig::default() };
    match solve_rstkf(pos.graph(), pos.partition(), 2, &tight).unwrap() {
        SolveOutcome::Exhausted => println!("\nwith a 3-node budget the search gives up cleanly"),
        other => panic!("expected exhaustion, got {other:?}"),
    }
}
