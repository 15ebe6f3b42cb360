//! From a not-all-equal formula to tree factorization and back: build the
//! instance chain, solve the reduced instance, and translate certificates
//! across every hop.

use rainbow_matroid::reductions::{
    grst2f_cert_to_rst2f, nae_cert_to_trees, reduce_grst2f_to_rst2f, reduce_nae_to_grst2f,
    trees_to_nae_cert, Nae3SatInstance,
};
use rainbow_matroid::solver::{solve_nae3sat, solve_rstkf, SearchConfig, SolveOutcome};
use rainbow_matroid::verify::{verify_nae_assignment, verify_tree_factorization};

fn main() {
    // Two overlapping clauses over four variables; each clause must see
    // both truth values.
    let formula = Nae3SatInstance::new(4, vec![[0, 1, 2], [1, 2, 3]]).unwrap();
    let phi = solve_nae3sat(&formula).unwrap().expect("two clauses leave plenty of room");
    println!("assignment: {phi:?}");

    // One gadget block per clause, glued at a shared root. The partition
    // pairs edges so that a factorization into two rainbow spanning trees
    // encodes an assignment.
    let red = reduce_nae_to_grst2f(&formula).unwrap();
    let g = red.instance.graph();
    println!(
        "reduced instance: {} vertices, {} edges, {} gadget labels",
        g.vertex_count(),
        g.edge_count(),
        red.labels.len()
    );

    // Forward: the assignment picks the two trees directly.
    let trees = nae_cert_to_trees(&red, &phi).unwrap();
    let report = verify_tree_factorization(g, red.instance.partition(), 2, &trees);
    assert!(report.all_pass());
    println!("assignment mapped to trees: verification passes");

    // The pairing above is 2-bounded but not 2-uniform. Doubling every
    // edge fixes that, and certificates lift across.
    let doubled = reduce_grst2f_to_rst2f(&red.instance).unwrap();
    assert!(doubled.instance.is_strict());
    let lifted = grst2f_cert_to_rst2f(&doubled, &trees).unwrap();
    let report = verify_tree_factorization(
        doubled.instance.graph(),
        doubled.instance.partition(),
        2,
        &lifted,
    );
    assert!(report.all_pass());
    println!(
        "doubled instance: {} edges, lifted certificate passes",
        doubled.instance.graph().edge_count()
    );

    // Backward: let the search find its own factorization, then read an
    // assignment out of whichever tree holds each variable gadget.
    let cfg = SearchConfig::default();
    match solve_rstkf(g, red.instance.partition(), 2, &cfg).unwrap() {
        SolveOutcome::Found(found) => {
            let psi = trees_to_nae_cert(&red, &found).unwrap();
            let report = verify_nae_assignment(&formula, &psi);
            assert!(report.all_pass());
            println!("solver-found trees mapped back to assignment: {psi:?}");
        }
        other => panic!("a satisfiable formula must reduce to a solvable instance: {other:?}"),
    }
}
