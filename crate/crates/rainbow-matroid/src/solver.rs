//! Exact backtracking solvers for the decision problems at desk scale.
//!
//! Edges (or arcs) are assigned to the k parts one at a time with rollback
//! union-find acyclicity per part, rainbow pruning per class, indegree
//! bounds where they apply, completion pruning, and symmetry breaking on
//! the first item. Budgets turn long searches into an explicit
//! [`SolveOutcome::Exhausted`] instead of a wrong or silent answer.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{ArcId, Digraph, EdgeId, Multigraph};
use crate::matroid::ElementId;
use crate::partition::Partition;
use crate::reductions::{KColInstance, Nae3SatInstance};

/// Result of a budgeted search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<T> {
    /// A certificate was found.
    Found(T),
    /// The search space was exhausted; no certificate exists.
    No,
    /// A budget ran out before the search finished. Says nothing about
    /// whether a certificate exists.
    Exhausted,
}

impl<T> SolveOutcome<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, SolveOutcome::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            SolveOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Budgets and branching-order controls for a single search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of search nodes to expand.
    pub node_budget: u64,
    /// Wall-clock limit for the search.
    pub time_budget: Duration,
    /// With `true` the branching order is the canonical one; with `false`
    /// it is shuffled by `seed`.
    pub deterministic: bool,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 10_000_000,
            time_budget: Duration::from_secs(60),
            deterministic: true,
            seed: 0,
        }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.node_budget == 0 {
            return Err(Error::invalid("node budget must be positive"));
        }
        if self.time_budget.is_zero() {
            return Err(Error::invalid("time budget must be positive"));
        }
        Ok(())
    }
}

struct RollbackUf {
    parent: Vec<u32>,
    size: Vec<u32>,
    trail: Vec<u32>,
}

impl RollbackUf {
    fn new(n: usize) -> Self {
        RollbackUf {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            trail: Vec::new(),
        }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        self.trail.push(rb);
        true
    }

    fn undo_one(&mut self) {
        let r = self.trail.pop().expect("undo without a union");
        let p = self.parent[r as usize];
        self.size[p as usize] -= self.size[r as usize];
        self.parent[r as usize] = r;
    }
}

struct Bin {
    uf: RollbackUf,
    count: usize,
    class_used: Vec<bool>,
    indeg: Vec<u32>,
}

struct Search<'a> {
    /// Item endpoints; for arcs the second component is the head.
    items: &'a [(u32, u32)],
    class_of: &'a [Option<usize>],
    /// Indegree bounds per vertex, when they apply.
    bounds: Option<&'a [u32]>,
    order: &'a [usize],
    /// Items each bin must end up with.
    target: usize,
    k: usize,
    node_budget: u64,
    deadline: Instant,
    nodes: u64,
    bins: Vec<Bin>,
    assign: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(
        n_vertices: usize,
        n_classes: usize,
        items: &'a [(u32, u32)],
        class_of: &'a [Option<usize>],
        bounds: Option<&'a [u32]>,
        order: &'a [usize],
        target: usize,
        k: usize,
        cfg: &SearchConfig,
    ) -> Self {
        let bins = (0..k)
            .map(|_| Bin {
                uf: RollbackUf::new(n_vertices),
                count: 0,
                class_used: vec![false; n_classes],
                indeg: vec![0; if bounds.is_some() { n_vertices } else { 0 }],
            })
            .collect();
        Search {
            items,
            class_of,
            bounds,
            order,
            target,
            k,
            node_budget: cfg.node_budget,
            deadline: Instant::now() + cfg.time_budget,
            nodes: 0,
            bins,
            assign: vec![usize::MAX; items.len()],
        }
    }

    fn accepts(&self, b: usize, item: usize) -> bool {
        let bin = &self.bins[b];
        if let Some(c) = self.class_of[item] {
            if bin.class_used[c] {
                return false;
            }
        }
        let (u, v) = self.items[item];
        if let Some(bounds) = self.bounds {
            if bin.indeg[v as usize] >= bounds[v as usize] {
                return false;
            }
        }
        bin.uf.find(u) != bin.uf.find(v)
    }

    /// Every bin must still be able to reach its target from the items at
    /// positions `from..` of the branching order.
    fn completable(&self, from: usize) -> bool {
        for b in 0..self.k {
            let needed = self.target - self.bins[b].count;
            if needed == 0 {
                continue;
            }
            let mut avail = 0;
            for &it in &self.order[from..] {
                if self.accepts(b, it) {
                    avail += 1;
                    if avail == needed {
                        break;
                    }
                }
            }
            if avail < needed {
                return false;
            }
        }
        true
    }

    fn place(&mut self, item: usize, b: usize) {
        let (u, v) = self.items[item];
        let bin = &mut self.bins[b];
        assert!(bin.uf.union(u, v));
        bin.count += 1;
        if let Some(c) = self.class_of[item] {
            bin.class_used[c] = true;
        }
        if self.bounds.is_some() {
            bin.indeg[v as usize] += 1;
        }
        self.assign[item] = b;
    }

    fn unplace(&mut self, item: usize, b: usize) {
        let (_, v) = self.items[item];
        let bin = &mut self.bins[b];
        bin.uf.undo_one();
        bin.count -= 1;
        if let Some(c) = self.class_of[item] {
            bin.class_used[c] = false;
        }
        if self.bounds.is_some() {
            bin.indeg[v as usize] -= 1;
        }
        self.assign[item] = usize::MAX;
    }

    fn search(&mut self, depth: usize) -> SolveOutcome<()> {
        self.nodes += 1;
        if self.nodes > self.node_budget || Instant::now() >= self.deadline {
            return SolveOutcome::Exhausted;
        }
        if depth == self.order.len() {
            debug_assert!(self.bins.iter().all(|b| b.count == self.target));
            return SolveOutcome::Found(());
        }
        let item = self.order[depth];
        let bin_limit = if depth == 0 { 1 } else { self.k };
        for b in 0..bin_limit {
            if self.bins[b].count == self.target || !self.accepts(b, item) {
                continue;
            }
            self.place(item, b);
            if self.completable(depth + 1) {
                match self.search(depth + 1) {
                    SolveOutcome::No => {}
                    other => return other,
                }
            }
            self.unplace(item, b);
        }
        SolveOutcome::No
    }

    fn run(&mut self) -> SolveOutcome<Vec<usize>> {
        match self.search(0) {
            SolveOutcome::Found(()) => SolveOutcome::Found(self.assign.clone()),
            SolveOutcome::No => SolveOutcome::No,
            SolveOutcome::Exhausted => SolveOutcome::Exhausted,
        }
    }
}

fn branching_order(mut order: Vec<usize>, cfg: &SearchConfig) -> Vec<usize> {
    if !cfg.deterministic {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        order.shuffle(&mut rng);
    }
    order
}

/// Searches for a factorization of `g` into `k` spanning trees that are
/// each rainbow for `p`. Accepts any partition of the edge set; a class
/// with more than `k` elements makes the answer an immediate no.
pub fn solve_rstkf(
    g: &Multigraph,
    p: &Partition,
    k: usize,
    cfg: &SearchConfig,
) -> Result<SolveOutcome<Vec<BTreeSet<EdgeId>>>> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let m = g.edge_count();
    let expected: Vec<ElementId> = (0..m as u32).map(ElementId).collect();
    if p.ground() != expected.as_slice() {
        return Err(Error::invalid("partition ground must be the edge id set"));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok(SolveOutcome::Found(vec![BTreeSet::new(); k]));
    }
    let target = n - 1;
    if m != k * target || p.max_class_size() > k {
        return Ok(SolveOutcome::No);
    }
    let items: Vec<(u32, u32)> = g
        .edge_ids()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (u.0, v.0)
        })
        .collect();
    let class_of: Vec<Option<usize>> =
        (0..m as u32).map(|e| p.class_index_of(ElementId(e))).collect();
    let class_size = |e: &usize| {
        class_of[*e].map(|c| p.classes()[c].len()).unwrap_or(0)
    };
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|e| (std::cmp::Reverse(class_size(e)), *e));
    let order = branching_order(order, cfg);
    let mut search = Search::new(
        n,
        p.classes().len(),
        &items,
        &class_of,
        None,
        &order,
        target,
        k,
        cfg,
    );
    Ok(match search.run() {
        SolveOutcome::Found(assign) => {
            let mut trees = vec![BTreeSet::new(); k];
            for (e, &b) in assign.iter().enumerate() {
                trees[b].insert(EdgeId(e as u32));
            }
            debug_assert!(trees.iter().all(|t| {
                crate::graph::is_spanning_tree(g, t).unwrap()
                    && p.is_rainbow(&t.iter().map(|e| ElementId(e.0)).collect())
            }));
            SolveOutcome::Found(trees)
        }
        SolveOutcome::No => SolveOutcome::No,
        SolveOutcome::Exhausted => SolveOutcome::Exhausted,
    })
}

/// Searches for a partition of the arcs of `d` into `k` parts whose
/// underlying edge sets are spanning trees and whose indegrees respect
/// `bounds` in every part.
pub fn solve_bstkf(
    d: &Digraph,
    bounds: &[u32],
    k: usize,
    cfg: &SearchConfig,
) -> Result<SolveOutcome<Vec<BTreeSet<ArcId>>>> {
    cfg.validate()?;
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    if bounds.len() != d.vertex_count() {
        return Err(Error::invalid("one indegree bound per vertex required"));
    }
    let n = d.vertex_count();
    if n == 0 {
        return Ok(SolveOutcome::Found(vec![BTreeSet::new(); k]));
    }
    let target = n - 1;
    let m = d.arc_count();
    if m != k * target {
        return Ok(SolveOutcome::No);
    }
    let items: Vec<(u32, u32)> = d
        .arc_ids()
        .map(|a| {
            let (t, h) = d.arc(a);
            (t.0, h.0)
        })
        .collect();
    let class_of = vec![None; m];
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|a| (bounds[items[*a].1 as usize], *a));
    let order = branching_order(order, cfg);
    let mut search =
        Search::new(n, 0, &items, &class_of, Some(bounds), &order, target, k, cfg);
    Ok(match search.run() {
        SolveOutcome::Found(assign) => {
            let mut parts = vec![BTreeSet::new(); k];
            for (a, &b) in assign.iter().enumerate() {
                parts[b].insert(ArcId(a as u32));
            }
            SolveOutcome::Found(parts)
        }
        SolveOutcome::No => SolveOutcome::No,
        SolveOutcome::Exhausted => SolveOutcome::Exhausted,
    })
}

/// Exhaustive search for a not-all-equal satisfying assignment. Exact but
/// limited to 25 variables.
pub fn solve_nae3sat(inst: &Nae3SatInstance) -> Result<Option<Vec<bool>>> {
    let n = inst.variable_count();
    if n > 25 {
        return Err(Error::TooLarge(format!(
            "{n} variables exceed the enumeration limit of 25"
        )));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    // Complementing an assignment preserves not-all-equal satisfaction, so
    // variable 0 can be pinned to false.
    let mut phi = vec![false; n];
    for mask in 0u64..(1 << (n - 1)) {
        for (i, slot) in phi.iter_mut().enumerate().skip(1) {
            *slot = mask >> (i - 1) & 1 == 1;
        }
        if inst.nae_satisfies(&phi) {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// Backtracking search for a proper coloring with at most `k` colors,
/// breaking color symmetry by never introducing a color more than one
/// above the largest used so far. Exact but limited to 20 vertices.
pub fn solve_kcol(inst: &KColInstance) -> Result<Option<Vec<usize>>> {
    let g = inst.graph();
    let n = g.vertex_count();
    if n > 20 {
        return Err(Error::TooLarge(format!(
            "{n} vertices exceed the backtracking limit of 20"
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        adj[u.index()].push(v.index());
        adj[v.index()].push(u.index());
    }
    let mut colors = vec![0usize; n];
    fn go(v: usize, used_max: usize, k: usize, adj: &[Vec<usize>], colors: &mut [usize]) -> bool {
        if v == colors.len() {
            return true;
        }
        for c in 1..=k.min(used_max + 1) {
            if adj[v].iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if go(v + 1, used_max.max(c), k, adj, colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    if go(0, 0, inst.k(), &adj, &mut colors) {
        debug_assert!(inst.is_proper_coloring(&colors));
        Ok(Some(colors))
    } else {
        Ok(None)
    }
}
