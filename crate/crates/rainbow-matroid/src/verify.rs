//! Standalone certificate validators.
//!
//! Everything here re-derives its verdicts from first principles: spanning
//! trees are checked with a local union-find, rainbow-ness by counting
//! class members directly, and so on. None of the certificate-producing
//! code paths are called, so a bug over there cannot vouch for its own
//! output.

use std::collections::BTreeSet;

use crate::graph::{ArcId, Digraph, EdgeId, Multigraph};
use crate::matroid::{ElemSet, Matroid};
use crate::partition::Partition;
use crate::reductions::{KColInstance, Nae3SatInstance};

/// One named pass/fail line of a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Empty when passing needs no commentary; otherwise the reason.
    pub detail: String,
}

/// Outcome of verifying one certificate against one instance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub(crate) fn check(&mut self, name: impl Into<String>, result: Option<String>) {
        match result {
            None => self.checks.push(Check { name: name.into(), pass: true, detail: String::new() }),
            Some(detail) => self.checks.push(Check { name: name.into(), pass: false, detail }),
        }
    }

    pub(crate) fn fail(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.check(name, Some(detail.into()));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// One check per line: `pass <name>` or `fail <name> <detail>`.
    pub fn render_machine(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("pass {}\n", c.name));
            } else {
                out.push_str(&format!("fail {} {}\n", c.name, c.detail));
            }
        }
        out
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("  ok    {}\n", c.name));
            } else {
                out.push_str(&format!("  FAIL  {}: {}\n", c.name, c.detail));
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        if failed == 0 {
            out.push_str(&format!("all {} checks passed\n", self.checks.len()));
        } else {
            out.push_str(&format!("{failed} of {} checks failed\n", self.checks.len()));
        }
        out
    }
}

struct Uf(Vec<usize>);

impl Uf {
    fn new(n: usize) -> Self {
        Uf((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn spanning_tree_reason(n: usize, ends: &[(usize, usize)]) -> Option<String> {
    if n == 0 {
        return if ends.is_empty() { None } else { Some("edges on an empty graph".into()) };
    }
    if ends.len() != n - 1 {
        return Some(format!("{} edges, a spanning tree needs {}", ends.len(), n - 1));
    }
    let mut uf = Uf::new(n);
    for &(u, v) in ends {
        if !uf.union(u, v) {
            return Some(format!("edge between {u} and {v} closes a cycle"));
        }
    }
    None
}

fn partition_duplicates(p: &Partition, set: &ElemSet) -> Option<String> {
    for (c, class) in p.classes().iter().enumerate() {
        let inside: Vec<u32> = class.iter().filter(|e| set.contains(e)).map(|e| e.0).collect();
        if inside.len() > 1 {
            return Some(format!("class {c} contributes elements {inside:?}"));
        }
    }
    None
}

fn disjoint_cover_reason(total: usize, parts: &[Vec<usize>]) -> Option<String> {
    let mut count = vec![0usize; total];
    for part in parts {
        for &i in part {
            if i >= total {
                return Some(format!("id {i} is not in the instance"));
            }
            count[i] += 1;
        }
    }
    match count.iter().position(|&c| c != 1) {
        Some(i) if count[i] == 0 => Some(format!("id {i} is covered by no part")),
        Some(i) => Some(format!("id {i} is covered {} times", count[i])),
        None => None,
    }
}

/// Checks that `trees` is a factorization of `g` into `k` spanning trees,
/// each rainbow for `p`.
pub fn verify_tree_factorization(
    g: &Multigraph,
    p: &Partition,
    k: usize,
    trees: &[BTreeSet<EdgeId>],
) -> Report {
    let mut r = Report::new();
    r.check(
        "part-count",
        (trees.len() != k).then(|| format!("{} parts, expected {k}", trees.len())),
    );
    let m = g.edge_count();
    let as_indexes: Vec<Vec<usize>> =
        trees.iter().map(|t| t.iter().map(|e| e.index()).collect()).collect();
    r.check("disjoint-cover", disjoint_cover_reason(m, &as_indexes));
    for (i, t) in trees.iter().enumerate() {
        if t.iter().any(|e| e.index() >= m) {
            r.fail(format!("tree{i}-spanning"), "unknown edge id");
            continue;
        }
        let ends: Vec<(usize, usize)> = t
            .iter()
            .map(|&e| {
                let (u, v) = g.endpoints(e);
                (u.index(), v.index())
            })
            .collect();
        r.check(
            format!("tree{i}-spanning"),
            spanning_tree_reason(g.vertex_count(), &ends),
        );
        let elems: ElemSet = t.iter().map(|e| crate::matroid::ElementId(e.0)).collect();
        r.check(format!("tree{i}-rainbow"), partition_duplicates(p, &elems));
    }
    r
}

/// Checks that `parts` splits the arcs of `d` into `k` sets whose
/// underlying edges form spanning trees and whose indegrees stay within
/// `bounds` in every part.
pub fn verify_branching_factorization(
    d: &Digraph,
    bounds: &[u32],
    k: usize,
    parts: &[BTreeSet<ArcId>],
) -> Report {
    let mut r = Report::new();
    r.check(
        "part-count",
        (parts.len() != k).then(|| format!("{} parts, expected {k}", parts.len())),
    );
    let n = d.vertex_count();
    r.check(
        "bounds-shape",
        (bounds.len() != n).then(|| format!("{} bounds for {n} vertices", bounds.len())),
    );
    let m = d.arc_count();
    let as_indexes: Vec<Vec<usize>> =
        parts.iter().map(|t| t.iter().map(|a| a.index()).collect()).collect();
    r.check("disjoint-cover", disjoint_cover_reason(m, &as_indexes));
    for (i, part) in parts.iter().enumerate() {
        if part.iter().any(|a| a.index() >= m) {
            r.fail(format!("part{i}-spanning"), "unknown arc id");
            continue;
        }
        let ends: Vec<(usize, usize)> = part
            .iter()
            .map(|&a| {
                let (t, h) = d.arc(a);
                (t.index(), h.index())
            })
            .collect();
        r.check(format!("part{i}-spanning"), spanning_tree_reason(n, &ends));
        if bounds.len() == n {
            let mut indeg = vec![0u32; n];
            for &(_, h) in &ends {
                indeg[h] += 1;
            }
            let bad = (0..n).find(|&v| indeg[v] > bounds[v]);
            r.check(
                format!("part{i}-indegree"),
                bad.map(|v| format!("vertex {v} has indegree {} > bound {}", indeg[v], bounds[v])),
            );
        }
    }
    r
}

/// Checks a not-all-equal satisfying assignment clause by clause.
pub fn verify_nae_assignment(inst: &Nae3SatInstance, phi: &[bool]) -> Report {
    let mut r = Report::new();
    let n = inst.variable_count();
    r.check(
        "assignment-length",
        (phi.len() != n).then(|| format!("{} values for {n} variables", phi.len())),
    );
    if phi.len() != n {
        return r;
    }
    for (c, clause) in inst.clauses().iter().enumerate() {
        let values = clause.map(|x| phi[x as usize]);
        let reason = if values.iter().all(|&b| b) {
            Some("all three literals are true".to_string())
        } else if values.iter().all(|&b| !b) {
            Some("all three literals are false".to_string())
        } else {
            None
        };
        r.check(format!("clause{c}-nae"), reason);
    }
    r
}

/// Checks a proper coloring edge by edge.
pub fn verify_coloring(inst: &KColInstance, colors: &[usize]) -> Report {
    let mut r = Report::new();
    let g = inst.graph();
    let n = g.vertex_count();
    r.check(
        "coloring-length",
        (colors.len() != n).then(|| format!("{} colors for {n} vertices", colors.len())),
    );
    if colors.len() != n {
        return r;
    }
    let k = inst.k();
    let out_of_range = colors.iter().position(|c| !(1..=k).contains(c));
    r.check(
        "color-range",
        out_of_range.map(|v| format!("vertex {v} has color {} outside 1..={k}", colors[v])),
    );
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        r.check(
            format!("edge{}-proper", e.0),
            (colors[u.index()] == colors[v.index()]).then(|| {
                format!("vertices {} and {} share color {}", u.0, v.0, colors[u.index()])
            }),
        );
    }
    r
}

/// Checks a covering of `z` by rainbow independent sets; entries flagged as
/// bases must span.
pub fn verify_cover(
    m: &Matroid,
    p: &Partition,
    z: &ElemSet,
    entries: &[(ElemSet, bool)],
) -> Report {
    let mut r = Report::new();
    let full = m.full_rank();
    let mut covered = ElemSet::new();
    for (i, (set, claims_basis)) in entries.iter().enumerate() {
        if let Some(e) = set.iter().find(|e| !m.contains(**e)) {
            r.fail(format!("set{i}-elements"), format!("element {} is not in the matroid", e.0));
            continue;
        }
        let rank = m.rank(set).expect("elements were just checked");
        r.check(
            format!("set{i}-independent"),
            (rank != set.len()).then(|| format!("rank {rank} below size {}", set.len())),
        );
        if *claims_basis {
            r.check(
                format!("set{i}-basis"),
                (rank != full || set.len() != full)
                    .then(|| format!("size {} rank {rank}, full rank is {full}", set.len())),
            );
        }
        r.check(format!("set{i}-rainbow"), partition_duplicates(p, set));
        covered.extend(set.iter().copied());
    }
    let missing: Vec<u32> = z.difference(&covered).take(8).map(|e| e.0).collect();
    r.check(
        "coverage",
        (!missing.is_empty()).then(|| format!("elements {missing:?} are uncovered")),
    );
    r
}
