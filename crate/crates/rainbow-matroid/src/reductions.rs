//! Instance transformations among satisfiability, coloring, and rainbow
//! factorization problems, with certificate maps in both directions.
//!
//! Problems involved:
//! - NAE-3SAT: monotone not-all-equal satisfiability; every clause holds
//!   three distinct nonnegated variables and wants at least one true and one
//!   false among them.
//! - RSTkF: factorize a k-multiple tree into k spanning trees, each taking
//!   at most one edge per class of a k-uniform edge partition. GRST2F is the
//!   relaxation for k = 2 where the partition is only 2-bounded.
//! - kCOL: proper vertex coloring with at most k colors.
//! - BSTkF: factorize a digraph into k arc sets whose underlying graphs are
//!   spanning trees and which enter every vertex `v` at most `bound(v)`
//!   times.
//!
//! Every `reduce_*` function builds the target instance together with a
//! [`GadgetLabels`] table locating each gadget piece in the result. The
//! accompanying certificate maps translate witnesses in both directions;
//! they validate what they are given and refuse certificates that do not
//! solve the instance they claim to solve.
//!
//! All arbitrary choices (hub vertices, orderings, orientations) are fixed
//! to input order so that rebuilding an instance is reproducible; the arc
//! construction additionally accepts a seed to randomize edge orientations.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{
    identify_vertices, is_spanning_tree, ArcId, Digraph, EdgeId, Multigraph, VertexId,
};
use crate::matroid::{ElemSet, ElementId, Matroid};
use crate::partition::Partition;
use crate::union::k_base_factorize;

/// The kind-tagged id a gadget label resolves to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LabelId {
    Vertex(VertexId),
    Edge(EdgeId),
    Arc(ArcId),
}

/// Where the pieces of a gadget construction ended up.
///
/// Keys are short structured names such as `f2[1,0]` (an edge of the
/// incidence gadget for variable 1 in clause 0) or `zw[2,0,5]` (an arc from
/// the first spare vertex of class 2 to the collector of edge 5). Names are
/// unique, and no two names of the same kind map to the same id.
#[derive(Debug, Clone, Default)]
pub struct GadgetLabels {
    map: BTreeMap<String, LabelId>,
}

impl GadgetLabels {
    pub fn new() -> Self {
        GadgetLabels::default()
    }

    pub fn insert(&mut self, name: impl Into<String>, id: LabelId) {
        let name = name.into();
        let old = self.map.insert(name.clone(), id);
        assert!(old.is_none(), "label {name} defined twice");
    }

    pub fn get(&self, name: &str) -> Option<LabelId> {
        self.map.get(name).copied()
    }

    pub fn edge(&self, name: &str) -> Result<EdgeId> {
        match self.map.get(name) {
            Some(LabelId::Edge(e)) => Ok(*e),
            _ => Err(Error::UnknownElement(format!("label {name}"))),
        }
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        match self.map.get(name) {
            Some(LabelId::Vertex(v)) => Ok(*v),
            _ => Err(Error::UnknownVertex(format!("label {name}"))),
        }
    }

    pub fn arc(&self, name: &str) -> Result<ArcId> {
        match self.map.get(name) {
            Some(LabelId::Arc(a)) => Ok(*a),
            _ => Err(Error::UnknownElement(format!("label {name}"))),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// No two labels of the same kind share an id.
    pub fn ids_are_distinct(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.map.values().all(|&id| seen.insert(id))
    }
}

/// Edge ids as matroid elements of the graphic matroid on the same graph.
pub fn edges_to_elements(edges: &BTreeSet<EdgeId>) -> ElemSet {
    edges.iter().map(|e| ElementId(e.0)).collect()
}

/// Inverse of [`edges_to_elements`].
pub fn elements_to_edges(elems: &ElemSet) -> BTreeSet<EdgeId> {
    elems.iter().map(|e| EdgeId(e.0)).collect()
}

/// A monotone not-all-equal satisfiability instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nae3SatInstance {
    n_vars: usize,
    clauses: Vec<[u32; 3]>,
}

impl Nae3SatInstance {
    /// Clauses are stored with their variables sorted ascending.
    pub fn new(n_vars: usize, clauses: Vec<[u32; 3]>) -> Result<Self> {
        let mut sorted = Vec::with_capacity(clauses.len());
        for mut c in clauses {
            c.sort();
            if c[0] == c[1] || c[1] == c[2] {
                return Err(Error::invalid(format!(
                    "clause {c:?} repeats a variable"
                )));
            }
            if c[2] as usize >= n_vars {
                return Err(Error::invalid(format!(
                    "clause {c:?} names a variable beyond {n_vars}"
                )));
            }
            sorted.push(c);
        }
        Ok(Nae3SatInstance { n_vars, clauses: sorted })
    }

    pub fn variable_count(&self) -> usize {
        self.n_vars
    }

    pub fn clauses(&self) -> &[[u32; 3]] {
        &self.clauses
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// (variable, clause) pairs in clause-major order; pair `3c + p` is the
    /// `p`-th smallest variable of clause `c`.
    pub fn incidences(&self) -> Vec<(u32, usize)> {
        let mut out = Vec::with_capacity(3 * self.clauses.len());
        for (c, clause) in self.clauses.iter().enumerate() {
            for &x in clause {
                out.push((x, c));
            }
        }
        out
    }

    /// Clause indexes containing variable `x`, ascending.
    pub fn occurrences(&self, x: u32) -> Vec<usize> {
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&x))
            .map(|(i, _)| i)
            .collect()
    }

    /// Every clause sees at least one true and at least one false variable.
    pub fn nae_satisfies(&self, phi: &[bool]) -> bool {
        phi.len() == self.n_vars
            && self.clauses.iter().all(|c| {
                let trues = c.iter().filter(|&&x| phi[x as usize]).count();
                trues >= 1 && trues <= 2
            })
    }
}

/// A graph coloring instance: color the vertices of `graph` with at most
/// `k >= 3` colors so that adjacent vertices differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KColInstance {
    graph: Multigraph,
    k: usize,
}

impl KColInstance {
    pub fn new(graph: Multigraph, k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid("coloring instances need k >= 3"));
        }
        Ok(KColInstance { graph, k })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Colors are 1-based; every edge must see two distinct colors.
    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.graph.vertex_count()
            && colors.iter().all(|&c| (1..=self.k).contains(&c))
            && self.graph.edge_ids().all(|e| {
                let (u, v) = self.graph.endpoints(e);
                colors[u.index()] != colors[v.index()]
            })
    }
}

/// A rainbow tree factorization instance: split the edges of `graph` into
/// `k` spanning trees, each containing at most one edge per partition class.
///
/// The partition lives on the edge set via the id correspondence of
/// [`edges_to_elements`]. Strict instances have a k-uniform partition on a
/// k-multiple tree; the generalized two-tree variant only requires classes
/// of size at most 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RstkfInstance {
    graph: Multigraph,
    partition: Partition,
    k: usize,
}

impl RstkfInstance {
    pub fn new(graph: Multigraph, partition: Partition, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("factorization instances need k >= 2"));
        }
        let mut ground = partition.ground().to_vec();
        ground.sort();
        let want: Vec<ElementId> =
            (0..graph.edge_count() as u32).map(ElementId).collect();
        if ground != want {
            return Err(Error::invalid(
                "partition ground set must be exactly the edge set",
            ));
        }
        if partition.max_class_size() > k {
            return Err(Error::invalid(format!(
                "class of size {} exceeds k = {k}",
                partition.max_class_size()
            )));
        }
        Ok(RstkfInstance { graph, partition, k })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::graphic(&self.graph)
    }

    /// Whether the instance satisfies the strict problem's promise: the
    /// partition is k-uniform and the graph factorizes into k spanning
    /// trees when classes are ignored.
    pub fn is_strict(&self) -> bool {
        let n = self.graph.vertex_count();
        self.partition.is_uniform(self.k)
            && (n == 0 || {
                let m = self.matroid();
                m.full_rank() == n - 1 && k_base_factorize(&m, self.k).is_ok()
            })
    }
}

/// An indegree-bounded branching factorization instance: split the arcs of
/// `digraph` into `k` parts whose underlying edge sets are spanning trees,
/// where part `i` may enter vertex `v` at most `bounds[v]` times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BstkfInstance {
    digraph: Digraph,
    bounds: Vec<u32>,
    k: usize,
}

impl BstkfInstance {
    pub fn new(digraph: Digraph, bounds: Vec<u32>, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid("factorization instances need k >= 2"));
        }
        if bounds.len() != digraph.vertex_count() {
            return Err(Error::invalid(format!(
                "{} bounds for {} vertices",
                bounds.len(),
                digraph.vertex_count()
            )));
        }
        Ok(BstkfInstance { digraph, bounds, k })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn bound(&self, v: VertexId) -> u32 {
        self.bounds[v.index()]
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// A four-vertex multigraph made of three bundles of `m` parallel edges
/// through a common center vertex plus the three edges avoiding the center.
/// `single_a` shares no vertex with the `bundle_a` edges, and likewise for
/// b and c. With m = 1 this is the complete graph on four vertices.
#[derive(Debug, Clone)]
pub struct MarihuanaLeaf {
    pub graph: Multigraph,
    pub bundle_a: Vec<EdgeId>,
    pub bundle_b: Vec<EdgeId>,
    pub bundle_c: Vec<EdgeId>,
    pub single_a: EdgeId,
    pub single_b: EdgeId,
    pub single_c: EdgeId,
    /// The vertex all bundles share; gluing constructions identify here.
    pub center: VertexId,
}

/// Builds the labeled leaf gadget with bundle size `m >= 1`: 4 vertices and
/// `3m + 3` edges. Vertex 0 is the center; bundle edges come first (a, b, c
/// blocks of m), then the three singles.
pub fn marihuana_leaf(m: usize) -> Result<MarihuanaLeaf> {
    if m < 1 {
        return Err(Error::invalid("bundle size must be at least 1"));
    }
    let mut g = Multigraph::with_vertices(4);
    let center = VertexId(0);
    let bundle = |g: &mut Multigraph, other: u32| -> Vec<EdgeId> {
        (0..m).map(|_| g.add_edge(center, VertexId(other)).unwrap()).collect()
    };
    let bundle_a = bundle(&mut g, 1);
    let bundle_b = bundle(&mut g, 2);
    let bundle_c = bundle(&mut g, 3);
    let single_a = g.add_edge(VertexId(2), VertexId(3)).unwrap();
    let single_b = g.add_edge(VertexId(1), VertexId(3)).unwrap();
    let single_c = g.add_edge(VertexId(1), VertexId(2)).unwrap();
    Ok(MarihuanaLeaf {
        graph: g,
        bundle_a,
        bundle_b,
        bundle_c,
        single_a,
        single_b,
        single_c,
        center,
    })
}

/// Splits a complete graph on four vertices into two spanning trees with
/// `f1` forced into the first and `f2` into the second, where `(f1, f2)`
/// partitions the edges at `v`. Such a factorization exists exactly when
/// both sides are nonempty; an empty side is reported as an error.
///
/// The finite search is over all 3-edge subsets, so the result is the
/// lexicographically first valid factorization.
pub fn k4_factorization_with_split(
    g: &Multigraph,
    v: VertexId,
    f1: &BTreeSet<EdgeId>,
    f2: &BTreeSet<EdgeId>,
) -> Result<(BTreeSet<EdgeId>, BTreeSet<EdgeId>)> {
    if g.vertex_count() != 4 || g.edge_count() != 6 {
        return Err(Error::invalid("graph is not a complete graph on 4 vertices"));
    }
    let mut pairs = BTreeSet::new();
    for e in g.edge_ids() {
        let (a, b) = g.endpoints(e);
        pairs.insert((a.min(b), a.max(b)));
    }
    if pairs.len() != 6 {
        return Err(Error::invalid("graph is not a complete graph on 4 vertices"));
    }
    if v.index() >= 4 {
        return Err(Error::UnknownVertex(format!("{}", v.0)));
    }
    let star: BTreeSet<EdgeId> = g
        .edge_ids()
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            a == v || b == v
        })
        .collect();
    if !f1.is_disjoint(f2) || &(f1 | f2) != &star {
        return Err(Error::invalid(
            "the two sides must partition the edges at the chosen vertex",
        ));
    }
    if f1.is_empty() || f2.is_empty() {
        return Err(Error::NoFactorization(
            "one side of the split is empty, so its tree cannot reach the vertex"
                .into(),
        ));
    }
    let all: Vec<EdgeId> = g.edge_ids().collect();
    for i in 0..6 {
        for j in i + 1..6 {
            for l in j + 1..6 {
                let t1: BTreeSet<EdgeId> = [all[i], all[j], all[l]].into();
                let t2: BTreeSet<EdgeId> =
                    all.iter().copied().filter(|e| !t1.contains(e)).collect();
                if f1.is_subset(&t1)
                    && f2.is_subset(&t2)
                    && is_spanning_tree(g, &t1)?
                    && is_spanning_tree(g, &t2)?
                {
                    return Ok((t1, t2));
                }
            }
        }
    }
    unreachable!("a split with both sides nonempty always extends to two trees")
}

/// Colors the complete bipartite graph between `k` left vertices and `k - 1`
/// right vertices so that every right vertex sees all `k` colors and left
/// vertex `a` sees exactly the colors other than `sigma[a]`.
///
/// `sigma` must be a bijection onto `1..=k`. The returned table maps
/// `phi[a][j]` to the color of the edge between left vertex `a` and right
/// vertex `j`, computed as `((sigma[a] + j) mod k) + 1`.
pub fn bipartite_coloring(k: usize, sigma: &[usize]) -> Result<Vec<Vec<usize>>> {
    if sigma.len() != k {
        return Err(Error::invalid(format!(
            "{} colors assigned to {k} vertices",
            sigma.len()
        )));
    }
    let mut seen = vec![false; k + 1];
    for &s in sigma {
        if s < 1 || s > k || seen[s] {
            return Err(Error::invalid("sigma is not a bijection onto 1..=k"));
        }
        seen[s] = true;
    }
    Ok((0..k)
        .map(|a| (0..k.saturating_sub(1)).map(|j| ((sigma[a] + j) % k) + 1).collect())
        .collect())
}

// ---------------------------------------------------------------------------
// Shared certificate validation for the maps below. The standalone checkers
// in the verify module are written independently of this code.

fn check_tree_factorization(
    graph: &Multigraph,
    partition: &Partition,
    k: usize,
    trees: &[BTreeSet<EdgeId>],
) -> Result<()> {
    if trees.len() != k {
        return Err(Error::cert(format!("{} trees, expected {k}", trees.len())));
    }
    let mut covered: BTreeSet<EdgeId> = BTreeSet::new();
    let mut total = 0usize;
    for t in trees {
        total += t.len();
        covered.extend(t.iter().copied());
    }
    if total != graph.edge_count() || covered.len() != graph.edge_count() {
        return Err(Error::cert("trees do not partition the edge set"));
    }
    for (i, t) in trees.iter().enumerate() {
        if !is_spanning_tree(graph, t)? {
            return Err(Error::cert(format!("part {i} is not a spanning tree")));
        }
        if !partition.is_rainbow(&edges_to_elements(t)) {
            return Err(Error::cert(format!(
                "part {i} holds two edges of one class"
            )));
        }
    }
    Ok(())
}

fn check_branching_factorization(
    inst: &BstkfInstance,
    parts: &[BTreeSet<ArcId>],
) -> Result<()> {
    let d = inst.digraph();
    if parts.len() != inst.k() {
        return Err(Error::cert(format!(
            "{} parts, expected {}",
            parts.len(),
            inst.k()
        )));
    }
    let mut covered: BTreeSet<ArcId> = BTreeSet::new();
    let mut total = 0usize;
    for p in parts {
        total += p.len();
        covered.extend(p.iter().copied());
    }
    if total != d.arc_count() || covered.len() != d.arc_count() {
        return Err(Error::cert("parts do not partition the arc set"));
    }
    let ug = crate::graph::underlying_graph(d);
    for (i, p) in parts.iter().enumerate() {
        let edges: BTreeSet<EdgeId> = p.iter().map(|a| EdgeId(a.0)).collect();
        if !is_spanning_tree(&ug, &edges)? {
            return Err(Error::cert(format!(
                "part {i} is not a spanning tree of the underlying graph"
            )));
        }
        let mut indeg = vec![0u32; d.vertex_count()];
        for &a in p {
            let (_, head) = d.arc(a);
            indeg[head.index()] += 1;
        }
        for v in d.vertex_ids() {
            if indeg[v.index()] > inst.bound(v) {
                return Err(Error::cert(format!(
                    "part {i} enters vertex {} {} times, bound {}",
                    v.0,
                    indeg[v.index()],
                    inst.bound(v)
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Satisfiability -> generalized rainbow 2-factorization.

/// Output of [`reduce_nae_to_grst2f`]: the built instance, the label table,
/// and the source instance the certificate maps refer back to.
#[derive(Debug, Clone)]
pub struct NaeReduction {
    pub source: Nae3SatInstance,
    pub instance: RstkfInstance,
    pub labels: GadgetLabels,
    incidence_edges: Vec<Vec<EdgeId>>,
    clause_edges: Vec<Vec<EdgeId>>,
}

// Local edge ids of a complete 4-vertex graph in lexicographic endpoint
// order: 01, 02, 03, 12, 13, 23.
const K4_E1: usize = 0; // 01
const K4_F1: usize = 1; // 02
const K4_G1: usize = 2; // 03
const K4_G2: usize = 3; // 12
const K4_F2: usize = 4; // 13
const K4_E2: usize = 5; // 23

/// Builds a generalized rainbow 2-factorization instance that is solvable
/// exactly when the satisfiability instance is.
///
/// One 4-clique gadget per (variable, clause) incidence carries the three
/// non-adjacent edge pairs `{e1,e2}`, `{f1,f2}`, `{g1,g2}`; one 4-clique per
/// clause carries three edges `e`, `f`, `g` at a shared vertex. All gadgets
/// are glued at a single hub vertex. Classes: `{e1,e2}` per incidence, the
/// chain `{f1 of this occurrence, g1 of the next}` per variable, and
/// `{clause edge, f2 of its incidence}` per incidence; everything else stays
/// a singleton. The result has `24 * clauses` edges and `12 * clauses + 1`
/// vertices.
pub fn reduce_nae_to_grst2f(source: &Nae3SatInstance) -> Result<NaeReduction> {
    let incidences = source.incidences();
    if incidences.is_empty() {
        return Err(Error::invalid("instance has no clauses"));
    }
    let k4 = Multigraph::complete(4);
    let parts: Vec<(&Multigraph, VertexId)> = (0..incidences.len()
        + source.clause_count())
        .map(|_| (&k4, VertexId(0)))
        .collect();
    let merged = identify_vertices(&parts)?;
    let incidence_edges: Vec<Vec<EdgeId>> =
        merged.edge_maps[..incidences.len()].to_vec();
    let clause_edges: Vec<Vec<EdgeId>> = merged.edge_maps[incidences.len()..].to_vec();

    let mut labels = GadgetLabels::new();
    labels.insert("hub", LabelId::Vertex(merged.hub));
    for (zi, &(x, c)) in incidences.iter().enumerate() {
        let e = &incidence_edges[zi];
        labels.insert(format!("e1[{x},{c}]"), LabelId::Edge(e[K4_E1]));
        labels.insert(format!("e2[{x},{c}]"), LabelId::Edge(e[K4_E2]));
        labels.insert(format!("f1[{x},{c}]"), LabelId::Edge(e[K4_F1]));
        labels.insert(format!("f2[{x},{c}]"), LabelId::Edge(e[K4_F2]));
        labels.insert(format!("g1[{x},{c}]"), LabelId::Edge(e[K4_G1]));
        labels.insert(format!("g2[{x},{c}]"), LabelId::Edge(e[K4_G2]));
    }
    for c in 0..source.clause_count() {
        let e = &clause_edges[c];
        labels.insert(format!("e[{c}]"), LabelId::Edge(e[K4_E1]));
        labels.insert(format!("f[{c}]"), LabelId::Edge(e[K4_F1]));
        labels.insert(format!("g[{c}]"), LabelId::Edge(e[K4_G1]));
    }

    let elem = |e: EdgeId| ElementId(e.0);
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    for (zi, _) in incidences.iter().enumerate() {
        classes.push(vec![
            elem(incidence_edges[zi][K4_E1]),
            elem(incidence_edges[zi][K4_E2]),
        ]);
    }
    for x in 0..source.variable_count() as u32 {
        let occ = source.occurrences(x);
        for w in occ.windows(2) {
            let zi_a = incidence_index(source, x, w[0]);
            let zi_b = incidence_index(source, x, w[1]);
            classes.push(vec![
                elem(incidence_edges[zi_a][K4_F1]),
                elem(incidence_edges[zi_b][K4_G1]),
            ]);
        }
    }
    for c in 0..source.clause_count() {
        for pos in 0..3 {
            classes.push(vec![
                elem(clause_edges[c][[K4_E1, K4_F1, K4_G1][pos]]),
                elem(incidence_edges[3 * c + pos][K4_F2]),
            ]);
        }
    }
    let ground: Vec<ElementId> =
        (0..merged.graph.edge_count() as u32).map(ElementId).collect();
    let partition = Partition::new(ground, classes)?;
    let instance = RstkfInstance::new(merged.graph, partition, 2)?;
    Ok(NaeReduction {
        source: source.clone(),
        instance,
        labels,
        incidence_edges,
        clause_edges,
    })
}

fn incidence_index(source: &Nae3SatInstance, x: u32, clause: usize) -> usize {
    let pos = source.clauses()[clause]
        .iter()
        .position(|&y| y == x)
        .expect("variable occurs in the clause");
    3 * clause + pos
}

/// Translates a satisfying assignment into two rainbow spanning trees of the
/// reduced instance. Fails if the assignment does not satisfy the source.
pub fn nae_cert_to_trees(
    red: &NaeReduction,
    phi: &[bool],
) -> Result<[BTreeSet<EdgeId>; 2]> {
    if phi.len() != red.source.variable_count() {
        return Err(Error::invalid(format!(
            "{} values for {} variables",
            phi.len(),
            red.source.variable_count()
        )));
    }
    if !red.source.nae_satisfies(phi) {
        return Err(Error::cert(
            "assignment leaves some clause all-equal",
        ));
    }
    let mut t1 = BTreeSet::new();
    let mut t2 = BTreeSet::new();
    for (zi, &(x, _)) in red.source.incidences().iter().enumerate() {
        let e = &red.incidence_edges[zi];
        if phi[x as usize] {
            t1.extend([e[K4_E1], e[K4_F1], e[K4_F2]]);
            t2.extend([e[K4_E2], e[K4_G1], e[K4_G2]]);
        } else {
            t1.extend([e[K4_E1], e[K4_G1], e[K4_G2]]);
            t2.extend([e[K4_E2], e[K4_F1], e[K4_F2]]);
        }
    }
    let k4 = Multigraph::complete(4);
    for (c, clause) in red.source.clauses().iter().enumerate() {
        let mut side1 = BTreeSet::new();
        let mut side2 = BTreeSet::new();
        for (pos, &x) in clause.iter().enumerate() {
            let local = EdgeId([K4_E1, K4_F1, K4_G1][pos] as u32);
            if phi[x as usize] {
                side2.insert(local);
            } else {
                side1.insert(local);
            }
        }
        let (local1, local2) =
            k4_factorization_with_split(&k4, VertexId(0), &side1, &side2)?;
        t1.extend(local1.iter().map(|e| red.clause_edges[c][e.index()]));
        t2.extend(local2.iter().map(|e| red.clause_edges[c][e.index()]));
    }
    debug_assert!(check_tree_factorization(
        red.instance.graph(),
        red.instance.partition(),
        2,
        &[t1.clone(), t2.clone()]
    )
    .is_ok());
    Ok([t1, t2])
}

/// Reads a satisfying assignment off a rainbow 2-factorization of the
/// reduced instance: a variable is true when the `f2` edges of all its
/// occurrences sit in the first tree.
pub fn trees_to_nae_cert(
    red: &NaeReduction,
    trees: &[BTreeSet<EdgeId>],
) -> Result<Vec<bool>> {
    check_tree_factorization(red.instance.graph(), red.instance.partition(), 2, trees)?;
    let mut phi = vec![false; red.source.variable_count()];
    for x in 0..red.source.variable_count() as u32 {
        let occ = red.source.occurrences(x);
        let mut value: Option<bool> = None;
        for &c in &occ {
            let f2 = red.incidence_edges[incidence_index(&red.source, x, c)][K4_F2];
            let here = trees[0].contains(&f2);
            if value.replace(here) == Some(!here) {
                return Err(Error::cert(format!(
                    "occurrences of variable {x} disagree"
                )));
            }
        }
        phi[x as usize] = value.unwrap_or(false);
    }
    if !red.source.nae_satisfies(&phi) {
        return Err(Error::cert("recovered assignment fails a clause"));
    }
    Ok(phi)
}

// ---------------------------------------------------------------------------
// Generalized -> strict rainbow 2-factorization, by doubling.

/// Output of [`reduce_grst2f_to_rst2f`].
#[derive(Debug, Clone)]
pub struct DoublingReduction {
    pub source: RstkfInstance,
    pub instance: RstkfInstance,
    pub labels: GadgetLabels,
    copy_edges: [Vec<EdgeId>; 2],
}

/// Turns a 2-bounded instance on a double tree into a 2-uniform one: two
/// copies of the graph glued at one vertex, where each 2-class is kept per
/// copy and each remaining edge is paired with its own twin.
pub fn reduce_grst2f_to_rst2f(source: &RstkfInstance) -> Result<DoublingReduction> {
    if source.k() != 2 {
        return Err(Error::invalid("doubling is defined for k = 2"));
    }
    let g = source.graph();
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::invalid("graph has no vertices"));
    }
    let m = source.matroid();
    if m.full_rank() != n - 1 || !crate::union::is_two_base(&m) {
        return Err(Error::invalid("input graph is not a double tree"));
    }
    let merged = identify_vertices(&[(g, VertexId(0)), (g, VertexId(0))])?;
    let copy_edges: [Vec<EdgeId>; 2] =
        [merged.edge_maps[0].clone(), merged.edge_maps[1].clone()];

    let mut labels = GadgetLabels::new();
    labels.insert("hub", LabelId::Vertex(merged.hub));
    for e in g.edge_ids() {
        labels.insert(format!("e1[{}]", e.0), LabelId::Edge(copy_edges[0][e.index()]));
        labels.insert(format!("e2[{}]", e.0), LabelId::Edge(copy_edges[1][e.index()]));
    }

    let elem = |e: EdgeId| ElementId(e.0);
    let mut in_pair = vec![false; g.edge_count()];
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    for class in source.partition().classes() {
        if class.len() == 2 {
            for copy in &copy_edges {
                classes.push(
                    class.iter().map(|x| elem(copy[x.0 as usize])).collect(),
                );
            }
            for x in class {
                in_pair[x.0 as usize] = true;
            }
        }
    }
    for e in g.edge_ids() {
        if !in_pair[e.index()] {
            classes.push(vec![
                elem(copy_edges[0][e.index()]),
                elem(copy_edges[1][e.index()]),
            ]);
        }
    }
    let ground: Vec<ElementId> =
        (0..merged.graph.edge_count() as u32).map(ElementId).collect();
    let partition = Partition::new(ground, classes)?;
    let instance = RstkfInstance::new(merged.graph, partition, 2)?;
    Ok(DoublingReduction { source: source.clone(), instance, labels, copy_edges })
}

/// Maps a solution of the original instance onto the doubled one: the first
/// tree takes copy 1 of itself and copy 2 of the other tree.
pub fn grst2f_cert_to_rst2f(
    red: &DoublingReduction,
    trees: &[BTreeSet<EdgeId>],
) -> Result<[BTreeSet<EdgeId>; 2]> {
    check_tree_factorization(red.source.graph(), red.source.partition(), 2, trees)?;
    let lift = |own: &BTreeSet<EdgeId>, other: &BTreeSet<EdgeId>| {
        own.iter()
            .map(|e| red.copy_edges[0][e.index()])
            .chain(other.iter().map(|e| red.copy_edges[1][e.index()]))
            .collect::<BTreeSet<EdgeId>>()
    };
    let out = [lift(&trees[0], &trees[1]), lift(&trees[1], &trees[0])];
    debug_assert!(check_tree_factorization(
        red.instance.graph(),
        red.instance.partition(),
        2,
        &out
    )
    .is_ok());
    Ok(out)
}

/// Reads a solution of the original instance off the doubled one by keeping
/// only the first copy.
pub fn rst2f_cert_to_grst2f(
    red: &DoublingReduction,
    trees: &[BTreeSet<EdgeId>],
) -> Result<[BTreeSet<EdgeId>; 2]> {
    check_tree_factorization(red.instance.graph(), red.instance.partition(), 2, trees)?;
    let mut out = [BTreeSet::new(), BTreeSet::new()];
    for e in red.source.graph().edge_ids() {
        let copy1 = red.copy_edges[0][e.index()];
        let side = usize::from(!trees[0].contains(&copy1));
        out[side].insert(e);
    }
    check_tree_factorization(red.source.graph(), red.source.partition(), 2, &out)?;
    Ok(out)
}

// ---------------------------------------------------------------------------
// Coloring -> rainbow k-factorization.

/// Output of [`reduce_kcol_to_rstkf`].
#[derive(Debug, Clone)]
pub struct KColReduction {
    pub source: KColInstance,
    pub instance: RstkfInstance,
    pub labels: GadgetLabels,
    leaf_edges: Vec<Vec<EdgeId>>,
}

/// Builds a rainbow k-factorization instance solvable exactly when the
/// source graph is k-colorable.
///
/// Every edge `e = uv` of the source becomes a leaf gadget with bundle size
/// `k - 1`, glued at the centers into one hub. Labels follow the gadget
/// roles: `F[e]`/`f[e]` for the bundle-plus-opposite-edge pair forming its
/// own class, and `F[e,w]`/`f[e,w]` for the two endpoint-owned bundles whose
/// chains encode the coloring constraint. Per vertex the classes chain
/// cyclically through its incident edges in input order. The result has
/// `3k` edges per source edge.
pub fn reduce_kcol_to_rstkf(source: &KColInstance) -> Result<KColReduction> {
    let k = source.k();
    let h = source.graph();
    let leaf = marihuana_leaf(k - 1)?;
    let (merged_graph, leaf_edges, hub) = if h.edge_count() == 0 {
        (Multigraph::with_vertices(1), Vec::new(), VertexId(0))
    } else {
        let parts: Vec<(&Multigraph, VertexId)> =
            (0..h.edge_count()).map(|_| (&leaf.graph, leaf.center)).collect();
        let merged = identify_vertices(&parts)?;
        (merged.graph, merged.edge_maps, merged.hub)
    };

    let mut labels = GadgetLabels::new();
    labels.insert("hub", LabelId::Vertex(hub));
    for e in h.edge_ids() {
        let (u, v) = h.endpoints(e);
        let map = &leaf_edges[e.index()];
        for (i, &b) in leaf.bundle_a.iter().enumerate() {
            labels.insert(format!("F[{}]#{i}", e.0), LabelId::Edge(map[b.index()]));
        }
        labels.insert(format!("f[{}]", e.0), LabelId::Edge(map[leaf.single_a.index()]));
        for (i, &b) in leaf.bundle_b.iter().enumerate() {
            labels.insert(
                format!("F[{},{}]#{i}", e.0, u.0),
                LabelId::Edge(map[b.index()]),
            );
        }
        labels.insert(
            format!("f[{},{}]", e.0, u.0),
            LabelId::Edge(map[leaf.single_c.index()]),
        );
        for (i, &b) in leaf.bundle_c.iter().enumerate() {
            labels.insert(
                format!("F[{},{}]#{i}", e.0, v.0),
                LabelId::Edge(map[b.index()]),
            );
        }
        labels.insert(
            format!("f[{},{}]", e.0, v.0),
            LabelId::Edge(map[leaf.single_b.index()]),
        );
    }

    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    for e in h.edge_ids() {
        let map = &leaf_edges[e.index()];
        let mut class: Vec<ElementId> =
            leaf.bundle_a.iter().map(|b| ElementId(map[b.index()].0)).collect();
        class.push(ElementId(map[leaf.single_a.index()].0));
        classes.push(class);
    }
    for w in h.vertex_ids() {
        let incident: Vec<EdgeId> = h
            .edge_ids()
            .filter(|&e| {
                let (u, v) = h.endpoints(e);
                u == w || v == w
            })
            .collect();
        let side = |e: EdgeId| -> (Vec<EdgeId>, EdgeId) {
            let map = &leaf_edges[e.index()];
            let (u, _) = h.endpoints(e);
            if u == w {
                (
                    leaf.bundle_b.iter().map(|b| map[b.index()]).collect(),
                    map[leaf.single_c.index()],
                )
            } else {
                (
                    leaf.bundle_c.iter().map(|b| map[b.index()]).collect(),
                    map[leaf.single_b.index()],
                )
            }
        };
        for (i, &e) in incident.iter().enumerate() {
            let next = incident[(i + 1) % incident.len()];
            let (bundle, _) = side(e);
            let (_, single) = side(next);
            let mut class: Vec<ElementId> =
                bundle.iter().map(|b| ElementId(b.0)).collect();
            class.push(ElementId(single.0));
            classes.push(class);
        }
    }
    let ground: Vec<ElementId> =
        (0..merged_graph.edge_count() as u32).map(ElementId).collect();
    let partition = Partition::new(ground, classes)?;
    let instance = RstkfInstance::new(merged_graph, partition, k)?;
    Ok(KColReduction { source: source.clone(), instance, labels, leaf_edges })
}

/// Translates a proper coloring into k rainbow spanning trees: per gadget,
/// tree `color(u)` takes the two singles owned by `u`'s side, tree
/// `color(v)` takes `v`'s single, and each bundle spreads over the other
/// trees one edge apiece.
pub fn coloring_to_trees(
    red: &KColReduction,
    colors: &[usize],
) -> Result<Vec<BTreeSet<EdgeId>>> {
    if !red.source.is_proper_coloring(colors) {
        return Err(Error::cert("not a proper coloring of the source graph"));
    }
    let k = red.source.k();
    let h = red.source.graph();
    let leaf = marihuana_leaf(k - 1)?;
    let mut trees: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); k];
    for e in h.edge_ids() {
        let (u, v) = h.endpoints(e);
        let (cu, cv) = (colors[u.index()], colors[v.index()]);
        let map = &red.leaf_edges[e.index()];
        let mut spread = |bundle: &[EdgeId], single: EdgeId, skip: usize| {
            trees[skip - 1].insert(map[single.index()]);
            let others = (1..=k).filter(|&i| i != skip);
            for (i, b) in others.zip(bundle) {
                trees[i - 1].insert(map[b.index()]);
            }
        };
        spread(&leaf.bundle_a, leaf.single_a, cu);
        spread(&leaf.bundle_b, leaf.single_c, cu);
        spread(&leaf.bundle_c, leaf.single_b, cv);
    }
    debug_assert!(check_tree_factorization(
        red.instance.graph(),
        red.instance.partition(),
        k,
        &trees
    )
    .is_ok());
    Ok(trees)
}

/// Reads a proper coloring off a rainbow k-factorization: a vertex gets the
/// index of the tree holding its single edges, which agree across all its
/// gadgets.
pub fn trees_to_coloring(
    red: &KColReduction,
    trees: &[BTreeSet<EdgeId>],
) -> Result<Vec<usize>> {
    let k = red.source.k();
    check_tree_factorization(red.instance.graph(), red.instance.partition(), k, trees)?;
    let h = red.source.graph();
    let leaf = marihuana_leaf(k - 1)?;
    let mut colors = vec![1usize; h.vertex_count()];
    for w in h.vertex_ids() {
        let mut value: Option<usize> = None;
        for e in h.edge_ids() {
            let (u, v) = h.endpoints(e);
            if u != w && v != w {
                continue;
            }
            let single =
                if u == w { leaf.single_c } else { leaf.single_b };
            let edge = red.leaf_edges[e.index()][single.index()];
            let here = trees
                .iter()
                .position(|t| t.contains(&edge))
                .expect("trees partition the edge set")
                + 1;
            if value.replace(here).is_some_and(|old| old != here) {
                return Err(Error::cert(format!(
                    "gadgets at vertex {} disagree on its color",
                    w.0
                )));
            }
        }
        colors[w.index()] = value.unwrap_or(1);
    }
    if !red.source.is_proper_coloring(&colors) {
        return Err(Error::cert("recovered coloring is not proper"));
    }
    Ok(colors)
}

// ---------------------------------------------------------------------------
// Rainbow k-factorization -> indegree-bounded branching factorization.

/// Output of [`reduce_rstkf_to_bstkf`].
#[derive(Debug, Clone)]
pub struct IndegreeReduction {
    pub source: RstkfInstance,
    pub instance: BstkfInstance,
    pub labels: GadgetLabels,
    /// Chosen orientation per source edge: (bundle tail, single tail).
    pub orientations: Vec<(VertexId, VertexId)>,
}

/// Builds an indegree-bounded instance solvable exactly when the k-uniform
/// rainbow instance is.
///
/// Each edge `e = uv` gets a collector vertex `w[e]` with `k` parallel arcs
/// from `u` and one arc from `v`; each class `X` gets `k - 1` spare vertices
/// `z[X,i]` with an arc to every collector of `X`. Collectors allow indegree
/// 2, everything else 0. The result has `2k` arcs per source edge.
///
/// Edge orientations default to stored endpoint order; passing a seed flips
/// each edge by an independent coin toss.
pub fn reduce_rstkf_to_bstkf(
    source: &RstkfInstance,
    orientation_seed: Option<u64>,
) -> Result<IndegreeReduction> {
    let k = source.k();
    if !source.partition().is_uniform(k) {
        return Err(Error::invalid(format!("partition is not {k}-uniform")));
    }
    let g = source.graph();
    let n = g.vertex_count();
    let m = g.edge_count();

    let mut rng = orientation_seed.map(ChaCha8Rng::seed_from_u64);
    let orientations: Vec<(VertexId, VertexId)> = g
        .edge_ids()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            let flip = rng.as_mut().is_some_and(|r| r.random_range(0..2u8) == 1);
            if flip {
                (v, u)
            } else {
                (u, v)
            }
        })
        .collect();

    let classes = source.partition().classes();
    let mut d = Digraph::with_vertices(n + m + classes.len() * (k - 1));
    let w_of = |e: EdgeId| VertexId((n + e.index()) as u32);
    let z_of = |xi: usize, i: usize| VertexId((n + m + xi * (k - 1) + i) as u32);

    let mut labels = GadgetLabels::new();
    for e in g.edge_ids() {
        labels.insert(format!("w[{}]", e.0), LabelId::Vertex(w_of(e)));
    }
    for xi in 0..classes.len() {
        for i in 0..k - 1 {
            labels.insert(format!("z[{xi},{i}]"), LabelId::Vertex(z_of(xi, i)));
        }
    }
    for e in g.edge_ids() {
        let (u, v) = orientations[e.index()];
        for j in 0..k {
            let a = d.add_arc(u, w_of(e))?;
            labels.insert(format!("uw[{}]#{j}", e.0), LabelId::Arc(a));
        }
        let a = d.add_arc(v, w_of(e))?;
        labels.insert(format!("vw[{}]", e.0), LabelId::Arc(a));
    }
    for (xi, class) in classes.iter().enumerate() {
        for i in 0..k - 1 {
            for x in class {
                let e = EdgeId(x.0);
                let a = d.add_arc(z_of(xi, i), w_of(e))?;
                labels.insert(format!("zw[{xi},{i},{}]", e.0), LabelId::Arc(a));
            }
        }
    }
    let mut bounds = vec![0u32; d.vertex_count()];
    for e in g.edge_ids() {
        bounds[w_of(e).index()] = 2;
    }
    let instance = BstkfInstance::new(d, bounds, k)?;
    Ok(IndegreeReduction { source: source.clone(), instance, labels, orientations })
}

/// Maps k rainbow spanning trees onto a branching factorization: part `i`
/// gets the `i`-th parallel arc of every collector, the single arc of the
/// edges in tree `i`, and spare arcs colored so each part enters every
/// collector exactly twice.
pub fn trees_to_subgraphs(
    red: &IndegreeReduction,
    trees: &[BTreeSet<EdgeId>],
) -> Result<Vec<BTreeSet<ArcId>>> {
    let k = red.source.k();
    check_tree_factorization(red.source.graph(), red.source.partition(), k, trees)?;
    let mut parts: Vec<BTreeSet<ArcId>> = vec![BTreeSet::new(); k];
    let tree_of = |e: EdgeId| -> usize {
        trees.iter().position(|t| t.contains(&e)).expect("trees partition the edges") + 1
    };
    for e in red.source.graph().edge_ids() {
        for (j, part) in parts.iter_mut().enumerate() {
            part.insert(red.labels.arc(&format!("uw[{}]#{j}", e.0))?);
        }
        parts[tree_of(e) - 1].insert(red.labels.arc(&format!("vw[{}]", e.0))?);
    }
    for (xi, class) in red.source.partition().classes().iter().enumerate() {
        let sigma: Vec<usize> =
            class.iter().map(|x| tree_of(EdgeId(x.0))).collect();
        let phi = bipartite_coloring(k, &sigma)?;
        for (a, x) in class.iter().enumerate() {
            for j in 0..k - 1 {
                let arc = red.labels.arc(&format!("zw[{xi},{j},{}]", x.0))?;
                parts[phi[a][j] - 1].insert(arc);
            }
        }
    }
    debug_assert!(check_branching_factorization(&red.instance, &parts).is_ok());
    Ok(parts)
}

/// Reads k rainbow spanning trees off a branching factorization: edge `e`
/// joins tree `i` when part `i` holds the single arc into its collector.
pub fn subgraphs_to_trees(
    red: &IndegreeReduction,
    parts: &[BTreeSet<ArcId>],
) -> Result<Vec<BTreeSet<EdgeId>>> {
    let k = red.source.k();
    check_branching_factorization(&red.instance, parts)?;
    let mut trees: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); k];
    for e in red.source.graph().edge_ids() {
        let arc = red.labels.arc(&format!("vw[{}]", e.0))?;
        let holder = parts
            .iter()
            .position(|p| p.contains(&arc))
            .expect("parts partition the arcs");
        trees[holder].insert(e);
    }
    check_tree_factorization(red.source.graph(), red.source.partition(), k, &trees)?;
    Ok(trees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_k_multiple_tree;
    use crate::matroid::UnionFind;

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// All ordered factorizations of `g` into `k` spanning trees, by
    /// backtracking with per-tree cycle checks.
    fn tree_factorizations(g: &Multigraph, k: usize) -> Vec<Vec<BTreeSet<EdgeId>>> {
        let n = g.vertex_count();
        let m = g.edge_count();
        let mut out = Vec::new();
        if m != k * (n - 1) {
            return out;
        }
        let mut assign = vec![usize::MAX; m];
        fn rec(
            g: &Multigraph,
            k: usize,
            e: usize,
            assign: &mut Vec<usize>,
            counts: &mut Vec<usize>,
            out: &mut Vec<Vec<BTreeSet<EdgeId>>>,
        ) {
            let n = g.vertex_count();
            if e == g.edge_count() {
                let mut trees = vec![BTreeSet::new(); k];
                for (i, &t) in assign.iter().enumerate() {
                    trees[t].insert(EdgeId(i as u32));
                }
                out.push(trees);
                return;
            }
            let (u, v) = g.endpoints(EdgeId(e as u32));
            for t in 0..k {
                if counts[t] == n - 1 {
                    continue;
                }
                let mut uf = UnionFind::new(n);
                let mut ok = true;
                for (i, &ti) in assign.iter().enumerate().take(e) {
                    if ti == t {
                        let (a, b) = g.endpoints(EdgeId(i as u32));
                        uf.union(a.index(), b.index());
                    }
                }
                if uf.find(u.index()) == uf.find(v.index()) {
                    ok = false;
                }
                if ok {
                    assign[e] = t;
                    counts[t] += 1;
                    rec(g, k, e + 1, assign, counts, out);
                    counts[t] -= 1;
                    assign[e] = usize::MAX;
                }
            }
        }
        let mut counts = vec![0usize; k];
        rec(g, k, 0, &mut assign, &mut counts, &mut out);
        out
    }

    #[test]
    fn leaf_shapes() {
        assert!(marihuana_leaf(0).is_err());
        let one = marihuana_leaf(1).unwrap();
        assert_eq!(one.graph.vertex_count(), 4);
        assert_eq!(one.graph.edge_count(), 6);
        let mut pairs = BTreeSet::new();
        for e in one.graph.edge_ids() {
            let (u, v) = one.graph.endpoints(e);
            pairs.insert((u.min(v), u.max(v)));
        }
        assert_eq!(pairs.len(), 6);
        assert_eq!(marihuana_leaf(2).unwrap().graph.edge_count(), 9);
        let three = marihuana_leaf(3).unwrap();
        assert_eq!(three.graph.edge_count(), 12);
        for (bundle, single) in [
            (&three.bundle_a, three.single_a),
            (&three.bundle_b, three.single_b),
            (&three.bundle_c, three.single_c),
        ] {
            assert_eq!(bundle.len(), 3);
            let (su, sv) = three.graph.endpoints(single);
            for &b in bundle.iter() {
                let (u, v) = three.graph.endpoints(b);
                assert_eq!(u, three.center);
                assert!(su != u && su != v && sv != u && sv != v);
            }
        }
    }

    #[test]
    fn k4_split_exhaustive() {
        let g = Multigraph::complete(4);
        for v in g.vertex_ids() {
            let star: Vec<EdgeId> = g
                .edge_ids()
                .filter(|&e| {
                    let (a, b) = g.endpoints(e);
                    a == v || b == v
                })
                .collect();
            for mask in 0u32..8 {
                let f1: BTreeSet<EdgeId> = star
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let f2: BTreeSet<EdgeId> =
                    star.iter().copied().filter(|e| !f1.contains(e)).collect();
                let got = k4_factorization_with_split(&g, v, &f1, &f2);
                if f1.is_empty() || f2.is_empty() {
                    assert!(matches!(got, Err(Error::NoFactorization(_))));
                } else {
                    let (t1, t2) = got.unwrap();
                    assert!(is_spanning_tree(&g, &t1).unwrap());
                    assert!(is_spanning_tree(&g, &t2).unwrap());
                    assert!(t1.is_disjoint(&t2));
                    assert_eq!(t1.len() + t2.len(), 6);
                    assert!(f1.is_subset(&t1));
                    assert!(f2.is_subset(&t2));
                }
            }
        }
    }

    #[test]
    fn k4_split_rejects_bad_inputs() {
        let g = Multigraph::complete(4);
        let star: BTreeSet<EdgeId> = [0, 1, 2].map(EdgeId).into();
        let not_star: BTreeSet<EdgeId> = [3].map(EdgeId).into();
        assert!(k4_factorization_with_split(&g, VertexId(0), &star, &not_star).is_err());
        let tri = Multigraph::complete(3);
        assert!(k4_factorization_with_split(&tri, VertexId(0), &star, &not_star).is_err());
    }

    #[test]
    fn bipartite_coloring_forced_case() {
        let phi = bipartite_coloring(2, &[1, 2]).unwrap();
        assert_eq!(phi, vec![vec![2], vec![1]]);
    }

    #[test]
    fn bipartite_coloring_postconditions() {
        for k in [3usize, 8] {
            let sigmas: Vec<Vec<usize>> = if k == 3 {
                perms(3).into_iter().map(|p| p.iter().map(|&x| x + 1).collect()).collect()
            } else {
                vec![
                    (1..=8).collect(),
                    (1..=8).rev().collect(),
                    vec![3, 1, 4, 2, 8, 6, 7, 5],
                ]
            };
            for sigma in sigmas {
                let phi = bipartite_coloring(k, &sigma).unwrap();
                for a in 0..k {
                    let seen: BTreeSet<usize> = phi[a].iter().copied().collect();
                    let want: BTreeSet<usize> =
                        (1..=k).filter(|&c| c != sigma[a]).collect();
                    assert_eq!(seen, want, "left vertex {a}");
                }
                for j in 0..k - 1 {
                    let seen: BTreeSet<usize> = (0..k).map(|a| phi[a][j]).collect();
                    assert_eq!(seen.len(), k, "right vertex {j}");
                }
            }
        }
        assert!(bipartite_coloring(3, &[1, 1, 2]).is_err());
        assert!(bipartite_coloring(3, &[1, 2]).is_err());
        assert!(bipartite_coloring(3, &[0, 1, 2]).is_err());
    }

    #[test]
    fn leaf_pattern_gives_spanning_trees() {
        // Assign the singles to trees i, j, l with j != l and i in {j, l},
        // spread each bundle bijectively over the other trees: every such
        // assignment must factor the leaf into spanning trees.
        for m in [2usize, 3] {
            let k = m + 1;
            let leaf = marihuana_leaf(m).unwrap();
            let bijections = perms(m);
            for j in 1..=k {
                for l in 1..=k {
                    if j == l {
                        continue;
                    }
                    for i in [j, l] {
                        for pa in &bijections {
                            for pb in &bijections {
                                for pc in &bijections {
                                    let mut trees: Vec<BTreeSet<EdgeId>> =
                                        vec![BTreeSet::new(); k];
                                    trees[i - 1].insert(leaf.single_a);
                                    trees[j - 1].insert(leaf.single_c);
                                    trees[l - 1].insert(leaf.single_b);
                                    let spread =
                                        |trees: &mut Vec<BTreeSet<EdgeId>>,
                                         bundle: &[EdgeId],
                                         skip: usize,
                                         p: &[usize]| {
                                            let others: Vec<usize> =
                                                (1..=k).filter(|&t| t != skip).collect();
                                            for (bi, &slot) in p.iter().enumerate() {
                                                trees[others[slot] - 1]
                                                    .insert(bundle[bi]);
                                            }
                                        };
                                    spread(&mut trees, &leaf.bundle_a, i, pa);
                                    spread(&mut trees, &leaf.bundle_b, j, pb);
                                    spread(&mut trees, &leaf.bundle_c, l, pc);
                                    for t in &trees {
                                        assert!(
                                            is_spanning_tree(&leaf.graph, t).unwrap(),
                                            "m={m} i={i} j={j} l={l}"
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn leaf_factorizations_have_forced_structure() {
        // Every spanning-tree factorization taking exactly one element of
        // bundle a + its single per tree routes the other two singles into
        // two distinct trees, with their bundles filling the rest.
        for m in [2usize, 3] {
            let k = m + 1;
            let leaf = marihuana_leaf(m).unwrap();
            let a_class: BTreeSet<EdgeId> =
                leaf.bundle_a.iter().copied().chain([leaf.single_a]).collect();
            let all = tree_factorizations(&leaf.graph, k);
            assert!(!all.is_empty());
            let mut matching = 0usize;
            for trees in &all {
                if !trees.iter().all(|t| t.intersection(&a_class).count() == 1) {
                    continue;
                }
                matching += 1;
                let j = trees
                    .iter()
                    .position(|t| t.contains(&leaf.single_c))
                    .unwrap();
                let l = trees
                    .iter()
                    .position(|t| t.contains(&leaf.single_b))
                    .unwrap();
                assert_ne!(j, l, "m={m}");
                for (t_idx, t) in trees.iter().enumerate() {
                    let b_count =
                        leaf.bundle_b.iter().filter(|b| t.contains(b)).count();
                    let c_count =
                        leaf.bundle_c.iter().filter(|b| t.contains(b)).count();
                    assert_eq!(b_count, usize::from(t_idx != j), "m={m}");
                    assert_eq!(c_count, usize::from(t_idx != l), "m={m}");
                }
            }
            assert!(matching > 0);
        }
    }

    fn single_clause() -> Nae3SatInstance {
        Nae3SatInstance::new(3, vec![[0, 1, 2]]).unwrap()
    }

    #[test]
    fn nae_instance_validation() {
        assert!(Nae3SatInstance::new(3, vec![[0, 1, 1]]).is_err());
        assert!(Nae3SatInstance::new(3, vec![[0, 1, 3]]).is_err());
        let i = Nae3SatInstance::new(4, vec![[2, 0, 1], [3, 1, 0]]).unwrap();
        assert_eq!(i.clauses()[0], [0, 1, 2]);
        assert_eq!(i.occurrences(0), vec![0, 1]);
        assert_eq!(i.occurrences(2), vec![0]);
        assert!(i.nae_satisfies(&[true, false, false, true]));
        assert!(!i.nae_satisfies(&[true, true, true, false]));
    }

    #[test]
    fn nae_reduction_counts() {
        let red = reduce_nae_to_grst2f(&single_clause()).unwrap();
        let g = red.instance.graph();
        assert_eq!(g.edge_count(), 24);
        assert_eq!(g.vertex_count(), 13);
        assert_eq!(red.instance.k(), 2);
        assert!(red.instance.partition().max_class_size() <= 2);
        // 3 incidence pairs + 0 chains + 3 clause links.
        assert_eq!(red.instance.partition().classes().len(), 6);
        assert!(red.labels.ids_are_distinct());
        assert_eq!(red.labels.len(), 1 + 6 * 3 + 3);
        // The union of double trees glued at a vertex is a double tree.
        let m = red.instance.matroid();
        assert_eq!(m.full_rank(), 12);
        assert!(crate::union::is_two_base(&m));
    }

    #[test]
    fn nae_chain_classes_follow_occurrences() {
        let i = Nae3SatInstance::new(5, vec![[0, 1, 2], [0, 3, 4], [1, 3, 4]]).unwrap();
        let red = reduce_nae_to_grst2f(&i).unwrap();
        // Variables 0, 1, 3, 4 occur twice each: four chain classes.
        // 9 incidence pairs + 4 chains + 9 clause links.
        assert_eq!(red.instance.partition().classes().len(), 22);
        let f1 = red.labels.edge("f1[0,0]").unwrap();
        let g1 = red.labels.edge("g1[0,1]").unwrap();
        let p = red.instance.partition();
        assert_eq!(
            p.class_index_of(ElementId(f1.0)),
            p.class_index_of(ElementId(g1.0))
        );
    }

    #[test]
    fn nae_certificates_round_trip() {
        let red = reduce_nae_to_grst2f(&single_clause()).unwrap();
        let trees = nae_cert_to_trees(&red, &[true, false, false]).unwrap();
        check_tree_factorization(
            red.instance.graph(),
            red.instance.partition(),
            2,
            &trees,
        )
        .unwrap();
        let phi = trees_to_nae_cert(&red, &trees).unwrap();
        assert_eq!(phi, vec![true, false, false]);
    }

    #[test]
    fn nae_round_trip_over_small_instances() {
        // All clause sets of size 1..=2 over four variables, all satisfying
        // assignments: forward then backward returns an equivalent witness.
        let all_clauses: Vec<[u32; 3]> =
            vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let mut sets: Vec<Vec<[u32; 3]>> =
            all_clauses.iter().map(|&c| vec![c]).collect();
        for a in 0..4 {
            for b in a + 1..4 {
                sets.push(vec![all_clauses[a], all_clauses[b]]);
            }
        }
        for clauses in sets {
            let inst = Nae3SatInstance::new(4, clauses).unwrap();
            let red = reduce_nae_to_grst2f(&inst).unwrap();
            for bits in 0u32..16 {
                let phi: Vec<bool> = (0..4).map(|i| bits >> i & 1 == 1).collect();
                if !inst.nae_satisfies(&phi) {
                    assert!(nae_cert_to_trees(&red, &phi).is_err());
                    continue;
                }
                let trees = nae_cert_to_trees(&red, &phi).unwrap();
                let back = trees_to_nae_cert(&red, &trees).unwrap();
                assert!(inst.nae_satisfies(&back));
                for x in 0..4u32 {
                    if !inst.occurrences(x).is_empty() {
                        assert_eq!(back[x as usize], phi[x as usize]);
                    }
                }
            }
        }
    }

    #[test]
    fn nae_backward_rejects_garbage() {
        let red = reduce_nae_to_grst2f(&single_clause()).unwrap();
        let trees = nae_cert_to_trees(&red, &[true, true, false]).unwrap();
        // Not a partition.
        assert!(trees_to_nae_cert(&red, &[trees[0].clone(), trees[0].clone()]).is_err());
        // Wrong tree count.
        assert!(trees_to_nae_cert(&red, &trees[..1]).is_err());
        assert!(nae_cert_to_trees(&red, &[true, true]).is_err());
        assert!(nae_cert_to_trees(&red, &[true, true, true]).is_err());
    }

    #[test]
    fn doubling_counts_and_round_trip() {
        let red = reduce_nae_to_grst2f(&single_clause()).unwrap();
        let doubled = reduce_grst2f_to_rst2f(&red.instance).unwrap();
        assert_eq!(doubled.instance.graph().edge_count(), 48);
        assert_eq!(doubled.instance.graph().vertex_count(), 25);
        assert!(doubled.instance.partition().is_uniform(2));
        assert!(doubled.instance.is_strict());
        assert!(doubled.labels.ids_are_distinct());

        let trees = nae_cert_to_trees(&red, &[false, true, true]).unwrap();
        let lifted = grst2f_cert_to_rst2f(&doubled, &trees).unwrap();
        check_tree_factorization(
            doubled.instance.graph(),
            doubled.instance.partition(),
            2,
            &lifted,
        )
        .unwrap();
        let back = rst2f_cert_to_grst2f(&doubled, &lifted).unwrap();
        assert_eq!(back[0], trees[0]);
        assert_eq!(back[1], trees[1]);
    }

    #[test]
    fn doubling_rejects_non_double_trees() {
        let tri = Multigraph::complete(3);
        let ground: Vec<ElementId> = (0..3).map(ElementId).collect();
        let p = Partition::trivial(ground);
        let inst = RstkfInstance::new(tri, p, 2).unwrap();
        assert!(reduce_grst2f_to_rst2f(&inst).is_err());
    }

    #[test]
    fn kcol_reduction_counts() {
        let mut h = Multigraph::with_vertices(2);
        h.add_edge(VertexId(0), VertexId(1)).unwrap();
        let red = reduce_kcol_to_rstkf(&KColInstance::new(h, 3).unwrap()).unwrap();
        assert_eq!(red.instance.graph().edge_count(), 9);
        assert_eq!(red.instance.graph().vertex_count(), 4);
        assert!(red.instance.partition().is_uniform(3));
        assert!(red.instance.is_strict());
        assert!(red.labels.ids_are_distinct());

        let tri = Multigraph::complete(3);
        let red = reduce_kcol_to_rstkf(&KColInstance::new(tri, 3).unwrap()).unwrap();
        assert_eq!(red.instance.graph().edge_count(), 27);
        assert_eq!(red.instance.graph().vertex_count(), 10);
        assert!(red.instance.is_strict());

        assert!(KColInstance::new(Multigraph::complete(3), 2).is_err());
    }

    #[test]
    fn kcol_certificates_round_trip() {
        let tri = Multigraph::complete(3);
        let red = reduce_kcol_to_rstkf(&KColInstance::new(tri, 3).unwrap()).unwrap();
        let trees = coloring_to_trees(&red, &[1, 2, 3]).unwrap();
        check_tree_factorization(
            red.instance.graph(),
            red.instance.partition(),
            3,
            &trees,
        )
        .unwrap();
        let colors = trees_to_coloring(&red, &trees).unwrap();
        assert_eq!(colors, vec![1, 2, 3]);

        assert!(coloring_to_trees(&red, &[1, 1, 2]).is_err());
        assert!(coloring_to_trees(&red, &[1, 2]).is_err());
        assert!(coloring_to_trees(&red, &[1, 2, 4]).is_err());
    }

    #[test]
    fn kcol_handles_higher_k_and_multiple_edges() {
        let mut h = Multigraph::with_vertices(3);
        h.add_edge(VertexId(0), VertexId(1)).unwrap();
        h.add_edge(VertexId(1), VertexId(2)).unwrap();
        let red = reduce_kcol_to_rstkf(&KColInstance::new(h, 4).unwrap()).unwrap();
        assert_eq!(red.instance.graph().edge_count(), 24);
        assert!(red.instance.is_strict());
        let trees = coloring_to_trees(&red, &[2, 4, 2]).unwrap();
        let colors = trees_to_coloring(&red, &trees).unwrap();
        assert_eq!(colors, vec![2, 4, 2]);
    }

    #[test]
    fn kcol_edgeless_graph_reduces_to_trivial_instance() {
        let h = Multigraph::with_vertices(3);
        let red = reduce_kcol_to_rstkf(&KColInstance::new(h, 3).unwrap()).unwrap();
        assert_eq!(red.instance.graph().edge_count(), 0);
        let trees = coloring_to_trees(&red, &[1, 1, 1]).unwrap();
        assert_eq!(trees.len(), 3);
        assert!(trees.iter().all(BTreeSet::is_empty));
        assert_eq!(trees_to_coloring(&red, &trees).unwrap(), vec![1, 1, 1]);
    }

    /// A strict 2-uniform instance whose witness trees are rainbow: pair the
    /// i-th edge of one witness tree with the i-th edge of the other.
    fn paired_double_tree(n: usize, seed: u64) -> (RstkfInstance, Vec<BTreeSet<EdgeId>>) {
        let (g, witness) = random_k_multiple_tree(n, 2, seed).unwrap();
        let t1: Vec<EdgeId> = witness[0].iter().copied().collect();
        let t2: Vec<EdgeId> = witness[1].iter().copied().collect();
        let classes: Vec<Vec<ElementId>> = t1
            .iter()
            .zip(&t2)
            .map(|(&a, &b)| vec![ElementId(a.0), ElementId(b.0)])
            .collect();
        let ground: Vec<ElementId> =
            (0..g.edge_count() as u32).map(ElementId).collect();
        let p = Partition::new(ground, classes).unwrap();
        let inst = RstkfInstance::new(g, p, 2).unwrap();
        let trees = vec![witness[0].clone(), witness[1].clone()];
        (inst, trees)
    }

    #[test]
    fn indegree_reduction_counts() {
        let (inst, _) = paired_double_tree(3, 5);
        let red = reduce_rstkf_to_bstkf(&inst, None).unwrap();
        let d = red.instance.digraph();
        assert_eq!(d.arc_count(), 16);
        assert_eq!(d.vertex_count(), 3 + 4 + 2);
        assert_eq!(red.instance.k(), 2);
        assert!(red.labels.ids_are_distinct());
        for e in inst.graph().edge_ids() {
            let w = red.labels.vertex(&format!("w[{}]", e.0)).unwrap();
            assert_eq!(red.instance.bound(w), 2);
        }
        let zeroes = red
            .instance
            .bounds()
            .iter()
            .filter(|&&b| b == 0)
            .count();
        assert_eq!(zeroes, 3 + 2);
    }

    #[test]
    fn indegree_rejects_nonuniform_partitions() {
        let (g, _) = random_k_multiple_tree(3, 2, 1).unwrap();
        let ground: Vec<ElementId> = (0..4).map(ElementId).collect();
        let inst = RstkfInstance::new(g, Partition::trivial(ground), 2).unwrap();
        assert!(reduce_rstkf_to_bstkf(&inst, None).is_err());
    }

    #[test]
    fn indegree_certificates_round_trip() {
        for (n, seed, flip_seed) in [(3, 7, None), (4, 8, None), (4, 9, Some(17u64))] {
            let (inst, trees) = paired_double_tree(n, seed);
            let red = reduce_rstkf_to_bstkf(&inst, flip_seed).unwrap();
            let parts = trees_to_subgraphs(&red, &trees).unwrap();
            check_branching_factorization(&red.instance, &parts).unwrap();
            let back = subgraphs_to_trees(&red, &parts).unwrap();
            assert_eq!(back, trees);
        }
    }

    #[test]
    fn indegree_backward_rejects_garbage() {
        let (inst, trees) = paired_double_tree(3, 11);
        let red = reduce_rstkf_to_bstkf(&inst, None).unwrap();
        let parts = trees_to_subgraphs(&red, &trees).unwrap();
        assert!(subgraphs_to_trees(&red, &parts[..1]).is_err());
        let mut broken = parts.clone();
        let moved = *broken[0].iter().next().unwrap();
        broken[0].remove(&moved);
        broken[1].insert(moved);
        assert!(subgraphs_to_trees(&red, &broken).is_err());
    }

    #[test]
    fn indegree_orientation_seed_changes_arcs_not_meaning() {
        let (inst, trees) = paired_double_tree(4, 13);
        let plain = reduce_rstkf_to_bstkf(&inst, None).unwrap();
        let flipped = reduce_rstkf_to_bstkf(&inst, Some(2)).unwrap();
        assert_eq!(
            plain.instance.digraph().arc_count(),
            flipped.instance.digraph().arc_count()
        );
        assert_ne!(plain.orientations, flipped.orientations);
        for red in [&plain, &flipped] {
            let parts = trees_to_subgraphs(red, &trees).unwrap();
            assert_eq!(subgraphs_to_trees(red, &parts).unwrap(), trees);
        }
    }
}
