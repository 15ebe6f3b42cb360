//! Multigraphs and digraphs with stable integer ids.
//!
//! Vertices and edges are identified by dense indices assigned in insertion
//! order. Parallel edges are allowed everywhere; loops are rejected at
//! insertion time. Ids are never renumbered by any operation in this module,
//! so edge ids can be used as matroid element ids and as certificate tokens.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArcId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An undirected multigraph. Parallel edges allowed, loops rejected.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Multigraph {
    n: u32,
    edges: Vec<(VertexId, VertexId)>,
}

impl Multigraph {
    pub fn new() -> Self {
        Multigraph::default()
    }

    /// A graph with `n` vertices and no edges.
    pub fn with_vertices(n: usize) -> Self {
        Multigraph { n: n as u32, edges: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.n);
        self.n += 1;
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        if u.0 >= self.n {
            return Err(Error::UnknownVertex(format!("{}", u.0)));
        }
        if v.0 >= self.n {
            return Err(Error::UnknownVertex(format!("{}", v.0)));
        }
        if u == v {
            return Err(Error::invalid(format!("loop at vertex {} rejected", u.0)));
        }
        let id = EdgeId(self.edges.len() as u32);
        self.edges.push((u, v));
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e.index()]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId)
    }

    /// Complete graph on `n` vertices, edges in lexicographic endpoint order.
    pub fn complete(n: usize) -> Self {
        let mut g = Multigraph::with_vertices(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(VertexId(u as u32), VertexId(v as u32)).unwrap();
            }
        }
        g
    }
}

/// A directed multigraph. Parallel arcs allowed, self-arcs rejected.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    n: u32,
    arcs: Vec<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new() -> Self {
        Digraph::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Digraph { n: n as u32, arcs: Vec::new() }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.n);
        self.n += 1;
        id
    }

    pub fn add_arc(&mut self, tail: VertexId, head: VertexId) -> Result<ArcId> {
        if tail.0 >= self.n {
            return Err(Error::UnknownVertex(format!("{}", tail.0)));
        }
        if head.0 >= self.n {
            return Err(Error::UnknownVertex(format!("{}", head.0)));
        }
        if tail == head {
            return Err(Error::invalid(format!("self-arc at vertex {} rejected", tail.0)));
        }
        let id = ArcId(self.arcs.len() as u32);
        self.arcs.push((tail, head));
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// (tail, head) of an arc.
    pub fn arc(&self, a: ArcId) -> (VertexId, VertexId) {
        self.arcs[a.index()]
    }

    pub fn arc_ids(&self) -> impl Iterator<Item = ArcId> + '_ {
        (0..self.arcs.len() as u32).map(ArcId)
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId)
    }
}

/// Forgets arc directions. Arc `i` becomes edge `i`, so ids line up.
pub fn underlying_graph(d: &Digraph) -> Multigraph {
    let mut g = Multigraph::with_vertices(d.vertex_count());
    for a in d.arc_ids() {
        let (t, h) = d.arc(a);
        g.add_edge(t, h).expect("digraph has no self-arcs");
    }
    g
}

/// Whether `t` is a spanning tree of `g`: exactly `n - 1` edges reaching
/// every vertex without a cycle. Checked by breadth-first traversal of the
/// subgraph induced by `t`.
pub fn is_spanning_tree(g: &Multigraph, t: &BTreeSet<EdgeId>) -> Result<bool> {
    let n = g.vertex_count();
    for &e in t {
        if e.index() >= g.edge_count() {
            return Err(Error::UnknownElement(format!("edge {}", e.0)));
        }
    }
    if n == 0 {
        return Ok(t.is_empty());
    }
    if t.len() != n - 1 {
        return Ok(false);
    }
    let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for &e in t {
        let (u, v) = g.endpoints(e);
        adj[u.index()].push(v);
        adj[v.index()].push(u);
    }
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[0] = true;
    queue.push_back(VertexId(0));
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u.index()] {
            if !seen[v.index()] {
                seen[v.index()] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    // n - 1 edges reaching all n vertices cannot contain a cycle.
    Ok(reached == n)
}

/// Result of merging several graphs at one chosen vertex each.
#[derive(Debug, Clone)]
pub struct MergedGraph {
    pub graph: Multigraph,
    /// The merged vertex all chosen vertices were mapped to.
    pub hub: VertexId,
    /// `vertex_maps[i][v]` is the merged id of vertex `v` of part `i`.
    pub vertex_maps: Vec<Vec<VertexId>>,
    /// `edge_maps[i][e]` is the merged id of edge `e` of part `i`.
    pub edge_maps: Vec<Vec<EdgeId>>,
}

/// Glues the parts together by identifying the chosen vertex of every part
/// into a single hub vertex. Merged ids are assigned deterministically: the
/// hub is vertex 0, the remaining vertices and the edges follow in part-major
/// blocks, preserving each part's internal order.
///
/// With a single part this produces an isomorphic copy whose chosen vertex
/// has been moved to id 0.
pub fn identify_vertices(parts: &[(&Multigraph, VertexId)]) -> Result<MergedGraph> {
    if parts.is_empty() {
        return Err(Error::invalid("identify_vertices needs at least one part"));
    }
    for (i, &(g, v)) in parts.iter().enumerate() {
        if v.index() >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("{} in part {}", v.0, i)));
        }
    }
    let mut merged = Multigraph::new();
    let hub = merged.add_vertex();
    let mut vertex_maps = Vec::with_capacity(parts.len());
    for &(g, chosen) in parts {
        let mut map = Vec::with_capacity(g.vertex_count());
        for v in g.vertex_ids() {
            if v == chosen {
                map.push(hub);
            } else {
                map.push(merged.add_vertex());
            }
        }
        vertex_maps.push(map);
    }
    let mut edge_maps = Vec::with_capacity(parts.len());
    for (i, &(g, _)) in parts.iter().enumerate() {
        let mut map = Vec::with_capacity(g.edge_count());
        for e in g.edge_ids() {
            let (u, v) = g.endpoints(e);
            let id = merged.add_edge(vertex_maps[i][u.index()], vertex_maps[i][v.index()])?;
            map.push(id);
        }
        edge_maps.push(map);
    }
    Ok(MergedGraph { graph: merged, hub, vertex_maps, edge_maps })
}

/// Decodes a Pruefer sequence into the edge list of a labeled tree on
/// `n >= 2` vertices. Every labeled tree corresponds to exactly one sequence,
/// so a uniformly random sequence yields a uniformly random spanning tree.
fn prufer_decode(n: usize, seq: &[u32]) -> Vec<(VertexId, VertexId)> {
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1u32; n];
    for &a in seq {
        degree[a as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaf_heap: BTreeSet<u32> = (0..n as u32).filter(|&v| degree[v as usize] == 1).collect();
    for &a in seq {
        let leaf = *leaf_heap.iter().next().unwrap();
        leaf_heap.remove(&leaf);
        edges.push((VertexId(leaf.min(a)), VertexId(leaf.max(a))));
        degree[a as usize] -= 1;
        if degree[a as usize] == 1 {
            leaf_heap.insert(a);
        }
    }
    let mut last = leaf_heap.into_iter();
    let u = last.next().unwrap();
    let v = last.next().unwrap();
    edges.push((VertexId(u.min(v)), VertexId(u.max(v))));
    edges
}

/// A union of `k` uniformly random spanning trees of the complete graph on
/// `n` vertices, keeping parallel copies distinct, together with the witness
/// factorization. Tree `t` owns the edge-id block `t*(n-1) .. (t+1)*(n-1)`,
/// and each block is sorted by endpoints.
///
/// Randomness is drawn from a counter-based generator: tree `t` reads stream
/// `t` of a ChaCha generator keyed by `seed`, so any (seed, tree) pair is
/// reproducible in isolation.
pub fn random_k_multiple_tree(
    n: usize,
    k: usize,
    seed: u64,
) -> Result<(Multigraph, Vec<BTreeSet<EdgeId>>)> {
    if n == 0 {
        return Err(Error::invalid("need at least one vertex"));
    }
    if k == 0 {
        return Err(Error::invalid("need at least one tree"));
    }
    let mut g = Multigraph::with_vertices(n);
    let mut witness = Vec::with_capacity(k);
    for t in 0..k {
        let mut tree = BTreeSet::new();
        if n >= 2 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let seq: Vec<u32> =
                (0..n.saturating_sub(2)).map(|_| rng.random_range(0..n as u32)).collect();
            let mut edges = prufer_decode(n, &seq);
            edges.sort();
            for (u, v) in edges {
                tree.insert(g.add_edge(u, v)?);
            }
        }
        witness.push(tree);
    }
    Ok((g, witness))
}
