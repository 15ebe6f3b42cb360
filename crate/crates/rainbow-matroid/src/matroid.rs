//! Matroids with a shared rank-oracle interface.
//!
//! A [`Matroid`] is a view over an immutable *root* oracle (graphic, uniform,
//! partition, or a direct sum) together with a pair of contracted and deleted
//! element sets. Restriction, deletion, and contraction therefore compose
//! without stacking: taking a minor of a minor collapses into a single
//! `(contracted, deleted)` pair over the same root, and element ids stay
//! stable across all of it.

use std::any::Any;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::partition::Partition;

/// Identifier of a matroid element. Ids are opaque tokens: they are chosen
/// at construction time and survive minors, restrictions, and direct sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub u32);

pub type ElemSet = BTreeSet<ElementId>;

/// Collects element ids into a set.
pub fn elem_set<I: IntoIterator<Item = ElementId>>(iter: I) -> ElemSet {
    iter.into_iter().collect()
}

/// The rank function of a concrete matroid.
///
/// Implementations may assume `s` is a subset of `ground()`; [`Matroid`]
/// validates ids before queries reach an oracle.
pub trait RankOracle: std::fmt::Debug + Send + Sync + 'static {
    fn ground(&self) -> &[ElementId];
    fn rank_of(&self, s: &ElemSet) -> usize;
    fn as_any(&self) -> &dyn Any;
}

/// Cycle matroid of a multigraph: a set of edges is independent when it is
/// a forest. The graph carries no loops, so there are no rank-zero elements.
#[derive(Debug)]
pub struct GraphicMatroid {
    graph: Multigraph,
    elements: Vec<ElementId>,
    edge_of: HashMap<ElementId, usize>,
}

impl GraphicMatroid {
    fn build(graph: Multigraph, elements: Vec<ElementId>) -> Result<Self> {
        if elements.len() != graph.edge_count() {
            return Err(Error::invalid("one element id per edge required"));
        }
        let mut edge_of = HashMap::new();
        for (i, &e) in elements.iter().enumerate() {
            if edge_of.insert(e, i).is_some() {
                return Err(Error::invalid(format!("duplicate element id {}", e.0)));
            }
        }
        Ok(GraphicMatroid { graph, elements, edge_of })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    /// The edge index carrying element `e`.
    pub fn edge_index(&self, e: ElementId) -> Option<usize> {
        self.edge_of.get(&e).copied()
    }

    pub fn element_of_edge(&self, edge_index: usize) -> ElementId {
        self.elements[edge_index]
    }
}

impl RankOracle for GraphicMatroid {
    fn ground(&self) -> &[ElementId] {
        &self.elements
    }

    fn rank_of(&self, s: &ElemSet) -> usize {
        let mut uf = UnionFind::new(self.graph.vertex_count());
        let mut rank = 0;
        for &e in s {
            let (u, v) = self.graph.endpoints(crate::graph::EdgeId(self.edge_of[&e] as u32));
            if uf.union(u.index(), v.index()) {
                rank += 1;
            }
        }
        rank
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Uniform matroid: every set of at most `r` elements is independent.
#[derive(Debug)]
pub struct UniformMatroid {
    elements: Vec<ElementId>,
    r: usize,
}

impl RankOracle for UniformMatroid {
    fn ground(&self) -> &[ElementId] {
        &self.elements
    }

    fn rank_of(&self, s: &ElemSet) -> usize {
        s.len().min(self.r)
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Unitary partition matroid induced by a [`Partition`]: a set is independent
/// exactly when it is rainbow, so each class contributes at most one to the
/// rank and uncovered elements act as singletons.
#[derive(Debug)]
pub struct PartitionMatroidView {
    partition: Partition,
}

impl PartitionMatroidView {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

impl RankOracle for PartitionMatroidView {
    fn ground(&self) -> &[ElementId] {
        self.partition.ground()
    }

    fn rank_of(&self, s: &ElemSet) -> usize {
        let mut classes = HashSet::new();
        let mut rank = 0;
        for &e in s {
            match self.partition.class_index_of(e) {
                Some(c) => {
                    if classes.insert(c) {
                        rank += 1;
                    }
                }
                None => rank += 1,
            }
        }
        rank
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// Direct sum of matroids with pairwise disjoint ground sets.
#[derive(Debug)]
pub struct DirectSumView {
    parts: Vec<Matroid>,
    ground: Vec<ElementId>,
    part_of: HashMap<ElementId, usize>,
}

impl DirectSumView {
    pub fn parts(&self) -> &[Matroid] {
        &self.parts
    }
}

impl RankOracle for DirectSumView {
    fn ground(&self) -> &[ElementId] {
        &self.ground
    }

    fn rank_of(&self, s: &ElemSet) -> usize {
        let mut buckets: Vec<ElemSet> = vec![ElemSet::new(); self.parts.len()];
        for &e in s {
            buckets[self.part_of[&e]].insert(e);
        }
        buckets.iter().zip(&self.parts).map(|(b, p)| p.rank_unchecked(b)).sum()
    }

    fn as_any(&self) -> &dyn Any {
        self
    }
}

/// A matroid, represented as a root oracle plus a normalized minor.
#[derive(Debug, Clone)]
pub struct Matroid {
    root: Arc<dyn RankOracle>,
    contracted: ElemSet,
    deleted: ElemSet,
    ground: Vec<ElementId>,
    ground_lookup: HashSet<ElementId>,
    rank_contracted: usize,
    full_rank: usize,
}

impl Matroid {
    fn from_root(root: Arc<dyn RankOracle>) -> Self {
        Matroid::minor_over(root, ElemSet::new(), ElemSet::new())
    }

    fn minor_over(root: Arc<dyn RankOracle>, contracted: ElemSet, deleted: ElemSet) -> Self {
        let ground: Vec<ElementId> = root
            .ground()
            .iter()
            .copied()
            .filter(|e| !contracted.contains(e) && !deleted.contains(e))
            .collect();
        let ground_lookup = ground.iter().copied().collect();
        let rank_contracted = root.rank_of(&contracted);
        let all: ElemSet = ground.iter().copied().chain(contracted.iter().copied()).collect();
        let full_rank = root.rank_of(&all) - rank_contracted;
        Matroid {
            root,
            contracted,
            deleted,
            ground,
            ground_lookup,
            rank_contracted,
            full_rank,
        }
    }

    /// Cycle matroid of `graph`; edge `i` carries element id `i`.
    pub fn graphic(graph: &Multigraph) -> Matroid {
        let elements = (0..graph.edge_count() as u32).map(ElementId).collect();
        Matroid::graphic_with_elements(graph.clone(), elements)
            .expect("dense ids are distinct and counted")
    }

    /// Cycle matroid with explicit element ids, one per edge in edge order.
    /// Offsetting ids makes room for disjoint ground sets in direct sums.
    pub fn graphic_with_elements(graph: Multigraph, elements: Vec<ElementId>) -> Result<Matroid> {
        Ok(Matroid::from_root(Arc::new(GraphicMatroid::build(graph, elements)?)))
    }

    pub fn uniform(elements: Vec<ElementId>, r: usize) -> Result<Matroid> {
        let distinct: HashSet<_> = elements.iter().collect();
        if distinct.len() != elements.len() {
            return Err(Error::invalid("duplicate element id"));
        }
        Ok(Matroid::from_root(Arc::new(UniformMatroid { elements, r })))
    }

    pub fn partition_view(partition: Partition) -> Matroid {
        Matroid::from_root(Arc::new(PartitionMatroidView { partition }))
    }

    /// Direct sum. Fails when two parts share an element id.
    pub fn direct_sum(parts: Vec<Matroid>) -> Result<Matroid> {
        let mut ground = Vec::new();
        let mut part_of = HashMap::new();
        for (i, part) in parts.iter().enumerate() {
            for &e in part.ground_set() {
                if part_of.insert(e, i).is_some() {
                    return Err(Error::invalid(format!(
                        "element id {} appears in two summands",
                        e.0
                    )));
                }
                ground.push(e);
            }
        }
        Ok(Matroid::from_root(Arc::new(DirectSumView { parts, ground, part_of })))
    }

    /// The ground set in canonical order.
    pub fn ground_set(&self) -> &[ElementId] {
        &self.ground
    }

    pub fn ground_elems(&self) -> ElemSet {
        self.ground.iter().copied().collect()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.ground_lookup.contains(&e)
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Rank of the whole ground set.
    pub fn full_rank(&self) -> usize {
        self.full_rank
    }

    fn check_subset(&self, s: &ElemSet) -> Result<()> {
        for &e in s {
            if !self.contains(e) {
                return Err(Error::UnknownElement(format!("{}", e.0)));
            }
        }
        Ok(())
    }

    pub fn rank(&self, s: &ElemSet) -> Result<usize> {
        self.check_subset(s)?;
        Ok(self.rank_unchecked(s))
    }

    pub(crate) fn rank_unchecked(&self, s: &ElemSet) -> usize {
        if self.contracted.is_empty() {
            self.root.rank_of(s)
        } else {
            let joined: ElemSet =
                s.iter().copied().chain(self.contracted.iter().copied()).collect();
            self.root.rank_of(&joined) - self.rank_contracted
        }
    }

    pub fn is_independent(&self, s: &ElemSet) -> Result<bool> {
        Ok(self.rank(s)? == s.len())
    }

    pub fn is_basis(&self, s: &ElemSet) -> Result<bool> {
        Ok(s.len() == self.full_rank && self.rank(s)? == self.full_rank)
    }

    /// The minor keeping exactly the elements of `keep`.
    pub fn restrict(&self, keep: &ElemSet) -> Result<Matroid> {
        self.check_subset(keep)?;
        let drop: ElemSet =
            self.ground.iter().copied().filter(|e| !keep.contains(e)).collect();
        self.delete(&drop)
    }

    pub fn delete(&self, del: &ElemSet) -> Result<Matroid> {
        self.check_subset(del)?;
        let mut deleted = self.deleted.clone();
        deleted.extend(del.iter().copied());
        Ok(Matroid::minor_over(self.root.clone(), self.contracted.clone(), deleted))
    }

    pub fn contract(&self, con: &ElemSet) -> Result<Matroid> {
        self.check_subset(con)?;
        let mut contracted = self.contracted.clone();
        contracted.extend(con.iter().copied());
        Ok(Matroid::minor_over(self.root.clone(), contracted, self.deleted.clone()))
    }

    pub fn root(&self) -> &Arc<dyn RankOracle> {
        &self.root
    }

    pub fn contracted(&self) -> &ElemSet {
        &self.contracted
    }

    pub fn deleted(&self) -> &ElemSet {
        &self.deleted
    }

    /// The graphic oracle underneath, when this matroid is a (minor of a)
    /// cycle matroid. Fast paths key off this.
    pub fn graphic_root(&self) -> Option<&GraphicMatroid> {
        self.root.as_any().downcast_ref::<GraphicMatroid>()
    }

    pub fn same_root(a: &Matroid, b: &Matroid) -> bool {
        Arc::ptr_eq(&a.root, &b.root)
    }

    /// A maximal independent set, grown greedily in ground order.
    pub fn greedy_basis(&self) -> ElemSet {
        let mut basis = ElemSet::new();
        let mut rank = 0;
        for &e in &self.ground {
            basis.insert(e);
            if self.rank_unchecked(&basis) > rank {
                rank += 1;
            } else {
                basis.remove(&e);
            }
            if rank == self.full_rank {
                break;
            }
        }
        basis
    }

    /// Connectivity components: the classes of the "lies on a common circuit"
    /// equivalence. Computed by linking every element outside a fixed basis
    /// to its fundamental circuit; separators never share a circuit, while a
    /// connected matroid is spanned by the circuits of any one basis.
    pub fn components(&self) -> Vec<ElemSet> {
        let basis = self.greedy_basis();
        let index: HashMap<ElementId, usize> =
            self.ground.iter().copied().enumerate().map(|(i, e)| (e, i)).collect();
        let mut uf = UnionFind::new(self.ground.len());
        let basis_vec: Vec<ElementId> = basis.iter().copied().collect();
        for &e in &self.ground {
            if basis.contains(&e) {
                continue;
            }
            let mut candidate = basis.clone();
            candidate.insert(e);
            for &b in &basis_vec {
                candidate.remove(&b);
                if self.rank_unchecked(&candidate) == basis.len() {
                    uf.union(index[&e], index[&b]);
                }
                candidate.insert(b);
            }
        }
        let mut by_class: HashMap<usize, ElemSet> = HashMap::new();
        for (i, &e) in self.ground.iter().enumerate() {
            by_class.entry(uf.find(i)).or_default().insert(e);
        }
        let mut out: Vec<ElemSet> = by_class.into_values().collect();
        out.sort_by_key(|c| *c.iter().next().unwrap());
        out
    }
}

/// Union-find with union by size and path halving.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        true
    }
}
