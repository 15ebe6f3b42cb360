//! Matroid union for `k` copies of one matroid, and what it buys:
//! decompositions into disjoint bases, two-base tests, and tight sets.
//!
//! The engine is exchange-graph augmentation. We keep `k` disjoint
//! independent sets and insert elements in ground order; an element enters
//! through a shortest chain of single-element exchanges found by
//! breadth-first search. When no chain exists the element stays uncovered,
//! and the set of elements that cannot reach any insertion point yields the
//! min-max witness: the covered size always equals
//! `min_Y |Y| + k * rank(E - Y)`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, NotKBaseReason, Result};
use crate::graph::EdgeId;
use crate::matroid::{ElemSet, ElementId, Matroid, UnionFind};

/// Disjoint parts whose union is the ground set; produced with every part a
/// basis by [`k_base_factorize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub parts: Vec<ElemSet>,
}

impl Factorization {
    /// Union of all parts.
    pub fn support(&self) -> ElemSet {
        self.parts.iter().flatten().copied().collect()
    }
}

/// Optimality witness for a union computation: the covered size equals
/// `|witness| + k * rank(E - witness)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionCertificate {
    pub witness: ElemSet,
    pub value: usize,
}

struct UnionRun<'a> {
    m: &'a Matroid,
    k: usize,
    parts: Vec<ElemSet>,
    /// Which part an element currently sits in.
    location: HashMap<ElementId, usize>,
}

impl<'a> UnionRun<'a> {
    fn new(m: &'a Matroid, k: usize) -> Self {
        UnionRun { m, k, parts: vec![ElemSet::new(); k], location: HashMap::new() }
    }

    fn part_accepts(&self, j: usize, x: ElementId) -> bool {
        let mut trial = self.parts[j].clone();
        trial.insert(x);
        self.m.rank_unchecked(&trial) == trial.len()
    }

    fn swap_keeps_independent(&self, j: usize, out: ElementId, x: ElementId) -> bool {
        let mut trial = self.parts[j].clone();
        trial.remove(&out);
        trial.insert(x);
        self.m.rank_unchecked(&trial) == trial.len()
    }

    /// Tries to cover `e` by a shortest exchange chain. Breadth-first search
    /// keeps the chain free of shortcuts, which makes all exchanges along it
    /// simultaneously valid.
    fn augment(&mut self, e: ElementId) -> bool {
        let mut parent: HashMap<ElementId, ElementId> = HashMap::new();
        let mut queue = VecDeque::new();
        queue.push_back(e);
        let mut seen: BTreeSet<ElementId> = [e].into();
        while let Some(x) = queue.pop_front() {
            for j in 0..self.k {
                if self.location.get(&x) == Some(&j) {
                    continue;
                }
                if self.part_accepts(j, x) {
                    self.apply_chain(&parent, x, j);
                    return true;
                }
                let members: Vec<ElementId> = self.parts[j].iter().copied().collect();
                for y in members {
                    if !seen.contains(&y) && self.swap_keeps_independent(j, y, x) {
                        seen.insert(y);
                        parent.insert(y, x);
                        queue.push_back(y);
                    }
                }
            }
        }
        false
    }

    /// Applies the exchange chain ending at `last`, which part `sink` can
    /// absorb directly. Walking the parent pointers back to the start, each
    /// node replaces its successor in the successor's part.
    fn apply_chain(&mut self, parent: &HashMap<ElementId, ElementId>, last: ElementId, sink: usize) {
        let mut removals: Vec<Vec<ElementId>> = vec![Vec::new(); self.k];
        let mut insertions: Vec<Vec<ElementId>> = vec![Vec::new(); self.k];
        insertions[sink].push(last);
        let mut node = last;
        while let Some(&pred) = parent.get(&node) {
            let part = self.location[&node];
            removals[part].push(node);
            insertions[part].push(pred);
            node = pred;
        }
        // All removals strictly before all insertions: a node moving to a
        // lower-numbered part is inserted there and must not have its fresh
        // location wiped when its old part is processed afterwards.
        for j in 0..self.k {
            for &out in &removals[j] {
                self.parts[j].remove(&out);
                self.location.remove(&out);
            }
        }
        for j in 0..self.k {
            for &inn in &insertions[j] {
                self.parts[j].insert(inn);
                self.location.insert(inn, j);
            }
        }
        for j in 0..self.k {
            assert_eq!(
                self.m.rank_unchecked(&self.parts[j]),
                self.parts[j].len(),
                "exchange chain broke independence of part {j}"
            );
        }
    }

    /// Elements from which some insertion point is still reachable, starting
    /// the search at every uncovered element. After a maximal run this set
    /// contains no insertion point, and its complement is the witness.
    fn reachable_from_uncovered(&self) -> ElemSet {
        let mut seen: ElemSet = self
            .m
            .ground_set()
            .iter()
            .copied()
            .filter(|e| !self.location.contains_key(e))
            .collect();
        let mut queue: VecDeque<ElementId> = seen.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for j in 0..self.k {
                if self.location.get(&x) == Some(&j) {
                    continue;
                }
                debug_assert!(!self.part_accepts(j, x), "maximal run still accepts {x:?}");
                let members: Vec<ElementId> = self.parts[j].iter().copied().collect();
                for y in members {
                    if !seen.contains(&y) && self.swap_keeps_independent(j, y, x) {
                        seen.insert(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        seen
    }
}

fn run_union(m: &Matroid, k: usize) -> Result<UnionRun<'_>> {
    if k == 0 {
        return Err(Error::invalid("union of zero copies"));
    }
    let mut run = UnionRun::new(m, k);
    for &e in m.ground_set() {
        run.augment(e);
    }
    Ok(run)
}

/// Splits as much of the ground set as possible into `k` disjoint
/// independent sets, maximizing the number of covered elements. Parts are
/// returned in fill order; the outcome is deterministic in the ground order.
pub fn max_union_partition(m: &Matroid, k: usize) -> Result<Vec<ElemSet>> {
    Ok(run_union(m, k)?.parts)
}

/// Like [`max_union_partition`], also returning the min-max witness for the
/// covered size.
pub fn max_union_with_certificate(
    m: &Matroid,
    k: usize,
) -> Result<(Vec<ElemSet>, UnionCertificate)> {
    let run = run_union(m, k)?;
    let reachable = run.reachable_from_uncovered();
    let witness: ElemSet =
        m.ground_set().iter().copied().filter(|e| !reachable.contains(e)).collect();
    let value = witness.len() + k * m.rank_unchecked(&reachable);
    let covered: usize = run.parts.iter().map(ElemSet::len).sum();
    assert_eq!(value, covered, "witness does not certify the covered size");
    Ok((run.parts, UnionCertificate { witness, value }))
}

/// Partitions the ground set into `k` pairwise disjoint bases, or explains
/// why none exists: either the count `|E| = k * rank(E)` fails, or a witness
/// set caps the coverable size below `|E|`.
pub fn k_base_factorize(m: &Matroid, k: usize) -> Result<Factorization> {
    if k == 0 {
        return Err(Error::invalid("factorization into zero bases"));
    }
    let elements = m.size();
    let rank = m.full_rank();
    if elements != k * rank {
        return Err(Error::NotKBase {
            k,
            reason: NotKBaseReason::SizeMismatch { elements, rank, k },
        });
    }
    let (parts, cert) = max_union_with_certificate(m, k)?;
    if cert.value < elements {
        return Err(Error::NotKBase {
            k,
            reason: NotKBaseReason::Uncoverable { witness: cert.witness, value: cert.value, elements },
        });
    }
    for part in &parts {
        debug_assert_eq!(part.len(), rank);
    }
    Ok(Factorization { parts })
}

/// Whether the ground set contains two disjoint bases (it may be larger
/// than their union).
pub fn two_disjoint_bases_exist(m: &Matroid) -> bool {
    let covered: usize = max_union_partition(m, 2)
        .expect("k = 2 is valid")
        .iter()
        .map(ElemSet::len)
        .sum();
    covered == 2 * m.full_rank()
}

/// Whether the ground set splits into exactly two disjoint bases.
pub fn is_two_base(m: &Matroid) -> bool {
    m.size() == 2 * m.full_rank() && k_base_factorize(m, 2).is_ok()
}

/// Searches a two-base matroid for a set `X` with `0 < |X| < |E|` and
/// `2 * rank(X) = |X|`; restricting to such a set again gives a two-base
/// matroid, as does contracting it. Returns the first hit in a fixed
/// enumeration order, or `None` when every proper nonempty set satisfies
/// the strict inequality.
///
/// Minors of cycle matroids take a fast path over connected vertex subsets
/// of the contracted graph; everything else runs a pruned subset search,
/// intended for the small ground sets this recursion produces.
pub fn find_nontrivial_tight_set(m: &Matroid) -> Result<Option<ElemSet>> {
    if !is_two_base(m) {
        return Err(Error::invalid("tight-set search needs a two-base matroid"));
    }
    if m.size() <= 2 {
        // The only candidates are trivial.
        return Ok(None);
    }
    if let Some(found) = graphic_tight_set(m) {
        return Ok(found);
    }
    Ok(tight_set_by_subset_search(m))
}

/// Fast path for minors of cycle matroids. In a two-base matroid a tight set
/// is forced to contain every edge spanned inside it, so each of its
/// connected pieces is the full edge set of a connected vertex subset that
/// induces twice-a-spanning-tree many edges. Enumerating vertex subsets of
/// the contracted carrier graph finds such a piece directly.
///
/// Returns `None` when this matroid is not graphic-rooted or the carrier is
/// too large for subset enumeration, `Some(result)` otherwise.
fn graphic_tight_set(m: &Matroid) -> Option<Option<ElemSet>> {
    let gm = m.graphic_root()?;
    let graph = gm.graph();

    // Contract the graph: merge endpoint classes of contracted elements.
    let mut merged = UnionFind::new(graph.vertex_count());
    for &e in m.contracted() {
        let (u, v) = graph.endpoints(EdgeId(gm.edge_index(e).expect("root element") as u32));
        merged.union(u.index(), v.index());
    }
    // Compact ids for the vertex classes actually touched by live edges.
    let mut class_ids: HashMap<usize, usize> = HashMap::new();
    let mut ends: Vec<(usize, usize, ElementId)> = Vec::new();
    for &e in m.ground_set() {
        let (u, v) = graph.endpoints(EdgeId(gm.edge_index(e).expect("root element") as u32));
        let (cu, cv) = (merged.find(u.index()), merged.find(v.index()));
        assert_ne!(cu, cv, "two-base minor cannot contain a rank-zero element");
        let next = class_ids.len();
        let iu = *class_ids.entry(cu).or_insert(next);
        let next = class_ids.len();
        let iv = *class_ids.entry(cv).or_insert(next);
        ends.push((iu, iv, e));
    }
    let n = class_ids.len();
    if n > 20 {
        return None;
    }
    let m_edges = ends.len();

    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let inside: Vec<&(usize, usize, ElementId)> = ends
            .iter()
            .filter(|(u, v, _)| mask & (1 << u) != 0 && mask & (1 << v) != 0)
            .collect();
        if inside.len() != 2 * (size - 1) || inside.len() == m_edges {
            continue;
        }
        // All chosen vertices must be connected by the inside edges.
        let mut uf = UnionFind::new(n);
        for (u, v, _) in &inside {
            uf.union(*u, *v);
        }
        let chosen: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let root = uf.find(chosen[0]);
        if chosen.iter().all(|&i| uf.find(i) == root) {
            return Some(Some(inside.into_iter().map(|&(_, _, e)| e).collect()));
        }
    }
    Some(None)
}

/// Exhaustive fallback: depth-first over include/exclude decisions in ground
/// order, tracking the deficiency `2 * rank(X) - |X|`. Including an element
/// moves the deficiency by one in either direction, so a branch dies as soon
/// as the deficiency exceeds the number of undecided elements.
fn tight_set_by_subset_search(m: &Matroid) -> Option<ElemSet> {
    let ground: Vec<ElementId> = m.ground_set().to_vec();

    fn dfs(
        m: &Matroid,
        ground: &[ElementId],
        idx: usize,
        cur: &mut ElemSet,
        cur_rank: usize,
    ) -> Option<ElemSet> {
        let n = ground.len();
        let d = 2 * cur_rank - cur.len();
        if d == 0 && !cur.is_empty() && cur.len() < n {
            return Some(cur.clone());
        }
        if idx == n || d > n - idx {
            return None;
        }
        let e = ground[idx];
        cur.insert(e);
        let included_rank = m.rank_unchecked(cur);
        if let Some(hit) = dfs(m, ground, idx + 1, cur, included_rank) {
            return Some(hit);
        }
        cur.remove(&e);
        dfs(m, ground, idx + 1, cur, cur_rank)
    }

    dfs(m, &ground, 0, &mut ElemSet::new(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_k_multiple_tree, Multigraph, VertexId};
    use crate::matroid::elem_set;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[u32]) -> ElemSet {
        v.iter().map(|&x| ElementId(x)).collect()
    }

    fn k4() -> Matroid {
        Matroid::graphic(&Multigraph::complete(4))
    }

    fn random_graphic(rng: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> Matroid {
        let n = rng.random_range(2..=max_n);
        let m = rng.random_range(1..=max_m);
        let mut g = Multigraph::with_vertices(n);
        for _ in 0..m {
            let u = rng.random_range(0..n as u32);
            let mut v = rng.random_range(0..n as u32);
            while v == u {
                v = rng.random_range(0..n as u32);
            }
            g.add_edge(VertexId(u), VertexId(v)).unwrap();
        }
        Matroid::graphic(&g)
    }

    /// Oracle: the union bound minimized by full enumeration of subsets.
    fn brute_union_value(m: &Matroid, k: usize) -> usize {
        let ground: Vec<ElementId> = m.ground_set().to_vec();
        let n = ground.len();
        let mut best = usize::MAX;
        for mask in 0u64..(1 << n) {
            let y: ElemSet = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let rest: ElemSet = ground.iter().copied().filter(|e| !y.contains(e)).collect();
            best = best.min(y.len() + k * m.rank(&rest).unwrap());
        }
        best
    }

    /// Oracle: two disjoint bases exist iff |Z| + 2 rank(E - Z) >= 2 rank(E)
    /// for every subset Z, checked exhaustively.
    fn gu1_two_disjoint_bases(m: &Matroid) -> bool {
        let ground: Vec<ElementId> = m.ground_set().to_vec();
        let n = ground.len();
        let target = 2 * m.full_rank();
        (0u64..(1 << n)).all(|mask| {
            let z_size = mask.count_ones() as usize;
            let rest: ElemSet = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) == 0)
                .map(|(_, &e)| e)
                .collect();
            z_size + 2 * m.rank(&rest).unwrap() >= target
        })
    }

    /// Oracle: two-base iff rank(E) = |E| / 2 and 2 rank(Z) >= |Z| for all Z.
    fn gu2_is_two_base(m: &Matroid) -> bool {
        if m.size() != 2 * m.full_rank() {
            return false;
        }
        let ground: Vec<ElementId> = m.ground_set().to_vec();
        let n = ground.len();
        (0u64..(1 << n)).all(|mask| {
            let z: ElemSet = ground
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            2 * m.rank(&z).unwrap() >= z.len()
        })
    }

    #[test]
    fn triangle_union_splits_two_one() {
        let m = Matroid::graphic(&Multigraph::complete(3));
        let parts = max_union_partition(&m, 2).unwrap();
        assert_eq!(parts[0].len(), 2);
        assert_eq!(parts[1].len(), 1);
        let support: ElemSet = parts.iter().flatten().copied().collect();
        assert_eq!(support.len(), 3);
    }

    #[test]
    fn k4_union_gives_two_spanning_trees() {
        let m = k4();
        let f = k_base_factorize(&m, 2).unwrap();
        assert_eq!(f.parts.len(), 2);
        for part in &f.parts {
            assert!(m.is_basis(part).unwrap());
        }
        assert_eq!(f.support().len(), 6);
    }

    #[test]
    fn factorize_reports_size_mismatch() {
        let m = Matroid::graphic(&Multigraph::complete(3));
        match k_base_factorize(&m, 2) {
            Err(Error::NotKBase { reason: NotKBaseReason::SizeMismatch { .. }, .. }) => {}
            other => panic!("expected size mismatch, got {other:?}"),
        }
    }

    #[test]
    fn factorize_reports_witness_when_uncoverable() {
        // Three parallel edges plus one bridge-ish edge: |E| = 4 = 2 rank,
        // but the single edge 2-3 is needed by both trees.
        let mut g = Multigraph::with_vertices(3);
        for _ in 0..3 {
            g.add_edge(VertexId(0), VertexId(1)).unwrap();
        }
        g.add_edge(VertexId(1), VertexId(2)).unwrap();
        let m = Matroid::graphic(&g);
        match k_base_factorize(&m, 2) {
            Err(Error::NotKBase {
                reason: NotKBaseReason::Uncoverable { witness, value, elements },
                ..
            }) => {
                let rest: ElemSet =
                    m.ground_set().iter().copied().filter(|e| !witness.contains(e)).collect();
                assert_eq!(value, witness.len() + 2 * m.rank(&rest).unwrap());
                assert!(value < elements);
            }
            other => panic!("expected uncoverable witness, got {other:?}"),
        }
    }

    #[test]
    fn union_certificate_matches_brute_force_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let m = random_graphic(&mut rng, 5, 9);
            for k in 1..=3 {
                let (parts, cert) = max_union_with_certificate(&m, k).unwrap();
                let covered: usize = parts.iter().map(ElemSet::len).sum();
                assert_eq!(covered, cert.value);
                assert_eq!(covered, brute_union_value(&m, k), "union size is not optimal");
                for part in &parts {
                    assert!(m.is_independent(part).unwrap());
                }
                let mut all: Vec<ElementId> = parts.iter().flatten().copied().collect();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), covered, "parts overlap");
            }
        }
    }

    #[test]
    fn two_base_checks_agree_with_exhaustive_characterizations() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..60 {
            let m = random_graphic(&mut rng, 5, 8);
            assert_eq!(two_disjoint_bases_exist(&m), gu1_two_disjoint_bases(&m));
            assert_eq!(is_two_base(&m), gu2_is_two_base(&m));
        }
        // And on instances that are two-base by construction.
        for seed in 0..20 {
            let (g, _) = random_k_multiple_tree(2 + (seed as usize % 5), 2, seed).unwrap();
            let m = Matroid::graphic(&g);
            assert!(is_two_base(&m));
            assert!(gu2_is_two_base(&m));
        }
    }

    #[test]
    fn uniform_matroids_factorize() {
        let m = Matroid::uniform((0..6).map(ElementId).collect(), 2).unwrap();
        let f = k_base_factorize(&m, 3).unwrap();
        assert_eq!(f.parts.len(), 3);
        for part in &f.parts {
            assert!(m.is_basis(part).unwrap());
        }
    }

    #[test]
    fn tight_sets_of_named_instances() {
        assert_eq!(find_nontrivial_tight_set(&k4()).unwrap(), None);

        let mut two_parallel = Multigraph::with_vertices(2);
        two_parallel.add_edge(VertexId(0), VertexId(1)).unwrap();
        two_parallel.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert_eq!(find_nontrivial_tight_set(&Matroid::graphic(&two_parallel)).unwrap(), None);

        // Two K4 blocks sharing one vertex: either block is tight; the
        // canonical answer is the first block's edge set.
        let k4g = Multigraph::complete(4);
        let merged = crate::graph::identify_vertices(&[
            (&k4g, VertexId(0)),
            (&k4g, VertexId(0)),
        ])
        .unwrap();
        let m = Matroid::graphic(&merged.graph);
        let tight = find_nontrivial_tight_set(&m).unwrap().expect("blocks are tight");
        assert_eq!(tight, elem_set((0..6).map(ElementId)));

        // Not two-base: rejected.
        assert!(find_nontrivial_tight_set(&Matroid::graphic(&Multigraph::complete(3))).is_err());
    }

    #[test]
    fn tight_set_subset_search_handles_non_graphic_roots() {
        // Uniform two-base matroids have no nontrivial tight sets.
        let u = Matroid::uniform((0..8).map(ElementId).collect(), 4).unwrap();
        assert_eq!(find_nontrivial_tight_set(&u).unwrap(), None);

        // A direct sum of two parallel pairs: each pair is tight.
        let a = Matroid::uniform(vec![ElementId(0), ElementId(1)], 1).unwrap();
        let b = Matroid::uniform(vec![ElementId(2), ElementId(3)], 1).unwrap();
        let sum = Matroid::direct_sum(vec![a, b]).unwrap();
        assert_eq!(find_nontrivial_tight_set(&sum).unwrap(), Some(set(&[0, 1])));
    }

    #[test]
    fn tight_set_answer_matches_exhaustive_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut tested = 0;
        while tested < 25 {
            let n = rng.random_range(2..=5usize);
            let (g, _) = random_k_multiple_tree(n, 2, rng.random_range(0..1_000_000)).unwrap();
            let m = Matroid::graphic(&g);
            let ground: Vec<ElementId> = m.ground_set().to_vec();
            let brute: Option<ElemSet> = (1u64..(1 << ground.len()) - 1)
                .map(|mask| {
                    ground
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &e)| e)
                        .collect::<ElemSet>()
                })
                .find(|x| 2 * m.rank(x).unwrap() == x.len());
            let found = find_nontrivial_tight_set(&m).unwrap();
            assert_eq!(found.is_some(), brute.is_some());
            if let Some(x) = &found {
                assert_eq!(2 * m.rank(x).unwrap(), x.len());
                assert!(!x.is_empty() && x.len() < m.size());
            }
            tested += 1;
        }
    }

    #[test]
    fn restricting_or_contracting_a_tight_set_keeps_two_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let mut seen_tight = 0;
        let mut seed = 0;
        while seen_tight < 15 {
            seed += 1;
            let n = rng.random_range(2..=5usize);
            let (g, _) = random_k_multiple_tree(n, 2, seed).unwrap();
            let m = Matroid::graphic(&g);
            if let Some(x) = find_nontrivial_tight_set(&m).unwrap() {
                seen_tight += 1;
                assert!(is_two_base(&m.restrict(&x).unwrap()));
                assert!(is_two_base(&m.contract(&x).unwrap()));
            }
        }
    }

    #[test]
    fn contract_delete_on_tight_free_matroids_keeps_two_base() {
        // For a two-base matroid without nontrivial tight sets, contracting
        // one element and deleting any other leaves a two-base matroid.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut tested = 0;
        let mut seed = 1000;
        while tested < 10 {
            seed += 1;
            let n = rng.random_range(2..=5usize);
            let (g, _) = random_k_multiple_tree(n, 2, seed).unwrap();
            let m = Matroid::graphic(&g);
            if find_nontrivial_tight_set(&m).unwrap().is_some() {
                continue;
            }
            tested += 1;
            let ground: Vec<ElementId> = m.ground_set().to_vec();
            for &e in &ground {
                for &f in &ground {
                    if e == f {
                        continue;
                    }
                    let minor = m.contract(&set(&[e.0])).unwrap().delete(&set(&[f.0])).unwrap();
                    assert!(
                        is_two_base(&minor),
                        "contract {e:?} delete {f:?} broke two-base"
                    );
                }
            }
        }
    }

    #[test]
    fn no_tight_set_means_strict_inequality_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let mut tested = 0;
        let mut seed = 5000;
        while tested < 10 {
            seed += 1;
            let n = rng.random_range(2..=5usize);
            let (g, _) = random_k_multiple_tree(n, 2, seed).unwrap();
            let m = Matroid::graphic(&g);
            if find_nontrivial_tight_set(&m).unwrap().is_some() {
                continue;
            }
            tested += 1;
            let ground: Vec<ElementId> = m.ground_set().to_vec();
            for mask in 1u64..(1 << ground.len()) - 1 {
                let z: ElemSet = ground
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e)
                    .collect();
                assert!(2 * m.rank(&z).unwrap() > z.len());
            }
        }
    }

    #[test]
    fn splitting_off_an_independent_set_only_loses_rank() {
        // The direct sum of a restriction and the matching contraction is
        // rank-dominated by the original matroid.
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..40 {
            let m = random_graphic(&mut rng, 5, 8);
            let x: ElemSet =
                m.ground_set().iter().copied().filter(|_| rng.random_range(0..2) == 0).collect();
            let split = Matroid::direct_sum(vec![
                m.restrict(&x).unwrap(),
                m.contract(&x).unwrap(),
            ])
            .unwrap();
            for _ in 0..20 {
                let z: ElemSet = m
                    .ground_set()
                    .iter()
                    .copied()
                    .filter(|_| rng.random_range(0..2) == 0)
                    .collect();
                assert!(split.rank(&z).unwrap() <= m.rank(&z).unwrap());
            }
        }
    }

    #[test]
    fn basis_leftovers_span_contractions() {
        // For a basis B and independent X: B - X contains a basis of M / X,
        // and X plus any basis of M / X is a basis of M.
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..40 {
            let m = random_graphic(&mut rng, 5, 8);
            let b = m.greedy_basis();
            let x: ElemSet =
                m.ground_set().iter().copied().filter(|_| rng.random_range(0..3) == 0).collect();
            if m.rank(&x).unwrap() != x.len() {
                continue;
            }
            let contracted = m.contract(&x).unwrap();
            let leftovers: ElemSet = b.difference(&x).copied().collect();
            assert_eq!(
                contracted.rank(&leftovers).unwrap(),
                contracted.full_rank(),
                "basis leftovers must span the contraction"
            );
            let sub_basis = contracted.restrict(&leftovers).unwrap().greedy_basis();
            let joined: ElemSet = sub_basis.union(&x).copied().collect();
            assert!(m.is_basis(&joined).unwrap());
        }
    }
}
