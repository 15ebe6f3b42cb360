//! Covering the whole ground set of a k-base matroid by rainbow bases.
//!
//! The route is always the same: carve the factorization into blocks that
//! are easy to cover by rainbow *independent* sets, then lift each
//! independent set into few rainbow *bases* that contain it. A matroid with
//! four disjoint bases lets every rainbow independent set hide inside two
//! rainbow bases; with only three disjoint bases it takes three. The
//! resulting bounds are 5α + 4β bases for k = 2α + β ≥ 4 and 13 for k = 3.

use crate::error::{Error, Result};
use crate::matroid::{ElemSet, Matroid};
use crate::partition::{complete_to_pairs, PairPartition};
use crate::rainbow::rainbow_basis;
use crate::union::k_base_factorize;

/// Which sub-algorithm produced a cover entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverOrigin {
    /// Rainbow basis covering a block of two factorization bases.
    BlockBasis,
    /// Leftover independent set that happened to be a basis already.
    DirectBasis,
    /// One of the two bases wrapped around an independent set.
    PairLift,
    /// One of the three bases wrapped around an independent set.
    TripleLift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverEntry {
    pub elements: ElemSet,
    pub is_basis: bool,
    pub origin: CoverOrigin,
}

/// A list of rainbow sets covering a target, with provenance per entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowCover {
    pub entries: Vec<CoverEntry>,
}

impl RainbowCover {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Union of all entries.
    pub fn covered(&self) -> ElemSet {
        self.entries.iter().flat_map(|e| e.elements.iter()).copied().collect()
    }
}

/// Covers a two-base matroid by three rainbow sets: a rainbow basis and the
/// two halves that a factorization induces on the rest. All three are
/// independent, pairwise disjoint, and their union is the ground set.
pub fn cover_three(m: &Matroid, p: &PairPartition) -> Result<(ElemSet, ElemSet, ElemSet)> {
    let f = k_base_factorize(m, 2)?;
    let x1 = rainbow_basis(m, p)?;
    let x2: ElemSet = f.parts[0].difference(&x1).copied().collect();
    let x3: ElemSet = f.parts[1].difference(&x1).copied().collect();
    assert!(p.is_rainbow(&x2) && p.is_rainbow(&x3), "remainders are not rainbow");
    debug_assert!(m.is_independent(&x2).unwrap() && m.is_independent(&x3).unwrap());
    debug_assert_eq!(
        x1.len() + x2.len() + x3.len(),
        m.size(),
        "three parts must tile the ground set"
    );
    Ok((x1, x2, x3))
}

/// Splits an independent set into two rainbow subsets, first-fit in element
/// order: a class's first member goes left, its second right.
pub fn split_basis_rainbow(b: &ElemSet, p: &PairPartition) -> (ElemSet, ElemSet) {
    let mut s1 = ElemSet::new();
    let mut s2 = ElemSet::new();
    for &e in b {
        match p.partner(e) {
            Some(q) if s1.contains(&q) => s2.insert(e),
            _ => s1.insert(e),
        };
    }
    debug_assert!(p.is_rainbow(&s1) && p.is_rainbow(&s2));
    (s1, s2)
}

fn validate_lift_input(
    m: &Matroid,
    p: &PairPartition,
    x: &ElemSet,
    bases: &[ElemSet],
    needed: usize,
) -> Result<()> {
    if bases.len() < needed {
        return Err(Error::invalid(format!(
            "need {needed} disjoint bases, got {}",
            bases.len()
        )));
    }
    let mut seen = ElemSet::new();
    for b in &bases[..needed] {
        if !m.is_basis(b)? {
            return Err(Error::invalid("supplied set is not a basis"));
        }
        if b.iter().any(|e| seen.contains(e)) {
            return Err(Error::invalid("supplied bases overlap"));
        }
        seen.extend(b.iter().copied());
    }
    if !m.is_independent(x)? {
        return Err(Error::invalid("set to lift is not independent"));
    }
    if !p.is_rainbow(x) {
        return Err(Error::invalid("set to lift is not rainbow"));
    }
    Ok(())
}

/// Partners of the members of `x`; elements without a partner contribute
/// nothing, which leaves them unconstrained in the avoidance sets.
fn partners_of(x: &ElemSet, p: &PairPartition) -> ElemSet {
    x.iter().filter_map(|&e| p.partner(e)).collect()
}

/// Splits `x` by which avoidance set holds each member's partner,
/// first-fit: earlier groups win ties, partnerless members join the first.
fn assign_by_partner(x: &ElemSet, p: &PairPartition, avoid: &[ElemSet]) -> Vec<ElemSet> {
    let mut groups = vec![ElemSet::new(); avoid.len()];
    'outer: for &e in x {
        match p.partner(e) {
            None => {
                groups[0].insert(e);
            }
            Some(q) => {
                for (g, a) in groups.iter_mut().zip(avoid) {
                    if a.contains(&q) {
                        g.insert(e);
                        continue 'outer;
                    }
                }
                unreachable!("partner of {e:?} lies in more than all but one base pair");
            }
        }
    }
    groups
}

/// Wraps one rainbow basis of `m` around the independent rainbow set `xi`,
/// drawing the rest from the two disjoint bases `ca` and `cb`: contract
/// `xi`, shrink each base to a basis of the contraction, and pick a rainbow
/// basis of their union. Requires that no partner of `xi` lies in
/// `xi ∪ ca ∪ cb`.
fn basis_through(
    m: &Matroid,
    p: &PairPartition,
    xi: &ElemSet,
    ca: &ElemSet,
    cb: &ElemSet,
) -> Result<ElemSet> {
    let mut sub_ground: ElemSet = xi.clone();
    sub_ground.extend(ca.iter().copied());
    sub_ground.extend(cb.iter().copied());
    let shadows = partners_of(xi, p);
    assert!(
        shadows.is_disjoint(&sub_ground),
        "a partner of the lifted set leaked into its working ground"
    );
    let sub = m.restrict(&sub_ground)?;
    let contracted = sub.contract(xi)?;
    let mut cores = Vec::with_capacity(2);
    for c in [ca, cb] {
        let keep: ElemSet = c.difference(xi).copied().collect();
        let shrunk = contracted.restrict(&keep)?.greedy_basis();
        assert_eq!(
            shrunk.len(),
            contracted.full_rank(),
            "a disjoint basis failed to span the contraction"
        );
        cores.push(shrunk);
    }
    let core_ground: ElemSet = cores.iter().flatten().copied().collect();
    let core = contracted.restrict(&core_ground)?;
    let inner = rainbow_basis(&core, p)?;
    let mut basis: ElemSet = inner;
    basis.extend(xi.iter().copied());
    assert!(m.is_basis(&basis)?, "lift did not produce a basis");
    assert!(p.is_rainbow(&basis), "lift did not produce a rainbow set");
    Ok(basis)
}

/// Hides a rainbow independent set inside two rainbow bases, using four
/// disjoint bases as raw material: each member's partner misses at least
/// one of the base pairs (C₁,C₂) and (C₃,C₄), which decides the side on
/// which that member rides.
///
/// Elements without a partner in `p` are unconstrained; this makes the
/// lift usable when an odd ground set leaves one element unpaired.
pub fn lift_to_two_bases(
    m: &Matroid,
    p: &PairPartition,
    x: &ElemSet,
    bases: &[ElemSet],
) -> Result<(ElemSet, ElemSet)> {
    validate_lift_input(m, p, x, bases, 4)?;
    let pair1: ElemSet = bases[0].union(&bases[1]).copied().collect();
    let pair2: ElemSet = bases[2].union(&bases[3]).copied().collect();
    let shadows = partners_of(x, p);
    let avoid1: ElemSet = shadows.difference(&pair1).copied().collect();
    let avoid2: ElemSet = shadows.difference(&pair2).copied().collect();
    let groups = assign_by_partner(x, p, &[avoid1, avoid2]);
    let b1 = basis_through(m, p, &groups[0], &bases[0], &bases[1])?;
    let b2 = basis_through(m, p, &groups[1], &bases[2], &bases[3])?;
    assert!(x.iter().all(|e| b1.contains(e) || b2.contains(e)));
    Ok((b1, b2))
}

/// Same as [`lift_to_two_bases`] with only three disjoint bases available:
/// the base pairs (C₁,C₂), (C₂,C₃), (C₃,C₁) overlap, so three bases are
/// needed to give every partner a pair it misses.
pub fn lift_to_three_bases(
    m: &Matroid,
    p: &PairPartition,
    x: &ElemSet,
    bases: &[ElemSet],
) -> Result<(ElemSet, ElemSet, ElemSet)> {
    validate_lift_input(m, p, x, bases, 3)?;
    let shadows = partners_of(x, p);
    let pairs = [(0usize, 1usize), (1, 2), (2, 0)];
    let avoid: Vec<ElemSet> = pairs
        .iter()
        .map(|&(a, b)| {
            let pair: ElemSet = bases[a].union(&bases[b]).copied().collect();
            shadows.difference(&pair).copied().collect()
        })
        .collect();
    let groups = assign_by_partner(x, p, &avoid);
    let mut out = Vec::with_capacity(3);
    for (g, &(a, b)) in groups.iter().zip(&pairs) {
        out.push(basis_through(m, p, g, &bases[a], &bases[b])?);
    }
    assert!(x.iter().all(|e| out.iter().any(|bb| bb.contains(e))));
    let b3 = out.pop().expect("three groups");
    let b2 = out.pop().expect("three groups");
    let b1 = out.pop().expect("three groups");
    Ok((b1, b2, b3))
}

/// Turns leftover rainbow independent sets into cover entries: empty sets
/// vanish, full bases enter directly, everything else is lifted.
fn lift_leftovers(
    m: &Matroid,
    pstar: &PairPartition,
    pending: Vec<ElemSet>,
    lift_bases: &[ElemSet],
    entries: &mut Vec<CoverEntry>,
    triple: bool,
) -> Result<()> {
    for x in pending {
        if x.is_empty() {
            continue;
        }
        if m.is_basis(&x)? {
            entries.push(CoverEntry {
                elements: x,
                is_basis: true,
                origin: CoverOrigin::DirectBasis,
            });
            continue;
        }
        if triple {
            let (b1, b2, b3) = lift_to_three_bases(m, pstar, &x, lift_bases)?;
            for b in [b1, b2, b3] {
                entries.push(CoverEntry {
                    elements: b,
                    is_basis: true,
                    origin: CoverOrigin::TripleLift,
                });
            }
        } else {
            let (b1, b2) = lift_to_two_bases(m, pstar, &x, lift_bases)?;
            for b in [b1, b2] {
                entries.push(CoverEntry {
                    elements: b,
                    is_basis: true,
                    origin: CoverOrigin::PairLift,
                });
            }
        }
    }
    Ok(())
}

fn assert_cover(m: &Matroid, p: &PairPartition, cover: &RainbowCover, bound: usize) {
    assert!(cover.len() <= bound, "cover has {} entries, bound is {bound}", cover.len());
    assert_eq!(cover.covered(), m.ground_elems(), "cover must tile the ground set");
    for entry in &cover.entries {
        assert!(entry.is_basis);
        assert!(m.is_basis(&entry.elements).expect("entries live in the ground set"));
        assert!(p.is_rainbow(&entry.elements));
    }
}

/// The default way to write k as 2α + β: as many base pairs as possible.
pub fn default_block_split(k: usize) -> (usize, usize) {
    (k / 2, k % 2)
}

/// Covers a matroid that factors into k ≥ 4 disjoint bases by at most
/// 5α + 4β rainbow bases, where k = 2α + β. Bases are consumed in pairs
/// (α blocks of two, covered by three independent sets each) and singly
/// (β split into two rainbow halves each); every non-basis piece is then
/// lifted into two rainbow bases.
pub fn cover_k41(
    m: &Matroid,
    k: usize,
    p: &PairPartition,
    alpha: usize,
    beta: usize,
) -> Result<RainbowCover> {
    if k < 4 {
        return Err(Error::invalid("pair lifting needs at least four bases"));
    }
    if 2 * alpha + beta != k {
        return Err(Error::invalid(format!("{alpha} blocks and {beta} singles do not make {k}")));
    }
    let f = k_base_factorize(m, k)?;
    let pstar = complete_to_pairs(p, &m.ground_elems());
    let lift_bases = &f.parts[..4];
    let mut entries = Vec::new();
    let mut pending: Vec<ElemSet> = Vec::new();
    for i in 0..alpha {
        let block: ElemSet = f.parts[2 * i].union(&f.parts[2 * i + 1]).copied().collect();
        let sub = m.restrict(&block)?;
        let (x1, x2, x3) = cover_three(&sub, &pstar)?;
        assert!(m.is_basis(&x1)?, "block basis must span the whole matroid");
        entries.push(CoverEntry {
            elements: x1,
            is_basis: true,
            origin: CoverOrigin::BlockBasis,
        });
        pending.push(x2);
        pending.push(x3);
    }
    for i in 0..beta {
        let (s1, s2) = split_basis_rainbow(&f.parts[2 * alpha + i], &pstar);
        pending.push(s1);
        pending.push(s2);
    }
    lift_leftovers(m, &pstar, pending, lift_bases, &mut entries, false)?;
    let cover = RainbowCover { entries };
    assert_cover(m, p, &cover, 5 * alpha + 4 * beta);
    Ok(cover)
}

/// Covers a matroid that factors into exactly three disjoint bases by at
/// most 13 rainbow bases: three independent sets cover the first two
/// factorization bases, two rainbow halves cover the third, and each
/// non-basis piece is lifted into three rainbow bases.
pub fn cover_k3(m: &Matroid, p: &PairPartition) -> Result<RainbowCover> {
    let f = k_base_factorize(m, 3)?;
    let pstar = complete_to_pairs(p, &m.ground_elems());
    let block: ElemSet = f.parts[0].union(&f.parts[1]).copied().collect();
    let sub = m.restrict(&block)?;
    let (x1, x2, x3) = cover_three(&sub, &pstar)?;
    assert!(m.is_basis(&x1)?, "block basis must span the whole matroid");
    let mut entries = vec![CoverEntry {
        elements: x1,
        is_basis: true,
        origin: CoverOrigin::BlockBasis,
    }];
    let (s1, s2) = split_basis_rainbow(&f.parts[2], &pstar);
    lift_leftovers(m, &pstar, vec![x2, x3, s1, s2], &f.parts, &mut entries, true)?;
    let cover = RainbowCover { entries };
    assert_cover(m, p, &cover, 13);
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_k_multiple_tree, Multigraph, VertexId};
    use crate::matroid::{ElementId, Matroid};
    use crate::union::is_two_base;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[u32]) -> ElemSet {
        v.iter().map(|&x| ElementId(x)).collect()
    }

    fn pairs(ground: &[u32], ps: &[(u32, u32)]) -> PairPartition {
        PairPartition::from_pairs(
            ground.iter().map(|&x| ElementId(x)).collect(),
            &ps.iter().map(|&(a, b)| (ElementId(a), ElementId(b))).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn parallel_edges(count: usize) -> Matroid {
        let mut g = Multigraph::with_vertices(2);
        for _ in 0..count {
            g.add_edge(VertexId(0), VertexId(1)).unwrap();
        }
        Matroid::graphic(&g)
    }

    /// Edge sets of the generated trees, as matroid elements (edge i is
    /// element i in a graphic matroid).
    fn as_element_sets(trees: &[std::collections::BTreeSet<crate::graph::EdgeId>]) -> Vec<ElemSet> {
        trees
            .iter()
            .map(|t| t.iter().map(|e| ElementId(e.0)).collect())
            .collect()
    }

    /// A random partition of the ground set into pairs plus, on odd
    /// grounds, one singleton.
    fn random_pairing(ground: &ElemSet, rng: &mut ChaCha8Rng) -> PairPartition {
        let mut order: Vec<ElementId> = ground.iter().copied().collect();
        order.shuffle(rng);
        let ps: Vec<(ElementId, ElementId)> = order
            .chunks(2)
            .filter(|c| c.len() == 2)
            .map(|c| (c[0], c[1]))
            .collect();
        PairPartition::from_pairs(order, &ps).unwrap()
    }

    /// A random rainbow independent subset: grown greedily from a shuffled
    /// element order, skipping anything that breaks independence or repeats
    /// a class.
    fn random_rainbow_independent(
        m: &Matroid,
        p: &PairPartition,
        rng: &mut ChaCha8Rng,
    ) -> ElemSet {
        let mut order: Vec<ElementId> = m.ground_set().to_vec();
        order.shuffle(rng);
        let target = rng.random_range(0..=m.full_rank());
        let mut x = ElemSet::new();
        for e in order {
            if x.len() == target {
                break;
            }
            let mut trial = x.clone();
            trial.insert(e);
            if m.is_independent(&trial).unwrap() && p.is_rainbow(&trial) {
                x = trial;
            }
        }
        x
    }

    #[test]
    fn cover_three_on_matching_partition() {
        let m = Matroid::graphic(&Multigraph::complete(4));
        let p = pairs(&[0, 1, 2, 3, 4, 5], &[(0, 5), (1, 4), (2, 3)]);
        let (x1, x2, x3) = cover_three(&m, &p).unwrap();
        assert!(m.is_basis(&x1).unwrap());
        assert!(p.is_rainbow(&x1));
        for x in [&x2, &x3] {
            assert!(m.is_independent(x).unwrap());
            assert!(p.is_rainbow(x));
        }
        let union: ElemSet = [&x1, &x2, &x3].iter().flat_map(|x| x.iter()).copied().collect();
        assert_eq!(union, m.ground_elems());
    }

    #[test]
    fn cover_three_on_parallel_pair() {
        let m = parallel_edges(2);
        let p = pairs(&[0, 1], &[(0, 1)]);
        let (x1, x2, x3) = cover_three(&m, &p).unwrap();
        assert_eq!(x1.len(), 1);
        assert_eq!(x2.len() + x3.len(), 1);
    }

    #[test]
    fn cover_three_rejects_non_two_base() {
        let m = Matroid::graphic(&Multigraph::complete(3));
        let p = PairPartition::trivial(m.ground_set().to_vec());
        assert!(cover_three(&m, &p).is_err());
    }

    #[test]
    fn cover_three_on_random_double_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for round in 0..50 {
            let n = rng.random_range(2..=6usize);
            let (g, _) = random_k_multiple_tree(n, 2, 7000 + round).unwrap();
            let m = Matroid::graphic(&g);
            let p = random_pairing(&m.ground_elems(), &mut rng);
            let (x1, x2, x3) = cover_three(&m, &p).unwrap();
            assert!(m.is_basis(&x1).unwrap() && p.is_rainbow(&x1));
            assert!(m.is_independent(&x2).unwrap() && p.is_rainbow(&x2));
            assert!(m.is_independent(&x3).unwrap() && p.is_rainbow(&x3));
            let union: ElemSet =
                [&x1, &x2, &x3].iter().flat_map(|x| x.iter()).copied().collect();
            assert_eq!(union, m.ground_elems());
        }
    }

    #[test]
    fn split_separates_full_classes() {
        let p = pairs(&[0, 1, 2, 3], &[(0, 1), (2, 3)]);
        let (s1, s2) = split_basis_rainbow(&set(&[0, 1, 2]), &p);
        assert_eq!(s1, set(&[0, 2]));
        assert_eq!(s2, set(&[1]));
    }

    #[test]
    fn split_keeps_rainbow_sets_whole() {
        let p = pairs(&[0, 1, 2, 3], &[(0, 1), (2, 3)]);
        let (s1, s2) = split_basis_rainbow(&set(&[0, 2]), &p);
        assert_eq!(s1, set(&[0, 2]));
        assert!(s2.is_empty());
    }

    #[test]
    fn split_handles_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(79);
        for _ in 0..100 {
            let n = rng.random_range(1..=12usize);
            let ground: ElemSet = (0..n as u32).map(ElementId).collect();
            let p = random_pairing(&ground, &mut rng);
            let b: ElemSet =
                ground.iter().copied().filter(|_| rng.random_range(0..2) == 0).collect();
            let (s1, s2) = split_basis_rainbow(&b, &p);
            assert!(p.is_rainbow(&s1));
            assert!(p.is_rainbow(&s2));
            assert!(s1.is_disjoint(&s2));
            let union: ElemSet = s1.union(&s2).copied().collect();
            assert_eq!(union, b);
        }
    }

    #[test]
    fn lift_pair_with_empty_set() {
        let (g, trees) = random_k_multiple_tree(4, 4, 11).unwrap();
        let m = Matroid::graphic(&g);
        let bases = as_element_sets(&trees);
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let p = random_pairing(&m.ground_elems(), &mut rng);
        let (b1, b2) = lift_to_two_bases(&m, &p, &ElemSet::new(), &bases).unwrap();
        for b in [&b1, &b2] {
            assert!(m.is_basis(b).unwrap());
            assert!(p.is_rainbow(b));
        }
    }

    #[test]
    fn lift_pair_on_four_parallel_edges() {
        let m = parallel_edges(4);
        let p = pairs(&[0, 1, 2, 3], &[(0, 1), (2, 3)]);
        let bases: Vec<ElemSet> = (0..4).map(|i| set(&[i])).collect();
        for x in [ElemSet::new(), set(&[0]), set(&[1]), set(&[2]), set(&[3])] {
            let (b1, b2) = lift_to_two_bases(&m, &p, &x, &bases).unwrap();
            assert_eq!(b1.len(), 1);
            assert_eq!(b2.len(), 1);
            assert!(x.iter().all(|e| b1.contains(e) || b2.contains(e)));
        }
    }

    #[test]
    fn lift_pair_rejects_bad_inputs() {
        let m = parallel_edges(4);
        let p = pairs(&[0, 1, 2, 3], &[(0, 1), (2, 3)]);
        let bases: Vec<ElemSet> = (0..4).map(|i| set(&[i])).collect();
        assert!(lift_to_two_bases(&m, &p, &ElemSet::new(), &bases[..3]).is_err());
        assert!(lift_to_two_bases(&m, &p, &set(&[0, 1]), &bases).is_err());
        let overlapping = vec![set(&[0]), set(&[0]), set(&[1]), set(&[2])];
        assert!(lift_to_two_bases(&m, &p, &ElemSet::new(), &overlapping).is_err());
        let non_basis = vec![set(&[0]), set(&[1]), set(&[2]), ElemSet::new()];
        assert!(lift_to_two_bases(&m, &p, &ElemSet::new(), &non_basis).is_err());
    }

    #[test]
    fn lift_pair_on_random_four_base_matroids() {
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        for round in 0..100 {
            let n = rng.random_range(2..=5usize);
            let (g, trees) = random_k_multiple_tree(n, 4, 9000 + round).unwrap();
            let m = Matroid::graphic(&g);
            let bases = as_element_sets(&trees);
            let p = random_pairing(&m.ground_elems(), &mut rng);
            let x = random_rainbow_independent(&m, &p, &mut rng);
            let (b1, b2) = lift_to_two_bases(&m, &p, &x, &bases).unwrap();
            for b in [&b1, &b2] {
                assert!(m.is_basis(b).unwrap());
                assert!(p.is_rainbow(b));
            }
            assert!(x.iter().all(|e| b1.contains(e) || b2.contains(e)));
        }
    }

    #[test]
    fn lift_triple_with_stray_partner() {
        // Seven parallel edges, three singleton bases; the partner of the
        // lifted element lies outside every supplied basis.
        let m = parallel_edges(7);
        let p = pairs(&[0, 1, 2, 3, 4, 5, 6], &[(3, 4), (5, 6)]);
        let bases: Vec<ElemSet> = (0..3).map(|i| set(&[i])).collect();
        let (b1, b2, b3) = lift_to_three_bases(&m, &p, &set(&[3]), &bases).unwrap();
        assert!(b1.contains(&ElementId(3)), "first group must absorb the element");
        for b in [&b1, &b2, &b3] {
            assert!(m.is_basis(b).unwrap());
            assert!(p.is_rainbow(b));
        }
    }

    #[test]
    fn lift_triple_on_random_three_base_matroids() {
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for round in 0..100 {
            let n = rng.random_range(2..=5usize);
            let (g, trees) = random_k_multiple_tree(n, 3, 11000 + round).unwrap();
            let m = Matroid::graphic(&g);
            let bases = as_element_sets(&trees);
            let p = random_pairing(&m.ground_elems(), &mut rng);
            let x = random_rainbow_independent(&m, &p, &mut rng);
            let (b1, b2, b3) = lift_to_three_bases(&m, &p, &x, &bases).unwrap();
            for b in [&b1, &b2, &b3] {
                assert!(m.is_basis(b).unwrap());
                assert!(p.is_rainbow(b));
            }
            assert!(x.iter().all(|e| b1.contains(e) || b2.contains(e) || b3.contains(e)));
        }
    }

    #[test]
    fn cover_k41_respects_bounds_on_multiple_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for round in 0..20 {
            let n = rng.random_range(2..=5usize);
            let k = rng.random_range(4..=5usize);
            let (g, _) = random_k_multiple_tree(n, k, 13000 + round).unwrap();
            let m = Matroid::graphic(&g);
            let p = random_pairing(&m.ground_elems(), &mut rng);
            let (alpha, beta) = default_block_split(k);
            let cover = cover_k41(&m, k, &p, alpha, beta).unwrap();
            assert!(cover.len() <= 5 * alpha + 4 * beta);
            assert_eq!(cover.covered(), m.ground_elems());
            for entry in &cover.entries {
                assert!(m.is_basis(&entry.elements).unwrap());
                assert!(p.is_rainbow(&entry.elements));
            }
        }
    }

    #[test]
    fn cover_k41_on_four_parallel_edges() {
        let m = parallel_edges(4);
        let p = pairs(&[0, 1, 2, 3], &[(0, 1), (2, 3)]);
        let cover = cover_k41(&m, 4, &p, 2, 0).unwrap();
        assert!(cover.len() <= 10);
        assert_eq!(cover.covered(), set(&[0, 1, 2, 3]));
        for entry in &cover.entries {
            assert_eq!(entry.elements.len(), 1);
        }
    }

    #[test]
    fn cover_k41_validates_arguments() {
        let m = parallel_edges(4);
        let p = PairPartition::trivial(m.ground_set().to_vec());
        assert!(cover_k41(&m, 3, &p, 1, 1).is_err());
        assert!(cover_k41(&m, 4, &p, 1, 1).is_err());
        let triangle = Matroid::graphic(&Multigraph::complete(3));
        let q = PairPartition::trivial(triangle.ground_set().to_vec());
        assert!(cover_k41(&triangle, 4, &q, 2, 0).is_err());
    }

    #[test]
    fn cover_k3_on_random_triple_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(103);
        for round in 0..15 {
            let n = rng.random_range(2..=6usize);
            let (g, _) = random_k_multiple_tree(n, 3, 15000 + round).unwrap();
            let m = Matroid::graphic(&g);
            let p = random_pairing(&m.ground_elems(), &mut rng);
            let cover = cover_k3(&m, &p).unwrap();
            assert!(cover.len() <= 13);
            assert_eq!(cover.covered(), m.ground_elems());
            for entry in &cover.entries {
                assert!(m.is_basis(&entry.elements).unwrap());
                assert!(p.is_rainbow(&entry.elements));
            }
        }
    }

    #[test]
    fn cover_k3_on_three_parallel_edges() {
        // Odd ground set: the completed pairing keeps one singleton class.
        let m = parallel_edges(3);
        let p = pairs(&[0, 1, 2], &[(0, 1)]);
        let cover = cover_k3(&m, &p).unwrap();
        assert!(cover.len() < 13, "single-edge bases shrink the cover");
        assert_eq!(cover.covered(), set(&[0, 1, 2]));
        for entry in &cover.entries {
            assert!(m.is_basis(&entry.elements).unwrap());
            assert!(p.is_rainbow(&entry.elements));
        }
    }

    #[test]
    fn cover_k3_rejects_other_factorization_counts() {
        let m = parallel_edges(4);
        let p = PairPartition::trivial(m.ground_set().to_vec());
        assert!(cover_k3(&m, &p).is_err());
    }

    #[test]
    fn multiple_tree_matroids_are_k_base() {
        // The generator's trees are a factorization witness; spot-check
        // that the matroid agrees.
        for seed in 0..5 {
            let (g, trees) = random_k_multiple_tree(4, 2, seed).unwrap();
            let m = Matroid::graphic(&g);
            assert!(is_two_base(&m));
            for t in as_element_sets(&trees) {
                assert!(m.is_basis(&t).unwrap());
            }
        }
    }
}
