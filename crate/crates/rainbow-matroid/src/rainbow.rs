//! Rainbow bases of matroids that split into two disjoint bases.
//!
//! The centerpiece is [`half_covering_rainbow_basis`]: given a direct sum of
//! two-base matroids, a target set `Z` and a partition of the ground set into
//! pairs, it builds a basis that picks at most one element per pair and meets
//! at least half of `Z`. Repeating it on the missed part of `Z` covers `Z`
//! with logarithmically many rainbow bases ([`log_cover`]).
//!
//! The recursion has two moves. While some summand contains a nontrivial
//! tight set, that summand is split into restriction and contraction, which
//! changes no ground element but simplifies the structure. Once every
//! summand is tight-free, a cyclic sequence of pairs is extracted and one
//! element of each of its pairs is forced into the basis; contracting the
//! forced elements and deleting their partners shrinks the instance.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::matroid::{ElemSet, ElementId, Matroid};
use crate::partition::{complete_to_two_uniform, PairPartition};
use crate::union::{find_nontrivial_tight_set, is_two_base, k_base_factorize};

/// Alternating sequence e_1,f_1,…,e_μ,f_μ of distinct elements such that
/// each {e_j,f_j} is a partition class, f_{j-1} and e_j always share a
/// summand (cyclically, so f_μ shares one with e_1), and no summand holds
/// two e's or two f's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSequence {
    pub es: Vec<ElementId>,
    pub fs: Vec<ElementId>,
}

impl CyclicSequence {
    pub fn mu(&self) -> usize {
        self.es.len()
    }

    /// All 2μ elements in alternating order e_1,f_1,…,e_μ,f_μ.
    pub fn elements(&self) -> Vec<ElementId> {
        self.es.iter().zip(&self.fs).flat_map(|(&e, &f)| [e, f]).collect()
    }

    /// The same cyclic structure read backwards with the roles of e and f
    /// swapped; valid whenever `self` is.
    pub fn reversed(&self) -> CyclicSequence {
        CyclicSequence {
            es: self.fs.iter().rev().copied().collect(),
            fs: self.es.iter().rev().copied().collect(),
        }
    }
}

fn component_index(components: &[ElemSet], e: ElementId) -> Result<usize> {
    components
        .iter()
        .position(|c| c.contains(&e))
        .ok_or_else(|| Error::UnknownElement(format!("{}", e.0)))
}

/// Checks the four defining properties of a [`CyclicSequence`] against a
/// family of disjoint summand ground sets and a pair partition.
pub fn validate_cyclic_sequence(
    seq: &CyclicSequence,
    components: &[ElemSet],
    p: &PairPartition,
) -> Result<()> {
    let mu = seq.mu();
    if mu == 0 || seq.fs.len() != mu {
        return Err(Error::invalid("sequence must alternate with length at least one"));
    }
    let all = seq.elements();
    let distinct: ElemSet = all.iter().copied().collect();
    if distinct.len() != 2 * mu {
        return Err(Error::invalid("sequence elements must be distinct"));
    }
    for j in 0..mu {
        if p.partner(seq.es[j]) != Some(seq.fs[j]) {
            return Err(Error::invalid("each e must be paired with the matching f"));
        }
    }
    for j in 0..mu {
        // j = 0 wraps around and checks the closing property.
        let prev_f = seq.fs[(j + mu - 1) % mu];
        if component_index(components, prev_f)? != component_index(components, seq.es[j])? {
            return Err(Error::invalid("consecutive f and e must share a summand"));
        }
    }
    let mut e_count: HashMap<usize, usize> = HashMap::new();
    let mut f_count: HashMap<usize, usize> = HashMap::new();
    for &e in &seq.es {
        *e_count.entry(component_index(components, e)?).or_insert(0) += 1;
    }
    for &f in &seq.fs {
        *f_count.entry(component_index(components, f)?).or_insert(0) += 1;
    }
    if e_count.values().any(|&c| c > 1) || f_count.values().any(|&c| c > 1) {
        return Err(Error::invalid("a summand holds two e's or two f's"));
    }
    Ok(())
}

/// Walks through the summands following partner links until it closes a
/// cycle. Starting from `start_hint` (default: the smallest element of the
/// first summand), each step takes the partner `f` of the current element
/// and moves to `f`'s summand; if that summand already holds an earlier `e`,
/// the walk from that `e` onwards is the result, otherwise the walk
/// continues with the smallest element of the summand other than `f`.
///
/// Every non-closing step enters a summand not visited before, so the walk
/// closes after at most `components.len()` steps.
pub fn find_cyclic_sequence(
    components: &[ElemSet],
    p: &PairPartition,
    start_hint: Option<ElementId>,
) -> Result<CyclicSequence> {
    if components.is_empty() {
        return Err(Error::invalid("no summands to walk through"));
    }
    let mut union = ElemSet::new();
    let mut total = 0usize;
    for c in components {
        if c.len() < 2 {
            return Err(Error::invalid("every summand needs at least two elements"));
        }
        total += c.len();
        union.extend(c.iter().copied());
    }
    if union.len() != total {
        return Err(Error::invalid("summand ground sets overlap"));
    }
    if !p.is_two_uniform_on(&union) {
        return Err(Error::invalid("partition must pair up all summand elements"));
    }

    let start = match start_hint {
        Some(e) if union.contains(&e) => e,
        Some(e) => return Err(Error::UnknownElement(format!("{}", e.0))),
        None => *components[0].iter().next().expect("summands are nonempty"),
    };

    let mut es: Vec<ElementId> = vec![start];
    let mut fs: Vec<ElementId> = Vec::new();
    let mut e_home: HashMap<usize, usize> = HashMap::new();
    e_home.insert(component_index(components, start)?, 0);
    for _ in 0..=components.len() {
        let e = *es.last().expect("walk holds at least the start");
        let f = p.partner(e).expect("partition is pair-complete");
        fs.push(f);
        let landing = component_index(components, f)?;
        if let Some(&i) = e_home.get(&landing) {
            let seq = CyclicSequence { es: es.split_off(i), fs: fs.split_off(i) };
            debug_assert!(validate_cyclic_sequence(&seq, components, p).is_ok());
            return Ok(seq);
        }
        let next = components[landing]
            .iter()
            .copied()
            .find(|&x| x != f)
            .expect("summands have at least two elements");
        e_home.insert(landing, es.len());
        es.push(next);
    }
    unreachable!("walk failed to close despite entering a fresh summand each step")
}

/// Lexicographic measure that every recursive step strictly decreases:
/// total element count first, then the sum of squared summand sizes.
fn recursion_measure(comps: &[Matroid]) -> (usize, u128) {
    let total = comps.iter().map(Matroid::size).sum();
    let sumsq = comps.iter().map(|m| (m.size() as u128).pow(2)).sum();
    (total, sumsq)
}

fn part_of<'a>(b: &'a ElemSet, m: &Matroid) -> ElemSet {
    b.iter().copied().filter(|&e| m.contains(e)).collect()
}

fn cover_rec(
    comps: Vec<Matroid>,
    z: &ElemSet,
    p: &PairPartition,
    parent_measure: Option<(usize, u128)>,
) -> ElemSet {
    let comps: Vec<Matroid> = comps.into_iter().filter(|m| !m.is_empty()).collect();
    let measure = recursion_measure(&comps);
    if let Some(parent) = parent_measure {
        assert!(measure < parent, "recursion measure failed to decrease");
    }
    if comps.is_empty() {
        assert!(z.is_empty(), "target set must live in the ground set");
        return ElemSet::new();
    }

    // While some summand contains a nontrivial tight set, split it off.
    for (i, m) in comps.iter().enumerate() {
        let tight = find_nontrivial_tight_set(m).expect("summands stay two-base");
        if let Some(x) = tight {
            let restricted = m.restrict(&x).expect("tight set lies in the summand");
            let contracted = m.contract(&x).expect("tight set lies in the summand");
            let mut next = comps.clone();
            next.splice(i..=i, [restricted, contracted]);
            let b = cover_rec(next, z, p, Some(measure));
            // The split may only have lowered ranks, never raised them, so
            // the returned basis must still be one of the unsplit summand.
            assert!(
                m.is_basis(&part_of(&b, m)).expect("basis check on own ground"),
                "tight split returned a set that is not a basis of the unsplit summand"
            );
            return b;
        }
    }

    // All summands are tight-free: extract a cyclic sequence of pairs.
    let grounds: Vec<ElemSet> = comps.iter().map(Matroid::ground_elems).collect();
    let mut seq =
        find_cyclic_sequence(&grounds, p, None).expect("tight-free summands admit a walk");
    let e_hits = seq.es.iter().filter(|e| z.contains(e)).count();
    let f_hits = seq.fs.iter().filter(|f| z.contains(f)).count();
    if f_hits > e_hits {
        seq = seq.reversed();
        debug_assert!(validate_cyclic_sequence(&seq, &grounds, p).is_ok());
    }

    // Contract e_j and delete f_{j-1} (cyclically) from the summand they
    // share; the sequence elements vanish, pairs disappearing whole.
    let mu = seq.mu();
    let mut removal: HashMap<usize, (ElementId, ElementId)> = HashMap::new();
    for j in 0..mu {
        let e = seq.es[j];
        let prev_f = seq.fs[(j + mu - 1) % mu];
        let home = comps.iter().position(|m| m.contains(e)).expect("e lies in a summand");
        assert!(comps[home].contains(prev_f), "pair must share a summand");
        let clash = removal.insert(home, (e, prev_f));
        assert!(clash.is_none(), "two removals hit the same summand");
    }
    let mut next: Vec<Matroid> = Vec::with_capacity(comps.len());
    for (i, m) in comps.iter().enumerate() {
        match removal.get(&i) {
            Some(&(e, f)) => {
                let minor = m
                    .contract(&[e].into_iter().collect())
                    .expect("sequence element lies in the summand")
                    .delete(&[f].into_iter().collect())
                    .expect("partner lies in the summand");
                next.push(minor);
            }
            None => next.push(m.clone()),
        }
    }
    let next_ground: ElemSet = next.iter().flat_map(Matroid::ground_set).copied().collect();
    debug_assert!(
        p.is_two_uniform_on(&next_ground),
        "removals must take out whole pairs"
    );
    let z_next: ElemSet = z.intersection(&next_ground).copied().collect();

    let mut b = cover_rec(next, &z_next, p, Some(measure));
    b.extend(seq.es.iter().copied());

    debug_assert!(comps.iter().all(|m| m.is_basis(&part_of(&b, m)).unwrap()));
    debug_assert!(p.is_rainbow(&b));
    debug_assert!(2 * b.intersection(z).count() >= z.len());
    b
}

/// Builds a basis of the direct sum of `components` that is rainbow with
/// respect to `p` and contains at least half of `z`. The returned set `B`
/// satisfies, and is checked against, all three properties: `B` restricted
/// to each summand is a basis of it, `B` holds at most one element per class
/// of `p`, and `2 |Z ∩ B| ≥ |Z|`.
///
/// Requirements: the summand ground sets are pairwise disjoint, each summand
/// splits into two disjoint bases, `p` is 2-uniform over the union of the
/// ground sets, and `z` is a subset of that union.
pub fn half_covering_rainbow_basis(
    components: &[Matroid],
    z: &ElemSet,
    p: &PairPartition,
) -> Result<ElemSet> {
    let mut union = ElemSet::new();
    let mut total = 0usize;
    for m in components {
        total += m.size();
        union.extend(m.ground_set().iter().copied());
    }
    if union.len() != total {
        return Err(Error::invalid("summand ground sets overlap"));
    }
    if !z.iter().all(|e| union.contains(e)) {
        return Err(Error::invalid("target set leaves the ground set"));
    }
    if !p.is_two_uniform_on(&union) {
        return Err(Error::invalid("partition must pair up the whole ground set"));
    }
    for m in components {
        if !is_two_base(m) {
            return Err(Error::invalid(
                "every summand must split into two disjoint bases",
            ));
        }
    }
    let b = cover_rec(components.to_vec(), z, p, None);
    for m in components {
        assert!(
            m.is_basis(&part_of(&b, m)).expect("output stays in the ground set"),
            "output is not a basis of every summand"
        );
    }
    assert!(p.is_rainbow(&b), "output is not rainbow");
    assert!(2 * b.intersection(z).count() >= z.len(), "output misses half the target");
    Ok(b)
}

fn summands(m: &Matroid) -> Vec<Matroid> {
    m.components()
        .iter()
        .map(|c| m.restrict(c).expect("component lies in the ground set"))
        .collect()
}

/// A basis holding at most one element per class of `p`, which may leave
/// some classes incomplete or elements unclassified. Exists for every
/// matroid that splits into two disjoint bases.
pub fn rainbow_basis(m: &Matroid, p: &PairPartition) -> Result<ElemSet> {
    k_base_factorize(m, 2)?;
    let completed = complete_to_two_uniform(p, &m.ground_elems())?;
    half_covering_rainbow_basis(&summands(m), &ElemSet::new(), &completed)
}

/// Covers `z` by at most `⌊log₂ |z|⌋ + 1` rainbow bases of `m`, halving the
/// uncovered part with each basis. `z = ∅` yields the empty list.
pub fn log_cover(m: &Matroid, z: &ElemSet, p: &PairPartition) -> Result<Vec<ElemSet>> {
    k_base_factorize(m, 2)?;
    if let Some(e) = z.iter().find(|e| !m.contains(**e)) {
        return Err(Error::UnknownElement(format!("{}", e.0)));
    }
    let completed = complete_to_two_uniform(p, &m.ground_elems())?;
    let comps = summands(m);
    let mut bases = Vec::new();
    let mut rest = z.clone();
    while !rest.is_empty() {
        let b = half_covering_rainbow_basis(&comps, &rest, &completed)?;
        let missed: ElemSet = rest.difference(&b).copied().collect();
        assert!(2 * missed.len() <= rest.len(), "basis covered less than half");
        rest = missed;
        bases.push(b);
    }
    if !z.is_empty() {
        let bound = z.len().ilog2() as usize + 1;
        assert!(bases.len() <= bound, "needed {} bases, bound is {bound}", bases.len());
    }
    Ok(bases)
}
