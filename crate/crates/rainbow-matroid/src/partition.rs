//! Partitions of element sets into color classes.
//!
//! A set is *rainbow* with respect to a partition when it contains at most
//! one element of every class. Elements of the ground set that are not
//! covered by any listed class behave as singleton classes throughout.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::matroid::{ElemSet, ElementId};

/// A partition of (a subset of) a ground set into disjoint classes.
/// Classes are kept in canonical form: members sorted, classes ordered by
/// their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    ground: Vec<ElementId>,
    classes: Vec<Vec<ElementId>>,
    class_of: HashMap<ElementId, usize>,
}

impl Partition {
    pub fn new(ground: Vec<ElementId>, classes: Vec<Vec<ElementId>>) -> Result<Self> {
        let ground_set: BTreeSet<ElementId> = ground.iter().copied().collect();
        if ground_set.len() != ground.len() {
            return Err(Error::invalid("duplicate element in ground set"));
        }
        let mut classes: Vec<Vec<ElementId>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort();
                c
            })
            .filter(|c| !c.is_empty())
            .collect();
        classes.sort();
        let mut class_of = HashMap::new();
        for (i, class) in classes.iter().enumerate() {
            for &e in class {
                if !ground_set.contains(&e) {
                    return Err(Error::UnknownElement(format!("{}", e.0)));
                }
                if class_of.insert(e, i).is_some() {
                    return Err(Error::invalid(format!(
                        "element {} appears in two classes",
                        e.0
                    )));
                }
            }
        }
        for class in &classes {
            if class.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid("duplicate element within a class"));
            }
        }
        Ok(Partition { ground, classes, class_of })
    }

    /// A partition with no listed classes: every element is a singleton.
    pub fn trivial(ground: Vec<ElementId>) -> Self {
        Partition::new(ground, Vec::new()).expect("no classes to validate")
    }

    pub fn ground(&self) -> &[ElementId] {
        &self.ground
    }

    pub fn classes(&self) -> &[Vec<ElementId>] {
        &self.classes
    }

    pub fn class_index_of(&self, e: ElementId) -> Option<usize> {
        self.class_of.get(&e).copied()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Every ground element lies in a class of size exactly `k`.
    pub fn is_uniform(&self, k: usize) -> bool {
        self.classes.iter().all(|c| c.len() == k)
            && self.classes.iter().map(Vec::len).sum::<usize>() == self.ground.len()
    }

    /// At most one element per class (uncovered elements are unconstrained).
    pub fn is_rainbow(&self, s: &ElemSet) -> bool {
        self.violating_class(s).is_none()
    }

    /// Index of some class with two or more elements in `s`.
    pub fn violating_class(&self, s: &ElemSet) -> Option<usize> {
        let mut seen: HashMap<usize, ElementId> = HashMap::new();
        for &e in s {
            if let Some(c) = self.class_index_of(e) {
                if seen.insert(c, e).is_some() {
                    return Some(c);
                }
            }
        }
        None
    }

    /// The induced partition on a subset of the ground set: classes are
    /// intersected with `ground` and empty intersections are dropped.
    pub fn restrict(&self, ground: &ElemSet) -> Partition {
        let new_ground: Vec<ElementId> =
            self.ground.iter().copied().filter(|e| ground.contains(e)).collect();
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().copied().filter(|e| ground.contains(e)).collect::<Vec<_>>())
            .filter(|c: &Vec<ElementId>| !c.is_empty())
            .collect();
        Partition::new(new_ground, classes).expect("restriction of a valid partition is valid")
    }
}

/// A partition whose classes have at most two elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairPartition {
    inner: Partition,
}

impl PairPartition {
    pub fn new(p: Partition) -> Result<Self> {
        if p.max_class_size() > 2 {
            return Err(Error::invalid("class with more than two elements"));
        }
        Ok(PairPartition { inner: p })
    }

    pub fn from_pairs(ground: Vec<ElementId>, pairs: &[(ElementId, ElementId)]) -> Result<Self> {
        let classes = pairs.iter().map(|&(a, b)| vec![a, b]).collect();
        PairPartition::new(Partition::new(ground, classes)?)
    }

    pub fn trivial(ground: Vec<ElementId>) -> Self {
        PairPartition { inner: Partition::trivial(ground) }
    }

    pub fn as_partition(&self) -> &Partition {
        &self.inner
    }

    pub fn ground(&self) -> &[ElementId] {
        self.inner.ground()
    }

    pub fn is_rainbow(&self, s: &ElemSet) -> bool {
        self.inner.is_rainbow(s)
    }

    /// The other element of `e`'s class, if `e` lies in a two-element class.
    pub fn partner(&self, e: ElementId) -> Option<ElementId> {
        let c = self.inner.class_index_of(e)?;
        let class = &self.inner.classes[c];
        match class.as_slice() {
            [a, b] => Some(if *a == e { *b } else { *a }),
            _ => None,
        }
    }

    /// Whether every element of `ground` is paired with a partner that also
    /// lies in `ground`.
    pub fn is_two_uniform_on(&self, ground: &ElemSet) -> bool {
        ground.iter().all(|&e| match self.partner(e) {
            Some(p) => ground.contains(&p),
            None => false,
        })
    }

    pub fn restrict(&self, ground: &ElemSet) -> PairPartition {
        PairPartition { inner: self.inner.restrict(ground) }
    }
}

/// Extends a two-bounded partition to a two-uniform one over `ground`:
/// classes with both members in `ground` are kept, every other element of
/// `ground` becomes a single, and the singles are paired up in ascending id
/// order. Fails when the number of singles is odd.
pub fn complete_to_two_uniform(p: &PairPartition, ground: &ElemSet) -> Result<PairPartition> {
    let mut pairs: Vec<(ElementId, ElementId)> = Vec::new();
    let mut singles: Vec<ElementId> = Vec::new();
    for &e in ground {
        match p.partner(e) {
            Some(q) if ground.contains(&q) => {
                if e < q {
                    pairs.push((e, q));
                }
            }
            _ => singles.push(e),
        }
    }
    if singles.len() % 2 != 0 {
        return Err(Error::invalid(format!(
            "cannot pair up {} leftover elements",
            singles.len()
        )));
    }
    singles.sort();
    for pair in singles.chunks(2) {
        pairs.push((pair[0], pair[1]));
    }
    PairPartition::from_pairs(ground.iter().copied().collect(), &pairs)
}

/// Like [`complete_to_two_uniform`], but tolerates an odd ground set: when
/// one element is left over after pairing, it keeps a singleton class.
pub fn complete_to_pairs(p: &PairPartition, ground: &ElemSet) -> PairPartition {
    let mut classes: Vec<Vec<ElementId>> = Vec::new();
    let mut singles: Vec<ElementId> = Vec::new();
    for &e in ground {
        match p.partner(e) {
            Some(q) if ground.contains(&q) => {
                if e < q {
                    classes.push(vec![e, q]);
                }
            }
            _ => singles.push(e),
        }
    }
    singles.sort();
    for chunk in singles.chunks(2) {
        classes.push(chunk.to_vec());
    }
    let inner = Partition::new(ground.iter().copied().collect(), classes)
        .expect("pairing covers each element once");
    PairPartition::new(inner).expect("classes have at most two elements")
}
