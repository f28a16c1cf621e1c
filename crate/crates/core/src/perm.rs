//! Label permutations and label relations.
//!
//! Labels are 1-indexed throughout: a permutation of size `k` acts on
//! `{1, …, k}`.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `[k]`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// Validates that `image` is a bijection of `[image.len()]`.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let k = image.len();
        if k == 0 {
            return Err(Error::validation("empty permutation"));
        }
        let mut seen = vec![false; k];
        for &x in &image {
            if x == 0 || x > k || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::validation("not a bijection"));
            }
        }
        Ok(Permutation { image })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            image: (1..=k).collect(),
        }
    }

    /// `i → i + shift`, wrapping inside `[k]`.
    pub fn cyclic_shift(k: usize, shift: usize) -> Self {
        Permutation {
            image: (0..k).map(|i| (i + shift) % k + 1).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `π(i)`, with a range check.
    pub fn apply(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.size() {
            return Err(Error::Range {
                label: i,
                max: self.size(),
            });
        }
        Ok(self.image[i - 1])
    }

    /// `π(i)` for a label already known to be in range.
    #[inline]
    pub(crate) fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    /// Applies `self` first, then `then`: `result(i) = then(self(i))`.
    pub fn compose(&self, then: &Permutation) -> Result<Permutation> {
        if self.size() != then.size() {
            return Err(Error::Shape(format!(
                "cannot compose permutations of sizes {} and {}",
                self.size(),
                then.size()
            )));
        }
        Ok(Permutation {
            image: self.image.iter().map(|&x| then.at(x)).collect(),
        })
    }

    /// The graph `{(i, π(i))}` as a relation on `[k] × [k]`.
    pub fn graph(&self) -> Relation {
        let k = self.size();
        Relation::from_pairs_unchecked(
            k,
            k,
            self.image.iter().enumerate().map(|(i, &x)| (i + 1, x)),
        )
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

/// Free-function spellings of the permutation operations.
pub fn apply_perm(p: &Permutation, i: usize) -> Result<usize> {
    p.apply(i)
}

pub fn invert_perm(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn compose_perm(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

/// A relation `R ⊆ [k1] × [k2]`.
///
/// Pairs are kept sorted; membership is answered from a dense bit table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    k1: usize,
    k2: usize,
    pairs: Vec<(usize, usize)>,
    table: Vec<bool>,
}

impl Relation {
    pub fn new(
        k1: usize,
        k2: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::validation("relation label count must be positive"));
        }
        let mut table = vec![false; k1 * k2];
        let mut list = Vec::new();
        for (a, b) in pairs {
            if a == 0 || a > k1 || b == 0 || b > k2 {
                return Err(Error::validation("relation pair out of range"));
            }
            if std::mem::replace(&mut table[(a - 1) * k2 + (b - 1)], true) {
                return Err(Error::validation("duplicate relation pair"));
            }
            list.push((a, b));
        }
        list.sort_unstable();
        Ok(Relation {
            k1,
            k2,
            pairs: list,
            table,
        })
    }

    fn from_pairs_unchecked(
        k1: usize,
        k2: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        Relation::new(k1, k2, pairs).expect("pairs known to be valid")
    }

    /// Builds the relation containing exactly the pairs where `pred` holds.
    pub fn from_predicate(
        k1: usize,
        k2: usize,
        mut pred: impl FnMut(usize, usize) -> bool,
    ) -> Self {
        let mut table = vec![false; k1 * k2];
        let mut pairs = Vec::new();
        for a in 1..=k1 {
            for b in 1..=k2 {
                if pred(a, b) {
                    table[(a - 1) * k2 + (b - 1)] = true;
                    pairs.push((a, b));
                }
            }
        }
        Relation {
            k1,
            k2,
            pairs,
            table,
        }
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Membership test; out-of-range labels are simply not members.
    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        a >= 1 && a <= self.k1 && b >= 1 && b <= self.k2 && self.table[(a - 1) * self.k2 + (b - 1)]
    }

    /// `[k1] × [k2]` minus this relation.
    pub fn complement(&self) -> Relation {
        Relation::from_predicate(self.k1, self.k2, |a, b| !self.contains(a, b))
    }

    fn row(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.k2).filter(move |&b| self.contains(a, b))
    }

    /// If every left label has exactly one partner, the induced map `[k1] → [k2]`.
    pub fn as_projection(&self) -> Option<Vec<usize>> {
        (1..=self.k1)
            .map(|a| {
                let mut row = self.row(a);
                match (row.next(), row.next()) {
                    (Some(b), None) => Some(b),
                    _ => None,
                }
            })
            .collect()
    }

    /// If this relation is the graph of a permutation, that permutation.
    pub fn as_permutation(&self) -> Option<Permutation> {
        if self.k1 != self.k2 {
            return None;
        }
        Permutation::new(self.as_projection()?).ok()
    }

    fn is_two_to_one_projection(&self) -> bool {
        if self.k1 != 2 * self.k2 {
            return false;
        }
        let Some(proj) = self.as_projection() else {
            return false;
        };
        let mut fiber = vec![0usize; self.k2];
        for b in proj {
            fiber[b - 1] += 1;
        }
        fiber.iter().all(|&c| c == 2)
    }

    /// A 2-to-2 relation is, up to relabeling rows and columns, a disjoint
    /// union of 2×2 all-pairs blocks: rows come in pairs with identical
    /// two-element row sets, and distinct row sets are disjoint.
    fn is_two_to_two(&self) -> bool {
        let k = self.k1;
        if k != self.k2 || !k.is_multiple_of(2) || k == 0 || self.len() != 2 * k {
            return false;
        }
        let rows: Vec<Vec<usize>> = (1..=k).map(|a| self.row(a).collect()).collect();
        if rows.iter().any(|r| r.len() != 2) {
            return false;
        }
        let mut col_used = vec![false; k];
        let mut row_done = vec![false; k];
        for a in 0..k {
            if row_done[a] {
                continue;
            }
            let partners: Vec<usize> = (a + 1..k)
                .filter(|&b| !row_done[b] && rows[b] == rows[a])
                .collect();
            if partners.len() != 1 {
                return false;
            }
            row_done[a] = true;
            row_done[partners[0]] = true;
            for &c in &rows[a] {
                if std::mem::replace(&mut col_used[c - 1], true) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation[{}x{}]{:?}", self.k1, self.k2, self.pairs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationKind {
    Permutation,
    TwoToOneProjection,
    TwoToTwo,
    ComplementOfPermutation,
    General,
}

impl RelationKind {
    pub fn tag(self) -> &'static str {
        match self {
            RelationKind::Permutation => "PERMUTATION",
            RelationKind::TwoToOneProjection => "TWO_TO_ONE_PROJECTION",
            RelationKind::TwoToTwo => "TWO_TO_TWO",
            RelationKind::ComplementOfPermutation => "COMPLEMENT_OF_PERMUTATION",
            RelationKind::General => "GENERAL",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Result of [`classify_relation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// The reported kind.
    pub kind: RelationKind,
    /// Every structured kind the relation belongs to. On `[2] × [2]` a
    /// permutation graph is also the complement of the other permutation,
    /// so more than one kind can hold.
    pub matches: Vec<RelationKind>,
}

/// Classifies a relation. When several kinds hold, complement-of-permutation
/// is reported ahead of permutation; see [`Classification::matches`].
pub fn classify_relation(rel: &Relation) -> Classification {
    let mut matches = Vec::new();
    if rel.k1 == rel.k2 && rel.complement().as_permutation().is_some() {
        matches.push(RelationKind::ComplementOfPermutation);
    }
    if rel.as_permutation().is_some() {
        matches.push(RelationKind::Permutation);
    }
    if rel.is_two_to_one_projection() {
        matches.push(RelationKind::TwoToOneProjection);
    }
    if rel.is_two_to_two() {
        matches.push(RelationKind::TwoToTwo);
    }
    let kind = matches.first().copied().unwrap_or(RelationKind::General);
    Classification { kind, matches }
}
