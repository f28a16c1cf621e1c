//! Max 3-Cut and its l-fold parallel repetition.
//!
//! Tuple vertices and tuple labels use mixed-radix codes with the first
//! coordinate most significant: the vertex `(v_1, …, v_l)` over a base
//! graph on `n` vertices is `Σ v_j · n^(l-j)`, and the color tuple
//! `(c_1, …, c_l) ∈ [3]^l` is label `1 + Σ (c_j - 1) · 3^(l-j)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use itertools::Itertools;

use super::capped_pow;
use crate::error::{Error, Result};
use crate::instance::{Labeling, RelationalEdge, RelationalInstance};
use crate::perm::Relation;
use crate::rational::Rational;

/// An undirected graph without loops or repeated edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::validation("vertex out of range"));
            }
            if u == v {
                return Err(Error::validation("self-loop"));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::validation("repeated edge in simple graph"));
            }
            list.push(key);
        }
        Ok(SimpleGraph { n, edges: list })
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph {
            n,
            edges: (0..n).tuple_combinations().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The underlying graph of a Max 3-Cut relational instance.
    pub fn from_max3cut(inst: &RelationalInstance) -> Result<Self> {
        if inst.k1() != 3 || inst.k2() != 3 || inst.is_bipartite() {
            return Err(Error::validation(
                "max 3-cut instance needs k1 = k2 = 3 and no sides",
            ));
        }
        let unequal = Relation::from_predicate(3, 3, |a, b| a != b);
        if inst.edges().iter().any(|e| *e.rel != unequal) {
            return Err(Error::validation(
                "max 3-cut edges must carry the unequal-colors relation",
            ));
        }
        SimpleGraph::new(inst.n(), inst.edges().iter().map(|e| (e.u, e.v)))
    }
}

/// Max 3-Cut as a relational game: unit weights, unequal-colors relation.
pub fn max3cut_instance(g: &SimpleGraph) -> RelationalInstance {
    repeat_max3cut(g, 1, &RepeatCaps::default())
        .expect("one fold is always within the default caps")
        .into_instance()
}

/// Size limits for parallel repetition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepeatCaps {
    /// Bound on `3^l`.
    pub max_labels: u64,
    /// Bound on `n^l`.
    pub max_vertices: u64,
}

impl Default for RepeatCaps {
    fn default() -> Self {
        RepeatCaps {
            max_labels: 729,
            max_vertices: 20_000,
        }
    }
}

/// The l-fold parallel repetition of a Max 3-Cut instance, materialized as
/// a relational game on `n^l` tuple vertices with `3^l` tuple labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatedInstance {
    base_n: usize,
    fold: usize,
    instance: RelationalInstance,
}

impl RepeatedInstance {
    pub fn base_n(&self) -> usize {
        self.base_n
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn label_count(&self) -> usize {
        self.instance.k1()
    }

    pub fn instance(&self) -> &RelationalInstance {
        &self.instance
    }

    pub fn into_instance(self) -> RelationalInstance {
        self.instance
    }

    pub fn edge_count(&self) -> usize {
        self.instance.edges().len()
    }

    /// Coordinates of a tuple vertex.
    pub fn decode_vertex(&self, code: usize) -> Vec<usize> {
        decode_digits(code, self.base_n, self.fold)
    }

    /// Recovers the repetition structure from a relational instance: `k1`
    /// must be `3^l`, `n` must be `base^l`, and every edge must carry the
    /// all-coordinates-differ relation.
    pub fn from_relational(inst: RelationalInstance) -> Result<Self> {
        let k = inst.k1();
        let mut fold = 0;
        let mut p = 1;
        while p < k {
            p *= 3;
            fold += 1;
        }
        if p != k || fold == 0 || inst.k2() != k || inst.is_bipartite() {
            return Err(Error::validation(
                "repeated instance needs k1 = k2 = 3^l and no sides",
            ));
        }
        let base_n = integer_root(inst.n(), fold)
            .ok_or_else(|| Error::validation("repeated instance vertex count is not n^l"))?;
        let expected = all_differ_relation(fold);
        if inst.edges().iter().any(|e| *e.rel != expected) {
            return Err(Error::validation(
                "repeated edges must carry the all-coordinates-differ relation",
            ));
        }
        Ok(RepeatedInstance {
            base_n,
            fold,
            instance: inst,
        })
    }
}

fn integer_root(x: usize, l: usize) -> Option<usize> {
    (0..=x).find(|&b| capped_pow(b, l, x as u64) == Some(x as u64))
}

pub(crate) fn decode_digits(mut code: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut digits = vec![0; len];
    for d in digits.iter_mut().rev() {
        *d = code % radix;
        code /= radix;
    }
    digits
}

fn encode_digits(digits: impl IntoIterator<Item = usize>, radix: usize) -> usize {
    digits.into_iter().fold(0, |acc, d| acc * radix + d)
}

/// Label of a color tuple (colors in `[3]`).
pub fn encode_label(colors: &[usize]) -> usize {
    1 + encode_digits(colors.iter().map(|c| c - 1), 3)
}

/// Color tuple of a label in `[3^l]`.
pub fn decode_label(label: usize, l: usize) -> Vec<usize> {
    decode_digits(label - 1, 3, l)
        .into_iter()
        .map(|d| d + 1)
        .collect()
}

/// Labels whose color tuples differ in every coordinate.
pub(crate) fn all_differ_relation(l: usize) -> Relation {
    let k = 3usize.pow(l as u32);
    let codes: Vec<Vec<usize>> = (1..=k).map(|a| decode_label(a, l)).collect();
    Relation::from_predicate(k, k, |a, b| {
        codes[a - 1].iter().zip(&codes[b - 1]).all(|(x, y)| x != y)
    })
}

/// Builds `G^l`: one tuple edge for every coordinate-wise choice of base
/// edges, with the smaller code first and duplicates removed. Edges come
/// out sorted by `(u, v)`.
pub fn repeat_max3cut(g: &SimpleGraph, l: usize, caps: &RepeatCaps) -> Result<RepeatedInstance> {
    if l == 0 {
        return Err(Error::Usage("fold l must be at least 1".into()));
    }
    let k = capped_pow(3, l, caps.max_labels)
        .ok_or_else(|| Error::capacity("labels 3^l", format!("3^{l}"), caps.max_labels))?;
    let n = capped_pow(g.n(), l, caps.max_vertices).ok_or_else(|| {
        Error::capacity("vertices n^l", format!("{}^{l}", g.n()), caps.max_vertices)
    })?;

    let oriented: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .flat_map(|&(u, v)| [(u, v), (v, u)])
        .collect();
    let mut pairs = BTreeSet::new();
    for choice in (0..l).map(|_| oriented.iter()).multi_cartesian_product() {
        let a = encode_digits(choice.iter().map(|e| e.0), g.n());
        let b = encode_digits(choice.iter().map(|e| e.1), g.n());
        pairs.insert((a.min(b), a.max(b)));
    }

    let rel = Arc::new(all_differ_relation(l));
    let edges = pairs
        .into_iter()
        .map(|(u, v)| RelationalEdge {
            u,
            v,
            weight: Rational::one(),
            rel: rel.clone(),
        })
        .collect();
    let instance = RelationalInstance::new(n as usize, k as usize, k as usize, None, edges)?;
    Ok(RepeatedInstance {
        base_n: g.n(),
        fold: l,
        instance,
    })
}

/// Colors each tuple vertex with the tuple of its coordinates' colors.
pub fn product_coloring(chi: &Labeling, l: usize) -> Result<Labeling> {
    let n = chi.len();
    chi.check(n, 3)?;
    let total = capped_pow(n, l, u32::MAX as u64)
        .ok_or_else(|| Error::capacity("vertices n^l", format!("{n}^{l}"), u32::MAX as u64))?;
    let labels = (0..total as usize)
        .map(|code| {
            let colors: Vec<usize> = decode_digits(code, n, l)
                .into_iter()
                .map(|v| chi.get(v))
                .collect();
            encode_label(&colors)
        })
        .collect();
    Ok(Labeling::new(labels))
}
