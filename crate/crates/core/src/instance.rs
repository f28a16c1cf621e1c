//! Game instances, labelings and weight metrics.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{Permutation, Relation};
use crate::rational::Rational;

/// One oriented unique-game constraint: satisfied iff `pi(f(u)) == f(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GugpEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
    pub pi: Permutation,
}

/// A unique game whose edge weights may be negative. Parallel edges are
/// allowed; zero weights and self-loops are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GugpInstance {
    n: usize,
    k: usize,
    edges: Vec<GugpEdge>,
}

impl GugpInstance {
    pub fn new(n: usize, k: usize, edges: Vec<GugpEdge>) -> Result<Self> {
        if k == 0 {
            return Err(Error::validation("label count must be positive"));
        }
        for e in &edges {
            check_endpoints(n, e.u, e.v)?;
            if e.weight.is_zero() {
                return Err(Error::validation("zero-weight edge"));
            }
            if e.pi.size() != k {
                return Err(Error::validation("permutation size differs from k"));
            }
        }
        Ok(GugpInstance { n, k, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[GugpEdge] {
        &self.edges
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| &e.weight).sum()
    }

    pub fn all_negative(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_negative())
    }

    pub fn all_positive(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_positive())
    }

    /// The edge-disjoint union on the same vertex and label sets.
    pub fn union(&self, other: &GugpInstance) -> Result<GugpInstance> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::Shape("union needs equal n and k".into()));
        }
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().cloned());
        Ok(GugpInstance {
            n: self.n,
            k: self.k,
            edges,
        })
    }

    /// The unique game viewed as a relational game over permutation graphs.
    /// Relational games carry positive weights only.
    pub fn to_relational(&self) -> Result<RelationalInstance> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                if !e.weight.is_positive() {
                    return Err(Error::ObjectiveMismatch(
                        "relational encoding needs positive weights".into(),
                    ));
                }
                Ok(RelationalEdge {
                    u: e.u,
                    v: e.v,
                    weight: e.weight.clone(),
                    rel: Arc::new(e.pi.graph()),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        RelationalInstance::new(self.n, self.k, self.k, None, edges)
    }
}

fn check_endpoints(n: usize, u: usize, v: usize) -> Result<()> {
    if u >= n || v >= n {
        return Err(Error::validation("vertex out of range"));
    }
    if u == v {
        return Err(Error::validation("self-loop"));
    }
    Ok(())
}

/// Side of a vertex in a bipartite relational game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    V,
    W,
}

/// Relational constraint: satisfied iff `(f(u), f(v)) ∈ rel`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
    pub rel: Arc<Relation>,
}

/// A two-prover one-round style game: every edge carries an arbitrary
/// relation. Bipartite instances label side `V` from `[k1]` and side `W`
/// from `[k2]`; non-bipartite ones need `k1 == k2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationalInstance {
    n: usize,
    k1: usize,
    k2: usize,
    sides: Option<Vec<Side>>,
    edges: Vec<RelationalEdge>,
}

impl RelationalInstance {
    pub fn new(
        n: usize,
        k1: usize,
        k2: usize,
        sides: Option<Vec<Side>>,
        edges: Vec<RelationalEdge>,
    ) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(Error::validation("label count must be positive"));
        }
        match &sides {
            Some(s) if s.len() != n => {
                return Err(Error::validation("side assignment must cover every vertex"))
            }
            None if k1 != k2 => {
                return Err(Error::validation("non-bipartite instance needs k1 = k2"))
            }
            _ => {}
        }
        for e in &edges {
            check_endpoints(n, e.u, e.v)?;
            if !e.weight.is_positive() {
                return Err(Error::validation("nonpositive weight"));
            }
            if e.rel.k1() != k1 || e.rel.k2() != k2 {
                return Err(Error::validation("relation shape differs from k1 x k2"));
            }
            if let Some(s) = &sides {
                if s[e.u] != Side::V || s[e.v] != Side::W {
                    return Err(Error::validation(
                        "bipartite edge must run from side V to side W",
                    ));
                }
            }
        }
        Ok(RelationalInstance {
            n,
            k1,
            k2,
            sides,
            edges,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.k2
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    pub fn is_bipartite(&self) -> bool {
        self.sides.is_some()
    }

    pub fn edges(&self) -> &[RelationalEdge] {
        &self.edges
    }

    /// Number of admissible labels for vertex `v`.
    pub fn label_count(&self, v: usize) -> usize {
        match &self.sides {
            Some(s) if s[v] == Side::W => self.k2,
            _ => self.k1,
        }
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().map(|e| &e.weight).sum()
    }
}

/// Vertex → label assignment, labels 1-indexed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Labeling(Vec<usize>);

impl Labeling {
    pub fn new(values: Vec<usize>) -> Self {
        Labeling(values)
    }

    /// All vertices labeled 1.
    pub fn constant(n: usize, label: usize) -> Self {
        Labeling(vec![label; n])
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn set(&mut self, v: usize, label: usize) {
        self.0[v] = label;
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Checks length `n` and every label in `[1, k]`.
    pub fn check(&self, n: usize, k: usize) -> Result<()> {
        self.check_with(n, |_| k)
    }

    pub(crate) fn check_with(&self, n: usize, k_of: impl Fn(usize) -> usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::Shape(format!(
                "labeling has {} entries, instance has {} vertices",
                self.0.len(),
                n
            )));
        }
        for (v, &label) in self.0.iter().enumerate() {
            let max = k_of(v);
            if label == 0 || label > max {
                return Err(Error::Shape(format!(
                    "label out of range: vertex {v} has label {label}, allowed [1, {max}]"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Labeling{:?}", self.0)
    }
}

impl From<Vec<usize>> for Labeling {
    fn from(v: Vec<usize>) -> Self {
        Labeling(v)
    }
}

/// Positive/negative weight totals of a unique game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceMetrics {
    pub w_plus: Rational,
    pub w_minus: Rational,
    pub sigma: Rational,
    /// `|w_minus| / w_plus`; `None` when there is no positive weight.
    pub ratio: Option<Rational>,
}

pub fn metrics(g: &GugpInstance) -> InstanceMetrics {
    let mut w_plus = Rational::zero();
    let mut w_minus = Rational::zero();
    for e in g.edges() {
        if e.weight.is_positive() {
            w_plus += &e.weight;
        } else {
            w_minus += &e.weight;
        }
    }
    let sigma = &w_plus + &w_minus;
    let ratio = w_minus.abs().checked_div(&w_plus);
    InstanceMetrics {
        w_plus,
        w_minus,
        sigma,
        ratio,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(u: usize, v: usize, w: Rational, pi: Permutation) -> GugpEdge {
        GugpEdge {
            u,
            v,
            weight: w,
            pi,
        }
    }

    #[test]
    fn rejects_zero_weight_and_self_loop() {
        let id = Permutation::identity(2);
        let zero = GugpInstance::new(2, 2, vec![edge(0, 1, Rational::zero(), id.clone())]);
        assert_eq!(zero.unwrap_err(), Error::validation("zero-weight edge"));
        let lp = GugpInstance::new(2, 2, vec![edge(1, 1, Rational::one(), id.clone())]);
        assert_eq!(lp.unwrap_err(), Error::validation("self-loop"));
        let oob = GugpInstance::new(2, 2, vec![edge(0, 2, Rational::one(), id)]);
        assert!(oob.is_err());
        let wrong_k = GugpInstance::new(
            2,
            3,
            vec![edge(0, 1, Rational::one(), Permutation::identity(2))],
        );
        assert!(wrong_k.is_err());
    }

    #[test]
    fn metrics_examples() {
        let id = Permutation::identity(2);
        let g = GugpInstance::new(
            2,
            2,
            vec![
                edge(0, 1, Rational::from(3), id.clone()),
                edge(0, 1, Rational::from(-1), id.clone()),
            ],
        )
        .unwrap();
        let m = metrics(&g);
        assert_eq!(m.w_plus, 3);
        assert_eq!(m.w_minus, -1);
        assert_eq!(m.sigma, 2);
        assert_eq!(m.ratio, Some(Rational::new(1, 3)));

        let pos = GugpInstance::new(2, 2, vec![edge(0, 1, Rational::one(), id.clone())]).unwrap();
        assert_eq!(metrics(&pos).ratio, Some(Rational::zero()));

        let neg = GugpInstance::new(2, 2, vec![edge(0, 1, Rational::from(-1), id)]).unwrap();
        assert_eq!(metrics(&neg).ratio, None);
    }

    #[test]
    fn metrics_additive_over_union() {
        let id = Permutation::identity(3);
        let a = GugpInstance::new(3, 3, vec![edge(0, 1, Rational::new(5, 2), id.clone())]).unwrap();
        let b = GugpInstance::new(
            3,
            3,
            vec![
                edge(1, 2, Rational::new(-1, 3), id.clone()),
                edge(2, 0, Rational::new(2, 7), id),
            ],
        )
        .unwrap();
        let (ma, mb, mu) = (metrics(&a), metrics(&b), metrics(&a.union(&b).unwrap()));
        assert_eq!(mu.w_plus, &ma.w_plus + &mb.w_plus);
        assert_eq!(mu.w_minus, &ma.w_minus + &mb.w_minus);
        assert_eq!(mu.sigma, &ma.sigma + &mb.sigma);
    }

    #[test]
    fn bipartite_orientation_enforced() {
        let rel = Arc::new(Relation::from_predicate(2, 2, |a, b| a == b));
        let e = RelationalEdge {
            u: 1,
            v: 0,
            weight: Rational::one(),
            rel,
        };
        let r = RelationalInstance::new(2, 2, 2, Some(vec![Side::V, Side::W]), vec![e]);
        assert!(r.is_err());
    }

    #[test]
    fn labeling_check() {
        let f = Labeling::new(vec![1, 3]);
        assert!(f.check(2, 3).is_ok());
        assert!(f.check(2, 2).is_err());
        assert!(f.check(3, 3).is_err());
        assert!(Labeling::new(vec![0]).check(1, 3).is_err());
    }
}
