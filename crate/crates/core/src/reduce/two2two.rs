//! 2-to-2 games and the gadget to a unique game with ratio 1/2.

use std::sync::Arc;

use super::BundleMap;
use crate::error::{Error, Result};
use crate::instance::{GugpEdge, GugpInstance, RelationalEdge, RelationalInstance};
use crate::perm::{Permutation, Relation};
use crate::rational::Rational;

/// `m mod⁺ n`: the remainder of `m` by `n`, reported in `[1, n]`.
pub fn modplus(m: usize, n: usize) -> usize {
    assert!(m >= 1 && n >= 1, "mod+ is defined on positive integers");
    match m % n {
        0 => n,
        r => r,
    }
}

/// True iff `x` and `y` fall in the same block `{2i-1, 2i}`.
#[inline]
fn same_block(x: usize, y: usize) -> bool {
    x.div_ceil(2) == y.div_ceil(2)
}

/// The block-diagonal relation `T` on `[2k] × [2k]`.
pub fn in_block_relation(k: usize) -> Relation {
    Relation::from_predicate(2 * k, 2 * k, same_block)
}

/// `{(i, j) : (π_u(i), π_v(j)) ∈ T}`.
pub fn two2two_relation(pi_u: &Permutation, pi_v: &Permutation) -> Result<Relation> {
    let size = pi_u.size();
    if pi_v.size() != size {
        return Err(Error::Shape("pi_u and pi_v differ in size".into()));
    }
    if !size.is_multiple_of(2) {
        return Err(Error::Shape(format!(
            "2-to-2 relation needs even size, got {size}"
        )));
    }
    Ok(Relation::from_predicate(size, size, |i, j| {
        same_block(pi_u.at(i), pi_v.at(j))
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoToTwoEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
    pub pi_u: Permutation,
    pub pi_v: Permutation,
}

/// A 2-to-2 game on label set `[2k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoToTwoInstance {
    n: usize,
    k: usize,
    edges: Vec<TwoToTwoEdge>,
}

impl TwoToTwoInstance {
    pub fn new(n: usize, k: usize, edges: Vec<TwoToTwoEdge>) -> Result<Self> {
        if k == 0 {
            return Err(Error::validation("half label count must be positive"));
        }
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::validation("vertex out of range"));
            }
            if e.u == e.v {
                return Err(Error::validation("self-loop"));
            }
            if !e.weight.is_positive() {
                return Err(Error::validation("nonpositive weight"));
            }
            if e.pi_u.size() != 2 * k || e.pi_v.size() != 2 * k {
                return Err(Error::validation("permutation size differs from 2k"));
            }
        }
        Ok(TwoToTwoInstance { n, k, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Half the label count.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[TwoToTwoEdge] {
        &self.edges
    }

    /// Whether `(a, b)` on the endpoints of edge `i` satisfies it.
    pub fn satisfies(&self, i: usize, a: usize, b: usize) -> bool {
        let e = &self.edges[i];
        same_block(e.pi_u.at(a), e.pi_v.at(b))
    }

    /// The game with explicit relations; `unit_weights` replaces every
    /// weight by 1.
    pub fn to_relational(&self, unit_weights: bool) -> RelationalInstance {
        let edges = self
            .edges
            .iter()
            .map(|e| RelationalEdge {
                u: e.u,
                v: e.v,
                weight: if unit_weights {
                    Rational::one()
                } else {
                    e.weight.clone()
                },
                rel: Arc::new(two2two_relation(&e.pi_u, &e.pi_v).expect("sizes validated")),
            })
            .collect();
        RelationalInstance::new(self.n, 2 * self.k, 2 * self.k, None, edges)
            .expect("endpoints and weights validated")
    }
}

/// `(w_x, w_y) = ((2k-2)/(2k-1), -1/(2k-1))`.
pub fn pwt_half_weights(k: usize) -> (Rational, Rational) {
    let k = k as i64;
    (
        Rational::new(2 * k - 2, 2 * k - 1),
        Rational::new(-1, 2 * k - 1),
    )
}

/// The `2k` permutations replacing one 2-to-2 edge, in order `e_1 … e_2k`.
///
/// `e_{2j-1}` sends `π_u⁻¹(t)` to `π_v⁻¹(t + 2j - 2 mod⁺ 2k)` for every `t`;
/// `e_{2j}` does the same but crosses inside the target block: odd `t`
/// goes to `t + 2j - 1`, even `t` to `t + 2j - 3`.
pub fn pwt_half_bundle(pi_u: &Permutation, pi_v: &Permutation) -> Vec<Permutation> {
    let size = pi_u.size();
    let k = size / 2;
    let inv_u = pi_u.inverse();
    let inv_v = pi_v.inverse();
    let build = |target: &dyn Fn(usize) -> usize| {
        let mut image = vec![0; size];
        for t in 1..=size {
            image[inv_u.at(t) - 1] = inv_v.at(modplus(target(t), size));
        }
        Permutation::new(image).expect("block shifts are bijective")
    };
    let mut out = Vec::with_capacity(size);
    for j in 1..=k {
        out.push(build(&|t| t + 2 * j - 2));
        out.push(build(&|t| {
            if t % 2 == 1 {
                t + 2 * j - 1
            } else {
                t + 2 * j - 3
            }
        }));
    }
    out
}

/// Replaces each 2-to-2 edge by `2k` parallel permutation edges: `e_1, e_2`
/// with weight `w_x`, the rest with `w_y`. Source edge weights are not
/// carried over.
pub fn two2two_to_pwt_half(inst: &TwoToTwoInstance) -> Result<(GugpInstance, BundleMap)> {
    let k = inst.k();
    if k < 2 {
        return Err(Error::Degenerate(
            "k = 1 forces w_x = 0, and zero-weight edges are not allowed".into(),
        ));
    }
    let (w_x, w_y) = pwt_half_weights(k);
    let mut edges = Vec::with_capacity(inst.edges().len() * 2 * k);
    for e in inst.edges() {
        for (idx, pi) in pwt_half_bundle(&e.pi_u, &e.pi_v).into_iter().enumerate() {
            edges.push(GugpEdge {
                u: e.u,
                v: e.v,
                weight: if idx < 2 { w_x.clone() } else { w_y.clone() },
                pi,
            });
        }
    }
    let bundles = BundleMap::uniform(inst.edges().len(), 2 * k);
    Ok((GugpInstance::new(inst.n(), 2 * k, edges)?, bundles))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::unsatisfied_weight;
    use crate::instance::{metrics, Labeling};
    use crate::perm::{classify_relation, RelationKind};
    use crate::rng::SeededRng;

    #[test]
    fn modplus_examples() {
        assert_eq!(modplus(6, 4), 2);
        assert_eq!(modplus(8, 4), 4);
        assert_eq!(modplus(3, 4), 3);
    }

    #[test]
    fn identity_relation_is_t() {
        let id = Permutation::identity(4);
        let r = two2two_relation(&id, &id).unwrap();
        assert_eq!(
            r.pairs(),
            &[
                (1, 1),
                (1, 2),
                (2, 1),
                (2, 2),
                (3, 3),
                (3, 4),
                (4, 3),
                (4, 4)
            ]
        );
        assert_eq!(r, in_block_relation(2));
        assert_eq!(classify_relation(&r).kind, RelationKind::TwoToTwo);
        assert!(two2two_relation(&Permutation::identity(3), &Permutation::identity(3)).is_err());
    }

    #[test]
    fn random_relations_have_4k_pairs() {
        let mut rng = SeededRng::new(3);
        for k in [2, 3] {
            for _ in 0..20 {
                let r = two2two_relation(&rng.permutation(2 * k), &rng.permutation(2 * k)).unwrap();
                assert_eq!(r.len(), 4 * k);
                assert_eq!(classify_relation(&r).kind, RelationKind::TwoToTwo);
            }
        }
    }

    #[test]
    fn identity_bundle_k2() {
        let id = Permutation::identity(4);
        let images: Vec<Vec<usize>> = pwt_half_bundle(&id, &id)
            .iter()
            .map(|p| p.image().to_vec())
            .collect();
        assert_eq!(
            images,
            vec![
                vec![1, 2, 3, 4],
                vec![2, 1, 4, 3],
                vec![3, 4, 1, 2],
                vec![4, 3, 2, 1]
            ]
        );
        // oracle: every pair of [4]x[4] is covered by exactly one graph
        for a in 1..=4 {
            for b in 1..=4 {
                assert_eq!(images.iter().filter(|img| img[a - 1] == b).count(), 1);
            }
        }
    }

    fn one_edge(k: usize, pi_u: Permutation, pi_v: Permutation) -> TwoToTwoInstance {
        TwoToTwoInstance::new(
            2,
            k,
            vec![TwoToTwoEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                pi_u,
                pi_v,
            }],
        )
        .unwrap()
    }

    #[test]
    fn gadget_weights_and_metrics() {
        assert_eq!(
            pwt_half_weights(2),
            (Rational::new(2, 3), Rational::new(-1, 3))
        );
        let id = Permutation::identity(4);
        let (g, b) = two2two_to_pwt_half(&one_edge(2, id.clone(), id)).unwrap();
        assert_eq!(b.ranges().len(), 1);
        assert_eq!(b.ranges()[0], 0..4);
        let m = metrics(&g);
        assert_eq!(m.w_plus, Rational::new(4, 3));
        assert_eq!(m.w_minus, Rational::new(-2, 3));
        assert_eq!(m.sigma, Rational::new(2, 3));
        assert_eq!(m.ratio, Some(Rational::new(1, 2)));
        // (1,1) satisfies the source edge via e_1
        assert_eq!(
            unsatisfied_weight(&g, &Labeling::new(vec![1, 1])).unwrap(),
            0
        );
        assert_eq!(
            unsatisfied_weight(&g, &Labeling::new(vec![1, 3])).unwrap(),
            1
        );
    }

    #[test]
    fn gadget_weights_solve_linear_system() {
        for k in 2..=6 {
            let (wx, wy) = pwt_half_weights(k);
            assert_eq!(&wx + Rational::from(2 * k as i64 - 2) * &wy, 0);
            assert_eq!(
                Rational::from(2) * &wx + Rational::from(2 * k as i64 - 3) * &wy,
                1
            );
        }
    }

    #[test]
    fn k1_is_degenerate() {
        let id = Permutation::identity(2);
        assert!(matches!(
            two2two_to_pwt_half(&one_edge(1, id.clone(), id)),
            Err(Error::Degenerate(_))
        ));
    }
}
