use std::sync::Arc;

use crate::error::{Error, Result};
use crate::instance::{GugpInstance, RelationalEdge, RelationalInstance};

/// Rewrites an all-negative unique game as a relational game: each edge
/// gets the complement of its permutation graph and weight `|w|`, so a
/// labeling satisfies a restated edge exactly when it violates the original.
pub fn restate_nwa(g: &GugpInstance) -> Result<RelationalInstance> {
    if !g.all_negative() {
        return Err(Error::ObjectiveMismatch(
            "restatement needs every edge weight negative".into(),
        ));
    }
    if g.k() < 2 {
        return Err(Error::Degenerate(
            "complement relations are empty at k = 1".into(),
        ));
    }
    let edges = g
        .edges()
        .iter()
        .map(|e| RelationalEdge {
            u: e.u,
            v: e.v,
            weight: e.weight.abs(),
            rel: Arc::new(e.pi.graph().complement()),
        })
        .collect();
    RelationalInstance::new(g.n(), g.k(), g.k(), None, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{relational_satisfied_weight, unsatisfied_weight};
    use crate::instance::{GugpEdge, Labeling};
    use crate::perm::Permutation;
    use crate::rational::Rational;
    use crate::rng::SeededRng;

    #[test]
    fn single_edge() {
        let g = GugpInstance::new(
            2,
            2,
            vec![GugpEdge {
                u: 0,
                v: 1,
                weight: Rational::from(-1),
                pi: Permutation::identity(2),
            }],
        )
        .unwrap();
        let r = restate_nwa(&g).unwrap();
        assert_eq!(r.edges()[0].rel.pairs(), &[(1, 2), (2, 1)]);
        assert_eq!(r.edges()[0].weight, 1);
    }

    #[test]
    fn k3_identity_complement_size() {
        let g = GugpInstance::new(
            2,
            3,
            vec![GugpEdge {
                u: 0,
                v: 1,
                weight: Rational::new(-2, 5),
                pi: Permutation::identity(3),
            }],
        )
        .unwrap();
        assert_eq!(restate_nwa(&g).unwrap().edges()[0].rel.len(), 6);
    }

    #[test]
    fn rejects_nonnegative() {
        let g = GugpInstance::new(
            2,
            2,
            vec![GugpEdge {
                u: 0,
                v: 1,
                weight: Rational::one(),
                pi: Permutation::identity(2),
            }],
        )
        .unwrap();
        assert!(matches!(restate_nwa(&g), Err(Error::ObjectiveMismatch(_))));
    }

    #[test]
    fn restated_satisfied_equals_original_unsatisfied_magnitude() {
        let mut rng = SeededRng::new(17);
        for _ in 0..50 {
            let n = rng.range(2, 6);
            let k = rng.range(2, 4);
            let edges = (0..rng.range(1, 10))
                .map(|_| {
                    let (u, v) = rng.distinct_pair(n);
                    GugpEdge {
                        u,
                        v,
                        weight: Rational::new(-(rng.range(1, 9) as i64), rng.range(1, 4) as i64),
                        pi: rng.permutation(k),
                    }
                })
                .collect();
            let g = GugpInstance::new(n, k, edges).unwrap();
            let r = restate_nwa(&g).unwrap();
            for _ in 0..5 {
                let f = Labeling::new((0..n).map(|_| rng.range(1, k)).collect());
                assert_eq!(
                    relational_satisfied_weight(&r, &f).unwrap(),
                    unsatisfied_weight(&g, &f).unwrap().abs()
                );
            }
        }
    }
}
