use crate::error::{Error, Result};
use crate::instance::GugpInstance;

/// Keeps only the positive-weight edges, in their original order.
pub fn strip_negative(g: &GugpInstance) -> Result<GugpInstance> {
    let kept: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| e.weight.is_positive())
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(Error::Degenerate("no positive-weight edge to keep".into()));
    }
    GugpInstance::new(g.n(), g.k(), kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::GugpEdge;
    use crate::perm::Permutation;
    use crate::rational::Rational;

    fn inst(weights: &[Rational]) -> GugpInstance {
        let edges = weights
            .iter()
            .map(|w| GugpEdge {
                u: 0,
                v: 1,
                weight: w.clone(),
                pi: Permutation::identity(2),
            })
            .collect();
        GugpInstance::new(2, 2, edges).unwrap()
    }

    #[test]
    fn drops_negative_edges() {
        let g = inst(&[Rational::one(), Rational::new(-1, 3)]);
        let s = strip_negative(&g).unwrap();
        assert_eq!(s.edges(), &g.edges()[..1]);
    }

    #[test]
    fn fixed_point_on_positive() {
        let g = inst(&[Rational::one(), Rational::new(2, 3)]);
        assert_eq!(strip_negative(&g).unwrap(), g);
    }

    #[test]
    fn all_negative_is_degenerate() {
        let g = inst(&[Rational::from(-1)]);
        assert!(matches!(strip_negative(&g), Err(Error::Degenerate(_))));
    }
}
