use itertools::Itertools;

use super::BundleMap;
use crate::error::{Error, Result};
use crate::instance::{GugpEdge, GugpInstance, Labeling};
use crate::perm::Permutation;
use crate::rational::Rational;

/// A complete graph with a positive weight on every unordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspInstance {
    n: usize,
    /// Row-major upper triangle: (0,1), (0,2), …, (0,n-1), (1,2), …
    weights: Vec<Rational>,
}

impl TspInstance {
    /// Builds from `(u, v, w)` triples; every pair must appear exactly once.
    pub fn new(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::validation("tsp needs at least 3 vertices"));
        }
        let mut slots: Vec<Option<Rational>> = vec![None; n * (n - 1) / 2];
        for (u, v, w) in entries {
            let (a, b) = (u.min(v), u.max(v));
            if b >= n {
                return Err(Error::validation("vertex out of range"));
            }
            if a == b {
                return Err(Error::validation("self-loop"));
            }
            if !w.is_positive() {
                return Err(Error::validation("nonpositive weight"));
            }
            let slot = &mut slots[pair_index(n, a, b)];
            if slot.is_some() {
                return Err(Error::validation("duplicate pair"));
            }
            *slot = Some(w);
        }
        let weights = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::validation("missing pair"))?;
        Ok(TspInstance { n, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> &Rational {
        &self.weights[pair_index(self.n, u.min(v), u.max(v))]
    }

    /// Pairs `(u, v, w)` with `u < v` in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        (0..self.n)
            .tuple_combinations()
            .map(move |(u, v)| (u, v, self.weight(u, v)))
    }

    pub fn max_weight(&self) -> &Rational {
        self.weights
            .iter()
            .max()
            .expect("n >= 3 gives at least one pair")
    }

    /// Total weight of the closed cycle visiting `tour` in order.
    pub fn tour_weight(&self, tour: &[usize]) -> Result<Rational> {
        check_tour(self.n, tour)?;
        Ok(tour
            .iter()
            .zip(tour.iter().cycle().skip(1))
            .map(|(&a, &b)| self.weight(a, b))
            .sum())
    }

    /// Exhaustive optimum: vertex 0 is fixed first and the remaining
    /// `(n-1)!` orders are scanned lexicographically; the first minimum wins.
    pub fn optimal_tour(&self) -> (Vec<usize>, Rational) {
        let mut best: Option<(Vec<usize>, Rational)> = None;
        for rest in (1..self.n).permutations(self.n - 1) {
            let mut tour = Vec::with_capacity(self.n);
            tour.push(0);
            tour.extend(rest);
            let w = self
                .tour_weight(&tour)
                .expect("generated tours are Hamiltonian");
            if best.as_ref().is_none_or(|(_, b)| w < *b) {
                best = Some((tour, w));
            }
        }
        best.expect("n >= 3 has at least one tour")
    }
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

fn check_tour(n: usize, tour: &[usize]) -> Result<()> {
    let mut seen = vec![false; n];
    if tour.len() != n {
        return Err(Error::Structure(format!(
            "tour visits {} vertices, need {n}",
            tour.len()
        )));
    }
    for &v in tour {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(Error::Structure("tour is not Hamiltonian".into()));
        }
    }
    Ok(())
}

/// TSP as a Min GUGP-NWA instance with `n` labels. Each pair `u < v`
/// becomes three oriented parallel edges `u → v`, in this order: identity
/// with weight `-M`, `i → i+1` and `i → i-1` (cyclic on `[n]`) each with
/// weight `-w(u,v)`, where `M = n · max w`.
pub fn tsp_to_min_nwa(t: &TspInstance) -> Result<(GugpInstance, BundleMap)> {
    let n = t.n();
    let big_m = Rational::from(n as i64) * t.max_weight();
    let identity = Permutation::identity(n);
    let up = Permutation::cyclic_shift(n, 1);
    let down = Permutation::cyclic_shift(n, n - 1);
    let mut edges = Vec::with_capacity(3 * n * (n - 1) / 2);
    for (u, v, w) in t.pairs() {
        edges.push(GugpEdge {
            u,
            v,
            weight: -&big_m,
            pi: identity.clone(),
        });
        edges.push(GugpEdge {
            u,
            v,
            weight: -w,
            pi: up.clone(),
        });
        edges.push(GugpEdge {
            u,
            v,
            weight: -w,
            pi: down.clone(),
        });
    }
    let bundles = BundleMap::uniform(edges.len() / 3, 3);
    Ok((GugpInstance::new(n, n, edges)?, bundles))
}

/// Labels the tour's vertices `1, …, n` in visiting order.
pub fn tour_to_labeling(t: &TspInstance, tour: &[usize]) -> Result<Labeling> {
    check_tour(t.n(), tour)?;
    let mut f = vec![0; t.n()];
    for (i, &v) in tour.iter().enumerate() {
        f[v] = i + 1;
    }
    Ok(Labeling::new(f))
}

/// Reads a tour off a bijective labeling: the vertex labeled `i` is visited `i`-th.
pub fn labeling_to_tour(t: &TspInstance, f: &Labeling) -> Result<Vec<usize>> {
    let n = t.n();
    if f.len() != n {
        return Err(Error::Structure(
            "labeling length differs from vertex count".into(),
        ));
    }
    let mut tour = vec![usize::MAX; n];
    for (v, &label) in f.values().iter().enumerate() {
        if label == 0 || label > n || tour[label - 1] != usize::MAX {
            return Err(Error::Structure(
                "labeling is not a bijection onto [n]".into(),
            ));
        }
        tour[label - 1] = v;
    }
    Ok(tour)
}
