//! Exact optimization by exhaustive search, and the factor-2 local search
//! for all-negative unique games.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eval::{labeling_value, Objective};
use crate::instance::{GugpInstance, Labeling, RelationalInstance};
use crate::rational::Rational;
use crate::reduce::restate_nwa;
use crate::rng::SeededRng;

/// Default bound on the number of labelings an exhaustive search may visit.
pub const DEFAULT_CAP: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub labeling: Labeling,
    pub value: Rational,
    /// Labelings enumerated (exhaustive search) or iterations (local search).
    pub visited: u64,
}

/// Size of the product label space, or a capacity error.
pub(crate) fn label_space(label_counts: &[usize], cap: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for &k in label_counts {
        total = match total.checked_mul(k as u64) {
            Some(t) if t <= cap => t,
            _ => {
                let exact = label_counts
                    .iter()
                    .fold(BigInt::one(), |acc, &k| acc * BigInt::from(k));
                return Err(Error::capacity("label space", exact, cap));
            }
        };
    }
    Ok(total)
}

/// Rescales weights to integers over their common denominator when the
/// result fits comfortably in `i128`.
fn integer_weights(weights: &[&Rational]) -> Option<Vec<i128>> {
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let mut bound: i128 = 0;
    weights
        .iter()
        .map(|w| {
            let scaled = (w.numer() * (&lcm / w.denom())).to_i128()?;
            bound = bound.checked_add(scaled.checked_abs()?)?;
            Some(scaled)
        })
        .collect()
}

/// Enumerates the product label space in lexicographic order and returns
/// the lexicographically smallest labeling of maximum score.
///
/// The space is cut into blocks by a fixed-length prefix; blocks are scored
/// in parallel and merged by (score, then smaller labeling), which does not
/// depend on how the work was scheduled.
fn argmax_labeling<S, F>(label_counts: &[usize], score: F) -> Vec<usize>
where
    S: Ord + Send,
    F: Fn(&[usize]) -> S + Sync,
{
    let n = label_counts.len();
    let mut prefix_len = 0;
    let mut blocks: usize = 1;
    while prefix_len < n && blocks < 256 {
        blocks *= label_counts[prefix_len];
        prefix_len += 1;
    }

    let best_in_block = |block: usize| -> (S, Vec<usize>) {
        let mut f = vec![1usize; n];
        let mut rest = block;
        for v in (0..prefix_len).rev() {
            f[v] = rest % label_counts[v] + 1;
            rest /= label_counts[v];
        }
        let mut best_score = score(&f);
        let mut best = f.clone();
        loop {
            // odometer over the suffix, last vertex fastest
            let mut v = n;
            loop {
                if v == prefix_len {
                    return (best_score, best);
                }
                v -= 1;
                if f[v] < label_counts[v] {
                    f[v] += 1;
                    break;
                }
                f[v] = 1;
            }
            let s = score(&f);
            if s > best_score {
                best_score = s;
                best.copy_from_slice(&f);
            }
        }
    };

    (0..blocks)
        .into_par_iter()
        .map(best_in_block)
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        })
        .map(|(_, f)| f)
        .unwrap_or_default()
}

/// Best labeling by satisfied weight, over any edge list.
fn max_satisfied<P>(label_counts: &[usize], weights: Vec<&Rational>, sat: P) -> Vec<usize>
where
    P: Fn(usize, &[usize]) -> bool + Sync,
{
    match integer_weights(&weights) {
        Some(ints) => argmax_labeling(label_counts, |f| {
            ints.iter()
                .enumerate()
                .filter(|(i, _)| sat(*i, f))
                .map(|(_, w)| *w)
                .sum::<i128>()
        }),
        None => argmax_labeling(label_counts, |f| {
            weights
                .iter()
                .enumerate()
                .filter(|(i, _)| sat(*i, f))
                .map(|(_, w)| *w)
                .sum::<Rational>()
        }),
    }
}

/// Exhaustive optimum of `g` under `obj`.
///
/// All six objectives are monotone increasing in satisfied weight once the
/// sign precondition holds, so the search maximizes satisfied weight and
/// normalizes the winner afterwards.
pub fn brute_force(g: &GugpInstance, obj: Objective, cap: u64) -> Result<SolveResult> {
    let counts = vec![g.k(); g.n()];
    let visited = label_space(&counts, cap)?;
    obj.check(g)?;
    let edges = g.edges();
    let weights = edges.iter().map(|e| &e.weight).collect();
    let best = max_satisfied(&counts, weights, |i, f| {
        let e = &edges[i];
        e.pi.at(f[e.u]) == f[e.v]
    });
    let labeling = Labeling::new(best);
    let value = labeling_value(g, &labeling, obj)?;
    Ok(SolveResult {
        labeling,
        value,
        visited,
    })
}

/// Exhaustive value of a relational game: maximum satisfied weight over
/// total weight.
pub fn brute_force_relational(inst: &RelationalInstance, cap: u64) -> Result<SolveResult> {
    let counts: Vec<usize> = (0..inst.n()).map(|v| inst.label_count(v)).collect();
    let visited = label_space(&counts, cap)?;
    let total = inst.total_weight();
    if total.is_zero() {
        return Err(Error::Degenerate("relational instance has no edges".into()));
    }
    let edges = inst.edges();
    let weights = edges.iter().map(|e| &e.weight).collect();
    let best = max_satisfied(&counts, weights, |i, f| {
        let e = &edges[i];
        e.rel.contains(f[e.u], f[e.v])
    });
    let labeling = Labeling::new(best);
    let value = crate::eval::relational_satisfied_weight(inst, &labeling)? / total;
    Ok(SolveResult {
        labeling,
        value,
        visited,
    })
}

#[derive(Debug, Clone, Default)]
pub struct LocalSearchOptions {
    /// `None` starts from the all-1 labeling; `Some(s)` draws a uniform
    /// start from seed `s`.
    pub seed: Option<u64>,
    /// Defaults to `k^n` (saturating).
    pub iteration_cap: Option<u64>,
}

/// Local search for Max GUGP-NWA on its complement-relation restatement.
///
/// Repeatedly takes the smallest vertex whose incident satisfied restated
/// weight is below half its incident weight and moves it to the label
/// (other than its current one) that satisfies the most incident weight,
/// smallest label on ties. Stops when no such vertex remains; the returned
/// MAX_NWA value is then at least 1/2. `visited` counts iterations.
pub fn local_search_half(g: &GugpInstance, opts: &LocalSearchOptions) -> Result<SolveResult> {
    if g.k() < 2 {
        return Err(Error::Degenerate(
            "local search needs k >= 2: the complement relation is empty at k = 1".into(),
        ));
    }
    let restated = restate_nwa(g)?;
    let n = g.n();
    let k = g.k();
    let cap = opts
        .iteration_cap
        .unwrap_or_else(|| (k as u64).checked_pow(n as u32).unwrap_or(u64::MAX));

    let mut f = match opts.seed {
        None => Labeling::constant(n, 1),
        Some(seed) => {
            let mut rng = SeededRng::new(seed);
            Labeling::new((0..n).map(|_| rng.range(1, k)).collect())
        }
    };

    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, e) in restated.edges().iter().enumerate() {
        incident[e.u].push(i);
        incident[e.v].push(i);
    }
    let local_total: Vec<Rational> = incident
        .iter()
        .map(|ids| ids.iter().map(|&i| &restated.edges()[i].weight).sum())
        .collect();
    let local_sat = |f: &Labeling, v: usize| -> Rational {
        incident[v]
            .iter()
            .map(|&i| &restated.edges()[i])
            .filter(|e| e.rel.contains(f.get(e.u), f.get(e.v)))
            .map(|e| &e.weight)
            .sum()
    };
    let two = Rational::from(2);

    let mut iterations: u64 = 0;
    while let Some(v) = (0..n).find(|&v| &two * local_sat(&f, v) < local_total[v]) {
        iterations += 1;
        if iterations > cap {
            return Err(Error::Internal(format!(
                "local search exceeded its iteration cap of {cap}"
            )));
        }
        let current = f.get(v);
        let before = local_sat(&f, v);
        let mut best: Option<(Rational, usize)> = None;
        for label in (1..=k).filter(|&c| c != current) {
            f.set(v, label);
            let s = local_sat(&f, v);
            if best.as_ref().is_none_or(|(b, _)| s > *b) {
                best = Some((s, label));
            }
        }
        let (after, label) = best.expect("k >= 2 leaves at least one other label");
        f.set(v, label);
        // only edges at v changed, so this is the change in global satisfied weight
        if after <= before {
            return Err(Error::Internal(format!(
                "satisfied weight did not increase when relabeling vertex {v}"
            )));
        }
    }

    let value = labeling_value(g, &f, Objective::MaxNwa)?;
    Ok(SolveResult {
        labeling: f,
        value,
        visited: iterations,
    })
}
