//! Seeded instance generators. Identical specs give identical instances
//! (and so identical serialized bytes); see [`crate::rng`] for the PRNG.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::format::Document;
use crate::instance::{metrics, GugpEdge, GugpInstance, Labeling};
use crate::perm::Permutation;
use crate::rational::Rational;
use crate::reduce::{max3cut_instance, SimpleGraph, TspInstance, TwoToTwoEdge, TwoToTwoInstance};
use crate::rng::SeededRng;

/// Largest numerator and denominator of random game weights.
const WEIGHT_NUM_MAX: usize = 4;
const WEIGHT_DEN_MAX: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    RandomGugp,
    RandomTsp,
    Planted3Col,
    RandomT22,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-gugp" => Ok(Family::RandomGugp),
            "random-tsp" => Ok(Family::RandomTsp),
            "planted-3col" => Ok(Family::Planted3Col),
            "random-t22" => Ok(Family::RandomT22),
            other => Err(Error::Usage(format!("unknown generator family {other:?}"))),
        }
    }
}

/// Generator parameters. Fields a family does not use are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    /// Label count (`random-gugp`) or half label count (`random-t22`).
    pub k: usize,
    pub edges: usize,
    pub seed: u64,
    /// `random-gugp`: make every weight negative.
    pub nwa: bool,
    /// `random-gugp`: bound on |W-|/W+; also forces a positive total.
    pub max_ratio: Option<Rational>,
    /// `random-t22`: plant a labeling satisfying every edge.
    pub satisfiable: bool,
    /// `random-tsp`: weights are drawn from `1..=max_weight`.
    pub max_weight: usize,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            k: 2,
            edges: 0,
            seed,
            nwa: false,
            max_ratio: None,
            satisfiable: false,
            max_weight: 10,
        }
    }
}

/// A generated instance, plus the planted labeling for families that
/// plant one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub document: Document,
    pub planted: Option<Labeling>,
}

pub fn generate(spec: &GenSpec) -> Result<Generated> {
    let mut rng = SeededRng::new(spec.seed);
    match spec.family {
        Family::RandomGugp => random_gugp(spec, &mut rng).map(|g| Generated {
            document: Document::Gugp(g),
            planted: None,
        }),
        Family::RandomTsp => random_tsp(spec, &mut rng).map(|t| Generated {
            document: Document::Tsp(t),
            planted: None,
        }),
        Family::Planted3Col => {
            let (g, chi) = planted_3col(spec, &mut rng)?;
            Ok(Generated {
                document: Document::Rel(max3cut_instance(&g)),
                planted: Some(chi),
            })
        }
        Family::RandomT22 => {
            let (t, f) = random_t22(spec, &mut rng)?;
            Ok(Generated {
                document: Document::T22(t),
                planted: f,
            })
        }
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Usage(msg.to_string()))
    }
}

fn random_magnitude(rng: &mut SeededRng) -> Rational {
    let num = rng.range(1, WEIGHT_NUM_MAX) as i64;
    let den = rng.range(1, WEIGHT_DEN_MAX) as i64;
    Rational::new(num, den)
}

/// Random unique game. With `max_ratio`, negative edges are flipped to
/// positive from the last one backwards until the ratio bound holds and
/// the total is positive.
pub fn random_gugp(spec: &GenSpec, rng: &mut SeededRng) -> Result<GugpInstance> {
    need(spec.n >= 2, "random-gugp needs n >= 2")?;
    need(spec.k >= 1, "random-gugp needs k >= 1")?;
    if let Some(bound) = &spec.max_ratio {
        need(
            !spec.nwa,
            "an all-negative family has no finite ratio bound",
        )?;
        need(!bound.is_negative(), "ratio bound must be nonnegative")?;
        need(spec.edges >= 1, "a ratio bound needs at least one edge")?;
    }
    let mut edges: Vec<GugpEdge> = (0..spec.edges)
        .map(|_| {
            let (u, v) = rng.distinct_pair(spec.n);
            let pi = rng.permutation(spec.k);
            let magnitude = random_magnitude(rng);
            let negative = spec.nwa || rng.below(2) == 1;
            GugpEdge {
                u,
                v,
                weight: if negative { -magnitude } else { magnitude },
                pi,
            }
        })
        .collect();
    if let Some(bound) = &spec.max_ratio {
        let mut cursor = edges.len();
        loop {
            let g = GugpInstance::new(spec.n, spec.k, edges.clone())?;
            let m = metrics(&g);
            let ok = m.sigma.is_positive() && m.ratio.as_ref().is_some_and(|r| r <= bound);
            if ok {
                break;
            }
            let Some(i) = (0..cursor).rev().find(|&i| edges[i].weight.is_negative()) else {
                unreachable!("with no negative edges the ratio is 0 and the total positive");
            };
            edges[i].weight = -edges[i].weight.clone();
            cursor = i;
        }
    }
    GugpInstance::new(spec.n, spec.k, edges)
}

/// Complete graph with integer weights in `1..=max_weight`.
pub fn random_tsp(spec: &GenSpec, rng: &mut SeededRng) -> Result<TspInstance> {
    need(spec.n >= 3, "random-tsp needs n >= 3")?;
    need(spec.max_weight >= 1, "random-tsp needs max weight >= 1")?;
    let n = spec.n;
    let mut entries = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            entries.push((u, v, Rational::from(rng.range(1, spec.max_weight) as i64)));
        }
    }
    TspInstance::new(n, entries)
}

/// Largest number of bichromatic pairs any 3-coloring of `n` vertices has.
fn max_bichromatic(n: usize) -> usize {
    let (q, r) = (n / 3, n % 3);
    let parts = [q + (r > 0) as usize, q + (r > 1) as usize, q];
    parts[0] * parts[1] + parts[0] * parts[2] + parts[1] * parts[2]
}

/// Random 3-coloring plus `edges` distinct bichromatic pairs. Colorings
/// with too few bichromatic pairs are redrawn.
pub fn planted_3col(spec: &GenSpec, rng: &mut SeededRng) -> Result<(SimpleGraph, Labeling)> {
    need(spec.n >= 2, "planted-3col needs n >= 2")?;
    need(
        spec.edges <= max_bichromatic(spec.n),
        "too many edges for a 3-colorable graph on n vertices",
    )?;
    loop {
        let chi: Vec<usize> = (0..spec.n).map(|_| rng.range(1, 3)).collect();
        let mut candidates: Vec<(usize, usize)> = (0..spec.n)
            .flat_map(|u| (u + 1..spec.n).map(move |v| (u, v)))
            .filter(|&(u, v)| chi[u] != chi[v])
            .collect();
        if candidates.len() < spec.edges {
            continue;
        }
        rng.shuffle(&mut candidates);
        let mut chosen = candidates[..spec.edges].to_vec();
        chosen.sort_unstable();
        return Ok((SimpleGraph::new(spec.n, chosen)?, Labeling::new(chi)));
    }
}

/// Random 2-to-2 game with unit weights. When `satisfiable` is set, a
/// uniformly random labeling is planted and each `pi_u` is followed by the
/// transposition that moves the planted image into the block of the other
/// endpoint's image.
pub fn random_t22(
    spec: &GenSpec,
    rng: &mut SeededRng,
) -> Result<(TwoToTwoInstance, Option<Labeling>)> {
    need(spec.n >= 2, "random-t22 needs n >= 2")?;
    need(spec.k >= 1, "random-t22 needs k >= 1")?;
    let size = 2 * spec.k;
    let planted: Option<Vec<usize>> = spec
        .satisfiable
        .then(|| (0..spec.n).map(|_| rng.range(1, size)).collect());
    let mut edges = Vec::with_capacity(spec.edges);
    for _ in 0..spec.edges {
        let (u, v) = rng.distinct_pair(spec.n);
        let mut pi_u = rng.permutation(size);
        let pi_v = rng.permutation(size);
        if let Some(f) = &planted {
            let a = pi_u.at(f[u]);
            let b = pi_v.at(f[v]);
            if (a - 1) / 2 != (b - 1) / 2 {
                let mut swap: Vec<usize> = (1..=size).collect();
                swap.swap(a - 1, b - 1);
                let tau = Permutation::new(swap).expect("transposition");
                pi_u = pi_u.compose(&tau)?;
            }
        }
        edges.push(TwoToTwoEdge {
            u,
            v,
            weight: Rational::one(),
            pi_u,
            pi_v,
        });
    }
    Ok((
        TwoToTwoInstance::new(spec.n, spec.k, edges)?,
        planted.map(Labeling::new),
    ))
}
