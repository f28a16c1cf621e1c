//! Seeded fixtures shared by the benchmarks.

use gugp_core::format::Document;
use gugp_core::generate::{generate, Family, GenSpec};
use gugp_core::reduce::{repeat_max3cut, RepeatCaps, RepeatedInstance, SimpleGraph, TspInstance};
use gugp_core::{GugpInstance, Rational};

/// All-negative random game.
pub fn nwa_instance(n: usize, k: usize, edges: usize, seed: u64) -> GugpInstance {
    gugp(n, k, edges, seed, true, None)
}

/// Random game with |W-|/W+ at most 1/2.
pub fn pwt_instance(n: usize, k: usize, edges: usize, seed: u64) -> GugpInstance {
    gugp(n, k, edges, seed, false, Some(Rational::new(1, 2)))
}

fn gugp(
    n: usize,
    k: usize,
    edges: usize,
    seed: u64,
    nwa: bool,
    max_ratio: Option<Rational>,
) -> GugpInstance {
    let mut spec = GenSpec::new(Family::RandomGugp, n, seed);
    spec.k = k;
    spec.edges = edges;
    spec.nwa = nwa;
    spec.max_ratio = max_ratio;
    match generate(&spec).expect("valid spec").document {
        Document::Gugp(g) => g,
        _ => unreachable!("random-gugp emits GUGP"),
    }
}

pub fn tsp_instance(n: usize, seed: u64) -> TspInstance {
    match generate(&GenSpec::new(Family::RandomTsp, n, seed))
        .expect("valid spec")
        .document
    {
        Document::Tsp(t) => t,
        _ => unreachable!("random-tsp emits TSP"),
    }
}

pub fn repeated_complete(n: usize, l: usize) -> RepeatedInstance {
    repeat_max3cut(&SimpleGraph::complete(n), l, &RepeatCaps::default()).expect("within caps")
}
