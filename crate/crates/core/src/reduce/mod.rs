//! Instance transformations: the NWA restatement, the TSP gadget, parallel
//! repetition of Max 3-Cut, the two positive-total gadgets and stripping of
//! negative edges.

use std::ops::Range;

use crate::error::{Error, Result};

mod pwt1;
mod repeat;
mod restate;
mod strip;
mod tsp;
mod two2two;

pub use pwt1::{offset_permutation, pwt1_gadget, pwt1_weights};
pub use repeat::{
    decode_label, encode_label, max3cut_instance, product_coloring, repeat_max3cut, RepeatCaps,
    RepeatedInstance, SimpleGraph,
};
pub use restate::restate_nwa;
pub use strip::strip_negative;
pub use tsp::{labeling_to_tour, tour_to_labeling, tsp_to_min_nwa, TspInstance};
pub use two2two::{
    in_block_relation, modplus, pwt_half_bundle, pwt_half_weights, two2two_relation,
    two2two_to_pwt_half, TwoToTwoEdge, TwoToTwoInstance,
};

/// For each source edge, the contiguous run of gadget edges replacing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleMap {
    ranges: Vec<Range<usize>>,
}

impl BundleMap {
    /// `count` consecutive bundles of `size` edges each.
    pub fn uniform(count: usize, size: usize) -> Self {
        BundleMap {
            ranges: (0..count).map(|i| i * size..(i + 1) * size).collect(),
        }
    }

    /// Checks that `ranges` partition `0..edge_count` in order.
    pub fn new(ranges: Vec<Range<usize>>, edge_count: usize) -> Result<Self> {
        let mut next = 0;
        for r in &ranges {
            if r.start != next || r.end <= r.start {
                return Err(Error::Structure(format!(
                    "bundle {r:?} does not continue the partition at edge {next}"
                )));
            }
            next = r.end;
        }
        if next != edge_count {
            return Err(Error::Structure(format!(
                "bundles cover {next} edges, gadget has {edge_count}"
            )));
        }
        Ok(BundleMap { ranges })
    }

    pub fn ranges(&self) -> &[Range<usize>] {
        &self.ranges
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }
}

/// `base^exp`, or `None` past `cap`.
pub(crate) fn capped_pow(base: usize, exp: usize, cap: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u64).filter(|&x| x <= cap)?;
    }
    Some(acc)
}
