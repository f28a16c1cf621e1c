//! Gadget from `G^l` to a unique game with negative/positive ratio `1 - 2^-l`.
//!
//! Each tuple edge becomes `3^l` parallel edges indexed by offset tuples
//! `(i_1, …, i_l) ∈ [3]^l`; the edge for an offset shifts color `j` by
//! `i_j - 1` (mod 3). Under any labeling exactly one of them is satisfied,
//! the one whose offsets are the coordinate-wise color differences.
//! Offsets with some `i_j = 1` get weight `w_x < 0`, the `2^l` others get
//! `w_y > 0`, chosen so the unsatisfied weight of a bundle is 1 when some
//! coordinate collides and 0 otherwise.

use super::repeat::{decode_label, RepeatedInstance};
use super::{capped_pow, BundleMap, RepeatCaps};
use crate::error::{Error, Result};
use crate::instance::{GugpEdge, GugpInstance};
use crate::perm::Permutation;
use crate::rational::Rational;

/// `(w_x, w_y) = (-(2^l - 1)/(3^l - 1), (3^l - 2^l)/(3^l - 1))`.
pub fn pwt1_weights(l: usize) -> (Rational, Rational) {
    let three = 3i64.pow(l as u32);
    let two = 2i64.pow(l as u32);
    (
        Rational::new(-(two - 1), three - 1),
        Rational::new(three - two, three - 1),
    )
}

/// Permutation of `[3^l]` shifting color `j` by `offsets[j] - 1`.
pub fn offset_permutation(l: usize, offsets: &[usize]) -> Permutation {
    let k = 3usize.pow(l as u32);
    let image = (1..=k)
        .map(|a| {
            let shifted: Vec<usize> = decode_label(a, l)
                .iter()
                .zip(offsets)
                .map(|(c, i)| (c - 1 + i - 1) % 3 + 1)
                .collect();
            super::encode_label(&shifted)
        })
        .collect();
    Permutation::new(image).expect("coordinate shifts are bijective")
}

pub fn pwt1_gadget(r: &RepeatedInstance, caps: &RepeatCaps) -> Result<(GugpInstance, BundleMap)> {
    let l = r.fold();
    let k = capped_pow(3, l, caps.max_labels)
        .ok_or_else(|| Error::capacity("labels 3^l", format!("3^{l}"), caps.max_labels))?
        as usize;
    let (w_x, w_y) = pwt1_weights(l);
    let bundle: Vec<(Rational, Permutation)> = (1..=k)
        .map(|code| {
            // offset tuples in lexicographic order, read off as labels
            let offsets = decode_label(code, l);
            let w = if offsets.contains(&1) { &w_x } else { &w_y };
            (w.clone(), offset_permutation(l, &offsets))
        })
        .collect();

    let mut edges = Vec::with_capacity(r.edge_count() * k);
    for e in r.instance().edges() {
        edges.extend(bundle.iter().map(|(w, pi)| GugpEdge {
            u: e.u,
            v: e.v,
            weight: w.clone(),
            pi: pi.clone(),
        }));
    }
    let bundles = BundleMap::uniform(r.edge_count(), k);
    Ok((GugpInstance::new(r.instance().n(), k, edges)?, bundles))
}
