//! The bunch graphs `P^k_l`: a path of length `l` whose arcs are each
//! replaced by `k` parallel arcs.

use crate::graph::{ArcId, StInstance};
use crate::sfp::PairSet;

/// `P^k_l` on vertices `0..=l` with `s = 0`, `t = l`. Bunch `i` (0-based)
/// consists of the arcs `i*k .. (i+1)*k`, all from `i` to `i + 1`.
pub fn gen_bunch(k: usize, l: usize) -> StInstance {
    assert!(k >= 1 && l >= 1, "bunch graph needs k >= 1 and l >= 1");
    let arcs = (0..l).flat_map(|i| std::iter::repeat_n((i, i + 1), k));
    StInstance::from_arcs(l + 1, arcs, 0, l).expect("valid bunch graph")
}

pub fn bunch_arcs(k: usize, i: usize) -> std::ops::Range<ArcId> {
    i * k..(i + 1) * k
}

/// All `k^2` pairs with one arc in bunch 0 and one in bunch 1. Every s-t
/// path of `P^k_l` with `l >= 2` picks one arc from each, so the set
/// separates.
pub fn cross_bunch_pairs(k: usize) -> PairSet {
    let mut pairs = PairSet::new();
    for a in bunch_arcs(k, 0) {
        for b in bunch_arcs(k, 1) {
            pairs.insert(a, b);
        }
    }
    pairs
}
