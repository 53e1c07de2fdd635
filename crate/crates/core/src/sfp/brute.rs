//! Exhaustive minimum separating sets over the pairs that lie on a path.

use std::collections::BTreeMap;

use super::{pair, Pair, PairSet, SfpError};
use crate::adp::BitSet;
use crate::graph::{enumerate_st_paths, ArcPath, StInstance};

/// All pairs of arcs on `path`, in increasing order.
pub fn path_pairs(path: &ArcPath) -> Vec<Pair> {
    let arcs = path.arcs();
    let mut out = Vec::with_capacity(arcs.len() * arcs.len().saturating_sub(1) / 2);
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            out.push(pair(arcs[i], arcs[j]));
        }
    }
    out.sort_unstable();
    out
}

struct Table {
    candidates: Vec<Pair>,
    covers: Vec<BitSet>,
    path_count: usize,
}

fn table(inst: &StInstance, cap: usize) -> Result<Option<Table>, SfpError> {
    let paths = enumerate_st_paths(inst, cap)?;
    if paths.iter().any(|p| p.len() == 1) {
        return Ok(None);
    }
    let mut by_pair: BTreeMap<Pair, BitSet> = BTreeMap::new();
    for (i, p) in paths.iter().enumerate() {
        for q in path_pairs(p) {
            by_pair
                .entry(q)
                .or_insert_with(|| BitSet::new(paths.len()))
                .insert(i);
        }
    }
    let (candidates, covers) = by_pair.into_iter().unzip();
    Ok(Some(Table {
        candidates,
        covers,
        path_count: paths.len(),
    }))
}

/// Lexicographic search over `size`-subsets of the candidates. Calls
/// `found` on each separating subset; stops when it returns false.
fn subsets(t: &Table, size: usize, found: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        t: &Table,
        start: usize,
        left: usize,
        acc: &BitSet,
        chosen: &mut Vec<usize>,
        found: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if left == 0 {
            return if acc.count() == t.path_count {
                found(chosen)
            } else {
                true
            };
        }
        for i in start..=t.candidates.len() - left {
            let mut next = acc.clone();
            next.union_with(&t.covers[i]);
            chosen.push(i);
            let go_on = rec(t, i + 1, left - 1, &next, chosen, found);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    if size <= t.candidates.len() {
        rec(
            t,
            0,
            size,
            &BitSet::new(t.path_count),
            &mut Vec::new(),
            found,
        );
    }
}

fn to_set(t: &Table, idx: &[usize]) -> PairSet {
    idx.iter().map(|&i| t.candidates[i]).collect()
}

/// Smallest separating set of at most `max_k` pairs, the first in
/// lexicographic order of candidate indices. `None` if there is none.
pub fn brute_force_min_pairs(
    inst: &StInstance,
    max_k: usize,
    cap: usize,
) -> Result<Option<(usize, PairSet)>, SfpError> {
    Ok(brute_force_all_min_pairs_impl(inst, max_k, cap, false)?
        .map(|(k, mut all)| (k, all.swap_remove(0))))
}

/// Every separating set of the minimum size, when that size is at most
/// `max_k`. Sets are returned in sorted order.
pub fn brute_force_all_min_pairs(
    inst: &StInstance,
    max_k: usize,
    cap: usize,
) -> Result<Option<(usize, Vec<PairSet>)>, SfpError> {
    brute_force_all_min_pairs_impl(inst, max_k, cap, true)
}

fn brute_force_all_min_pairs_impl(
    inst: &StInstance,
    max_k: usize,
    cap: usize,
    all: bool,
) -> Result<Option<(usize, Vec<PairSet>)>, SfpError> {
    let Some(t) = table(inst, cap)? else {
        return Ok(None);
    };
    if t.path_count == 0 {
        return Ok(Some((0, vec![PairSet::new()])));
    }
    for size in 1..=max_k {
        let mut hits = Vec::new();
        subsets(&t, size, &mut |idx| {
            hits.push(to_set(&t, idx));
            all
        });
        if !hits.is_empty() {
            hits.sort();
            return Ok(Some((size, hits)));
        }
    }
    Ok(None)
}
