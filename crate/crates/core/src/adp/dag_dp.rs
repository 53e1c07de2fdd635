//! Dynamic program over arc tuples for acyclic graphs.
//!
//! A state `((a_1, ..., a_k), I)` is true iff there are s-paths `P_1..P_k`
//! ending with the arcs `a_i` such that the pairs sharing an arc are
//! exactly `I` and no pair shares more than one arc. The memo stores, per
//! arc tuple, the sorted list of patterns whose state is true; a state is
//! then a membership query.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use super::{AdpError, AdpOutcome, Method};
use crate::graph::{topological_order, ArcId, ArcPath, Digraph, StInstance, VertexId};

/// Largest `k` whose pattern fits in 64 bits.
pub const MAX_K: usize = 11;

/// A set of unordered index pairs `{i, j}`, `0 <= i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionPattern {
    k: usize,
    bits: u64,
}

impl IntersectionPattern {
    pub fn empty(k: usize) -> Self {
        assert!(k <= MAX_K);
        IntersectionPattern { k, bits: 0 }
    }

    pub fn from_bits(k: usize, bits: u64) -> Self {
        assert!(k <= MAX_K);
        assert!(bits >> pair_count(k) == 0 || pair_count(k) == 64);
        IntersectionPattern { k, bits }
    }

    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut p = IntersectionPattern::empty(k);
        for (i, j) in pairs {
            p.insert(i, j);
        }
        p
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn contains(self, i: usize, j: usize) -> bool {
        self.bits >> pair_index(self.k, i, j) & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.bits |= 1 << pair_index(self.k, i, j);
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Members as `(i, j)` with `i < j`, in lexicographic order.
    pub fn pairs(self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Number of unordered index pairs, `k(k-1)/2`.
pub fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn pair_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    assert!(i != j && j < k, "pair ({i}, {j}) out of range for k = {k}");
    i * k - i * (i + 1) / 2 + (j - i - 1)
}

/// A DP state: one arc per tracked path plus the pattern of sharing pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DpState {
    pub arcs: Vec<ArcId>,
    pub pattern: IntersectionPattern,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpStats {
    /// Arc tuples whose pattern set was computed.
    pub tuples: usize,
    /// Sum of the pattern-set sizes, i.e. the number of true states.
    pub true_states: usize,
}

pub struct DagDp<'a> {
    g: &'a Digraph,
    s: VertexId,
    t: VertexId,
    k: usize,
    rank: Vec<usize>,
    class: Option<&'a [Option<ArcId>]>,
    memo: HashMap<Box<[ArcId]>, Rc<Vec<u64>>>,
    stats: DpStats,
}

impl<'a> DagDp<'a> {
    /// `class` maps each arc to its copy class; arcs are then "the same"
    /// iff their classes are equal and present. Without it, sameness is
    /// arc identity.
    pub fn new(
        inst: &'a StInstance,
        k: usize,
        class: Option<&'a [Option<ArcId>]>,
    ) -> Result<Self, AdpError> {
        if k == 0 || k > MAX_K {
            return Err(AdpError::NotApplicable {
                method: "dp",
                reason: format!("k = {k} outside 1..={MAX_K}"),
            });
        }
        let order = topological_order(&inst.graph)?;
        if let Some(c) = class {
            assert_eq!(c.len(), inst.graph.arc_count(), "one class per arc");
        }
        Ok(DagDp {
            g: &inst.graph,
            s: inst.s,
            t: inst.t,
            k,
            rank: order.rank,
            class,
            memo: HashMap::new(),
            stats: DpStats::default(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stats(&self) -> DpStats {
        self.stats
    }

    pub(crate) fn graph(&self) -> &'a Digraph {
        self.g
    }

    fn same(&self, a: ArcId, b: ArcId) -> bool {
        match self.class {
            None => a == b,
            Some(c) => c[a].is_some() && c[a] == c[b],
        }
    }

    fn same_mask(&self, tuple: &[ArcId]) -> u64 {
        let mut p = IntersectionPattern::empty(self.k);
        for i in 0..self.k {
            for j in i + 1..self.k {
                if self.same(tuple[i], tuple[j]) {
                    p.insert(i, j);
                }
            }
        }
        p.bits
    }

    /// Index whose arc has the latest tail, lowest index on ties.
    pub(crate) fn pivot(&self, tuple: &[ArcId]) -> usize {
        let mut best = 0;
        for i in 1..tuple.len() {
            if self.rank[self.g.tail(tuple[i])] > self.rank[self.g.tail(tuple[best])] {
                best = i;
            }
        }
        best
    }

    /// The pairs `{pivot, i}` whose arcs are the same as the pivot's.
    pub(crate) fn conflict_mask(&self, tuple: &[ArcId], p: usize) -> u64 {
        let mut c = IntersectionPattern::empty(self.k);
        for i in 0..self.k {
            if i != p && self.same(tuple[i], tuple[p]) {
                c.insert(i, p);
            }
        }
        c.bits
    }

    pub(crate) fn at_source(&self, tuple: &[ArcId]) -> bool {
        tuple.iter().all(|&a| self.g.tail(a) == self.s)
    }

    /// Sorted patterns `I` with `(tuple, I)` true.
    pub(crate) fn patterns(&mut self, tuple: &[ArcId]) -> Rc<Vec<u64>> {
        if let Some(r) = self.memo.get(tuple) {
            return Rc::clone(r);
        }
        let g = self.g;
        let same = self.same_mask(tuple);
        let result: Vec<u64> = if self.at_source(tuple) {
            vec![same]
        } else {
            let p = self.pivot(tuple);
            let v = g.tail(tuple[p]);
            if v == self.s {
                // some other tail lies before s; no s-path reaches it
                Vec::new()
            } else {
                let c = self.conflict_mask(tuple, p);
                let mut out = BTreeSet::new();
                let mut pred = tuple.to_vec();
                for &b in g.in_arcs(v) {
                    pred[p] = b;
                    for &q in self.patterns(&pred).iter() {
                        let full = q | c;
                        // the strengthened check: every same pair is recorded
                        if q & c == 0 && full & same == same {
                            out.insert(full);
                        }
                    }
                }
                out.into_iter().collect()
            }
        };
        self.stats.tuples += 1;
        self.stats.true_states += result.len();
        debug_assert!(self.within_state_bound());
        let r = Rc::new(result);
        self.memo.insert(tuple.into(), Rc::clone(&r));
        r
    }

    fn within_state_bound(&self) -> bool {
        let m = self.g.arc_count() as u128;
        let tuples_bound = m.saturating_pow(self.k as u32);
        let patterns_bound = 1u128 << pair_count(self.k);
        (self.stats.tuples as u128) <= tuples_bound
            && (self.stats.true_states as u128) <= tuples_bound.saturating_mul(patterns_bound)
    }

    /// Truth value of a single state.
    pub fn state_value(&mut self, state: &DpState) -> bool {
        assert_eq!(state.arcs.len(), self.k);
        self.patterns(&state.arcs)
            .binary_search(&state.pattern.bits)
            .is_ok()
    }

    /// Arc tuples entering t in nondecreasing id order. Permuting the
    /// paths permutes the tuple, so sorted tuples suffice.
    pub(crate) fn goal_tuples(&self) -> Vec<Vec<ArcId>> {
        let ins = self.g.in_arcs(self.t);
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.k];
        if ins.is_empty() {
            return out;
        }
        loop {
            let tuple: Vec<ArcId> = idx.iter().map(|&i| ins[i]).collect();
            let repeated_direct = self.class.is_none()
                && tuple
                    .windows(2)
                    .any(|w| w[0] == w[1] && self.g.tail(w[0]) == self.s);
            if !repeated_direct {
                out.push(tuple);
            }
            // next nondecreasing index vector
            let mut pos = self.k;
            while pos > 0 && idx[pos - 1] == ins.len() - 1 {
                pos -= 1;
            }
            if pos == 0 {
                return out;
            }
            idx[pos - 1] += 1;
            let v = idx[pos - 1];
            for x in &mut idx[pos..] {
                *x = v;
            }
        }
    }

    /// First witness in goal order, as paths in the working graph.
    pub fn solve(&mut self) -> Option<Vec<ArcPath>> {
        for goal in self.goal_tuples() {
            let r = self.patterns(&goal);
            if let Some(&q) = r.first() {
                return Some(self.backtrack(&goal, q));
            }
        }
        None
    }

    /// Follows the first true predecessor state back to the base case.
    pub(crate) fn backtrack(&mut self, tuple: &[ArcId], pattern: u64) -> Vec<ArcPath> {
        let g = self.g;
        let mut tuple = tuple.to_vec();
        let mut pat = pattern;
        let mut rev: Vec<Vec<ArcId>> = tuple.iter().map(|&a| vec![a]).collect();
        while !self.at_source(&tuple) {
            let p = self.pivot(&tuple);
            let prev = pat & !self.conflict_mask(&tuple, p);
            let mut pred = tuple.clone();
            let b = g
                .in_arcs(g.tail(tuple[p]))
                .iter()
                .copied()
                .find(|&b| {
                    pred[p] = b;
                    self.patterns(&pred).binary_search(&prev).is_ok()
                })
                .expect("a true state has a true predecessor");
            tuple[p] = b;
            rev[p].push(b);
            pat = prev;
        }
        debug_assert_eq!(pat, self.same_mask(&tuple));
        rev.into_iter()
            .map(|mut v| {
                v.reverse();
                ArcPath(v)
            })
            .collect()
    }
}

/// Decides ADP on an acyclic instance with the arc-tuple DP.
///
/// Without `copy_class` the instance may contain direct s-t arcs; a
/// direct arc is never used by two paths.
pub fn dag_dp_solve(
    inst: &StInstance,
    k: usize,
    copy_class: Option<&[Option<ArcId>]>,
) -> Result<AdpOutcome, AdpError> {
    if k == 0 {
        return Ok(AdpOutcome {
            feasible: true,
            witness: Some(Vec::new()),
            method: Method::Dp,
        });
    }
    let mut dp = DagDp::new(inst, k, copy_class)?;
    let witness = dp.solve();
    Ok(AdpOutcome {
        feasible: witness.is_some(),
        witness,
        method: Method::Dp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adp::is_almost_disjoint;
    use crate::graph::GraphError;
    use crate::reductions::gen_bunch;

    #[test]
    fn pair_indices_are_dense() {
        for k in 1..=MAX_K {
            let mut seen = vec![false; pair_count(k)];
            for i in 0..k {
                for j in i + 1..k {
                    let x = pair_index(k, i, j);
                    assert!(!seen[x]);
                    seen[x] = true;
                    assert_eq!(x, pair_index(k, j, i));
                }
            }
            assert!(seen.into_iter().all(|b| b));
        }
        let p = IntersectionPattern::from_pairs(4, [(2, 0), (1, 3)]);
        assert_eq!(p.pairs(), vec![(0, 2), (1, 3)]);
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn bunch_values() {
        let p24 = gen_bunch(2, 4);
        assert!(dag_dp_solve(&p24, 2, None).unwrap().feasible);
        assert!(!dag_dp_solve(&p24, 3, None).unwrap().feasible);
    }

    #[test]
    fn witness_is_sound() {
        let p37 = gen_bunch(3, 7);
        let out = dag_dp_solve(&p37, 3, None).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.len(), 3);
        assert!(w.iter().all(|p| p.is_st_path(&p37)));
        assert!(is_almost_disjoint(&w, 1));
    }

    #[test]
    fn base_states() {
        // s->a twice, a->t
        let inst = StInstance::from_arcs(3, [(0, 1), (0, 1), (1, 2)], 0, 2).unwrap();
        let mut dp = DagDp::new(&inst, 2, None).unwrap();
        let st = |arcs: Vec<ArcId>, pairs: Vec<(usize, usize)>| DpState {
            arcs,
            pattern: IntersectionPattern::from_pairs(2, pairs),
        };
        assert!(dp.state_value(&st(vec![0, 1], vec![])));
        assert!(!dp.state_value(&st(vec![0, 1], vec![(0, 1)])));
        assert!(dp.state_value(&st(vec![0, 0], vec![(0, 1)])));
        assert!(!dp.state_value(&st(vec![0, 0], vec![])));
        // both paths end with a->t after distinct first arcs
        assert!(dp.state_value(&st(vec![2, 2], vec![(0, 1)])));
        assert!(dp.solve().is_some());
    }

    #[test]
    fn repeated_direct_arc_is_one_path() {
        let inst = StInstance::from_arcs(2, [(0, 1)], 0, 1).unwrap();
        assert!(dag_dp_solve(&inst, 1, None).unwrap().feasible);
        assert!(!dag_dp_solve(&inst, 2, None).unwrap().feasible);
    }

    #[test]
    fn untrimmed_input_is_safe() {
        // x->a feeds an s-path arc from a vertex s cannot reach
        let inst = StInstance::from_arcs(4, [(0, 1), (3, 1), (1, 2)], 0, 2).unwrap();
        assert!(dag_dp_solve(&inst, 1, None).unwrap().feasible);
        assert!(!dag_dp_solve(&inst, 2, None).unwrap().feasible);
    }

    #[test]
    fn cyclic_input_rejected() {
        let inst = StInstance::from_arcs(3, [(0, 1), (1, 0), (1, 2)], 0, 2).unwrap();
        match dag_dp_solve(&inst, 2, None) {
            Err(AdpError::Graph(GraphError::Cyclic { .. })) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn stats_respect_bound() {
        let p24 = gen_bunch(2, 4);
        let mut dp = DagDp::new(&p24, 3, None).unwrap();
        assert!(dp.solve().is_none());
        let st = dp.stats();
        assert!(st.tuples > 0);
        assert!(st.tuples <= 8usize.pow(3));
        assert!(st.true_states <= st.tuples * 8);
    }
}
