//! Search for an s-t path that avoids every forbidden pair.

use std::collections::HashMap;

use super::{covering_pair, PairSet, SeparationVerdict, SfpError};
use crate::adp::BitSet;
use crate::graph::{
    enumerate_st_paths, reachable_set, topological_order, trim_to_core, ArcId, ArcPath, Digraph,
    Direction, GraphError, StInstance, VertexId,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    /// Abort with `BudgetExceeded` after this many search nodes.
    pub node_budget: Option<u64>,
    /// Remember failed (vertex, open forbidden arcs) states. Acyclic
    /// graphs only; ignored otherwise.
    pub memo: bool,
    /// Among parallel arcs with identical partners, try only the lowest id.
    pub collapse_parallel: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            node_budget: Some(20_000_000),
            memo: true,
            collapse_parallel: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckStats {
    pub nodes: u64,
    pub memo_hits: u64,
    /// Pairs that survived the relevance filter.
    pub relevant_pairs: usize,
    /// Arcs skipped as duplicates of a parallel arc.
    pub collapsed_arcs: usize,
}

/// Reflexive reachability between all vertex pairs.
#[derive(Debug, Clone)]
pub struct Reachability {
    rows: Vec<BitSet>,
}

impl Reachability {
    pub fn new(g: &Digraph) -> Self {
        let n = g.vertex_count();
        let rows = match topological_order(g) {
            Ok(order) => {
                let mut rows = vec![BitSet::new(n); n];
                for &v in order.order.iter().rev() {
                    let mut row = BitSet::new(n);
                    row.insert(v);
                    for &a in g.out_arcs(v) {
                        row.union_with(&rows[g.head(a)]);
                    }
                    rows[v] = row;
                }
                rows
            }
            Err(_) => (0..n)
                .map(|v| {
                    let mut row = BitSet::new(n);
                    for (w, r) in reachable_set(g, v, Direction::Forward)
                        .into_iter()
                        .enumerate()
                    {
                        if r {
                            row.insert(w);
                        }
                    }
                    row
                })
                .collect(),
        };
        Reachability { rows }
    }

    pub fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        self.rows[from].contains(to)
    }

    /// Whether some s-t walk could use both arcs. Exact on acyclic graphs
    /// whose every vertex lies on an s-t path; an over-approximation on
    /// cyclic ones.
    pub fn pair_relevant(&self, g: &Digraph, a: ArcId, b: ArcId) -> bool {
        self.reaches(g.head(a), g.tail(b)) || self.reaches(g.head(b), g.tail(a))
    }
}

pub fn separation_check(inst: &StInstance, pairs: &PairSet) -> Result<SeparationVerdict, SfpError> {
    separation_check_with(inst, pairs, CheckOptions::default()).map(|(v, _)| v)
}

pub fn separation_check_with(
    inst: &StInstance,
    pairs: &PairSet,
    opts: CheckOptions,
) -> Result<(SeparationVerdict, CheckStats), SfpError> {
    let mut stats = CheckStats::default();
    let (core, map) = match trim_to_core(inst) {
        Ok(x) => x,
        Err(GraphError::Disconnected) => return Ok((SeparationVerdict::Separates, stats)),
        Err(e) => return Err(e.into()),
    };
    let g = &core.graph;
    let m = g.arc_count();
    let mut to_core = vec![None; inst.graph.arc_count()];
    for (new, &old) in map.arc_to_old.iter().enumerate() {
        to_core[old] = Some(new);
    }
    let acyclic = topological_order(g).is_ok();
    let reach = Reachability::new(g);

    let mut partners: Vec<Vec<ArcId>> = vec![Vec::new(); m];
    for (a, b) in pairs.iter() {
        let (Some(&Some(x)), Some(&Some(y))) = (to_core.get(a), to_core.get(b)) else {
            continue;
        };
        if reach.pair_relevant(g, x, y) {
            partners[x].push(y);
            partners[y].push(x);
            stats.relevant_pairs += 1;
        }
    }
    for p in &mut partners {
        p.sort_unstable();
    }

    let mut skip = vec![false; m];
    if opts.collapse_parallel {
        for v in 0..g.vertex_count() {
            let mut seen: HashMap<(VertexId, &[ArcId]), ()> = HashMap::new();
            for &a in g.out_arcs(v) {
                if seen.insert((g.head(a), &partners[a]), ()).is_some() {
                    skip[a] = true;
                    stats.collapsed_arcs += 1;
                }
            }
        }
    }

    let mut dfs = Dfs {
        g,
        t: core.t,
        partners: &partners,
        skip: &skip,
        reach: &reach,
        memo_on: opts.memo && acyclic,
        budget: opts.node_budget.unwrap_or(u64::MAX),
        forbidden: vec![0; m],
        active: Vec::new(),
        on_path: vec![false; g.vertex_count()],
        path: Vec::new(),
        memo: HashMap::new(),
        stats,
    };
    dfs.on_path[core.s] = true;
    let found = dfs.go(core.s);
    let stats = dfs.stats;
    match found {
        Err(()) => Err(SfpError::BudgetExceeded(format!(
            "separation check stopped after {} nodes",
            stats.nodes
        ))),
        Ok(false) => Ok((SeparationVerdict::Separates, stats)),
        Ok(true) => {
            let path = ArcPath(dfs.path.iter().map(|&a| map.arc_to_old[a]).collect());
            debug_assert!(covering_pair(&path, pairs).is_none());
            Ok((SeparationVerdict::Witness(path), stats))
        }
    }
}

const MEMO_SETS_PER_VERTEX: usize = 64;

struct Dfs<'x> {
    g: &'x Digraph,
    t: VertexId,
    partners: &'x [Vec<ArcId>],
    skip: &'x [bool],
    reach: &'x Reachability,
    memo_on: bool,
    budget: u64,
    /// Number of path arcs paired with each arc.
    forbidden: Vec<u32>,
    /// Arcs with a nonzero count, in the order they became forbidden.
    active: Vec<ArcId>,
    on_path: Vec<bool>,
    path: Vec<ArcId>,
    memo: HashMap<VertexId, Vec<Vec<ArcId>>>,
    stats: CheckStats,
}

impl Dfs<'_> {
    fn go(&mut self, v: VertexId) -> Result<bool, ()> {
        if v == self.t {
            return Ok(true);
        }
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Err(());
        }
        let key = if self.memo_on {
            let mut f: Vec<ArcId> = self
                .active
                .iter()
                .copied()
                .filter(|&a| self.reach.reaches(v, self.g.tail(a)))
                .collect();
            f.sort_unstable();
            if let Some(failed) = self.memo.get(&v) {
                if failed.iter().any(|s| is_sorted_subset(s, &f)) {
                    self.stats.memo_hits += 1;
                    return Ok(false);
                }
            }
            Some(f)
        } else {
            None
        };

        let g = self.g;
        for &a in g.out_arcs(v) {
            let w = g.head(a);
            if self.skip[a] || self.forbidden[a] > 0 || self.on_path[w] {
                continue;
            }
            self.push(a);
            if self.go(w)? {
                return Ok(true);
            }
            self.pop(a);
        }

        if let Some(f) = key {
            let failed = self.memo.entry(v).or_default();
            if failed.len() < MEMO_SETS_PER_VERTEX {
                failed.push(f);
            }
        }
        Ok(false)
    }

    fn push(&mut self, a: ArcId) {
        self.path.push(a);
        self.on_path[self.g.head(a)] = true;
        for &b in &self.partners[a] {
            if self.forbidden[b] == 0 {
                self.active.push(b);
            }
            self.forbidden[b] += 1;
        }
    }

    fn pop(&mut self, a: ArcId) {
        for &b in self.partners[a].iter().rev() {
            self.forbidden[b] -= 1;
            if self.forbidden[b] == 0 {
                let top = self.active.pop();
                debug_assert_eq!(top, Some(b));
            }
        }
        self.on_path[self.g.head(a)] = false;
        self.path.pop();
    }
}

fn is_sorted_subset(small: &[ArcId], big: &[ArcId]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Reference check: enumerate every simple s-t path and look for one that
/// no pair covers.
pub fn naive_separation_check(
    inst: &StInstance,
    pairs: &PairSet,
    cap: usize,
) -> Result<SeparationVerdict, GraphError> {
    for p in enumerate_st_paths(inst, cap)? {
        if covering_pair(&p, pairs).is_none() {
            return Ok(SeparationVerdict::Witness(p));
        }
    }
    Ok(SeparationVerdict::Separates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reductions::{cross_bunch_pairs, gen_bunch};

    fn diamond() -> StInstance {
        StInstance::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap()
    }

    #[test]
    fn diamond_examples() {
        let d = diamond();
        let v = separation_check(&d, &[(0, 2)].into_iter().collect()).unwrap();
        assert_eq!(v, SeparationVerdict::Witness(ArcPath(vec![1, 3])));
        let v = separation_check(&d, &PairSet::new()).unwrap();
        assert_eq!(v, SeparationVerdict::Witness(ArcPath(vec![0, 2])));
        let both: PairSet = [(0, 2), (1, 3)].into_iter().collect();
        assert!(separation_check(&d, &both).unwrap().separates());
    }

    #[test]
    fn irrelevant_pairs_are_ignored() {
        let d = diamond();
        // arcs 0 and 1 are never on one path
        let (v, st) =
            separation_check_with(&d, &[(0, 1)].into_iter().collect(), CheckOptions::default())
                .unwrap();
        assert!(!v.separates());
        assert_eq!(st.relevant_pairs, 0);
    }

    #[test]
    fn bunch_cross_pairs_separate() {
        for (k, l) in [(2, 4), (3, 7)] {
            let p = gen_bunch(k, l);
            let (v, st) =
                separation_check_with(&p, &cross_bunch_pairs(k), CheckOptions::default()).unwrap();
            assert!(v.separates());
            assert!(st.collapsed_arcs > 0);
        }
    }

    #[test]
    fn options_do_not_change_verdicts() {
        let p = gen_bunch(3, 4);
        let mut pairs = cross_bunch_pairs(3);
        let plain = CheckOptions {
            node_budget: None,
            memo: false,
            collapse_parallel: false,
        };
        assert!(separation_check_with(&p, &pairs, plain)
            .unwrap()
            .0
            .separates());
        pairs = pairs.iter().skip(1).collect();
        let a = separation_check_with(&p, &pairs, plain).unwrap().0;
        let b = separation_check(&p, &pairs).unwrap();
        assert!(!a.separates() && !b.separates());
        assert_eq!(covering_pair(b.witness().unwrap(), &pairs), None);
    }

    #[test]
    fn budget_is_reported() {
        let p = gen_bunch(2, 12);
        let opts = CheckOptions {
            node_budget: Some(5),
            memo: false,
            collapse_parallel: false,
        };
        let pairs: PairSet = (0..12).map(|i| (2 * i, 2 * i + 1)).collect();
        assert!(matches!(
            separation_check_with(&p, &pairs, opts),
            Err(SfpError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn cyclic_graph() {
        // s->a, a->b, b->a, a->t, b->t
        let inst =
            StInstance::from_arcs(4, [(0, 1), (1, 2), (2, 1), (1, 3), (2, 3)], 0, 3).unwrap();
        let pairs: PairSet = [(0, 3)].into_iter().collect();
        let v = separation_check(&inst, &pairs).unwrap();
        assert_eq!(v, SeparationVerdict::Witness(ArcPath(vec![0, 1, 4])));
        let pairs: PairSet = [(0, 3), (0, 4)].into_iter().collect();
        assert!(separation_check(&inst, &pairs).unwrap().separates());
        assert_eq!(
            naive_separation_check(&inst, &pairs, 100),
            Ok(SeparationVerdict::Separates)
        );
    }

    #[test]
    fn unreachable_target_is_separated() {
        let inst = StInstance::from_arcs(3, [(0, 1)], 0, 2).unwrap();
        assert!(separation_check(&inst, &PairSet::new())
            .unwrap()
            .separates());
    }
}
