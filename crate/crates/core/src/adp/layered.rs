//! The layered lift of a general digraph and the exact solver built on it.
//!
//! Vertex `v` gets copies `v_1..v_n`, every arc `uv` gets copies
//! `u_{i-1} v_i`, and a new sink `t'` collects the arcs `t_i t'`. Paths in
//! the lift are compared by copy class: two lifted paths conflict when they
//! contain copies of the same original arc.
//!
//! The copy-class DP on the lift never rejects a feasible instance, but it
//! can accept an infeasible one: two paths that use copies of one arc in
//! different layers are never tracked at the same time, so that sharing is
//! invisible to the pattern. [`solve_layered`] therefore only trusts a
//! negative DP answer, and otherwise searches the DP's true states for a
//! family whose projection is verified almost disjoint.

use super::dag_dp::{DagDp, DpStats};
use super::{is_almost_disjoint, AdpError, AdpOutcome, Method};
use crate::graph::{
    reachable_set, ArcId, ArcPath, Digraph, Direction, GraphError, StInstance, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayeredGraph {
    /// The pruned lift with source `s_1` and sink `t'`.
    pub instance: StInstance,
    /// Original arc of each copy; `None` for the arcs into `t'`.
    pub copy_class: Vec<Option<ArcId>>,
    /// Layer (1-based) of each vertex; `None` for `t'`.
    pub layer: Vec<Option<usize>>,
    /// Original vertex of each copy; `None` for `t'`.
    pub original_vertex: Vec<Option<VertexId>>,
    /// Vertex count before pruning, `n * n + 1`.
    pub unpruned_vertex_count: usize,
}

impl LayeredGraph {
    /// Maps a lifted path to the walk of original arcs it copies.
    pub fn to_original_walk(&self, path: &ArcPath) -> Vec<ArcId> {
        path.0.iter().filter_map(|&a| self.copy_class[a]).collect()
    }
}

pub fn layered_transform(inst: &StInstance) -> Result<LayeredGraph, GraphError> {
    let g = &inst.graph;
    let n = g.vertex_count();
    let id = |layer: usize, v: VertexId| (layer - 1) * n + v;
    let sink = n * n;
    let mut lift = Digraph::new(n * n + 1);
    let mut class = Vec::new();
    for i in 2..=n {
        for (a, arc) in g.arcs().iter().enumerate() {
            lift.add_arc(id(i - 1, arc.tail), id(i, arc.head));
            class.push(Some(a));
        }
    }
    for i in 1..=n {
        lift.add_arc(id(i, inst.t), sink);
        class.push(None);
    }

    let s1 = id(1, inst.s);
    let from_s = reachable_set(&lift, s1, Direction::Forward);
    if !from_s[sink] {
        return Err(GraphError::Disconnected);
    }
    let to_t = reachable_set(&lift, sink, Direction::Backward);
    let keep_vertex: Vec<bool> = (0..lift.vertex_count())
        .map(|v| from_s[v] && to_t[v])
        .collect();
    let keep_arc: Vec<bool> = lift
        .arcs()
        .iter()
        .map(|a| keep_vertex[a.tail] && keep_vertex[a.head])
        .collect();
    let (pruned, vertex_to_old, arc_to_old) = lift.restrict(&keep_vertex, &keep_arc);
    let new_of = |old: VertexId| vertex_to_old.iter().position(|&v| v == old).unwrap();
    let (s, t) = (new_of(s1), new_of(sink));
    let layer = vertex_to_old
        .iter()
        .map(|&v| (v != sink).then(|| v / n + 1))
        .collect();
    let original_vertex = vertex_to_old
        .iter()
        .map(|&v| (v != sink).then(|| v % n))
        .collect();
    Ok(LayeredGraph {
        instance: StInstance::new(pruned, s, t)?,
        copy_class: arc_to_old.iter().map(|&a| class[a]).collect(),
        layer,
        original_vertex,
        unpruned_vertex_count: n * n + 1,
    })
}

/// Turns a walk from `s` into a path by deleting cycles greedily from
/// left to right: on reaching a vertex seen before, everything since its
/// first visit is dropped.
pub fn project_walk(g: &Digraph, s: VertexId, walk: &[ArcId]) -> ArcPath {
    let mut pos_of = vec![usize::MAX; g.vertex_count()];
    pos_of[s] = 0;
    let mut out: Vec<ArcId> = Vec::new();
    for &a in walk {
        let w = g.head(a);
        out.push(a);
        if pos_of[w] != usize::MAX {
            let keep = pos_of[w];
            for &b in &out[keep..] {
                pos_of[g.head(b)] = usize::MAX;
            }
            out.truncate(keep);
            pos_of[w] = keep;
        } else {
            pos_of[w] = out.len();
        }
    }
    ArcPath(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LayeredStats {
    pub unpruned_vertices: usize,
    pub vertices: usize,
    pub arcs: usize,
    /// The bare copy-class DP answer (may be a false positive).
    pub raw_dp_feasible: bool,
    /// Complete DP traces whose projection was checked.
    pub candidates_checked: usize,
    pub dp: DpStats,
}

/// Exact ADP on a general digraph through the layered lift.
pub fn solve_layered(inst: &StInstance, k: usize) -> Result<(AdpOutcome, LayeredStats), AdpError> {
    let mut stats = LayeredStats::default();
    let done = |feasible: bool, witness| AdpOutcome {
        feasible,
        witness,
        method: Method::Layered,
    };
    if k == 0 {
        stats.raw_dp_feasible = true;
        return Ok((done(true, Some(Vec::new())), stats));
    }
    let lg = match layered_transform(inst) {
        Ok(lg) => lg,
        Err(GraphError::Disconnected) => return Ok((done(false, None), stats)),
        Err(e) => return Err(e.into()),
    };
    stats.unpruned_vertices = lg.unpruned_vertex_count;
    stats.vertices = lg.instance.graph.vertex_count();
    stats.arcs = lg.instance.graph.arc_count();

    let mut dp = DagDp::new(&lg.instance, k, Some(&lg.copy_class))?;
    let goals: Vec<(Vec<ArcId>, Vec<u64>)> = dp
        .goal_tuples()
        .into_iter()
        .map(|t| {
            let r = dp.patterns(&t);
            (t, r.to_vec())
        })
        .collect();
    stats.raw_dp_feasible = goals.iter().any(|(_, r)| !r.is_empty());
    if !stats.raw_dp_feasible {
        stats.dp = dp.stats();
        return Ok((done(false, None), stats));
    }

    let mut search = TraceSearch::new(&mut dp, &lg, inst, k);
    let mut found = None;
    'goals: for (tuple, pats) in goals {
        for pat in pats {
            if let Some(w) = search.run(&tuple, pat) {
                found = Some(w);
                break 'goals;
            }
        }
    }
    stats.candidates_checked = search.candidates;
    stats.dp = dp.stats();
    Ok((done(found.is_some(), found), stats))
}

/// Backtracks through true DP states while keeping the projected paths
/// simple and counting shared original arcs exactly.
struct TraceSearch<'d, 'a> {
    dp: &'d mut DagDp<'a>,
    lg: &'d LayeredGraph,
    orig: &'d StInstance,
    k: usize,
    on_path: Vec<Vec<bool>>,
    used: Vec<Vec<bool>>,
    shared: Vec<Vec<u8>>,
    rev: Vec<Vec<ArcId>>,
    candidates: usize,
}

impl<'d, 'a> TraceSearch<'d, 'a> {
    fn new(dp: &'d mut DagDp<'a>, lg: &'d LayeredGraph, orig: &'d StInstance, k: usize) -> Self {
        let n = orig.graph.vertex_count();
        let m = orig.graph.arc_count();
        TraceSearch {
            dp,
            lg,
            orig,
            k,
            on_path: vec![vec![false; n]; k],
            used: vec![vec![false; m]; k],
            shared: vec![vec![0; k]; k],
            rev: vec![Vec::new(); k],
            candidates: 0,
        }
    }

    fn run(&mut self, goal: &[ArcId], pat: u64) -> Option<Vec<ArcPath>> {
        for (i, &g) in goal.iter().enumerate().take(self.k) {
            self.on_path[i].fill(false);
            self.used[i].fill(false);
            self.shared[i].fill(0);
            self.rev[i] = vec![g];
            self.on_path[i][self.orig.t] = true;
        }
        let mut tuple = goal.to_vec();
        self.rec(&mut tuple, pat)
    }

    fn rec(&mut self, tuple: &mut Vec<ArcId>, pat: u64) -> Option<Vec<ArcPath>> {
        if self.dp.at_source(tuple) {
            self.candidates += 1;
            let paths: Vec<ArcPath> = self
                .rev
                .iter()
                .map(|r| {
                    let lifted = ArcPath(r.iter().rev().copied().collect());
                    ArcPath(self.lg.to_original_walk(&lifted))
                })
                .collect();
            let distinct =
                (0..paths.len()).all(|i| (i + 1..paths.len()).all(|j| paths[i] != paths[j]));
            let valid = distinct
                && paths.iter().all(|p| p.is_st_path(self.orig))
                && is_almost_disjoint(&paths, 1);
            return valid.then_some(paths);
        }
        let g = self.dp.graph();
        let p = self.dp.pivot(tuple);
        let prev = pat & !self.dp.conflict_mask(tuple, p);
        let here = tuple[p];
        for &b in g.in_arcs(g.tail(here)) {
            tuple[p] = b;
            if self.dp.patterns(tuple).binary_search(&prev).is_err() {
                continue;
            }
            let u = self.lg.original_vertex[g.tail(b)].expect("copy vertex");
            if self.on_path[p][u] {
                continue;
            }
            let c = self.lg.copy_class[b].expect("copy arc");
            let mut ok = true;
            for j in 0..self.k {
                if j != p && self.used[j][c] {
                    self.shared[p][j] += 1;
                    self.shared[j][p] += 1;
                    ok &= self.shared[p][j] <= 1;
                }
            }
            if ok {
                self.on_path[p][u] = true;
                self.used[p][c] = true;
                self.rev[p].push(b);
                if let Some(w) = self.rec(tuple, prev) {
                    return Some(w);
                }
                self.rev[p].pop();
                self.used[p][c] = false;
                self.on_path[p][u] = false;
            }
            for j in 0..self.k {
                if j != p && self.used[j][c] {
                    self.shared[p][j] -= 1;
                    self.shared[j][p] -= 1;
                }
            }
        }
        tuple[p] = here;
        None
    }
}
