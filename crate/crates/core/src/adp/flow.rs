use std::collections::VecDeque;

use super::{AdpOutcome, Method};
use crate::graph::flow::FlowNetwork;
use crate::graph::{ArcId, ArcPath, StInstance};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SmallKStats {
    /// Candidate arcs whose boosted network was tried.
    pub candidates: usize,
    /// Largest number of augmentations spent on one candidate.
    pub max_augmentations: usize,
    pub total_augmentations: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallKResult {
    pub outcome: AdpOutcome,
    /// For `k = 2`, the arc that received capacity 2 in the successful run.
    pub boosted_arc: Option<ArcId>,
    pub stats: SmallKStats,
}

/// ADP for `k <= 2`.
///
/// For `k = 2` every arc `a` in id order gets capacity 2 while all other
/// arcs keep capacity 1; two paths sharing at most `a` exist iff the flow
/// value reaches 2, which takes at most two augmentations.
pub fn solve_small_k(inst: &StInstance, k: usize) -> SmallKResult {
    assert!(k <= 2, "solve_small_k handles k <= 2");
    let done = |feasible: bool, witness: Option<Vec<ArcPath>>, stats, boosted_arc| SmallKResult {
        outcome: AdpOutcome {
            feasible,
            witness,
            method: Method::Flow,
        },
        boosted_arc,
        stats,
    };
    let mut stats = SmallKStats::default();
    match k {
        0 => done(true, Some(Vec::new()), stats, None),
        1 => match bfs_path(inst) {
            Some(p) => done(true, Some(vec![p]), stats, None),
            None => done(false, None, stats, None),
        },
        _ => {
            let g = &inst.graph;
            for a in 0..g.arc_count() {
                let mut cap = vec![1u32; g.arc_count()];
                // a direct arc used twice would be one path counted twice
                if !(g.tail(a) == inst.s && g.head(a) == inst.t) {
                    cap[a] = 2;
                }
                let mut net = FlowNetwork::new(g, cap);
                let value = net.run(inst.s, inst.t, 2);
                stats.candidates += 1;
                stats.total_augmentations += net.augmentations();
                stats.max_augmentations = stats.max_augmentations.max(net.augmentations());
                if value == 2 {
                    let paths = net
                        .decompose(inst.s, inst.t)
                        .into_iter()
                        .map(ArcPath)
                        .collect();
                    return done(true, Some(paths), stats, Some(a));
                }
            }
            done(false, None, stats, None)
        }
    }
}

fn bfs_path(inst: &StInstance) -> Option<ArcPath> {
    let g = &inst.graph;
    let mut pred: Vec<Option<ArcId>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[inst.s] = true;
    let mut queue = VecDeque::from([inst.s]);
    while let Some(v) = queue.pop_front() {
        for &a in g.out_arcs(v) {
            let w = g.head(a);
            if !seen[w] {
                seen[w] = true;
                pred[w] = Some(a);
                queue.push_back(w);
            }
        }
    }
    if !seen[inst.t] {
        return None;
    }
    let mut arcs = Vec::new();
    let mut v = inst.t;
    while let Some(a) = pred[v] {
        arcs.push(a);
        v = g.tail(a);
    }
    arcs.reverse();
    Some(ArcPath(arcs))
}
