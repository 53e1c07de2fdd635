//! Zero-gap instances: an s-t cut whose only outgoing arc is `uv`.
//!
//! Every s-t path passes `uv`, so almost disjoint paths are arc-disjoint
//! s-u paths and v-t paths glued at `uv`, and a minimum cut on the weaker
//! side, each arc paired with `uv`, separates.

use serde::Serialize;

use super::DualityError;
use crate::graph::flow::FlowNetwork;
use crate::graph::{
    reachable_avoiding, trim_to_core, ArcId, ArcPath, Direction, GraphError, StInstance, VertexId,
};
use crate::sfp::PairSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutSide {
    Source,
    Target,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitCut {
    pub cut_arc: ArcId,
    pub k: usize,
    pub paths: Vec<ArcPath>,
    pub pairs: PairSet,
    /// The side whose minimum cut supplies the partners of the cut arc.
    pub side: CutSide,
}

struct SideFlow {
    /// `None` when the side is a single vertex and imposes no limit.
    value: Option<usize>,
    paths: Vec<Vec<ArcId>>,
    cut: Vec<ArcId>,
}

/// Max unit flow from `from` to `to` inside the vertices with `keep[v]`.
/// Arc ids in the result refer to `g`.
fn side_flow(g: &crate::graph::Digraph, keep: &[bool], from: VertexId, to: VertexId) -> SideFlow {
    if from == to {
        return SideFlow {
            value: None,
            paths: Vec::new(),
            cut: Vec::new(),
        };
    }
    let keep_arc: Vec<bool> = g
        .arcs()
        .iter()
        .map(|a| keep[a.tail] && keep[a.head])
        .collect();
    let (sub, vertex_to_old, arc_to_old) = g.restrict(keep, &keep_arc);
    let new_of = |v: VertexId| vertex_to_old.iter().position(|&x| x == v).unwrap();
    let (s, t) = (new_of(from), new_of(to));
    let mut net = FlowNetwork::unit(&sub);
    let value = net.run(s, t, u32::MAX) as usize;
    let lift = |arcs: Vec<ArcId>| arcs.into_iter().map(|a| arc_to_old[a]).collect::<Vec<_>>();
    SideFlow {
        value: Some(value),
        paths: net.decompose(s, t).into_iter().map(lift).collect(),
        cut: lift(net.min_cut_arcs(s)),
    }
}

pub fn solve_unit_cut(inst: &StInstance) -> Result<UnitCut, DualityError> {
    let (core, map) = match trim_to_core(inst) {
        Ok(x) => x,
        Err(GraphError::Disconnected) => {
            return Err(DualityError::NotApplicable(
                "t is not reachable from s".into(),
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let g = &core.graph;
    for uv in 0..g.arc_count() {
        let (u, v) = (g.tail(uv), g.head(uv));
        let side = reachable_avoiding(g, core.s, Direction::Forward, Some(uv));
        if side[core.t] || !side[u] || side[v] {
            continue;
        }
        if g.arcs()
            .iter()
            .enumerate()
            .any(|(a, arc)| a != uv && side[arc.tail] && !side[arc.head])
        {
            continue;
        }
        if u == core.s && v == core.t {
            return Err(DualityError::NotApplicable(
                "the only cut arc is a direct s-t arc, which no pair covers".into(),
            ));
        }
        let other: Vec<bool> = side.iter().map(|&b| !b).collect();
        let src = side_flow(g, &side, core.s, u);
        let dst = side_flow(g, &other, v, core.t);
        let (k, cut_side) = match (src.value, dst.value) {
            (Some(a), Some(b)) if a <= b => (a, CutSide::Source),
            (Some(_), Some(b)) => (b, CutSide::Target),
            (Some(a), None) => (a, CutSide::Source),
            (None, Some(b)) => (b, CutSide::Target),
            (None, None) => unreachable!("u = s and v = t handled above"),
        };
        let lift = |a: ArcId| map.arc_to_old[a];
        let paths = (0..k)
            .map(|i| {
                let mut p: Vec<ArcId> = src.paths.get(i).cloned().unwrap_or_default();
                p.push(uv);
                p.extend(dst.paths.get(i).cloned().unwrap_or_default());
                ArcPath(p.into_iter().map(lift).collect())
            })
            .collect();
        let cut = match cut_side {
            CutSide::Source => &src.cut,
            CutSide::Target => &dst.cut,
        };
        debug_assert_eq!(cut.len(), k);
        let pairs = cut.iter().map(|&c| (lift(uv), lift(c))).collect();
        return Ok(UnitCut {
            cut_arc: lift(uv),
            k,
            paths,
            pairs,
            side: cut_side,
        });
    }
    Err(DualityError::NotApplicable(
        "no s-t cut with a single outgoing arc".into(),
    ))
}
