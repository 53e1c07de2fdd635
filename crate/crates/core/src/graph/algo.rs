use std::collections::VecDeque;

use super::{ArcId, ArcPath, Digraph, GraphError, StInstance, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// A topological ordering: `rank[tail(a)] < rank[head(a)]` for every arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopologicalOrder {
    pub rank: Vec<usize>,
    /// Vertices sorted by rank.
    pub order: Vec<VertexId>,
}

impl TopologicalOrder {
    pub fn is_valid_for(&self, g: &Digraph) -> bool {
        self.rank.len() == g.vertex_count()
            && g.arcs()
                .iter()
                .all(|a| self.rank[a.tail] < self.rank[a.head])
    }
}

/// Reverse-postorder DFS. On failure the error carries one directed cycle
/// as an arc list.
pub fn topological_order(g: &Digraph) -> Result<TopologicalOrder, GraphError> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    let n = g.vertex_count();
    let mut color = vec![Color::White; n];
    let mut postorder = Vec::with_capacity(n);
    // (vertex, next out-arc index); `via` holds the arc used to enter each stack frame
    let mut stack: Vec<(VertexId, usize)> = Vec::new();
    let mut via: Vec<ArcId> = Vec::new();
    for root in 0..n {
        if color[root] != Color::White {
            continue;
        }
        color[root] = Color::Gray;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&a) = g.out_arcs(v).get(*next) {
                *next += 1;
                let w = g.head(a);
                match color[w] {
                    Color::White => {
                        color[w] = Color::Gray;
                        stack.push((w, 0));
                        via.push(a);
                    }
                    Color::Gray => {
                        let start = stack.iter().position(|&(u, _)| u == w).unwrap();
                        let mut cycle: Vec<ArcId> = via[start..].to_vec();
                        cycle.push(a);
                        return Err(GraphError::Cyclic { cycle });
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                postorder.push(v);
                stack.pop();
                via.pop();
            }
        }
    }
    postorder.reverse();
    let mut rank = vec![0; n];
    for (i, &v) in postorder.iter().enumerate() {
        rank[v] = i;
    }
    Ok(TopologicalOrder {
        rank,
        order: postorder,
    })
}

/// Membership mask of the vertices reachable from `start`.
pub fn reachable_set(g: &Digraph, start: VertexId, direction: Direction) -> Vec<bool> {
    reachable_avoiding(g, start, direction, None)
}

/// Like [`reachable_set`] but never uses `skip_arc`.
pub fn reachable_avoiding(
    g: &Digraph,
    start: VertexId,
    direction: Direction,
    skip_arc: Option<ArcId>,
) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let arcs = match direction {
            Direction::Forward => g.out_arcs(v),
            Direction::Backward => g.in_arcs(v),
        };
        for &a in arcs {
            if Some(a) == skip_arc {
                continue;
            }
            let w = match direction {
                Direction::Forward => g.head(a),
                Direction::Backward => g.tail(a),
            };
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// New-to-old id maps produced by subgraph operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreMap {
    pub vertex_to_old: Vec<VertexId>,
    pub arc_to_old: Vec<ArcId>,
}

/// Restricts to vertices that lie on some s-t walk and arcs between them.
pub fn trim_to_core(inst: &StInstance) -> Result<(StInstance, CoreMap), GraphError> {
    let g = &inst.graph;
    let from_s = reachable_set(g, inst.s, Direction::Forward);
    if !from_s[inst.t] {
        return Err(GraphError::Disconnected);
    }
    let to_t = reachable_set(g, inst.t, Direction::Backward);
    let keep_vertex: Vec<bool> = (0..g.vertex_count())
        .map(|v| from_s[v] && to_t[v])
        .collect();
    let keep_arc: Vec<bool> = g
        .arcs()
        .iter()
        .map(|a| keep_vertex[a.tail] && keep_vertex[a.head])
        .collect();
    let (graph, vertex_to_old, arc_to_old) = g.restrict(&keep_vertex, &keep_arc);
    let pos = |old: VertexId| vertex_to_old.iter().position(|&v| v == old).unwrap();
    let trimmed = StInstance {
        s: pos(inst.s),
        t: pos(inst.t),
        graph,
    };
    Ok((
        trimmed,
        CoreMap {
            vertex_to_old,
            arc_to_old,
        },
    ))
}

/// An instance with all direct s->t arcs removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub instance: StInstance,
    /// Ids (in the original instance) of the removed direct arcs.
    pub direct_arcs: Vec<ArcId>,
    pub arc_to_old: Vec<ArcId>,
}

impl Normalized {
    pub fn direct_arc_count(&self) -> usize {
        self.direct_arcs.len()
    }
}

/// Removes every s->t arc. Each such arc is a one-arc path disjoint from all
/// other paths, so ADP for `k` on the input equals ADP for `k - c` on the
/// result.
pub fn normalize_adp(inst: &StInstance) -> Normalized {
    let g = &inst.graph;
    let is_direct = |a: ArcId| g.tail(a) == inst.s && g.head(a) == inst.t;
    let keep_vertex = vec![true; g.vertex_count()];
    let keep_arc: Vec<bool> = (0..g.arc_count()).map(|a| !is_direct(a)).collect();
    let (graph, _, arc_to_old) = g.restrict(&keep_vertex, &keep_arc);
    Normalized {
        instance: StInstance {
            graph,
            s: inst.s,
            t: inst.t,
        },
        direct_arcs: (0..g.arc_count()).filter(|&a| is_direct(a)).collect(),
        arc_to_old,
    }
}

/// A direct arc is a length-one path that no pair can cover.
pub fn sfp_guard(inst: &StInstance) -> Result<(), GraphError> {
    if inst.graph.find_arc(inst.s, inst.t).is_some() {
        Err(GraphError::Inseparable)
    } else {
        Ok(())
    }
}

/// All simple s-t paths in lexicographic order of their arc-id sequences.
pub fn enumerate_st_paths(inst: &StInstance, cap: usize) -> Result<Vec<ArcPath>, GraphError> {
    let g = &inst.graph;
    let to_t = reachable_set(g, inst.t, Direction::Backward);
    let mut paths = Vec::new();
    if !to_t[inst.s] {
        return Ok(paths);
    }
    let mut on_path = vec![false; g.vertex_count()];
    let mut arcs: Vec<ArcId> = Vec::new();
    let mut stack: Vec<(VertexId, usize)> = vec![(inst.s, 0)];
    on_path[inst.s] = true;
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if v == inst.t {
            paths.push(ArcPath(arcs.clone()));
            if paths.len() > cap {
                return Err(GraphError::CapExceeded { cap });
            }
            on_path[v] = false;
            stack.pop();
            arcs.pop();
            continue;
        }
        if let Some(&a) = g.out_arcs(v).get(*next) {
            *next += 1;
            let w = g.head(a);
            if !on_path[w] && to_t[w] {
                on_path[w] = true;
                arcs.push(a);
                stack.push((w, 0));
            }
        } else {
            on_path[v] = false;
            stack.pop();
            arcs.pop();
        }
    }
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn diamond() -> StInstance {
        // s=0, a=1, b=2, t=3
        StInstance::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap()
    }

    #[test]
    fn topo_chain_and_cycle() {
        let g = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(topological_order(&g).unwrap().rank, vec![0, 1, 2]);
        let c = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(
            topological_order(&c),
            Err(GraphError::Cyclic { cycle: vec![0, 1] })
        );
    }

    #[test]
    fn topo_cycle_evidence_is_a_cycle() {
        let g = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 3), (3, 1), (3, 4)]).unwrap();
        let Err(GraphError::Cyclic { cycle }) = topological_order(&g) else {
            panic!("expected a cycle");
        };
        for w in cycle.windows(2) {
            assert_eq!(g.head(w[0]), g.tail(w[1]));
        }
        assert_eq!(g.head(*cycle.last().unwrap()), g.tail(cycle[0]));
    }

    #[test]
    fn reachability() {
        let mut inst = diamond();
        inst.graph.add_vertex();
        let fwd = reachable_set(&inst.graph, 0, Direction::Forward);
        let bwd = reachable_set(&inst.graph, 3, Direction::Backward);
        assert_eq!(fwd, vec![true, true, true, true, false]);
        assert_eq!(bwd, vec![true, true, true, true, false]);
    }

    #[test]
    fn trim_removes_dangling_parts() {
        // x=4 hangs off a; u=5 points into s
        let inst = StInstance::from_arcs(6, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (5, 0)], 0, 3)
            .unwrap();
        let (core, map) = trim_to_core(&inst).unwrap();
        assert_eq!(core.graph.vertex_count(), 4);
        assert_eq!(map.arc_to_old, vec![0, 1, 2, 3]);
        assert_eq!(map.vertex_to_old, vec![0, 1, 2, 3]);
        let (again, _) = trim_to_core(&core).unwrap();
        assert_eq!(again, core);
    }

    #[test]
    fn trim_disconnected() {
        let inst = StInstance::from_arcs(3, [(0, 1)], 0, 2).unwrap();
        assert_eq!(trim_to_core(&inst), Err(GraphError::Disconnected));
    }

    #[test]
    fn normalize_counts_direct_arcs() {
        let inst = StInstance::from_arcs(4, [(0, 3), (0, 1), (0, 2), (1, 3), (2, 3), (0, 3)], 0, 3)
            .unwrap();
        let norm = normalize_adp(&inst);
        assert_eq!(norm.direct_arc_count(), 2);
        assert_eq!(norm.direct_arcs, vec![0, 5]);
        assert_eq!(norm.instance.graph.arc_count(), 4);
        let plain = normalize_adp(&diamond());
        assert_eq!(plain.direct_arc_count(), 0);
        assert_eq!(plain.instance, diamond());
    }

    #[test]
    fn guard() {
        assert_eq!(sfp_guard(&diamond()), Ok(()));
        let direct = StInstance::from_arcs(2, [(0, 1)], 0, 1).unwrap();
        assert_eq!(sfp_guard(&direct), Err(GraphError::Inseparable));
        let empty = StInstance::new(Digraph::new(2), 0, 1).unwrap();
        assert_eq!(sfp_guard(&empty), Ok(()));
    }

    #[test]
    fn enumeration_order_and_cap() {
        let paths = enumerate_st_paths(&diamond(), 10).unwrap();
        assert_eq!(paths, vec![ArcPath(vec![0, 2]), ArcPath(vec![1, 3])]);
        let chain = StInstance::from_arcs(3, [(0, 1), (0, 1), (1, 2), (1, 2)], 0, 2).unwrap();
        let paths = enumerate_st_paths(&chain, 10).unwrap();
        assert_eq!(paths.len(), 4);
        let mut sorted = paths.clone();
        sorted.sort();
        assert_eq!(paths, sorted);
        assert_eq!(
            enumerate_st_paths(&chain, 3),
            Err(GraphError::CapExceeded { cap: 3 })
        );
    }

    #[test]
    fn trimmed_arcs_are_exactly_path_arcs_on_dag() {
        let inst = StInstance::from_arcs(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 5),
                (0, 3),
                (3, 4),
                (4, 1),
                (3, 5),
                (4, 2),
                (5, 4),
            ],
            0,
            2,
        )
        .unwrap();
        // arc 5->4 and 2->5 make a cycle through 4,2,5; drop the last arc for the DAG case
        let dag = StInstance::from_arcs(
            6,
            [
                (0, 1),
                (1, 2),
                (2, 5),
                (0, 3),
                (3, 4),
                (4, 1),
                (3, 5),
                (4, 2),
            ],
            0,
            2,
        )
        .unwrap();
        assert!(!inst.is_acyclic());
        let (core, map) = trim_to_core(&dag).unwrap();
        let kept: BTreeSet<_> = map.arc_to_old.iter().copied().collect();
        let on_paths: BTreeSet<_> = enumerate_st_paths(&dag, 100)
            .unwrap()
            .into_iter()
            .flat_map(|p| p.0)
            .collect();
        assert_eq!(kept, on_paths);
        assert!(core.is_acyclic());
    }
}
