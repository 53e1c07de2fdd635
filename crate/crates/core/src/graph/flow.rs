//! Integer flows on a [`Digraph`] by BFS augmenting paths.

use std::collections::VecDeque;

use super::{ArcId, Digraph, VertexId};

#[derive(Debug, Clone)]
pub struct FlowNetwork<'g> {
    graph: &'g Digraph,
    capacity: Vec<u32>,
    flow: Vec<u32>,
    value: u32,
    augmentations: usize,
}

impl<'g> FlowNetwork<'g> {
    pub fn new(graph: &'g Digraph, capacity: Vec<u32>) -> Self {
        assert_eq!(capacity.len(), graph.arc_count());
        FlowNetwork {
            graph,
            flow: vec![0; capacity.len()],
            capacity,
            value: 0,
            augmentations: 0,
        }
    }

    pub fn unit(graph: &'g Digraph) -> Self {
        FlowNetwork::new(graph, vec![1; graph.arc_count()])
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn flow(&self) -> &[u32] {
        &self.flow
    }

    pub fn capacity(&self) -> &[u32] {
        &self.capacity
    }

    /// Number of successful augmentations so far.
    pub fn augmentations(&self) -> usize {
        self.augmentations
    }

    /// Searches one shortest augmenting path and pushes up to `limit` units
    /// along it. Returns the amount pushed (0 if none exists).
    pub fn augment(&mut self, s: VertexId, t: VertexId, limit: u32) -> u32 {
        let g = self.graph;
        // pred[v] = (arc, forward?)
        let mut pred: Vec<Option<(ArcId, bool)>> = vec![None; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &a in g.out_arcs(v) {
                let w = g.head(a);
                if !seen[w] && self.flow[a] < self.capacity[a] {
                    seen[w] = true;
                    pred[w] = Some((a, true));
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
            for &a in g.in_arcs(v) {
                let w = g.tail(a);
                if !seen[w] && self.flow[a] > 0 {
                    seen[w] = true;
                    pred[w] = Some((a, false));
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] || limit == 0 {
            return 0;
        }
        let mut bottleneck = limit;
        let mut v = t;
        while v != s {
            let (a, fwd) = pred[v].unwrap();
            let room = if fwd {
                self.capacity[a] - self.flow[a]
            } else {
                self.flow[a]
            };
            bottleneck = bottleneck.min(room);
            v = if fwd { g.tail(a) } else { g.head(a) };
        }
        let mut v = t;
        while v != s {
            let (a, fwd) = pred[v].unwrap();
            if fwd {
                self.flow[a] += bottleneck;
                v = g.tail(a);
            } else {
                self.flow[a] -= bottleneck;
                v = g.head(a);
            }
        }
        self.value += bottleneck;
        self.augmentations += 1;
        bottleneck
    }

    /// Augments until the value reaches `target` or no path remains.
    pub fn run(&mut self, s: VertexId, t: VertexId, target: u32) -> u32 {
        while self.value < target {
            if self.augment(s, t, target - self.value) == 0 {
                break;
            }
        }
        self.value
    }

    /// Splits the current flow into unit s-t paths. Cycles met while
    /// tracing are cut out, so every returned path is simple. An arc with
    /// flow `f` is used by at most `f` of the returned paths.
    pub fn decompose(&self, s: VertexId, t: VertexId) -> Vec<Vec<ArcId>> {
        let g = self.graph;
        let mut rest = self.flow.clone();
        let mut paths = Vec::new();
        for _ in 0..self.value {
            let mut walk: Vec<ArcId> = Vec::new();
            let mut pos_of = vec![usize::MAX; g.vertex_count()];
            pos_of[s] = 0;
            let mut v = s;
            while v != t {
                let a = *g
                    .out_arcs(v)
                    .iter()
                    .find(|&&a| rest[a] > 0)
                    .expect("flow conservation");
                rest[a] -= 1;
                let w = g.head(a);
                walk.push(a);
                if pos_of[w] != usize::MAX {
                    // cut the cycle w -> ... -> w
                    let keep = pos_of[w];
                    for &b in &walk[keep..] {
                        pos_of[g.head(b)] = usize::MAX;
                    }
                    walk.truncate(keep);
                    pos_of[w] = keep;
                } else {
                    pos_of[w] = walk.len();
                }
                v = w;
            }
            paths.push(walk);
        }
        paths
    }

    /// Source side of a minimum cut: vertices reachable from `s` in the
    /// residual network. Only meaningful once the flow is maximum.
    pub fn residual_reachable(&self, s: VertexId) -> Vec<bool> {
        let g = self.graph;
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &a in g.out_arcs(v) {
                if !seen[g.head(a)] && self.flow[a] < self.capacity[a] {
                    seen[g.head(a)] = true;
                    queue.push_back(g.head(a));
                }
            }
            for &a in g.in_arcs(v) {
                if !seen[g.tail(a)] && self.flow[a] > 0 {
                    seen[g.tail(a)] = true;
                    queue.push_back(g.tail(a));
                }
            }
        }
        seen
    }

    /// Arcs leaving the residual-reachable set.
    pub fn min_cut_arcs(&self, s: VertexId) -> Vec<ArcId> {
        let side = self.residual_reachable(s);
        (0..self.graph.arc_count())
            .filter(|&a| side[self.graph.tail(a)] && !side[self.graph.head(a)])
            .collect()
    }
}
