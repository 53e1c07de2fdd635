//! Simple undirected graphs and an exact independent-set oracle.

use serde::{Deserialize, Serialize};

use super::ReductionError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UndirectedDoc", into = "UndirectedDoc")]
pub struct UndirectedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct UndirectedDoc {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<UndirectedDoc> for UndirectedGraph {
    type Error = ReductionError;
    fn try_from(d: UndirectedDoc) -> Result<Self, ReductionError> {
        UndirectedGraph::new(d.vertex_count, d.edges)
    }
}

impl From<UndirectedGraph> for UndirectedDoc {
    fn from(g: UndirectedGraph) -> Self {
        UndirectedDoc {
            vertex_count: g.vertex_count,
            edges: g.edges,
        }
    }
}

impl UndirectedGraph {
    /// Edge order is kept as given; it fixes the gadget order downstream.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(ReductionError::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range"
                )));
            }
            if u == v {
                return Err(ReductionError::InvalidGraph(format!("loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ReductionError::InvalidGraph(format!(
                    "duplicate edge ({u}, {v})"
                )));
            }
        }
        Ok(UndirectedGraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Indices of the edges at `u`, increasing.
    pub fn incident_edges(&self, u: usize) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].0 == u || self.edges[e].1 == u)
            .collect()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.incident_edges(u).len()
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|(u, v)| !(set.contains(u) && set.contains(v)))
    }

    /// Every simple graph on `n` labelled vertices with at most
    /// `max_edges` edges, edges in lexicographic order.
    pub fn all_simple(n: usize, max_edges: usize) -> Vec<UndirectedGraph> {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << slots.len()) {
            if mask.count_ones() as usize > max_edges {
                continue;
            }
            let edges = (0..slots.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| slots[i])
                .collect();
            out.push(UndirectedGraph {
                vertex_count: n,
                edges,
            });
        }
        out
    }
}

pub const BRUTE_ALPHA_MAX_VERTICES: usize = 20;

/// Size of a maximum independent set.
pub fn brute_alpha(h: &UndirectedGraph) -> Result<usize, ReductionError> {
    let n = h.vertex_count;
    if n > BRUTE_ALPHA_MAX_VERTICES {
        return Err(ReductionError::TooLarge {
            vertices: n,
            max: BRUTE_ALPHA_MAX_VERTICES,
        });
    }
    let mut nbr = vec![0u32; n];
    for &(u, v) in &h.edges {
        nbr[u] |= 1 << v;
        nbr[v] |= 1 << u;
    }
    fn go(nbr: &[u32], avail: u32, size: usize, best: &mut usize) {
        if size + avail.count_ones() as usize <= *best {
            return;
        }
        if avail == 0 {
            *best = size;
            return;
        }
        // branch on a vertex of maximum remaining degree
        let v = (0..nbr.len())
            .filter(|&v| avail >> v & 1 == 1)
            .max_by_key(|&v| ((nbr[v] & avail).count_ones(), std::cmp::Reverse(v)))
            .unwrap();
        if nbr[v] & avail == 0 {
            go(nbr, avail & !(1 << v), size + 1, best);
            return;
        }
        go(nbr, avail & !(1 << v) & !nbr[v], size + 1, best);
        go(nbr, avail & !(1 << v), size, best);
    }
    let mut best = 0;
    go(&nbr, (1u32 << n) - 1, 0, &mut best);
    Ok(best)
}
