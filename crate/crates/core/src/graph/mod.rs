//! Directed multigraphs with stable arc identifiers.
//!
//! Arc identity is positional: the `i`-th arc added to a [`Digraph`] has id
//! `i` forever. Parallel arcs are ordinary arcs that happen to share their
//! endpoints, so every algorithm in this crate can tell them apart.

mod algo;
pub mod codec;
pub mod flow;

pub use algo::{
    enumerate_st_paths, normalize_adp, reachable_avoiding, reachable_set, sfp_guard,
    topological_order, trim_to_core, CoreMap, Direction, Normalized, TopologicalOrder,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (vertex_count = {vertex_count})")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("source and target coincide ({0})")]
    SourceIsTarget(VertexId),
    #[error("graph contains a directed cycle through arcs {cycle:?}")]
    Cyclic { cycle: Vec<ArcId> },
    #[error("target is not reachable from the source")]
    Disconnected,
    #[error("the direct arc s->t makes the instance inseparable")]
    Inseparable,
    #[error("more than {cap} s-t paths")]
    CapExceeded { cap: usize },
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

/// A directed multigraph with in- and out-adjacency lists.
///
/// Adjacency lists hold arc ids in increasing order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    arcs: Vec<Arc>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl Digraph {
    pub fn new(vertex_count: usize) -> Self {
        Digraph {
            arcs: Vec::new(),
            out_arcs: vec![Vec::new(); vertex_count],
            in_arcs: vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph from an arc list, validating endpoints.
    pub fn from_arcs(
        vertex_count: usize,
        arcs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Digraph::new(vertex_count);
        for (tail, head) in arcs {
            g.try_add_arc(tail, head)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.out_arcs.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.out_arcs.push(Vec::new());
        self.in_arcs.push(Vec::new());
        self.out_arcs.len() - 1
    }

    pub fn try_add_arc(&mut self, tail: VertexId, head: VertexId) -> Result<ArcId, GraphError> {
        let n = self.vertex_count();
        for v in [tail, head] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertex_count: n,
                });
            }
        }
        if tail == head {
            return Err(GraphError::SelfLoop(tail));
        }
        let id = self.arcs.len();
        self.arcs.push(Arc { tail, head });
        self.out_arcs[tail].push(id);
        self.in_arcs[head].push(id);
        Ok(id)
    }

    /// Adds an arc between existing, distinct vertices.
    ///
    /// Panics on invalid endpoints; generators use this, parsers use
    /// [`Digraph::try_add_arc`].
    pub fn add_arc(&mut self, tail: VertexId, head: VertexId) -> ArcId {
        self.try_add_arc(tail, head)
            .unwrap_or_else(|e| panic!("add_arc({tail}, {head}): {e}"))
    }

    /// Adds `count` parallel arcs and returns their ids.
    pub fn add_parallel(&mut self, tail: VertexId, head: VertexId, count: usize) -> Vec<ArcId> {
        (0..count).map(|_| self.add_arc(tail, head)).collect()
    }

    pub fn arc(&self, a: ArcId) -> Arc {
        self.arcs[a]
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a].tail
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a].head
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_arcs[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_arcs[v].len()
    }

    /// Lowest-id arc from `tail` to `head`, if any.
    pub fn find_arc(&self, tail: VertexId, head: VertexId) -> Option<ArcId> {
        self.out_arcs[tail]
            .iter()
            .copied()
            .find(|&a| self.arcs[a].head == head)
    }

    /// Subgraph on the vertices with `keep_vertex[v]` and arcs with
    /// `keep_arc[a]` (whose endpoints must both be kept). Returns the
    /// graph and the new-to-old id maps.
    pub(crate) fn restrict(
        &self,
        keep_vertex: &[bool],
        keep_arc: &[bool],
    ) -> (Digraph, Vec<VertexId>, Vec<ArcId>) {
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        let mut vertex_to_old = Vec::new();
        for v in 0..self.vertex_count() {
            if keep_vertex[v] {
                new_id[v] = vertex_to_old.len();
                vertex_to_old.push(v);
            }
        }
        let mut g = Digraph::new(vertex_to_old.len());
        let mut arc_to_old = Vec::new();
        for (a, arc) in self.arcs.iter().enumerate() {
            if keep_arc[a] {
                debug_assert!(keep_vertex[arc.tail] && keep_vertex[arc.head]);
                g.add_arc(new_id[arc.tail], new_id[arc.head]);
                arc_to_old.push(a);
            }
        }
        (g, vertex_to_old, arc_to_old)
    }

    /// Graphviz rendering, one edge per arc labelled with its id.
    pub fn to_dot(&self, s: Option<VertexId>, t: Option<VertexId>) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 0..self.vertex_count() {
            let label = if Some(v) == s {
                format!("{v} (s)")
            } else if Some(v) == t {
                format!("{v} (t)")
            } else {
                v.to_string()
            };
            out.push_str(&format!("  {v} [label=\"{label}\"];\n"));
        }
        for (id, arc) in self.arcs.iter().enumerate() {
            out.push_str(&format!(
                "  {} -> {} [label=\"{id}\"];\n",
                arc.tail, arc.head
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// A digraph with designated source and target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StInstance {
    pub graph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
}

impl StInstance {
    pub fn new(graph: Digraph, s: VertexId, t: VertexId) -> Result<Self, GraphError> {
        let n = graph.vertex_count();
        for v in [s, t] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange {
                    vertex: v,
                    vertex_count: n,
                });
            }
        }
        if s == t {
            return Err(GraphError::SourceIsTarget(s));
        }
        Ok(StInstance { graph, s, t })
    }

    /// Shorthand used throughout tests and generators.
    pub fn from_arcs(
        vertex_count: usize,
        arcs: impl IntoIterator<Item = (VertexId, VertexId)>,
        s: VertexId,
        t: VertexId,
    ) -> Result<Self, GraphError> {
        StInstance::new(Digraph::from_arcs(vertex_count, arcs)?, s, t)
    }

    pub fn is_acyclic(&self) -> bool {
        topological_order(&self.graph).is_ok()
    }
}

/// A path given as its arc sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcPath(pub Vec<ArcId>);

impl ArcPath {
    pub fn arcs(&self) -> &[ArcId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: ArcId) -> bool {
        self.0.contains(&a)
    }

    /// Vertex sequence; `None` if the arcs do not chain.
    pub fn vertices(&self, g: &Digraph) -> Option<Vec<VertexId>> {
        let first = *self.0.first()?;
        let mut vs = vec![g.tail(first)];
        for &a in &self.0 {
            if a >= g.arc_count() || g.tail(a) != *vs.last()? {
                return None;
            }
            vs.push(g.head(a));
        }
        Some(vs)
    }

    /// Checks that the arcs chain into a simple path.
    pub fn validate(&self, g: &Digraph) -> Result<(), GraphError> {
        if self.0.iter().any(|&a| a >= g.arc_count()) {
            return Err(GraphError::InvalidPath("arc id out of range".into()));
        }
        let vs = self
            .vertices(g)
            .ok_or_else(|| GraphError::InvalidPath(format!("arcs {:?} do not chain", self.0)))?;
        let mut seen = vec![false; g.vertex_count()];
        for v in vs {
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::InvalidPath(format!("vertex {v} repeats")));
            }
        }
        Ok(())
    }

    /// Checks that this is a simple path from `inst.s` to `inst.t`.
    pub fn validate_st(&self, inst: &StInstance) -> Result<(), GraphError> {
        self.validate(&inst.graph)?;
        let g = &inst.graph;
        if g.tail(self.0[0]) != inst.s || g.head(*self.0.last().unwrap()) != inst.t {
            return Err(GraphError::InvalidPath("does not run from s to t".into()));
        }
        Ok(())
    }

    pub fn is_st_path(&self, inst: &StInstance) -> bool {
        self.validate_st(inst).is_ok()
    }
}

impl From<Vec<ArcId>> for ArcPath {
    fn from(v: Vec<ArcId>) -> Self {
        ArcPath(v)
    }
}
