//! Independent set to ADP: one 18-vertex gadget per edge of `H`.
//!
//! `H` has an independent set of size `kappa` iff the generated DAG has
//! `2m + kappa` almost disjoint s-t paths.

use serde::Serialize;

use super::undirected::UndirectedGraph;
use super::ReductionError;
use crate::graph::{ArcPath, Digraph, StInstance, VertexId};

/// Vertex ids of one edge gadget. Inputs `u`, `v`, `h1`, `h2`, outputs
/// `u_out`, `v_out`, `h1_out`, `h2_out`; the rest is interior.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EdgeGadget {
    pub u: VertexId,
    pub v: VertexId,
    pub h1: VertexId,
    pub h2: VertexId,
    pub u_out: VertexId,
    pub v_out: VertexId,
    pub h1_out: VertexId,
    pub h2_out: VertexId,
    pub xl1: VertexId,
    pub xl2: VertexId,
    pub yl1: VertexId,
    pub yl2: VertexId,
    pub zl: VertexId,
    pub zr: VertexId,
    pub yr1: VertexId,
    pub yr2: VertexId,
    pub xr1: VertexId,
    pub xr2: VertexId,
}

pub const GADGET_ROLES: [&str; 18] = [
    "u", "v", "h1", "h2", "u'", "v'", "h1'", "h2'", "xL1", "xL2", "yL1", "yL2", "zL", "zR", "yR1",
    "yR2", "xR1", "xR2",
];

impl EdgeGadget {
    fn at(base: VertexId) -> Self {
        let r = |i: usize| base + i;
        EdgeGadget {
            u: r(0),
            v: r(1),
            h1: r(2),
            h2: r(3),
            u_out: r(4),
            v_out: r(5),
            h1_out: r(6),
            h2_out: r(7),
            xl1: r(8),
            xl2: r(9),
            yl1: r(10),
            yl2: r(11),
            zl: r(12),
            zr: r(13),
            yr1: r(14),
            yr2: r(15),
            xr1: r(16),
            xr2: r(17),
        }
    }

    pub fn role(&self, name: &str) -> Option<VertexId> {
        GADGET_ROLES
            .iter()
            .position(|&r| r == name)
            .map(|i| self.vertices()[i])
    }

    /// In [`GADGET_ROLES`] order.
    pub fn vertices(&self) -> [VertexId; 18] {
        [
            self.u,
            self.v,
            self.h1,
            self.h2,
            self.u_out,
            self.v_out,
            self.h1_out,
            self.h2_out,
            self.xl1,
            self.xl2,
            self.yl1,
            self.yl2,
            self.zl,
            self.zr,
            self.yr1,
            self.yr2,
            self.xr1,
            self.xr2,
        ]
    }

    pub fn arcs(&self) -> [(VertexId, VertexId); 19] {
        [
            (self.u, self.xl1),
            (self.h1, self.xl1),
            (self.v, self.xl2),
            (self.h2, self.xl2),
            (self.xl1, self.yl1),
            (self.xl2, self.yl2),
            (self.yl1, self.zl),
            (self.yl1, self.yr2),
            (self.yl2, self.zl),
            (self.yl2, self.yr1),
            (self.zl, self.zr),
            (self.zr, self.yr1),
            (self.zr, self.yr2),
            (self.yr1, self.xr1),
            (self.yr2, self.xr2),
            (self.xr1, self.h2_out),
            (self.xr1, self.u_out),
            (self.xr2, self.h1_out),
            (self.xr2, self.v_out),
        ]
    }

    /// The `u`-`u'` route, or the `v`-`v'` route when `first` is false.
    fn vertex_route(&self, first: bool) -> [VertexId; 8] {
        if first {
            [
                self.u, self.xl1, self.yl1, self.zl, self.zr, self.yr1, self.xr1, self.u_out,
            ]
        } else {
            [
                self.v, self.xl2, self.yl2, self.zl, self.zr, self.yr2, self.xr2, self.v_out,
            ]
        }
    }

    fn aux_routes(&self) -> [[VertexId; 6]; 2] {
        [
            [self.h1, self.xl1, self.yl1, self.yr2, self.xr2, self.h1_out],
            [self.h2, self.xl2, self.yl2, self.yr1, self.xr1, self.h2_out],
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdpReductionMeta {
    pub m: usize,
    pub s: VertexId,
    pub t: VertexId,
    pub v_v: VertexId,
    pub v_e: VertexId,
    /// The copy of each vertex of `H`.
    pub vertex: Vec<VertexId>,
    pub edges: Vec<(usize, usize)>,
    pub gadgets: Vec<EdgeGadget>,
    /// Incident edge indices of each vertex of `H`, increasing.
    pub chains: Vec<Vec<usize>>,
}

impl AdpReductionMeta {
    /// Number of paths that witnesses an independent set of size `kappa`.
    pub fn target(&self, kappa: usize) -> usize {
        2 * self.m + kappa
    }
}

pub fn gen_adp_instance(h: &UndirectedGraph) -> (StInstance, AdpReductionMeta) {
    let n = h.vertex_count();
    let m = h.edges().len();
    let (s, t, v_v, v_e) = (0, 1, 2, 3);
    let vertex: Vec<VertexId> = (0..n).map(|u| 4 + u).collect();
    let gadgets: Vec<EdgeGadget> = (0..m).map(|e| EdgeGadget::at(4 + n + 18 * e)).collect();
    let chains: Vec<Vec<usize>> = (0..n).map(|u| h.incident_edges(u)).collect();

    let mut g = Digraph::new(4 + n + 18 * m);
    g.add_arc(s, v_v);
    g.add_arc(s, v_e);
    for &x in &vertex {
        g.add_arc(v_v, x);
    }
    for gd in &gadgets {
        g.add_arc(v_e, gd.h1);
        g.add_arc(v_e, gd.h2);
        for (a, b) in gd.arcs() {
            g.add_arc(a, b);
        }
        g.add_arc(gd.h1_out, t);
        g.add_arc(gd.h2_out, t);
    }
    for u in 0..n {
        let mut at = vertex[u];
        for &e in &chains[u] {
            let (input, output) = endpoint_ports(&gadgets[e], h.edges()[e], u);
            g.add_arc(at, input);
            at = output;
        }
        g.add_arc(at, t);
    }
    let inst = StInstance::new(g, s, t).expect("s != t");
    let meta = AdpReductionMeta {
        m,
        s,
        t,
        v_v,
        v_e,
        vertex,
        edges: h.edges().to_vec(),
        gadgets,
        chains,
    };
    (inst, meta)
}

/// Input and output port of `u` in the gadget of `edge`.
fn endpoint_ports(gd: &EdgeGadget, edge: (usize, usize), u: usize) -> (VertexId, VertexId) {
    if edge.0 == u {
        (gd.u, gd.u_out)
    } else {
        (gd.v, gd.v_out)
    }
}

fn path_through(g: &Digraph, vertices: &[VertexId]) -> ArcPath {
    ArcPath(
        vertices
            .windows(2)
            .map(|w| g.find_arc(w[0], w[1]).expect("arc of the construction"))
            .collect(),
    )
}

/// The `2m` auxiliary paths followed by the vertex path of each member of
/// `set` (in increasing order).
pub fn independent_set_paths(
    inst: &StInstance,
    meta: &AdpReductionMeta,
    set: &[usize],
) -> Result<Vec<ArcPath>, ReductionError> {
    let mut members = set.to_vec();
    members.sort_unstable();
    members.dedup();
    if let Some(&(a, b)) = meta
        .edges
        .iter()
        .find(|(a, b)| members.contains(a) && members.contains(b))
    {
        return Err(ReductionError::NotIndependent(a, b));
    }
    if let Some(&u) = members.iter().find(|&&u| u >= meta.vertex.len()) {
        return Err(ReductionError::InvalidGraph(format!(
            "vertex {u} out of range"
        )));
    }
    let g = &inst.graph;
    let mut out = Vec::with_capacity(2 * meta.m + members.len());
    for gd in &meta.gadgets {
        for route in gd.aux_routes() {
            let mut vs = vec![meta.s, meta.v_e];
            vs.extend(route);
            vs.push(meta.t);
            out.push(path_through(g, &vs));
        }
    }
    for &u in &members {
        let mut vs = vec![meta.s, meta.v_v, meta.vertex[u]];
        for &e in &meta.chains[u] {
            let first = meta.edges[e].0 == u;
            vs.extend(meta.gadgets[e].vertex_route(first));
        }
        vs.push(meta.t);
        out.push(path_through(g, &vs));
    }
    Ok(out)
}

/// Prepends `v_1 -> ... -> v_{l-1} -> s` and makes `v_1` the source, so
/// that paths sharing at most `l` arcs in the result correspond to almost
/// disjoint paths of `inst`. Existing vertex and arc ids are kept.
pub fn gen_tail_extension(inst: &StInstance, l: usize) -> StInstance {
    assert!(l >= 1, "tail extension needs l >= 1");
    if l == 1 {
        return inst.clone();
    }
    let mut g = inst.graph.clone();
    let first = g.add_vertex();
    let mut at = first;
    for _ in 1..l - 1 {
        let next = g.add_vertex();
        g.add_arc(at, next);
        at = next;
    }
    g.add_arc(at, inst.s);
    StInstance::new(g, first, inst.t).expect("new source differs from t")
}
