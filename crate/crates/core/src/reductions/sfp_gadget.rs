//! Sigma_2 3-DNF satisfiability to SFP.
//!
//! One formula gadget, one variable gadget per x-variable and one
//! inconsistency gadget per inconsistent pair of local assignments, glued
//! by typification bunches. The formula is satisfiable iff `k` pairs
//! separate the generated DAG.

use serde::Serialize;

use super::formula::{
    find_inconsistencies, sigma2_eval, Formula3DNF, Inconsistency, LocalAssignment,
};
use super::ReductionError;
use crate::graph::{ArcId, ArcPath, Digraph, StInstance, VertexId};
use crate::sfp::{Pair, PairSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InconsistencyGadget {
    pub inconsistency: Inconsistency,
    pub source: VertexId,
    /// `v1..v4`.
    pub v: [VertexId; 4],
    pub sink: VertexId,
    /// `v1 v2`, used by the unit of the earlier clause.
    pub first: ArcId,
    /// `v3 v4`, used by the unit of the later clause.
    pub second: ArcId,
}

impl InconsistencyGadget {
    pub fn pair(&self) -> Pair {
        (self.first, self.second)
    }
}

/// Row `j` of a variable gadget. `v[c]` is `v_{j,c+1}`; row 0 has no
/// `v_{0,4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetRow {
    pub v: [Option<VertexId>; 7],
    pub a12: ArcId,
    pub a23: ArcId,
    pub a56: ArcId,
    pub a67: ArcId,
    /// `v_{0,3} v_{j,4}` and `v_{j,4} v_{0,5}`; absent on row 0.
    pub cross: Option<[ArcId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariableGadget {
    pub source: VertexId,
    pub sink: VertexId,
    pub rows: Vec<GadgetRow>,
}

impl VariableGadget {
    /// The family chosen when the variable is true.
    pub fn family_true(&self) -> Vec<Pair> {
        self.rows.iter().map(|r| (r.a12, r.a23)).collect()
    }

    /// The family chosen when the variable is false.
    pub fn family_false(&self) -> Vec<Pair> {
        self.rows.iter().map(|r| (r.a56, r.a67)).collect()
    }
}

/// The `v^L`-`t^L` route through a variable gadget for one x-literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Detour {
    pub variable: usize,
    pub row: usize,
    pub negated: bool,
    /// `v^L` into the row, the two row arcs, out of the row to `t^L`.
    pub arcs: [ArcId; 4],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssignmentUnit {
    pub local: LocalAssignment,
    pub source: VertexId,
    pub mid: VertexId,
    pub sink: VertexId,
    /// `P^L`, from `s^L` to `v^L`.
    pub path: Vec<ArcId>,
    /// `v^L t^L`, present iff the local falsifies a y-literal.
    pub shortcut: Option<ArcId>,
    pub detours: Vec<Detour>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaGadget {
    pub source: VertexId,
    pub sink: VertexId,
    /// Unit indices per clause, by pattern.
    pub layers: Vec<Vec<usize>>,
}

/// Typification arcs. Gadget 0 is the formula gadget, then the variable
/// gadgets, then the inconsistency gadgets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Typification {
    pub ends: Vec<(VertexId, VertexId)>,
    /// `p` arcs `s -> source_g` per gadget.
    pub entry: Vec<Vec<ArcId>>,
    /// `p` arcs `sink_g -> t` per gadget.
    pub exit: Vec<Vec<ArcId>>,
    /// `p + 1` arcs `source_g -> sink_h` for `g != h`.
    pub diagonals: Vec<((usize, usize), Vec<ArcId>)>,
}

impl Typification {
    pub fn arc_count(&self) -> usize {
        self.entry
            .iter()
            .chain(&self.exit)
            .map(Vec::len)
            .sum::<usize>()
            + self.diagonals.iter().map(|(_, b)| b.len()).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SfpReductionMeta {
    pub formula: Formula3DNF,
    pub s: VertexId,
    pub t: VertexId,
    /// Occurrences of each x-variable.
    pub q: Vec<usize>,
    pub n_i: usize,
    pub p: usize,
    pub k0: usize,
    pub k: usize,
    pub formula_gadget: FormulaGadget,
    pub units: Vec<AssignmentUnit>,
    pub variables: Vec<VariableGadget>,
    pub inconsistencies: Vec<InconsistencyGadget>,
    pub typification: Typification,
}

impl SfpReductionMeta {
    pub fn gadget_count(&self) -> usize {
        1 + self.variables.len() + self.inconsistencies.len()
    }

    pub fn unit(&self, l: LocalAssignment) -> &AssignmentUnit {
        &self.units[self.formula_gadget.layers[l.clause][l.pattern as usize]]
    }

    /// The `k0` pairs `{s -> source_g, sink_h -> t}` for `g != h`.
    pub fn typification_pairs(&self) -> PairSet {
        let ty = &self.typification;
        let mut out = PairSet::new();
        for (g, entry) in ty.entry.iter().enumerate() {
            for (h, exit) in ty.exit.iter().enumerate() {
                if g != h {
                    for &a in entry {
                        for &b in exit {
                            out.insert(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn inconsistency_pairs(&self) -> PairSet {
        self.inconsistencies.iter().map(|g| g.pair()).collect()
    }
}

/// Closed form of the typification arc count for `gadgets` gadgets.
pub fn typification_arc_count(p: usize, gadgets: usize) -> usize {
    2 * p * gadgets + (p + 1) * gadgets * gadgets.saturating_sub(1)
}

fn add_inconsistency_gadget(g: &mut Digraph, inconsistency: Inconsistency) -> InconsistencyGadget {
    let source = g.add_vertex();
    let v = [
        g.add_vertex(),
        g.add_vertex(),
        g.add_vertex(),
        g.add_vertex(),
    ];
    let sink = g.add_vertex();
    g.add_parallel(source, v[0], 2);
    let first = g.add_arc(v[0], v[1]);
    g.add_parallel(v[1], v[2], 2);
    let second = g.add_arc(v[2], v[3]);
    g.add_parallel(v[3], sink, 2);
    InconsistencyGadget {
        inconsistency,
        source,
        v,
        sink,
        first,
        second,
    }
}

fn add_variable_gadget(g: &mut Digraph, q: usize) -> VariableGadget {
    let source = g.add_vertex();
    let sink = g.add_vertex();
    let mut rows: Vec<GadgetRow> = Vec::with_capacity(q + 1);
    for j in 0..=q {
        let mut v = [None; 7];
        for (c, slot) in v.iter_mut().enumerate() {
            if j > 0 || c != 3 {
                *slot = Some(g.add_vertex());
            }
        }
        let at = |c: usize| v[c].unwrap();
        g.add_parallel(source, at(0), 2);
        let a12 = g.add_arc(at(0), at(1));
        let a23 = g.add_arc(at(1), at(2));
        if j == 0 {
            g.add_parallel(at(2), at(4), 2);
        } else {
            g.add_parallel(at(2), at(3), 2);
            g.add_parallel(at(3), at(4), 2);
        }
        let a56 = g.add_arc(at(4), at(5));
        let a67 = g.add_arc(at(5), at(6));
        g.add_parallel(at(6), sink, 2);
        let cross = if j == 0 {
            None
        } else {
            let r0 = &rows[0].v;
            let (v03, v05) = (r0[2].unwrap(), r0[4].unwrap());
            Some([g.add_arc(v03, at(3)), g.add_arc(at(3), v05)])
        };
        rows.push(GadgetRow {
            v,
            a12,
            a23,
            a56,
            a67,
            cross,
        });
    }
    VariableGadget { source, sink, rows }
}

/// A lone inconsistency gadget between its own source and sink, with the
/// pair `{v1 v2, v3 v4}`.
pub fn gen_inconsistency_gadget() -> (StInstance, Pair) {
    let mut g = Digraph::new(0);
    let dummy = LocalAssignment {
        clause: 0,
        pattern: 0,
    };
    let gd = add_inconsistency_gadget(&mut g, Inconsistency { a: dummy, b: dummy });
    let inst = StInstance::new(g, gd.source, gd.sink).expect("distinct ends");
    (inst, gd.pair())
}

/// A lone variable gadget with `q` occurrence rows and its two families.
pub fn gen_variable_gadget(q: usize) -> (StInstance, VariableGadget) {
    let mut g = Digraph::new(0);
    let gd = add_variable_gadget(&mut g, q);
    let inst = StInstance::new(g, gd.source, gd.sink).expect("distinct ends");
    (inst, gd)
}

pub fn gen_sfp_instance(
    phi: &Formula3DNF,
) -> Result<(StInstance, SfpReductionMeta), ReductionError> {
    phi.validate()?;
    let occurrences = phi.x_occurrences();
    let q: Vec<usize> = occurrences.iter().map(Vec::len).collect();
    let incs = find_inconsistencies(phi);

    let mut g = Digraph::new(2);
    let (s, t) = (0, 1);

    let inconsistencies: Vec<InconsistencyGadget> = incs
        .iter()
        .map(|&i| add_inconsistency_gadget(&mut g, i))
        .collect();
    let variables: Vec<VariableGadget> = q
        .iter()
        .map(|&qi| add_variable_gadget(&mut g, qi))
        .collect();

    let f_source = g.add_vertex();
    let f_sink = g.add_vertex();
    let mut units = Vec::new();
    let mut layers = Vec::new();
    for c in 0..phi.clauses.len() {
        let mut layer = Vec::new();
        for local in phi.local_assignments(c) {
            layer.push(units.len());
            units.push(add_unit(&mut g, phi, local, &incs, &inconsistencies));
        }
        layers.push(layer);
    }
    // detours, one per x-literal occurrence and unit of its clause
    for occs in &occurrences {
        for o in occs {
            let var = phi.clauses[o.clause][o.position].index;
            let r = &variables[var].rows[o.row];
            let (from, mid, to) = if o.negated {
                (r.v[4].unwrap(), [r.a56, r.a67], r.v[6].unwrap())
            } else {
                (r.v[0].unwrap(), [r.a12, r.a23], r.v[2].unwrap())
            };
            for &u in &layers[o.clause] {
                let into = g.add_arc(units[u].mid, from);
                let out = g.add_arc(to, units[u].sink);
                units[u].detours.push(Detour {
                    variable: var,
                    row: o.row,
                    negated: o.negated,
                    arcs: [into, mid[0], mid[1], out],
                });
            }
        }
    }
    for u in &mut units {
        u.detours.sort_by_key(|d| (d.variable, d.row));
    }
    if let Some(first) = layers.first() {
        for &u in first {
            g.add_arc(f_source, units[u].source);
        }
    }
    for w in layers.windows(2) {
        for &a in &w[0] {
            for &b in &w[1] {
                g.add_arc(units[a].sink, units[b].source);
            }
        }
    }
    if let Some(last) = layers.last() {
        for &u in last {
            g.add_arc(units[u].sink, f_sink);
        }
    }

    let p = q.iter().copied().max().unwrap_or(0) + 2;
    let mut ends = vec![(f_source, f_sink)];
    ends.extend(variables.iter().map(|v| (v.source, v.sink)));
    ends.extend(inconsistencies.iter().map(|i| (i.source, i.sink)));
    let entry: Vec<Vec<ArcId>> = ends.iter().map(|&(a, _)| g.add_parallel(s, a, p)).collect();
    let exit: Vec<Vec<ArcId>> = ends.iter().map(|&(_, b)| g.add_parallel(b, t, p)).collect();
    let mut diagonals = Vec::new();
    for (i, &(a, _)) in ends.iter().enumerate() {
        for (j, &(_, b)) in ends.iter().enumerate() {
            if i != j {
                diagonals.push(((i, j), g.add_parallel(a, b, p + 1)));
            }
        }
    }

    let gadgets = ends.len();
    let k0 = p * p * gadgets * (gadgets - 1);
    let k = k0 + incs.len() + q.iter().map(|qi| qi + 1).sum::<usize>();
    let inst = StInstance::new(g, s, t).expect("s != t");
    let meta = SfpReductionMeta {
        formula: phi.clone(),
        s,
        t,
        q,
        n_i: incs.len(),
        p,
        k0,
        k,
        formula_gadget: FormulaGadget {
            source: f_source,
            sink: f_sink,
            layers,
        },
        units,
        variables,
        inconsistencies,
        typification: Typification {
            ends,
            entry,
            exit,
            diagonals,
        },
    };
    Ok((inst, meta))
}

/// Unit vertices, `P^L` and the shortcut arc. Detours are added later.
fn add_unit(
    g: &mut Digraph,
    phi: &Formula3DNF,
    local: LocalAssignment,
    incs: &[Inconsistency],
    gadgets: &[InconsistencyGadget],
) -> AssignmentUnit {
    let source = g.add_vertex();
    let mid = g.add_vertex();
    let sink = g.add_vertex();
    let mut through: Vec<(LocalAssignment, usize)> = incs
        .iter()
        .enumerate()
        .filter(|(_, i)| i.involves(local))
        .map(|(n, i)| (i.partner(local), n))
        .collect();
    through.sort();
    let mut path = Vec::new();
    let mut at = source;
    for (partner, n) in through {
        let gd = &gadgets[n];
        let (a, b, arc) = if partner.clause > local.clause {
            (gd.v[0], gd.v[1], gd.first)
        } else {
            (gd.v[2], gd.v[3], gd.second)
        };
        path.push(g.add_arc(at, a));
        path.push(arc);
        at = b;
    }
    path.push(g.add_arc(at, mid));
    let shortcut = phi.falsifies_y_literal(local).then(|| g.add_arc(mid, sink));
    AssignmentUnit {
        local,
        source,
        mid,
        sink,
        path,
        shortcut,
        detours: Vec::new(),
    }
}

fn check_lengths(
    meta: &SfpReductionMeta,
    tx: &[bool],
    ty: Option<&[bool]>,
) -> Result<(), ReductionError> {
    if tx.len() != meta.formula.n_x {
        return Err(ReductionError::InvalidAssignment(format!(
            "expected {} x-values, got {}",
            meta.formula.n_x,
            tx.len()
        )));
    }
    if let Some(ty) = ty {
        if ty.len() != meta.formula.n_y {
            return Err(ReductionError::InvalidAssignment(format!(
                "expected {} y-values, got {}",
                meta.formula.n_y,
                ty.len()
            )));
        }
    }
    Ok(())
}

/// Typification pairs, one pair per inconsistency gadget, and per
/// variable the family picked by `tx`.
pub fn canonical_pairs(meta: &SfpReductionMeta, tx: &[bool]) -> Result<PairSet, ReductionError> {
    check_lengths(meta, tx, None)?;
    let mut out = meta.typification_pairs();
    out.extend(&meta.inconsistency_pairs());
    for (v, gd) in meta.variables.iter().enumerate() {
        let family = if tx[v] {
            gd.family_true()
        } else {
            gd.family_false()
        };
        for (a, b) in family {
            out.insert(a, b);
        }
    }
    Ok(out)
}

/// The s-t path for `(tx, ty)` that no canonical pair for `tx` covers.
/// `phi` must be false under `(tx, ty)`.
pub fn witness_path(
    inst: &StInstance,
    meta: &SfpReductionMeta,
    tx: &[bool],
    ty: &[bool],
) -> Result<ArcPath, ReductionError> {
    check_lengths(meta, tx, Some(ty))?;
    let phi = &meta.formula;
    if sigma2_eval(phi, tx, ty) {
        return Err(ReductionError::NotFalsifying);
    }
    let g = &inst.graph;
    let link = |a: VertexId, b: VertexId| g.find_arc(a, b).expect("layer link exists");
    let mut arcs = vec![meta.typification.entry[0][0]];
    let mut at = meta.formula_gadget.source;
    for c in 0..phi.clauses.len() {
        let unit = meta.unit(phi.restrict(c, ty));
        arcs.push(link(at, unit.source));
        arcs.extend(&unit.path);
        match unit.shortcut {
            Some(a) => arcs.push(a),
            None => {
                // every y-literal holds, so some x-literal is false
                let d = unit
                    .detours
                    .iter()
                    .find(|d| tx[d.variable] == d.negated)
                    .expect("a false x-literal has a detour");
                arcs.extend(d.arcs);
            }
        }
        at = unit.sink;
    }
    arcs.push(link(at, meta.formula_gadget.sink));
    arcs.push(meta.typification.exit[0][0]);
    Ok(ArcPath(arcs))
}
