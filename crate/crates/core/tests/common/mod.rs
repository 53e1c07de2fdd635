//! Seeded instance generators shared by the integration tests.

#![allow(dead_code)]

use pathsep::graph::{trim_to_core, Digraph, StInstance};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn diamond() -> StInstance {
    StInstance::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap()
}

/// Arcs go from lower to higher ids; `s = 0`, `t = n - 1`. Parallel arcs
/// are allowed, direct s-t arcs only when `n == 2`.
pub fn random_dag(r: &mut ChaCha8Rng, n: usize, m: usize) -> StInstance {
    let mut g = Digraph::new(n);
    while g.arc_count() < m {
        let u = r.gen_range(0..n - 1);
        let v = r.gen_range(u + 1..n);
        if n == 2 || (u, v) != (0, n - 1) {
            g.add_arc(u, v);
        }
    }
    StInstance::new(g, 0, n - 1).unwrap()
}

/// Any arcs without loops, so cycles are common.
pub fn random_digraph(r: &mut ChaCha8Rng, n: usize, m: usize) -> StInstance {
    let mut g = Digraph::new(n);
    while g.arc_count() < m {
        let u = r.gen_range(0..n);
        let v = r.gen_range(0..n);
        if u != v && (u, v) != (0, n - 1) {
            g.add_arc(u, v);
        }
    }
    StInstance::new(g, 0, n - 1).unwrap()
}

/// Draws until the trimmed core of the instance is nonempty and returns
/// the core.
pub fn trimmed(mut draw: impl FnMut() -> StInstance) -> StInstance {
    loop {
        if let Ok((core, _)) = trim_to_core(&draw()) {
            return core;
        }
    }
}

/// Random DAG with its core kept.
pub fn trimmed_dag(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> StInstance {
    trimmed(|| {
        let n = r.gen_range(3..=max_n);
        let m = r.gen_range(2..=max_m);
        random_dag(r, n, m)
    })
}

/// Random digraph with a directed cycle in its core.
pub fn trimmed_cyclic(r: &mut ChaCha8Rng, max_n: usize, max_m: usize) -> StInstance {
    loop {
        let inst = trimmed(|| {
            let n = r.gen_range(3..=max_n);
            let m = r.gen_range(3..=max_m);
            random_digraph(r, n, m)
        });
        if !inst.is_acyclic() {
            return inst;
        }
    }
}

/// Two random DAGs joined by the single arc `u -> v`: the left one runs
/// from `s` to `u`, the right one from `v` to `t`. Every arc leaving the
/// set reachable from `s` without `u -> v` is `u -> v` itself.
pub fn unit_cut_instance(r: &mut ChaCha8Rng, max_side: usize, max_side_arcs: usize) -> StInstance {
    loop {
        let a = r.gen_range(2..=max_side);
        let b = r.gen_range(2..=max_side);
        let (ma, mb) = (
            r.gen_range(1..=max_side_arcs),
            r.gen_range(1..=max_side_arcs),
        );
        let left = random_dag(r, a, ma);
        let right = random_dag(r, b, mb);
        let mut g = Digraph::new(a + b);
        for arc in left.graph.arcs() {
            g.add_arc(arc.tail, arc.head);
        }
        g.add_arc(a - 1, a);
        for arc in right.graph.arcs() {
            g.add_arc(a + arc.tail, a + arc.head);
        }
        let inst = StInstance::new(g, 0, a + b - 1).unwrap();
        if let Ok((core, _)) = trim_to_core(&inst) {
            return core;
        }
    }
}

/// Every formula over `x_0` and `y_0..n_y` made of one clause or two
/// distinct clauses, literals within a clause taken as a multiset.
pub fn micro_formulas(n_y: usize) -> Vec<pathsep::reductions::Formula3DNF> {
    use pathsep::reductions::{Formula3DNF, Literal};
    let mut lits = vec![Literal::x(0, false), Literal::x(0, true)];
    for y in 0..n_y {
        lits.push(Literal::y(y, false));
        lits.push(Literal::y(y, true));
    }
    let n = lits.len();
    let mut clauses = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                clauses.push(vec![lits[a], lits[b], lits[c]]);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..clauses.len() {
        out.push(Formula3DNF::new(1, n_y, vec![clauses[i].clone()]).unwrap());
        for j in i + 1..clauses.len() {
            out.push(
                Formula3DNF::new(1, n_y, vec![clauses[i].clone(), clauses[j].clone()]).unwrap(),
            );
        }
    }
    out
}
