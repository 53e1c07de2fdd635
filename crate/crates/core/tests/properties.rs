mod common;

use pathsep::adp::{is_almost_disjoint, max_almost_disjoint_brute, solve};
use pathsep::duality::{build_lp_pair, rat, simplex_solve, LpModel, RowSense, Sense};
use pathsep::graph::codec::{read_instance, write_instance};
use pathsep::graph::{enumerate_st_paths, sfp_guard};
use pathsep::reductions::{
    gen_adp_instance, gen_tail_extension, independent_set_paths, UndirectedGraph,
};
use pathsep::sfp::{covering_pair, naive_separation_check, path_pairs, separation_check, PairSet};
use pathsep::StInstance;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

const CAP: usize = 100_000;

fn small_instance(seed: u64) -> StInstance {
    let mut r = common::rng(seed);
    if seed.is_multiple_of(3) {
        common::trimmed_cyclic(&mut r, 6, 10)
    } else {
        common::trimmed_dag(&mut r, 7, 11)
    }
}

/// A random set of pairs drawn from the arcs of `inst`.
fn random_pairs(inst: &StInstance, seed: u64, count: usize) -> PairSet {
    let mut r = common::rng(seed);
    let m = inst.graph.arc_count();
    let mut out = PairSet::new();
    if m < 2 {
        return out;
    }
    while out.len() < count.min(m * (m - 1) / 2) {
        let a = r.gen_range(0..m);
        let b = r.gen_range(0..m);
        if a != b {
            out.insert(a, b);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn codec_round_trip(seed in any::<u64>()) {
        let inst = small_instance(seed);
        let text = write_instance(&inst);
        let back = read_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn separation_verdicts_are_sound(seed in any::<u64>(), count in 0usize..8) {
        let inst = small_instance(seed);
        prop_assume!(sfp_guard(&inst).is_ok());
        let pairs = random_pairs(&inst, seed ^ 0x5eed, count);
        let fast = separation_check(&inst, &pairs).unwrap();
        let slow = naive_separation_check(&inst, &pairs, CAP).unwrap();
        prop_assert_eq!(fast.separates(), slow.separates());
        if let Some(w) = fast.witness() {
            prop_assert!(w.is_st_path(&inst));
            prop_assert_eq!(covering_pair(w, &pairs), None);
        } else {
            for p in enumerate_st_paths(&inst, CAP).unwrap() {
                prop_assert!(covering_pair(&p, &pairs).is_some());
            }
        }
    }

    #[test]
    fn adp_witnesses_are_sound(seed in any::<u64>(), k in 1usize..5) {
        let inst = small_instance(seed);
        let out = solve(&inst, k).unwrap();
        let best = max_almost_disjoint_brute(&inst, 1, CAP).unwrap().0;
        prop_assert_eq!(out.feasible, k <= best);
        if let Some(w) = out.witness {
            prop_assert_eq!(w.len(), k);
            prop_assert!(w.iter().all(|p| p.is_st_path(&inst)));
            prop_assert!(is_almost_disjoint(&w, 1));
        }
    }

    #[test]
    fn relevant_pairs_do_not_change_the_lp(seed in any::<u64>()) {
        let inst = small_instance(seed);
        prop_assume!(sfp_guard(&inst).is_ok());
        prop_assume!(inst.graph.arc_count() <= 9);
        let lp = build_lp_pair(&inst, CAP).unwrap();
        let reduced = simplex_solve(&lp.primal).unwrap().value;
        prop_assert_eq!(&simplex_solve(&lp.dual).unwrap().value, &reduced);

        let m = inst.graph.arc_count();
        let all: Vec<(usize, usize)> =
            (0..m).flat_map(|a| (a + 1..m).map(move |b| (a, b))).collect();
        let paths = enumerate_st_paths(&inst, CAP).unwrap();
        let mut dual = LpModel::new(Sense::Min, vec![rat(1); all.len()]);
        for p in &paths {
            let row = path_pairs(p)
                .iter()
                .map(|q| (all.binary_search(q).unwrap(), rat(1)))
                .collect();
            dual.add_row(row, RowSense::Ge, rat(1));
        }
        let mut primal = LpModel::new(Sense::Max, vec![rat(1); paths.len()]);
        for q in &all {
            let row = paths
                .iter()
                .enumerate()
                .filter(|(_, p)| path_pairs(p).contains(q))
                .map(|(i, _)| (i, rat(1)))
                .collect();
            primal.add_row(row, RowSense::Le, rat(1));
        }
        prop_assert_eq!(&simplex_solve(&primal).unwrap().value, &reduced);
        prop_assert_eq!(&simplex_solve(&dual).unwrap().value, &reduced);
    }

    #[test]
    fn independent_sets_give_almost_disjoint_paths(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let n = r.gen_range(1..=6);
        let slots: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let edges: Vec<(usize, usize)> =
            slots.into_iter().filter(|_| r.gen_bool(0.4)).collect();
        let h = UndirectedGraph::new(n, edges).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut r);
        let mut set = Vec::new();
        for u in order {
            let mut next = set.clone();
            next.push(u);
            if h.is_independent(&next) && r.gen_bool(0.8) {
                set = next;
            }
        }
        let (inst, meta) = gen_adp_instance(&h);
        let paths = independent_set_paths(&inst, &meta, &set).unwrap();
        prop_assert_eq!(paths.len(), 2 * h.edges().len() + set.len());
        prop_assert!(paths.iter().all(|p| p.is_st_path(&inst)));
        prop_assert!(is_almost_disjoint(&paths, 1));
    }

    #[test]
    fn tail_extension_shifts_the_threshold(seed in any::<u64>(), l in 1usize..4) {
        let inst = small_instance(seed);
        let ext = gen_tail_extension(&inst, l);
        prop_assert_eq!(ext.graph.arc_count(), inst.graph.arc_count() + l - 1);
        let base = max_almost_disjoint_brute(&inst, 1, CAP).unwrap().0;
        let shifted = max_almost_disjoint_brute(&ext, l, CAP).unwrap().0;
        prop_assert_eq!(base, shifted);
    }
}

#[test]
fn dependent_sets_are_rejected() {
    let h = UndirectedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
    let (inst, meta) = gen_adp_instance(&h);
    assert!(independent_set_paths(&inst, &meta, &[0, 1]).is_err());
    assert_eq!(
        independent_set_paths(&inst, &meta, &[0, 2]).unwrap().len(),
        6
    );
}
