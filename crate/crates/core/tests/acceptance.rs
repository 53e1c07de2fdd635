//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.

mod common;

use std::time::{Duration, Instant};

use pathsep::adp::{
    brute_force_max_paths, dag_dp_solve, is_almost_disjoint, max_almost_disjoint_brute, solve,
    solve_small_k, solve_with, Method,
};
use pathsep::cli;
use pathsep::duality::{
    build_lp_pair, duality_report, rat, simplex_solve, solve_unit_cut, DualMethod, ReportBudget,
    SfpMethod,
};
use pathsep::graph::codec::write_instance;
use pathsep::graph::{topological_order, StInstance};
use pathsep::reductions::{
    brute_alpha, canonical_pairs, cross_bunch_pairs, falsifying_y, gen_adp_instance, gen_bunch,
    gen_inconsistency_gadget, gen_sfp_instance, gen_tail_extension, gen_variable_gadget,
    independent_set_paths, normalize_formula, nth_assignment, phi_sat4, phi_unsat, sigma2_brute,
    typification_arc_count, witness_path, Formula3DNF, Normalized, UndirectedGraph,
};
use pathsep::sfp::{
    brute_force_all_min_pairs, brute_force_min_pairs, covering_pair, separation_check,
    separation_check_with, solve_min_pairs, CheckOptions, PairSet, SolveBudget,
};
use rand::Rng;

const PATH_CAP: usize = 1_000_000;
const DP_TIME_LIMIT: Duration = Duration::from_secs(60);
const GADGET_TIME_LIMIT: Duration = Duration::from_secs(300);
/// Search nodes allowed per separation check on reduction instances.
const REDUCTION_NODE_BUDGET: u64 = 5_000_000;
const MIN_STRONG_DUALITY_LPS: usize = 30;
const UNIT_CUT_BRUTE_MAX_ARCS: usize = 14;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_dp_oracle() -> Outcome {
    let start = Instant::now();
    let mut r = common::rng(1);
    let mut agree = 0;
    for i in 0..200 {
        let inst = common::trimmed_dag(&mut r, 8, 14);
        let k = if i % 2 == 0 { 2 } else { 3 };
        let dp = dag_dp_solve(&inst, k, None).map_err(|e| e.to_string())?;
        let brute = brute_force_max_paths(&inst, k, 1, PATH_CAP).map_err(|e| e.to_string())?;
        ensure(dp.feasible == brute, || {
            format!("instance {i}, k={k}: dp {} brute {brute}", dp.feasible)
        })?;
        if let Some(w) = &dp.witness {
            ensure(
                w.len() == k && is_almost_disjoint(w, 1) && w.iter().all(|p| p.is_st_path(&inst)),
                || format!("instance {i}: invalid witness"),
            )?;
        }
        agree += 1;
    }
    let t = start.elapsed();
    ensure(t < DP_TIME_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{agree}/200 agree in {:.1} s", t.as_secs_f64()))
}

fn c2_layered() -> Outcome {
    let mut r = common::rng(2);
    let mut agree = 0;
    for i in 0..100 {
        let inst = common::trimmed_cyclic(&mut r, 6, 10);
        let k = if i % 2 == 0 { 2 } else { 3 };
        let out = solve_with(&inst, k, Method::Layered, PATH_CAP).map_err(|e| e.to_string())?;
        let brute = brute_force_max_paths(&inst, k, 1, PATH_CAP).map_err(|e| e.to_string())?;
        ensure(out.feasible == brute, || {
            format!(
                "instance {i}, k={k}: layered {} brute {brute}",
                out.feasible
            )
        })?;
        if let Some(w) = &out.witness {
            ensure(
                w.len() == k && is_almost_disjoint(w, 1) && w.iter().all(|p| p.is_st_path(&inst)),
                || format!("instance {i}: invalid witness"),
            )?;
        }
        agree += 1;
    }
    Ok(format!("{agree}/100 agree"))
}

fn c3_flow() -> Outcome {
    let mut r = common::rng(3);
    let mut agree = 0;
    for i in 0..200 {
        let n = r.gen_range(3..=7);
        let m = r.gen_range(2..=12);
        let inst = common::random_digraph(&mut r, n, m);
        let res = solve_small_k(&inst, 2);
        let brute = brute_force_max_paths(&inst, 2, 1, PATH_CAP).map_err(|e| e.to_string())?;
        ensure(res.outcome.feasible == brute, || {
            format!("instance {i}: flow {} brute {brute}", res.outcome.feasible)
        })?;
        ensure(res.stats.max_augmentations <= 2, || {
            format!(
                "instance {i}: {} augmentations on one arc",
                res.stats.max_augmentations
            )
        })?;
        ensure(res.stats.candidates <= inst.graph.arc_count(), || {
            format!("instance {i}: too many candidates")
        })?;
        if let Some(w) = &res.outcome.witness {
            ensure(
                is_almost_disjoint(w, 1) && w.iter().all(|p| p.is_st_path(&inst)),
                || format!("instance {i}: invalid witness"),
            )?;
        }
        agree += 1;
    }
    Ok(format!(
        "{agree}/200 agree, at most 2 augmentations per candidate arc"
    ))
}

fn c4_gap_family() -> Outcome {
    let mut lines = Vec::new();
    for (k, l, lp, adp, sfp) in [(2usize, 4usize, 4i64, 2usize, 4usize), (3, 7, 9, 3, 9)] {
        let inst = gen_bunch(k, l);
        let hint = cross_bunch_pairs(k);
        ensure(
            separation_check(&inst, &hint)
                .map_err(|e| e.to_string())?
                .separates(),
            || format!("P^{k}_{l}: cross-bunch set does not separate"),
        )?;
        let budget = ReportBudget {
            hint: Some(hint),
            ..ReportBudget::default()
        };
        let rep = duality_report(&inst, &budget).map_err(|e| e.to_string())?;
        ensure(rep.lp_value == rat(lp), || {
            format!("P^{k}_{l}: lp {}", rep.lp_value)
        })?;
        ensure(rep.adp_int == adp && rep.sfp_int == sfp, || {
            format!("P^{k}_{l}: adp {} sfp {}", rep.adp_int, rep.sfp_int)
        })?;
        ensure(rep.gap == rat((sfp - adp) as i64), || {
            format!("P^{k}_{l}: gap {}", rep.gap)
        })?;
        ensure(rep.sfp_method == SfpMethod::LpBound, || {
            format!("P^{k}_{l}: sfp not fixed by the LP bound")
        })?;
        lines.push(format!("P^{k}_{l} lp={} adp={adp} sfp={sfp}", rep.lp_value));
    }
    Ok(lines.join(", "))
}

fn c5_strong_duality() -> Outcome {
    let mut instances: Vec<StInstance> = vec![
        common::diamond(),
        gen_bunch(1, 2),
        gen_bunch(2, 2),
        gen_bunch(2, 3),
        gen_bunch(2, 4),
        gen_bunch(3, 3),
    ];
    let mut r = common::rng(5);
    while instances.len() < 40 {
        let inst = common::trimmed_dag(&mut r, 7, 11);
        if pathsep::graph::sfp_guard(&inst).is_ok() {
            instances.push(inst);
        }
    }
    let mut solved = 0;
    for (i, inst) in instances.iter().enumerate() {
        let lp = build_lp_pair(inst, PATH_CAP).map_err(|e| e.to_string())?;
        let p = simplex_solve(&lp.primal).map_err(|e| e.to_string())?;
        let d = simplex_solve(&lp.dual).map_err(|e| e.to_string())?;
        ensure(p.value == d.value, || {
            format!("instance {i}: primal {} dual {}", p.value, d.value)
        })?;
        ensure(
            lp.dual.is_feasible(&p.duals) && lp.dual.objective_value(&p.duals) == p.value,
            || format!("instance {i}: primal multipliers are not dual optimal"),
        )?;
        let rep = duality_report(inst, &ReportBudget::default()).map_err(|e| e.to_string())?;
        ensure(
            rep.dual_method == DualMethod::Simplex && rep.weak_duality_holds(),
            || format!("instance {i}: report disagrees"),
        )?;
        solved += 1;
    }
    ensure(solved >= MIN_STRONG_DUALITY_LPS, || {
        format!("only {solved} LP pairs")
    })?;
    Ok(format!("{solved} LP pairs, primal = dual exactly"))
}

fn c6_unit_cut() -> Outcome {
    let mut r = common::rng(6);
    let mut brute_checked = 0;
    for i in 0..50 {
        let inst = common::unit_cut_instance(&mut r, 4, 6);
        let uc = solve_unit_cut(&inst).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(uc.paths.len() == uc.k && uc.pairs.len() == uc.k, || {
            format!(
                "instance {i}: {} paths, {} pairs, k={}",
                uc.paths.len(),
                uc.pairs.len(),
                uc.k
            )
        })?;
        ensure(
            is_almost_disjoint(&uc.paths, 1) && uc.paths.iter().all(|p| p.is_st_path(&inst)),
            || format!("instance {i}: paths are not almost disjoint s-t paths"),
        )?;
        ensure(
            separation_check(&inst, &uc.pairs)
                .map_err(|e| e.to_string())?
                .separates(),
            || format!("instance {i}: pairs do not separate"),
        )?;
        if inst.graph.arc_count() <= UNIT_CUT_BRUTE_MAX_ARCS {
            let (adp, _) =
                max_almost_disjoint_brute(&inst, 1, PATH_CAP).map_err(|e| e.to_string())?;
            let sfp = brute_force_min_pairs(&inst, uc.k, PATH_CAP)
                .map_err(|e| e.to_string())?
                .map(|(k, _)| k);
            ensure(adp == uc.k && sfp == Some(uc.k), || {
                format!("instance {i}: brute adp {adp} sfp {sfp:?}, k={}", uc.k)
            })?;
            brute_checked += 1;
        }
    }
    ensure(brute_checked >= 25, || {
        format!("only {brute_checked} instances small enough for brute force")
    })?;
    Ok(format!(
        "50/50 certified, {brute_checked} confirmed by brute force"
    ))
}

fn c7_adp_reduction() -> Outcome {
    let mut count = 0;
    for n in 1..=4 {
        for h in UndirectedGraph::all_simple(n, 4) {
            let (inst, meta) = gen_adp_instance(&h);
            let alpha = brute_alpha(&h).map_err(|e| e.to_string())?;
            let at = brute_force_max_paths(&inst, meta.target(alpha), 1, PATH_CAP)
                .map_err(|e| e.to_string())?;
            let above = brute_force_max_paths(&inst, meta.target(alpha) + 1, 1, PATH_CAP)
                .map_err(|e| e.to_string())?;
            ensure(at && !above, || {
                format!("{h:?}: alpha {alpha}, at {at}, above {above}")
            })?;
            for mask in 0u32..1 << n {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if h.is_independent(&set) {
                    let paths =
                        independent_set_paths(&inst, &meta, &set).map_err(|e| e.to_string())?;
                    ensure(
                        paths.len() == meta.target(set.len())
                            && is_almost_disjoint(&paths, 1)
                            && paths.iter().all(|p| p.is_st_path(&inst)),
                        || format!("{h:?}, U={set:?}: constructive paths invalid"),
                    )?;
                }
            }
            count += 1;
        }
    }
    Ok(format!("{count} graphs, max paths = 2m + alpha on all"))
}

fn c8_gadgets() -> Outcome {
    let start = Instant::now();
    let (inst, pair) = gen_inconsistency_gadget();
    let (k, all) = brute_force_all_min_pairs(&inst, 1, PATH_CAP)
        .map_err(|e| e.to_string())?
        .ok_or("inconsistency gadget needs more than one pair")?;
    let expected: PairSet = [pair].into_iter().collect();
    ensure(k == 1 && all == vec![expected.clone()], || {
        format!("inconsistency gadget optima {all:?}")
    })?;

    let (inst, gd) = gen_variable_gadget(2);
    let r = solve_min_pairs(
        &inst,
        SolveBudget {
            all_optima: true,
            ..SolveBudget::default()
        },
    )
    .map_err(|e| e.to_string())?;
    let mut families: Vec<PairSet> = [gd.family_true(), gd.family_false()]
        .into_iter()
        .map(|f| f.into_iter().collect())
        .collect();
    families.sort();
    ensure(r.pairs.len() == 3, || {
        format!("variable gadget optimum {}", r.pairs.len())
    })?;
    ensure(r.all_optima.as_ref() == Some(&families), || {
        format!("variable gadget optima {:?}", r.all_optima)
    })?;
    let brute = brute_force_all_min_pairs(&inst, 3, PATH_CAP).map_err(|e| e.to_string())?;
    ensure(brute == Some((3, families)), || {
        "brute force disagrees on the variable gadget".into()
    })?;
    let t = start.elapsed();
    ensure(t < GADGET_TIME_LIMIT, || format!("took {t:?}"))?;
    Ok(format!(
        "inconsistency gadget 1 optimum, variable gadget (q=2) exactly 2 optima of size 3, {:.2} s",
        t.as_secs_f64()
    ))
}

/// Normalized micro formulas, split by satisfiability.
fn micro_corpus() -> (Vec<Formula3DNF>, Vec<Formula3DNF>) {
    let mut sat = vec![phi_sat4()];
    let mut unsat = vec![phi_unsat()];
    for phi in common::micro_formulas(2) {
        if let Normalized::Formula { formula, .. } = normalize_formula(&phi).expect("well formed") {
            match sigma2_brute(&formula) {
                Some(_) => sat.push(formula),
                None => unsat.push(formula),
            }
        }
    }
    (sat, unsat)
}

fn c9_sat_side(sat: &[Formula3DNF]) -> Outcome {
    let opts = CheckOptions {
        node_budget: Some(REDUCTION_NODE_BUDGET),
        ..CheckOptions::default()
    };
    let mut max_nodes = 0;
    for phi in sat {
        let tx = sigma2_brute(phi).ok_or("formula is not satisfiable")?;
        let (inst, meta) = gen_sfp_instance(phi).map_err(|e| e.to_string())?;
        let pairs = canonical_pairs(&meta, &tx).map_err(|e| e.to_string())?;
        let (verdict, stats) =
            separation_check_with(&inst, &pairs, opts).map_err(|e| format!("{phi:?}: {e}"))?;
        ensure(verdict.separates(), || {
            format!("{phi:?}: canonical pairs leave a path")
        })?;
        max_nodes = max_nodes.max(stats.nodes);
    }
    Ok(format!(
        "{} satisfiable formulas separated by k pairs, at most {max_nodes} search nodes",
        sat.len()
    ))
}

fn c10_unsat_side(unsat: &[Formula3DNF]) -> Outcome {
    let mut checked = 0;
    for phi in unsat {
        let (inst, meta) = gen_sfp_instance(phi).map_err(|e| e.to_string())?;
        for i in 0..1u64 << phi.n_x {
            let tx = nth_assignment(phi.n_x, i);
            let ty = falsifying_y(phi, &tx).ok_or("no falsifying y-assignment")?;
            let path = witness_path(&inst, &meta, &tx, &ty).map_err(|e| e.to_string())?;
            let pairs = canonical_pairs(&meta, &tx).map_err(|e| e.to_string())?;
            ensure(path.is_st_path(&inst), || {
                format!("{phi:?}: witness is not an s-t path")
            })?;
            ensure(covering_pair(&path, &pairs).is_none(), || {
                format!("{phi:?}, tx={tx:?}: witness covered")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} unsatisfiable formulas, {checked} witness paths avoid their canonical sets",
        unsat.len()
    ))
}

fn c11_structure(all: &[Formula3DNF]) -> Outcome {
    let (_, meta) = gen_sfp_instance(&phi_unsat()).map_err(|e| e.to_string())?;
    let k_unsat = canonical_pairs(&meta, &[true])
        .map_err(|e| e.to_string())?
        .len();
    ensure(k_unsat == 439 && meta.k == 439, || {
        format!("phi_unsat: |pairs| {k_unsat}, k {}", meta.k)
    })?;
    for phi in all {
        let (inst, meta) = gen_sfp_instance(phi).map_err(|e| e.to_string())?;
        ensure(topological_order(&inst.graph).is_ok(), || {
            format!("{phi:?}: cyclic")
        })?;
        let expected = meta.k0 + meta.n_i + meta.q.iter().map(|q| q + 1).sum::<usize>();
        for tx in [vec![false; phi.n_x], vec![true; phi.n_x]] {
            let n = canonical_pairs(&meta, &tx)
                .map_err(|e| e.to_string())?
                .len();
            ensure(n == meta.k && n == expected, || {
                format!("{phi:?}: |pairs| {n}, k {}", meta.k)
            })?;
        }
        ensure(
            meta.typification.arc_count() == typification_arc_count(meta.p, meta.gadget_count()),
            || format!("{phi:?}: typification arc count"),
        )?;
    }
    Ok(format!(
        "{} graphs acyclic, |canonical| = k (439 for phi_unsat), typification counts match",
        all.len()
    ))
}

fn c12_tail() -> Outcome {
    let mut r = common::rng(12);
    for i in 0..50 {
        let inst = common::trimmed_dag(&mut r, 7, 10);
        let ext = gen_tail_extension(&inst, 3);
        for k in [2, 3] {
            let direct = solve(&inst, k).map_err(|e| e.to_string())?.feasible;
            let relaxed = brute_force_max_paths(&ext, k, 3, PATH_CAP).map_err(|e| e.to_string())?;
            ensure(direct == relaxed, || {
                format!("instance {i}, k={k}: solve {direct}, extended {relaxed}")
            })?;
        }
    }
    Ok("50/50 agree for k = 2 and 3".into())
}

fn c13_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    std::fs::write(path("d.json"), write_instance(&common::diamond()))
        .map_err(|e| e.to_string())?;
    std::fs::write(path("b.json"), write_instance(&gen_bunch(2, 4))).map_err(|e| e.to_string())?;
    let mut r = common::rng(13);
    std::fs::write(
        path("c.json"),
        write_instance(&common::trimmed_cyclic(&mut r, 6, 9)),
    )
    .map_err(|e| e.to_string())?;
    std::fs::write(path("p.json"), r#"{"pairs":[[0,2],[1,3]]}"#).map_err(|e| e.to_string())?;
    std::fs::write(
        path("h.json"),
        r#"{"vertex_count":3,"edges":[[0,1],[1,2]]}"#,
    )
    .map_err(|e| e.to_string())?;
    std::fs::write(path("f.json"), serde_json::to_string(&phi_unsat()).unwrap())
        .map_err(|e| e.to_string())?;
    let commands: Vec<Vec<String>> = [
        "adp solve -i d.json -k 2 --witness",
        "adp solve -i c.json -k 3 --method layered --witness",
        "adp solve -i b.json -k 3 --method dp --witness",
        "adp solve -i b.json -k 2 --method brute --threshold 2 --witness",
        "sfp solve -i b.json --all-optima",
        "sfp solve -i d.json --method brute --all-optima",
        "sfp check -i d.json --pairs p.json",
        "gen bunch -k 3 -l 4",
        "gen adp --from h.json",
        "gen sfp --from f.json",
        "gen tail -i d.json -l 3",
        "lp report -i b.json --certificates",
        "export dot -i c.json",
    ]
    .iter()
    .map(|c| {
        std::iter::once("pathsep".to_string())
            .chain(c.split(' ').map(|w| {
                if w.ends_with(".json") {
                    path(w)
                } else {
                    w.to_string()
                }
            }))
            .collect()
    })
    .collect();
    for argv in &commands {
        let mut outs = Vec::new();
        for _ in 0..2 {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = cli::run(argv, &mut out, &mut err);
            ensure(code == 0, || {
                format!("{argv:?}: exit {code}: {}", String::from_utf8_lossy(&err))
            })?;
            outs.push(out);
        }
        ensure(outs[0] == outs[1], || format!("{argv:?}: outputs differ"))?;
    }
    Ok(format!(
        "{} commands byte-identical across runs",
        commands.len()
    ))
}

fn main() {
    let (sat, unsat) = micro_corpus();
    let all: Vec<Formula3DNF> = sat.iter().chain(&unsat).cloned().collect();
    type Criterion<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        ("dp oracle equivalence", Box::new(c1_dp_oracle)),
        ("general-graph solver", Box::new(c2_layered)),
        ("k=2 flow", Box::new(c3_flow)),
        ("duality-gap family", Box::new(c4_gap_family)),
        ("strong duality", Box::new(c5_strong_duality)),
        ("zero-gap unit cut", Box::new(c6_unit_cut)),
        ("adp reduction", Box::new(c7_adp_reduction)),
        ("sfp gadget optima", Box::new(c8_gadgets)),
        (
            "sfp reduction, satisfiable side",
            Box::new(move || c9_sat_side(&sat)),
        ),
        (
            "sfp reduction, unsatisfiable side",
            Box::new(move || c10_unsat_side(&unsat)),
        ),
        (
            "sfp reduction structure",
            Box::new(move || c11_structure(&all)),
        ),
        ("tail extension", Box::new(c12_tail)),
        ("cli determinism", Box::new(c13_determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {name}: {detail} [{secs:.1} s]",
                i + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1} s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
