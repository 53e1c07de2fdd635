//! The path-packing LP and its pair-covering dual.

use super::simplex::{rat, LpModel, RowSense, Sense};
use crate::graph::{enumerate_st_paths, sfp_guard, ArcPath, GraphError, StInstance};
use crate::sfp::{path_pairs, Pair};

/// The two relaxations over the same index sets.
///
/// * primal: `max sum y_P` with `sum_{P contains q} y_P <= 1` per pair `q`;
/// * dual: `min sum x_q` with `sum_{q inside P} x_q >= 1` per path `P`.
///
/// Only pairs lying on some path are materialized; the others give empty
/// primal rows and dual columns that never help.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpPair {
    pub primal: LpModel,
    pub dual: LpModel,
    pub paths: Vec<ArcPath>,
    pub pairs: Vec<Pair>,
}

pub fn build_lp_pair(inst: &StInstance, cap: usize) -> Result<LpPair, GraphError> {
    sfp_guard(inst)?;
    let paths = enumerate_st_paths(inst, cap)?;
    let per_path: Vec<Vec<Pair>> = paths.iter().map(path_pairs).collect();
    let mut pairs: Vec<Pair> = per_path.iter().flatten().copied().collect();
    pairs.sort_unstable();
    pairs.dedup();
    let index = |q: &Pair| pairs.binary_search(q).unwrap();

    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); pairs.len()];
    for (p, qs) in per_path.iter().enumerate() {
        for q in qs {
            incidence[index(q)].push(p);
        }
    }

    let mut primal = LpModel::new(Sense::Max, vec![rat(1); paths.len()]);
    for rows in &incidence {
        primal.add_row(
            rows.iter().map(|&p| (p, rat(1))).collect(),
            RowSense::Le,
            rat(1),
        );
    }
    let mut dual = LpModel::new(Sense::Min, vec![rat(1); pairs.len()]);
    for qs in &per_path {
        dual.add_row(
            qs.iter().map(|q| (index(q), rat(1))).collect(),
            RowSense::Ge,
            rat(1),
        );
    }
    Ok(LpPair {
        primal,
        dual,
        paths,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::simplex::{ratio, simplex_solve};
    use crate::reductions::gen_bunch;

    #[test]
    fn diamond_sizes() {
        let d = StInstance::from_arcs(4, [(0, 1), (0, 2), (1, 3), (2, 3)], 0, 3).unwrap();
        let lp = build_lp_pair(&d, 100).unwrap();
        assert_eq!(lp.primal.var_count(), 2);
        assert_eq!(lp.primal.row_count(), 2);
        assert_eq!(lp.dual.var_count(), 2);
        assert_eq!(simplex_solve(&lp.primal).unwrap().value, rat(2));
        assert_eq!(simplex_solve(&lp.dual).unwrap().value, rat(2));
    }

    #[test]
    fn bunch_uniform_point() {
        let p22 = build_lp_pair(&gen_bunch(2, 2), 100).unwrap();
        assert_eq!(p22.primal.var_count(), 4);
        let p24 = build_lp_pair(&gen_bunch(2, 4), 100).unwrap();
        let y = vec![ratio(1, 4); p24.paths.len()];
        assert!(p24.primal.is_feasible(&y));
        assert_eq!(p24.primal.objective_value(&y), rat(4));
    }

    #[test]
    fn direct_arc_rejected() {
        let inst = StInstance::from_arcs(2, [(0, 1)], 0, 1).unwrap();
        assert_eq!(build_lp_pair(&inst, 10), Err(GraphError::Inseparable));
    }
}
