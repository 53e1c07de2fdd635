//! LP relaxations of ADP and SFP, exact simplex, and the duality gap.

mod lp;
mod num;
mod simplex;
mod unit_cut;

pub use lp::{build_lp_pair, LpPair};
pub use simplex::{
    format_rational, is_dual_certificate, parse_rational, rat, ratio, simplex_solve, LpError,
    LpModel, LpRow, LpSolution, Rational, RowSense, Sense,
};
pub use unit_cut::{solve_unit_cut, CutSide, UnitCut};

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::adp::{max_almost_disjoint, AdpError};
use crate::graph::{ArcPath, GraphError, StInstance};
use crate::sfp::{separation_check, solve_min_pairs, Pair, PairSet, SfpError, SolveBudget};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Adp(#[from] AdpError),
    #[error(transparent)]
    Sfp(#[from] SfpError),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("primal optimum {primal} differs from dual optimum {dual}")]
    Mismatch { primal: String, dual: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportBudget {
    pub path_cap: usize,
    pub sfp: SolveBudget,
    /// A candidate separating set. When it separates and its size meets
    /// the rounded-up LP value it is optimal and the search is skipped.
    pub hint: Option<PairSet>,
    /// Largest dual tableau (rows times columns) solved directly; above
    /// it the primal multipliers are checked against the dual instead.
    pub max_dual_cells: usize,
}

impl Default for ReportBudget {
    fn default() -> Self {
        ReportBudget {
            path_cap: 100_000,
            sfp: SolveBudget::default(),
            hint: None,
            max_dual_cells: 2_000_000,
        }
    }
}

/// How the dual optimum was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualMethod {
    Simplex,
    PrimalMultipliers,
}

/// How `sfp_int` was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SfpMethod {
    Search,
    LpBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    pub lp_value: Rational,
    pub adp_int: usize,
    pub sfp_int: usize,
    /// `sfp_int - adp_int`.
    pub gap: Rational,
    /// Index sets of the two LPs.
    pub paths: Vec<ArcPath>,
    pub pairs: Vec<Pair>,
    /// Optimal `y_P`, one per entry of `paths`.
    pub primal: Vec<Rational>,
    /// Optimal `x_q`, one per entry of `pairs`.
    pub dual: Vec<Rational>,
    pub dual_method: DualMethod,
    pub adp_witness: Vec<ArcPath>,
    pub sfp_set: PairSet,
    pub sfp_method: SfpMethod,
}

impl DualityReport {
    pub fn weak_duality_holds(&self) -> bool {
        rat(self.adp_int as i64) <= self.lp_value && self.lp_value <= rat(self.sfp_int as i64)
    }

    pub fn to_json(&self, certificates: bool) -> Value {
        let mut v = json!({
            "lp_value": format_rational(&self.lp_value),
            "adp_int": self.adp_int,
            "sfp_int": self.sfp_int,
            "gap": format_rational(&self.gap),
            "lp_paths": self.paths.len(),
            "lp_pairs": self.pairs.len(),
            "dual_method": self.dual_method,
            "sfp_method": self.sfp_method,
        });
        if certificates {
            let nonzero = |xs: &[Rational], keys: Vec<Value>| -> Vec<Value> {
                xs.iter()
                    .zip(keys)
                    .filter(|(x, _)| !x.is_zero())
                    .map(|(x, k)| json!({"at": k, "value": format_rational(x)}))
                    .collect()
            };
            v["certificates"] = json!({
                "primal": nonzero(&self.primal, self.paths.iter().map(|p| json!(p)).collect()),
                "dual": nonzero(&self.dual, self.pairs.iter().map(|q| json!([q.0, q.1])).collect()),
                "paths": self.adp_witness,
                "pairs": self.sfp_set,
            });
        }
        v
    }
}

fn ceil(q: &Rational) -> usize {
    let c = q.ceil().to_integer();
    usize::try_from(c).expect("LP value is a small nonnegative number")
}

pub fn duality_report(
    inst: &StInstance,
    budget: &ReportBudget,
) -> Result<DualityReport, DualityError> {
    let lp = build_lp_pair(inst, budget.path_cap)?;
    let primal = simplex_solve(&lp.primal)?;
    let m = lp.dual.row_count();
    let cells = m.saturating_mul(lp.dual.var_count() + 2 * m);
    let (dual, dual_method) = if cells <= budget.max_dual_cells {
        let d = simplex_solve(&lp.dual)?;
        if d.value != primal.value {
            return Err(DualityError::Mismatch {
                primal: format_rational(&primal.value),
                dual: format_rational(&d.value),
            });
        }
        (d.x, DualMethod::Simplex)
    } else {
        // the primal row multipliers are a dual solution; check it exactly
        let x = primal.duals.clone();
        if !lp.dual.is_feasible(&x) || lp.dual.objective_value(&x) != primal.value {
            return Err(DualityError::Mismatch {
                primal: format_rational(&primal.value),
                dual: format_rational(&lp.dual.objective_value(&x)),
            });
        }
        (x, DualMethod::PrimalMultipliers)
    };

    let (adp_int, adp_witness) = max_almost_disjoint(inst)?;

    let bound = ceil(&primal.value);
    let hinted = match &budget.hint {
        Some(h) if h.len() == bound && separation_check(inst, h)?.separates() => Some(h.clone()),
        _ => None,
    };
    let (sfp_set, sfp_method) = match hinted {
        Some(h) => (h, SfpMethod::LpBound),
        None => {
            let sb = SolveBudget {
                lower_bound: budget.sfp.lower_bound.max(bound),
                ..budget.sfp
            };
            (solve_min_pairs(inst, sb)?.pairs, SfpMethod::Search)
        }
    };
    let sfp_int = sfp_set.len();

    Ok(DualityReport {
        gap: rat(sfp_int as i64) - rat(adp_int as i64),
        lp_value: primal.value,
        adp_int,
        sfp_int,
        paths: lp.paths,
        pairs: lp.pairs,
        primal: primal.x,
        dual,
        dual_method,
        adp_witness,
        sfp_set,
        sfp_method,
    })
}
