//! Almost disjoint s-t paths.
//!
//! A family of paths is almost disjoint when every two of them share at
//! most one arc. [`solve`] decides whether `k` such s-t paths exist and
//! returns a witness family when they do:
//!
//! * `k <= 2`: reachability or one bounded flow per candidate arc
//!   ([`solve_small_k`]);
//! * acyclic graphs: the arc-tuple dynamic program ([`dag_dp_solve`]);
//! * general digraphs: the dynamic program on the layered lift
//!   ([`layered_transform`], [`solve_layered`]).
//!
//! [`brute_force_max_paths`] is an exhaustive oracle used by the tests.

mod brute;
mod clique;
mod dag_dp;
mod flow;
mod layered;

pub use brute::{brute_force_max_paths, brute_force_witness, max_almost_disjoint_brute};
pub use clique::{find_clique, max_clique, BitSet};
pub use dag_dp::{dag_dp_solve, DagDp, DpStats, IntersectionPattern};
pub use flow::{solve_small_k, SmallKResult, SmallKStats};
pub use layered::{layered_transform, project_walk, solve_layered, LayeredGraph, LayeredStats};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{
    enumerate_st_paths, normalize_adp, trim_to_core, ArcId, ArcPath, GraphError, StInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("method `{method}` does not apply: {reason}")]
    NotApplicable {
        method: &'static str,
        reason: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Auto,
    Flow,
    Dp,
    Layered,
    Brute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Flow => "flow",
            Method::Dp => "dp",
            Method::Layered => "layered",
            Method::Brute => "brute",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdpOutcome {
    pub feasible: bool,
    /// `k` pairwise almost disjoint s-t paths when `feasible`.
    pub witness: Option<Vec<ArcPath>>,
    /// The method that produced the answer.
    pub method: Method,
}

impl AdpOutcome {
    fn infeasible(method: Method) -> Self {
        AdpOutcome {
            feasible: false,
            witness: None,
            method,
        }
    }
}

/// True iff every two paths share at most `threshold` arcs.
pub fn is_almost_disjoint(paths: &[ArcPath], threshold: usize) -> bool {
    let sorted: Vec<Vec<ArcId>> = paths
        .iter()
        .map(|p| {
            let mut v = p.0.clone();
            v.sort_unstable();
            v
        })
        .collect();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if shared_arcs(&sorted[i], &sorted[j]) > threshold {
                return false;
            }
        }
    }
    true
}

/// Size of the intersection of two sorted arc lists.
pub(crate) fn shared_arcs(a: &[ArcId], b: &[ArcId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Decides ADP with the method chosen by graph shape.
pub fn solve(inst: &StInstance, k: usize) -> Result<AdpOutcome, AdpError> {
    solve_with(inst, k, Method::Auto, usize::MAX)
}

/// Decides ADP with an explicit method. `path_cap` only bounds the brute
/// force method.
pub fn solve_with(
    inst: &StInstance,
    k: usize,
    method: Method,
    path_cap: usize,
) -> Result<AdpOutcome, AdpError> {
    if method == Method::Brute {
        let witness = brute_force_witness(inst, k, 1, path_cap)?;
        return Ok(AdpOutcome {
            feasible: witness.is_some(),
            witness,
            method,
        });
    }

    let norm = normalize_adp(inst);
    let direct: Vec<ArcPath> = norm.direct_arcs.iter().map(|&a| ArcPath(vec![a])).collect();
    if k <= direct.len() {
        return Ok(AdpOutcome {
            feasible: true,
            witness: Some(direct[..k].to_vec()),
            method: if method == Method::Auto {
                Method::Flow
            } else {
                method
            },
        });
    }
    let rest = k - direct.len();

    let (core, map) = match trim_to_core(&norm.instance) {
        Ok(x) => x,
        Err(GraphError::Disconnected) => {
            let chosen = if method == Method::Auto {
                Method::Flow
            } else {
                method
            };
            return Ok(AdpOutcome::infeasible(chosen));
        }
        Err(e) => return Err(e.into()),
    };
    let acyclic = core.is_acyclic();
    let chosen = match method {
        Method::Auto if rest <= 2 => Method::Flow,
        Method::Auto if acyclic => Method::Dp,
        Method::Auto => Method::Layered,
        m => m,
    };

    let inner = match chosen {
        Method::Flow => {
            if rest > 2 {
                return Err(AdpError::NotApplicable {
                    method: "flow",
                    reason: format!("k = {rest} after removing direct arcs; flow handles k <= 2"),
                });
            }
            solve_small_k(&core, rest).outcome
        }
        Method::Dp => {
            if !acyclic {
                return Err(AdpError::NotApplicable {
                    method: "dp",
                    reason: "graph has a directed cycle".into(),
                });
            }
            dag_dp_solve(&core, rest, None)?
        }
        Method::Layered => solve_layered(&core, rest)?.0,
        Method::Auto | Method::Brute => unreachable!(),
    };

    // lift back: core ids -> normalized ids -> input ids
    let witness = inner.witness.map(|paths| {
        let mut lifted: Vec<ArcPath> = direct.clone();
        lifted.extend(paths.into_iter().map(|p| {
            ArcPath(
                p.0.iter()
                    .map(|&a| norm.arc_to_old[map.arc_to_old[a]])
                    .collect(),
            )
        }));
        lifted
    });
    Ok(AdpOutcome {
        feasible: inner.feasible,
        witness,
        method: chosen,
    })
}

/// Path cap of the clique fallback in [`max_almost_disjoint`].
pub const MAX_FALLBACK_PATHS: usize = 100_000;

/// Graphs with at most this many s-t paths skip the dynamic program in
/// [`max_almost_disjoint`] and go straight to the clique search.
pub const CLIQUE_FIRST_PATHS: usize = 256;

/// Largest `k` for which [`solve`] succeeds, with its witness. Graphs with
/// few paths, and any `k` past the width of the dynamic program, use a
/// maximum clique over all s-t paths.
pub fn max_almost_disjoint(inst: &StInstance) -> Result<(usize, Vec<ArcPath>), AdpError> {
    if enumerate_st_paths(inst, CLIQUE_FIRST_PATHS).is_ok() {
        return Ok(max_almost_disjoint_brute(inst, 1, CLIQUE_FIRST_PATHS)?);
    }
    let mut best = (0, Vec::new());
    for k in 1.. {
        let out = match solve(inst, k) {
            Ok(out) => out,
            Err(AdpError::NotApplicable { .. }) => {
                return Ok(max_almost_disjoint_brute(inst, 1, MAX_FALLBACK_PATHS)?);
            }
            Err(e) => return Err(e),
        };
        match out.witness {
            Some(w) if out.feasible => best = (k, w),
            _ => break,
        }
    }
    Ok(best)
}
