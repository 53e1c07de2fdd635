//! Exact minimum separating pair sets by an implicit hitting-set loop.
//!
//! A pool of s-t paths is kept. Each round finds a smallest pair set
//! covering the pool, then asks the separation check for an uncovered
//! path. A pool cover is a lower bound on the optimum, so a cover that
//! separates is optimal.

use std::collections::HashSet;

use super::brute::path_pairs;
use super::check::{separation_check_with, CheckOptions};
use super::{Pair, PairSet, SeparationVerdict, SfpError};
use crate::adp::shared_arcs;
use crate::graph::{sfp_guard, trim_to_core, ArcId, ArcPath, GraphError, StInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveBudget {
    pub max_pool: usize,
    pub max_branch_nodes: u64,
    pub check: CheckOptions,
    /// A known lower bound on the optimum; the search starts there.
    pub lower_bound: usize,
    /// Also enumerate every minimum separating set.
    pub all_optima: bool,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            max_pool: 10_000,
            max_branch_nodes: 50_000_000,
            check: CheckOptions::default(),
            lower_bound: 0,
            all_optima: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MinPairsStats {
    pub rounds: usize,
    pub pool: usize,
    pub checks: usize,
    pub branch_nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinPairs {
    pub pairs: PairSet,
    /// Every minimum separating set, sorted, when requested.
    pub all_optima: Option<Vec<PairSet>>,
    pub stats: MinPairsStats,
}

pub fn solve_min_pairs(inst: &StInstance, budget: SolveBudget) -> Result<MinPairs, SfpError> {
    sfp_guard(inst)?;
    let mut stats = MinPairsStats::default();
    let (core, map) = match trim_to_core(inst) {
        Ok(x) => x,
        Err(GraphError::Disconnected) => {
            return Ok(MinPairs {
                pairs: PairSet::new(),
                all_optima: budget.all_optima.then(|| vec![PairSet::new()]),
                stats,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let lift = |set: &PairSet| set.map_arcs(|a| map.arc_to_old[a]);

    let mut pool: Vec<Vec<ArcId>> = Vec::new();
    let verify = |set: &PairSet,
                  pool: &mut Vec<Vec<ArcId>>,
                  stats: &mut MinPairsStats|
     -> Result<bool, SfpError> {
        stats.checks += 1;
        match separation_check_with(&core, set, budget.check)?.0 {
            SeparationVerdict::Separates => Ok(true),
            SeparationVerdict::Witness(p) => {
                if pool.len() >= budget.max_pool {
                    return Err(SfpError::BudgetExceeded(format!(
                        "path pool reached {} paths",
                        budget.max_pool
                    )));
                }
                let mut arcs = p.0;
                arcs.sort_unstable();
                pool.push(arcs);
                stats.pool = pool.len();
                Ok(false)
            }
        }
    };

    let mut depth = budget.lower_bound;
    let mut nodes = 0u64;
    let best = loop {
        stats.rounds += 1;
        let cover = loop {
            let mut search = CoverSearch::new(&pool, budget.max_branch_nodes, nodes, false);
            let found = search.run(depth)?;
            nodes = search.nodes;
            match found {
                Some(c) => break c,
                None => depth += 1,
            }
        };
        if verify(&cover, &mut pool, &mut stats)? {
            break cover;
        }
    };

    let mut all_optima = None;
    if budget.all_optima {
        'outer: loop {
            stats.rounds += 1;
            let mut search = CoverSearch::new(&pool, budget.max_branch_nodes, nodes, true);
            search.run(depth)?;
            nodes = search.nodes;
            let mut covers = search.results;
            covers.sort();
            for c in &covers {
                if !verify(c, &mut pool, &mut stats)? {
                    continue 'outer;
                }
            }
            all_optima = Some(covers.iter().map(lift).collect::<Vec<_>>());
            break;
        }
    }
    stats.branch_nodes = nodes;
    Ok(MinPairs {
        pairs: lift(&best),
        all_optima,
        stats,
    })
}

/// Branch and bound for pair sets of size at most `depth` covering every
/// pooled path. Branches on the uncovered path with the fewest available
/// pairs; pairs tried in earlier sibling branches are excluded, so every
/// set is generated once.
struct CoverSearch<'p> {
    pool: &'p [Vec<ArcId>],
    pairs_of: Vec<Vec<Pair>>,
    chosen: Vec<Pair>,
    excluded: HashSet<Pair>,
    enumerate: bool,
    results: Vec<PairSet>,
    nodes: u64,
    max_nodes: u64,
}

impl<'p> CoverSearch<'p> {
    fn new(pool: &'p [Vec<ArcId>], max_nodes: u64, nodes: u64, enumerate: bool) -> Self {
        CoverSearch {
            pool,
            pairs_of: pool
                .iter()
                .map(|p| path_pairs(&ArcPath(p.clone())))
                .collect(),
            chosen: Vec::new(),
            excluded: HashSet::new(),
            enumerate,
            results: Vec::new(),
            nodes,
            max_nodes,
        }
    }

    fn run(&mut self, depth: usize) -> Result<Option<PairSet>, SfpError> {
        if self.rec(depth)? {
            Ok(Some(self.chosen.iter().copied().collect()))
        } else {
            Ok(None)
        }
    }

    fn covered(&self, i: usize) -> bool {
        let p = &self.pool[i];
        self.chosen
            .iter()
            .any(|&(a, b)| p.binary_search(&a).is_ok() && p.binary_search(&b).is_ok())
    }

    fn rec(&mut self, depth: usize) -> Result<bool, SfpError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(SfpError::BudgetExceeded(format!(
                "cover search exceeded {} nodes",
                self.max_nodes
            )));
        }
        let uncovered: Vec<usize> = (0..self.pool.len()).filter(|&i| !self.covered(i)).collect();
        if uncovered.is_empty() {
            if self.enumerate {
                self.results.push(self.chosen.iter().copied().collect());
                return Ok(false);
            }
            return Ok(true);
        }
        if self.chosen.len() >= depth {
            return Ok(false);
        }

        let available = |i: usize| -> Vec<Pair> {
            self.pairs_of[i]
                .iter()
                .copied()
                .filter(|q| !self.excluded.contains(q))
                .collect()
        };
        let mut by_size: Vec<(usize, usize)> =
            uncovered.iter().map(|&i| (available(i).len(), i)).collect();
        by_size.sort_unstable();
        if by_size[0].0 == 0 {
            return Ok(false);
        }
        // paths sharing at most one arc need distinct pairs
        let mut packed: Vec<usize> = Vec::new();
        for &(_, i) in &by_size {
            if packed
                .iter()
                .all(|&j| shared_arcs(&self.pool[i], &self.pool[j]) <= 1)
            {
                packed.push(i);
            }
        }
        if self.chosen.len() + packed.len() > depth {
            return Ok(false);
        }

        let branch = available(by_size[0].1);
        let mut added = Vec::new();
        let mut found = false;
        for q in branch {
            self.chosen.push(q);
            if self.rec(depth)? {
                found = true;
                break;
            }
            self.chosen.pop();
            self.excluded.insert(q);
            added.push(q);
        }
        for q in added {
            self.excluded.remove(&q);
        }
        Ok(found)
    }
}
