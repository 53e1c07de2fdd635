//! Exhaustive oracle: enumerate all simple s-t paths and search the
//! compatibility graph for a clique.

use super::clique::{find_clique, max_clique, BitSet};
use super::shared_arcs;
use crate::graph::{enumerate_st_paths, ArcId, ArcPath, GraphError, StInstance};

fn compatibility(paths: &[ArcPath], threshold: usize) -> Vec<BitSet> {
    let sorted: Vec<Vec<ArcId>> = paths
        .iter()
        .map(|p| {
            let mut v = p.0.clone();
            v.sort_unstable();
            v
        })
        .collect();
    let mut adj = vec![BitSet::new(paths.len()); paths.len()];
    for i in 0..paths.len() {
        for j in i + 1..paths.len() {
            if shared_arcs(&sorted[i], &sorted[j]) <= threshold {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    adj
}

/// `k` simple s-t paths pairwise sharing at most `threshold` arcs, if any.
pub fn brute_force_witness(
    inst: &StInstance,
    k: usize,
    threshold: usize,
    cap: usize,
) -> Result<Option<Vec<ArcPath>>, GraphError> {
    let paths = enumerate_st_paths(inst, cap)?;
    if paths.len() < k {
        return Ok(None);
    }
    let adj = compatibility(&paths, threshold);
    Ok(find_clique(&adj, k).map(|c| c.into_iter().map(|i| paths[i].clone()).collect()))
}

pub fn brute_force_max_paths(
    inst: &StInstance,
    k: usize,
    threshold: usize,
    cap: usize,
) -> Result<bool, GraphError> {
    Ok(brute_force_witness(inst, k, threshold, cap)?.is_some())
}

/// Size of a largest family with pairwise at most `threshold` shared arcs.
pub fn max_almost_disjoint_brute(
    inst: &StInstance,
    threshold: usize,
    cap: usize,
) -> Result<(usize, Vec<ArcPath>), GraphError> {
    let paths = enumerate_st_paths(inst, cap)?;
    let c = max_clique(&compatibility(&paths, threshold));
    Ok((c.len(), c.into_iter().map(|i| paths[i].clone()).collect()))
}
