//! Separation by forbidden arc pairs.
//!
//! A pair covers a path when the path contains both of its arcs. A pair
//! set separates s from t when every s-t path is covered.
//! [`separation_check`] searches for an uncovered path, [`solve_min_pairs`]
//! finds a smallest separating set, and [`brute_force_min_pairs`] is the
//! exhaustive oracle.

mod brute;
mod check;
mod hitting;

pub use brute::{brute_force_all_min_pairs, brute_force_min_pairs, path_pairs};
pub use check::{
    naive_separation_check, separation_check, separation_check_with, CheckOptions, CheckStats,
    Reachability,
};
pub use hitting::{solve_min_pairs, MinPairs, MinPairsStats, SolveBudget};

use std::collections::BTreeSet;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::{ArcId, ArcPath, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SfpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// An unordered pair of distinct arcs, stored as `(low, high)`.
pub type Pair = (ArcId, ArcId);

pub fn pair(a: ArcId, b: ArcId) -> Pair {
    assert_ne!(a, b, "a forbidden pair needs two distinct arcs");
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet {
    pairs: BTreeSet<Pair>,
}

impl PairSet {
    pub fn new() -> Self {
        PairSet::default()
    }

    /// Adds `{a, b}`; returns false if it was already present.
    pub fn insert(&mut self, a: ArcId, b: ArcId) -> bool {
        self.pairs.insert(pair(a, b))
    }

    pub fn contains(&self, a: ArcId, b: ArcId) -> bool {
        a != b && self.pairs.contains(&pair(a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn extend(&mut self, other: &PairSet) {
        self.pairs.extend(other.iter());
    }

    pub fn is_superset(&self, other: &PairSet) -> bool {
        self.pairs.is_superset(&other.pairs)
    }

    /// Applies an arc renaming to both members of every pair.
    pub fn map_arcs(&self, f: impl Fn(ArcId) -> ArcId) -> PairSet {
        self.iter().map(|(a, b)| (f(a), f(b))).collect()
    }

    pub fn max_arc(&self) -> Option<ArcId> {
        self.iter().map(|(_, b)| b).max()
    }
}

impl FromIterator<Pair> for PairSet {
    fn from_iter<I: IntoIterator<Item = Pair>>(iter: I) -> Self {
        let mut s = PairSet::new();
        for (a, b) in iter {
            s.insert(a, b);
        }
        s
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairSetDoc {
    pairs: Vec<Pair>,
}

impl Serialize for PairSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PairSetDoc {
            pairs: self.iter().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PairSetDoc::deserialize(d)?;
        let mut set = PairSet::new();
        for (i, (a, b)) in doc.pairs.into_iter().enumerate() {
            if a == b {
                return Err(serde::de::Error::custom(format!(
                    "pairs[{i}]: arc {a} paired with itself"
                )));
            }
            set.insert(a, b);
        }
        Ok(set)
    }
}

/// The lowest pair of `pairs` whose two arcs both lie on `path`.
pub fn covering_pair(path: &ArcPath, pairs: &PairSet) -> Option<Pair> {
    let mut arcs = path.0.clone();
    arcs.sort_unstable();
    pairs
        .iter()
        .find(|&(a, b)| arcs.binary_search(&a).is_ok() && arcs.binary_search(&b).is_ok())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationVerdict {
    Separates,
    /// An s-t path that no pair covers.
    Witness(ArcPath),
}

impl SeparationVerdict {
    pub fn separates(&self) -> bool {
        matches!(self, SeparationVerdict::Separates)
    }

    pub fn witness(&self) -> Option<&ArcPath> {
        match self {
            SeparationVerdict::Separates => None,
            SeparationVerdict::Witness(p) => Some(p),
        }
    }
}

#[derive(Serialize)]
struct VerdictDoc<'a> {
    separates: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a ArcPath>,
}

impl Serialize for SeparationVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        VerdictDoc {
            separates: self.separates(),
            witness: self.witness(),
        }
        .serialize(s)
    }
}
