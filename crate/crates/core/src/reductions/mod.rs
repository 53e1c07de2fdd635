//! Generators for the hardness constructions and their oracles.

mod adp_gadget;
mod bunch;
mod formula;
mod sfp_gadget;
mod undirected;

pub use adp_gadget::*;
pub use bunch::*;
pub use formula::*;
pub use sfp_gadget::*;
pub use undirected::*;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has {vertices} vertices, the oracle handles at most {max}")]
    TooLarge { vertices: usize, max: usize },
    #[error("vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("clause {clause} has {literals} literals, expected 3")]
    MalformedClause { clause: usize, literals: usize },
    #[error("invalid formula: {0}")]
    InvalidFormula(String),
    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),
    #[error("the assignment satisfies the formula")]
    NotFalsifying,
}
