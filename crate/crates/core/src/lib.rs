//! Almost disjoint s-t paths and separation by forbidden arc pairs on
//! directed multigraphs.
//!
//! * [`graph`]: multigraph representation, preprocessing, path enumeration
//!   and the JSON instance codec.
//! * [`adp`]: decide whether `k` pairwise almost disjoint s-t paths exist
//!   (flow method for `k <= 2`, a dynamic program over arc tuples for
//!   acyclic graphs, and a layered lift for general digraphs).
//! * [`sfp`]: forbidden-pair separation checks and exact minimum separating
//!   pair sets.
//! * [`duality`]: the two LP relaxations, an exact rational simplex, gap
//!   reports and the zero-gap single-cut-arc algorithm.
//! * [`reductions`]: instance generators for the hardness constructions,
//!   together with their constructive certificates.
//! * [`cli`]: the `pathsep` command line.

pub mod adp;
pub mod cli;
pub mod duality;
pub mod graph;
pub mod reductions;
pub mod sfp;

pub use graph::{Arc, ArcId, ArcPath, Digraph, GraphError, StInstance, VertexId};
