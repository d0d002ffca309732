//! Cycle classes of non-backtracking closed walks on finite graphs, the
//! determinant and zeta series of the edge matrix, and the identities
//! relating them.

pub mod arith;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod series;
pub mod verify;
pub mod witt;

pub use error::{Result, WittError};
pub use graph::{build_edge_matrix, symmetrize, EdgeMatrix, OrientedGraph, SymmetrizedGraph};
pub use linalg::{DetPolynomial, IntMatrix};
pub use num_bigint::BigInt;
pub use witt::{omega, IdentityId, OmegaTable};
