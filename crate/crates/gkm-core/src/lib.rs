//! Exact equivariant graph cohomology for the labeled graphs attached to the
//! classical root systems.
//!
//! The vertices of such a graph form a reflection group, every edge carries an
//! integer linear form as its label, and a cohomology class is a map from
//! vertices to integer polynomials whose difference across each edge is
//! divisible by the label of that edge.  Everything here is exact: coefficients
//! live in `Z`, in the dyadic fraction ring `Z[1/2]`, or in `GF(2)`, and ranks,
//! bases, lattice indices and module presentations are computed with
//! arbitrary-precision integer arithmetic.

pub mod cohomology;
pub mod gkmgraph;
pub mod intlinalg;
pub mod poly;
pub mod presentation;
pub mod ring;
pub mod weyl;

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// malformed input or an operation that is not defined for the arguments
    #[error("{0}")]
    Usage(String),
    /// a candidate class failed the divisibility condition on some edge
    #[error("not a cohomology class: {0}")]
    NotMember(String),
    /// a configured resource cap was exceeded
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// an internal invariant failed; always a bug
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps on the size of intermediate computations.
///
/// `max_matrix_cols` bounds the number of unknowns in any single linear
/// system; `max_group_order` bounds the number of vertices a graph
/// construction may enumerate.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_matrix_cols: usize,
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_matrix_cols: 4000, max_group_order: 1_000_000 }
    }
}

impl Limits {
    /// Read overrides from `GKM_MAX_MATRIX_COLS` and `GKM_MAX_GROUP_ORDER`.
    pub fn from_env() -> Limits {
        let mut limits = Limits::default();
        if let Ok(v) = std::env::var("GKM_MAX_MATRIX_COLS") {
            if let Ok(n) = v.parse() {
                limits.max_matrix_cols = n;
            }
        }
        if let Ok(v) = std::env::var("GKM_MAX_GROUP_ORDER") {
            if let Ok(n) = v.parse() {
                limits.max_group_order = n;
            }
        }
        limits
    }
}
