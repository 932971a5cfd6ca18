//! 2×2 matrix groups over a [`ProductAlgebra`](crate::finite_algebra::ProductAlgebra)
//! and over Z/p^n.

mod adjoint;
mod curated;
mod group;
mod mat2;
mod suite;
mod zpn;

use thiserror::Error;

use crate::finite_algebra::AlgebraError;

pub use adjoint::{
    adjoint_irreducibility, adjoint_orbit_span, from_trace_zero_vector, trace_in_fp_space, trace_zero_vector,
};
pub use curated::{curated_subgroups, CuratedSubgroup};
pub use group::{
    embed_fp_matrix, enumerate_ghat, enumerate_sl2, ghat_membership, ghat_order, normal_closure, sl2_generators,
    sl2_order, GroupSet, GROUP_LIMIT,
};
pub use mat2::{elementary_s, elementary_t, Mat2};
pub use suite::{verification_suite, Check, SuiteReport};
pub use zpn::{delta_vs_2s_check, log_equivariance_check, mat_log, Mat2ZpN, MatLog};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatGroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("group of order {size} exceeds the enumeration limit {limit}")]
    TooLarge { size: String, limit: u64 },
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("generator {0} is not an element of the ambient group")]
    NotSubgroup(String),
    #[error("seed matrix has nonzero trace")]
    NonzeroTrace,
    #[error("matrix is not congruent to the identity modulo p^{0}")]
    NotUnipotentAtLevel(u32),
    #[error("invalid level: {0}")]
    InvalidLevel(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}
