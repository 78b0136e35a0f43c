//! Dense complex linear algebra and the Euclidean structure of u*(H).

mod eigen;
mod hermitian;
mod matrix;

pub(crate) use eigen::eigh_matrix;
pub use eigen::{eigh, unitary_exp, SpectralDecomposition, MAX_SWEEPS, OFF_DIAGONAL_RTOL};
pub(crate) use hermitian::partial_trace_matrix;
pub use hermitian::{
    frobenius_inner, partial_trace, partial_transpose, projector, tensor_product, traceless_part, DensityState,
    HermitianOperator, TraceSide, HERMITICITY_TOL, PSD_TOL, TRACE_TOL,
};
pub(crate) use matrix::{vec_dot, vec_kron, vec_norm, ZERO};
pub use matrix::{ComplexMatrix, C64};
