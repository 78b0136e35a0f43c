//! Convex hulls of compact group orbits of quantum states and channels.
//!
//! The crate decides when a convexed orbit `Conv(K·x₀)` is a convex body,
//! certifies membership in such hulls with explicit mixtures, measures
//! inscribed balls, and analyses channels through the Jamiołkowski
//! isomorphism. Modules:
//!
//! - [`operator`]: dense complex matrices, Hermitian operators, density states.
//! - [`bipartite`]: Schmidt decomposition, maximal entanglement, block decomposition.
//! - [`orbit`]: invariant-subspace closure and the convex-body decision.
//! - [`hull`]: Frank–Wolfe membership, inscribed balls, separability oracle.
//! - [`channel`]: Kraus/Choi forms, depolarizing channel, mixed-unitary certificates.
//! - [`cli`]: the command-line front end used by the `convexed-orbits` binary.

pub mod bipartite;
pub mod channel;
pub mod cli;
pub mod error;
pub mod hull;
pub mod operator;
pub mod orbit;
pub mod random;

pub use error::{Error, Result};
