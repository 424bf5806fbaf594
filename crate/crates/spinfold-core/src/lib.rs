//! Symbolic Pauli-string algebra and verification harness for boundary
//! folding of integrable spin chains.
//!
//! The crate builds the operator content of the nearest-neighbour and
//! hyperbolic long-range chains (Hamiltonians, nonlocal charges, boundary
//! charges), implements the multiplicative folding maps that turn line-chain
//! operators into half-line operators, and machine-checks the fold identities
//! and algebra relations on finite chains — exactly over rational-complex
//! coefficients where the couplings are rational, in double precision for the
//! transcendental kernels.

pub mod chain;
pub mod double_row;
pub mod error;
pub mod fold;
pub mod ino;
pub mod operator;
pub mod oracle;
pub mod pauli;
pub mod scalar;
pub mod suite;
pub mod verify;
pub mod xxx;

pub use chain::{ChainSpec, Geometry, Row, Rows, Site};
pub use error::{Error, Result};
pub use operator::OperatorSum;
pub use pauli::{Gen, PauliString};
pub use scalar::{Exact, Scalar};
