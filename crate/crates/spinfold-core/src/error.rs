use crate::chain::{ChainSpec, Site};
use thiserror::Error;

/// Errors raised by the algebra, builders and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("chain mismatch: {0} vs {1}")]
    ChainMismatch(ChainSpec, ChainSpec),
    #[error("site {site} out of range for chain {chain}")]
    SiteOutOfRange { site: Site, chain: ChainSpec },
    #[error("operation requires {expected}, got chain {got}")]
    WrongGeometry {
        expected: &'static str,
        got: ChainSpec,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("matrix dimension cap exceeded: {slots} sites > {cap}")]
    MatrixCapExceeded { slots: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown operator id `{0}`")]
    UnknownOperator(String),
}

pub type Result<T> = std::result::Result<T, Error>;
