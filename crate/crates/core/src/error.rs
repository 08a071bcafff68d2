use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),

    #[error("not a cochain map: {0}")]
    NotACochainMap(String),

    #[error("pullback is not injective on cochains in degree {degree}")]
    NotInjectiveOnCochains { degree: usize },

    #[error("exactness fails at node {node} ({label})")]
    ExactnessFailure { node: usize, label: String },

    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("substitution is not primitive")]
    NotPrimitive,

    #[error("substitution does not force the border; collaring is required")]
    NotBorderForcing,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("group is not classified: {0}")]
    Unclassified(String),

    #[error("quotient cochain group is not free in degree {degree}")]
    QuotientNotFree { degree: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
