use thiserror::Error;

use crate::sepsys::SepId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("separation {0} does not belong to this universe")]
    ForeignSeparation(SepId),

    #[error("{what}: size {got} exceeds the configured bound {limit}")]
    SizeBound {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("order function is not submodular: {0}")]
    NotSubmodular(String),

    #[error("order function is not symmetric on separation {0}")]
    AsymmetricOrder(String),

    #[error("systems do not form an ascending chain: system {0} is not contained in system {1}")]
    NotAChain(usize, usize),

    #[error("set {0} of the family is empty")]
    EmptySet(usize),

    #[error("index order is not a strict partial order: {0}")]
    NotStrictPartialOrder(String),

    #[error("map is not an isomorphism of separation systems: {0}")]
    NotIsomorphism(String),

    #[error("separation {sep} is not oriented by {which}")]
    NotOriented { sep: SepId, which: &'static str },

    #[error("profiles {0} and {1} are not distinguishable")]
    Indistinguishable(usize, usize),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("no pivot at depth {depth}: no element of the remaining {remaining} sets is nested with some element of every other set")]
    NoPivot { depth: usize, remaining: usize },

    #[error("extremal elements {0} and {1} cross")]
    ExtremalCrossing(SepId, SepId),

    #[error("set {0} has no element nested with the extremal elements chosen so far")]
    EmptyRestriction(usize),

    #[error("result is not nested: {0} crosses {1}")]
    NotNested(SepId, SepId),

    #[error("invalid tree-decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
