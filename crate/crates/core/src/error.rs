use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph is not decomposable")]
    NotDecomposable,

    #[error("toggling edge ({0}, {1}) leaves a non-decomposable graph")]
    NotDecomposableAfterToggle(usize, usize),

    #[error("restriction to the intersection {0} is not complete")]
    IncompatibleIntersection(VertexSet),

    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("graph is outside the support of the law")]
    OutOfSupport,

    #[error("unknown law `{0}`")]
    UnknownLaw(String),

    #[error("law is not structurally Markov")]
    NotStructurallyMarkov,

    #[error("law does not have full support")]
    IncompleteSupport,

    #[error("conditioning event has zero probability")]
    ZeroMassEvent,

    #[error("directed graph contains a cycle")]
    CyclicInput,

    #[error("edge ({0}, {1}) is not covered")]
    NotCovered(usize, usize),

    #[error("{0} is not ancestral")]
    NotAncestral(VertexSet),

    #[error("{0} is not ancestral in any member of the dagoid")]
    NotAncestralInDagoid(VertexSet),

    #[error("ordering is not compatible with the graph")]
    IncompatibleOrder,

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("equivalence criteria disagree: skeleton/immoralities say {structural}, d-clique vectors say {algebraic}")]
    CriteriaDisagree { structural: bool, algebraic: bool },

    #[error("recovered parameter reproduces the law only to {max_error:e}")]
    RecoveryMismatch { max_error: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotDecomposable => "NotDecomposable",
            Error::NotDecomposableAfterToggle(..) => "NotDecomposableAfterToggle",
            Error::IncompatibleIntersection(_) => "IncompatibleIntersection",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::OutOfSupport => "OutOfSupport",
            Error::UnknownLaw(_) => "UnknownLaw",
            Error::NotStructurallyMarkov => "NotStructurallyMarkov",
            Error::IncompleteSupport => "IncompleteSupport",
            Error::ZeroMassEvent => "ZeroMassEvent",
            Error::CyclicInput => "CyclicInput",
            Error::NotCovered(..) => "NotCovered",
            Error::NotAncestral(_) => "NotAncestral",
            Error::NotAncestralInDagoid(_) => "NotAncestralInDagoid",
            Error::IncompatibleOrder => "IncompatibleOrder",
            Error::NumericalFailure(_) => "NumericalFailure",
            Error::CriteriaDisagree { .. } => "CriteriaDisagree",
            Error::RecoveryMismatch { .. } => "RecoveryMismatch",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { what, n, cap })
    } else {
        Ok(())
    }
}
