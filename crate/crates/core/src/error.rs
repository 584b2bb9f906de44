use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("{what} needs n <= {cap}, got n = {n}")]
    TooLarge { what: &'static str, n: usize, cap: usize },

    #[error("invalid parameter {name} = {value}: expected {expected}")]
    InvalidParameter { name: &'static str, value: f64, expected: &'static str },

    #[error("invalid graph family: {0}")]
    InvalidFamily(String),

    #[error("eigensolver did not converge at index {index}")]
    NoConvergence { index: usize },

    #[error("spectrum check failed: {what} = {value:e} exceeds tolerance {tol:e}")]
    SpectrumDefect { what: &'static str, value: f64, tol: f64 },

    #[error("threshold {t} is below the validity floor {floor}")]
    BelowValidityFloor { t: f64, floor: f64 },

    #[error("level set L_T is empty at T = {0}")]
    EmptyLevelSet(f64),

    #[error("{samples} samples requested, at least {min} required")]
    TooFewSamples { samples: usize, min: usize },

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::InvalidParameter { name, value, expected }
    }
}
