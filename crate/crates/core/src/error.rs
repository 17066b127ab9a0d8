use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("context error: {0}")]
    Context(String),
    #[error("degree of the zero polynomial is undefined")]
    ZeroDegree,
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("{0}")]
    Precondition(String),
    #[error("unpaired variable {0} in bracket")]
    Unpaired(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("model error: {0}")]
    Model(String),
    #[error("both gcd arguments are zero")]
    GcdOfZeros,
    #[error("stratum of degree -{0} not built yet")]
    StratumNotBuilt(usize),
    #[error("element is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("obstruction not liftable at q={q}; remainder: {certificate}")]
    NotLiftable { q: usize, certificate: String },
    #[error("input does not lie in a single G(q,r) stratum")]
    MixedStratum,
    #[error("iteration cap {cap} exhausted")]
    CapExhausted { cap: usize },
}
