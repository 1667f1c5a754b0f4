use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    NvarsMismatch(usize, usize),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("polyvector degree overflow: {0} exceeds {1} variables")]
    DegreeOverflow(usize, usize),
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("bivector has non-constant entry at ({0},{1})")]
    NonConstant(usize, usize),
    #[error("bivector is not homogeneous quadratic")]
    NotQuadratic,
    #[error("coefficient degree {0} exceeds the allowed bound {1}")]
    DegreeTooHigh(usize, usize),
    #[error("Jacobi identity fails: [γ,γ] ≠ 0")]
    JacobiFailure,
    #[error("star product is not degree-preserving")]
    NotDegreePreserving,
    #[error("ansatz space too small at order {order}: solvable with derivative bound {bound}")]
    AnsatzTooSmall { order: usize, bound: usize },
    #[error("star product could not be extended at order {0}")]
    Obstructed(usize),
    #[error("relation generators are not in normalized form: {0}")]
    NotNormalized(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("singular linear system: {0}")]
    Singular(String),
    #[error("unbalanced relation {0}: right-hand side outweighs left-hand side")]
    UnbalancedRelation(usize),
    #[error("rewrite rule {0} does not decrease the word order")]
    NonDecreasingRule(usize),
    #[error("rewrite system is not confluent on word {0}")]
    NotConfluent(String),
    #[error("divisor polynomial is zero")]
    ZeroDivisor,
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("step {0}-{1} is not an edge of the complex")]
    NotAnEdge(usize, usize),
    #[error("paths are not homotopic within the complex")]
    NotHomotopic,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("lowest-order term on face {0:?} is not central")]
    NonCentral(Vec<usize>),
    #[error("lowest-order cochain is not closed on 3-face {0:?}")]
    NotClosed(Vec<usize>),
    #[error("invalid algebroid data: {0}")]
    InvalidData(String),
    #[error("parse error: {0}")]
    Parse(String),
}
