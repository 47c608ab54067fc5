use thiserror::Error;

use crate::ribbon::GraphError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("slot map {map:?} is not injective into {arity} slots")]
    NonInjectiveSlotMap { map: Vec<usize>, arity: usize },

    #[error("evaluation point has {got} coordinates, expected {expected}")]
    PointLength { got: usize, expected: usize },

    #[error("double factorial is only defined here for odd m >= -1, got {0}")]
    DoubleFactorialDomain(i64),

    #[error("polynomial is not homogeneous of weight {expected}")]
    NotHomogeneous { expected: i64 },

    #[error("(g, n) = ({g}, {n}) is unstable: 2g - 2 + n <= 0")]
    Unstable { g: u32, n: usize },

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error("{needed} half-edges required, limit is {limit}")]
    ResourceLimit { needed: usize, limit: usize },

    #[error("polytope is unbounded")]
    UnboundedPolytope,

    #[error("polytope is empty")]
    EmptyPolytope,

    #[error("pfaffian needs an even dimension, got {0}")]
    OddDimension(usize),

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("perimeter equations are degenerate on the chosen edges")]
    DegenerateElimination,

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error("method `{0}` does not produce polynomials")]
    PointwiseOnly(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
