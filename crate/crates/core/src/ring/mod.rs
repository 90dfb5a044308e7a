//! Exact coefficients and sparse homogeneous elements of weighted free
//! modules `S^m_d = ⊕ S(-d_k) e_k` over `S = A[x_0, …, x_n]`.

mod coeff;
mod element;
mod param;
mod term;

pub use coeff::{integer, rational, Coefficient, Rational};
pub use element::{ModuleElement, Poly};
pub use param::{Param, ParamMonomial, ParamPoly};
pub use term::{monomials_of_degree, ExponentVector, FreeModuleLayout, ModuleTerm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("heterogeneous element: terms of degree {first} and {other}")]
    HeterogeneousElement { first: i64, other: i64 },
    #[error("component e{component} out of range for rank {rank}")]
    ComponentOutOfRange { component: usize, rank: usize },
    #[error("term has {found} variables, expected {expected}")]
    VariableCount { expected: usize, found: usize },
    #[error("elements live in different free modules")]
    LayoutMismatch,
    #[error("parameter {0} has no assigned value")]
    MissingParameter(Param),
}
