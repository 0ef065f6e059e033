//! Exact arithmetic over `Q`.

mod bivar;
mod mat2;
mod ratfunc;
pub(crate) mod rational;
mod tri;
mod uni;

pub use mat2::Mat2RF;
pub use ratfunc::RatFunc;
pub use rational::{parse_rational, rational_to_string, Rational};
pub use tri::{tri_content_gcd, tri_divides, Monomial, TriHomPoly};
pub use uni::{is_squarefree, uni_gcd, UniPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("all inputs are zero")]
    AllZero,
    #[error("monomial {0:?} has total degree {1}, expected {2}")]
    MixedDegree([u32; 3], u32, u32),
    #[error("singular matrix")]
    SingularMatrix,
}
