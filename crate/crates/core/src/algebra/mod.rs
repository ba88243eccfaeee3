//! Exact polynomial and rational-function algebra over [`Rat`].
//!
//! [`Poly::taylor_shift`] rewrites `p(c + t)` as a polynomial in `t`, which is
//! the expansion step behind every recentred limit claim.
//! [`RatFunc::centered_difference`] and [`RatFunc::infinity_substitute`] build
//! the recentred functions `f(c + t) - L` and `f(1/t)`.

mod expr;
mod lower;
mod poly;
mod ratfunc;

use thiserror::Error;

use crate::numeric::Rat;

pub use expr::{EvalError, Expr, Value};
pub use lower::{lower_expr, to_ratfunc, Lowered, SinPattern};
pub use poly::{centered_tail_bound, Poly, PolyDisplay};
pub use ratfunc::{poly_to_expr, RatFunc, RatFuncDisplay};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("denominator vanishes at {0}")]
    DivisionByZero(Rat),
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("unsupported expression: {0}")]
    Unsupported(String),
}
