//! Exact rational arithmetic and the rigorous enclosures built on it.
//!
//! Every quantity the witness engine manipulates (thresholds, sample points,
//! centres, limits) is a [`Rat`]. Irrational values only ever appear as
//! enclosures: roots are bounded from below, and `sin` is bracketed by
//! consecutive alternating partial sums.

mod interval;
mod rat;
mod roots;
mod sin;

use thiserror::Error;

pub use interval::Interval;
pub use rat::{cmp_abs, Rat};
pub use roots::{positive_root_lower_bound, root_lower_bound};
pub use sin::{sin_enclosure, sin_enclosure_interval, sin_enclosure_wide};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("sin enclosure argument {0} lies outside [-2, 2]")]
    ArgumentOutOfRange(Rat),
    #[error("sin enclosure degree must be an odd positive integer, got {0}")]
    BadDegree(u32),
    #[error("interval bounds out of order: [{lo}, {hi}]")]
    InvalidInterval { lo: Rat, hi: Rat },
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
}
