//! Number tower: exact rationals for protocol objects and fixed-point
//! reals at configurable precision for irrational targets.

mod expr;
mod fixed;
mod rational;
mod solve;

pub use expr::RealExpression;
pub use fixed::FixedReal;
pub use rational::{lcm_denominators, parse_rational, rational_to_fixed, rationalize};
pub use solve::{solve_linear, solve_rational, rational_rank};

use num_rational::BigRational;
use thiserror::Error;

/// Exact rational number in canonical form (reduced, positive denominator).
pub type Rational = BigRational;

/// Default fraction-bit count for [`FixedReal`] values.
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("square root of negative value")]
    NegativeSqrt,
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular at working precision (pivot column {col})")]
    Singular { col: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("value out of range: {0}")]
    OutOfRange(String),
}
