//! Exact arithmetic over real constructible numbers.

mod expr;
mod interval;
mod parse;
mod real;

pub use expr::{from_expr, to_expr, to_json};
pub use interval::{Enclosure, RatInterval};
pub use parse::parse_rational;
pub use real::Real;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of a negative value")]
    NegativeSqrt,
    #[error("cannot parse number `{0}`")]
    Parse(String),
    #[error("malformed expression: {0}")]
    Expr(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arith(op: ArithOp, x: &Real, y: &Real) -> Result<Real, AlgebraError> {
    Ok(match op {
        ArithOp::Add => x + y,
        ArithOp::Sub => x - y,
        ArithOp::Mul => x * y,
        ArithOp::Div => x.checked_div(y)?,
    })
}
