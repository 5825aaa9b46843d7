use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("series needs at least one coefficient")]
    EmptySeries,
    #[error("series must have zero constant term")]
    NonZeroConstant,
    #[error("series must have constant term 1")]
    ConstantNotOne,
    #[error("coefficient index {index} exceeds truncation order {order}")]
    OrderTooSmall { index: usize, order: usize },
    #[error("index out of range: k = {k} > n = {n}")]
    BelowDiagonal { n: usize, k: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
