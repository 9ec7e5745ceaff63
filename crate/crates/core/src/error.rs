use thiserror::Error;

use crate::policy::Policy;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("table size must be at least 1 cell")]
    InvalidSize,
    #[error("policy {0} is not valid here")]
    InvalidPolicy(Policy),
    #[error("address {addr} is outside 1..={m}")]
    InvalidAddress { addr: usize, m: usize },
    #[error("table is full ({m} of {m} cells occupied)")]
    TableFull { m: usize },
    #[error("item {item} is outside 1..={n}")]
    InvalidItem { item: usize, n: usize },
    #[error("table holds no items, so the successful-search distribution is undefined")]
    EmptyTable,
    #[error("closed form is only available for k = 1 or k = 2, got k = {0}")]
    UnsupportedK(usize),
    #[error("load factor {0} is outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("numeric failure: {0}")]
    NumericFailure(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("m^n = {m}^{n} exceeds the enumeration limit of {limit} sequences")]
    TooLarge { m: usize, n: usize, limit: u64 },
}
