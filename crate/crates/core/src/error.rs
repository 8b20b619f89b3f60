use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("D = {0} is not squarefree")]
    NotSquarefree(BigInt),
    #[error("D = {0} is out of range (need D >= 2)")]
    DTooSmall(BigInt),
    #[error("operands live in different fields (D = {0} vs D = {1})")]
    FieldMismatch(BigInt, BigInt),
    #[error("element is not totally positive")]
    NotTotallyPositive,
    #[error("m must be positive, got {0}")]
    NonPositiveM(BigInt),
    #[error("t = {t} must satisfy t = m*k (mod 2) when D = 1 (mod 4)")]
    ParityViolation { t: BigInt },
    #[error("t = {0} is not admissible here")]
    BadT(BigInt),
    #[error("k = {0} must be positive")]
    BadK(BigInt),
}

pub type Result<T> = std::result::Result<T, Error>;
