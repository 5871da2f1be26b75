use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("p = {p} is not congruent to 1 mod {q}")]
    NotOneModQ { p: BigInt, q: u64 },
    #[error("{modulus} divides {value}")]
    Divisible { value: BigInt, modulus: BigInt },
    #[error("p = {0} coincides with q")]
    PrimeEqualsQ(BigInt),
    #[error("rational function has a pole at x = {0}")]
    Pole(BigRational),
    #[error("{value} has negative {q}-adic valuation")]
    NegativeValuation { value: BigRational, q: u64 },
    #[error("operands live in Q(zeta_{left}) and Q(zeta_{right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("element has non-integral coefficients")]
    NonIntegral,
    #[error("valuation of zero is undefined here")]
    Zero,
    #[error("no representation of {what} found for p = {p}")]
    NoRepresentation { what: &'static str, p: BigInt },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
