use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DivisionByZero,
    Pole,
    Parse(String),
    Domain(String),
    NotDivisible,
    NotQuasiInvariant,
    Resource(String),
    Violation(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::Pole => f.write_str("evaluation point is a pole"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::NotDivisible => f.write_str("polynomial is not divisible"),
            Error::NotQuasiInvariant => f.write_str("polynomial is not quasi-invariant"),
            Error::Resource(s) => write!(f, "resource bound exceeded: {s}"),
            Error::Violation(s) => write!(f, "check failed: {s}"),
        }
    }
}
