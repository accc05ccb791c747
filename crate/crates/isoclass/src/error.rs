use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime greater than 3")]
    NotPrime(u64),
    #[error("prime {0} is outside the supported range (p < 2^62)")]
    PrimeTooLarge(u64),
    #[error("curve is singular mod {0}")]
    SingularCurve(u64),
    #[error("point ({x}, {y}) is not on the curve mod {p}")]
    PointNotOnCurve { x: u64, y: u64, p: u64 },
    #[error("bad reduction at p = {p}: p divides 2b(a^2 - 4b)")]
    BadReduction { p: u64 },
    #[error("delta_k undefined: p = {p} divides k = {k}")]
    KDivisibleByP { k: i64, p: u64 },
    #[error("sum {sum} is not divisible by p = {p}")]
    NotDivisible { sum: i64, p: u64 },
    #[error("a = {0} must be odd")]
    AEven(i64),
    #[error("no auxiliary point with nonzero x exists on the codomain curve mod {0}")]
    NoAuxiliaryPoint(u64),
    #[error("({discriminant}/p) = 1 fails for p = {p}")]
    SplitConditionFailed { discriminant: i64, p: u64 },
    #[error("no witness prime below {cap} in class {residue} mod {modulus}")]
    NoWitnessPrime {
        residue: u64,
        modulus: u64,
        cap: u64,
    },
    #[error("b = 0 gives a curve that is singular for every prime")]
    AlwaysSingular,
}

pub type Result<T> = std::result::Result<T, Error>;
