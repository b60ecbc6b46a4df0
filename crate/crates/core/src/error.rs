use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero")]
    ValuationOfZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {p}^{k} does not fit in 62 bits")]
    ModulusTooLarge { p: u64, k: u32 },

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("quotient is not p-integral: {0}")]
    NotIntegral(String),

    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("composition requires {0}")]
    Composition(String),

    #[error("non-invertible denominator {denominator} while integrating in {ring}")]
    NonInvertibleDenominator { denominator: i64, ring: String },

    #[error("insufficient series order: requested {requested}, achievable {achievable}")]
    InsufficientOrder { requested: i64, achievable: i64 },

    #[error("integrality assertion failed: {0}")]
    Integrality(String),

    #[error("residual pole of order {0} after depletion")]
    ResidualPole(i64),

    #[error("nonzero constant term after depletion: {0}")]
    NonzeroConstant(String),

    #[error("uncertifiable tail: function has neither a regularity declaration nor finite support")]
    UncertifiableTail,

    #[error("insufficient degree bound: have {have}, need at least {need} for precision {precision}")]
    InsufficientDegree { have: i64, need: i64, precision: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}
