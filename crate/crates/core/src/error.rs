use thiserror::Error;

/// Errors raised by field, polynomial and code operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus is not monic")]
    NonMonicModulus,
    #[error("modulus is reducible: divisible by {factor}")]
    ReducibleModulus { factor: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("requested subfield is not on the field's tower path")]
    NotOnTowerPath,
    #[error("field of cardinality {card} admits no Hermitian conjugation")]
    NoConjugation { card: u64 },
    #[error("non-separable modulus: gcd({m}, {q}) != 1")]
    NonSeparable { m: usize, q: u64 },
    #[error("reciprocal undefined: constant term is zero")]
    ZeroConstantTerm,
    #[error("trace normalization undefined: block length {m} is divisible by the characteristic")]
    TraceNormalization { m: usize },
    #[error("codes have mismatched length or field")]
    CodeMismatch,
    #[error("zero code has no minimum distance")]
    ZeroCode,
    #[error("enumeration budget exceeded: {needed} codewords, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("block partition does not match code length")]
    PartitionMismatch,
    #[error("CRT unavailable: block length {m} not coprime to field size")]
    CrtUnavailable { m: usize },
    #[error("support mask inconsistent with block lengths")]
    MaskInconsistent,
    #[error("codeword does not belong to constituent {index}")]
    NotInConstituent { index: usize },
    #[error("juxtaposition requires components over the same field")]
    MixedFields,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
