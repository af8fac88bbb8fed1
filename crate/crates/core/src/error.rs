use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("expected {expected} seed terms, got {got}")]
    SeedArityMismatch { expected: usize, got: usize },
    #[error("unknown family `{0}` (expected U, V or W)")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FastEvalError {
    #[error("shift vectors are built from the n-step Fibonacci family, got a cache of family {0}")]
    FamilyMismatch(crate::sequence::Family),
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("shift overflows a 64-bit index")]
    ShiftOverflow,
    #[error("naive evaluation refused for |r| = {0} (limit {limit})", limit = crate::fast_eval::NAIVE_LIMIT)]
    NaiveTooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown identity id `{0}`")]
    UnknownId(String),
    #[error("identity {id}: {reason}")]
    OutOfDomain { id: String, reason: String },
    #[error("lemma variant {0} out of range")]
    VariantOutOfRange(u8),
    #[error("relation has {got} taps, expected {expected}")]
    RelationArity { expected: usize, got: usize },
    #[error("invalid linear relation: {0}")]
    InvalidRelation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("denominator vanishes at x = 0; no power series expansion")]
    NonExpandable,
    #[error("zero denominator polynomial")]
    ZeroDenominator,
    #[error("evaluation point x = 0 is not allowed")]
    ZeroEvaluationPoint,
    #[error("closed form is singular at x = {0} and no limit form applies")]
    SingularPoint(String),
}
