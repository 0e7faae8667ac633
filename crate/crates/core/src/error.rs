use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LpError {
    #[error("coefficients must be finite")]
    NonFinite,
    #[error("constraint normal must be nonzero")]
    ZeroNormal,
    #[error("objective must be nonzero")]
    ZeroObjective,
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("bounding magnitude must be positive and finite, got {0}")]
    InvalidBound(f64),
    #[error("tolerances must be positive")]
    InvalidTolerance,
    #[error("order has {got} entries but the problem has {expected} constraints")]
    PermutationLength { expected: usize, got: usize },
    #[error("order is not a permutation: index {0} is out of range or repeated")]
    NotAPermutation(usize),
    #[error("batch must contain at least one problem")]
    EmptyBatch,
    #[error("batch has {problems} problems but {permutations} permutations")]
    BatchLengthMismatch { problems: usize, permutations: usize },
    #[error("block width must be at least 1")]
    ZeroBlockWidth,
    #[error("no work units were recorded")]
    NoWork,
    #[error("problem has {m} constraints; the brute-force oracle accepts at most {cap}")]
    OracleCapExceeded { m: usize, cap: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("adversarial construction failed at constraint {0}")]
    ConstructionFailed(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
