use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("rank must be at least 1, got {0}")]
    BadRank(u32),
    #[error("group C_{p}^{r} is too large to index")]
    GroupTooLarge { p: u64, r: u32 },
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{}coordinate {value} out of range [0, {}]", line_prefix(*.line), .p - 1)]
    CoordOutOfRange { line: Option<usize>, value: i64, p: u32 },
    #[error("operation requires rank {required}, group has rank {found}")]
    RankUnsupported { required: u32, found: u32 },
    #[error("subgroup direction must be nonzero")]
    ZeroDirection,
    #[error("basis vectors are linearly dependent mod p")]
    SingularBasis,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing `group <p> <r>` header")]
    HeaderMissing,
    #[error("sequences live in different groups")]
    GroupMismatch,
    #[error("divisor is not a subsequence")]
    NotASubsequence,
    #[error("subsum table needs {needed} bytes, memory cap is {cap}")]
    MemoryCapExceeded { needed: usize, cap: usize },
    #[error("k = {k} outside [1, {len}]")]
    BadK { k: usize, len: usize },
    #[error("exact counting supports |S| <= {max}, got {len}")]
    WidthExceeded { len: usize, max: usize },
    #[error("sequence is not squarefree")]
    NotSquarefree,
    #[error("part 3 needs |S| = {expected}, got {len}")]
    BadLengthForPart3 { len: usize, expected: usize },
    #[error("bad length: {0}")]
    BadLength(String),
    #[error("sumset operands must be nonempty")]
    EmptySet,
    #[error("theorem violation in {context}: {detail}")]
    TheoremViolation { context: String, detail: String },
    #[error("sequence has a zero-sum subsequence of length {length} (the full group order)")]
    HasFullLengthZeroSum { length: usize },
    #[error("sequence has a short zero-sum subsequence of length {length}")]
    HasShortZeroSum { length: usize },
    #[error("exact-length query infeasible: {0}")]
    FeasibilityGuard(String),
    #[error("sequence length {len} exceeds the guard {max}")]
    LengthGuard { len: usize, max: usize },
    #[error("coset cap M must be at least 1")]
    BadM,
    #[error("coset cap violated: {count} entries in one coset, cap {cap}")]
    CapViolated { count: usize, cap: u64 },
    #[error("no qualifying prime up to {cap}")]
    NotFound { cap: u64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("inequality not monotone in s at p = {p}")]
    MonotonicityViolated { p: u64 },
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("no zero-sumfree sequence of length {length} found within {attempts} attempts")]
    Fail { length: usize, attempts: u64 },
    #[error("exhaustive search for p = {0} is disabled by default")]
    ExhaustiveNotPermitted(u32),
    #[error("internal check failed: {0}")]
    Internal(String),
}

fn line_prefix(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

impl Error {
    pub(crate) fn violation(context: &str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation { context: context.to_string(), detail: detail.into() }
    }
}
