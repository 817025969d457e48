use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable `{0}` has zero combined coefficient")]
    ZeroCoefficient(String),
    #[error("equation has no variables")]
    NoVariables,
    #[error("equation needs at least {min} variables, found {found}")]
    TooFewVariables { min: usize, found: usize },
    #[error("coefficient zero at position {0}")]
    ZeroInput(usize),
    #[error("integer overflow in coefficient arithmetic")]
    Overflow,
    #[error("tuple has length {got}, equation has {expected} variables")]
    TupleLength { expected: usize, got: usize },
    #[error("tuple {0:?} does not satisfy the equation")]
    NotASolution(Vec<u32>),
    #[error("expected exactly {expected} variables, found {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("equation is not homogeneous (b = {0})")]
    Inhomogeneous(i64),
    #[error("all coefficients have the same sign; no solutions in positive integers")]
    SameSign,
    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("cannot collapse variables {i} and {j}: combined coefficient is zero")]
    DegenerateCollapse { i: usize, j: usize },
    #[error("invalid index partition: {0}")]
    Partition(String),
    #[error("invalid triple ({p},{q},{r}): {msg}")]
    Triple { p: i64, q: i64, r: i64, msg: String },
    #[error("M = {m} is not divisible by t = {t}")]
    NotDivisible { m: i64, t: i64 },
    #[error("triple ({p},{q},{r}) is not ordered (need p >= q >= r)")]
    NotOrdered { p: i64, q: i64, r: i64 },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("no closed-form density applies to ({p},{q},{r})")]
    DensityUnknown { p: i64, q: i64, r: i64 },
    #[error("n = {n} exceeds the oracle cap {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("hypergraph has an edge of size {0}; a graph is required")]
    NotAGraph(usize),
    #[error("sets S and B intersect")]
    NotDisjoint,
    #[error("connected component with {0} vertices exceeds the 128-vertex engine limit")]
    ComponentTooLarge(usize),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("grid spec: {0}")]
    Grid(String),
    #[error("{0}")]
    Domain(String),
}
