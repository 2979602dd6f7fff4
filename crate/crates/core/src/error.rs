use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("defining polynomial is reducible")]
    ReducibleModulus,
    #[error("defining polynomial is irreducible but not primitive")]
    NonPrimitiveModulus,
    #[error("GF({p}^{m}) exceeds the 2^24 element limit")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("no Conway polynomial for ({p}, {m}) in the table")]
    MissingConway { p: u32, m: u32 },
    #[error("malformed modulus: {0}")]
    BadModulus(String),
    #[error("Conway table line {line}: {msg}")]
    TableParse { line: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{n} does not divide {order}")]
    NotADivisor { n: u64, order: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CosetError {
    #[error("modulus {n} is not coprime to q = {q}")]
    NotCoprime { n: u64, q: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("coset index {index} out of range (1..={max})")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{0} is not a nonzero coset representative")]
    NotARepresentative(u64),
    #[error("{n1} does not divide {n}")]
    NotADivisor { n1: u64, n: u64 },
    #[error("reduced set is not a union of cosets (contains {0} but not its whole coset)")]
    NotCosetClosed(u64),
    #[error("every coset is already in the defining set")]
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CodeError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("code alphabet does not match the tower's big field")]
    AlphabetMismatch,
    #[error("alphabet GF({0}) is not of square order")]
    NonSquareAlphabet(u32),
    #[error("lambda = {lambda} exceeds (q^(2s)-1)/n1 = {max}")]
    LambdaTooLarge { lambda: u64, max: u64 },
    #[error("invalid coordinate range {start}..{end} for length {len}")]
    BadRange { start: usize, end: usize, len: usize },
    #[error("exhaustive search over {words} codewords (dim {dim}) exceeds the budget")]
    TooLarge { dim: usize, words: f64 },
    #[error("the zero code has no minimum distance")]
    EmptyCode,
    #[error("defining set modulus {modulus} is incompatible with the point set")]
    IncompatibleDefiningSet { modulus: u64 },
    #[error("malformed code text: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{n1} does not divide q^(2s)-1 = {order}")]
    NotADivisor { n1: u64, order: u128 },
    #[error("n1 = {n1} exceeds the brute-force budget {budget}")]
    BudgetExceeded { n1: u64, budget: u64 },
    #[error("equation has no solution for n1 = {0}")]
    NoSolution(u64),
    #[error("no closed form for the excluded Case 4 subcase q=2, a=s-2")]
    ExcludedCase,
    #[error("several cases match n1 = {0} and brute force is over budget")]
    AmbiguousCase(u64),
    #[error("q^(2s) overflows for q = {q}, s = {s}")]
    Overflow { q: u64, s: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Coset(#[from] CosetError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("code is not Hermitian self-orthogonal (rows {0} and {1} violate)")]
    NotSelfOrthogonal(usize, usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("a'_tau' = {max_rep} exceeds the sharp bound L = {bound}")]
    BoundExceeded { max_rep: u64, bound: i64 },
    #[error("lengthening needs at least one step")]
    ZeroSteps,
    #[error("scan grid needs {needed} pipeline runs, budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
}
