use thiserror::Error;

/// Everything that can go wrong below the CLI layer.
///
/// Variants are split between precondition violations (bad user input) and
/// internal-arithmetic failures; the CLI maps the latter to a distinct exit
/// code because they indicate a bug, not a bad invocation.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("characteristic {0} < 5 is not supported")]
    SmallCharacteristic(u64),
    #[error("extension degree {0} not in {{1, 2}}")]
    UnsupportedDegree(u32),
    #[error("q = {q} exceeds the configured cap {cap}")]
    CapExceeded { q: u64, cap: u64 },
    #[error("3 does not divide q - 1 = {0}, so no cubic character exists")]
    NoCubicCharacter(u64),
    #[error("residue {residue} mod {ell} lifts to no integer in the Hasse window |n| <= {bound}")]
    LiftOutOfRange { residue: u64, ell: u64, bound: i64 },
    #[error("lambda^3 = 27: the cubic x^3+y^3+1 = lambda*x*y is singular")]
    SingularCurve,
    #[error("census is a brute-force oracle, refused for q = {0} > 64")]
    OracleScaleExceeded(u64),
    #[error("D = {0} is not a positive discriminant (need D > 0, D = 0 or 3 mod 4)")]
    BadDiscriminant(i64),
    #[error("(q, s, n) = ({q}, {s}, {n}) matches none of the class-count cases")]
    CaseNotCovered { q: u64, s: i64, n: u32 },
    #[error("r-even moment identity needs the supersingular multiplicity R")]
    MissingR,
    #[error("no single R satisfies both the m=2 and m=4 identities")]
    Inconsistent,
    #[error("Gamma evaluated at the nonpositive integer {0}")]
    PoleError(i64),
    #[error("unsupported arguments: {0}")]
    UnsupportedArguments(String),
    #[error("range error: {0}")]
    BadRange(String),
    #[error("series truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("half-integer exponent {num}/2 applied to non-square {base}")]
    UnsupportedExponent { base: i64, num: i64 },
    #[error("argument {0} outside the domain")]
    DomainError(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
