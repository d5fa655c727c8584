use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial {poly:?} is reducible over F_{p}")]
    ReduciblePolynomial { poly: Vec<u64>, p: u64 },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("q = {0} is not congruent to 1 mod 3: F_q has no cube nonresidue, so the half-space is undefined")]
    NotCongruent1Mod3(u64),
    #[error("field of order {0} is too large for table-backed arithmetic")]
    FieldTooLarge(u128),
    #[error("level mismatch: {0}")]
    LevelMismatch(String),
    #[error("subgroup order {subgroup} does not divide {modulus}")]
    NotASubgroup { subgroup: u64, modulus: u64 },
    #[error("unknown character condition: {0}")]
    UnknownCondition(String),
    #[error("matrix is singular")]
    Singular,
    #[error("half-space action hit a zero denominator")]
    DenominatorZero,
    #[error("point violates the half-space determinant condition")]
    InvalidPoint,
    #[error("budget exceeded: {what} needs {needed} operations, budget is {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u64 },
    #[error("unsupported class kind: {0}")]
    UnsupportedKind(String),
    #[error("wrong branch: {0}")]
    WrongBranch(String),
    #[error("horocycle argument is singular")]
    SingularKappa,
    #[error("unsupported regime (p, n) = ({p}, {n}): the decomposition is only available when gcd(n, 6) = 1")]
    UnsupportedRegime { p: u64, n: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

/// Fails with [`Error::BudgetExceeded`] when `needed` operations exceed `budget`.
pub fn check_budget(what: &str, needed: u128, budget: u64) -> Result<()> {
    if needed > budget as u128 {
        Err(Error::BudgetExceeded { what: what.to_string(), needed, budget })
    } else {
        Ok(())
    }
}
