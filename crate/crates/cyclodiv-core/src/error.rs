//! Error type shared by every module of the crate.

/// Coarse classification used by callers (notably the CLI) to map errors to
/// exit codes without matching on every variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// A caller violated a documented precondition.
    Precondition,
    /// An internal invariant that is supposed to be mathematically impossible
    /// to break was observed broken; the result cannot be trusted.
    Invariant,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a monic polynomial")]
    NotMonic,
    #[error("division requires a monic divisor")]
    NonMonicDivisor,
    #[error("modulus must be >= 1")]
    ZeroModulus,
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("mixed moduli {0} and {1}")]
    ModulusMismatch(u64, u64),
    #[error("polynomial vanishes identically mod {0}")]
    ZeroReduction(u64),
    #[error("division by the zero polynomial mod {0}")]
    ZeroDivisorPoly(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("residue is 0 mod {0}; no multiplicative order")]
    ZeroResidue(u64),
    #[error("cyclotomic index must be >= 1")]
    CyclotomicIndexZero,
    #[error("factor list must be strictly ascending in d (saw {0} then {1})")]
    UnsortedFactors(u64, u64),
    #[error("factor d = {0} carries multiplicity 0")]
    ZeroMultiplicity(u64),
    #[error("duplicate prime {0} in family specification")]
    DuplicatePrime(u64),
    #[error("{0} is required to be prime for this family")]
    FamilyPrimeRequired(u64),
    #[error("polynomial must be squarefree")]
    NotSquarefree,
    #[error("polynomial must not vanish at 0")]
    ConstantTermZero,
    #[error("polynomial must have nonnegative coefficients")]
    NegativeCoefficient,
    #[error("prime range must satisfy 2 <= lo <= hi (got {0}..={1})")]
    BadPrimeRange(u64, u64),
    #[error("base must be >= 2")]
    BaseTooSmall(u64),
    #[error("{q} does not divide the cyclotomic value at ({b}, {d})")]
    NotADivisor { b: u64, d: u64, q: String },
    #[error("factor set must contain some d >= 2")]
    NoNontrivialFactor,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(u64),
    #[error("stripping invariant broken at (b, d) = ({b}, {d}): {l}^2 divides the cyclotomic value for d > 2")]
    StrippedTwice { b: u64, d: u64, l: u64 },
    #[error("primitive-divisor census disagrees with the known exception list at (b, d) = ({b}, {d})")]
    ExceptionMismatch { b: u64, d: u64 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::StrippedTwice { .. } | Error::ExceptionMismatch { .. } => ErrorKind::Invariant,
            _ => ErrorKind::Precondition,
        }
    }
}
