use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Rejected inputs across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Cyclotomic index `s = 0`.
    ZeroCyclotomicIndex,
    /// Division by the zero polynomial.
    ZeroDivisor,
    /// Division by a polynomial whose leading coefficient is not 1.
    NonMonicDivisor,
    /// An operation that needs a monic polynomial of positive degree got something else.
    NonMonic,
    /// A polynomial was expected to have nonnegative coefficients.
    NegativeCoefficient { exponent: usize, value: i64 },
    /// Sets must have at least two distinct elements.
    SetTooSmall { len: usize },
    /// A product factor with `m = 0` or `n < 2`.
    InvalidFactor { m: u64, n: u64 },
    /// More factors than the permutation search supports.
    TooManyFactors { count: usize, max: usize },
    /// An operation defined for a fixed number of factors got a different count.
    WrongFactorCount { expected: usize, found: usize },
    /// A fraction outside `[0, 1)`, with zero denominator, or not in lowest terms.
    InvalidTheta { numer: i64, denom: i64 },
    /// Spectrum elements must be distinct and nonzero.
    DegenerateSpectrum,
    /// Exact integer arithmetic left the range of the coefficient type.
    Overflow,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroCyclotomicIndex => write!(f, "cyclotomic index must be positive"),
            Error::ZeroDivisor => write!(f, "division by the zero polynomial"),
            Error::NonMonicDivisor => write!(f, "divisor must be monic"),
            Error::NonMonic => write!(f, "polynomial must be monic of positive degree"),
            Error::NegativeCoefficient { exponent, value } => {
                write!(f, "coefficient of x^{exponent} is negative ({value})")
            }
            Error::SetTooSmall { len } => {
                write!(f, "set needs at least 2 distinct elements, got {len}")
            }
            Error::InvalidFactor { m, n } => {
                write!(f, "invalid factor {m}:{n} (need m >= 1 and n >= 2)")
            }
            Error::TooManyFactors { count, max } => {
                write!(f, "{count} factors given, at most {max} supported")
            }
            Error::WrongFactorCount { expected, found } => {
                write!(f, "expected {expected} factors, found {found}")
            }
            Error::InvalidTheta { numer, denom } => {
                write!(f, "{numer}/{denom} is not a reduced fraction in [0, 1)")
            }
            Error::DegenerateSpectrum => {
                write!(f, "spectrum elements must be distinct and nonzero")
            }
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
