use core::fmt;

/// Errors produced by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix dimension not supported or not matching the operation.
    InvalidDimension { expected: usize, found: usize },
    /// Matrix deviates from its conjugate transpose by more than the tolerance.
    NonHermitian { deviation: f64 },
    /// Trace of a candidate density matrix is not 1.
    Trace { trace: f64 },
    /// Candidate density matrix has a negative eigenvalue beyond numerical slack.
    NotPositive { min_eigenvalue: f64 },
    /// Jacobi sweeps exhausted without reaching diagonal form.
    NoConvergence { sweeps: usize },
    /// Argument outside the domain of a function (e.g. `ln_q` of a non-positive number).
    Domain(&'static str),
    /// Entropic index outside the accepted range.
    InvalidRank { q: f64 },
    /// Probability vector or table fails normalization / sign checks.
    InvalidDistribution(&'static str),
    /// Normalizer `1 + (1 - q) T_q(B)` is not strictly positive.
    DegenerateNormalizer { value: f64 },
    /// A family parameter lies outside its admissible interval.
    InvalidParameter { name: &'static str, value: f64 },
    /// Measurement parameters do not form a unit 4-vector.
    InvalidMeasurement { norm: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimension { expected, found } => {
                write!(f, "invalid dimension: expected {expected}, found {found}")
            }
            Error::NonHermitian { deviation } => {
                write!(f, "matrix is not hermitian (max deviation {deviation:e})")
            }
            Error::Trace { trace } => write!(f, "trace is {trace}, expected 1"),
            Error::NotPositive { min_eigenvalue } => {
                write!(f, "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")
            }
            Error::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge after {sweeps} sweeps")
            }
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::InvalidRank { q } => {
                write!(f, "invalid entropic index q = {q} (need q > 0 and |q - 1| >= 1e-6)")
            }
            Error::InvalidDistribution(what) => write!(f, "invalid distribution: {what}"),
            Error::DegenerateNormalizer { value } => {
                write!(f, "degenerate q-expectation normalizer {value:e}")
            }
            Error::InvalidParameter { name, value } => {
                write!(f, "parameter {name} = {value} out of range")
            }
            Error::InvalidMeasurement { norm } => {
                write!(f, "measurement parameters have norm {norm}, expected 1")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
