use core::fmt;

/// Errors produced by the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operation is undefined for the identically-zero polynomial.
    ZeroPolynomial,
    /// Operation needs a polynomial of degree at least one.
    ConstantPolynomial,
    /// The polynomial has a root at the origin where a nonzero constant term
    /// is required (recursions with vanishing last coefficient are not handled).
    RootAtZero,
    /// A signal model violated a structural requirement.
    InvalidModel(&'static str),
    /// Real-form frequency outside the admissible range `|omega| < 0.5`.
    InvalidFrequency { omega: f64 },
    /// Series too short for the requested operation.
    SeriesTooShort { len: usize, min: usize },
    /// Window length outside `1 < L < N` (or the stricter bound the caller documents).
    WindowOutOfRange { window: usize, len: usize },
    /// Window length must exceed the polynomial degree.
    WindowTooSmall { window: usize, degree: usize },
    /// Requested more basis vectors than the numerical rank supports.
    RankDeficient { requested: usize, rank: usize },
    /// The last coordinate vector lies (numerically) inside the subspace, so
    /// the forecasting vector is undefined.
    Verticality { nu2: f64 },
    /// Backward continuation needs a nonzero leading recursion coefficient.
    ZeroLeadCoefficient,
    /// A basis with no vectors was supplied.
    EmptyBasis,
    /// The conjugate-pair constraint only applies to roots with nonzero imaginary part.
    RealRoot,
    /// Evaluation point coincides with a pole.
    PoleEvaluation,
    /// Not enough roots for a gap statistic.
    TooFewRoots { count: usize },
    /// A linear system was numerically singular.
    SingularSystem,
    /// Eigenvalue iteration failed to converge.
    ConvergenceFailure,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::ConstantPolynomial => write!(f, "polynomial must have degree >= 1"),
            Error::RootAtZero => write!(f, "polynomial must not vanish at the origin"),
            Error::InvalidModel(msg) => write!(f, "invalid signal model: {msg}"),
            Error::InvalidFrequency { omega } => {
                write!(f, "frequency {omega} outside |omega| < 0.5")
            }
            Error::SeriesTooShort { len, min } => {
                write!(
                    f,
                    "series of length {len} is shorter than the minimum {min}"
                )
            }
            Error::WindowOutOfRange { window, len } => {
                write!(f, "window {window} out of range for series length {len}")
            }
            Error::WindowTooSmall { window, degree } => {
                write!(f, "window {window} must exceed polynomial degree {degree}")
            }
            Error::RankDeficient { requested, rank } => {
                write!(
                    f,
                    "requested {requested} basis vectors but numerical rank is {rank}"
                )
            }
            Error::Verticality { nu2 } => {
                write!(
                    f,
                    "verticality: nu^2 = {nu2} too close to 1, forecasting undefined"
                )
            }
            Error::ZeroLeadCoefficient => {
                write!(f, "backward continuation needs a nonzero first coefficient")
            }
            Error::EmptyBasis => write!(f, "basis contains no vectors"),
            Error::RealRoot => write!(f, "root has zero imaginary part"),
            Error::PoleEvaluation => write!(f, "evaluation point coincides with a pole"),
            Error::TooFewRoots { count } => {
                write!(f, "need at least 3 roots for gap statistics, got {count}")
            }
            Error::SingularSystem => write!(f, "linear system is numerically singular"),
            Error::ConvergenceFailure => write!(f, "eigenvalue iteration did not converge"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
