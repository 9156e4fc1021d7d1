use thiserror::Error;

/// Failure modes of the numerical routines. Every variant names the operation
/// that raised it so callers can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: pole of the gamma function at x = {x}")]
    Pole { op: &'static str, x: f64 },
    #[error("{op}: order {nu} outside the supported range")]
    InvalidOrder { op: &'static str, nu: f64 },
    #[error("{op}: zero argument")]
    ZeroArgument { op: &'static str },
    #[error("{op}: argument lies on the branch cut")]
    BranchCut { op: &'static str },
    #[error("{op}: result overflows double precision")]
    Overflow { op: &'static str },
    #[error("{op}: no convergence after {iterations} iterations")]
    NoConvergence { op: &'static str, iterations: usize },
    #[error("{op}: flux {alpha} is integer or too close to an integer")]
    IntegerFlux { op: &'static str, alpha: f64 },
    #[error("{op}: {what} must be positive, got {value}")]
    NonPositive { op: &'static str, what: &'static str, value: f64 },
    #[error("{op}: {what} must be finite")]
    NonFinite { op: &'static str, what: &'static str },
    #[error("{op}: spectral parameter {re}{im:+}i lies on [0, inf)")]
    OnSpectrum { op: &'static str, re: f64, im: f64 },
    #[error("{op}: matrix is singular (smallest singular value {sigma:e})")]
    Singular { op: &'static str, sigma: f64 },
    #[error("{op}: matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { op: &'static str, deviation: f64 },
    #[error("{op}: points coincide")]
    CoincidentPoints { op: &'static str },
    #[error("{op}: direction {theta} is the singular direction of the amplitude")]
    ForwardDirection { op: &'static str, theta: f64 },
    #[error("{op}: invalid range [{lo}, {hi}]")]
    InvalidRange { op: &'static str, lo: f64, hi: f64 },
    #[error("{op}: charge vector is not in the kernel (residual {residual:e})")]
    NotInKernel { op: &'static str, residual: f64 },
    #[error("{op}: S is not unitary (deviation {deviation:e})")]
    NonUnitary { op: &'static str, deviation: f64 },
    #[error("{op}: T is not orthogonal (deviation {deviation:e})")]
    NonOrthogonal { op: &'static str, deviation: f64 },
    #[error("{op}: regular part does not vanish at the origin")]
    NonVanishingRegularPart { op: &'static str },
    #[error("{op}: {message}")]
    Invalid { op: &'static str, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

