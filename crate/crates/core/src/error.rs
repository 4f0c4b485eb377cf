use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// A spectral singularity hit during a scattering evaluation is *not* an
/// error; it is reported through [`crate::scattering::ScatteringAmplitudes`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular point (rho, sigma) = (1, 0)")]
    SingularPoint,

    #[error("degenerate barrier: |E - V| = {gap:e} is below {threshold:e} * E")]
    DegenerateBarrier { gap: f64, threshold: f64 },

    #[error("overflow: |Im(2 kappa d)| = {0} exceeds the exponential guard")]
    Overflow(f64),

    #[error("singular denominator: {0}")]
    SingularDenominator(String),

    #[error("root refinement did not converge after {iterations} iterations on [{lo}, {hi}]")]
    NonConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("no intersection of ray sigma = {ratio} * rho with the locus on rho in [{lo}, {hi}]")]
    NoIntersection { ratio: f64, lo: f64, hi: f64 },

    #[error("transfer-matrix oracle rejected locus point: relative |M| = {relative:e}")]
    OracleFailure { relative: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
