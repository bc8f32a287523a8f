//! Crate-wide error type.

/// Errors reported by the numerical kernels and the physics layers above them.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature or series did not reach the requested tolerance. The best
    /// available estimate and its error bound are carried along.
    #[error("did not converge: value = {value:e}, error estimate = {error:e}")]
    Convergence { value: f64, error: f64 },

    /// The supplied interval does not bracket a sign change.
    #[error("no sign change in bracket [{lo:e}, {hi:e}]")]
    Bracket { lo: f64, hi: f64 },

    /// A dispersion-relation root solve failed; the wave vector and the
    /// scanned frequency window are reported for diagnosis.
    #[error("root solve failed at k = {k:e} (scanned omega in [{lo:e}, {hi:e}])")]
    RootSolve { k: f64, lo: f64, hi: f64 },

    /// The operation is defined only for the plasma model.
    #[error("operation defined only for the plasma model")]
    UnsupportedModel,

    /// The static permittivity of the gap medium diverges (plasma or Drude
    /// model in position 2), so the long-distance estimate does not exist.
    #[error("static permittivity of the gap medium diverges")]
    DivergingStaticPermittivity,

    /// The stack does not match the configuration the operation requires
    /// (e.g. asking for the repulsive-configuration onset wave vector of an
    /// attractive stack).
    #[error("configuration mismatch: {0}")]
    Configuration(String),

    /// A scenario configuration file is invalid.
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
