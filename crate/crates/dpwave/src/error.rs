use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate wave (turning points collide): {0}")]
    Degenerate(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("finite-difference stencil leaves the existence region")]
    StencilOutsideRegion,
    #[error("unexpected sign pattern of dL/da: {0} sign changes")]
    SignPatternUnexpected(usize),
    #[error("lambda {lambda} is not below c - max(phi) = {lambda0}")]
    LambdaTooLarge { lambda: f64, lambda0: f64 },
    #[error("eigenvalue counting methods disagree: {0}")]
    MethodDisagreement(String),
    #[error("Floquet slope {theta:e} lies inside its error band {band:e}")]
    ToleranceAmbiguous { theta: f64, band: f64 },
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("dB_L/da = {slope:e} is below its noise floor {noise:e}")]
    NearCriticalB { slope: f64, noise: f64 },
    #[error("energy {h} outside (0, {h_star})")]
    OutOfEnergyRange { h: f64, h_star: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, WaveError>;
