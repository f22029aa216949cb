//! Smooth periodic traveling waves of the Degasperis-Procesi equation
//! `u_t - u_txx + 4 u u_x = 3 u_x u_xx + u u_xxx`.
//!
//! The crate maps the existence region of smooth waves, evaluates the period
//! function and its normal forms, counts negative eigenvalues of the
//! Hessian `L = c - phi - 3c (4 - d^2)^-1`, and traces fixed-period stability
//! curves. Exact algebraic certificates live in the `exactalg` crate and are
//! re-exported through [`certify`].

pub mod cli;
pub mod error;
pub mod numerics;
pub mod periodfn;
pub mod spectral;
pub mod stability;
pub mod stokes;
pub mod wavecore;

pub use error::{Result, WaveError};
pub use wavecore::{WaveParams, WaveProfile};

/// Exact certificates for the polynomial claims behind the period-function lemmas.
pub mod certify {
    pub use exactalg::{certify, certify_all, certify_timed, Certificate, ClaimId, Status, Witness};
}
