//! Exact polynomial algebra over the rationals and machine-checked
//! certificates for the period-function monotonicity lemmas.
//!
//! Arithmetic never rounds: univariate work uses [`RationalPoly`] with
//! big rational coefficients, elimination uses [`ZPoly`] with big integer
//! coefficients and fraction-free determinants.

pub mod certs;
pub mod error;
pub mod mpoly;
pub mod resultant;
pub mod sturm;
pub mod upoly;

pub use certs::{certify, certify_all, certify_timed, Certificate, ClaimId, Status, Witness};
pub use error::AlgError;
pub use mpoly::ZPoly;
pub use resultant::{discriminant, resultant};
pub use sturm::{count_real_roots, isolate_roots, sturm_count, RootBox, SturmCount};
pub use upoly::{q, qi, RationalPoly, Q};
