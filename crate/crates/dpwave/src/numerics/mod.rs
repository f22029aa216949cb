//! Numerical building blocks: quadrature, scalar root finding, an
//! extrapolation ODE integrator and small dense / cyclic linear algebra.

pub mod linalg;
pub mod ode;
pub mod quad;
pub mod roots;
