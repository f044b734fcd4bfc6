//! Integral solution operator for the Cauchy–Riemann equation ∂̄u = f on
//! planar product domains and on the Hartogs triangle.

pub mod cauchy;
pub mod convergence;
pub mod error;
pub mod experiments;
pub mod forms;
pub mod geometry;
pub mod hartogs;
pub mod quadrature;
pub mod solver;

pub use error::{Error, Result};
