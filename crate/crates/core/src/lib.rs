//! Critical polynomials from Mellin transforms of Gegenbauer and Chebyshev functions.
//!
//! Everything that can be exact is exact: rational coefficients, rational
//! parameters, and polynomial or rational-function residuals. Floating point
//! only appears in the quadrature oracle under [`quad`].

pub mod arith;
pub mod construct;
pub mod error;
pub mod exact;
pub mod hyp3f2;
pub mod orthopoly;
pub mod quad;
pub mod report;
pub mod suites;
pub mod verify;

pub use error::{Error, Result};
