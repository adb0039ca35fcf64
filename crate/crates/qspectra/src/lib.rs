//! Continuous q-Jacobi polynomials, the Askey–Wilson divided-difference
//! operator and the spectrum of its right inverse.
//!
//! Layering, bottom to top:
//!
//! * [`qcore`] — q-shifted factorials, basic hypergeometric series, h-products.
//! * [`qpolys`] — Askey–Wilson / continuous q-Jacobi polynomials, weights,
//!   norms, connection coefficients.
//! * [`awop`] — the operator `D_q`, the kernel `K` and the integral operator `T`.
//! * [`spectral`] — the eigenvalue problem for `T`: recurrences, minimal
//!   solutions, root finding, asymptotics, s_n polynomials, q-Coulomb.
//! * [`qexp`] — the q-exponential and its q-Jacobi expansion.
//! * [`framework`] — generic ladder families, monic recurrences, continued
//!   fractions.

pub mod awop;
pub mod error;
pub mod framework;
pub mod qcore;
pub mod qexp;
pub mod qpolys;
pub mod spectral;

pub use error::{QError, QResult};
pub use num_complex::Complex64 as C64;
pub use qcore::QContext;
pub use qpolys::{JacobiLevel, Normalization};
