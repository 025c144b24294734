//! Truncated moment problems and positivity certificates over the concrete
//! *-semigroups `Z+ x Z+`, `N+ = {(m, n) : m + n >= 0}`, `Z x Z` and `Z^k`.
//!
//! The crate is organised around five layers:
//!
//! - [`algebra`]: sparse Laurent and trigonometric polynomials with their
//!   involution, character evaluation, point separation, determining samples,
//!   symmetrization and the exact real/complex moment transform.
//! - [`sos`]: Gram certificates, an alternating-projection search for
//!   sum-of-squares membership, Fejér–Riesz factorization and the
//!   non-approximability witness `|z - λ|² - ε²`.
//! - [`moments`]: moment data, Riesz functionals, finite-section kernel
//!   positivity, closed-form measure moments, constructive builders and
//!   counterexample generators.
//! - [`operator`]: block-matrix verifiers for unitary power dilation and
//!   subnormality certificates.
//! - [`io`]: JSON file schemas shared with the command-line tool.
//!
//! Everything is a pure function over immutable values; types are `Send + Sync`.

pub mod algebra;
pub mod io;
pub mod linalg;
pub mod moments;
pub mod operator;
pub mod sos;

pub use num_complex::Complex64;

/// Default absolute tolerance for scalar verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default relative tolerance for positive-semidefiniteness verdicts; the
/// effective threshold is `PSD_TOL * max(1, ‖M‖_F)`.
pub const PSD_TOL: f64 = 1e-8;
