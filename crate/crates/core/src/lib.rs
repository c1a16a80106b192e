//! Spectra of the tridiagonal pencil `H_{N;c} - lambda D_{m,n}`, where
//! `H_{N;c}` has `c` on the diagonal and `1` on both off-diagonals and
//! `D_{m,n} = diag(1 x m, -1 x n)`.
//!
//! The characteristic polynomial is evaluated in `O(N)` by a scaled
//! three-term recurrence ([`pencil`]), its roots are found by Aberth
//! iteration ([`rootfinder`]), and [`verify`] turns the known structural
//! results into numerical checks.

pub mod analytic;
pub mod asymptotics;
pub mod dd;
pub mod error;
pub mod parallel;
pub mod pencil;
pub mod rootfinder;
pub mod scaled;
pub mod verify;

pub use error::{Error, Result};
pub use pencil::{charpoly_eval, charpoly_eval_with, CharPolyEval, PencilSpec, Precision};
pub use rootfinder::{compute_spectrum, Eigenvalue, PrecisionMode, SolverOptions, Spectrum};
pub use scaled::ScaledValue;
pub use verify::{run_suite, CheckResult, Suite, SuiteParams, VerificationReport};
