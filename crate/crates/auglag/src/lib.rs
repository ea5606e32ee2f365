//! Augmented Lagrangian solvers for equality-constrained nonlinear programs.
//!
//! The crate implements two closely related outer iterations for
//! `min f(x)  s.t.  c(x) = 0` and its penalty-form relaxation
//! `min f(x) + ||c(x)||^2 / (2 omega_e)`:
//!
//! * **ALM** — the classical augmented Lagrangian method: minimize
//!   `L(x, lambda) + ||c(x)||^2 / (2 omega)` and update
//!   `lambda <- lambda - c(x) / omega`.
//! * **MALM** — a modified augmented Lagrangian method whose subproblems
//!   target the penalty form directly: minimize
//!   `L(x, lambda) + ||c(x) + omega_e * lambda||^2 / (2 (omega + omega_e))`
//!   with the matching multiplier update. At `omega_e = 0` it reproduces ALM
//!   iterate-for-iterate; for `omega_e > 0` it converges to the penalty-form
//!   stationary point while keeping subproblem conditioning bounded by
//!   `omega` instead of `omega_e`.
//!
//! MALM comes in two interchangeable routes: a subproblem route (damped
//! Newton on the eliminated objective) and a root-finding route (damped
//! Newton on the coupled stationarity system in `(x, lambda_tilde)`).
//!
//! Layout:
//!
//! * [`linalg`] — dense vectors/matrices and the small factorization toolkit
//!   (Cholesky with damping, Jacobi eigendecomposition, minimum-norm least
//!   squares, LU).
//! * [`problem`] — problem descriptions ([`problem::NlpProblem`], QP data)
//!   and the built-in problem catalog.
//! * [`inner`] — damped-Newton inner solvers (minimization and root form).
//! * [`outer`] — the outer iterations, iterate traces, and CSV output.
//! * [`oracle`] — independent closed-form references used to cross-check the
//!   iterative paths.
//! * [`cli`] — config resolution and the `solve` / `compare` / `sweep`
//!   entry points behind the thin `auglag` binary.
//!
//! See `examples/` for runnable walkthroughs of each capability.

pub mod cli;
pub mod error;
pub mod inner;
pub mod linalg;
pub mod oracle;
pub mod outer;
pub mod problem;

pub use error::{Error, Result};
