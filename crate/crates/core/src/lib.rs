//! # feedback-zeta
//!
//! Evaluates the Riemann zeta function through its Euler product read as an
//! endless serial connection of control blocks. Every prime `p` contributes a
//! base element `1 / (1 - e^(-s ln p))`, which is a positive feedback loop
//! around a pure delay of `ln p` time units. Replacing each loop by a simpler
//! block gives three approximations of the product:
//!
//! * **PI approximation**: `1/2 + 1/(s ln p)`, a PI controller with
//!   proportional gain 1/2 and integration time `ln p`.
//! * **FOPDT approximation**: `1 + K̄ e^(-s L̄) / (1 + T s)`, a first order plus
//!   dead time model identified from the loop's geometric staircase transient.
//! * **Pade approximation**: the loop with its delay replaced by the
//!   first-order Pade rational function.
//!
//! The crate is organised bottom-up:
//!
//! * [`primes`] builds the ascending prime table with a segmented sieve.
//! * [`blocks`] holds the per-prime block parameterizations and factors.
//! * [`evaluator`] multiplies factors over the table with a deterministic
//!   chunked reduction and carries an independent eta-series zeta oracle.
//! * [`simulator`] produces exact step responses of the loops and their
//!   approximants and measures how far apart they are.
//! * [`cli`] is the command-line front end used by the `feedback-zeta` binary.
//!
//! Runnable examples for each capability live in `examples/`.

pub mod blocks;
pub mod cli;
pub mod error;
pub mod evaluator;
pub mod primes;
pub mod simulator;

pub use error::{Error, Result};

/// A complex number `re + i im` in double precision.
pub type ComplexValue = num_complex::Complex64;

pub use blocks::{FopdtParams, PiParams};
pub use evaluator::{EvalRequest, EvalResult, Method};
pub use primes::{PrimeSlice, PrimeTable};
pub use simulator::{StepTrace, TraceKind};
