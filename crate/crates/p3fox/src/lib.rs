//! Special function solutions of the Painleve-III equation built from Hankel
//! determinants of Bessel cylinder functions.
//!
//! The toolkit evaluates the solution family u_n(x, alpha) selected by
//! (n, alpha, d1, d2) through three independent algebraic routes (determinant
//! ratio, Backlund orbit, rational recurrence), classifies and evaluates its
//! small-x leading asymptotics, constructs the detailed small-x expansion on
//! the exponent lattice {m + l p}, and continues solutions along complex
//! paths through poles by chart inversion.
//!
//! The numeric core is generic over the real scalar; `C64`/`C32` are the
//! concrete complex aliases, and all shipped tolerances assume `f64`.

// index-based loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod asymptotics;
pub mod error;
pub mod expansion;
pub mod hankel;
pub mod ode;
pub mod painleve;
pub mod scalar;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Complex scalar in double precision (the supported production type).
pub type C64 = num_complex::Complex<f64>;
/// Complex scalar in single precision.
pub type C32 = num_complex::Complex<f32>;
