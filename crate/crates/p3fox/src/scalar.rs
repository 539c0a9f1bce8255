//! Scalar abstraction: the numeric core is generic over the real float type,
//! with `Complex<T>` carrying every value that may live off the real axis.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display, LowerExp};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic needed by the exponent-window formulas: ring ops, order,
/// conversion from small integers, and a floor. Implemented by the floats
/// here and by exact rationals in tests, where the piecewise exponent tables
/// must equal their defining compositions identically.
pub trait WindowScalar:
    Clone
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(v: i64) -> Self;
    fn floor_int(&self) -> i64;
}

impl WindowScalar for f64 {
    fn from_int(v: i64) -> Self {
        v as f64
    }
    fn floor_int(&self) -> i64 {
        self.floor() as i64
    }
}

impl WindowScalar for f32 {
    fn from_int(v: i64) -> Self {
        v as f32
    }
    fn floor_int(&self) -> i64 {
        self.floor() as i64
    }
}

/// Real scalar the toolkit is generic over (`f32` or `f64`).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + WindowScalar
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Shorthand for converting a literal constant.
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex value from two `f64` literals.
pub fn cx<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::of(re), T::of(im))
}

/// Real `f64` literal promoted to a complex scalar.
pub fn cre<T: Scalar>(re: f64) -> Complex<T> {
    Complex::new(T::of(re), T::zero())
}

/// Series/iteration stopping tolerance: the spec value, widened so the loop
/// still terminates when `T` is coarser than `f64`.
pub fn series_tol<T: Scalar>() -> T {
    T::of(1e-14).max(T::epsilon() * T::of(4.0))
}

/// True when `z` is within `tol` of the nearest integer (both components).
pub fn near_integer<T: Scalar>(z: Complex<T>, tol: f64) -> Option<i64> {
    let tol = T::of(tol);
    let rounded = z.re.round();
    if (z.re - rounded).abs() <= tol && z.im.abs() <= tol {
        rounded.to_i64()
    } else {
        None
    }
}
