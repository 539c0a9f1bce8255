//! Window bookkeeping for the small-x exponents, generic over the arithmetic
//! used for Re(alpha). Instantiated with `f64` in production and with exact
//! rationals in tests, where the piecewise formulas must equal their defining
//! compositions identically.

pub use crate::scalar::WindowScalar;

/// p(r, alpha, n) = alpha r - n alpha / 2 - 2 r (n - r), on the real slice.
pub fn power_p_re<R: WindowScalar>(r: u32, alpha: R, n: u32) -> R {
    let two_r_minus_n = R::from_int(2 * r as i64 - n as i64);
    let geom = R::from_int(2 * r as i64 * (n as i64 - r as i64));
    alpha * two_r_minus_n / R::from_int(2) - geom
}

/// Critical index r_c minimizing Re p(r, alpha, n) over r in {0..n}; the
/// compact floor form of the piecewise table. Window boundaries are the
/// caller's responsibility.
pub fn critical_r_re<R: WindowScalar>(alpha: R, n: u32) -> u32 {
    if n == 0 {
        return 0;
    }
    let n_i = n as i64;
    if alpha > R::from_int(2 * n_i - 2) {
        return 0;
    }
    if alpha < R::from_int(-2 * n_i + 2) {
        return n;
    }
    // j = floor(n/2 - alpha/4 + 1/2)
    let j = (R::from_int(n_i) / R::from_int(2) - alpha / R::from_int(4)
        + R::from_int(1) / R::from_int(2))
    .floor_int();
    j.clamp(0, n_i) as u32
}

/// p_c(alpha, n) = p(r_c(alpha, n), alpha, n).
pub fn p_c_re<R: WindowScalar>(alpha: R, n: u32) -> R {
    power_p_re(critical_r_re(alpha.clone(), n), alpha, n)
}

/// Case tag for the u-exponent window table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UCase {
    /// Re(alpha) > 2n + 2 (or the c1 = 0 degeneracy): e = 1.
    High,
    /// 2n - 4j < Re(alpha) < 2n - 4j + 2: e = alpha - 2n + 4j - 1.
    Ascending(u32),
    /// 2n - 4j - 2 < Re(alpha) < 2n - 4j: e = -alpha + 2n - 4j - 1.
    Descending(u32),
    /// Re(alpha) < -2n (or d2 = 0): e = -1.
    Low,
}

/// Window classification for the u-exponent (no degeneracy overrides here).
pub fn u_case_re<R: WindowScalar>(alpha: R, n: u32) -> UCase {
    let n_i = n as i64;
    if alpha > R::from_int(2 * n_i + 2) {
        return UCase::High;
    }
    if alpha < R::from_int(-2 * n_i) {
        return UCase::Low;
    }
    for j in 0..=n {
        let j_i = j as i64;
        if alpha > R::from_int(2 * n_i - 4 * j_i) && alpha < R::from_int(2 * n_i - 4 * j_i + 2) {
            return UCase::Ascending(j);
        }
    }
    for j in 0..n {
        let j_i = j as i64;
        if alpha > R::from_int(2 * n_i - 4 * j_i - 2) && alpha < R::from_int(2 * n_i - 4 * j_i) {
            return UCase::Descending(j);
        }
    }
    // on a boundary; callers exclude this before asking
    UCase::High
}

/// The piecewise u-exponent e(alpha, n) on the real slice.
pub fn exponent_e_re<R: WindowScalar>(alpha: R, n: u32) -> R {
    match u_case_re(alpha.clone(), n) {
        UCase::High => R::from_int(1),
        UCase::Ascending(j) => alpha - R::from_int(2 * n as i64 - 4 * j as i64 + 1),
        UCase::Descending(j) => -alpha + R::from_int(2 * n as i64 - 4 * j as i64 - 1),
        UCase::Low => R::from_int(-1),
    }
}

/// The defining composition e = p_c(a-2, n+1) - p_c(a-2, n) + p_c(a, n) - p_c(a, n+1).
pub fn exponent_e_composed_re<R: WindowScalar>(alpha: R, n: u32) -> R {
    let shifted = alpha.clone() - R::from_int(2);
    p_c_re(shifted.clone(), n + 1) - p_c_re(shifted, n) + p_c_re(alpha.clone(), n)
        - p_c_re(alpha, n + 1)
}
