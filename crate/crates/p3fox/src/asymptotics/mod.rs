//! Small-x regime classification and leading-term evaluators: the critical
//! index r_c, the power tables p/p_c for Delta_n and e for u_n, and the
//! leading coefficients c(alpha, n) and q(alpha, n) with every Barnes-G ratio
//! reduced to a finite Gamma product.

pub mod exponents;

pub use exponents::{
    critical_r_re, exponent_e_composed_re, exponent_e_re, p_c_re, power_p_re, u_case_re, UCase,
    WindowScalar,
};

use crate::error::{Error, Result};
use crate::painleve::SolutionParams;
use crate::scalar::{cre, Scalar};
use crate::special::{gamma, gamma_product};
use num_complex::Complex;

/// Which object the regime record classifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subject {
    Delta,
    U,
}

/// Classification of the small-x leading behavior: subject ~ coefficient * (x/2)^exponent.
#[derive(Debug, Clone)]
pub struct Regime<T: Scalar> {
    pub subject: Subject,
    /// Delta: 1-3, u: 1-4, matching the published case tables.
    pub case_label: u8,
    /// Window index for the interior cases; None in the extreme cases.
    pub j: Option<u32>,
    /// Critical index of the Delta sum (informational for subject = U).
    pub r_c: Option<u32>,
    pub exponent: Complex<T>,
    pub coefficient: Complex<T>,
}

const BOUNDARY_MARGIN: f64 = 1e-9;
const DEGENERACY_TOL: f64 = 1e-12;

/// Distance of re to the nearest even integer.
fn even_distance<T: Scalar>(re: T) -> T {
    let half = re * T::of(0.5);
    (half - half.round()).abs() * T::of(2.0)
}

/// Boundary exclusion: Re(alpha) within margin of an even integer inside
/// [lo, hi] (the transition range of the piecewise table in use). Outside the
/// transition range the tables are constant in the window sense and even
/// integers are harmless.
fn check_boundary<T: Scalar>(alpha: Complex<T>, lo: i64, hi: i64, what: &str) -> Result<()> {
    let re = alpha.re;
    let nearest_even = (re * T::of(0.5)).round() * T::of(2.0);
    if even_distance(re) < T::of(BOUNDARY_MARGIN)
        && nearest_even >= T::of(lo as f64) - T::of(0.5)
        && nearest_even <= T::of(hi as f64) + T::of(0.5)
    {
        return Err(Error::BoundaryAlpha(format!(
            "{what}: Re(alpha) = {re} sits on an excluded even-integer breakpoint"
        )));
    }
    Ok(())
}

/// p(r, alpha, n) = alpha r - n alpha/2 - 2 r (n - r), complex in alpha.
pub fn power_p<T: Scalar>(r: u32, alpha: Complex<T>, n: u32) -> Result<Complex<T>> {
    if r > n {
        return Err(Error::Range(format!("power_p needs 0 <= r <= n, got r={r}, n={n}")));
    }
    let lin = cre::<T>(r as f64) - cre::<T>(n as f64 * 0.5);
    Ok(alpha * lin - cre::<T>(2.0 * r as f64 * (n - r) as f64))
}

/// Critical index minimizing Re p(r, alpha, n); boundaries excluded.
pub fn critical_r<T: Scalar>(alpha: Complex<T>, n: u32) -> Result<u32> {
    check_boundary(alpha, -2 * n as i64 + 2, 2 * n as i64 - 2, "critical_r")?;
    Ok(critical_r_re(alpha.re, n))
}

/// c1/c2 degeneracy tests shared by the Delta and u tables.
fn degeneracies<T: Scalar>(
    alpha: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
) -> (bool, bool, Complex<T>) {
    let half_pi_alpha = alpha * cre::<T>(std::f64::consts::PI / 2.0);
    let s_d = d1 * half_pi_alpha.sin() + d2 * half_pi_alpha.cos();
    let scale = T::one() + d1.norm() + d2.norm();
    let d2_zero = d2.norm() < T::of(DEGENERACY_TOL) * scale;
    let c1_zero = s_d.norm() < T::of(DEGENERACY_TOL) * scale;
    (d2_zero, c1_zero, s_d)
}

/// Regime record for Delta_n: case table with the degeneracy "or" clauses
/// applied first (d2 = 0 selects case 3, c1 = 0 selects case 1).
pub fn delta_leading<T: Scalar>(params: &SolutionParams<T>) -> Result<Regime<T>> {
    let n = params.n;
    let alpha = params.alpha;
    let (d1, d2) = (params.d1, params.d2);
    let (d2_zero, c1_zero, s_d) = degeneracies(alpha, d1, d2);
    if d2_zero && c1_zero {
        // the case-3 coefficient (d1 sin + d2 cos)^n vanishes identically;
        // the true leading order of Delta_n falls outside the table
        return Err(Error::DegenerateCoefficient(
            "both leading coefficients c1 and c2 vanish; no tabulated leading term".into(),
        ));
    }
    let pi = cre::<T>(std::f64::consts::PI);
    let half = alpha * cre::<T>(0.5);
    let n_i = n as i64;

    let case = if d2_zero {
        3u8
    } else if c1_zero {
        1u8
    } else {
        check_boundary(alpha, -2 * n_i + 2, 2 * n_i - 2, "delta_leading")?;
        let rc = critical_r_re(alpha.re, n);
        if rc == 0 {
            1
        } else if rc == n {
            3
        } else {
            2
        }
    };

    let (r_c, j, coefficient) = match case {
        1 => {
            let sign = if (n_i * (n_i + 1) / 2) % 2 == 1 { -T::one() } else { T::one() };
            let coeff = Complex::new(sign, T::zero())
                * (d2 / pi).powu(n)
                * gamma_product(cre::<T>(1.0), n)?
                * gamma_product(half - cre::<T>(n as f64 - 1.0), n)?;
            (0u32, None, coeff)
        }
        3 => {
            let sign = if (n_i * (n_i + 1) / 2) % 2 == 1 { -T::one() } else { T::one() };
            let coeff = Complex::new(sign, T::zero()) / pi.powu(n)
                * s_d.powu(n)
                * gamma_product(cre::<T>(1.0), n)?
                * gamma_product(-half - cre::<T>(n as f64 - 1.0), n)?;
            (n, None, coeff)
        }
        _ => {
            let jj = critical_r_re(alpha.re, n);
            let j_i = jj as i64;
            let sign_exp = n_i * (n_i - 1) / 2 + n_i * j_i + n_i - j_i;
            let sign = if sign_exp % 2 == 1 { -T::one() } else { T::one() };
            // S = (d1/d2) sin(pi alpha/2) + cos(pi alpha/2) = c1 / (d2 / sin-part)
            let s_window = s_d / d2;
            let coeff = Complex::new(sign, T::zero())
                * (d2 / pi).powu(n)
                * s_window.powu(jj)
                * gamma_product(cre::<T>(1.0), n - jj)?
                * gamma_product(cre::<T>(1.0), jj)?
                * gamma_product(-half + cre::<T>((n_i - 2 * j_i + 1) as f64), jj)?
                * gamma_product(half + cre::<T>((-n_i + 2 * j_i + 1) as f64), n - jj)?;
            (jj, Some(jj), coeff)
        }
    };
    Ok(Regime {
        subject: Subject::Delta,
        case_label: case,
        j,
        r_c: Some(r_c),
        exponent: power_p(r_c, alpha, n)?,
        coefficient,
    })
}

/// u-regime selection shared by `exponent_e`-style window logic and the
/// degeneracy clauses of the u-case table.
fn u_case_with_degeneracies<T: Scalar>(params: &SolutionParams<T>) -> Result<(UCase, Complex<T>)> {
    let alpha = params.alpha;
    let (d2_zero, c1_zero, s_d) = degeneracies(alpha, params.d1, params.d2);
    // d2 = 0 forces the Low case outright; its coefficient -alpha/2 - n needs
    // neither c1 nor c2, so the pure-J family stays classifiable
    if d2_zero {
        return Ok((UCase::Low, s_d));
    }
    if c1_zero {
        return Ok((UCase::High, s_d));
    }
    let n_i = params.n as i64;
    check_boundary(alpha, -2 * n_i, 2 * n_i + 2, "u regime")?;
    Ok((u_case_re(alpha.re, params.n), s_d))
}

/// The u-exponent e(alpha, n) from the pure window table (Lemma-style
/// piecewise form; no d-degeneracy knowledge).
pub fn exponent_e<T: Scalar>(alpha: Complex<T>, n: u32) -> Result<Complex<T>> {
    let n_i = n as i64;
    check_boundary(alpha, -2 * n_i, 2 * n_i + 2, "exponent_e")?;
    Ok(exponent_from_case(u_case_re(alpha.re, n), alpha, n))
}

fn exponent_from_case<T: Scalar>(case: UCase, alpha: Complex<T>, n: u32) -> Complex<T> {
    match case {
        UCase::High => cre(1.0),
        UCase::Ascending(j) => alpha - cre::<T>((2 * n as i64 - 4 * j as i64 + 1) as f64),
        UCase::Descending(j) => -alpha + cre::<T>((2 * n as i64 - 4 * j as i64 - 1) as f64),
        UCase::Low => cre(-1.0),
    }
}

/// The constant coefficient q(alpha, n) in u_n ~ q (x/2)^e, with the
/// degeneracy clauses (d2 = 0 forces the Low case, c1 = 0 the High case).
pub fn coefficient_q<T: Scalar>(params: &SolutionParams<T>) -> Result<Complex<T>> {
    let (case, s_d) = u_case_with_degeneracies(params)?;
    let alpha = params.alpha;
    let n = params.n;
    let n_i = n as i64;
    let half = alpha * cre::<T>(0.5);
    let sign_n = if n_i % 2 == 1 { -T::one() } else { T::one() };
    let sign_n = Complex::new(sign_n, T::zero());
    match case {
        UCase::High => Ok(cre::<T>(2.0) / (cre::<T>((2 * n_i + 2) as f64) - alpha)),
        UCase::Low => Ok(-half - cre::<T>(n as f64)),
        UCase::Ascending(j) => {
            let j_i = j as i64;
            let s = s_d / params.d2;
            let ratio = gamma(-half + cre::<T>((n_i - 2 * j_i + 1) as f64))?
                / gamma(half - cre::<T>((n_i - 2 * j_i) as f64))?;
            let q = sign_n
                * s
                * ratio
                * ratio
                * gamma(half + cre::<T>(j as f64))?
                * gamma(cre::<T>(j as f64 + 1.0))?
                / (gamma(-half + cre::<T>((n_i - j_i + 1) as f64))?
                    * gamma(cre::<T>((n - j) as f64 + 1.0))?);
            Ok(q)
        }
        UCase::Descending(j) => {
            let j_i = j as i64;
            let s = s_d / params.d2;
            let ratio = gamma(half + cre::<T>((-n_i + 2 * j_i + 1) as f64))?
                / gamma(-half + cre::<T>((n_i - 2 * j_i) as f64))?;
            let q = sign_n / s
                * ratio
                * ratio
                * gamma(-half + cre::<T>((n_i - j_i + 1) as f64))?
                * gamma(cre::<T>((n - j) as f64))?
                / (gamma(half + cre::<T>(j as f64 + 1.0))? * gamma(cre::<T>(j as f64 + 1.0))?);
            Ok(q)
        }
    }
}

/// Regime record for u_n.
pub fn u_regime<T: Scalar>(params: &SolutionParams<T>) -> Result<Regime<T>> {
    let (case, _) = u_case_with_degeneracies(params)?;
    let coefficient = coefficient_q(params)?;
    let exponent = exponent_from_case(case, params.alpha, params.n);
    let (label, j) = match case {
        UCase::High => (1u8, None),
        UCase::Ascending(j) => (2, Some(j)),
        UCase::Descending(j) => (3, Some(j)),
        UCase::Low => (4, None),
    };
    Ok(Regime {
        subject: Subject::U,
        case_label: label,
        j,
        r_c: critical_r(params.alpha, params.n).ok(),
        exponent,
        coefficient,
    })
}

/// Leading-term value q(alpha, n) * (x/2)^{e(alpha, n)}.
pub fn u_leading<T: Scalar>(params: &SolutionParams<T>, x: Complex<T>) -> Result<Complex<T>> {
    if x.norm() == T::zero() {
        return Err(Error::Domain("u_leading at x = 0".into()));
    }
    let regime = u_regime(params)?;
    Ok(regime.coefficient * (x * cre::<T>(0.5)).powc(regime.exponent))
}
