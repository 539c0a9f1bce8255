//! The Painleve-III layer: the equation's right side, a finite-difference
//! residual harness, the Riccati seed u_0, the Backlund maps B1/B2 with exact
//! derivative propagation, three independent evaluation routes for u_n, and
//! the momentum / Hamiltonian / auxiliary-Hamiltonian chain.
//!
//! Derivatives are never differentiated numerically along orbits: u'' is
//! reconstructed from the equation itself, which is legitimate because every
//! iterate solves Painleve-III at its shifted parameters.

use crate::error::{Error, Result};
use crate::hankel::{delta, delta_derivative};
use crate::scalar::{cre, Scalar};
use crate::special::cylinder;
use num_complex::Complex;

/// Pole-screening threshold on denominators; poles are genuine features of
/// the solutions and are reported, not smoothed over.
pub const POLE_SCREEN: f64 = 1e-13;

/// Generic (alpha, beta) parameter pair of the equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PIIIParams<T: Scalar> {
    pub alpha: Complex<T>,
    pub beta: Complex<T>,
}

impl<T: Scalar> PIIIParams<T> {
    pub fn new(alpha: Complex<T>, beta: Complex<T>) -> Self {
        Self { alpha, beta }
    }

    /// Image under the inversion symmetry u -> 1/u.
    pub fn inverted(&self) -> Self {
        Self { alpha: -self.beta, beta: -self.alpha }
    }
}

/// Selector of a special-function solution: u_n(x, alpha) built from the
/// cylinder kernel d1 J + d2 Y. beta is derived, not stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolutionParams<T: Scalar> {
    pub n: u32,
    pub alpha: Complex<T>,
    pub d1: Complex<T>,
    pub d2: Complex<T>,
}

impl<T: Scalar> SolutionParams<T> {
    pub fn new(n: u32, alpha: Complex<T>, d1: Complex<T>, d2: Complex<T>) -> Result<Self> {
        if d1.norm() == T::zero() && d2.norm() == T::zero() {
            return Err(Error::DegenerateCoefficient("(d1, d2) = (0, 0)".into()));
        }
        Ok(Self { n, alpha, d1, d2 })
    }

    /// beta of the equation u_n solves: -alpha + 2 + 2n.
    pub fn beta(&self) -> Complex<T> {
        -self.alpha + cre::<T>(2.0 + 2.0 * self.n as f64)
    }

    /// (alpha + 2n, -alpha + 2 + 2n): the equation parameters for u_n.
    pub fn equation_params(&self) -> PIIIParams<T> {
        PIIIParams::new(self.alpha + cre::<T>(2.0 * self.n as f64), self.beta())
    }

    /// The seed equation parameters (alpha, 2 - alpha) of u_0.
    pub fn seed_params(&self) -> PIIIParams<T> {
        PIIIParams::new(self.alpha, cre::<T>(2.0) - self.alpha)
    }
}

/// A point on a solution: (x, u, u').
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPoint<T: Scalar> {
    pub x: Complex<T>,
    pub u: Complex<T>,
    pub du: Complex<T>,
}

/// u'' from the equation: (u')^2/u - u'/x + (alpha u^2 + beta)/x + u^3 - 1/u.
pub fn piii_rhs<T: Scalar>(jet: &JetPoint<T>, p: &PIIIParams<T>) -> Result<Complex<T>> {
    if jet.u.norm() < T::of(POLE_SCREEN) {
        return Err(Error::Singular(format!("piii_rhs at |u| = {} below screen", jet.u.norm())));
    }
    if jet.x.norm() < T::of(POLE_SCREEN) {
        return Err(Error::Singular("piii_rhs at x = 0".into()));
    }
    let (x, u, du) = (jet.x, jet.u, jet.du);
    Ok(du * du / u - du / x + (p.alpha * u * u + p.beta) / x + u * u * u - u.finv())
}

/// Finite-difference defect |u''_FD - piii_rhs(u, u'_FD)| for a scalar
/// function of x, with Richardson-extrapolated central differences at base
/// step 5e-4 max(1, |x|). The step balances the 1/h^2 amplification of
/// evaluation noise (deep orbits evaluate to ~1e-12 absolute) against the
/// h^4 truncation left by one Richardson level.
pub fn piii_residual<T, F>(u_of_x: F, x: Complex<T>, p: &PIIIParams<T>) -> Result<T>
where
    T: Scalar,
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    let h = cre::<T>(5e-4) * Complex::new(T::one().max(x.norm()), T::zero());
    let f = |o: f64| u_of_x(x + h * cre::<T>(o));
    let (fm2, fm1, f0, fp1, fp2) = (f(-1.0)?, f(-0.5)?, f(0.0)?, f(0.5)?, f(1.0)?);
    let d1_full = (fp2 - fm2) / (cre::<T>(2.0) * h);
    let d1_half = (fp1 - fm1) / h;
    let du = (cre::<T>(4.0) * d1_half - d1_full) / cre::<T>(3.0);
    let d2_full = (fp2 - cre::<T>(2.0) * f0 + fm2) / (h * h);
    let d2_half = (fp1 - cre::<T>(2.0) * f0 + fm1) / (h * h * cre::<T>(0.25));
    let ddu = (cre::<T>(4.0) * d2_half - d2_full) / cre::<T>(3.0);
    let rhs = piii_rhs(&JetPoint { x, u: f0, du }, p)?;
    Ok((ddu - rhs).norm())
}

/// One row of the Riccati coefficient table u' = a u^2 + (b/x) u + c with the
/// beta each case forces. Only case 1 seeds solutions here; the others are
/// kept as data (cases 3-4 belong to the modified-Bessel family).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiccatiRow<T: Scalar> {
    pub a: Complex<T>,
    /// scalar multiplying 1/x in b(x)
    pub b_scalar: Complex<T>,
    pub c: Complex<T>,
    pub beta: Complex<T>,
}

pub fn riccati_coefficients<T: Scalar>(case_id: u8, alpha: Complex<T>) -> Result<RiccatiRow<T>> {
    let one = cre::<T>(1.0);
    let two = cre::<T>(2.0);
    match case_id {
        1 => Ok(RiccatiRow { a: one, b_scalar: alpha - one, c: one, beta: two - alpha }),
        2 => Ok(RiccatiRow { a: -one, b_scalar: -one - alpha, c: -one, beta: -two - alpha }),
        3 => Ok(RiccatiRow { a: one, b_scalar: alpha - one, c: -one, beta: alpha - two }),
        4 => Ok(RiccatiRow { a: -one, b_scalar: -one - alpha, c: one, beta: alpha + two }),
        _ => Err(Error::Range(format!("Riccati case {case_id} out of 1..=4"))),
    }
}

/// Riccati seed u_0 = -d/dx ln(x^{alpha/2} C_{alpha/2}(x)) in closed form:
/// u = -alpha/x + C_{alpha/2+1}/C_{alpha/2}; the derivative comes from the
/// case-1 Riccati equation rather than Bessel quotients.
pub fn u0<T: Scalar>(
    x: Complex<T>,
    alpha: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
) -> Result<JetPoint<T>> {
    let half = alpha * cre::<T>(0.5);
    let c0 = cylinder(half, x, d1, d2)?;
    if c0.norm() < T::of(POLE_SCREEN) {
        return Err(Error::Pole(format!("u_0 pole: C_(alpha/2)(x) = {c0} at x = {x}")));
    }
    let c1 = cylinder(half + cre::<T>(1.0), x, d1, d2)?;
    let u = -alpha / x + c1 / c0;
    let du = u * u + ((alpha - cre::<T>(1.0)) / x) * u + cre::<T>(1.0);
    Ok(JetPoint { x, u, du })
}

/// Shared implementation of the two Backlund maps. W = sign * N / (u M) with
/// the derivative from total differentiation, substituting u'' from the
/// equation at the incoming parameters.
fn backlund_map<T: Scalar>(
    jet: &JetPoint<T>,
    p: &PIIIParams<T>,
    up: bool,
) -> Result<(JetPoint<T>, PIIIParams<T>)> {
    let (x, u, du) = (jet.x, jet.u, jet.du);
    let ddu = piii_rhs(jet, p)?;
    let one = cre::<T>(1.0);
    let (s, sign) = if up { (one, one) } else { (-one, -one) };
    // N = x u' + s x u^2 - beta u - u + x,  M = x u' + s x u^2 + s alpha u + u + x
    let n_val = x * du + s * x * u * u - p.beta * u - u + x;
    let m_val = x * du + s * x * u * u + s * p.alpha * u + u + x;
    let denom = u * m_val;
    if denom.norm() < T::of(POLE_SCREEN) {
        return Err(Error::Degenerate(format!(
            "Backlund denominator |u M| = {} below screen at x = {x}",
            denom.norm()
        )));
    }
    let n_dx = du + x * ddu + s * (u * u + cre::<T>(2.0) * x * u * du) - p.beta * du - du + one;
    let m_dx =
        du + x * ddu + s * (u * u + cre::<T>(2.0) * x * u * du) + s * p.alpha * du + du + one;
    let denom_dx = du * m_val + u * m_dx;
    let w = sign * n_val / denom;
    let dw = sign * (n_dx * denom - n_val * denom_dx) / (denom * denom);
    let new_params = if up {
        PIIIParams::new(p.alpha + cre::<T>(2.0), p.beta + cre::<T>(2.0))
    } else {
        PIIIParams::new(p.alpha - cre::<T>(2.0), p.beta + cre::<T>(2.0))
    };
    Ok((JetPoint { x, u: w, du: dw }, new_params))
}

/// B1: (u, alpha, beta) -> (W, alpha + 2, beta + 2).
pub fn backlund_b1<T: Scalar>(
    jet: &JetPoint<T>,
    p: &PIIIParams<T>,
) -> Result<(JetPoint<T>, PIIIParams<T>)> {
    backlund_map(jet, p, true)
}

/// B2: (u, alpha, beta) -> (W, alpha - 2, beta + 2).
pub fn backlund_b2<T: Scalar>(
    jet: &JetPoint<T>,
    p: &PIIIParams<T>,
) -> Result<(JetPoint<T>, PIIIParams<T>)> {
    backlund_map(jet, p, false)
}

/// u_n by the Backlund orbit: n applications of B1 to the Riccati seed.
pub fn u_n_backlund<T: Scalar>(params: &SolutionParams<T>, x: Complex<T>) -> Result<JetPoint<T>> {
    let mut jet = u0(x, params.alpha, params.d1, params.d2)?;
    let mut p = params.seed_params();
    for step in 0..params.n {
        let (j2, p2) = backlund_b1(&jet, &p)
            .map_err(|e| Error::Degenerate(format!("B1 orbit failed at iteration {step}: {e}")))?;
        jet = j2;
        p = p2;
    }
    Ok(jet)
}

/// u_n by the determinant ratio -Delta_{n+1}(a-2) Delta_n(a) / (Delta_{n+1}(a) Delta_n(a-2)),
/// derivative by the quotient rule with exact determinant derivatives.
pub fn u_n_determinant<T: Scalar>(
    params: &SolutionParams<T>,
    x: Complex<T>,
) -> Result<JetPoint<T>> {
    let (n, al, d1, d2) = (params.n, params.alpha, params.d1, params.d2);
    let shifted = al - cre::<T>(2.0);
    let labels = ["Delta_{n+1}(alpha-2)", "Delta_n(alpha)", "Delta_{n+1}(alpha)", "Delta_n(alpha-2)"];
    let values = [
        delta(n + 1, shifted, x, d1, d2)?,
        delta(n, al, x, d1, d2)?,
        delta(n + 1, al, x, d1, d2)?,
        delta(n, shifted, x, d1, d2)?,
    ];
    for (v, label) in values.iter().zip(labels) {
        if v.norm() < T::of(POLE_SCREEN) {
            return Err(Error::Pole(format!("{label} vanished at x = {x}")));
        }
    }
    let derivs = [
        delta_derivative(n + 1, shifted, x, d1, d2)?,
        delta_derivative(n, al, x, d1, d2)?,
        delta_derivative(n + 1, al, x, d1, d2)?,
        delta_derivative(n, shifted, x, d1, d2)?,
    ];
    let u = -(values[0] * values[1]) / (values[2] * values[3]);
    // logarithmic derivative of the four-factor ratio
    let du = u
        * (derivs[0] / values[0] + derivs[1] / values[1]
            - derivs[2] / values[2]
            - derivs[3] / values[3]);
    Ok(JetPoint { x, u, du })
}

/// u_n by the rational recurrence
/// u_{k+1} = u_k ((alpha - 2k - 3) u_k + x u_k^2 + x + x u_k') /
///           (u_k^2 ((alpha + 2k + 1) u_k + x u_k^2 + x + x u_k')),
/// derivatives propagated exactly with u'' from the equation at level k.
pub fn u_n_recurrence<T: Scalar>(
    params: &SolutionParams<T>,
    x: Complex<T>,
) -> Result<JetPoint<T>> {
    let mut jet = u0(x, params.alpha, params.d1, params.d2)?;
    for k in 0..params.n {
        let p = PIIIParams::new(
            params.alpha + cre::<T>(2.0 * k as f64),
            cre::<T>(2.0 + 2.0 * k as f64) - params.alpha,
        );
        let ddu = piii_rhs(&jet, &p)?;
        let (u, du) = (jet.u, jet.du);
        let a_num = params.alpha - cre::<T>(2.0 * k as f64 + 3.0);
        let a_den = params.alpha + cre::<T>(2.0 * k as f64 + 1.0);
        let common = x * u * u + x + x * du;
        let p_val = a_num * u + common;
        let q_val = a_den * u + common;
        let denom = u * q_val;
        if denom.norm() < T::of(POLE_SCREEN) {
            return Err(Error::Degenerate(format!(
                "recurrence denominator below screen at iteration {k}, x = {x}"
            )));
        }
        let common_dx = u * u + cre::<T>(2.0) * x * u * du + cre::<T>(1.0) + du + x * ddu;
        let p_dx = a_num * du + common_dx;
        let q_dx = a_den * du + common_dx;
        let denom_dx = du * q_val + u * q_dx;
        jet = JetPoint {
            x,
            u: p_val / denom,
            du: (p_dx * denom - p_val * denom_dx) / (denom * denom),
        };
    }
    Ok(jet)
}

/// Momentum v = (x u' + x u^2 - x + u (beta - 1)) / (2 u^2).
pub fn momentum<T: Scalar>(jet: &JetPoint<T>, beta: Complex<T>) -> Result<Complex<T>> {
    let (x, u, du) = (jet.x, jet.u, jet.du);
    if u.norm() < T::of(POLE_SCREEN) {
        return Err(Error::Singular("momentum at u = 0".into()));
    }
    Ok((x * du + x * u * u - x + u * (beta - cre::<T>(1.0))) / (cre::<T>(2.0) * u * u))
}

/// Hamiltonian H = v^2 u^2 - v (x u^2 - x + u (beta - 1)) + 2 x u (beta - (2 + alpha)) / 4.
pub fn hamiltonian<T: Scalar>(
    u: Complex<T>,
    v: Complex<T>,
    x: Complex<T>,
    p: &PIIIParams<T>,
) -> Complex<T> {
    v * v * u * u - v * (x * u * u - x + u * (p.beta - cre::<T>(1.0)))
        + cre::<T>(2.0) * x * u * (p.beta - (cre::<T>(2.0) + p.alpha)) / cre::<T>(4.0)
}

/// Auxiliary Hamiltonian h = (H + u v - x^2 + (beta - 4)(beta + alpha - 2)/4) / 2.
pub fn aux_hamiltonian<T: Scalar>(
    big_h: Complex<T>,
    u: Complex<T>,
    v: Complex<T>,
    x: Complex<T>,
    p: &PIIIParams<T>,
) -> Complex<T> {
    (big_h + u * v - x * x
        + (p.beta - cre::<T>(4.0)) * (p.beta + p.alpha - cre::<T>(2.0)) / cre::<T>(4.0))
        / cre::<T>(2.0)
}

/// h_n along the special-function chain: v_n at beta + 2n, then H_n and h_n
/// at (alpha + 2n, beta + 2n), with (u_n, u_n') from the Backlund orbit.
pub fn h_n<T: Scalar>(params: &SolutionParams<T>, x: Complex<T>) -> Result<Complex<T>> {
    let jet = u_n_backlund(params, x)?;
    let p = params.equation_params();
    let v = momentum(&jet, p.beta)?;
    let big_h = hamiltonian(jet.u, v, x, &p);
    Ok(aux_hamiltonian(big_h, jet.u, v, x, &p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::tau;
    use crate::scalar::cx;

    fn sp(n: u32, alpha: f64) -> SolutionParams<f64> {
        SolutionParams::new(n, cx(alpha, 0.0), cx(0.55, 0.0), cx(0.71, 0.0)).unwrap()
    }

    #[test]
    fn rhs_closed_form_points() {
        // u = 1 solves the equation iff beta = -alpha
        let p = PIIIParams::new(cx::<f64>(1.3, 0.0), cx(-1.3, 0.0));
        let jet = JetPoint { x: cx(0.7, 0.0), u: cx(1.0, 0.0), du: cx(0.0, 0.0) };
        assert!(piii_rhs(&jet, &p).unwrap().norm() < 1e-15);

        // u = -cot x at alpha = beta = 1: u'' = 2u(1 + u^2)
        let x = 1.0f64;
        let u = -x.cos() / x.sin();
        let du = 1.0 / x.sin().powi(2);
        let jet = JetPoint { x: cx::<f64>(x, 0.0), u: cx(u, 0.0), du: cx(du, 0.0) };
        let p = PIIIParams::new(cx::<f64>(1.0, 0.0), cx(1.0, 0.0));
        let want = 2.0 * u * (1.0 + u * u);
        assert!((piii_rhs(&jet, &p).unwrap() - cx(want, 0.0)).norm() < 1e-13);

        // pure arithmetic at u = i
        let jet = JetPoint { x: cx::<f64>(1.0, 0.0), u: cx(0.0, 1.0), du: cx(0.0, 0.0) };
        let p = PIIIParams::new(cx(2.0, 0.0), cx(2.0, 0.0));
        assert!(piii_rhs(&jet, &p).unwrap().norm() < 1e-15);

        assert!(matches!(
            piii_rhs(&JetPoint { x: cx(1.0, 0.0), u: cx(0.0, 0.0), du: cx(0.0, 0.0) }, &p),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn residual_harness() {
        let p = PIIIParams::new(cx::<f64>(0.7, 0.0), cx(-0.7, 0.0));
        let r = piii_residual(|_| Ok(cx::<f64>(1.0, 0.0)), cx(1.1, 0.0), &p).unwrap();
        assert!(r < 1e-10);

        let p = PIIIParams::new(cx::<f64>(1.0, 0.0), cx(1.0, 0.0));
        let cot = |x: Complex<f64>| Ok(-x.cos() / x.sin());
        assert!(piii_residual(cot, cx(1.0, 0.0), &p).unwrap() < 1e-6);

        // the determinant path satisfies its own equation
        let params = sp(2, 0.98);
        let p = params.equation_params();
        let f = |x: Complex<f64>| u_n_determinant(&params, x).map(|j| j.u);
        assert!(piii_residual(f, cx(1.5, 0.0), &p).unwrap() < 1e-5);
    }

    #[test]
    fn riccati_table() {
        let al = cx::<f64>(0.98, 0.0);
        let r = riccati_coefficients(1, al).unwrap();
        assert_eq!(r.a, cx(1.0, 0.0));
        assert!((r.b_scalar - (al - cx(1.0, 0.0))).norm() < 1e-15);
        assert_eq!(r.c, cx(1.0, 0.0));
        assert!((r.beta - (cx::<f64>(2.0, 0.0) - al)).norm() < 1e-15);
        let r = riccati_coefficients(2, al).unwrap();
        assert!((r.beta - (cx::<f64>(-2.0, 0.0) - al)).norm() < 1e-15);
        assert_eq!(r.a, cx(-1.0, 0.0));
        let r = riccati_coefficients(4, al).unwrap();
        assert_eq!(r.c, cx(1.0, 0.0));
        assert!((r.beta - (al + cx(2.0, 0.0))).norm() < 1e-15);
        assert!(riccati_coefficients(5, al).is_err());
    }

    #[test]
    fn u0_closed_forms() {
        // alpha = 1, d = (1, 0): u_0 = -cot x
        let jet = u0(cx::<f64>(1.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)).unwrap();
        assert!((jet.u - cx(-0.6420926159343306, 0.0)).norm() < 1e-13);
        let jet = u0(
            cx::<f64>(std::f64::consts::FRAC_PI_2, 0.0),
            cx(1.0, 0.0),
            cx(1.0, 0.0),
            cx(0.0, 0.0),
        )
        .unwrap();
        assert!(jet.u.norm() < 1e-14);
        assert!((jet.du - cx(1.0, 0.0)).norm() < 1e-13);

        // 50-digit reference at the survey parameters
        let jet = u0(cx::<f64>(1.2, 0.0), cx(0.98, 0.0), cx(0.55, 0.0), cx(0.71, 0.0)).unwrap();
        assert!((jet.u - cx(-3.2265264484296759623, 0.0)).norm() < 1e-12);
        assert!((jet.du - cx(11.464248363223379683, 0.0)).norm() < 1e-11);

        // residual self-check with beta = 2 - alpha
        let p = PIIIParams::new(cx::<f64>(0.98, 0.0), cx(1.02, 0.0));
        let f = |x: Complex<f64>| u0(x, cx(0.98, 0.0), cx(0.55, 0.0), cx(0.71, 0.0)).map(|j| j.u);
        assert!(piii_residual(f, cx(1.2, 0.0), &p).unwrap() < 1e-6);
    }

    #[test]
    fn backlund_on_constant_solution() {
        // u = 1 with beta = -alpha: B1 gives W = (alpha+1)/(alpha+3) at x = 1...
        // N = 0 + 1 - beta - 1 + 1 = 1 + alpha, M = 0 + 1 + alpha + 1 + 1 = alpha + 3
        let al = 0.37f64;
        let p = PIIIParams::new(cx::<f64>(al, 0.0), cx(-al, 0.0));
        let jet = JetPoint { x: cx::<f64>(1.0, 0.0), u: cx(1.0, 0.0), du: cx(0.0, 0.0) };
        let (out, np) = backlund_b1(&jet, &p).unwrap();
        assert!((out.u - cx::<f64>((al + 1.0) / (al + 3.0), 0.0)).norm() < 1e-14);
        assert!((np.alpha - cx::<f64>(al + 2.0, 0.0)).norm() < 1e-15);
        assert!((np.beta - cx::<f64>(-al + 2.0, 0.0)).norm() < 1e-15);
        // B2 numeric on the same point
        let (out2, np2) = backlund_b2(&jet, &p).unwrap();
        let n_val = 1.0 * 0.0 - 1.0 + al - 1.0 + 1.0; // x du - x u^2 - beta u - u + x
        let m_val = 0.0 - 1.0 - al + 1.0 + 1.0;
        assert!((out2.u - cx::<f64>(-n_val / m_val, 0.0)).norm() < 1e-14);
        assert!((np2.alpha - cx::<f64>(al - 2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn backlund_commutativity_and_shift() {
        let al = cx::<f64>(0.98, 0.0);
        let (d1, d2) = (cx::<f64>(0.55, 0.0), cx::<f64>(0.71, 0.0));
        let p = PIIIParams::new(al, cx::<f64>(2.0, 0.0) - al);

        // commutativity B1 B2 = B2 B1 on the seed at x = 1.3
        let jet = u0(cx::<f64>(1.3, 0.0), al, d1, d2).unwrap();
        let (a1, pa) = backlund_b1(&jet, &p).unwrap();
        let (a12, _) = backlund_b2(&a1, &pa).unwrap();
        let (b1, pb) = backlund_b2(&jet, &p).unwrap();
        let (b12, _) = backlund_b1(&b1, &pb).unwrap();
        assert!((a12.u - b12.u).norm() < 1e-9);
        assert!((a12.du - b12.du).norm() < 1e-9);

        // B2 maps u_0(., alpha) to u_0(., alpha - 2) at x = 1.1
        let jet = u0(cx::<f64>(1.1, 0.0), al, d1, d2).unwrap();
        let (w, _) = backlund_b2(&jet, &p).unwrap();
        let target = u0(cx::<f64>(1.1, 0.0), al - cx(2.0, 0.0), d1, d2).unwrap();
        assert!((w.u - target.u).norm() < 1e-9);
        assert!((w.du - target.du).norm() < 1e-9);
    }

    #[test]
    fn three_paths_agree() {
        // n = 0: all collapse to the seed
        let params = sp(0, 0.98);
        let x = cx::<f64>(1.0, 0.0);
        let a = u_n_backlund(&params, x).unwrap();
        let b = u_n_recurrence(&params, x).unwrap();
        let c = u_n_determinant(&params, x).unwrap();
        assert!((a.u - b.u).norm() < 1e-14);
        assert!((a.u - c.u).norm() < 1e-10);
        assert!((a.du - c.du).norm() < 1e-10);

        // n = 3 at x = 2 against a 50-digit reference
        let params = sp(3, 0.98);
        let x = cx::<f64>(2.0, 0.0);
        let want = cx(0.14478557801090035546, 0.0);
        let want_d = cx(-0.31906886297859036523, 0.0);
        for jet in [
            u_n_backlund(&params, x).unwrap(),
            u_n_determinant(&params, x).unwrap(),
            u_n_recurrence(&params, x).unwrap(),
        ] {
            assert!((jet.u - want).norm() < 1e-9, "u = {}", jet.u);
            assert!((jet.du - want_d).norm() < 1e-9);
        }

        // n = 2, alpha = -0.5: determinant vs recurrence
        let params = SolutionParams::new(2, cx::<f64>(-0.5, 0.0), cx(0.55, 0.0), cx(0.71, 0.0)).unwrap();
        let a = u_n_determinant(&params, cx::<f64>(1.0, 0.0)).unwrap();
        let b = u_n_recurrence(&params, cx::<f64>(1.0, 0.0)).unwrap();
        assert!((a.u - b.u).norm() / a.u.norm() < 1e-8);

        // n = 5, alpha = -223/225 (the pole-field parameter set)
        let params =
            SolutionParams::new(5, cx(-223.0 / 225.0, 0.0), cx(0.55, 0.0), cx(0.71, 0.0)).unwrap();
        let a = u_n_backlund(&params, cx::<f64>(2.0, 0.0)).unwrap();
        let b = u_n_recurrence(&params, cx::<f64>(2.0, 0.0)).unwrap();
        assert!((a.u - b.u).norm() / a.u.norm() < 1e-7);
        assert!((a.u - cx(0.62833910772345369727, 0.0)).norm() < 1e-9);
        assert!((a.du - cx(0.95059100825133365619, 0.0)).norm() < 1e-9);

        // complex alpha, complex x: determinant vs recurrence vs 30-digit reference
        let params = SolutionParams::new(
            2,
            cx(0.98, 0.35),
            cx(0.55, 0.0),
            cx(0.71, 0.0),
        )
        .unwrap();
        let x = cx::<f64>(1.1, 0.6);
        let a = u_n_determinant(&params, x).unwrap();
        let b = u_n_recurrence(&params, x).unwrap();
        assert!((a.u - b.u).norm() / a.u.norm() < 1e-9);
        let want = cx(0.20407060317954527736, 0.039096720030123606524);
        let want_d = cx(0.4988730806394987935, 0.49823506913436133263);
        assert!((a.u - want).norm() < 1e-12);
        assert!((a.du - want_d).norm() < 1e-11);
    }

    #[test]
    fn momentum_and_hamiltonians() {
        let beta = cx::<f64>(1.7, 0.0);
        let jet = JetPoint { x: cx(0.9, 0.0), u: cx(1.0, 0.0), du: cx(0.0, 0.0) };
        // u = 1, u' = 0: v = (x + 0 - x + (beta-1))/2 = (beta-1)/2
        let v = momentum(&jet, beta).unwrap();
        assert!((v - (beta - cx(1.0, 0.0)) * cx(0.5, 0.0)).norm() < 1e-15);
        let v1 = momentum(&jet, cx(1.0, 0.0)).unwrap();
        assert!(v1.norm() < 1e-15);

        // H at u = 1, v = (beta-1)/2: -(beta-1)^2/4 + x (beta - alpha - 2)/2
        let p = PIIIParams::new(cx::<f64>(0.4, 0.0), beta);
        let x = cx::<f64>(0.9, 0.0);
        let h = hamiltonian(cx(1.0, 0.0), v, x, &p);
        let want = -(beta - cx(1.0, 0.0)).powi(2) / cx(4.0, 0.0)
            + x * (beta - p.alpha - cx(2.0, 0.0)) / cx(2.0, 0.0);
        assert!((h - want).norm() < 1e-14);
        // v = 0 collapses H to the linear term
        let h0 = hamiltonian(cx(1.3, 0.2), cx(0.0, 0.0), x, &p);
        let want0 = cx::<f64>(2.0, 0.0) * x * cx(1.3, 0.2) * (beta - p.alpha - cx(2.0, 0.0))
            / cx(4.0, 0.0);
        assert!((h0 - want0).norm() < 1e-14);

        // h at H = u = v = 0, x = 0: (beta-4)(beta+alpha-2)/8
        let h = aux_hamiltonian(cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), &p);
        let want = (beta - cx(4.0, 0.0)) * (beta + p.alpha - cx(2.0, 0.0)) / cx(8.0, 0.0);
        assert!((h - want).norm() < 1e-14);
    }

    #[test]
    fn h_chain_identity_and_tau_link() {
        // h_{n+1} = h_n - v_n u_n - 3/2 + alpha/4 + 3 beta/4 + 2n at n = 0.
        // (The shift constant carries +3 beta/4; the flipped sign printed in
        // the source derivation does not match the chain numerically.)
        let params = sp(0, 0.98);
        let x = cx::<f64>(1.2, 0.0);
        let h0 = h_n(&params, x).unwrap();
        let h1 = h_n(&sp(1, 0.98), x).unwrap();
        let jet = u_n_backlund(&params, x).unwrap();
        let beta = params.seed_params().beta;
        let v0 = momentum(&jet, beta).unwrap();
        let shift = cx::<f64>(-1.5, 0.0) + params.alpha / cx::<f64>(4.0, 0.0)
            + cx::<f64>(3.0, 0.0) * beta / cx::<f64>(4.0, 0.0);
        assert!((h1 - (h0 - v0 * jet.u + shift)).norm() < 1e-8);
        // 50-digit reference for h_1
        assert!((h1 - cx(3.3818317381156111548, 0.0)).norm() < 1e-10);

        // x (ln tau_n)' = h_n for n = 1, 2 (finite differences kill the
        // multiplicative constant)
        for n in [1u32, 2] {
            let params = sp(n, 0.98);
            let x = cx::<f64>(1.0, 0.0);
            let h = 1e-5;
            let tp = tau(n, params.alpha, x + cx::<f64>(h, 0.0), params.d1, params.d2).unwrap();
            let tm = tau(n, params.alpha, x - cx::<f64>(h, 0.0), params.d1, params.d2).unwrap();
            let t0 = tau(n, params.alpha, x, params.d1, params.d2).unwrap();
            let dlog = (tp - tm) / (cx::<f64>(2.0 * h, 0.0) * t0);
            let lhs: Complex<f64> = x * dlog;
            let rhs = h_n(&params, x).unwrap();
            assert!((lhs - rhs).norm() < 1e-6, "tau link at n={n}: {lhs} vs {rhs}");
        }
    }
}
