//! Hankel-determinant machinery: the cylinder-kernel determinant Delta_n, its
//! exact x-derivative, the tau rescaling, Laguerre moment determinants with
//! their closed form, and the determinant identities used as property checks
//! (Desnanot-Jacobi, Vandermonde, Andreief via quadrature, Toda).

pub mod matrix;
pub mod quadrature;

pub use matrix::ComplexMatrix;
pub use quadrature::GaussLaguerre;

use crate::error::{Error, Result};
use crate::scalar::{cre, Scalar};
use crate::special::{cylinder, cylinder_derivative, gamma};
use num_complex::Complex;

/// Cylinder values C_{alpha/2 + m}(x) for m in [m_lo, m_hi]; one series pass
/// per distinct order instead of one per matrix entry.
fn cylinder_orders<T: Scalar>(
    alpha: Complex<T>,
    x: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
    m_lo: i64,
    m_hi: i64,
) -> Result<Vec<Complex<T>>> {
    let half = alpha * cre::<T>(0.5);
    (m_lo..=m_hi)
        .map(|m| cylinder(half + cre::<T>(m as f64), x, d1, d2))
        .collect()
}

/// Delta_n(x, alpha) = det { C_{alpha/2 - j + k}(x) }_{j,k=0}^{n-1}, Delta_0 = 1.
pub fn delta<T: Scalar>(
    n: u32,
    alpha: Complex<T>,
    x: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
) -> Result<Complex<T>> {
    let n = n as usize;
    if n == 0 {
        return Ok(cre(1.0));
    }
    let m = n as i64 - 1;
    let orders = cylinder_orders(alpha, x, d1, d2, -m, m)?;
    let mut mat = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            mat.set(j, k, orders[(k as i64 - j as i64 + m) as usize]);
        }
    }
    mat.determinant()
}

/// d/dx Delta_n as a sum of n determinants, each with one row replaced by its
/// exact entry derivatives (no numerical differentiation).
pub fn delta_derivative<T: Scalar>(
    n: u32,
    alpha: Complex<T>,
    x: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
) -> Result<Complex<T>> {
    let n = n as usize;
    if n == 0 {
        return Ok(cre(0.0));
    }
    let m = n as i64 - 1;
    let orders = cylinder_orders(alpha, x, d1, d2, -m, m)?;
    let half = alpha * cre::<T>(0.5);
    let deriv_orders: Vec<Complex<T>> = (-m..=m)
        .map(|mm| cylinder_derivative(half + cre::<T>(mm as f64), x, d1, d2))
        .collect::<Result<_>>()?;
    let mut total = cre::<T>(0.0);
    for row in 0..n {
        let mut mat = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..n {
                let idx = (k as i64 - j as i64 + m) as usize;
                mat.set(j, k, if j == row { deriv_orders[idx] } else { orders[idx] });
            }
        }
        total = total + mat.determinant()?;
    }
    Ok(total)
}

/// tau_n = x^{n(n-1)} (-1)^{n(n-1)/2} Delta_n.
pub fn tau<T: Scalar>(
    n: u32,
    alpha: Complex<T>,
    x: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
) -> Result<Complex<T>> {
    let d = delta(n, alpha, x, d1, d2)?;
    let n = n as i64;
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -T::one() } else { T::one() };
    Ok(x.powi((n * (n - 1)) as i32) * Complex::new(sign, T::zero()) * d)
}

/// Moment of the Laguerre weight: mu_j = Gamma(gamma + j + 1).
pub fn laguerre_moment<T: Scalar>(gamma_: Complex<T>, j: u32) -> Result<Complex<T>> {
    if gamma_.re + T::of(j as f64) <= T::of(-1.0) {
        return Err(Error::Domain(format!(
            "moment integral diverges: Re(gamma) + j = {} <= -1",
            gamma_.re + T::of(j as f64)
        )));
    }
    gamma(gamma_ + cre::<T>(j as f64 + 1.0))
}

/// Determinant of the (n+1) x (n+1) moment matrix { mu_{j+k} }.
pub fn laguerre_hankel_numeric<T: Scalar>(gamma_: Complex<T>, n: u32) -> Result<Complex<T>> {
    if gamma_.re <= T::of(-1.0) {
        return Err(Error::Domain("Laguerre weight needs Re(gamma) > -1".into()));
    }
    let size = n as usize + 1;
    let moments: Vec<Complex<T>> = (0..2 * n + 1)
        .map(|j| laguerre_moment(gamma_, j))
        .collect::<Result<_>>()?;
    let mut mat = ComplexMatrix::zeros(size, size);
    for j in 0..size {
        for k in 0..size {
            mat.set(j, k, moments[j + k]);
        }
    }
    mat.determinant()
}

/// Closed form: the product of normalizing constants h_j = Gamma(j+gamma+1) Gamma(j+1),
/// equal to the Barnes-G ratio G(n+gamma+2) G(n+2) / G(gamma+1).
pub fn laguerre_hankel_closed<T: Scalar>(gamma_: Complex<T>, n: u32) -> Result<Complex<T>> {
    let mut acc = cre::<T>(1.0);
    for j in 0..=n {
        acc = acc * gamma(gamma_ + cre::<T>(j as f64 + 1.0))? * gamma(cre::<T>(j as f64 + 1.0))?;
    }
    Ok(acc)
}

/// Scaled defect of det(A) det(A_{ij|ij}) = det(A_{i|i}) det(A_{j|j}) - det(A_{i|j}) det(A_{j|i}).
pub fn desnanot_jacobi_residual<T: Scalar>(
    m: &ComplexMatrix<T>,
    i: usize,
    j: usize,
) -> Result<T> {
    if m.rows() != m.cols() || m.rows() < 2 {
        return Err(Error::Shape("Desnanot-Jacobi needs a square matrix of size >= 2".into()));
    }
    if i == j || i >= m.rows() || j >= m.rows() {
        return Err(Error::Shape("row/column indices must be distinct and in range".into()));
    }
    let lhs = m.determinant()? * m.minor(&[i, j], &[i, j]).determinant()?;
    let rhs = m.minor(&[i], &[i]).determinant()? * m.minor(&[j], &[j]).determinant()?
        - m.minor(&[i], &[j]).determinant()? * m.minor(&[j], &[i]).determinant()?;
    Ok((lhs - rhs).norm() / (T::one() + rhs.norm()))
}

/// Relative defect of the n-fold Andreief identity for the monomial systems
/// f_j = g_j = z^{j-1} under the Laguerre weight, with a 64-node rule per
/// dimension: quadrature of det{f_j(x_k)} det{g_j(x_k)} prod h(x_k) against
/// n! det{mu_{j+k}}.
pub fn andreief_residual<T: Scalar>(n: u32, gamma_: T) -> Result<T> {
    if !(1..=3).contains(&n) {
        return Err(Error::Range("Andreief check implemented for n in 1..=3".into()));
    }
    if gamma_ <= T::of(-1.0) {
        return Err(Error::Domain("weight needs gamma > -1".into()));
    }
    let rule = GaussLaguerre::<T>::new(64, gamma_)?;
    let n = n as usize;
    let nodes = &rule.nodes;
    let weights = &rule.weights;
    let nn = nodes.len();
    // squared Vandermonde of the selected nodes
    let vsq = |idx: &[usize]| {
        let mut v = T::one();
        for a in 0..idx.len() {
            for b in a + 1..idx.len() {
                let d = nodes[idx[b]] - nodes[idx[a]];
                v = v * d * d;
            }
        }
        v
    };
    let mut lhs = T::zero();
    match n {
        1 => {
            for i in 0..nn {
                lhs = lhs + weights[i];
            }
        }
        2 => {
            for i in 0..nn {
                for j in 0..nn {
                    lhs = lhs + weights[i] * weights[j] * vsq(&[i, j]);
                }
            }
        }
        _ => {
            for i in 0..nn {
                for j in 0..nn {
                    let wij = weights[i] * weights[j];
                    for k in 0..nn {
                        lhs = lhs + wij * weights[k] * vsq(&[i, j, k]);
                    }
                }
            }
        }
    }
    let gc = Complex::new(gamma_, T::zero());
    let size = n;
    let mut mat = ComplexMatrix::zeros(size, size);
    for j in 0..size {
        for k in 0..size {
            mat.set(j, k, laguerre_moment(gc, (j + k) as u32)?);
        }
    }
    let mut fact = T::one();
    for m in 2..=n {
        fact = fact * T::of(m as f64);
    }
    let rhs = fact * mat.determinant()?.re;
    Ok((lhs - rhs).abs() / rhs.abs().max(T::of(1e-300)))
}

/// Relative defect of det{ x_j^k } against prod_{j<k} (x_k - x_j).
pub fn vandermonde_residual<T: Scalar>(xs: &[Complex<T>]) -> T {
    let n = xs.len();
    if n == 0 {
        return T::zero();
    }
    let mut mat = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut p = cre::<T>(1.0);
        for k in 0..n {
            mat.set(j, k, p);
            p = p * xs[j];
        }
    }
    let det = mat.determinant().unwrap_or_else(|_| cre(f64::NAN));
    let mut prod = cre::<T>(1.0);
    for j in 0..n {
        for k in j + 1..n {
            prod = prod * (xs[k] - xs[j]);
        }
    }
    (det - prod).norm() / (T::one() + prod.norm())
}

/// Complex log along a short list of stencil values, unwrapped so the
/// imaginary part is continuous (finite differences must not see 2*pi jumps).
fn unwrapped_ln<T: Scalar>(values: &[Complex<T>]) -> Vec<Complex<T>> {
    let two_pi = T::of(std::f64::consts::TAU);
    let mut out: Vec<Complex<T>> = Vec::with_capacity(values.len());
    let mut offset = T::zero();
    for (i, v) in values.iter().enumerate() {
        let mut l = v.ln();
        if i > 0 {
            let prev = out[i - 1].im;
            let mut im = l.im + offset;
            while im - prev > T::of(std::f64::consts::PI) {
                offset = offset - two_pi;
                im = im - two_pi;
            }
            while prev - im > T::of(std::f64::consts::PI) {
                offset = offset + two_pi;
                im = im + two_pi;
            }
            l = Complex::new(l.re, im);
        }
        out.push(l);
    }
    out
}

/// Relative defect of the Toda relation (x d/dx)^2 ln tau_n = tau_{n+1} tau_{n-1} / tau_n^2,
/// with the left side from Richardson-extrapolated central differences of the
/// unwrapped log (relative step 1e-3).
pub fn toda_residual<T: Scalar>(
    n: u32,
    alpha: Complex<T>,
    x: Complex<T>,
    d1: Complex<T>,
    d2: Complex<T>,
) -> Result<T> {
    if n == 0 {
        return Err(Error::Range("Toda residual needs n >= 1".into()));
    }
    let h = x * cre::<T>(1e-3);
    let offsets = [-1.0, -0.5, 0.0, 0.5, 1.0];
    let mut tv = Vec::with_capacity(5);
    for o in offsets {
        tv.push(tau(n, alpha, x + h * cre::<T>(o), d1, d2)?);
    }
    let f = unwrapped_ln(&tv);
    // central differences at full and half step, one Richardson level
    let d1_full = (f[4] - f[0]) / (cre::<T>(2.0) * h);
    let d1_half = (f[3] - f[1]) / h;
    let fp = (cre::<T>(4.0) * d1_half - d1_full) / cre::<T>(3.0);
    let d2_full = (f[4] - cre::<T>(2.0) * f[2] + f[0]) / (h * h);
    let d2_half = (f[3] - cre::<T>(2.0) * f[2] + f[1]) / (h * h * cre::<T>(0.25));
    let fpp = (cre::<T>(4.0) * d2_half - d2_full) / cre::<T>(3.0);
    // (x d/dx)^2 ln tau = x f' + x^2 f''
    let lhs = x * fp + x * x * fpp;
    let rhs = tau(n + 1, alpha, x, d1, d2)? * tau(n - 1, alpha, x, d1, d2)?
        / (tau(n, alpha, x, d1, d2)?.powi(2));
    Ok((lhs - rhs).norm() / rhs.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    type C = Complex<f64>;

    fn params() -> (C, C, C) {
        (cx(0.98, 0.0), cx(0.55, 0.0), cx(0.71, 0.0))
    }

    #[test]
    fn delta_low_orders() {
        let (al, d1, d2) = params();
        let x = cx::<f64>(1.0, 0.0);
        assert_eq!(delta(0, al, x, d1, d2).unwrap(), cx(1.0, 0.0));
        let d1v = delta(1, al, x, d1, d2).unwrap();
        let want = cylinder(al * cx(0.5, 0.0), x, d1, d2).unwrap();
        assert!((d1v - want).norm() < 1e-15);
        // 2x2: C^2 - C_{+1} C_{-1}, checked against a 30-digit reference
        let d2v = delta(2, al, x, d1, d2).unwrap();
        let c0 = cylinder(al * cx(0.5, 0.0), x, d1, d2).unwrap();
        let cp = cylinder(al * cx(0.5, 0.0) + cx(1.0, 0.0), x, d1, d2).unwrap();
        let cm = cylinder(al * cx(0.5, 0.0) - cx(1.0, 0.0), x, d1, d2).unwrap();
        assert!((d2v - (c0 * c0 - cp * cm)).norm() < 1e-14);
        assert!((d2v - cx(0.46414871512315387139, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn delta_derivative_exact_vs_fd() {
        let (al, d1, d2) = params();
        assert_eq!(delta_derivative(0, al, cx(1.0, 0.0), d1, d2).unwrap(), cx(0.0, 0.0));
        let dd1 = delta_derivative(1, al, cx(1.3, 0.0), d1, d2).unwrap();
        let want = cylinder_derivative(al * cx(0.5, 0.0), cx(1.3, 0.0), d1, d2).unwrap();
        assert!((dd1 - want).norm() < 1e-15);

        let x = 1.5;
        let exact = delta_derivative(3, al, cx(x, 0.0), d1, d2).unwrap();
        assert!((exact - cx(0.92967275786799878196, 0.0)).norm() < 1e-12);
        let h = 1e-4;
        let fd = (delta(3, al, cx(x + h, 0.0), d1, d2).unwrap()
            - delta(3, al, cx(x - h, 0.0), d1, d2).unwrap())
            / cx(2.0 * h, 0.0);
        assert!((exact - fd).norm() / exact.norm() < 1e-7);
    }

    #[test]
    fn tau_low_orders() {
        let (al, d1, d2) = params();
        let x = cx::<f64>(1.2, 0.0);
        assert_eq!(tau(0, al, x, d1, d2).unwrap(), cx(1.0, 0.0));
        let t1 = tau(1, al, x, d1, d2).unwrap();
        assert!((t1 - cylinder(al * cx(0.5, 0.0), x, d1, d2).unwrap()).norm() < 1e-15);
        // tau_2 = x^2 * (-1) * Delta_2
        let t2 = tau(2, al, x, d1, d2).unwrap();
        let want = x * x * cx(-1.0, 0.0) * delta(2, al, x, d1, d2).unwrap();
        assert!((t2 - want).norm() < 1e-15);
    }

    #[test]
    fn toda_relation_fig2_parameters() {
        let (al, d1, d2) = params();
        for n in 1..=3u32 {
            for &x in &[0.8, 1.0, 1.5] {
                let r = toda_residual(n, al, cx(x, 0.0), d1, d2).unwrap();
                assert!(r < 1e-5, "Toda residual {r} at n={n}, x={x}");
            }
        }
    }

    #[test]
    fn laguerre_moments() {
        assert!((laguerre_moment(cx::<f64>(0.0, 0.0), 0).unwrap() - cx(1.0, 0.0)).norm() < 1e-15);
        assert!((laguerre_moment(cx::<f64>(1.0, 0.0), 2).unwrap() - cx(6.0, 0.0)).norm() < 1e-13);
        let m = laguerre_moment(cx::<f64>(0.3, 0.0), 1).unwrap();
        assert!((m - cx(1.166711905198160345, 0.0)).norm() < 1e-13);
        assert!(matches!(
            laguerre_moment(cx::<f64>(-1.5, 0.0), 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn laguerre_hankel_closed_matches_numeric() {
        // tiny cases by hand
        assert!((laguerre_hankel_numeric(cx::<f64>(0.0, 0.0), 0).unwrap() - cx(1.0, 0.0)).norm() < 1e-14);
        assert!((laguerre_hankel_numeric(cx::<f64>(0.0, 0.0), 1).unwrap() - cx(1.0, 0.0)).norm() < 1e-12);
        assert!((laguerre_hankel_numeric(cx::<f64>(1.0, 0.0), 1).unwrap() - cx(2.0, 0.0)).norm() < 1e-12);
        assert!((laguerre_hankel_closed(cx::<f64>(0.0, 0.0), 1).unwrap() - cx(1.0, 0.0)).norm() < 1e-14);
        assert!((laguerre_hankel_closed(cx::<f64>(1.0, 0.0), 1).unwrap() - cx(2.0, 0.0)).norm() < 1e-13);
        for &g in &[0.3, 1.7, 2.5] {
            for n in 0..=6u32 {
                let num = laguerre_hankel_numeric(cx::<f64>(g, 0.0), n).unwrap();
                let closed = laguerre_hankel_closed(cx::<f64>(g, 0.0), n).unwrap();
                assert!(
                    (num - closed).norm() / closed.norm() < 1e-9,
                    "gamma={g} n={n}: numeric {num} vs closed {closed}"
                );
            }
        }
    }

    #[test]
    fn desnanot_jacobi_on_identity_and_random() {
        let mut eye = ComplexMatrix::<f64>::zeros(4, 4);
        for i in 0..4 {
            eye.set(i, i, cx(1.0, 0.0));
        }
        assert!(desnanot_jacobi_residual(&eye, 1, 2).unwrap() < 1e-15);

        let mut state = 0xb5297a4d5be4b0b5u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for size in [4usize, 6] {
            let mut m = ComplexMatrix::<f64>::zeros(size, size);
            for j in 0..size {
                for k in 0..size {
                    m.set(j, k, cx(next() * 2.0, next() * 2.0));
                }
            }
            let tol = if size <= 4 { 1e-12 } else { 1e-11 };
            assert!(desnanot_jacobi_residual(&m, 0, size - 1).unwrap() < tol);
        }
        assert!(matches!(
            desnanot_jacobi_residual(&eye, 1, 1),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn andreief_quadrature_vs_moment_determinant() {
        assert!(andreief_residual::<f64>(1, 0.0).unwrap() < 1e-12);
        assert!(andreief_residual::<f64>(2, 0.0).unwrap() < 1e-10);
        assert!(andreief_residual::<f64>(3, 0.5).unwrap() < 1e-8);
    }

    #[test]
    fn vandermonde_identity() {
        assert_eq!(vandermonde_residual::<f64>(&[cx(0.0, 0.0)]), 0.0);
        let r = vandermonde_residual::<f64>(&[cx(1.0, 0.0), cx(2.0, 0.0), cx(3.0, 0.0)]);
        assert!(r < 1e-13);
        let xs: Vec<C> = vec![
            cx(0.3, -0.2),
            cx(1.4, 0.9),
            cx(-0.7, 0.1),
            cx(2.2, -1.3),
            cx(0.05, 0.6),
            cx(-1.8, -0.4),
        ];
        assert!(vandermonde_residual(&xs) < 1e-11);
    }

    #[test]
    fn delta1_small_x_law() {
        // For Re(alpha) > 0: Delta_1(x) * (x/2)^{alpha/2} * (-pi / (d2 Gamma(alpha/2))) -> 1
        let (al, d1, d2) = params();
        let x = cx::<f64>(1e-4, 0.0);
        let lead = delta(1, al, x, d1, d2).unwrap()
            * (x * cx(0.5, 0.0)).powc(al * cx(0.5, 0.0))
            * cx(-std::f64::consts::PI, 0.0)
            / (d2 * gamma(al * cx(0.5, 0.0)).unwrap());
        assert!((lead - cx(1.0, 0.0)).norm() < 1e-3);
    }
}
