//! Generalized Gauss-Laguerre rules for the weight x^gamma e^{-x} on [0, inf).
//!
//! Nodes come from interlacing bisection on the orthonormal three-term
//! recurrence followed by Newton polish; weights are Christoffel numbers
//! 1 / sum_k p_k(x)^2. Everything stays O(1)-scaled, so 64-node rules are
//! safe in double precision.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::special::gamma;
use num_complex::Complex;

pub struct GaussLaguerre<T: Scalar> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub gamma_: T,
}

/// Orthonormal recurrence values p_0..p_upto at x, optionally with derivatives.
fn ortho_values<T: Scalar>(x: T, upto: usize, g: T, p0: T) -> (Vec<T>, Vec<T>) {
    let a = |k: usize| T::of(2.0 * k as f64 + 1.0) + g;
    let b = |k: usize| (T::of(k as f64) * (T::of(k as f64) + g)).sqrt();
    let mut p = Vec::with_capacity(upto + 1);
    let mut dp = Vec::with_capacity(upto + 1);
    p.push(p0);
    dp.push(T::zero());
    if upto >= 1 {
        p.push((x - a(0)) * p0 / b(1));
        dp.push(p0 / b(1));
    }
    for k in 1..upto {
        let pk1 = ((x - a(k)) * p[k] - b(k) * p[k - 1]) / b(k + 1);
        let dpk1 = (p[k] + (x - a(k)) * dp[k] - b(k) * dp[k - 1]) / b(k + 1);
        p.push(pk1);
        dp.push(dpk1);
    }
    (p, dp)
}

impl<T: Scalar> GaussLaguerre<T> {
    pub fn new(n: usize, gamma_: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::Range("quadrature order must be positive".into()));
        }
        if gamma_ <= T::of(-1.0) {
            return Err(Error::Domain("Gauss-Laguerre weight needs Re(gamma) > -1".into()));
        }
        let gamma_re: f64 = gamma_.to_f64().unwrap();
        let norm0 = gamma(Complex::new(T::of(gamma_re + 1.0), T::zero()))
            .map_err(|e| Error::Domain(format!("weight normalization: {e}")))?;
        let p0 = T::one() / norm0.re.sqrt();

        // level-by-level: roots of p_k interlace roots of p_{k+1}
        let mut roots: Vec<T> = vec![T::of(1.0) + gamma_]; // root of p_1 is a_0
        for lvl in 2..=n {
            let hi = T::of(4.0 * lvl as f64 + 10.0) + gamma_ * T::of(2.0);
            let hi = hi.max(*roots.last().unwrap() * T::of(1.5) + T::of(10.0));
            let mut brackets = Vec::with_capacity(lvl + 1);
            brackets.push(T::of(1e-300));
            brackets.extend_from_slice(&roots);
            brackets.push(hi);
            let mut new_roots = Vec::with_capacity(lvl);
            for i in 0..lvl {
                let (mut lo, mut up) = (brackets[i], brackets[i + 1]);
                let mut flo = ortho_values(lo, lvl, gamma_, p0).0[lvl];
                for _ in 0..80 {
                    let mid = (lo + up) * T::of(0.5);
                    let fm = ortho_values(mid, lvl, gamma_, p0).0[lvl];
                    if (fm > T::zero()) == (flo > T::zero()) {
                        lo = mid;
                        flo = fm;
                    } else {
                        up = mid;
                    }
                }
                new_roots.push((lo + up) * T::of(0.5));
            }
            roots = new_roots;
        }

        // Newton polish and Christoffel weights
        let mut weights = Vec::with_capacity(n);
        for x in roots.iter_mut() {
            for _ in 0..4 {
                let (p, dp) = ortho_values(*x, n, gamma_, p0);
                if dp[n] != T::zero() {
                    *x = *x - p[n] / dp[n];
                }
            }
            let (p, _) = ortho_values(*x, n - 1, gamma_, p0);
            let s: T = p.iter().fold(T::zero(), |acc, v| acc + *v * *v);
            weights.push(T::one() / s);
        }
        Ok(Self { nodes: roots, weights, gamma_ })
    }

    /// Integrate f against the weight x^gamma e^{-x} over [0, inf).
    pub fn integrate<F: Fn(T) -> T>(&self, f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moments_are_exact() {
        // integral of x^j x^gamma e^-x = Gamma(gamma + j + 1)
        for &g in &[0.0f64, 0.5, 0.3] {
            let rule = GaussLaguerre::<f64>::new(64, g).unwrap();
            for j in 0..8u32 {
                let got = rule.integrate(|x| x.powi(j as i32));
                let want = gamma(Complex::new(g + j as f64 + 1.0, 0.0)).unwrap().re;
                assert!(
                    (got - want).abs() / want < 1e-12,
                    "moment j={j} gamma={g}: got {got}, want {want}"
                );
            }
        }
    }

    #[test]
    fn total_mass_is_gamma() {
        let rule = GaussLaguerre::<f64>::new(16, 0.5).unwrap();
        let mass: f64 = rule.weights.iter().sum();
        let want = gamma(Complex::new(1.5, 0.0)).unwrap().re;
        assert!((mass - want).abs() < 1e-13);
    }

    #[test]
    fn nodes_sorted_positive() {
        let rule = GaussLaguerre::<f64>::new(32, 0.3).unwrap();
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rule.nodes[0] > 0.0);
    }
}
