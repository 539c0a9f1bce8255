//! Detailed small-x expansion by undetermined coefficients on the exponent
//! lattice {m + l p : m, l integers}. The u-series lives on the odd-parity
//! sublattice (m + l odd); products and the cleared equation move through
//! other parity classes, so parity is asserted by the solver pipeline rather
//! than enforced on every series.
//!
//! Exponents are exact integer pairs; ordering and truncation use the numeric
//! real part m + l Re(p). When p itself is an odd integer (the extreme
//! regimes, p = +-1) the lattice collapses and keys canonicalize to (m, 0);
//! an even-integer or colliding p is a resonance and is reported, never
//! merged.

use crate::asymptotics::u_regime;
use crate::error::{Error, Result};
use crate::painleve::SolutionParams;
use crate::scalar::{cre, near_integer, Scalar};
use num_complex::Complex;
use std::collections::BTreeMap;

/// Coefficients below this modulus are dropped (denormal guard only).
const DROP_THRESHOLD: f64 = 1e-300;
/// Two stored keys whose exponent real parts differ by less than this collide.
const COLLISION_TOL: f64 = 1e-12;

/// Formal series sum of coef * x^{m + l p} over integer keys (m, l).
#[derive(Debug, Clone)]
pub struct LatticeSeries<T: Scalar> {
    p: Complex<T>,
    /// Some(k) when p is the odd integer k and the lattice is canonical (m, 0).
    int_p: Option<i64>,
    terms: BTreeMap<(i64, i64), Complex<T>>,
}

impl<T: Scalar> LatticeSeries<T> {
    pub fn empty(p: Complex<T>) -> Self {
        let int_p = near_integer(p, COLLISION_TOL).filter(|k| k.rem_euclid(2) == 1);
        Self { p, int_p, terms: BTreeMap::new() }
    }

    pub fn from_term(p: Complex<T>, key: (i64, i64), coef: Complex<T>) -> Self {
        let mut s = Self::empty(p);
        s.push(key, coef);
        s
    }

    pub fn p(&self) -> Complex<T> {
        self.p
    }

    /// True when the lattice has collapsed to integer exponents.
    pub fn is_integer_lattice(&self) -> bool {
        self.int_p.is_some()
    }

    fn canon(&self, key: (i64, i64)) -> (i64, i64) {
        match self.int_p {
            Some(k) => (key.0 + key.1 * k, 0),
            None => key,
        }
    }

    fn push(&mut self, key: (i64, i64), coef: Complex<T>) {
        let key = self.canon(key);
        let entry = self.terms.entry(key).or_insert_with(|| cre(0.0));
        *entry = *entry + coef;
        if entry.norm() < T::of(DROP_THRESHOLD) {
            self.terms.remove(&key);
        }
    }

    /// Numeric exponent of a key.
    pub fn exponent_of(&self, key: (i64, i64)) -> Complex<T> {
        cre::<T>(key.0 as f64) + cre::<T>(key.1 as f64) * self.p
    }

    /// Terms sorted by ascending exponent real part.
    pub fn sorted_terms(&self) -> Vec<((i64, i64), Complex<T>)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&k, &c)| (k, c)).collect();
        v.sort_by(|a, b| {
            self.exponent_of(a.0)
                .re
                .partial_cmp(&self.exponent_of(b.0).re)
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        v
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: (i64, i64)) -> Complex<T> {
        let key = self.canon(key);
        self.terms.get(&key).copied().unwrap_or_else(|| cre(0.0))
    }

    /// Key of the minimal-exponent term with a nonzero coefficient.
    pub fn leading_key(&self) -> Option<(i64, i64)> {
        self.sorted_terms().first().map(|(k, _)| *k)
    }

    /// Lower bound on the integer part of the stored exponents.
    pub fn m_min(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.0).min()
    }

    /// Largest coefficient modulus (the local scale of the series).
    pub fn max_coefficient(&self) -> T {
        self.terms
            .values()
            .fold(T::zero(), |acc, c| acc.max(c.norm()))
    }

    /// Stored-key collision guard: distinct keys with numerically equal
    /// exponents are a resonance.
    fn check_collisions(&self) -> Result<()> {
        let sorted = self.sorted_terms();
        for w in sorted.windows(2) {
            let (k1, k2) = (w[0].0, w[1].0);
            let e1 = self.exponent_of(k1).re;
            let e2 = self.exponent_of(k2).re;
            if k1 != k2 && (e2 - e1).abs() < T::of(COLLISION_TOL) {
                return Err(Error::Resonance(format!(
                    "lattice keys {k1:?} and {k2:?} share the exponent {e1}"
                )));
            }
        }
        Ok(())
    }
}

/// Sum a + fac * b.
pub fn series_add<T: Scalar>(
    a: &LatticeSeries<T>,
    b: &LatticeSeries<T>,
    fac: Complex<T>,
) -> Result<LatticeSeries<T>> {
    let mut out = a.clone();
    for (&k, &c) in &b.terms {
        out.push(k, fac * c);
    }
    out.check_collisions()?;
    Ok(out)
}

/// Convolution product, truncated to exponent real part <= trunc_re.
pub fn series_product<T: Scalar>(
    a: &LatticeSeries<T>,
    b: &LatticeSeries<T>,
    trunc_re: T,
) -> Result<LatticeSeries<T>> {
    let mut out = LatticeSeries::empty(a.p);
    for (&(m1, l1), &c1) in &a.terms {
        for (&(m2, l2), &c2) in &b.terms {
            let key = (m1 + m2, l1 + l2);
            if out.exponent_of(key).re <= trunc_re + T::of(1e-9) {
                out.push(key, c1 * c2);
            }
        }
    }
    out.check_collisions()?;
    Ok(out)
}

/// Term-by-term derivative: (m, l) c -> (m - 1, l) (m + l p) c.
pub fn series_derivative<T: Scalar>(a: &LatticeSeries<T>) -> LatticeSeries<T> {
    let mut out = LatticeSeries::empty(a.p);
    for (&(m, l), &c) in &a.terms {
        out.push((m - 1, l), a.exponent_of((m, l)) * c);
    }
    out
}

/// Multiply by x (key shift by (1, 0)).
pub fn series_x_mul<T: Scalar>(a: &LatticeSeries<T>) -> LatticeSeries<T> {
    let mut out = LatticeSeries::empty(a.p);
    for (&(m, l), &c) in &a.terms {
        out.push((m + 1, l), c);
    }
    out
}

/// Neumann inversion around the unique minimal-exponent term: 1/a truncated
/// so that a * inverse(a) = 1 + O(x^{lead + budget}).
pub fn series_inverse<T: Scalar>(a: &LatticeSeries<T>, budget: T) -> Result<LatticeSeries<T>> {
    let lead = a
        .leading_key()
        .ok_or_else(|| Error::ZeroLead("inverse of the empty series".into()))?;
    let c0 = a.coefficient(lead);
    if c0.norm() < T::of(DROP_THRESHOLD) {
        return Err(Error::ZeroLead("leading coefficient is zero".into()));
    }
    // g = a / (c0 x^lead) - 1, exponents strictly positive
    let mut g = LatticeSeries::empty(a.p);
    for (&(m, l), &c) in &a.terms {
        let key = (m - lead.0, l - lead.1);
        if key != (0, 0) {
            g.push(key, c / c0);
        }
    }
    let g_min = match g.leading_key() {
        Some(k) => g.exponent_of(k).re,
        None => {
            // monomial: inverse is the reciprocal monomial
            return Ok(LatticeSeries::from_term(a.p, (-lead.0, -lead.1), c0.finv()));
        }
    };
    if g_min <= T::zero() {
        return Err(Error::ZeroLead("leading term is not strictly minimal".into()));
    }
    // 1/a = x^{-lead}/c0 * sum_k (-g)^k
    let trunc = budget;
    let mut neg_g = LatticeSeries::empty(a.p);
    for (&k, &c) in &g.terms {
        neg_g.push(k, -c);
    }
    let mut acc = LatticeSeries::from_term(a.p, (0, 0), cre(1.0));
    let mut power = LatticeSeries::from_term(a.p, (0, 0), cre(1.0));
    let mut order = T::zero();
    while order + g_min <= trunc {
        power = series_product(&power, &neg_g, trunc)?;
        if power.is_empty() {
            break;
        }
        acc = series_add(&acc, &power, cre(1.0))?;
        order = order + g_min;
    }
    let mut out = LatticeSeries::empty(a.p);
    for (&(m, l), &c) in &acc.terms {
        out.push((m - lead.0, l - lead.1), c / c0);
    }
    out.check_collisions()?;
    Ok(out)
}

/// Pointwise evaluation, summed in increasing exponent real part, principal
/// branch of x^p.
pub fn series_eval<T: Scalar>(a: &LatticeSeries<T>, x: Complex<T>) -> Result<Complex<T>> {
    if x.norm() == T::zero() {
        return Err(Error::Domain("series evaluation at x = 0".into()));
    }
    let log_x = x.ln();
    let mut acc = cre::<T>(0.0);
    for (key, c) in a.sorted_terms() {
        acc = acc + c * (a.exponent_of(key) * log_x).exp();
    }
    Ok(acc)
}

/// The cleared equation G[u] = x u u'' - x (u')^2 + u u' - A u^3 - B u - x u^4 + x
/// with (A, B) = (alpha + 2n, -alpha + 2 + 2n); a solution series makes every
/// coefficient vanish.
fn cleared_equation<T: Scalar>(
    u: &LatticeSeries<T>,
    a_coef: Complex<T>,
    b_coef: Complex<T>,
    work_re: T,
) -> Result<LatticeSeries<T>> {
    let du = series_derivative(u);
    let ddu = series_derivative(&du);
    let u2 = series_product(u, u, work_re)?;
    let u3 = series_product(&u2, u, work_re)?;
    let u4 = series_product(&u2, &u2, work_re)?;
    let mut g = series_x_mul(&series_product(u, &ddu, work_re)?);
    g = series_add(&g, &series_x_mul(&series_product(&du, &du, work_re)?), cre(-1.0))?;
    g = series_add(&g, &series_product(u, &du, work_re)?, cre(1.0))?;
    g = series_add(&g, &u3, -a_coef)?;
    g = series_add(&g, u, -b_coef)?;
    g = series_add(&g, &series_x_mul(&u4), cre(-1.0))?;
    g = series_add(&g, &LatticeSeries::from_term(u.p, (1, 0), cre(1.0)), cre(1.0))?;
    Ok(g)
}

/// Directional derivative of G at u in direction v (exact; G is polynomial).
fn cleared_linearization<T: Scalar>(
    u: &LatticeSeries<T>,
    v: &LatticeSeries<T>,
    a_coef: Complex<T>,
    b_coef: Complex<T>,
    work_re: T,
) -> Result<LatticeSeries<T>> {
    let du = series_derivative(u);
    let ddu = series_derivative(&du);
    let dv = series_derivative(v);
    let ddv = series_derivative(&dv);
    let u2 = series_product(u, u, work_re)?;
    let u3 = series_product(&u2, u, work_re)?;
    let mut g = series_x_mul(&series_add(
        &series_product(v, &ddu, work_re)?,
        &series_product(u, &ddv, work_re)?,
        cre(1.0),
    )?);
    g = series_add(&g, &series_x_mul(&series_product(&du, &dv, work_re)?), cre(-2.0))?;
    g = series_add(&g, &series_product(&du, v, work_re)?, cre(1.0))?;
    g = series_add(&g, &series_product(u, &dv, work_re)?, cre(1.0))?;
    g = series_add(&g, &series_product(&u2, v, work_re)?, -a_coef * cre(3.0))?;
    g = series_add(&g, v, -b_coef)?;
    g = series_add(&g, &series_x_mul(&series_product(&u3, v, work_re)?), cre(-4.0))?;
    Ok(g)
}

/// Candidate unknown keys in ascending exponent order. The generic lattice
/// takes (m, l) with m >= 0, |l| <= m + 3 and odd parity; the collapsed
/// integer lattice walks odd m upward from the leading exponent.
fn candidate_keys<T: Scalar>(
    p: Complex<T>,
    int_p: Option<i64>,
    budget: T,
) -> Result<Vec<(i64, i64)>> {
    let p_re: f64 = p.re.to_f64().unwrap();
    let budget_f: f64 = budget.to_f64().unwrap();
    let mut cand: Vec<((i64, i64), f64)> = Vec::new();
    if let Some(k) = int_p {
        let mut m = k + 2;
        while (m as f64) <= p_re + budget_f + 1e-9 {
            cand.push(((m, 0), m as f64));
            m += 2;
        }
    } else {
        let denom = (1.0 - p_re.abs()).max(0.05);
        let m_max = ((budget_f + 4.0) / denom).ceil() as i64 + 2;
        for m in 0..=m_max {
            for l in -(m + 3)..=(m + 3) {
                if (m + l).rem_euclid(2) != 1 {
                    continue;
                }
                let th = m as f64 + l as f64 * p_re;
                if th <= p_re + 1e-12 || th > p_re + budget_f {
                    continue;
                }
                cand.push(((m, l), th));
            }
        }
        cand.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        for w in cand.windows(2) {
            if (w[1].1 - w[0].1).abs() < 1e-12 {
                return Err(Error::Resonance(format!(
                    "candidate keys {:?} and {:?} collide at exponent {}",
                    w[0].0, w[1].0, w[0].1
                )));
            }
        }
    }
    cand.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    Ok(cand.into_iter().map(|(k, _)| k).collect())
}

/// Small-x expansion of u_n by undetermined coefficients: leading term
/// q (x/2)^p at key (0, 1), then one linear solve per lattice exponent in
/// ascending order. Unknowns that the equation never forces stay zero.
pub fn expand_u<T: Scalar>(params: &SolutionParams<T>, budget: T) -> Result<LatticeSeries<T>> {
    let regime = u_regime(params)?;
    let p = regime.exponent;
    if let Some(k) = near_integer(p, COLLISION_TOL) {
        if k.rem_euclid(2) == 0 {
            return Err(Error::Resonance(format!(
                "leading exponent p = {k} is an even integer; the power lattice degenerates"
            )));
        }
    }
    let a_lead = regime.coefficient * cre::<T>(2.0).powc(-p);
    let a_coef = params.alpha + cre::<T>(2.0 * params.n as f64);
    let b_coef = -params.alpha + cre::<T>(2.0 + 2.0 * params.n as f64);

    let mut u = LatticeSeries::from_term(p, (0, 1), a_lead);
    let int_p = u.int_p;
    let cand = candidate_keys(p, int_p, budget)?;
    let work_re = p.re + budget + p.re.max(T::zero()) + T::one();
    let match_shift: (i64, i64) = match int_p {
        Some(k) => (k - 1, 0),
        None => (-1, 1),
    };

    for key in &cand {
        let residual = cleared_equation(&u, a_coef, b_coef, work_re)?;
        let probe = LatticeSeries::from_term(p, *key, cre(1.0));
        let image = cleared_linearization(&u, &probe, a_coef, b_coef, work_re)?;
        let target = u.canon((key.0 + match_shift.0, key.1 + match_shift.1));
        let fac = image.coefficient(target);
        let rc = residual.coefficient(target);
        if fac.norm() < T::of(1e-12) * (T::one() + rc.norm()) {
            let scale = T::one() + u.max_coefficient();
            if rc.norm() <= T::of(1e-10) * scale {
                continue; // structurally unforced coefficient stays zero
            }
            return Err(Error::Resonance(format!(
                "vanishing solvability factor at key {key:?} with residual {}",
                rc.norm()
            )));
        }
        u.push(*key, -rc / fac);
    }

    // final residual audit against the local coefficient scale
    let residual = cleared_equation(&u, a_coef, b_coef, work_re)?;
    let certified = match cand.last() {
        Some(k) => u.exponent_of(u.canon((k.0 + match_shift.0, k.1 + match_shift.1))).re,
        None => p.re,
    };
    let scale = {
        let m = T::one() + u.max_coefficient();
        m * m * (T::one() + a_coef.norm() + b_coef.norm())
    };
    for (key, c) in residual.sorted_terms() {
        if residual.exponent_of(key).re <= certified + T::of(1e-9)
            && c.norm() > T::of(1e-10) * scale
        {
            return Err(Error::Convergence(format!(
                "expansion residual {} at key {key:?} exceeds the scaled bound",
                c.norm()
            )));
        }
    }
    Ok(u)
}

/// Residual profile used by the decay property: the largest residual
/// coefficient of G[u] with exponent real part within `window` above p.
pub fn residual_within<T: Scalar>(
    params: &SolutionParams<T>,
    series: &LatticeSeries<T>,
    window: T,
) -> Result<T> {
    let a_coef = params.alpha + cre::<T>(2.0 * params.n as f64);
    let b_coef = -params.alpha + cre::<T>(2.0 + 2.0 * params.n as f64);
    let p_re = series.p.re;
    let residual = cleared_equation(series, a_coef, b_coef, p_re + window + T::one())?;
    let mut worst = T::zero();
    for (key, c) in residual.sorted_terms() {
        if residual.exponent_of(key).re <= p_re + window {
            worst = worst.max(c.norm());
        }
    }
    Ok(worst)
}
