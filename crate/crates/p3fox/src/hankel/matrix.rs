//! Dense complex matrices sized for desk-scale determinants (n <= 16).

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use num_complex::Complex;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(T::zero(), T::zero()); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, j: usize, k: usize) -> Complex<T> {
        self.data[j * self.cols + k]
    }

    pub fn set(&mut self, j: usize, k: usize, v: Complex<T>) {
        self.data[j * self.cols + k] = v;
    }

    /// Copy with the listed rows and columns removed (for minor identities).
    pub fn minor(&self, drop_rows: &[usize], drop_cols: &[usize]) -> Self {
        let keep_r: Vec<usize> = (0..self.rows).filter(|j| !drop_rows.contains(j)).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|k| !drop_cols.contains(k)).collect();
        let mut out = Self::zeros(keep_r.len(), keep_c.len());
        for (jj, &j) in keep_r.iter().enumerate() {
            for (kk, &k) in keep_c.iter().enumerate() {
                out.set(jj, kk, self.get(j, k));
            }
        }
        out
    }

    /// Determinant by LU elimination with partial pivoting on complex modulus.
    /// The 0x0 determinant is 1. No log-scaling: entries beyond f64 range
    /// raise Overflow instead of being silently rescaled.
    pub fn determinant(&self) -> Result<Complex<T>> {
        if self.rows != self.cols {
            return Err(Error::Shape(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Complex::new(T::one(), T::zero()));
        }
        let mut a = self.data.clone();
        let mut det = Complex::new(T::one(), T::zero());
        for col in 0..n {
            // pivot on largest modulus in the column
            let mut piv = col;
            let mut best = a[col * n + col].norm_sqr();
            for r in col + 1..n {
                let m = a[r * n + col].norm_sqr();
                if m > best {
                    best = m;
                    piv = r;
                }
            }
            if best == T::zero() {
                return Ok(Complex::new(T::zero(), T::zero()));
            }
            if piv != col {
                for k in 0..n {
                    a.swap(col * n + k, piv * n + k);
                }
                det = -det;
            }
            let pivot = a[col * n + col];
            det = det * pivot;
            if !det.re.is_finite() || !det.im.is_finite() {
                return Err(Error::Overflow("determinant left the f64 range".into()));
            }
            for r in col + 1..n {
                let f = a[r * n + col] / pivot;
                if !f.re.is_finite() || !f.im.is_finite() {
                    return Err(Error::Overflow("elimination multiplier overflowed".into()));
                }
                for k in col..n {
                    let sub = f * a[col * n + k];
                    a[r * n + k] = a[r * n + k] - sub;
                }
            }
        }
        Ok(det)
    }
}
