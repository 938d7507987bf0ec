//! Piecewise cubic interpolation on strictly increasing abscissae.

use crate::error::{Error, Result};
use crate::numeric::tridiag::solve_tridiagonal;

/// Value, first and second derivative at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

fn check_abscissae(x: &[f64]) -> Result<()> {
    if x.len() < 2 {
        return Err(Error::invalid("interpolation needs at least two nodes"));
    }
    if x.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("interpolation nodes must be strictly increasing"));
    }
    Ok(())
}

fn locate(x: &[f64], t: f64) -> usize {
    match x.binary_search_by(|p| p.total_cmp(&t)) {
        Ok(i) => i.min(x.len() - 2),
        Err(0) => 0,
        Err(i) => (i - 1).min(x.len() - 2),
    }
}

/// Cubic Hermite interpolant through (x, y, dy).
#[derive(Debug, Clone)]
pub struct CubicHermite {
    x: Vec<f64>,
    y: Vec<f64>,
    dy: Vec<f64>,
}

impl CubicHermite {
    pub fn new(x: Vec<f64>, y: Vec<f64>, dy: Vec<f64>) -> Result<Self> {
        check_abscissae(&x)?;
        if y.len() != x.len() || dy.len() != x.len() {
            return Err(Error::invalid("hermite: value/derivative length mismatch"));
        }
        Ok(Self { x, y, dy })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn slopes(&self) -> &[f64] {
        &self.dy
    }

    pub fn eval(&self, t: f64) -> Jet {
        let i = locate(&self.x, t);
        let h = self.x[i + 1] - self.x[i];
        let s = (t - self.x[i]) / h;
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (m0, m1) = (self.dy[i] * h, self.dy[i + 1] * h);
        let s2 = s * s;
        let s3 = s2 * s;
        let value = (2.0 * s3 - 3.0 * s2 + 1.0) * y0
            + (s3 - 2.0 * s2 + s) * m0
            + (-2.0 * s3 + 3.0 * s2) * y1
            + (s3 - s2) * m1;
        let d1 = ((6.0 * s2 - 6.0 * s) * y0
            + (3.0 * s2 - 4.0 * s + 1.0) * m0
            + (-6.0 * s2 + 6.0 * s) * y1
            + (3.0 * s2 - 2.0 * s) * m1)
            / h;
        let d2 = ((12.0 * s - 6.0) * y0
            + (6.0 * s - 4.0) * m0
            + (-12.0 * s + 6.0) * y1
            + (6.0 * s - 2.0) * m1)
            / (h * h);
        Jet { value, d1, d2 }
    }

    /// Exact integral of the interpolant over its whole support.
    pub fn integral(&self) -> f64 {
        self.x
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let h = w[1] - w[0];
                0.5 * h * (self.y[i] + self.y[i + 1]) + h * h * (self.dy[i] - self.dy[i + 1]) / 12.0
            })
            .sum()
    }
}

/// Clamped cubic spline. End slopes are either supplied or estimated with a
/// four-point one-sided difference.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        let (s0, s1) = estimate_end_slopes(&x, &y)?;
        Self::clamped(x, y, s0, s1)
    }

    pub fn clamped(x: Vec<f64>, y: Vec<f64>, slope_start: f64, slope_end: f64) -> Result<Self> {
        check_abscissae(&x)?;
        if y.len() != x.len() {
            return Err(Error::invalid("spline: value length mismatch"));
        }
        let n = x.len();
        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let mut lower = vec![0.0; n - 1];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n - 1];
        let mut rhs = vec![0.0; n];
        diag[0] = 2.0 * h[0];
        upper[0] = h[0];
        rhs[0] = 6.0 * ((y[1] - y[0]) / h[0] - slope_start);
        for i in 1..n - 1 {
            lower[i - 1] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            upper[i] = h[i];
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1]);
        }
        lower[n - 2] = h[n - 2];
        diag[n - 1] = 2.0 * h[n - 2];
        rhs[n - 1] = 6.0 * (slope_end - (y[n - 1] - y[n - 2]) / h[n - 2]);
        let m = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
        Ok(Self { x, y, m })
    }

    pub fn eval(&self, t: f64) -> Jet {
        let i = locate(&self.x, t);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let value = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let d1 = (y1 - y0) / h - (3.0 * a * a - 1.0) * h * m0 / 6.0 + (3.0 * b * b - 1.0) * h * m1 / 6.0;
        let d2 = a * m0 + b * m1;
        Jet { value, d1, d2 }
    }
}

/// Third-order one-sided slope estimates at both ends (Lagrange derivative
/// through the four nearest nodes).
pub fn estimate_end_slopes(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_abscissae(x)?;
    let n = x.len();
    if n < 4 {
        let s = (y[n - 1] - y[0]) / (x[n - 1] - x[0]);
        return Ok((s, s));
    }
    let start = lagrange_derivative(&x[..4], &y[..4], x[0]);
    let end = lagrange_derivative(&x[n - 4..], &y[n - 4..], x[n - 1]);
    Ok((start, end))
}

fn lagrange_derivative(x: &[f64], y: &[f64], at: f64) -> f64 {
    let k = x.len();
    let mut total = 0.0;
    for j in 0..k {
        let mut denom = 1.0;
        for m in 0..k {
            if m != j {
                denom *= x[j] - x[m];
            }
        }
        let mut num = 0.0;
        for i in 0..k {
            if i == j {
                continue;
            }
            let mut prod = 1.0;
            for m in 0..k {
                if m != j && m != i {
                    prod *= at - x[m];
                }
            }
            num += prod;
        }
        total += y[j] * num / denom;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hermite_reproduces_cubics_exactly() {
        let p = |t: f64| 1.0 - 2.0 * t + 0.5 * t * t + 0.25 * t * t * t;
        let dp = |t: f64| -2.0 + t + 0.75 * t * t;
        let x: Vec<f64> = vec![0.0, 0.3, 1.1, 2.0];
        let h = CubicHermite::new(
            x.clone(),
            x.iter().map(|&t| p(t)).collect(),
            x.iter().map(|&t| dp(t)).collect(),
        )
        .unwrap();
        for t in [0.05, 0.7, 1.5, 1.99] {
            let j = h.eval(t);
            assert_relative_eq!(j.value, p(t), epsilon = 1e-13);
            assert_relative_eq!(j.d1, dp(t), epsilon = 1e-12);
            assert_relative_eq!(j.d2, 1.0 + 1.5 * t, epsilon = 1e-11);
        }
        // integral of p over [0, 2]
        let exact = 2.0 - 4.0 + 0.5 * 8.0 / 3.0 + 0.25 * 16.0 / 4.0;
        assert_relative_eq!(h.integral(), exact, epsilon = 1e-13);
    }

    #[test]
    fn spline_tracks_smooth_function() {
        let x: Vec<f64> = (0..201).map(|i| 0.5 + i as f64 * 0.01).collect();
        let y: Vec<f64> = x.iter().map(|t| t.ln()).collect();
        let s = CubicSpline::new(x, y).unwrap();
        for t in [0.52, 1.0, 1.733, 2.49] {
            let j = s.eval(t);
            assert!((j.value - t.ln()).abs() < 1e-8);
            assert!((j.d1 - 1.0 / t).abs() < 1e-5);
            assert!((j.d2 + 1.0 / (t * t)).abs() < 1e-2);
        }
    }

    #[test]
    fn rejects_non_increasing_nodes() {
        assert!(CubicSpline::new(vec![0.0, 1.0, 1.0], vec![0.0; 3]).is_err());
    }
}
