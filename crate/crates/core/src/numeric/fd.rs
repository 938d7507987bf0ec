//! Fourth-order finite differences on uniform grids.

use crate::error::{Error, Result};

fn check(len: usize) -> Result<()> {
    if len < 6 {
        return Err(Error::invalid(format!(
            "fourth-order differences need at least 6 samples, got {len}"
        )));
    }
    Ok(())
}

/// First derivative of uniformly spaced samples, fourth order everywhere
/// (five-point central interior, five-point one-sided near the ends).
pub fn d1(y: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = y.len();
    check(n)?;
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = (-y[i + 2] + 8.0 * y[i + 1] - 8.0 * y[i - 1] + y[i - 2]) / (12.0 * h);
    }
    out[0] = (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]) / (12.0 * h);
    out[1] = (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]) / (12.0 * h);
    let m = n - 1;
    out[m] = (25.0 * y[m] - 48.0 * y[m - 1] + 36.0 * y[m - 2] - 16.0 * y[m - 3] + 3.0 * y[m - 4])
        / (12.0 * h);
    out[m - 1] =
        (3.0 * y[m] + 10.0 * y[m - 1] - 18.0 * y[m - 2] + 6.0 * y[m - 3] - y[m - 4]) / (12.0 * h);
    Ok(out)
}

/// Second derivative of uniformly spaced samples, fourth order everywhere.
pub fn d2(y: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = y.len();
    check(n)?;
    let h2 = 12.0 * h * h;
    let mut out = vec![0.0; n];
    for i in 2..n - 2 {
        out[i] = (-y[i + 2] + 16.0 * y[i + 1] - 30.0 * y[i] + 16.0 * y[i - 1] - y[i - 2]) / h2;
    }
    let one_sided = |a: [f64; 6]| -> (f64, f64) {
        (
            (45.0 * a[0] - 154.0 * a[1] + 214.0 * a[2] - 156.0 * a[3] + 61.0 * a[4] - 10.0 * a[5]) / h2,
            (10.0 * a[0] - 15.0 * a[1] - 4.0 * a[2] + 14.0 * a[3] - 6.0 * a[4] + a[5]) / h2,
        )
    };
    let (e0, e1) = one_sided([y[0], y[1], y[2], y[3], y[4], y[5]]);
    out[0] = e0;
    out[1] = e1;
    let m = n - 1;
    let (f0, f1) = one_sided([y[m], y[m - 1], y[m - 2], y[m - 3], y[m - 4], y[m - 5]]);
    out[m] = f0;
    out[m - 1] = f1;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_quartics() {
        let h = 0.1;
        let x: Vec<f64> = (0..12).map(|i| 0.3 + i as f64 * h).collect();
        let p = |t: f64| 2.0 - t + 3.0 * t * t - 0.5 * t.powi(3) + 0.25 * t.powi(4);
        let dp = |t: f64| -1.0 + 6.0 * t - 1.5 * t * t + t.powi(3);
        let ddp = |t: f64| 6.0 - 3.0 * t + 3.0 * t * t;
        let y: Vec<f64> = x.iter().map(|&t| p(t)).collect();
        let a = d1(&y, h).unwrap();
        let b = d2(&y, h).unwrap();
        for (i, &t) in x.iter().enumerate() {
            assert!((a[i] - dp(t)).abs() < 1e-11, "d1 at {i}");
            assert!((b[i] - ddp(t)).abs() < 1e-9, "d2 at {i}");
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize| {
            let h = 1.0 / (n - 1) as f64;
            let y: Vec<f64> = (0..n).map(|i| (i as f64 * h).exp()).collect();
            let a = d1(&y, h).unwrap();
            (0..n)
                .map(|i| (a[i] - (i as f64 * h).exp()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(41) / err(81);
        assert!(ratio > 12.0, "ratio {ratio}");
    }

    #[test]
    fn short_input_rejected() {
        assert!(d1(&[1.0, 2.0, 3.0], 0.1).is_err());
    }
}
