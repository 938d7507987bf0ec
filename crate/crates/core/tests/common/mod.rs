#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use untrapped::initial_data::{check_dec, FamilyTag, Grid, RadialPoint, RadialProfile, SphericalDataSet};

/// Regular-center data with `r = ρ`, `a = (1 - 2M/ρ)^{-1/2}` for the mass
/// function `M = m1 ρ³/3 + m2 ρ⁵/5`, `κ_T = b0 + b1 ρ²`, `κ_ρ = b0 + b2 ρ²`.
#[derive(Debug, Clone, Copy)]
pub struct Smooth {
    pub m1: f64,
    pub m2: f64,
    pub b0: f64,
    pub b1: f64,
    pub b2: f64,
}

impl Smooth {
    fn mass(&self, rho: f64) -> (f64, f64) {
        let r2 = rho * rho;
        (
            self.m1 * rho * r2 / 3.0 + self.m2 * rho * r2 * r2 / 5.0,
            self.m1 * r2 + self.m2 * r2 * r2,
        )
    }
}

impl RadialProfile for Smooth {
    fn at(&self, rho: f64) -> RadialPoint {
        let (m, dm) = self.mass(rho);
        let q = 1.0 - 2.0 * m / rho;
        let dq = -2.0 * (dm * rho - m) / (rho * rho);
        RadialPoint {
            a: q.powf(-0.5),
            da: -0.5 * q.powf(-1.5) * dq,
            r: rho,
            dr: 1.0,
            ddr: 0.0,
            kappa_rho: self.b0 + self.b2 * rho * rho,
            kappa_t: self.b0 + self.b1 * rho * rho,
            dkappa_t: 2.0 * self.b1 * rho,
        }
    }

    fn regular_center(&self) -> bool {
        true
    }
}

pub const RHO_MIN: f64 = 0.01;
pub const RHO_MAX: f64 = 1.0;

pub fn build(p: Smooth, n: usize) -> Option<SphericalDataSet> {
    let grid = Grid::new(RHO_MIN, RHO_MAX, n).ok()?.points();
    SphericalDataSet::from_profile(FamilyTag::Custom, Arc::new(p), grid).ok()
}

/// Parameters in a box that keeps `2M/ρ < 1` on `(0, 1]`.
pub fn draw(rng: &mut impl Rng) -> Smooth {
    Smooth {
        m1: rng.gen_range(0.0..0.9),
        m2: rng.gen_range(-0.3..0.3),
        b0: rng.gen_range(-0.8..0.8),
        b1: rng.gen_range(-0.5..0.5),
        b2: rng.gen_range(-0.5..0.5),
    }
}

/// A DEC-satisfying data set, retrying until the sample passes.
pub fn draw_dec(rng: &mut impl Rng, n: usize) -> (Smooth, SphericalDataSet) {
    loop {
        let p = draw(rng);
        if let Some(d) = build(p, n) {
            if check_dec(&d).map(|r| r.holds).unwrap_or(false) {
                return (p, d);
            }
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Scalar curvature of `A dρ² + B dΩ²` from five-point differences of the
/// metric coefficients alone.
pub fn scalar_curvature_oracle(d: &SphericalDataSet, rho: f64) -> f64 {
    let h = 1e-3 * rho;
    let coeffs = |k: f64| {
        let p = d.at(rho + k * h);
        (p.a * p.a, p.r * p.r)
    };
    let [m2, m1, c0, p1, p2] = [-2.0, -1.0, 0.0, 1.0, 2.0].map(coeffs);
    let d1 = |f: fn((f64, f64)) -> f64| (f(m2) - 8.0 * f(m1) + 8.0 * f(p1) - f(p2)) / (12.0 * h);
    let d2 = |f: fn((f64, f64)) -> f64| {
        (-f(m2) + 16.0 * f(m1) - 30.0 * f(c0) + 16.0 * f(p1) - f(p2)) / (12.0 * h * h)
    };
    let (a0, b0) = c0;
    let da = d1(|c| c.0);
    let db = d1(|c| c.1);
    let ddb = d2(|c| c.1);
    let l = db / b0;
    -(2.0 * ddb / b0 - 0.5 * l * l - da * db / (a0 * b0)) / a0 + 2.0 / b0
}
