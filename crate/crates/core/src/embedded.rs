//! Axisymmetric star-shaped surfaces `ρ = P(φ)` inside spherically
//! symmetric data, used for non-round comparison cases.
//!
//! The mean curvature is the divergence of the unit normal of the level set
//! `ρ - P(φ)`, evaluated through its coordinate fluxes
//!
//! ```text
//!   Φ_ρ = r² sin φ / (a N),   Φ_φ = -a sin φ P' / N,   N = √(1/a² + P'²/r²),
//!   H   = (∂_ρ Φ_ρ + ∂_φ Φ_φ) / (a r² sin φ).
//! ```

use serde::{Deserialize, Serialize};

use crate::dirac::RevolutionSurface;
use crate::error::{Error, Result};
use crate::initial_data::SphericalDataSet;
use crate::numeric::quad::gauss_legendre;

/// Shape of the surface in the coordinate chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StarShape {
    /// The coordinate sphere `ρ = radius`.
    Round { radius: f64 },
    /// `ρ(φ)` tracing `(x² + y²)/a² + z²/c² = 1` in the chart.
    Ellipsoidal { a: f64, c: f64 },
}

impl StarShape {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            StarShape::Round { radius } => radius > 0.0 && radius.is_finite(),
            StarShape::Ellipsoidal { a, c } => a > 0.0 && c > 0.0 && a.is_finite() && c.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("surface dimensions must be positive: {self:?}")))
        }
    }

    /// `(P(φ), P'(φ))`.
    pub fn radius_at(&self, phi: f64) -> (f64, f64) {
        match *self {
            StarShape::Round { radius } => (radius, 0.0),
            StarShape::Ellipsoidal { a, c } => {
                let (s, co) = phi.sin_cos();
                let q = s * s / (a * a) + co * co / (c * c);
                let p = q.powf(-0.5);
                (p, -p.powi(3) * s * co * (1.0 / (a * a) - 1.0 / (c * c)))
            }
        }
    }

    /// Coordinate radius range covered by the surface.
    pub fn extent(&self) -> (f64, f64) {
        match *self {
            StarShape::Round { radius } => (radius, radius),
            StarShape::Ellipsoidal { a, c } => (a.min(c), a.max(c)),
        }
    }

    pub fn is_round(&self) -> bool {
        match *self {
            StarShape::Round { .. } => true,
            StarShape::Ellipsoidal { a, c } => a == c,
        }
    }
}

/// Extrinsic fields sampled at interior meridian angles.
#[derive(Debug, Clone)]
pub struct EmbeddedFields {
    pub phi: Vec<f64>,
    pub mean_curvature: Vec<f64>,
    pub tr_k_sigma: Vec<f64>,
}

impl EmbeddedFields {
    pub fn theta_plus(&self) -> Vec<f64> {
        self.mean_curvature.iter().zip(&self.tr_k_sigma).map(|(h, t)| h + t).collect()
    }

    pub fn theta_minus(&self) -> Vec<f64> {
        self.mean_curvature.iter().zip(&self.tr_k_sigma).map(|(h, t)| h - t).collect()
    }
}

fn check_inside(d: &SphericalDataSet, shape: &StarShape) -> Result<()> {
    shape.validate()?;
    let (lo, hi) = shape.extent();
    if lo <= d.rho_min() || hi > d.rho_max() {
        return Err(Error::invalid(format!(
            "surface spans rho in [{lo}, {hi}], outside the data grid ({}, {}]",
            d.rho_min(),
            d.rho_max()
        )));
    }
    Ok(())
}

/// `H` and `Tr_Σ K` at `samples` interior meridian angles.
pub fn extrinsic_fields(d: &SphericalDataSet, shape: &StarShape, samples: usize) -> Result<EmbeddedFields> {
    check_inside(d, shape)?;
    let normal_norm = |rho: f64, dp: f64| {
        let p = d.at(rho);
        (1.0 / (p.a * p.a) + dp * dp / (p.r * p.r)).sqrt()
    };
    let flux_rho = |rho: f64, phi: f64| {
        let p = d.at(rho);
        let (_, dp) = shape.radius_at(phi);
        p.r * p.r * phi.sin() / (p.a * normal_norm(rho, dp))
    };
    let flux_phi = |rho: f64, phi: f64| {
        let p = d.at(rho);
        let (_, dp) = shape.radius_at(phi);
        -p.a * phi.sin() * dp / normal_norm(rho, dp)
    };
    let (_, hi) = shape.extent();
    let step_rho = 1e-5 * hi;
    let step_phi = 1e-5;
    let mut out = EmbeddedFields {
        phi: Vec::with_capacity(samples),
        mean_curvature: Vec::with_capacity(samples),
        tr_k_sigma: Vec::with_capacity(samples),
    };
    for i in 1..=samples {
        let phi = std::f64::consts::PI * i as f64 / (samples + 1) as f64;
        let (rho, dp) = shape.radius_at(phi);
        let p = d.at(rho);
        let d_rho = (flux_rho(rho + step_rho, phi) - flux_rho(rho - step_rho, phi)) / (2.0 * step_rho);
        let d_phi = (flux_phi(rho, phi + step_phi) - flux_phi(rho, phi - step_phi)) / (2.0 * step_phi);
        let h = (d_rho + d_phi) / (p.a * p.r * p.r * phi.sin());
        let n_rho = 1.0 / (p.a * normal_norm(rho, dp));
        let n2 = n_rho * n_rho;
        out.phi.push(phi);
        out.mean_curvature.push(h);
        out.tr_k_sigma.push(p.kappa_rho * (1.0 - n2) + p.kappa_t * (1.0 + n2));
    }
    Ok(out)
}

/// Induced metric of the surface as a sphere of revolution.
pub fn induced_surface(d: &SphericalDataSet, shape: &StarShape, samples: usize) -> Result<RevolutionSurface> {
    check_inside(d, shape)?;
    if samples < 16 {
        return Err(Error::invalid("induced surface needs at least 16 samples"));
    }
    let speed = |phi: f64| {
        let (rho, dp) = shape.radius_at(phi);
        let p = d.at(rho);
        (p.a * p.a * dp * dp + p.r * p.r).sqrt()
    };
    let dphi = std::f64::consts::PI / (samples - 1) as f64;
    let mut t = Vec::with_capacity(samples);
    let mut f = Vec::with_capacity(samples);
    let mut df = Vec::with_capacity(samples);
    let mut arclength = 0.0;
    for i in 0..samples {
        let phi = i as f64 * dphi;
        if i > 0 {
            arclength += gauss_legendre(speed, phi - dphi, phi, 1);
        }
        let (rho, dp) = shape.radius_at(phi);
        let p = d.at(rho);
        t.push(arclength);
        f.push(p.r * phi.sin());
        df.push((p.dr * dp * phi.sin() + p.r * phi.cos()) / speed(phi));
    }
    f[0] = 0.0;
    f[samples - 1] = 0.0;
    RevolutionSurface::from_samples(t, f, df)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::spheroid_profile;
    use crate::initial_data::{make_family, FamilyTag, Grid};

    fn flat() -> SphericalDataSet {
        make_family(FamilyTag::Euclidean, Grid::new(0.01, 3.0, 64).unwrap()).unwrap()
    }

    #[test]
    fn round_sphere_fields() {
        let d = flat();
        let e = extrinsic_fields(&d, &StarShape::Round { radius: 2.0 }, 50).unwrap();
        assert!(e.mean_curvature.iter().all(|h| (h - 1.0).abs() < 1e-8));
        let h = make_family(FamilyTag::HyperbolicUnit, Grid::new(0.01, 3.0, 64).unwrap()).unwrap();
        let e = extrinsic_fields(&h, &StarShape::Round { radius: 1.0 }, 50).unwrap();
        assert!(e.mean_curvature.iter().all(|x| (x - 2.0 * 2f64.sqrt()).abs() < 1e-8));
        assert!(e.tr_k_sigma.iter().all(|t| (t - 2.0).abs() < 1e-14));
    }

    #[test]
    fn flat_spheroid_mean_curvature_matches_principal_curvatures() {
        let (a, c) = (1.0, 1.5);
        let d = flat();
        let shape = StarShape::Ellipsoidal { a, c };
        let e = extrinsic_fields(&d, &shape, 40).unwrap();
        for (i, &phi) in e.phi.iter().enumerate() {
            // the spheroid point at polar angle phi, via its eccentric angle
            let (rho, _) = shape.radius_at(phi);
            let (x, z) = (rho * phi.sin(), rho * phi.cos());
            let psi = (x / a).atan2(z / c);
            let q = a * a * psi.cos().powi(2) + c * c * psi.sin().powi(2);
            let k_par = c / (a * q.sqrt());
            let k_mer = a * c / q.powf(1.5);
            assert!((e.mean_curvature[i] - (k_par + k_mer)).abs() < 1e-7);
        }
    }

    #[test]
    fn induced_metric_of_flat_spheroid_matches_profile() {
        let d = flat();
        let s = induced_surface(&d, &StarShape::Ellipsoidal { a: 1.0, c: 2.0 }, 2049).unwrap();
        let reference = spheroid_profile(1.0, 2.0, 2049).unwrap();
        assert!((s.length() - reference.length()).abs() < 1e-9);
        assert!((s.area() - reference.area()).abs() < 1e-8 * reference.area());
    }

    #[test]
    fn surface_must_fit_in_grid() {
        let d = flat();
        assert!(extrinsic_fields(&d, &StarShape::Round { radius: 5.0 }, 10).is_err());
        assert!(induced_surface(&d, &StarShape::Ellipsoidal { a: -1.0, c: 1.0 }, 64).is_err());
    }
}
