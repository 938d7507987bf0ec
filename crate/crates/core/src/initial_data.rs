//! Spherically symmetric initial data `(g, K)`.
//!
//! The metric is `g = a(ρ)² dρ² + r(ρ)² dΩ²` and `K` is stored by its
//! eigenvalues in the orthonormal frame: `κ_ρ` in the radial direction and
//! `κ_T` on both tangential directions. Families are represented by an
//! analytic radial profile, so derivatives are exact wherever the family
//! has a closed form; tabulated data goes through clamped cubic splines.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::interp::CubicSpline;

/// DEC is reported as holding when `min(μ - |J|) >= -DEC_TOL`.
pub const DEC_TOL: f64 = 1e-8;

/// Profile data at one radius. Primes are `d/dρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    pub a: f64,
    pub da: f64,
    pub r: f64,
    pub dr: f64,
    pub ddr: f64,
    pub kappa_rho: f64,
    pub kappa_t: f64,
    pub dkappa_t: f64,
}

impl RadialPoint {
    /// `dr/ds` with `s` the radial arclength.
    pub fn r_s(&self) -> f64 {
        self.dr / self.a
    }

    /// `d²r/ds²`.
    pub fn r_ss(&self) -> f64 {
        self.ddr / (self.a * self.a) - self.dr * self.da / self.a.powi(3)
    }

    pub fn trace_k(&self) -> f64 {
        self.kappa_rho + 2.0 * self.kappa_t
    }

    pub fn norm_k_sq(&self) -> f64 {
        self.kappa_rho * self.kappa_rho + 2.0 * self.kappa_t * self.kappa_t
    }

    /// Scalar curvature of the warped metric.
    pub fn scalar_curvature(&self) -> f64 {
        warped_scalar_curvature(self.r, self.r_s(), self.r_ss())
    }

    /// Energy density `½(R - |K|² + (tr K)²)`.
    pub fn mu(&self) -> f64 {
        0.5 * (self.scalar_curvature() - self.norm_k_sq() + self.trace_k().powi(2))
    }

    /// Radial momentum density, `-div(K - tr K g)` in the orthonormal frame.
    pub fn j_rad(&self) -> f64 {
        2.0 * self.dkappa_t / self.a + 2.0 * self.r_s() / self.r * (self.kappa_t - self.kappa_rho)
    }
}

/// `R = 2(1 - r_s²)/r² - 4 r_ss / r` for `ds² + r(s)² dΩ²`.
pub fn warped_scalar_curvature(r: f64, r_s: f64, r_ss: f64) -> f64 {
    2.0 * (1.0 - r_s * r_s) / (r * r) - 4.0 * r_ss / r
}

/// A radial profile that can be evaluated anywhere on its domain.
pub trait RadialProfile: Send + Sync + fmt::Debug {
    fn at(&self, rho: f64) -> RadialPoint;

    /// Whether the profile extends smoothly to a regular center at `ρ = 0`
    /// with `r ~ ρ`. Used to pick the inner condition of the Jang solve.
    fn regular_center(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy)]
struct Euclidean;

impl RadialProfile for Euclidean {
    fn at(&self, rho: f64) -> RadialPoint {
        RadialPoint {
            a: 1.0,
            da: 0.0,
            r: rho,
            dr: 1.0,
            ddr: 0.0,
            kappa_rho: 0.0,
            kappa_t: 0.0,
            dkappa_t: 0.0,
        }
    }

    fn regular_center(&self) -> bool {
        true
    }
}

/// Hyperbolic space of curvature radius `R0` with the umbilic `K = g / R0`.
#[derive(Debug, Clone, Copy)]
struct Hyperbolic {
    radius: f64,
}

impl RadialProfile for Hyperbolic {
    fn at(&self, rho: f64) -> RadialPoint {
        let q = 1.0 + (rho / self.radius).powi(2);
        let a = 1.0 / q.sqrt();
        let beta = 1.0 / self.radius;
        RadialPoint {
            a,
            da: -rho / (self.radius * self.radius) * a / q,
            r: rho,
            dr: 1.0,
            ddr: 0.0,
            kappa_rho: beta,
            kappa_t: beta,
            dkappa_t: 0.0,
        }
    }

    fn regular_center(&self) -> bool {
        true
    }
}

/// Time-symmetric Schwarzschild slice in isotropic coordinates.
#[derive(Debug, Clone, Copy)]
struct Schwarzschild {
    m: f64,
}

impl RadialProfile for Schwarzschild {
    fn at(&self, rho: f64) -> RadialPoint {
        let m = self.m;
        let psi = 1.0 + m / (2.0 * rho);
        let dpsi = -m / (2.0 * rho * rho);
        let ddpsi = m / (rho * rho * rho);
        RadialPoint {
            a: psi * psi,
            da: 2.0 * psi * dpsi,
            r: rho * psi * psi,
            dr: psi * psi + 2.0 * rho * psi * dpsi,
            ddr: 4.0 * psi * dpsi + 2.0 * rho * (dpsi * dpsi + psi * ddpsi),
            kappa_rho: 0.0,
            kappa_t: 0.0,
            dkappa_t: 0.0,
        }
    }
}

/// A ball in the round 3-sphere of radius `a0`, time symmetric.
#[derive(Debug, Clone, Copy)]
struct RoundS3 {
    radius: f64,
}

impl RadialProfile for RoundS3 {
    fn at(&self, rho: f64) -> RadialPoint {
        let q = 1.0 - (rho / self.radius).powi(2);
        let a = 1.0 / q.sqrt();
        RadialPoint {
            a,
            da: rho / (self.radius * self.radius) * a / q,
            r: rho,
            dr: 1.0,
            ddr: 0.0,
            kappa_rho: 0.0,
            kappa_t: 0.0,
            dkappa_t: 0.0,
        }
    }

    fn regular_center(&self) -> bool {
        true
    }
}

/// Tabulated data interpolated by clamped cubic splines.
#[derive(Debug, Clone)]
struct Sampled {
    a: CubicSpline,
    r: CubicSpline,
    kappa_rho: CubicSpline,
    kappa_t: CubicSpline,
}

impl RadialProfile for Sampled {
    fn at(&self, rho: f64) -> RadialPoint {
        let a = self.a.eval(rho);
        let r = self.r.eval(rho);
        let kt = self.kappa_t.eval(rho);
        RadialPoint {
            a: a.value,
            da: a.d1,
            r: r.value,
            dr: r.d1,
            ddr: r.d2,
            kappa_rho: self.kappa_rho.eval(rho).value,
            kappa_t: kt.value,
            dkappa_t: kt.d1,
        }
    }
}

/// Pullback under `ρ ↦ ρ/c` of the data scaled by `g ↦ c² g`, `K ↦ c K`
/// in the sense of a homothety: lengths grow by `c`, curvatures of `K`
/// shrink by `1/c`.
#[derive(Debug, Clone)]
struct Scaled {
    inner: Arc<dyn RadialProfile>,
    c: f64,
}

impl RadialProfile for Scaled {
    fn at(&self, rho: f64) -> RadialPoint {
        let c = self.c;
        let p = self.inner.at(rho / c);
        RadialPoint {
            a: p.a,
            da: p.da / c,
            r: c * p.r,
            dr: p.dr,
            ddr: p.ddr / c,
            kappa_rho: p.kappa_rho / c,
            kappa_t: p.kappa_t / c,
            dkappa_t: p.dkappa_t / (c * c),
        }
    }

    fn regular_center(&self) -> bool {
        self.inner.regular_center()
    }
}

/// Which family a data set came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum FamilyTag {
    Euclidean,
    HyperbolicUnit,
    Hyperbolic { radius: f64 },
    SchwarzschildIsotropic { m: f64 },
    RoundS3 { radius: f64 },
    MaximalSliceCustom,
    Custom,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyTag::Euclidean => write!(f, "euclidean"),
            FamilyTag::HyperbolicUnit => write!(f, "hyperbolic_unit"),
            FamilyTag::Hyperbolic { radius } => write!(f, "hyperbolic(radius={radius})"),
            FamilyTag::SchwarzschildIsotropic { m } => write!(f, "schwarzschild_isotropic(m={m})"),
            FamilyTag::RoundS3 { radius } => write!(f, "round_s3(radius={radius})"),
            FamilyTag::MaximalSliceCustom => write!(f, "maximal_slice_custom"),
            FamilyTag::Custom => write!(f, "custom"),
        }
    }
}

/// Uniform radial grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub rho_min: f64,
    pub rho_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(rho_min: f64, rho_max: f64, n: usize) -> Result<Self> {
        let g = Grid { rho_min, rho_max, n };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rho_min > 0.0) || !self.rho_min.is_finite() {
            return Err(Error::invalid(format!("grid needs rho_min > 0, got {}", self.rho_min)));
        }
        if !(self.rho_max > self.rho_min) || !self.rho_max.is_finite() {
            return Err(Error::invalid(format!(
                "grid needs rho_max > rho_min, got [{}, {}]",
                self.rho_min, self.rho_max
            )));
        }
        if self.n < 2 {
            return Err(Error::invalid("grid needs at least two points"));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.rho_max - self.rho_min) / (self.n - 1) as f64
    }

    pub fn points(&self) -> Vec<f64> {
        let h = self.spacing();
        let mut pts: Vec<f64> = (0..self.n).map(|i| self.rho_min + i as f64 * h).collect();
        pts[self.n - 1] = self.rho_max;
        pts
    }
}

/// Initial data sampled on a radial grid, backed by its profile.
#[derive(Debug, Clone)]
pub struct SphericalDataSet {
    pub tag: FamilyTag,
    pub grid: Vec<f64>,
    pub a: Vec<f64>,
    pub r: Vec<f64>,
    pub kappa_rho: Vec<f64>,
    pub kappa_t: Vec<f64>,
    /// Homothety factor relative to the family's native scale.
    pub scale: f64,
    profile: Arc<dyn RadialProfile>,
}

impl SphericalDataSet {
    /// Sample a profile on a grid, validating positivity of `a` and `r`.
    pub fn from_profile(tag: FamilyTag, profile: Arc<dyn RadialProfile>, grid: Vec<f64>) -> Result<Self> {
        if grid.len() < 2 || grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("radial grid must be strictly increasing"));
        }
        if !(grid[0] > 0.0) {
            return Err(Error::invalid("radial grid must have rho_min > 0"));
        }
        let pts: Vec<RadialPoint> = grid.iter().map(|&x| profile.at(x)).collect();
        for (x, p) in grid.iter().zip(&pts) {
            let finite = [p.a, p.r, p.kappa_rho, p.kappa_t].iter().all(|v| v.is_finite());
            if !finite || !(p.a > 0.0) || !(p.r > 0.0) {
                return Err(Error::invalid(format!(
                    "{tag}: need finite data with a > 0 and r > 0; at rho = {x}: a = {}, r = {}",
                    p.a, p.r
                )));
            }
        }
        Ok(Self {
            tag,
            a: pts.iter().map(|p| p.a).collect(),
            r: pts.iter().map(|p| p.r).collect(),
            kappa_rho: pts.iter().map(|p| p.kappa_rho).collect(),
            kappa_t: pts.iter().map(|p| p.kappa_t).collect(),
            grid,
            scale: 1.0,
            profile,
        })
    }

    /// Build tabulated data (`custom` or `maximal_slice_custom`).
    pub fn from_samples(
        maximal: bool,
        rho: Vec<f64>,
        a: Vec<f64>,
        r: Vec<f64>,
        kappa_rho: Vec<f64>,
        kappa_t: Vec<f64>,
    ) -> Result<Self> {
        let n = rho.len();
        if [a.len(), r.len(), kappa_rho.len(), kappa_t.len()].iter().any(|&m| m != n) {
            return Err(Error::invalid("custom data columns differ in length"));
        }
        if n < 4 {
            return Err(Error::invalid("custom data needs at least four rows"));
        }
        if maximal {
            if let Some(i) = (0..n).find(|&i| (kappa_rho[i] + 2.0 * kappa_t[i]).abs() > 1e-8) {
                return Err(Error::Validation(format!(
                    "maximal slice requires tr K = 0; at rho = {} tr K = {}",
                    rho[i],
                    kappa_rho[i] + 2.0 * kappa_t[i]
                )));
            }
        }
        let profile = Sampled {
            a: CubicSpline::new(rho.clone(), a)?,
            r: CubicSpline::new(rho.clone(), r)?,
            kappa_rho: CubicSpline::new(rho.clone(), kappa_rho)?,
            kappa_t: CubicSpline::new(rho.clone(), kappa_t)?,
        };
        let tag = if maximal {
            FamilyTag::MaximalSliceCustom
        } else {
            FamilyTag::Custom
        };
        Self::from_profile(tag, Arc::new(profile), rho)
    }

    /// Read a CSV with columns `rho,a,r,kappa_rho,kappa_t` (header optional).
    pub fn from_csv(path: impl AsRef<Path>, maximal: bool) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)?;
        let mut cols: [Vec<f64>; 5] = Default::default();
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(row) if row.len() == 5 => {
                    for (c, v) in cols.iter_mut().zip(row) {
                        c.push(v);
                    }
                }
                Err(_) if line == 0 => continue,
                _ => {
                    return Err(Error::Parse {
                        pointer: format!("{}:{}", path.display(), line + 1),
                        message: "expected five numeric columns rho,a,r,kappa_rho,kappa_t".into(),
                    })
                }
            }
        }
        let [rho, a, r, kr, kt] = cols;
        Self::from_samples(maximal, rho, a, r, kr, kt)
    }

    /// Homothety by `c > 0`: the grid and `r` scale by `c`, `K` by `1/c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::invalid("scale factor must be positive"));
        }
        let profile = Arc::new(Scaled {
            inner: self.profile.clone(),
            c,
        });
        let grid = self.grid.iter().map(|x| c * x).collect();
        let mut out = Self::from_profile(self.tag.clone(), profile, grid)?;
        out.scale = self.scale * c;
        Ok(out)
    }

    pub fn profile(&self) -> &Arc<dyn RadialProfile> {
        &self.profile
    }

    pub fn at(&self, rho: f64) -> RadialPoint {
        self.profile.at(rho)
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn rho_min(&self) -> f64 {
        self.grid[0]
    }

    pub fn rho_max(&self) -> f64 {
        *self.grid.last().unwrap()
    }

    /// Largest grid spacing.
    pub fn cell(&self) -> f64 {
        self.grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Whether the data is tabulated (spline-backed) rather than analytic.
    pub fn is_sampled(&self) -> bool {
        matches!(self.tag, FamilyTag::Custom | FamilyTag::MaximalSliceCustom)
    }

    /// `r` is strictly increasing on the grid (no minimal sphere inside).
    pub fn is_monotone(&self) -> bool {
        self.r.windows(2).all(|w| w[1] > w[0])
    }

    pub fn trace_k(&self) -> Vec<f64> {
        self.kappa_rho
            .iter()
            .zip(&self.kappa_t)
            .map(|(kr, kt)| kr + 2.0 * kt)
            .collect()
    }

    pub fn norm_k_sq(&self) -> Vec<f64> {
        self.kappa_rho
            .iter()
            .zip(&self.kappa_t)
            .map(|(kr, kt)| kr * kr + 2.0 * kt * kt)
            .collect()
    }
}

/// Parameters accepted by [`make_family`].
pub fn make_family(tag: FamilyTag, grid: Grid) -> Result<SphericalDataSet> {
    grid.validate()?;
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(Error::invalid(format!("{name} must be positive, got {v}")))
        }
    };
    let profile: Arc<dyn RadialProfile> = match &tag {
        FamilyTag::Euclidean => Arc::new(Euclidean),
        FamilyTag::HyperbolicUnit => Arc::new(Hyperbolic { radius: 1.0 }),
        FamilyTag::Hyperbolic { radius } => {
            positive("hyperbolic radius", *radius)?;
            Arc::new(Hyperbolic { radius: *radius })
        }
        FamilyTag::SchwarzschildIsotropic { m } => {
            positive("Schwarzschild mass m", *m)?;
            Arc::new(Schwarzschild { m: *m })
        }
        FamilyTag::RoundS3 { radius } => {
            positive("round_s3 radius", *radius)?;
            if grid.rho_max >= *radius {
                return Err(Error::invalid(format!(
                    "round_s3 chart needs rho_max < radius = {radius}, got {}",
                    grid.rho_max
                )));
            }
            Arc::new(RoundS3 { radius: *radius })
        }
        FamilyTag::MaximalSliceCustom | FamilyTag::Custom => {
            return Err(Error::invalid(format!("{tag} data must be supplied as samples")))
        }
    };
    SphericalDataSet::from_profile(tag, profile, grid.points())
}

/// Constraint quantities on the grid of a data set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintFields {
    pub rho: Vec<f64>,
    pub scalar_curvature: Vec<f64>,
    pub mu: Vec<f64>,
    pub j_rad: Vec<f64>,
    pub dec_margin: Vec<f64>,
}

/// Scalar curvature of `g` on the grid.
pub fn scalar_curvature(d: &SphericalDataSet) -> Result<Vec<f64>> {
    if d.len() < 16 {
        return Err(Error::invalid(format!(
            "scalar curvature needs at least 16 grid points, got {}",
            d.len()
        )));
    }
    Ok(d.grid.iter().map(|&x| d.at(x).scalar_curvature()).collect())
}

pub fn constraint_fields(d: &SphericalDataSet) -> Result<ConstraintFields> {
    let scalar = scalar_curvature(d)?;
    let pts: Vec<RadialPoint> = d.grid.iter().map(|&x| d.at(x)).collect();
    let mu: Vec<f64> = pts
        .iter()
        .zip(&scalar)
        .map(|(p, r)| 0.5 * (r - p.norm_k_sq() + p.trace_k().powi(2)))
        .collect();
    let j_rad: Vec<f64> = pts.iter().map(RadialPoint::j_rad).collect();
    let dec_margin = mu.iter().zip(&j_rad).map(|(m, j)| m - j.abs()).collect();
    Ok(ConstraintFields {
        rho: d.grid.clone(),
        scalar_curvature: scalar,
        mu,
        j_rad,
        dec_margin,
    })
}

/// Verdict of the dominant energy condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecReport {
    pub holds: bool,
    pub min_margin: f64,
    pub at_rho: f64,
}

pub fn check_dec(d: &SphericalDataSet) -> Result<DecReport> {
    let fields = constraint_fields(d)?;
    Ok(dec_from_fields(&fields))
}

pub fn dec_from_fields(fields: &ConstraintFields) -> DecReport {
    let (i, min_margin) = fields
        .dec_margin
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |(bi, bm), (i, m)| if m < bm { (i, m) } else { (bi, bm) });
    DecReport {
        holds: min_margin >= -DEC_TOL,
        min_margin,
        at_rho: fields.rho[i],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(lo: f64, hi: f64, n: usize) -> Grid {
        Grid::new(lo, hi, n).unwrap()
    }

    #[test]
    fn euclidean_is_flat_and_trivial() {
        let d = make_family(FamilyTag::Euclidean, grid(0.01, 2.0, 64)).unwrap();
        assert!(d.trace_k().iter().all(|&t| t == 0.0));
        let f = constraint_fields(&d).unwrap();
        assert!(f.scalar_curvature.iter().all(|r| r.abs() <= 1e-6));
        assert!(f.mu.iter().all(|m| m.abs() <= 1e-6));
        assert!(f.j_rad.iter().all(|&j| j == 0.0));
        let dec = check_dec(&d).unwrap();
        assert!(dec.holds);
        assert!(dec.min_margin.abs() <= 1e-6);
    }

    #[test]
    fn hyperbolic_unit_constraints() {
        let d = make_family(FamilyTag::HyperbolicUnit, grid(0.01, 3.0, 128)).unwrap();
        assert!(d.trace_k().iter().all(|&t| (t - 3.0).abs() < 1e-15));
        assert!(d.norm_k_sq().iter().all(|&t| (t - 3.0).abs() < 1e-15));
        let f = constraint_fields(&d).unwrap();
        for i in 0..d.len() {
            assert!((f.scalar_curvature[i] + 6.0).abs() < 1e-4);
            assert!(f.mu[i].abs() < 1e-4);
            assert!(f.j_rad[i].abs() < 1e-8);
        }
        assert!(check_dec(&d).unwrap().holds);
    }

    #[test]
    fn schwarzschild_lapse_and_vacuum() {
        let d = make_family(FamilyTag::SchwarzschildIsotropic { m: 1.0 }, grid(0.1, 2.0, 64)).unwrap();
        assert!((d.at(0.5).a - 4.0).abs() < 1e-14);
        let r = scalar_curvature(&d).unwrap();
        assert!(r.iter().all(|x| x.abs() <= 1e-5), "{r:?}");
        // the throat at m/2 folds the area radius
        assert!(!d.is_monotone());
    }

    #[test]
    fn round_s3_energy_density() {
        let a0 = 2.0;
        let d = make_family(FamilyTag::RoundS3 { radius: a0 }, grid(0.01, 1.5, 64)).unwrap();
        let f = constraint_fields(&d).unwrap();
        assert!(f.mu.iter().all(|m| (m - 3.0 / (a0 * a0)).abs() < 1e-4));
        assert!(make_family(FamilyTag::RoundS3 { radius: 1.0 }, grid(0.1, 1.0, 64)).is_err());
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(make_family(FamilyTag::SchwarzschildIsotropic { m: 0.0 }, grid(0.1, 1.0, 32)).is_err());
        assert!(Grid::new(0.0, 1.0, 32).is_err());
        assert!(Grid::new(1.0, 0.5, 32).is_err());
        let d = make_family(FamilyTag::Euclidean, grid(0.1, 1.0, 8)).unwrap();
        assert!(matches!(scalar_curvature(&d), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn custom_tangential_trace_violates_dec_inside_unit_radius() {
        // kappa_t = 2, kappa_rho = 0 on flat space: mu = 4, |J| = 4/rho
        let rho: Vec<f64> = (0..200).map(|i| 0.2 + i as f64 * 0.01).collect();
        let n = rho.len();
        let d = SphericalDataSet::from_samples(
            false,
            rho.clone(),
            vec![1.0; n],
            rho.clone(),
            vec![0.0; n],
            vec![2.0; n],
        )
        .unwrap();
        let f = constraint_fields(&d).unwrap();
        for (i, &x) in rho.iter().enumerate() {
            assert!((f.mu[i] - 4.0).abs() < 1e-8);
            assert!((f.j_rad[i].abs() - 4.0 / x).abs() < 1e-8);
        }
        let dec = check_dec(&d).unwrap();
        assert!(!dec.holds);
        assert!((dec.at_rho - 0.2).abs() < 1e-12);
    }

    #[test]
    fn maximal_slice_requires_trace_free() {
        let rho: Vec<f64> = (0..10).map(|i| 0.5 + i as f64 * 0.1).collect();
        let n = rho.len();
        let bad = SphericalDataSet::from_samples(true, rho.clone(), vec![1.0; n], rho.clone(), vec![1.0; n], vec![0.0; n]);
        assert!(matches!(bad, Err(Error::Validation(_))));
        let ok = SphericalDataSet::from_samples(true, rho.clone(), vec![1.0; n], rho, vec![1.0; n], vec![-0.5; n]);
        assert!(ok.is_ok());
    }

    #[test]
    fn homothety_scales_curvatures() {
        let d = make_family(FamilyTag::HyperbolicUnit, grid(0.1, 1.0, 32)).unwrap();
        let s = d.scaled(2.0).unwrap();
        let p = d.at(0.5);
        let q = s.at(1.0);
        assert!((q.r - 2.0 * p.r).abs() < 1e-15);
        assert!((q.kappa_t - 0.5 * p.kappa_t).abs() < 1e-15);
        assert!((q.scalar_curvature() - 0.25 * p.scalar_curvature()).abs() < 1e-12);
    }
}
