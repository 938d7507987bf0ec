//! Eigenvalue bounds for the Dirac operator of a boundary sphere, checked
//! against the measured first eigenvalue.
//!
//! * spacetime lower bound `½ inf √(θ₊ θ₋)` for untrapped surfaces in data
//!   satisfying the dominant energy condition;
//! * Riemannian lower bound `½ inf (H + g(X, N))` on the Jang graph, with
//!   `N` the inner normal;
//! * upper bound `½ sup √(H² - (Tr_Σ K)²)` when `Tr_Σ K` is constant and
//!   the data is a slice of Minkowski spacetime;
//! * the intrinsic bounds `√(4π / Area)` and `√(inf K_Σ)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::dirac::{dirac_spectrum, lambda1_estimate, sphere_profile, RevolutionSurface, DEFAULT_K_MAX};
use crate::embedded::{extrinsic_fields, induced_surface, StarShape};
use crate::error::{Error, Result};
use crate::initial_data::{constraint_fields, dec_from_fields, SphericalDataSet};
use crate::jang::{boundary_identity_check, check_no_horizon, solve_jang_dirichlet, BoundaryIdentity, SolverParams};
use crate::slices::{slice, Classification, SphereSlice};

pub const EQUALITY_REL_TOL: f64 = 1e-3;
pub const BOUND_REL_TOL: f64 = 1e-6;
/// Allowed spread of `Tr_Σ K` for the upper bound to apply.
pub const CONSTANT_TRACE_TOL: f64 = 1e-10;
/// Largest `|1 - r² θ₊θ₋ / 4|` accepted as a slice of Minkowski spacetime.
pub const FLAT_MASS_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub satisfied: bool,
    pub witness: String,
}

impl HypothesisCheck {
    fn new(name: &str, satisfied: bool, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            satisfied,
            witness: witness.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lambda1Source {
    /// `1/r` for a round boundary sphere.
    Analytic,
    /// Spectral ladder on the induced metric.
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BoundFlags {
    pub lower_holds: bool,
    pub upper_holds: bool,
    pub equality_lower: bool,
    pub equality_upper: bool,
    pub rigidity_round_sphere: bool,
    pub baer_holds: bool,
    pub friedrich_holds: bool,
    pub friedrich_vacuous: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub equality_rel: f64,
    pub bound_rel: f64,
    pub gauss_constant_rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            equality_rel: EQUALITY_REL_TOL,
            bound_rel: BOUND_REL_TOL,
            gauss_constant_rel: EQUALITY_REL_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub subject: String,
    pub lambda1: f64,
    pub lambda1_source: Lambda1Source,
    /// Numeric value used as a cross-check when the primary value is analytic.
    pub lambda1_numeric: Option<f64>,
    pub lambda1_error: f64,
    pub lower_spacetime: Option<f64>,
    pub lower_riemannian: Option<f64>,
    pub upper: Option<f64>,
    pub baer: f64,
    pub friedrich: f64,
    pub area: f64,
    pub gauss_curvature_min: f64,
    pub gauss_curvature_max: f64,
    /// `λ₁ - lower_spacetime`.
    pub gap_lower: Option<f64>,
    /// `upper - λ₁`.
    pub gap_upper: Option<f64>,
    /// `λ₁² Area - 4π`.
    pub baer_margin: f64,
    /// `λ₁² - inf K_Σ`.
    pub friedrich_margin: f64,
    pub boundary_identity: Option<BoundaryIdentity>,
    pub flags: BoundFlags,
    pub hypotheses: Vec<HypothesisCheck>,
    pub tolerances: Tolerances,
}

impl BoundReport {
    /// Every applicable bound holds.
    pub fn all_hold(&self) -> bool {
        self.flags.lower_holds && self.flags.upper_holds && self.flags.baer_holds && self.flags.friedrich_holds
    }
}

pub fn lower_bound_spacetime(s: &SphereSlice) -> Result<f64> {
    if s.classification != Classification::Untrapped {
        return Err(Error::precondition(
            "untrapped surface",
            format!("sphere rho = {} is {}", s.rho, s.classification.as_str()),
        ));
    }
    Ok(0.5 * s.h_norm_sq.sqrt())
}

/// `½ inf (H + g(X, N))`, requiring `H >= -g(X, N)` pointwise.
pub fn lower_bound_riemannian(h: &[f64], x_normal: &[f64]) -> Result<f64> {
    if h.is_empty() || h.len() != x_normal.len() {
        return Err(Error::invalid("mean curvature and X fields must be nonempty and equal length"));
    }
    let sums: Vec<f64> = h.iter().zip(x_normal).map(|(a, b)| a + b).collect();
    if let Some((i, v)) = sums.iter().enumerate().find(|(_, &v)| v < 0.0) {
        return Err(Error::precondition(
            "H >= -g(X, N)",
            format!("H + g(X, N) = {v} at sample {i}"),
        ));
    }
    Ok(0.5 * sums.iter().copied().fold(f64::INFINITY, f64::min))
}

/// `½ sup √(H² - T²)` over samples, requiring `T` constant.
pub fn upper_bound_fields(h: &[f64], tr_k_sigma: &[f64]) -> Result<f64> {
    if h.is_empty() || h.len() != tr_k_sigma.len() {
        return Err(Error::invalid("mean curvature and trace fields must be nonempty and equal length"));
    }
    let (lo, hi) = tr_k_sigma
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, u), &t| (l.min(t), u.max(t)));
    if hi - lo > CONSTANT_TRACE_TOL * hi.abs().max(1.0) {
        return Err(Error::precondition(
            "constant Tr_Sigma K",
            format!("Tr_Sigma K ranges over [{lo}, {hi}]"),
        ));
    }
    let sup = h
        .iter()
        .zip(tr_k_sigma)
        .map(|(a, t)| a * a - t * t)
        .fold(f64::NEG_INFINITY, f64::max);
    if sup < 0.0 {
        return Err(Error::precondition(
            "spacelike mean curvature vector",
            format!("sup (H^2 - T^2) = {sup}"),
        ));
    }
    Ok(0.5 * sup.sqrt())
}

pub fn upper_bound(s: &SphereSlice) -> Result<f64> {
    upper_bound_fields(&[s.mean_curvature], &[s.tr_k_sigma])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    /// Grid size of the numeric cross-check of round spheres.
    pub spectrum_n: usize,
    /// Jang solve for the Riemannian bound; `None` skips it.
    pub jang: Option<SolverParams>,
    /// Meridian samples for embedded surfaces.
    pub surface_samples: usize,
    pub tolerances: Tolerances,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            spectrum_n: 256,
            jang: Some(SolverParams::default()),
            surface_samples: 2049,
            tolerances: Tolerances::default(),
        }
    }
}

struct Measured {
    lambda1: f64,
    error: f64,
    area: f64,
    k_min: f64,
    k_max: f64,
}

#[allow(clippy::too_many_arguments)]
fn finish(
    tol: &Tolerances,
    subject: String,
    m: Measured,
    source: Lambda1Source,
    lambda1_numeric: Option<f64>,
    lower_spacetime: Option<f64>,
    lower_riemannian: Option<f64>,
    upper: Option<f64>,
    boundary_identity: Option<BoundaryIdentity>,
    hypotheses: Vec<HypothesisCheck>,
) -> BoundReport {
    let l1 = m.lambda1;
    let eps = tol.bound_rel * l1 + m.error;
    let equal = |b: f64| (l1 - b).abs() <= tol.equality_rel * l1;
    let baer = (4.0 * PI / m.area).sqrt();
    let friedrich = m.k_min.max(0.0).sqrt();
    let gauss_constant = (m.k_max - m.k_min).abs() <= tol.gauss_constant_rel * m.k_max.abs().max(m.k_min.abs());
    let lower_holds = lower_spacetime.is_none_or(|b| b <= l1 + eps) && lower_riemannian.is_none_or(|b| b <= l1 + eps);
    let upper_holds = upper.is_none_or(|b| l1 <= b + eps);
    // intrinsic bounds: the primary lower bound is the best available one
    let primary_lower = lower_spacetime.unwrap_or(baer);
    let equality_lower = equal(primary_lower);
    let flags = BoundFlags {
        lower_holds,
        upper_holds,
        equality_lower,
        equality_upper: upper.is_some_and(equal),
        rigidity_round_sphere: equality_lower && gauss_constant,
        baer_holds: l1 * l1 * m.area >= 4.0 * PI * (1.0 - tol.equality_rel),
        friedrich_holds: l1 * l1 >= m.k_min - tol.equality_rel * m.k_min.abs() - 2.0 * l1 * m.error,
        friedrich_vacuous: m.k_min <= 0.0,
    };
    BoundReport {
        subject,
        lambda1: l1,
        lambda1_source: source,
        lambda1_numeric,
        lambda1_error: m.error,
        gap_lower: lower_spacetime.map(|b| l1 - b),
        gap_upper: upper.map(|b| b - l1),
        lower_spacetime,
        lower_riemannian,
        upper,
        baer,
        friedrich,
        area: m.area,
        gauss_curvature_min: m.k_min,
        gauss_curvature_max: m.k_max,
        baer_margin: l1 * l1 * m.area - 4.0 * PI,
        friedrich_margin: l1 * l1 - m.k_min,
        boundary_identity,
        flags,
        hypotheses,
        tolerances: *tol,
    }
}

/// Dominant energy condition on `[ρ_min, ρ_b]`.
fn dec_hypothesis(d: &SphericalDataSet, rho_b: f64) -> Result<HypothesisCheck> {
    let mut fields = constraint_fields(d)?;
    let keep = fields.rho.iter().take_while(|&&x| x <= rho_b * (1.0 + 1e-12)).count();
    fields.rho.truncate(keep);
    fields.dec_margin.truncate(keep);
    let dec = dec_from_fields(&fields);
    let witness = format!("min(mu - |J|) = {:e} at rho = {}", dec.min_margin, dec.at_rho);
    if !dec.holds {
        return Err(Error::precondition("dominant energy condition", witness));
    }
    Ok(HypothesisCheck::new("dominant energy condition", true, witness))
}

/// Whether `[ρ_min, ρ_max]` is a slice of Minkowski spacetime. In spherical
/// symmetry this holds exactly when the Misner–Sharp mass
/// `(r/2)(1 - r² θ₊θ₋ / 4)` vanishes throughout.
fn minkowski_hypothesis(d: &SphericalDataSet, rho_max: f64) -> Result<HypothesisCheck> {
    const SAMPLES: usize = 257;
    let lo = d.rho_min();
    let mut worst = (0.0f64, lo);
    for i in 0..SAMPLES {
        let rho = lo + (rho_max - lo) * i as f64 / (SAMPLES - 1) as f64;
        let s = slice(d, rho)?;
        let defect = (1.0 - s.area_radius * s.area_radius * s.h_norm_sq / 4.0).abs();
        if defect > worst.0 {
            worst = (defect, rho);
        }
    }
    Ok(HypothesisCheck::new(
        "slice of Minkowski spacetime",
        worst.0 <= FLAT_MASS_TOL,
        format!("max |2m/r| = {:e} at rho = {}", worst.0, worst.1),
    ))
}

/// Bounds for the coordinate sphere `ρ = ρ_b` of a data set.
pub fn verify_slice(d: &SphericalDataSet, rho_b: f64, opts: &VerifyOptions) -> Result<BoundReport> {
    let mut hyps = vec![dec_hypothesis(d, rho_b)?];
    check_no_horizon(d, rho_b)?;
    hyps.push(HypothesisCheck::new(
        "no apparent horizon",
        true,
        format!("no expansion changes sign on [{}, {rho_b})", d.rho_min()),
    ));
    let s = slice(d, rho_b)?;
    let lower = lower_bound_spacetime(&s)?;
    hyps.push(HypothesisCheck::new(
        "untrapped surface",
        true,
        format!("theta+ = {}, theta- = {}", s.theta_plus, s.theta_minus),
    ));
    hyps.push(HypothesisCheck::new("constant Tr_Sigma K", true, "spherical symmetry"));
    let flat = minkowski_hypothesis(d, rho_b)?;
    let upper = if flat.satisfied { Some(upper_bound(&s)?) } else { None };
    hyps.push(flat);

    let r = s.area_radius;
    let analytic = 1.0 / r;
    let numeric = dirac_spectrum(&sphere_profile(r)?, DEFAULT_K_MAX, opts.spectrum_n, 1)?;
    let agree = (numeric.lambda1 - analytic).abs() <= opts.tolerances.equality_rel * analytic;
    hyps.push(HypothesisCheck::new(
        "numeric spectrum agrees with 1/r",
        agree,
        format!("lambda1 numeric = {} vs 1/r = {analytic}", numeric.lambda1),
    ));

    let (lower_riemannian, identity) = match &opts.jang {
        None => (None, None),
        Some(params) => match solve_jang_dirichlet(d, rho_b, params) {
            Ok(sol) => {
                let b = boundary_identity_check(d, &sol)?;
                let last = sol.rho.len() - 1;
                let h_hat = 2.0 * d.at(rho_b).dr / (sol.ghat_a[last] * r);
                let bound = lower_bound_riemannian(&[h_hat], &[-sol.x_rad[last]]);
                hyps.push(HypothesisCheck::new(
                    "jang solution",
                    true,
                    format!("residual {:e}, min Schoen-Yau margin {:e}", sol.residual_norm, sol.min_sy_margin()),
                ));
                match bound {
                    Ok(v) => (Some(v), Some(b)),
                    Err(Error::PreconditionViolation { hypothesis, witness }) => {
                        hyps.push(HypothesisCheck::new(&hypothesis, false, witness));
                        (None, Some(b))
                    }
                    Err(e) => return Err(e),
                }
            }
            Err(Error::NumericalFailure { context, detail }) => {
                hyps.push(HypothesisCheck::new("jang solution", false, format!("{context}: {detail}")));
                (None, None)
            }
            Err(e) => return Err(e),
        },
    };

    let k = 1.0 / (r * r);
    let m = Measured {
        lambda1: analytic,
        error: 0.0,
        area: 4.0 * PI * r * r,
        k_min: k,
        k_max: k,
    };
    Ok(finish(
        &opts.tolerances,
        format!("{} sphere rho = {rho_b}", d.tag),
        m,
        Lambda1Source::Analytic,
        Some(numeric.lambda1),
        Some(lower),
        lower_riemannian,
        upper,
        identity,
        hyps,
    ))
}

/// Intrinsic bounds for a sphere of revolution.
pub fn verify_surface(s: &RevolutionSurface, subject: impl Into<String>, opts: &VerifyOptions) -> Result<BoundReport> {
    let est = lambda1_estimate(s)?;
    let (k_min, k_max) = s.gauss_curvature_range();
    let m = Measured {
        lambda1: est.value,
        error: est.error_estimate,
        area: s.area(),
        k_min,
        k_max,
    };
    let hyps = vec![HypothesisCheck::new(
        "spectral ladder converged",
        true,
        format!("n = {}, last difference {:e}", est.n, est.error_estimate),
    )];
    Ok(finish(&opts.tolerances, subject.into(), m, Lambda1Source::Numeric, None, None, None, None, None, hyps))
}

/// Bounds for an axisymmetric star-shaped surface inside a data set.
pub fn verify_embedded(d: &SphericalDataSet, shape: &StarShape, opts: &VerifyOptions) -> Result<BoundReport> {
    let (_, outer) = shape.extent();
    let mut hyps = vec![dec_hypothesis(d, outer)?];
    check_no_horizon(d, outer)?;
    hyps.push(HypothesisCheck::new(
        "no apparent horizon",
        true,
        format!("no expansion changes sign on [{}, {outer})", d.rho_min()),
    ));
    let fields = extrinsic_fields(d, shape, opts.surface_samples)?;
    let tp = fields.theta_plus();
    let tm = fields.theta_minus();
    if let Some(i) = (0..tp.len()).find(|&i| !(tp[i] > 0.0 && tm[i] > 0.0)) {
        return Err(Error::precondition(
            "untrapped surface",
            format!("theta+ = {}, theta- = {} at phi = {}", tp[i], tm[i], fields.phi[i]),
        ));
    }
    let lower = 0.5
        * tp.iter()
            .zip(&tm)
            .map(|(a, b)| (a * b).sqrt())
            .fold(f64::INFINITY, f64::min);
    hyps.push(HypothesisCheck::new("untrapped surface", true, "theta+ > 0 and theta- > 0 on all samples"));
    let flat = minkowski_hypothesis(d, outer)?;
    let flat_ok = flat.satisfied;
    hyps.push(flat);
    let upper = match upper_bound_fields(&fields.mean_curvature, &fields.tr_k_sigma) {
        Ok(_) if !flat_ok => None,
        Ok(v) => {
            hyps.push(HypothesisCheck::new("constant Tr_Sigma K", true, "spread within tolerance"));
            Some(v)
        }
        Err(Error::PreconditionViolation { hypothesis, witness }) => {
            hyps.push(HypothesisCheck::new(&hypothesis, false, witness));
            None
        }
        Err(e) => return Err(e),
    };
    let surface = induced_surface(d, shape, opts.surface_samples)?;
    let est = lambda1_estimate(&surface)?;
    let (k_min, k_max) = surface.gauss_curvature_range();
    let m = Measured {
        lambda1: est.value,
        error: est.error_estimate,
        area: surface.area(),
        k_min,
        k_max,
    };
    Ok(finish(
        &opts.tolerances,
        format!("{shape:?} in {}", d.tag),
        m,
        Lambda1Source::Numeric,
        None,
        Some(lower),
        None,
        upper,
        None,
        hyps,
    ))
}
