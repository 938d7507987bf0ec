//! Dirichlet problem for the Jang equation in spherical symmetry.
//!
//! For a radial height function `u(ρ)` write `p = u_s` (derivative in
//! radial arclength) and `W = √(1 + p²)`. The Jang equation
//! `(gⁱʲ - uⁱuʲ/W²)(∇²ᵢⱼu / W - Kᵢⱼ) = 0` reduces to
//!
//! ```text
//!   (u_ss / W - κ_ρ) / W² + 2 (r_s / r) p / W - 2 κ_T = 0,
//! ```
//!
//! solved on `[ρ_min, ρ_b]` with `u(ρ_b) = 0` and an inner slope taken from
//! the regular solution near the center. The graph metric is
//! `ĝ = (a² + u'²) dρ² + r² dΩ²`, the lapse is `f = 1/W`, and
//! `X = ω - ∇̂ log f` with `ω` the tangential part of `-K(·, ν̂)`.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial_data::{warped_scalar_curvature, RadialPoint, SphericalDataSet};
use crate::numeric::fd;
use crate::numeric::tridiag::solve_tridiagonal;
use crate::slices::{horizon_scan, slice, Classification};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverParams {
    /// Intervals of the coarse grid; a second solve uses `2n`.
    pub n: usize,
    pub max_iter: usize,
    /// Stop once the discrete residual is below this (sup norm).
    pub tol: f64,
    /// Combine the `n` and `2n` solves to cancel the leading error term.
    pub richardson: bool,
}

impl Default for SolverParams {
    fn default() -> Self {
        Self {
            n: 512,
            max_iter: 50,
            tol: 1e-10,
            richardson: true,
        }
    }
}

/// Sign convention for the divergence in the Schoen–Yau margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivergenceSign {
    /// `div X = -Σ ∇_{e_i} X_i`.
    #[default]
    NegativeTrace,
    /// `div X = Σ ∇_{e_i} X_i`.
    Trace,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JangSolution {
    pub rho_b: f64,
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub du: Vec<f64>,
    pub f_lapse: Vec<f64>,
    pub ghat_a: Vec<f64>,
    pub ghat_scalar_curvature: Vec<f64>,
    pub x_rad: Vec<f64>,
    pub sy_margin: Vec<f64>,
    /// Sup norm of the continuum residual evaluated on the returned `u`.
    pub residual_norm: f64,
    pub iterations: usize,
    /// Discrete residual per Newton iteration of the finest solve.
    pub trace: Vec<f64>,
    pub inner_slope: f64,
    pub convention: DivergenceSign,
    /// Second derivative of `u`, kept for the derived fields.
    pub ddu: Vec<f64>,
}

impl JangSolution {
    pub fn min_sy_margin(&self) -> f64 {
        self.sy_margin.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_x(&self) -> f64 {
        self.x_rad.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs_ghat_scalar(&self) -> f64 {
        self.ghat_scalar_curvature.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Write `(rho, u, du, f, ghat_a, X_rad, sy_margin)` rows.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["rho", "u", "du", "f", "ghat_a", "X_rad", "sy_margin"])?;
        for i in 0..self.rho.len() {
            w.write_record(
                [
                    self.rho[i],
                    self.u[i],
                    self.du[i],
                    self.f_lapse[i],
                    self.ghat_a[i],
                    self.x_rad[i],
                    self.sy_margin[i],
                ]
                .map(|v| v.to_string()),
            )?;
        }
        w.flush().map_err(|e| Error::io("<csv writer>", e))?;
        Ok(())
    }
}

/// Residual of the reduced Jang operator at one point.
fn pointwise_residual(p: &RadialPoint, du: f64, ddu: f64) -> f64 {
    let slope = du / p.a;
    let w2 = 1.0 + slope * slope;
    let w = w2.sqrt();
    let u_ss = (ddu - du * p.da / p.a) / (p.a * p.a);
    (u_ss / w - p.kappa_rho) / w2 + 2.0 * p.r_s() / p.r * slope / w - 2.0 * p.kappa_t
}

/// Partial derivatives of [`pointwise_residual`] in `(u', u'')`.
fn residual_partials(p: &RadialPoint, du: f64, ddu: f64) -> (f64, f64) {
    let a = p.a;
    let slope = du / a;
    let w = (1.0 + slope * slope).sqrt();
    let w3 = w.powi(3);
    let u_ss = (ddu - du * p.da / a) / (a * a);
    let d_ddu = 1.0 / (w3 * a * a);
    let d_slope = -3.0 * slope * u_ss / w.powi(5)
        + 2.0 * p.kappa_rho * slope / w.powi(4)
        + 2.0 * p.r_s() / p.r / w3;
    let d_du = -(p.da / a) / (a * a * w3) + d_slope / a;
    (d_du, d_ddu)
}

fn uniform_spacing(rho: &[f64]) -> Result<f64> {
    if rho.len() < 6 {
        return Err(Error::invalid("need at least six grid points"));
    }
    let h = (rho[rho.len() - 1] - rho[0]) / (rho.len() - 1) as f64;
    if rho.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return Err(Error::invalid("grid must be uniform"));
    }
    Ok(h)
}

/// Continuum residual of the Jang operator for samples of `u` on a uniform
/// grid, with fourth-order differences.
pub fn jang_residual(d: &SphericalDataSet, rho: &[f64], u: &[f64]) -> Result<Vec<f64>> {
    if rho.len() != u.len() {
        return Err(Error::invalid("grid and u differ in length"));
    }
    let h = uniform_spacing(rho)?;
    let du = fd::d1(u, h)?;
    let ddu = fd::d2(u, h)?;
    Ok(rho
        .iter()
        .enumerate()
        .map(|(i, &x)| pointwise_residual(&d.at(x), du[i], ddu[i]))
        .collect())
}

/// `v = p/W` at `ρ_min`. With a regular center, the Riccati form
/// `v_s + 2(r_s/r) v = κ_ρ(1 - v²) + 2κ_T` is integrated outward from
/// near the origin, starting on the regular branch `v ≈ r tr K / 3`.
fn inner_velocity(d: &SphericalDataSet) -> Result<f64> {
    let rho_min = d.rho_min();
    let leading = |x: f64| {
        let p = d.at(x);
        p.r * p.trace_k() / 3.0
    };
    if !d.profile().regular_center() {
        return Ok(leading(rho_min));
    }
    let rhs = |x: f64, v: f64| {
        let p = d.at(x);
        p.a * (p.kappa_rho * (1.0 - v * v) + 2.0 * p.kappa_t) - 2.0 * p.dr / p.r * v
    };
    let start = rho_min * 1e-3;
    let steps = 400;
    let ratio = (rho_min / start).powf(1.0 / steps as f64);
    let mut x = start;
    let mut v = leading(start);
    for _ in 0..steps {
        let next = x * ratio;
        let h = next - x;
        let k1 = rhs(x, v);
        let k2 = rhs(x + 0.5 * h, v + 0.5 * h * k1);
        let k3 = rhs(x + 0.5 * h, v + 0.5 * h * k2);
        let k4 = rhs(next, v + h * k3);
        v += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        x = next;
    }
    Ok(v)
}

struct Newton {
    u: Vec<f64>,
    iterations: usize,
    trace: Vec<f64>,
}

/// Damped Newton on the second-order discretization; unknowns are
/// `u_0..u_{n-1}` with `u_n = 0` and a ghost point carrying `u'(ρ_min)`.
fn newton(d: &SphericalDataSet, rho: &[f64], slope0: f64, params: &SolverParams) -> Result<Newton> {
    let n = rho.len() - 1;
    let h = rho[1] - rho[0];
    let pts: Vec<RadialPoint> = rho.iter().map(|&x| d.at(x)).collect();
    let min_a2 = pts.iter().map(|p| p.a * p.a).fold(f64::INFINITY, f64::min);

    let stencil = |u: &[f64], i: usize| -> (f64, f64) {
        let left = if i == 0 { u[1] - 2.0 * h * slope0 } else { u[i - 1] };
        let right = if i + 1 == n { 0.0 } else { u[i + 1] };
        ((right - left) / (2.0 * h), (right - 2.0 * u[i] + left) / (h * h))
    };
    let residual = |u: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| {
                let (du, ddu) = stencil(u, i);
                pointwise_residual(&pts[i], du, ddu)
            })
            .collect()
    };
    let sup = |v: &[f64]| v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let l2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut u = vec![0.0; n];
    let mut res = residual(&u);
    let mut trace = vec![sup(&res)];
    for iter in 0..params.max_iter {
        let norm = sup(&res);
        let floor = 64.0 * f64::EPSILON * (1.0 + sup(&u)) / (h * h * min_a2);
        if norm <= params.tol.max(floor) {
            return Ok(Newton {
                u,
                iterations: iter,
                trace,
            });
        }
        let mut lower = vec![0.0; n - 1];
        let mut diag = vec![0.0; n];
        let mut upper = vec![0.0; n - 1];
        for i in 0..n {
            let (du, ddu) = stencil(&u, i);
            let (c1, c2) = residual_partials(&pts[i], du, ddu);
            diag[i] = -2.0 * c2 / (h * h);
            if i == 0 {
                // ghost point mirrors u_1
                upper[0] = 2.0 * c2 / (h * h);
            } else {
                lower[i - 1] = c2 / (h * h) - c1 / (2.0 * h);
                if i + 1 < n {
                    upper[i] = c2 / (h * h) + c1 / (2.0 * h);
                }
            }
        }
        let rhs: Vec<f64> = res.iter().map(|r| -r).collect();
        let step = solve_tridiagonal(&lower, &diag, &upper, &rhs)
            .map_err(|e| Error::numerical("jang newton", format!("singular Jacobian: {e}; trace {trace:?}")))?;

        let base = l2(&res);
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=20 {
            let trial: Vec<f64> = u.iter().zip(&step).map(|(a, b)| a + lambda * b).collect();
            let r = residual(&trial);
            let m = l2(&r);
            if m.is_finite() && m < base {
                accepted = Some((trial, r));
                break;
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((trial, r)) => {
                let step_size = sup(&step) * lambda;
                u = trial;
                res = r;
                trace.push(sup(&res));
                if lambda == 1.0 && step_size <= 1e-14 * (1.0 + sup(&u)) {
                    return Ok(Newton {
                        u,
                        iterations: iter + 1,
                        trace,
                    });
                }
            }
            None => {
                return Err(Error::numerical(
                    "jang newton",
                    format!("line search failed at iteration {iter}; residual trace {trace:?}"),
                ))
            }
        }
    }
    Err(Error::numerical(
        "jang newton",
        format!("no convergence in {} iterations; residual trace {trace:?}", params.max_iter),
    ))
}

/// Hypothesis check shared with the bound assembly: no apparent horizon
/// on `[ρ_min, ρ_b)`.
pub fn check_no_horizon(d: &SphericalDataSet, rho_b: f64) -> Result<()> {
    let roots = horizon_scan(d, d.rho_min(), rho_b)?;
    if let Some(root) = roots.iter().find(|r| r.rho < rho_b) {
        return Err(Error::precondition(
            "no apparent horizon",
            format!("expansion {:?} vanishes at rho = {:.10}", root.expansion, root.rho),
        ));
    }
    let inner = slice(d, d.rho_min())?;
    if inner.classification == Classification::ApparentHorizon {
        return Err(Error::precondition(
            "no apparent horizon",
            format!("the inner sphere rho = {} is an apparent horizon", inner.rho),
        ));
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    let mut v: Vec<f64> = (0..=n).map(|i| lo + i as f64 * h).collect();
    v[n] = hi;
    v
}

/// Solve the Jang equation on `[ρ_min, ρ_b]` with `u(ρ_b) = 0`.
pub fn solve_jang_dirichlet(d: &SphericalDataSet, rho_b: f64, params: &SolverParams) -> Result<JangSolution> {
    solve_jang_with(d, rho_b, params, DivergenceSign::default())
}

pub fn solve_jang_with(
    d: &SphericalDataSet,
    rho_b: f64,
    params: &SolverParams,
    convention: DivergenceSign,
) -> Result<JangSolution> {
    if !(rho_b > d.rho_min() && rho_b <= d.rho_max()) {
        return Err(Error::invalid(format!(
            "rho_b = {rho_b} must lie in ({}, {}]",
            d.rho_min(),
            d.rho_max()
        )));
    }
    if params.n < 16 {
        return Err(Error::invalid("jang grid needs n >= 16"));
    }
    check_no_horizon(d, rho_b)?;

    let v0 = inner_velocity(d)?;
    if !(v0.abs() < 1.0) {
        return Err(Error::numerical(
            "jang inner condition",
            format!("regular branch leaves the admissible range: v = {v0}"),
        ));
    }
    let a0 = d.at(d.rho_min()).a;
    let slope0 = a0 * v0 / (1.0 - v0 * v0).sqrt();

    let lo = d.rho_min();
    let coarse_rho = grid(lo, rho_b, params.n);
    let coarse = newton(d, &coarse_rho, slope0, params)?;
    let (u, iterations, trace) = if params.richardson {
        let fine = newton(d, &grid(lo, rho_b, 2 * params.n), slope0, params)?;
        let u: Vec<f64> = (0..params.n)
            .map(|i| (4.0 * fine.u[2 * i] - coarse.u[i]) / 3.0)
            .chain(std::iter::once(0.0))
            .collect();
        (u, coarse.iterations + fine.iterations, fine.trace)
    } else {
        let mut u = coarse.u;
        u.push(0.0);
        (u, coarse.iterations, coarse.trace)
    };
    assemble(d, rho_b, coarse_rho, u, iterations, trace, slope0, convention)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    d: &SphericalDataSet,
    rho_b: f64,
    rho: Vec<f64>,
    u: Vec<f64>,
    iterations: usize,
    trace: Vec<f64>,
    inner_slope: f64,
    convention: DivergenceSign,
) -> Result<JangSolution> {
    let h = rho[1] - rho[0];
    let du = fd::d1(&u, h)?;
    let ddu = fd::d2(&u, h)?;
    let residual_norm = rho
        .iter()
        .enumerate()
        .map(|(i, &x)| pointwise_residual(&d.at(x), du[i], ddu[i]).abs())
        .fold(0.0, f64::max);
    let mut sol = JangSolution {
        rho_b,
        f_lapse: Vec::new(),
        ghat_a: Vec::new(),
        ghat_scalar_curvature: Vec::new(),
        x_rad: Vec::new(),
        sy_margin: Vec::new(),
        rho,
        u,
        du,
        residual_norm,
        iterations,
        trace,
        inner_slope,
        convention,
        ddu,
    };
    let fields = derived_fields(d, &sol)?;
    sol.f_lapse = fields.f;
    sol.ghat_a = fields.ghat_a;
    sol.ghat_scalar_curvature = fields.ghat_scalar;
    sol.x_rad = fields.x_rad;
    sol.sy_margin = schoen_yau_margin(d, &sol, convention)?;
    Ok(sol)
}

struct Derived {
    f: Vec<f64>,
    ghat_a: Vec<f64>,
    ghat_scalar: Vec<f64>,
    x_rad: Vec<f64>,
}

fn derived_fields(d: &SphericalDataSet, sol: &JangSolution) -> Result<Derived> {
    let n = sol.rho.len();
    let mut out = Derived {
        f: Vec::with_capacity(n),
        ghat_a: Vec::with_capacity(n),
        ghat_scalar: Vec::with_capacity(n),
        x_rad: Vec::with_capacity(n),
    };
    for i in 0..n {
        let p = d.at(sol.rho[i]);
        let (du, ddu) = (sol.du[i], sol.ddu[i]);
        let slope = du / p.a;
        let w2 = 1.0 + slope * slope;
        let f = 1.0 / w2.sqrt();
        let ghat = (p.a * p.a + du * du).sqrt();
        let dghat = (p.a * p.da + du * ddu) / ghat;
        let r_s = p.dr / ghat;
        let r_ss = p.ddr / (ghat * ghat) - p.dr * dghat / ghat.powi(3);
        let omega = -p.kappa_rho * slope * f * f;
        let dslope = ddu / p.a - du * p.da / (p.a * p.a);
        let dlog_f = -slope * dslope / w2;
        out.f.push(f);
        out.ghat_a.push(ghat);
        out.ghat_scalar.push(warped_scalar_curvature(p.r, r_s, r_ss));
        out.x_rad.push(omega - dlog_f / ghat);
    }
    Ok(out)
}

/// The radial field `X` in the orthonormal frame of `ĝ`.
pub fn jang_vector_field(sol: &JangSolution) -> &[f64] {
    &sol.x_rad
}

/// `R̂ - 2|X|² - 2 div X - 2(μ - |J|)` on the solution grid.
pub fn schoen_yau_margin(d: &SphericalDataSet, sol: &JangSolution, convention: DivergenceSign) -> Result<Vec<f64>> {
    let h = sol.rho[1] - sol.rho[0];
    let dx = fd::d1(&sol.x_rad, h)?;
    Ok((0..sol.rho.len())
        .map(|i| {
            let p = d.at(sol.rho[i]);
            let x = sol.x_rad[i];
            let trace = (dx[i] + 2.0 * p.dr / p.r * x) / sol.ghat_a[i];
            let div = match convention {
                DivergenceSign::NegativeTrace => -trace,
                DivergenceSign::Trace => trace,
            };
            sol.ghat_scalar_curvature[i] - 2.0 * x * x - 2.0 * div - 2.0 * (p.mu() - p.j_rad().abs())
        })
        .collect())
}

/// Boundary mean-curvature identity on `Σ = {ρ = ρ_b}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryIdentity {
    /// `Ĥ - ĝ(X, N̂)` with `N̂` the outward unit normal of `ĝ`.
    pub lhs: f64,
    /// `H/f - σ |∇u| Tr_Σ K` for σ = +1 and σ = -1.
    pub rhs_plus: f64,
    pub rhs_minus: f64,
    pub sigma: i8,
    pub rhs_formula: f64,
    /// `√(H² - (Tr_Σ K)²)`.
    pub rhs_bound: f64,
    pub holds: bool,
    pub equality: bool,
}

pub fn boundary_identity_check(d: &SphericalDataSet, sol: &JangSolution) -> Result<BoundaryIdentity> {
    let s = slice(d, sol.rho_b)?;
    if s.classification != Classification::Untrapped {
        return Err(Error::precondition(
            "untrapped boundary",
            format!(
                "boundary sphere rho = {} is {} (theta+ = {}, theta- = {})",
                s.rho,
                s.classification.as_str(),
                s.theta_plus,
                s.theta_minus
            ),
        ));
    }
    let last = sol.rho.len() - 1;
    let p = d.at(sol.rho_b);
    let h_hat = 2.0 * p.dr / (sol.ghat_a[last] * p.r);
    let lhs = h_hat - sol.x_rad[last];
    let grad_u = (sol.du[last] / p.a).abs();
    let h_over_f = s.mean_curvature / sol.f_lapse[last];
    let rhs_plus = h_over_f - grad_u * s.tr_k_sigma;
    let rhs_minus = h_over_f + grad_u * s.tr_k_sigma;
    let sigma: i8 = if (lhs - rhs_plus).abs() <= (lhs - rhs_minus).abs() { 1 } else { -1 };
    let rhs_formula = if sigma == 1 { rhs_plus } else { rhs_minus };
    let rhs_bound = s.h_norm_sq.sqrt();
    let scale = rhs_bound.max(1.0);
    Ok(BoundaryIdentity {
        lhs,
        rhs_plus,
        rhs_minus,
        sigma,
        rhs_formula,
        rhs_bound,
        holds: lhs >= rhs_bound - 1e-6 * scale,
        equality: (lhs - rhs_bound).abs() <= 1e-4 * scale,
    })
}

/// `√(1+s²) H - s|T|`, minimized over `s >= 0` at `s = |T|/√(H² - T²)`.
pub fn boundary_tightness(s: f64, h: f64, t: f64) -> f64 {
    (1.0 + s * s).sqrt() * h - s * t.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial_data::{make_family, FamilyTag, Grid};

    fn data(tag: FamilyTag, lo: f64, hi: f64) -> SphericalDataSet {
        make_family(tag, Grid::new(lo, hi, 256).unwrap()).unwrap()
    }

    #[test]
    fn residual_of_zero_graph_is_minus_trace() {
        let d = data(FamilyTag::HyperbolicUnit, 0.01, 1.0);
        let rho: Vec<f64> = (0..50).map(|i| 0.1 + i as f64 * 0.01).collect();
        let r = jang_residual(&d, &rho, &vec![0.0; 50]).unwrap();
        assert!(r.iter().all(|x| (x + 3.0).abs() < 1e-14));
        let e = data(FamilyTag::Euclidean, 0.01, 1.0);
        assert!(jang_residual(&e, &rho, &vec![0.0; 50]).unwrap().iter().all(|&x| x == 0.0));
    }

    #[test]
    fn hyperboloid_graph_solves_jang() {
        let d = data(FamilyTag::HyperbolicUnit, 0.01, 1.0);
        let rho: Vec<f64> = (0..400).map(|i| 0.05 + i as f64 * 0.002).collect();
        let u: Vec<f64> = rho.iter().map(|x| (1.0 + x * x).sqrt() - 2f64.sqrt()).collect();
        let r = jang_residual(&d, &rho, &u).unwrap();
        assert!(r.iter().all(|x| x.abs() <= 1e-6), "{:e}", r.iter().fold(0.0_f64, |m, x| m.max(x.abs())));
    }

    #[test]
    fn partials_match_finite_differences() {
        let d = data(FamilyTag::Hyperbolic { radius: 1.7 }, 0.1, 1.0);
        let p = d.at(0.4);
        let (du, ddu) = (0.7, -0.3);
        let (c1, c2) = residual_partials(&p, du, ddu);
        let e = 1e-6;
        let n1 = (pointwise_residual(&p, du + e, ddu) - pointwise_residual(&p, du - e, ddu)) / (2.0 * e);
        let n2 = (pointwise_residual(&p, du, ddu + e) - pointwise_residual(&p, du, ddu - e)) / (2.0 * e);
        assert!((c1 - n1).abs() < 1e-7 && (c2 - n2).abs() < 1e-7);
    }

    #[test]
    fn flat_data_has_zero_solution() {
        let d = data(FamilyTag::Euclidean, 0.01, 1.0);
        let sol = solve_jang_dirichlet(&d, 1.0, &SolverParams::default()).unwrap();
        assert!(sol.u.iter().all(|x| x.abs() <= 1e-10));
        assert!(sol.ghat_a.iter().all(|&g| (g - 1.0).abs() <= 1e-12));
        assert!(sol.x_rad.iter().all(|x| x.abs() <= 1e-10));
        assert!(sol.sy_margin.iter().all(|m| m.abs() <= 1e-8));
        let b = boundary_identity_check(&d, &sol).unwrap();
        assert!((b.lhs - 2.0).abs() < 1e-10 && b.equality);
    }

    #[test]
    fn hyperbolic_cap_recovers_hyperboloid() {
        let d = data(FamilyTag::HyperbolicUnit, 0.01, 1.0);
        let sol = solve_jang_dirichlet(&d, 1.0, &SolverParams::default()).unwrap();
        for (i, &x) in sol.rho.iter().enumerate() {
            assert!((sol.du[i] - x / (1.0 + x * x).sqrt()).abs() < 1e-5);
            assert!((sol.ghat_a[i] - 1.0).abs() < 1e-6);
            assert!(sol.f_lapse[i] > 0.0 && sol.f_lapse[i] <= 1.0);
        }
        assert_eq!(*sol.u.last().unwrap(), 0.0);
        assert!(sol.residual_norm <= 1e-6, "{}", sol.residual_norm);
        assert!(sol.max_abs_x() <= 1e-5);
        assert!(sol.max_abs_ghat_scalar() <= 1e-4, "{}", sol.max_abs_ghat_scalar());
        assert!(sol.sy_margin.iter().all(|m| m.abs() <= 1e-4));
    }

    #[test]
    fn smaller_cap_boundary_identity() {
        let d = data(FamilyTag::HyperbolicUnit, 0.01, 1.0);
        let sol = solve_jang_dirichlet(&d, 0.5, &SolverParams::default()).unwrap();
        let b = boundary_identity_check(&d, &sol).unwrap();
        assert!((b.rhs_bound - 4.0).abs() < 1e-12);
        assert!((b.lhs - 4.0).abs() < 1e-4, "{}", b.lhs);
        assert!(b.equality);
        assert_eq!(b.sigma, 1);
        assert!((b.rhs_formula - b.lhs).abs() < 1e-4);
    }

    #[test]
    fn horizon_blocks_the_solve() {
        let inside = data(FamilyTag::SchwarzschildIsotropic { m: 1.0 }, 0.4, 2.0);
        assert!(matches!(
            solve_jang_dirichlet(&inside, 2.0, &SolverParams::default()),
            Err(Error::PreconditionViolation { .. })
        ));
        let outside = data(FamilyTag::SchwarzschildIsotropic { m: 1.0 }, 0.6, 2.0);
        let sol = solve_jang_dirichlet(&outside, 2.0, &SolverParams::default()).unwrap();
        assert!(sol.u.iter().all(|x| x.abs() <= 1e-10));
        assert!(sol.x_rad.iter().all(|x| x.abs() <= 1e-10));
    }

    #[test]
    fn round_s3_margin_vanishes() {
        let d = data(FamilyTag::RoundS3 { radius: 2.0 }, 0.01, 1.0);
        let sol = solve_jang_dirichlet(&d, 1.0, &SolverParams::default()).unwrap();
        assert!(sol.sy_margin.iter().all(|m| m.abs() <= 1e-4));
    }

    #[test]
    fn tightness_inequality() {
        let h = 3.0;
        let t = -2.0_f64;
        let bound = (h * h - t * t).sqrt();
        let s_star = t.abs() / bound;
        assert!((boundary_tightness(s_star, h, t) - bound).abs() < 1e-12);
        for i in 0..200 {
            let s = i as f64 * 0.05;
            assert!(boundary_tightness(s, h, t) >= bound - 1e-12);
        }
    }
}
