//! Intrinsic Dirac spectrum of rotationally symmetric 2-spheres.
//!
//! A sphere of revolution carries the warped metric `dt² + f(t)² dθ²` on
//! `(0, L) × S¹`. Separating the fiber angle, the Dirac operator splits into
//! half-integer Fourier modes `k`; after conjugation by `f^{1/2}` each mode is
//! the first-order system
//!
//! ```text
//!   λ u = ( d/dt + k/f) v
//!   λ v = (-d/dt + k/f) u
//! ```
//!
//! which is discretized on a staggered interior grid: the two components
//! alternate on the sites `τ_j = j L / (2n + 1)`, `j = 1..=2n`, so the
//! assembled operator is a symmetric tridiagonal matrix with zero diagonal.
//! Its spectrum is symmetric about zero by construction.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::interp::{estimate_end_slopes, CubicHermite, CubicSpline, Jet};
use crate::numeric::quad::gauss_legendre;
use crate::numeric::tridiag::{bisect_eigenvalue, count_below, symmetric_eigenvalues};

/// Samples used by the analytic profile constructors.
pub const DEFAULT_SAMPLES: usize = 4097;

/// Tolerance on the pole slopes `(f'(0), f'(L)) = (1, -1)`.
pub const POLE_SLOPE_TOL: f64 = 1e-8;

/// Sampled CSV profiles only need to be consistent with smooth closing.
const SAMPLED_POLE_SLOPE_TOL: f64 = 1e-2;

/// Default mode cutoff `7/2`.
pub const DEFAULT_K_MAX: HalfInt = HalfInt(7);

/// A half-integer, stored as twice its value (always odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const HALF: HalfInt = HalfInt(1);

    pub fn from_twice(twice: i32) -> Result<Self> {
        if twice % 2 == 0 {
            return Err(Error::InvalidMode(twice as f64 / 2.0));
        }
        Ok(HalfInt(twice))
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// All modes with `|k| <= k_max`, ascending.
    pub fn modes_up_to(k_max: HalfInt) -> Vec<HalfInt> {
        let top = k_max.0.abs();
        (-top..=top).filter(|t| t % 2 != 0).map(HalfInt).collect()
    }
}

impl TryFrom<f64> for HalfInt {
    type Error = Error;

    fn try_from(k: f64) -> Result<Self> {
        let twice = 2.0 * k;
        if !twice.is_finite() || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::InvalidMode(k));
        }
        HalfInt::from_twice(twice.round() as i32).map_err(|_| Error::InvalidMode(k))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2", self.0)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(num) = s.strip_suffix("/2") {
            let twice: i32 = num
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("not a half-integer: {s:?}")))?;
            return HalfInt::from_twice(twice);
        }
        let v: f64 = s
            .parse()
            .map_err(|_| Error::invalid(format!("not a half-integer: {s:?}")))?;
        HalfInt::try_from(v)
    }
}

/// A topological 2-sphere `dt² + f(t)² dθ²`, `t ∈ [0, L]`.
#[derive(Debug, Clone)]
pub struct RevolutionSurface {
    profile: CubicHermite,
    pole_slopes: (f64, f64),
    cell: f64,
}

impl RevolutionSurface {
    /// Build from samples of `f` and `f'` on a strictly increasing grid
    /// starting at the north pole `t = 0`.
    pub fn from_samples(t: Vec<f64>, f: Vec<f64>, df: Vec<f64>) -> Result<Self> {
        if t.len() < 3 {
            return Err(Error::invalid("profile needs at least three samples"));
        }
        if t[0] != 0.0 {
            return Err(Error::invalid("profile grid must start at t = 0"));
        }
        let length = *t.last().unwrap();
        if !(length > 0.0) {
            return Err(Error::invalid("profile length must be positive"));
        }
        let n = t.len();
        if let Some(i) = (1..n - 1).find(|&i| !(f[i] > 0.0)) {
            return Err(Error::invalid(format!(
                "profile must be positive in the interior; f({}) = {}",
                t[i], f[i]
            )));
        }
        let pole_tol = 1e-10 * length;
        if f[0].abs() > pole_tol || f[n - 1].abs() > pole_tol {
            return Err(Error::invalid("profile must vanish at both poles"));
        }
        let pole_slopes = (df[0], df[n - 1]);
        if (pole_slopes.0 - 1.0).abs() > POLE_SLOPE_TOL || (pole_slopes.1 + 1.0).abs() > POLE_SLOPE_TOL {
            return Err(Error::invalid(format!(
                "pole slopes {pole_slopes:?} violate the smooth closing condition (1, -1)"
            )));
        }
        let cell = t.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        let profile = CubicHermite::new(t, f, df)?;
        Ok(Self {
            profile,
            pole_slopes,
            cell,
        })
    }

    /// Build from an analytic profile sampled on `samples` uniform points.
    pub fn from_fn(
        length: f64,
        samples: usize,
        f: impl Fn(f64) -> f64,
        df: impl Fn(f64) -> f64,
    ) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::invalid("profile length must be positive"));
        }
        let h = length / (samples - 1) as f64;
        let t: Vec<f64> = (0..samples).map(|i| i as f64 * h).collect();
        let mut fv: Vec<f64> = t.iter().map(|&x| f(x)).collect();
        let dfv: Vec<f64> = t.iter().map(|&x| df(x)).collect();
        fv[0] = 0.0;
        fv[samples - 1] = 0.0;
        let mut t = t;
        t[samples - 1] = length;
        Self::from_samples(t, fv, dfv)
    }

    /// Build from bare `(t, f)` samples, e.g. read from CSV. The closing
    /// condition `f'(0) = 1`, `f'(L) = -1` is imposed as the clamped end
    /// condition of an interpolating spline; the data must be consistent
    /// with it to within 1e-2.
    pub fn from_sampled_profile(t: Vec<f64>, f: Vec<f64>) -> Result<Self> {
        if t.len() != f.len() || t.len() < 4 {
            return Err(Error::invalid("profile needs at least four (t, f) rows"));
        }
        let (s0, s1) = estimate_end_slopes(&t, &f)?;
        if (s0 - 1.0).abs() > SAMPLED_POLE_SLOPE_TOL || (s1 + 1.0).abs() > SAMPLED_POLE_SLOPE_TOL {
            return Err(Error::invalid(format!(
                "sampled profile does not close smoothly: end slopes ({s0:.4}, {s1:.4})"
            )));
        }
        let spline = CubicSpline::clamped(t.clone(), f.clone(), 1.0, -1.0)?;
        let mut df: Vec<f64> = t.iter().map(|&x| spline.eval(x).d1).collect();
        let n = df.len();
        df[0] = 1.0;
        df[n - 1] = -1.0;
        let mut f = f;
        f[0] = 0.0;
        f[n - 1] = 0.0;
        Self::from_samples(t, f, df)
    }

    /// Read a two-column `t,f` CSV (header optional).
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_path(path)?;
        let mut t = Vec::new();
        let mut f = Vec::new();
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            if record.len() < 2 {
                return Err(Error::Parse {
                    pointer: format!("{}:{}", path.display(), line + 1),
                    message: "expected two columns t,f".into(),
                });
            }
            match (record[0].parse::<f64>(), record[1].parse::<f64>()) {
                (Ok(a), Ok(b)) => {
                    t.push(a);
                    f.push(b);
                }
                // header row
                _ if line == 0 => continue,
                _ => {
                    return Err(Error::Parse {
                        pointer: format!("{}:{}", path.display(), line + 1),
                        message: "non-numeric entry".into(),
                    })
                }
            }
        }
        Self::from_sampled_profile(t, f)
    }

    /// Rescale the metric by `c²`: `t ↦ c t`, `f ↦ c f`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::invalid("scale factor must be positive"));
        }
        let t = self.profile.nodes().iter().map(|x| c * x).collect();
        let f = self.profile.values().iter().map(|x| c * x).collect();
        Self::from_samples(t, f, self.profile.slopes().to_vec())
    }

    pub fn length(&self) -> f64 {
        *self.profile.nodes().last().unwrap()
    }

    pub fn pole_slopes(&self) -> (f64, f64) {
        self.pole_slopes
    }

    pub fn nodes(&self) -> &[f64] {
        self.profile.nodes()
    }

    pub fn values(&self) -> &[f64] {
        self.profile.values()
    }

    /// Largest sample spacing.
    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn eval(&self, t: f64) -> Jet {
        self.profile.eval(t)
    }

    pub fn f(&self, t: f64) -> f64 {
        self.profile.eval(t).value
    }

    /// `2π ∫ f dt`, integrating the cubic Hermite interpolant exactly.
    pub fn area(&self) -> f64 {
        2.0 * PI * self.profile.integral()
    }

    /// `K = -f''/f` by a central second difference with step equal to the
    /// sample cell.
    pub fn gauss_curvature(&self, t: f64) -> Result<f64> {
        let h = self.cell;
        if t < h || t > self.length() - h {
            return Err(Error::PoleProximity { t, cell: h });
        }
        let f0 = self.f(t);
        let second = (self.f(t + h) - 2.0 * f0 + self.f(t - h)) / (h * h);
        Ok(-second / f0)
    }

    /// Like [`gauss_curvature`](Self::gauss_curvature), but near a pole the
    /// value is linearly extrapolated from the two closest admissible points.
    pub fn gauss_curvature_extrapolated(&self, t: f64) -> Result<f64> {
        let h = self.cell;
        let length = self.length();
        if t >= h && t <= length - h {
            return self.gauss_curvature(t);
        }
        let (t1, t2) = if t < h { (h, 2.0 * h) } else { (length - h, length - 2.0 * h) };
        let k1 = self.gauss_curvature(t1)?;
        let k2 = self.gauss_curvature(t2)?;
        Ok(k1 + (k2 - k1) * (t - t1) / (t2 - t1))
    }

    /// Minimum and maximum of `K` over interior sample nodes.
    pub fn gauss_curvature_range(&self) -> (f64, f64) {
        let nodes = self.nodes();
        let h = self.cell;
        let length = self.length();
        nodes
            .iter()
            .filter(|&&t| t >= h && t <= length - h)
            .filter_map(|&t| self.gauss_curvature(t).ok())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), k| (lo.min(k), hi.max(k)))
    }
}

/// Round sphere of radius `r`: `L = π r`, `f(t) = r sin(t / r)`.
pub fn sphere_profile(r: f64) -> Result<RevolutionSurface> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid(format!("sphere radius must be positive, got {r}")));
    }
    RevolutionSurface::from_fn(PI * r, DEFAULT_SAMPLES, |t| r * (t / r).sin(), |t| (t / r).cos())
}

/// Spheroid `(x² + y²)/a² + z²/c² = 1`, arclength-parametrized along the
/// meridian and sampled on `n` uniform points.
pub fn spheroid_profile(a: f64, c: f64, n: usize) -> Result<RevolutionSurface> {
    if !(a > 0.0 && c > 0.0) || !a.is_finite() || !c.is_finite() {
        return Err(Error::invalid(format!("spheroid semi-axes must be positive, got a={a}, c={c}")));
    }
    if n < 16 {
        return Err(Error::invalid(format!("spheroid grid needs n >= 16, got {n}")));
    }
    // meridian (a sin φ, c cos φ); ds/dφ = sqrt(a² cos² φ + c² sin² φ)
    let speed = |phi: f64| (a * a * phi.cos().powi(2) + c * c * phi.sin().powi(2)).sqrt();
    let length = gauss_legendre(speed, 0.0, PI, 256);
    let dphi_dt = |phi: f64| 1.0 / speed(phi);

    let h = length / (n - 1) as f64;
    let substeps = 16;
    let dt = h / substeps as f64;
    let mut phis = Vec::with_capacity(n);
    let mut phi = 0.0_f64;
    phis.push(phi);
    for _ in 1..n {
        for _ in 0..substeps {
            let k1 = dphi_dt(phi);
            let k2 = dphi_dt(phi + 0.5 * dt * k1);
            let k3 = dphi_dt(phi + 0.5 * dt * k2);
            let k4 = dphi_dt(phi + dt * k3);
            phi += dt * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
        }
        phis.push(phi);
    }
    let drift = (phis[n - 1] - PI).abs();
    if drift > 1e-9 {
        return Err(Error::numerical(
            "spheroid reparametrization",
            format!("meridian angle at t = L misses π by {drift:e}"),
        ));
    }
    phis[n - 1] = PI;

    let mut t: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
    t[n - 1] = length;
    let mut f: Vec<f64> = phis.iter().map(|p| a * p.sin()).collect();
    f[0] = 0.0;
    f[n - 1] = 0.0;
    let df: Vec<f64> = phis.iter().map(|&p| a * p.cos() / speed(p)).collect();
    RevolutionSurface::from_samples(t, f, df)
}

/// The area of a surface (free-function form).
pub fn area(s: &RevolutionSurface) -> f64 {
    s.area()
}

/// Discretized Dirac operator restricted to one Fourier mode.
#[derive(Debug, Clone)]
pub struct ModeProblem {
    pub k: HalfInt,
    pub n: usize,
    /// Site spacing `L / (2n + 1)`.
    pub spacing: f64,
    /// Off-diagonal of the `2n × 2n` symmetric tridiagonal matrix.
    pub off_diagonal: Vec<f64>,
}

impl ModeProblem {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// Dense copy of the matrix (for inspection and tests).
    pub fn dense(&self) -> Vec<Vec<f64>> {
        let m = self.dim();
        let mut a = vec![vec![0.0; m]; m];
        for (i, &e) in self.off_diagonal.iter().enumerate() {
            a[i][i + 1] = e;
            a[i + 1][i] = e;
        }
        a
    }

    /// Full spectrum, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let diag = vec![0.0; self.dim()];
        symmetric_eigenvalues(&diag, &self.off_diagonal)
    }

    /// Up to `count` eigenvalues on each side of zero, ascending, by Sturm
    /// bisection. Much cheaper than [`Self::eigenvalues`] for large `n`.
    pub fn eigenvalues_near_zero(&self, count: usize) -> Result<Vec<f64>> {
        let diag = vec![0.0; self.dim()];
        let first_pos = count_below(&diag, &self.off_diagonal, f64::MIN_POSITIVE);
        let lo = first_pos.saturating_sub(count);
        let hi = (first_pos + count).min(self.dim());
        let window: Vec<f64> = (lo..hi)
            .map(|i| bisect_eigenvalue(&diag, &self.off_diagonal, i, 1e-15))
            .collect();
        if window.iter().any(|x| !x.is_finite()) {
            return Err(Error::numerical("sturm bisection", "non-finite eigenvalue"));
        }
        Ok(window)
    }
}

/// Assemble the mode-`k` operator on a staggered grid with `2n` interior sites.
///
/// Derivative couplings are central differences across neighbouring sites
/// and the `k/f` term is evaluated at the midpoint between them, so every
/// coupling is shared by exactly one pair of sites and the matrix is
/// symmetric by construction. No site sits on a pole.
///
/// For `k > 0` the `u` component occupies odd sites; for `k < 0` the layout
/// is mirrored. Either way the component that vanishes like the square root
/// of the distance to a pole is the one adjacent to that pole.
pub fn build_mode_problem(s: &RevolutionSurface, k: HalfInt, n: usize) -> Result<ModeProblem> {
    if n < 64 {
        return Err(Error::invalid(format!("mode grid needs n >= 64, got {n}")));
    }
    let m = 2 * n;
    let spacing = s.length() / (m + 1) as f64;
    let kv = k.value();
    let parity = if kv > 0.0 { 1.0 } else { -1.0 };
    let off_diagonal = (1..m)
        .map(|j| {
            let mid = (j as f64 + 0.5) * spacing;
            let sign = if j % 2 == 1 { parity } else { -parity };
            sign / (2.0 * spacing) + kv / (2.0 * s.f(mid))
        })
        .collect();
    Ok(ModeProblem {
        k,
        n,
        spacing,
        off_diagonal,
    })
}

/// Eigenvalues of the Dirac operator near zero, collected over modes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "SpectrumRecord", try_from = "SpectrumRecord")]
pub struct Spectrum {
    /// Union over modes, ascending.
    pub eigenvalues: Vec<f64>,
    pub per_mode: BTreeMap<HalfInt, Vec<f64>>,
    /// Smallest positive eigenvalue.
    pub lambda1: f64,
    /// Number of modes/eigenvalues sharing `lambda1` (relative 1e-6).
    pub multiplicity: usize,
    /// Smallest `|λ|` among computed values; bounded away from zero on spheres.
    pub min_abs: f64,
    /// `|λ1(n) - λ1(2n)|`.
    pub error_estimate: f64,
    pub n: usize,
    pub k_max: HalfInt,
}

#[derive(Serialize, Deserialize)]
struct SpectrumRecord {
    lambda1: f64,
    eigenvalues: Vec<f64>,
    per_mode: BTreeMap<String, Vec<f64>>,
    error_estimate: f64,
    multiplicity: usize,
    min_abs_eigenvalue: f64,
    n: usize,
    k_max: String,
}

impl From<Spectrum> for SpectrumRecord {
    fn from(s: Spectrum) -> Self {
        SpectrumRecord {
            lambda1: s.lambda1,
            eigenvalues: s.eigenvalues,
            per_mode: s.per_mode.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            error_estimate: s.error_estimate,
            multiplicity: s.multiplicity,
            min_abs_eigenvalue: s.min_abs,
            n: s.n,
            k_max: s.k_max.to_string(),
        }
    }
}

impl TryFrom<SpectrumRecord> for Spectrum {
    type Error = Error;

    fn try_from(r: SpectrumRecord) -> Result<Self> {
        let per_mode = r
            .per_mode
            .into_iter()
            .map(|(k, v)| Ok((k.parse::<HalfInt>()?, v)))
            .collect::<Result<_>>()?;
        Ok(Spectrum {
            eigenvalues: r.eigenvalues,
            per_mode,
            lambda1: r.lambda1,
            multiplicity: r.multiplicity,
            min_abs: r.min_abs_eigenvalue,
            error_estimate: r.error_estimate,
            n: r.n,
            k_max: r.k_max.parse()?,
        })
    }
}

impl Spectrum {
    /// Distinct positive eigenvalues (values closer than `rel_tol` merged).
    pub fn distinct_positive(&self, rel_tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for &x in self.eigenvalues.iter().filter(|&&x| x > 0.0) {
            match out.last() {
                Some(&last) if (x - last).abs() <= rel_tol * x => {}
                _ => out.push(x),
            }
        }
        out
    }

    /// Largest relative mismatch between the spectrum and its negation.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.eigenvalues.len();
        let scale = self.eigenvalues.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        (0..n)
            .map(|i| (self.eigenvalues[i] + self.eigenvalues[n - 1 - i]).abs())
            .fold(0.0, f64::max)
            / scale
    }
}

/// `count` eigenvalues on each side of zero for one mode.
fn mode_window(s: &RevolutionSurface, k: HalfInt, n: usize, count: usize) -> Result<Vec<f64>> {
    build_mode_problem(s, k, n)?
        .eigenvalues_near_zero(count)
        .map_err(|e| Error::numerical(format!("mode k = {k}, n = {n}"), e.to_string()))
}

fn smallest_positive(values: &[f64]) -> f64 {
    values.iter().copied().filter(|&x| x > 0.0).fold(f64::INFINITY, f64::min)
}

/// Spectrum over all modes `|k| <= k_max` at grid size `n`, with a
/// discretization error estimate from a second solve at `2n`.
pub fn dirac_spectrum(
    s: &RevolutionSurface,
    k_max: HalfInt,
    n: usize,
    count_per_mode: usize,
) -> Result<Spectrum> {
    if k_max.twice() < 1 {
        return Err(Error::invalid("k_max must be at least 1/2"));
    }
    if count_per_mode == 0 {
        return Err(Error::invalid("count_per_mode must be positive"));
    }
    let modes = HalfInt::modes_up_to(k_max);
    let coarse: Vec<(HalfInt, Vec<f64>)> = modes
        .par_iter()
        .map(|&k| mode_window(s, k, n, count_per_mode).map(|w| (k, w)))
        .collect::<Result<_>>()?;
    let fine_lambda1 = modes
        .par_iter()
        .map(|&k| mode_window(s, k, 2 * n, 1).map(|w| smallest_positive(&w)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);

    let mut eigenvalues: Vec<f64> = coarse.iter().flat_map(|(_, w)| w.iter().copied()).collect();
    eigenvalues.sort_by(f64::total_cmp);
    let lambda1 = smallest_positive(&eigenvalues);
    if !lambda1.is_finite() {
        return Err(Error::numerical("dirac spectrum", "no positive eigenvalue found"));
    }
    let multiplicity = eigenvalues
        .iter()
        .filter(|&&x| (x - lambda1).abs() <= 1e-6 * lambda1)
        .count();
    let min_abs = eigenvalues.iter().fold(f64::INFINITY, |m, x| m.min(x.abs()));
    Ok(Spectrum {
        eigenvalues,
        per_mode: coarse.into_iter().collect(),
        lambda1,
        multiplicity,
        min_abs,
        error_estimate: (lambda1 - fine_lambda1).abs(),
        n,
        k_max,
    })
}

/// First positive eigenvalue over modes up to `k_max` at a single grid size.
pub fn lambda1_at(s: &RevolutionSurface, k_max: HalfInt, n: usize) -> Result<f64> {
    let modes = HalfInt::modes_up_to(k_max);
    Ok(modes
        .par_iter()
        .map(|&k| mode_window(s, k, n, 1).map(|w| smallest_positive(&w)))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min))
}

/// Ladder start and number of allowed refinements.
const LADDER_START: usize = 128;
const LADDER_REFINEMENTS: usize = 5;
const LADDER_REL_TOL: f64 = 1e-4;

/// Converged first eigenvalue with the difference of the last two rungs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lambda1Estimate {
    pub value: f64,
    pub error_estimate: f64,
    pub n: usize,
}

/// First positive eigenvalue with `k_max = 7/2`, doubling the grid until two
/// successive estimates agree to 1e-4 relative.
pub fn lambda1(s: &RevolutionSurface) -> Result<f64> {
    lambda1_estimate(s).map(|e| e.value)
}

pub fn lambda1_estimate(s: &RevolutionSurface) -> Result<Lambda1Estimate> {
    let mut n = LADDER_START;
    let mut prev = lambda1_at(s, DEFAULT_K_MAX, n)?;
    for _ in 0..LADDER_REFINEMENTS {
        n *= 2;
        let next = lambda1_at(s, DEFAULT_K_MAX, n)?;
        let diff = (next - prev).abs();
        if diff < LADDER_REL_TOL * next {
            return Ok(Lambda1Estimate {
                value: next,
                error_estimate: diff,
                n,
            });
        }
        prev = next;
    }
    Err(Error::numerical(
        "lambda1 resolution ladder",
        format!("no convergence after {LADDER_REFINEMENTS} refinements (last n = {n}, λ1 = {prev})"),
    ))
}
