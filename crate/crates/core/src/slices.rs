//! Coordinate spheres `Σ_ρ` inside spherically symmetric data: mean
//! curvature, null expansions and trapping classification.
//!
//! Orientation is fixed so that the unit sphere in flat space has `H = +2`.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::initial_data::SphericalDataSet;

/// Bisection stops once the bracket is narrower than this.
pub const ROOT_TOL: f64 = 1e-10;

/// Minimum number of samples used by [`horizon_scan`].
const SCAN_SAMPLES: usize = 4001;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Untrapped,
    FutureTrapped,
    PastTrapped,
    ApparentHorizon,
    Degenerate,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Untrapped => "untrapped",
            Classification::FutureTrapped => "future_trapped",
            Classification::PastTrapped => "past_trapped",
            Classification::ApparentHorizon => "apparent_horizon",
            Classification::Degenerate => "degenerate",
        }
    }
}

/// Extrinsic data of one coordinate sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereSlice {
    pub rho: f64,
    pub area_radius: f64,
    pub mean_curvature: f64,
    pub tr_k_sigma: f64,
    pub theta_plus: f64,
    pub theta_minus: f64,
    /// `|𝓗|² = θ₊ θ₋ = H² - (Tr_Σ K)²`.
    pub h_norm_sq: f64,
    pub classification: Classification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl SphereSlice {
    /// Length of the spacelike mean curvature vector, when it is spacelike.
    pub fn h_norm(&self) -> Option<f64> {
        (self.h_norm_sq > 0.0).then(|| self.h_norm_sq.sqrt())
    }

    pub fn area(&self) -> f64 {
        4.0 * std::f64::consts::PI * self.area_radius * self.area_radius
    }
}

/// Relative tolerance with an absolute floor of one.
pub fn default_tol(theta_plus: f64, theta_minus: f64) -> f64 {
    1e-8 * theta_plus.abs().max(theta_minus.abs()).max(1.0)
}

pub fn classify(theta_plus: f64, theta_minus: f64, tol: f64) -> Classification {
    let fut = theta_plus < -tol;
    let past = theta_minus < -tol;
    if fut && past {
        Classification::Degenerate
    } else if theta_plus.abs() <= tol || theta_minus.abs() <= tol {
        Classification::ApparentHorizon
    } else if fut {
        Classification::FutureTrapped
    } else if past {
        Classification::PastTrapped
    } else {
        Classification::Untrapped
    }
}

/// `(H, Tr_Σ K)` at `ρ`.
pub fn expansions_at(d: &SphericalDataSet, rho: f64) -> (f64, f64) {
    let p = d.at(rho);
    (2.0 * p.dr / (p.a * p.r), 2.0 * p.kappa_t)
}

pub fn slice(d: &SphericalDataSet, rho: f64) -> Result<SphereSlice> {
    let (lo, hi) = (d.rho_min(), d.rho_max());
    if !(rho >= lo && rho <= hi) {
        return Err(Error::invalid(format!("rho = {rho} outside the data grid [{lo}, {hi}]")));
    }
    let (h, t) = expansions_at(d, rho);
    let theta_plus = h + t;
    let theta_minus = h - t;
    // analytic families have exact derivatives; splines use estimated end slopes
    let warning = (d.is_sampled() && (rho - lo < d.cell() || hi - rho < d.cell()))
        .then(|| format!("rho = {rho} is within one cell of the grid edge; derivatives are one-sided"));
    Ok(SphereSlice {
        rho,
        area_radius: d.at(rho).r,
        mean_curvature: h,
        tr_k_sigma: t,
        theta_plus,
        theta_minus,
        h_norm_sq: theta_plus * theta_minus,
        classification: classify(theta_plus, theta_minus, default_tol(theta_plus, theta_minus)),
        warning,
    })
}

/// Which expansion vanishes at a root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expansion {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HorizonRoot {
    pub rho: f64,
    pub expansion: Expansion,
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    if glo == 0.0 {
        return lo;
    }
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn roots_of(g: impl Fn(f64) -> f64 + Sync, xs: &[f64]) -> Vec<f64> {
    let vals: Vec<f64> = xs.par_iter().map(|&x| g(x)).collect();
    let mut roots = Vec::new();
    for i in 0..xs.len() {
        if vals[i] == 0.0 {
            roots.push(xs[i]);
        } else if i + 1 < xs.len() && vals[i + 1] != 0.0 && (vals[i] < 0.0) != (vals[i + 1] < 0.0) {
            roots.push(bisect(&g, xs[i], xs[i + 1]));
        }
    }
    roots
}

/// All sign changes of `θ₊` and `θ₋` on `[lo, hi]`, refined by bisection.
///
/// The expansions are sampled on at least 4001 points; an empty result
/// certifies the absence of horizons up to that resolution.
pub fn horizon_scan(d: &SphericalDataSet, lo: f64, hi: f64) -> Result<Vec<HorizonRoot>> {
    if !(lo >= d.rho_min() && hi <= d.rho_max() && lo < hi) {
        return Err(Error::invalid(format!(
            "scan interval [{lo}, {hi}] not inside the data grid [{}, {}]",
            d.rho_min(),
            d.rho_max()
        )));
    }
    let n = SCAN_SAMPLES.max(d.len());
    let step = (hi - lo) / (n - 1) as f64;
    let mut xs: Vec<f64> = (0..n).map(|i| lo + i as f64 * step).collect();
    xs[n - 1] = hi;
    let plus = roots_of(
        |x| {
            let (h, t) = expansions_at(d, x);
            h + t
        },
        &xs,
    );
    let minus = roots_of(
        |x| {
            let (h, t) = expansions_at(d, x);
            h - t
        },
        &xs,
    );
    let mut roots: Vec<HorizonRoot> = plus
        .iter()
        .map(|&rho| HorizonRoot {
            rho,
            expansion: Expansion::Plus,
        })
        .collect();
    for &rho in &minus {
        match roots.iter_mut().find(|r| (r.rho - rho).abs() <= 10.0 * ROOT_TOL) {
            Some(r) => r.expansion = Expansion::Both,
            None => roots.push(HorizonRoot {
                rho,
                expansion: Expansion::Minus,
            }),
        }
    }
    roots.sort_by(|a, b| a.rho.total_cmp(&b.rho));
    Ok(roots)
}

/// Slices at `samples` evenly spaced radii over `[lo, hi]`.
pub fn slice_table(d: &SphericalDataSet, lo: f64, hi: f64, samples: usize) -> Result<Vec<SphereSlice>> {
    if samples < 2 {
        return Err(Error::invalid("slice table needs at least two samples"));
    }
    let step = (hi - lo) / (samples - 1) as f64;
    (0..samples)
        .map(|i| slice(d, if i + 1 == samples { hi } else { lo + i as f64 * step }))
        .collect()
}

/// Write `(rho, H, trK_sigma, theta_plus, theta_minus, class)` rows.
pub fn write_slices_csv<W: Write>(slices: &[SphereSlice], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["rho", "H", "trK_sigma", "theta_plus", "theta_minus", "class"])?;
    for s in slices {
        w.write_record([
            s.rho.to_string(),
            s.mean_curvature.to_string(),
            s.tr_k_sigma.to_string(),
            s.theta_plus.to_string(),
            s.theta_minus.to_string(),
            s.classification.as_str().to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv writer>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::initial_data::{make_family, FamilyTag, Grid};

    fn data(tag: FamilyTag, lo: f64, hi: f64) -> SphericalDataSet {
        make_family(tag, Grid::new(lo, hi, 256).unwrap()).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(2.0, 2.0, 1e-8), Classification::Untrapped);
        assert_eq!(classify(0.0, 3.0, 1e-8), Classification::ApparentHorizon);
        assert_eq!(classify(-1.0, 2.0, 1e-8), Classification::FutureTrapped);
        assert_eq!(classify(2.0, -1.0, 1e-8), Classification::PastTrapped);
        assert_eq!(classify(-1.0, -2.0, 1e-8), Classification::Degenerate);
    }

    #[test]
    fn unit_sphere_in_flat_space() {
        let d = data(FamilyTag::Euclidean, 0.01, 2.0);
        let s = slice(&d, 1.0).unwrap();
        assert_eq!(s.mean_curvature, 2.0);
        assert_eq!((s.theta_plus, s.theta_minus), (2.0, 2.0));
        assert_eq!(s.h_norm_sq, 4.0);
        assert_eq!(s.classification, Classification::Untrapped);
    }

    #[test]
    fn geodesic_sphere_in_hyperbolic_slice() {
        let d = data(FamilyTag::HyperbolicUnit, 0.01, 3.0);
        let s = slice(&d, 1.0).unwrap();
        assert!((s.mean_curvature - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(s.tr_k_sigma, 2.0);
        assert!((s.h_norm_sq - 4.0).abs() < 1e-12);
        assert_eq!(s.classification, Classification::Untrapped);
    }

    #[test]
    fn schwarzschild_throat_is_a_horizon() {
        let d = data(FamilyTag::SchwarzschildIsotropic { m: 1.0 }, 0.1, 2.0);
        let s = slice(&d, 0.5).unwrap();
        assert!(s.theta_plus.abs() < 1e-14 && s.theta_minus.abs() < 1e-14);
        assert_eq!(s.classification, Classification::ApparentHorizon);
        let roots = horizon_scan(&d, 0.1, 2.0).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].rho - 0.5).abs() < 1e-8);
        assert_eq!(roots[0].expansion, Expansion::Both);
    }

    #[test]
    fn scans_without_horizons() {
        let e = data(FamilyTag::Euclidean, 0.1, 2.0);
        assert!(horizon_scan(&e, 0.1, 2.0).unwrap().is_empty());
        let h = data(FamilyTag::HyperbolicUnit, 0.1, 3.0);
        assert!(horizon_scan(&h, 0.1, 3.0).unwrap().is_empty());
    }

    #[test]
    fn euclidean_expansions_decrease() {
        let d = data(FamilyTag::Euclidean, 0.1, 2.0);
        let table = slice_table(&d, 0.1, 2.0, 50).unwrap();
        for w in table.windows(2) {
            assert!(w[1].theta_plus < w[0].theta_plus);
            assert!((w[0].theta_plus - 2.0 / w[0].rho).abs() < 1e-12);
        }
    }

    #[test]
    fn slice_outside_grid_rejected() {
        let d = data(FamilyTag::Euclidean, 0.1, 2.0);
        assert!(slice(&d, 3.0).is_err());
        assert!(horizon_scan(&d, 0.0, 1.0).is_err());
    }

    #[test]
    fn csv_table_has_header_and_rows() {
        let d = data(FamilyTag::Euclidean, 0.1, 2.0);
        let table = slice_table(&d, 0.5, 1.0, 3).unwrap();
        let mut buf = Vec::new();
        write_slices_csv(&table, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("rho,H,trK_sigma,theta_plus,theta_minus,class\n"));
        assert_eq!(text.lines().count(), 4);
    }
}
