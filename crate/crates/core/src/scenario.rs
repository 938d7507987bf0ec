//! Scenario files, pipeline orchestration and report emission.
//!
//! A scenario names a data source (initial data or a bare surface), the
//! domain `[ρ_min, ρ_b]`, and the tasks to run. Tasks execute in dependency
//! order and fail independently; the report records either a result or a
//! structured error for every requested task.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::bounds::{verify_embedded, verify_slice, verify_surface, BoundReport, Tolerances, VerifyOptions};
use crate::dirac::{dirac_spectrum, sphere_profile, spheroid_profile, HalfInt, RevolutionSurface, Spectrum, DEFAULT_K_MAX};
use crate::embedded::{induced_surface, StarShape};
use crate::error::{Error, Result};
use crate::initial_data::{constraint_fields, dec_from_fields, make_family, ConstraintFields, DecReport, FamilyTag, Grid, SphericalDataSet};
use crate::jang::{boundary_identity_check, solve_jang_dirichlet, BoundaryIdentity, JangSolution, SolverParams};
use crate::slices::{horizon_scan, slice_table, write_slices_csv, HorizonRoot, SphereSlice};

pub const SCHEMA_VERSION: u32 = 1;

/// Rows in the slice table of the horizon task.
const SLICE_TABLE_ROWS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Constraints,
    Horizons,
    Jang,
    Spectrum,
    Verify,
}

/// A bare sphere of revolution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Sphere { radius: f64 },
    Spheroid {
        a: f64,
        c: f64,
        #[serde(default = "default_surface_samples")]
        n: usize,
    },
    Csv { path: PathBuf },
}

fn default_surface_samples() -> usize {
    crate::dirac::DEFAULT_SAMPLES
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<RevolutionSurface> {
        match self {
            SurfaceSpec::Sphere { radius } => sphere_profile(*radius),
            SurfaceSpec::Spheroid { a, c, n } => spheroid_profile(*a, *c, *n),
            SurfaceSpec::Csv { path } => RevolutionSurface::from_csv(path),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Initial {
        tag: FamilyTag,
        grid: Grid,
        csv: Option<PathBuf>,
        embedded: Option<StarShape>,
    },
    Surface(SurfaceSpec),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Numeric {
    pub n: usize,
    pub k_max: HalfInt,
    pub tol: f64,
    pub jang_n: usize,
    pub count_per_mode: usize,
}

impl Default for Numeric {
    fn default() -> Self {
        Self {
            n: 1024,
            k_max: DEFAULT_K_MAX,
            tol: crate::bounds::EQUALITY_REL_TOL,
            jang_n: SolverParams::default().n,
            count_per_mode: 4,
        }
    }
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub data: DataSource,
    pub domain: Option<(f64, f64)>,
    pub tasks: Vec<Task>,
    pub numeric: Numeric,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(default)]
    schema: Option<u32>,
    name: String,
    data: RawData,
    #[serde(default)]
    domain: Option<[f64; 2]>,
    tasks: Vec<Task>,
    #[serde(default)]
    numeric: RawNumeric,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawData {
    family: Option<String>,
    params: Option<Value>,
    grid: Option<Grid>,
    csv: Option<PathBuf>,
    embedded: Option<StarShape>,
    surface: Option<SurfaceSpec>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawNumeric {
    n: Option<usize>,
    #[serde(default, deserialize_with = "half_int_opt")]
    k_max: Option<HalfInt>,
    tol: Option<f64>,
    jang_n: Option<usize>,
    count_per_mode: Option<usize>,
}

fn half_int_opt<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Option<HalfInt>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }
    let parsed = match Option::<Repr>::deserialize(de)? {
        None => return Ok(None),
        Some(Repr::Num(v)) => HalfInt::try_from(v),
        Some(Repr::Text(s)) => s.parse(),
    };
    parsed.map(Some).map_err(serde::de::Error::custom)
}

/// `data.params.m` or `tasks[2]` as a JSON pointer.
fn pointer_of(path: &str) -> String {
    if path == "." || path.is_empty() {
        return String::new();
    }
    path.split('.')
        .flat_map(|seg| seg.split('['))
        .filter(|seg| !seg.is_empty())
        .map(|seg| format!("/{}", seg.trim_end_matches(']')))
        .collect()
}

fn to_parse_error(prefix: &str, path: &str, message: String) -> Error {
    let base = format!("{prefix}{}", pointer_of(path));
    // point at the missing key rather than its parent
    let pointer = match message.strip_prefix("missing field `").and_then(|m| m.split('`').next()) {
        Some(field) => format!("{base}/{field}"),
        None if base.is_empty() => "/".to_string(),
        None => base,
    };
    Error::Parse { pointer, message }
}

fn family_params<T: serde::de::DeserializeOwned>(params: &Option<Value>) -> Result<T> {
    let value = params.clone().unwrap_or(Value::Object(Default::default()));
    serde_path_to_error::deserialize(value)
        .map_err(|e| to_parse_error("/data/params", &e.path().to_string(), e.inner().to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MassParam {
    m: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RadiusParam {
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NoParams {}

fn family_tag(name: &str, params: &Option<Value>) -> Result<FamilyTag> {
    Ok(match name {
        "euclidean" => {
            family_params::<NoParams>(params)?;
            FamilyTag::Euclidean
        }
        "hyperbolic_unit" => {
            family_params::<NoParams>(params)?;
            FamilyTag::HyperbolicUnit
        }
        "hyperbolic" => FamilyTag::Hyperbolic {
            radius: family_params::<RadiusParam>(params)?.radius,
        },
        "schwarzschild_isotropic" => FamilyTag::SchwarzschildIsotropic {
            m: family_params::<MassParam>(params)?.m,
        },
        "round_s3" => FamilyTag::RoundS3 {
            radius: family_params::<RadiusParam>(params)?.radius,
        },
        "custom" => FamilyTag::Custom,
        "maximal_slice_custom" => FamilyTag::MaximalSliceCustom,
        other => return Err(Error::Validation(format!("unknown family {other:?}"))),
    })
}

/// Parse and validate scenario JSON. Relative CSV paths resolve against
/// `base_dir`.
pub fn parse_scenario(text: &str, base_dir: &Path) -> Result<Scenario> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawScenario = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| to_parse_error("", &e.path().to_string(), e.inner().to_string()))?;
    de.end().map_err(|e| Error::Parse {
        pointer: "/".into(),
        message: e.to_string(),
    })?;

    if let Some(v) = raw.schema {
        if v != SCHEMA_VERSION {
            return Err(Error::Validation(format!("unsupported schema version {v}")));
        }
    }
    if raw.tasks.is_empty() {
        return Err(Error::Validation("tasks must not be empty".into()));
    }
    let tasks: Vec<Task> = raw.tasks.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();

    let defaults = Numeric::default();
    let numeric = Numeric {
        n: raw.numeric.n.unwrap_or(defaults.n),
        k_max: raw.numeric.k_max.unwrap_or(defaults.k_max),
        tol: raw.numeric.tol.unwrap_or(defaults.tol),
        jang_n: raw.numeric.jang_n.unwrap_or(defaults.jang_n),
        count_per_mode: raw.numeric.count_per_mode.unwrap_or(defaults.count_per_mode),
    };
    if numeric.n < 64
        || numeric.jang_n < 16
        || !(numeric.tol > 0.0)
        || numeric.k_max.twice() < 1
        || numeric.count_per_mode == 0
    {
        return Err(Error::Validation(format!("invalid numeric settings: {numeric:?}")));
    }

    let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base_dir.join(p) };
    let domain = raw.domain.map(|[lo, hi]| (lo, hi));
    let d = &raw.data;
    let data = match (&d.family, &d.surface) {
        (Some(_), Some(_)) => {
            return Err(Error::Validation("data may name a family or a surface, not both".into()))
        }
        (None, None) => {
            return Err(Error::Parse {
                pointer: "/data/family".into(),
                message: "missing field `family` (or `surface`)".into(),
            })
        }
        (None, Some(surface)) => {
            if d.params.is_some() || d.grid.is_some() || d.csv.is_some() || d.embedded.is_some() {
                return Err(Error::Validation("surface data takes no family settings".into()));
            }
            if let Some(t) = tasks.iter().find(|t| !matches!(t, Task::Spectrum | Task::Verify)) {
                return Err(Error::Validation(format!("task {t:?} needs initial data, not a bare surface")));
            }
            let surface = match surface {
                SurfaceSpec::Csv { path } => SurfaceSpec::Csv { path: resolve(path) },
                other => other.clone(),
            };
            DataSource::Surface(surface)
        }
        (Some(name), None) => {
            let tag = family_tag(name, &d.params)?;
            let (lo, hi) = domain.ok_or_else(|| Error::Parse {
                pointer: "/domain".into(),
                message: "missing field `domain`".into(),
            })?;
            if !(lo > 0.0 && hi > lo) {
                return Err(Error::Validation(format!("domain [{lo}, {hi}] needs 0 < rho_min < rho_b")));
            }
            let custom = matches!(tag, FamilyTag::Custom | FamilyTag::MaximalSliceCustom);
            if custom != d.csv.is_some() {
                return Err(Error::Validation(if custom {
                    "custom families need a csv file".into()
                } else {
                    "csv data is only read by custom families".into()
                }));
            }
            let grid = d.grid.unwrap_or(Grid {
                rho_min: lo,
                rho_max: hi,
                n: numeric.n,
            });
            grid.validate()?;
            // a custom grid comes from the csv and is checked after loading
            if !custom && (lo < grid.rho_min || hi > grid.rho_max) {
                return Err(Error::Validation(format!(
                    "domain [{lo}, {hi}] not within grid [{}, {}]",
                    grid.rho_min, grid.rho_max
                )));
            }
            if let Some(shape) = &d.embedded {
                shape.validate()?;
                let (s_lo, s_hi) = shape.extent();
                if s_lo <= lo || s_hi > hi {
                    return Err(Error::Validation(format!(
                        "embedded surface spans [{s_lo}, {s_hi}], outside the domain ({lo}, {hi}]"
                    )));
                }
            }
            DataSource::Initial {
                tag,
                grid,
                csv: d.csv.as_deref().map(resolve),
                embedded: d.embedded,
            }
        }
    };
    Ok(Scenario {
        name: raw.name,
        data,
        domain,
        tasks,
        numeric,
    })
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_scenario(&text, path.parent().unwrap_or(Path::new(".")))
}

/// Scenario files shipped with the library, as `(name, json)`.
pub const BUILTIN_SCENARIOS: &[(&str, &str)] = &[
    ("euclidean_ball", include_str!("../scenarios/euclidean_ball.json")),
    ("cap_r0.5", include_str!("../scenarios/cap_r0.5.json")),
    ("cap_r1", include_str!("../scenarios/cap_r1.json")),
    ("cap_r2", include_str!("../scenarios/cap_r2.json")),
    ("schwarzschild_exterior", include_str!("../scenarios/schwarzschild_exterior.json")),
    ("schwarzschild_horizon", include_str!("../scenarios/schwarzschild_horizon.json")),
    ("round_s3_toy", include_str!("../scenarios/round_s3_toy.json")),
    ("spheroid_1.5", include_str!("../scenarios/spheroid_1.5.json")),
    ("spheroid_2", include_str!("../scenarios/spheroid_2.json")),
    ("flat_round", include_str!("../scenarios/flat_round.json")),
    ("flat_oval", include_str!("../scenarios/flat_oval.json")),
    ("hyperbolic_round", include_str!("../scenarios/hyperbolic_round.json")),
    ("hyperbolic_oval", include_str!("../scenarios/hyperbolic_oval.json")),
];

pub fn builtin_scenario(name: &str) -> Result<Scenario> {
    let (_, text) = BUILTIN_SCENARIOS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Validation(format!("no built-in scenario {name:?}")))?;
    parse_scenario(text, Path::new("."))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Input,
    PreconditionViolation,
    NumericalFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskError {
    pub kind: ErrorKind,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<&Error> for TaskError {
    fn from(e: &Error) -> Self {
        let (kind, hypothesis, witness) = match e {
            Error::PreconditionViolation { hypothesis, witness } => {
                (ErrorKind::PreconditionViolation, Some(hypothesis.clone()), Some(witness.clone()))
            }
            Error::NumericalFailure { .. } => (ErrorKind::NumericalFailure, None, None),
            _ => (ErrorKind::Input, None, None),
        };
        TaskError {
            kind,
            message: e.to_string(),
            hypothesis,
            witness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome<T> {
    Ok { result: T },
    Error { error: TaskError },
}

impl<T> Outcome<T> {
    fn from_result(r: Result<T>) -> Self {
        match r {
            Ok(result) => Outcome::Ok { result },
            Err(e) => Self::failed(&e),
        }
    }

    fn failed(e: &Error) -> Self {
        Outcome::Error { error: e.into() }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Outcome::Ok { result } => Some(result),
            Outcome::Error { .. } => None,
        }
    }

    pub fn error(&self) -> Option<&TaskError> {
        match self {
            Outcome::Ok { .. } => None,
            Outcome::Error { error } => Some(error),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstraintsOutput {
    pub dec: DecReport,
    pub max_abs_j: f64,
    pub fields: ConstraintFields,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HorizonsOutput {
    pub interval: [f64; 2],
    pub roots: Vec<HorizonRoot>,
    pub slices: Vec<SphereSlice>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JangOutput {
    pub rho_b: f64,
    pub iterations: usize,
    pub residual_norm: f64,
    pub min_sy_margin: f64,
    pub max_abs_x: f64,
    pub max_abs_ghat_scalar_curvature: f64,
    /// Absent when the boundary is not untrapped.
    pub boundary_identity: Option<BoundaryIdentity>,
    pub solution: JangSolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub name: String,
    pub version: String,
    pub exit_status: i32,
    pub exit_reason: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Outcome<ConstraintsOutput>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizons: Option<Outcome<HorizonsOutput>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jang: Option<Outcome<JangOutput>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<Outcome<Spectrum>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<Outcome<BoundReport>>,
}

impl RunReport {
    fn new(name: &str) -> Self {
        RunReport {
            schema: SCHEMA_VERSION,
            name: name.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            exit_status: 0,
            exit_reason: String::new(),
            constraints: None,
            horizons: None,
            jang: None,
            spectrum: None,
            verify: None,
        }
    }

    pub fn errors(&self) -> Vec<&TaskError> {
        [
            self.constraints.as_ref().and_then(Outcome::error),
            self.horizons.as_ref().and_then(Outcome::error),
            self.jang.as_ref().and_then(Outcome::error),
            self.spectrum.as_ref().and_then(Outcome::error),
            self.verify.as_ref().and_then(Outcome::error),
        ]
        .into_iter()
        .flatten()
        .collect()
    }

    /// 0 all bounds hold, 1 numerical failure, 2 a bound check failed,
    /// 3 a hypothesis is violated, 4 input error. The most severe wins.
    fn settle_exit(&mut self) {
        let errors = self.errors();
        let first = |k: ErrorKind| errors.iter().find(|e| e.kind == k).map(|e| e.message.clone());
        let failed_bound = self.verify.as_ref().and_then(Outcome::ok).filter(|b| !b.all_hold());
        let (status, reason) = if let Some(m) = first(ErrorKind::Input) {
            (4, m)
        } else if let Some(m) = first(ErrorKind::PreconditionViolation) {
            (3, m)
        } else if let Some(b) = failed_bound {
            (2, format!("bound check failed: {:?}", b.flags))
        } else if let Some(m) = first(ErrorKind::NumericalFailure) {
            (1, m)
        } else {
            (0, "ok".to_string())
        };
        self.exit_status = status;
        self.exit_reason = reason;
    }

    fn fail_all(&mut self, tasks: &[Task], e: &Error) {
        for t in tasks {
            match t {
                Task::Constraints => self.constraints = Some(Outcome::failed(e)),
                Task::Horizons => self.horizons = Some(Outcome::failed(e)),
                Task::Jang => self.jang = Some(Outcome::failed(e)),
                Task::Spectrum => self.spectrum = Some(Outcome::failed(e)),
                Task::Verify => self.verify = Some(Outcome::failed(e)),
            }
        }
    }
}

fn build_data(tag: &FamilyTag, grid: &Grid, csv: &Option<PathBuf>) -> Result<SphericalDataSet> {
    match (tag, csv) {
        (FamilyTag::Custom, Some(p)) => SphericalDataSet::from_csv(p, false),
        (FamilyTag::MaximalSliceCustom, Some(p)) => SphericalDataSet::from_csv(p, true),
        _ => make_family(tag.clone(), *grid),
    }
}

pub fn verify_options(sc: &Scenario) -> VerifyOptions {
    VerifyOptions {
        jang: Some(SolverParams {
            n: sc.numeric.jang_n,
            ..SolverParams::default()
        }),
        tolerances: Tolerances {
            equality_rel: sc.numeric.tol,
            gauss_constant_rel: sc.numeric.tol,
            ..Tolerances::default()
        },
        ..VerifyOptions::default()
    }
}

fn run_surface(sc: &Scenario, spec: &SurfaceSpec, opts: &VerifyOptions, report: &mut RunReport) {
    let s = match spec.build() {
        Ok(s) => s,
        Err(e) => return report.fail_all(&sc.tasks, &e),
    };
    if sc.tasks.contains(&Task::Spectrum) {
        report.spectrum = Some(Outcome::from_result(dirac_spectrum(
            &s,
            sc.numeric.k_max,
            sc.numeric.n,
            sc.numeric.count_per_mode,
        )));
    }
    if sc.tasks.contains(&Task::Verify) {
        report.verify = Some(Outcome::from_result(verify_surface(&s, format!("{spec:?}"), opts)));
    }
}

fn run_jang(d: &SphericalDataSet, rho_b: f64, params: &SolverParams) -> Result<JangOutput> {
    let sol = solve_jang_dirichlet(d, rho_b, params)?;
    let boundary_identity = match boundary_identity_check(d, &sol) {
        Ok(b) => Some(b),
        Err(Error::PreconditionViolation { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(JangOutput {
        rho_b,
        iterations: sol.iterations,
        residual_norm: sol.residual_norm,
        min_sy_margin: sol.min_sy_margin(),
        max_abs_x: sol.max_abs_x(),
        max_abs_ghat_scalar_curvature: sol.max_abs_ghat_scalar(),
        boundary_identity,
        solution: sol,
    })
}

fn run_initial(
    sc: &Scenario,
    (tag, grid, csv, embedded): (&FamilyTag, &Grid, &Option<PathBuf>, &Option<StarShape>),
    opts: &VerifyOptions,
    report: &mut RunReport,
) {
    let wants = |t: Task| sc.tasks.contains(&t);
    let (lo, rho_b) = sc.domain.expect("data scenarios carry a domain");
    let d = match build_data(tag, grid, csv) {
        Ok(d) if lo < d.rho_min() || rho_b > d.rho_max() => {
            let e = Error::Validation(format!(
                "domain [{lo}, {rho_b}] not within data grid [{}, {}]",
                d.rho_min(),
                d.rho_max()
            ));
            return report.fail_all(&sc.tasks, &e);
        }
        Ok(d) => d,
        Err(e) => return report.fail_all(&sc.tasks, &e),
    };
    if wants(Task::Constraints) {
        report.constraints = Some(Outcome::from_result(constraint_fields(&d).map(|fields| ConstraintsOutput {
            dec: dec_from_fields(&fields),
            max_abs_j: fields.j_rad.iter().fold(0.0, |m, j| m.max(j.abs())),
            fields,
        })));
    }
    if wants(Task::Horizons) {
        let scan = || {
            Ok(HorizonsOutput {
                interval: [lo, rho_b],
                roots: horizon_scan(&d, lo, rho_b)?,
                slices: slice_table(&d, lo, rho_b, SLICE_TABLE_ROWS)?,
            })
        };
        report.horizons = Some(Outcome::from_result(scan()));
    }
    if wants(Task::Jang) {
        let params = opts.jang.unwrap_or_default();
        report.jang = Some(Outcome::from_result(run_jang(&d, rho_b, &params)));
    }
    if wants(Task::Spectrum) {
        let spectrum = || {
            let surface = match embedded {
                Some(shape) => induced_surface(&d, shape, opts.surface_samples)?,
                None => sphere_profile(d.at(rho_b).r)?,
            };
            dirac_spectrum(&surface, sc.numeric.k_max, sc.numeric.n, sc.numeric.count_per_mode)
        };
        report.spectrum = Some(Outcome::from_result(spectrum()));
    }
    if wants(Task::Verify) {
        report.verify = Some(Outcome::from_result(match embedded {
            Some(shape) => verify_embedded(&d, shape, opts),
            None => verify_slice(&d, rho_b, opts),
        }));
    }
}

/// Run every requested task.
pub fn run(sc: &Scenario) -> RunReport {
    run_with(sc, &verify_options(sc))
}

/// [`run`] with explicit verification options.
pub fn run_with(sc: &Scenario, opts: &VerifyOptions) -> RunReport {
    let mut report = RunReport::new(&sc.name);
    match &sc.data {
        DataSource::Surface(spec) => run_surface(sc, spec, opts, &mut report),
        DataSource::Initial { tag, grid, csv, embedded } => {
            run_initial(sc, (tag, grid, csv, embedded), opts, &mut report)
        }
    }
    report.settle_exit();
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    CsvBundle,
}

fn write_file(path: PathBuf, bytes: &[u8], written: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(())
}

fn pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| Error::numerical("serialization", e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn report_json(report: &RunReport) -> Result<String> {
    pretty(report)
}

fn constraints_csv(f: &ConstraintFields) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["rho", "R", "mu", "J_rad", "dec_margin"])?;
    for i in 0..f.rho.len() {
        w.write_record([f.rho[i], f.scalar_curvature[i], f.mu[i], f.j_rad[i], f.dec_margin[i]].map(|v| v.to_string()))?;
    }
    w.into_inner()
        .map_err(|e| Error::io("constraints.csv", e.into_error()))
}

/// Write the report (and for [`Format::CsvBundle`] the per-field tables)
/// into `dir`. Returns the files written.
pub fn emit(report: &RunReport, format: Format, dir: impl AsRef<Path>) -> Result<Vec<PathBuf>> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();
    write_file(dir.join("report.json"), report_json(report)?.as_bytes(), &mut written)?;
    if format == Format::Json {
        return Ok(written);
    }
    if let Some(c) = report.constraints.as_ref().and_then(Outcome::ok) {
        write_file(dir.join("constraints.csv"), &constraints_csv(&c.fields)?, &mut written)?;
    }
    if let Some(h) = report.horizons.as_ref().and_then(Outcome::ok) {
        let mut bytes = Vec::new();
        write_slices_csv(&h.slices, &mut bytes)?;
        write_file(dir.join("slices.csv"), &bytes, &mut written)?;
    }
    if let Some(j) = report.jang.as_ref().and_then(Outcome::ok) {
        let mut bytes = Vec::new();
        j.solution.write_csv(&mut bytes)?;
        write_file(dir.join("jang.csv"), &bytes, &mut written)?;
    }
    if let Some(s) = report.spectrum.as_ref().and_then(Outcome::ok) {
        write_file(dir.join("spectrum.json"), pretty(s)?.as_bytes(), &mut written)?;
    }
    Ok(written)
}
