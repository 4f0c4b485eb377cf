//! Curve tracing, ray intersections, physical reconstruction and surveys.
//!
//! Every column solve scans `|sigma|` on a log-spaced grid, brackets sign
//! changes of the scalar locus function, refines each bracket with Brent and
//! keeps only roots whose relative complex residual passes the trace
//! tolerance. CPA columns are solved with the same `|sigma|` grid and the sign
//! applied afterwards, so SS and CPA traces mirror exactly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex_kernel::{bracket_samples, refine_root, DEFAULT_ROOT_TOL};
use crate::error::{Error, Result};
use crate::locus::{h_branch, locus_residual, locus_scalar, Branch, LocusKind};
use crate::medium::{energy_from_k, k_alpha, BarrierSpec, LevyIndex, UnitSystem};
use crate::scattering::transfer_matrix;

/// Columns with `|sigma|` below this are never reported.
pub const SIGMA_MIN: f64 = 1e-4;
/// Default relative residual accepted for a traced point.
pub const TRACE_TOL: f64 = 1e-8;
/// Relative `|M22|` (or `|M11|`) accepted by the physical oracle.
pub const ORACLE_TOL: f64 = 1e-7;
/// Threshold used by the asymptote estimator.
pub const ASYMPTOTE_SIGMA: f64 = 100.0;
/// Survey classification threshold on the relative residual.
pub const SURVEY_THRESHOLD: f64 = 1e-5;
pub const DEFAULT_N_MAX: i32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub trace: f64,
    pub root: f64,
    pub sigma_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { trace: TRACE_TOL, root: DEFAULT_ROOT_TOL, sigma_min: SIGMA_MIN }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("trace", self.trace), ("root", self.root), ("sigma_min", self.sigma_min)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("tolerance {name} = {v} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocusPoint {
    pub rho: f64,
    pub sigma: f64,
    pub n: i32,
    pub branch: Branch,
    pub kind: LocusKind,
    pub h: f64,
    pub residual_rel: f64,
}

/// Roots found on one vertical line together with anything that looked off.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ColumnSolve {
    pub points: Vec<LocusPoint>,
    pub anomalies: Vec<String>,
}

/// Log-spaced magnitudes from `lo` to `hi` inclusive, `steps` intervals.
pub fn log_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    let ratio = (hi / lo).ln();
    let mut grid: Vec<f64> = (0..=steps).map(|i| lo * (ratio * i as f64 / steps as f64).exp()).collect();
    grid[0] = lo;
    grid[steps] = hi;
    grid
}

/// All validated roots of the locus function on the line `rho = const`.
///
/// `window` is a signed sigma interval. Only the part lying on the kind's side
/// of the axis with `|sigma| >= sigma_min` is scanned; anything else yields an
/// empty result.
#[allow(clippy::too_many_arguments)]
pub fn solve_sigma_at_rho(
    rho: f64,
    alpha: LevyIndex,
    n: i32,
    branch: Branch,
    kind: LocusKind,
    window: (f64, f64),
    steps: usize,
    tol: &Tolerances,
) -> Result<ColumnSolve> {
    if steps < 16 {
        return Err(Error::InvalidParameter(format!("steps = {steps} is below 16")));
    }
    if !(window.0 < window.1) || !window.0.is_finite() || !window.1.is_finite() {
        return Err(Error::InvalidParameter(format!("invalid sigma window {window:?}")));
    }
    tol.validate()?;
    let sign = kind.sigma_sign();
    let (lo, hi) = if sign > 0.0 { (window.0, window.1) } else { (-window.1, -window.0) };
    let lo = lo.max(tol.sigma_min);
    if hi <= lo {
        return Ok(ColumnSolve::default());
    }
    Ok(solve_magnitudes(rho, alpha, n, branch, kind, &log_grid(lo, hi, steps), tol))
}

fn solve_magnitudes(
    rho: f64,
    alpha: LevyIndex,
    n: i32,
    branch: Branch,
    kind: LocusKind,
    grid: &[f64],
    tol: &Tolerances,
) -> ColumnSolve {
    let sign = kind.sigma_sign();
    let f = |s: f64| locus_scalar(kind, rho, sign * s, alpha, n, branch).unwrap_or(f64::NAN);
    let mut out = ColumnSolve::default();
    for bracket in bracket_samples(f, grid) {
        let s = match refine_root(f, bracket, tol.root) {
            Ok(s) => s,
            Err(e) => {
                out.anomalies.push(format!("rho={rho}: {e}"));
                continue;
            }
        };
        let sigma = sign * s;
        match validate(rho, sigma, alpha, n, branch, kind, tol) {
            Ok(Some(p)) => out.points.push(p),
            // sign change across a discontinuity of the scalar, not a root
            Ok(None) => {}
            Err(e) => out.anomalies.push(format!("rho={rho}, sigma={sigma}: {e}")),
        }
    }
    out
}

fn validate(
    rho: f64,
    sigma: f64,
    alpha: LevyIndex,
    n: i32,
    branch: Branch,
    kind: LocusKind,
    tol: &Tolerances,
) -> Result<Option<LocusPoint>> {
    let residual = locus_residual(kind, rho, sigma, alpha, n, branch)?.relative();
    if !(residual < tol.trace) {
        let scalar = locus_scalar(kind, rho, sigma, alpha, n, branch)?;
        if scalar.abs() < 1e-6 {
            return Err(Error::Domain(format!("scalar root rejected by residual {residual:e}")));
        }
        return Ok(None);
    }
    let h = h_branch(rho, sigma, alpha, n, branch)?;
    Ok(Some(LocusPoint { rho, sigma, n, branch, kind, h, residual_rel: residual }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSettings {
    pub rho_min: f64,
    pub rho_max: f64,
    pub resolution: usize,
    pub sigma_max: f64,
    pub steps: usize,
    pub tolerances: Tolerances,
}

impl Default for TraceSettings {
    fn default() -> Self {
        Self {
            rho_min: -2.0,
            rho_max: 0.995,
            resolution: 200,
            sigma_max: 20.0,
            steps: 2048,
            tolerances: Tolerances::default(),
        }
    }
}

impl TraceSettings {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if !(self.rho_min < self.rho_max) || !self.rho_min.is_finite() {
            return Err(Error::InvalidParameter(format!("empty rho range [{}, {}]", self.rho_min, self.rho_max)));
        }
        if self.rho_max >= 1.0 {
            return Err(Error::InvalidParameter(format!("rho_max = {} must stay below 1", self.rho_max)));
        }
        if self.resolution < 2 {
            return Err(Error::InvalidParameter("resolution must be at least 2".into()));
        }
        if self.steps < 16 {
            return Err(Error::InvalidParameter(format!("steps = {} is below 16", self.steps)));
        }
        if !(self.sigma_max > self.tolerances.sigma_min) || !self.sigma_max.is_finite() {
            return Err(Error::InvalidParameter(format!("sigma_max = {} must exceed sigma_min", self.sigma_max)));
        }
        Ok(())
    }

    pub fn rho_grid(&self) -> Vec<f64> {
        let m = self.resolution - 1;
        (0..=m)
            .map(|i| if i == m { self.rho_max } else { self.rho_min + (self.rho_max - self.rho_min) * i as f64 / m as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceMeta {
    pub alpha: LevyIndex,
    pub n: i32,
    pub branch: Branch,
    pub kind: LocusKind,
    pub settings: TraceSettings,
    /// Rho values of columns with no validated root.
    pub empty_columns: Vec<f64>,
    /// Point index ranges `[start, end)` of contiguous runs of columns.
    pub segments: Vec<[usize; 2]>,
    /// Validated roots beyond the one followed in each column.
    pub extra_roots: Vec<LocusPoint>,
    pub warnings: Vec<String>,
}

/// One locus branch: at most one point per column, ascending in rho.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveTrace {
    pub points: Vec<LocusPoint>,
    pub meta: TraceMeta,
}

impl CurveTrace {
    /// Sigma at a given column, if that column has a point.
    pub fn sigma_at(&self, rho: f64) -> Option<f64> {
        self.points.iter().find(|p| p.rho == rho).map(|p| p.sigma)
    }

    pub fn max_abs_sigma(&self) -> Option<f64> {
        self.points.iter().map(|p| p.sigma.abs()).reduce(f64::max)
    }
}

pub fn trace_curve(
    alpha: LevyIndex,
    n: i32,
    branch: Branch,
    kind: LocusKind,
    settings: &TraceSettings,
) -> Result<CurveTrace> {
    settings.validate()?;
    let rhos = settings.rho_grid();
    let grid = log_grid(settings.tolerances.sigma_min, settings.sigma_max, settings.steps);
    let columns: Vec<ColumnSolve> = rhos
        .par_iter()
        .map(|&rho| solve_magnitudes(rho, alpha, n, branch, kind, &grid, &settings.tolerances))
        .collect();

    let mut points = Vec::new();
    let mut meta = TraceMeta {
        alpha,
        n,
        branch,
        kind,
        settings: *settings,
        empty_columns: Vec::new(),
        segments: Vec::new(),
        extra_roots: Vec::new(),
        warnings: Vec::new(),
    };
    let mut previous: Option<f64> = None;
    let mut segment_start: Option<usize> = None;
    for (rho, column) in rhos.iter().zip(columns) {
        meta.warnings.extend(column.anomalies);
        if column.points.is_empty() {
            meta.empty_columns.push(*rho);
            if let Some(start) = segment_start.take() {
                meta.segments.push([start, points.len()]);
            }
            previous = None;
            continue;
        }
        let target = previous.unwrap_or(0.0);
        let pick = column
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.sigma - target).abs().total_cmp(&(b.1.sigma - target).abs()))
            .map(|(i, _)| i)
            .unwrap_or(0);
        for (i, p) in column.points.iter().enumerate() {
            if i != pick {
                meta.extra_roots.push(*p);
            }
        }
        let chosen = column.points[pick];
        previous = Some(chosen.sigma);
        segment_start.get_or_insert(points.len());
        points.push(chosen);
    }
    if let Some(start) = segment_start {
        meta.segments.push([start, points.len()]);
    }
    if 2 * meta.empty_columns.len() > rhos.len() {
        meta.warnings.push(format!(
            "partial trace: {} of {} columns empty (alpha={}, n={n}, {branch}, {kind})",
            meta.empty_columns.len(),
            rhos.len(),
            alpha.value()
        ));
    }
    Ok(CurveTrace { points, meta })
}

/// Abscissa where the traced `|sigma|` of the curve crosses `threshold`.
///
/// The curve is traced with the sigma window extended to `threshold`; the
/// transition between an empty column and the column holding the largest
/// `|sigma|` is then bisected on "a root with `|sigma| <= threshold` exists".
pub fn estimate_asymptote(
    alpha: LevyIndex,
    n: i32,
    branch: Branch,
    kind: LocusKind,
    settings: &TraceSettings,
    threshold: f64,
) -> Result<f64> {
    let mut wide = *settings;
    wide.sigma_max = threshold;
    let trace = trace_curve(alpha, n, branch, kind, &wide)?;
    let rhos = wide.rho_grid();
    let peak = trace
        .points
        .iter()
        .max_by(|a, b| a.sigma.abs().total_cmp(&b.sigma.abs()))
        .ok_or(Error::NoIntersection { ratio: f64::INFINITY, lo: wide.rho_min, hi: wide.rho_max })?;
    let idx = rhos.iter().position(|&r| r == peak.rho).unwrap_or(0);
    let has_root = |rho: f64| trace.sigma_at(rho).is_some();
    let empty_neighbor = [idx.checked_sub(1), Some(idx + 1)]
        .into_iter()
        .flatten()
        .filter(|&j| j < rhos.len())
        .find(|&j| !has_root(rhos[j]));
    let Some(j) = empty_neighbor else {
        return Err(Error::NoIntersection { ratio: f64::INFINITY, lo: wide.rho_min, hi: wide.rho_max });
    };
    let grid = log_grid(wide.tolerances.sigma_min, threshold, wide.steps);
    let exists = |rho: f64| !solve_magnitudes(rho, alpha, n, branch, kind, &grid, &wide.tolerances).points.is_empty();
    let (mut inside, mut outside) = (peak.rho, rhos[j]);
    for _ in 0..200 {
        if (inside - outside).abs() <= 1e-12 {
            break;
        }
        let mid = 0.5 * (inside + outside);
        if exists(mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    Ok(0.5 * (inside + outside))
}

/// Intersection of the ray `sigma = ratio * rho` with the minus-branch locus.
///
/// The scalar locus function is restricted to the ray and its sign changes
/// are refined directly; the validated root nearest the origin is returned.
pub fn ray_intersect(
    ratio: f64,
    alpha: LevyIndex,
    n: i32,
    kind: LocusKind,
    settings: &TraceSettings,
) -> Result<LocusPoint> {
    settings.validate()?;
    if !ratio.is_finite() || ratio == 0.0 {
        return Err(Error::InvalidParameter(format!("ratio = {ratio} must be finite and nonzero")));
    }
    let tol = settings.tolerances;
    let none = || Error::NoIntersection { ratio, lo: settings.rho_min, hi: settings.rho_max };
    // sigma = ratio * rho must carry the kind's sign with |sigma| >= sigma_min
    let rho_sign = kind.sigma_sign() * ratio.signum();
    let edge = tol.sigma_min / ratio.abs();
    let (lo, hi) = if rho_sign > 0.0 {
        (settings.rho_min.max(edge), settings.rho_max)
    } else {
        (settings.rho_min, settings.rho_max.min(-edge))
    };
    if !(lo < hi) {
        return Err(none());
    }
    let steps = settings.steps.max(16);
    let rhos: Vec<f64> = (0..=steps).map(|i| lo + (hi - lo) * i as f64 / steps as f64).collect();
    let f = |rho: f64| locus_scalar(kind, rho, ratio * rho, alpha, n, Branch::Minus).unwrap_or(f64::NAN);
    let mut found: Vec<LocusPoint> = Vec::new();
    for bracket in bracket_samples(f, &rhos) {
        let Ok(rho) = refine_root(f, bracket, tol.root) else { continue };
        if let Ok(Some(p)) = validate(rho, ratio * rho, alpha, n, Branch::Minus, kind, &tol) {
            found.push(p);
        }
    }
    found
        .into_iter()
        .min_by(|a, b| a.rho.abs().total_cmp(&b.rho.abs()))
        .ok_or_else(none)
}

/// A locus point mapped to physical barrier parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalPoint {
    pub energy: f64,
    pub v_r: f64,
    pub v_i: f64,
    pub d: f64,
    pub alpha: LevyIndex,
    pub n: i32,
    pub kind: LocusKind,
    pub rho: f64,
    pub sigma: f64,
    pub h: f64,
    /// `|M22| / (|M11| + 1)` for SS, `|M11| / (|M22| + 1)` for CPA.
    pub oracle_relative: f64,
}

/// Energy `E = D_alpha hbar^alpha (H/d)^alpha`, potential `V = E (rho + i sigma)`,
/// checked against the transfer matrix.
pub fn to_physical(point: &LocusPoint, alpha: LevyIndex, d: f64, units: &UnitSystem) -> Result<PhysicalPoint> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("half-width d = {d} must be positive")));
    }
    let energy = energy_from_k(point.h / d, alpha, units);
    let barrier = BarrierSpec::new(point.rho * energy, point.sigma * energy, d)?;
    let m = transfer_matrix(energy, &barrier, alpha, units)?;
    let oracle_relative = match point.kind {
        LocusKind::Ss => m.m22.norm() / (m.m11.norm() + 1.0),
        LocusKind::Cpa => m.m11.norm() / (m.m22.norm() + 1.0),
    };
    if !(oracle_relative < ORACLE_TOL) {
        return Err(Error::OracleFailure { relative: oracle_relative });
    }
    Ok(PhysicalPoint {
        energy,
        v_r: barrier.v_r,
        v_i: barrier.v_i,
        d,
        alpha,
        n: point.n,
        kind: point.kind,
        rho: point.rho,
        sigma: point.sigma,
        h: point.h,
        oracle_relative,
    })
}

/// What is held fixed while alpha varies in a blue-shift scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlueShiftProtocol {
    /// `V_r`, `V_i` taken from the first alpha at the given `d`; later rows
    /// report the width implied by the locus.
    #[default]
    FixedPotential,
    /// Same `d` on every row.
    FixedWidth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlueShiftRow {
    pub alpha: f64,
    pub rho: Option<f64>,
    pub sigma: Option<f64>,
    pub h: Option<f64>,
    pub energy: Option<f64>,
    pub v_r: Option<f64>,
    pub v_i: Option<f64>,
    pub d: Option<f64>,
    pub error: Option<String>,
}

impl BlueShiftRow {
    fn missing(alpha: f64, e: &Error) -> Self {
        Self {
            alpha,
            rho: None,
            sigma: None,
            h: None,
            energy: None,
            v_r: None,
            v_i: None,
            d: None,
            error: Some(e.to_string()),
        }
    }

    fn from_physical(p: &PhysicalPoint) -> Self {
        Self {
            alpha: p.alpha.value(),
            rho: Some(p.rho),
            sigma: Some(p.sigma),
            h: Some(p.h),
            energy: Some(p.energy),
            v_r: Some(p.v_r),
            v_i: Some(p.v_i),
            d: Some(p.d),
            error: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "N/A")]
    NotApplicable,
    #[serde(rename = "WITHHELD")]
    Withheld,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlueShiftReport {
    pub protocol: BlueShiftProtocol,
    pub rows: Vec<BlueShiftRow>,
    /// Strictly increasing energy as alpha decreases.
    pub verdict: Verdict,
}

#[allow(clippy::too_many_arguments)]
pub fn blue_shift_scan(
    ratio: f64,
    n: i32,
    kind: LocusKind,
    alphas: &[LevyIndex],
    d: f64,
    units: &UnitSystem,
    protocol: BlueShiftProtocol,
    settings: &TraceSettings,
) -> Result<BlueShiftReport> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("empty alpha list".into()));
    }
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParameter(format!("half-width d = {d} must be positive")));
    }
    let mut alphas = alphas.to_vec();
    alphas.sort_by(|a, b| b.value().total_cmp(&a.value()));
    alphas.dedup();
    let points: Vec<Result<LocusPoint>> = alphas
        .par_iter()
        .map(|&a| ray_intersect(ratio, a, n, kind, settings))
        .collect();

    let mut reference_vr: Option<f64> = None;
    let mut rows = Vec::with_capacity(alphas.len());
    for (alpha, point) in alphas.iter().zip(points) {
        let row = point.and_then(|p| {
            let width = match (protocol, reference_vr) {
                (BlueShiftProtocol::FixedPotential, Some(v_r)) => p.h / k_alpha(v_r / p.rho, *alpha, units)?,
                _ => d,
            };
            let phys = to_physical(&p, *alpha, width, units)?;
            reference_vr.get_or_insert(phys.v_r);
            Ok(phys)
        });
        rows.push(match row {
            Ok(phys) => BlueShiftRow::from_physical(&phys),
            Err(e) => BlueShiftRow::missing(alpha.value(), &e),
        });
    }
    let verdict = blue_shift_verdict(&rows);
    Ok(BlueShiftReport { protocol, rows, verdict })
}

/// Rows are ordered by descending alpha.
pub fn blue_shift_verdict(rows: &[BlueShiftRow]) -> Verdict {
    if rows.iter().any(|r| r.energy.is_none()) {
        return Verdict::Withheld;
    }
    if rows.len() < 2 {
        return Verdict::NotApplicable;
    }
    let increasing = rows.windows(2).all(|w| w[1].energy > w[0].energy);
    if increasing {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurveyGrid {
    pub rho_min: f64,
    pub rho_max: f64,
    /// Magnitude range; the kind decides the sign.
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub n_rho: usize,
    pub n_sigma: usize,
}

impl Default for SurveyGrid {
    fn default() -> Self {
        Self { rho_min: -1.0, rho_max: 0.95, sigma_min: 0.01, sigma_max: 2.0, n_rho: 50, n_sigma: 50 }
    }
}

impl SurveyGrid {
    pub const LOW_RESOLUTION: usize = 16;

    pub fn validate(&self) -> Result<()> {
        if !(self.rho_min < self.rho_max) || !(self.sigma_min < self.sigma_max) || self.sigma_min <= 0.0 {
            return Err(Error::InvalidParameter(format!("invalid survey grid {self:?}")));
        }
        if self.rho_max >= 1.0 {
            return Err(Error::InvalidParameter("survey rho_max must stay below 1".into()));
        }
        if self.n_rho < 2 || self.n_sigma < 2 {
            return Err(Error::InvalidParameter("survey grid needs at least 2x2 points".into()));
        }
        Ok(())
    }

    fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
    }

    pub fn rhos(&self) -> Vec<f64> {
        Self::axis(self.rho_min, self.rho_max, self.n_rho)
    }

    pub fn sigmas(&self) -> Vec<f64> {
        Self::axis(self.sigma_min, self.sigma_max, self.n_sigma)
    }

    pub fn is_low_resolution(&self) -> bool {
        self.n_rho < Self::LOW_RESOLUTION || self.n_sigma < Self::LOW_RESOLUTION
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Admissibility {
    AdmitsZeros,
    Excluded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyEntry {
    pub n: i32,
    pub branch: Branch,
    pub kind: LocusKind,
    /// Smallest relative residual at the grid nodes.
    pub grid_min: f64,
    pub grid_min_rho: f64,
    pub grid_min_sigma: f64,
    /// Smallest relative residual at refined roots of the scalar function.
    pub root_min: Option<f64>,
    pub root_min_rho: Option<f64>,
    pub root_min_sigma: Option<f64>,
    pub classification: Admissibility,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub alpha: LevyIndex,
    pub grid: SurveyGrid,
    pub low_resolution: bool,
    pub entries: Vec<SurveyEntry>,
    pub anomalies: Vec<String>,
}

pub fn branch_survey(
    grid: &SurveyGrid,
    alpha: LevyIndex,
    n_range: (i32, i32),
    branches: &[Branch],
    kinds: &[LocusKind],
    root_tol: f64,
) -> Result<SurveyReport> {
    grid.validate()?;
    if n_range.0 > n_range.1 {
        return Err(Error::InvalidParameter(format!("empty n range {n_range:?}")));
    }
    let mut combos = Vec::new();
    for &kind in kinds {
        for &branch in branches {
            for n in n_range.0..=n_range.1 {
                combos.push((n, branch, kind));
            }
        }
    }
    let rhos = grid.rhos();
    let sigmas = grid.sigmas();
    let results: Vec<(SurveyEntry, Vec<String>)> = combos
        .par_iter()
        .map(|&(n, branch, kind)| survey_one(&rhos, &sigmas, alpha, n, branch, kind, root_tol))
        .collect();
    let mut anomalies = Vec::new();
    let mut entries = Vec::new();
    for (entry, notes) in results {
        anomalies.extend(notes);
        entries.push(entry);
    }
    if grid.is_low_resolution() {
        anomalies.push(format!(
            "low-resolution survey grid {}x{}: minima are coarse",
            grid.n_rho, grid.n_sigma
        ));
    }
    Ok(SurveyReport { alpha, grid: *grid, low_resolution: grid.is_low_resolution(), entries, anomalies })
}

fn survey_one(
    rhos: &[f64],
    sigmas: &[f64],
    alpha: LevyIndex,
    n: i32,
    branch: Branch,
    kind: LocusKind,
    root_tol: f64,
) -> (SurveyEntry, Vec<String>) {
    let sign = kind.sigma_sign();
    let mut notes = Vec::new();
    let mut grid_best = (f64::INFINITY, f64::NAN, f64::NAN);
    let mut root_best: Option<(f64, f64, f64)> = None;
    for &rho in rhos {
        for &s in sigmas {
            let sigma = sign * s;
            if let Ok(r) = locus_residual(kind, rho, sigma, alpha, n, branch) {
                let rel = r.relative();
                if rel < grid_best.0 {
                    grid_best = (rel, rho, sigma);
                }
            }
        }
        let f = |s: f64| locus_scalar(kind, rho, sign * s, alpha, n, branch).unwrap_or(f64::NAN);
        for bracket in bracket_samples(f, sigmas) {
            let Ok(s) = refine_root(f, bracket, root_tol) else { continue };
            let sigma = sign * s;
            if let Ok(r) = locus_residual(kind, rho, sigma, alpha, n, branch) {
                let rel = r.relative();
                if root_best.is_none_or(|b| rel < b.0) {
                    root_best = Some((rel, rho, sigma));
                }
            }
        }
    }
    let best = root_best.map_or(grid_best.0, |b| b.0.min(grid_best.0));
    let classification = if best < SURVEY_THRESHOLD { Admissibility::AdmitsZeros } else { Admissibility::Excluded };
    let explained = root_best.is_some_and(|b| b.0 < SURVEY_THRESHOLD);
    if grid_best.0 < SURVEY_THRESHOLD && !explained {
        notes.push(format!(
            "unexplained residual minimum {:e} at (rho, sigma) = ({}, {}) for n={n}, {branch}, {kind}",
            grid_best.0, grid_best.1, grid_best.2
        ));
    }
    let entry = SurveyEntry {
        n,
        branch,
        kind,
        grid_min: grid_best.0,
        grid_min_rho: grid_best.1,
        grid_min_sigma: grid_best.2,
        root_min: root_best.map(|b| b.0),
        root_min_rho: root_best.map(|b| b.1),
        root_min_sigma: root_best.map(|b| b.2),
        classification,
    };
    (entry, notes)
}
