//! Batch execution over cycle grids: temperature sweeps, work maximization
//! over the compression ratio, operational-mode atlases, and the CLI that
//! drives them. Grid points are independent and run on a bounded worker pool;
//! row order follows grid order, so results do not depend on the thread count.

mod cli;
mod config;
mod table;
mod validate;

pub use cli::run_cli;
pub use table::{fmt_float, Cell, Column, Echo, EchoValue, OutputFormat, Table};
pub use validate::{run_validation, CheckOutcome};

use std::path::PathBuf;

use rayon::prelude::*;

use crate::analytics::bounds;
use crate::cycles::{run_cycle, work_gain, CycleReport, CycleSpec, Mode, Order, Variant};
use crate::error::{Error, Result};
use crate::numerics::golden_max;
use crate::spectra::{CompressionSpec, Spectrum, SpectrumKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Vary the hot bath, cold bath fixed by the template.
    HotTemp,
    /// Vary the cold bath, hot bath fixed by the template.
    ColdTemp,
    /// Vary x = T_c/T_h at fixed T_c, maximizing work over the ratio at
    /// every point.
    RatioOptimize,
    /// Classify the operational mode over a (T_c, T_h) rectangle.
    ModeAtlas,
}

/// Axis values are reduced temperatures (T_F at the compressed trap) for the
/// temperature axes and x = T_c/T_h for [`SweepAxis::RatioOptimize`].
#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Values(Vec<f64>),
    /// Inclusive bounds with per-axis resolution, mode atlases only.
    Bounds2D {
        t_c: (f64, f64),
        t_h: (f64, f64),
        resolution: (usize, usize),
    },
}

/// Ratio-search settings shared by [`optimize_ratio`] and the
/// [`SweepAxis::RatioOptimize`] axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizeParams {
    /// Search interval for r = (trap scale at a)/(trap scale at b).
    pub interval: (f64, f64),
    /// Log-spaced scan points placed before golden-section refinement.
    pub coarse_points: usize,
}

impl Default for OptimizeParams {
    fn default() -> Self {
        OptimizeParams { interval: (0.2, 10.0), coarse_points: 64 }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    /// Template providing everything the axis does not vary.
    pub cycle: CycleSpec,
    pub axis: SweepAxis,
    pub grid: Grid,
    /// Used by the RatioOptimize axis only.
    pub params: OptimizeParams,
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.cycle.validate()?;
        match (&self.axis, &self.grid) {
            (SweepAxis::ModeAtlas, Grid::Bounds2D { t_c, t_h, resolution }) => {
                for (name, range) in [("t_c", t_c), ("t_h", t_h)] {
                    if !(range.0.is_finite() && range.1.is_finite() && range.0 >= 0.0 && range.1 > range.0) {
                        return Err(Error::Config(format!(
                            "{name} range must satisfy 0 ≤ min < max, got [{}, {}]",
                            range.0, range.1
                        )));
                    }
                }
                if resolution.0 < 2 || resolution.1 < 2 {
                    return Err(Error::Config(format!(
                        "atlas resolution must be ≥ 2 per axis, got {resolution:?}"
                    )));
                }
            }
            (SweepAxis::ModeAtlas, _) => {
                return Err(Error::Config("a mode atlas needs 2D grid bounds".into()))
            }
            (_, Grid::Bounds2D { .. }) => {
                return Err(Error::Config("2D grid bounds only drive a mode atlas".into()))
            }
            (axis, Grid::Values(values)) => {
                for &v in values {
                    let ok = match axis {
                        SweepAxis::RatioOptimize => v.is_finite() && v > 0.0,
                        _ => v.is_finite() && v >= 0.0,
                    };
                    if !ok {
                        return Err(Error::Config(format!("bad grid value {v} for {axis:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct OptimizeSpec {
    pub variant: Variant,
    pub order: Order,
    pub spectrum_kind: SpectrumKind,
    pub n_particles: u64,
    /// Bath temperatures in T_F units at the compressed trap.
    pub t_c: f64,
    pub t_h: f64,
    pub params: OptimizeParams,
}

impl OptimizeSpec {
    pub fn new(
        variant: Variant,
        order: Order,
        spectrum_kind: SpectrumKind,
        n_particles: u64,
        t_c: f64,
        t_h: f64,
    ) -> Self {
        OptimizeSpec {
            variant,
            order,
            spectrum_kind,
            n_particles,
            t_c,
            t_h,
            params: OptimizeParams::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationResult {
    pub t_c: f64,
    pub t_h: f64,
    /// Work-maximizing r; box lengths L_a/L_b, trap frequencies √(ω_b/ω_a).
    pub best_ratio: f64,
    /// True when the coarse scan peaked at an end of the search interval.
    pub boundary: bool,
    /// Net work at the maximizer in E_F units; ≤ 0 means no engine exists
    /// anywhere in the interval.
    pub w_max: f64,
    pub eta_mw: Option<f64>,
    pub sigma: Option<f64>,
    pub sigma_s: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct AtlasSpec {
    pub variant: Variant,
    pub order: Order,
    pub spectrum_kind: SpectrumKind,
    pub n_particles: u64,
    /// Otto ratio r² shared by every grid point.
    pub ratio_squared: f64,
    /// Inclusive reduced-temperature ranges.
    pub t_c_range: (f64, f64),
    pub t_h_range: (f64, f64),
    /// Grid points per axis, (t_c, t_h).
    pub resolution: (usize, usize),
}

/// Mode classification over the bath-temperature plane. Cells are stored
/// row-major: ascending t_h outer, ascending t_c inner.
#[derive(Debug, Clone)]
pub struct ModeAtlas {
    pub t_c: Vec<f64>,
    pub t_h: Vec<f64>,
    pub cells: Vec<std::result::Result<Mode, String>>,
}

impl ModeAtlas {
    pub fn cell(&self, i_h: usize, i_c: usize) -> &std::result::Result<Mode, String> {
        &self.cells[i_h * self.t_c.len() + i_c]
    }
}

/// Inclusive linear grid with exact endpoints.
pub(crate) fn lin_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    debug_assert!(points >= 2);
    (0..points)
        .map(|i| {
            if i == points - 1 {
                max
            } else {
                min + (max - min) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

/// Inclusive log-spaced grid with exact endpoints.
pub(crate) fn log_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    debug_assert!(points >= 2 && min > 0.0);
    let (a, b) = (min.ln(), max.ln());
    (0..points)
        .map(|i| {
            if i == points - 1 {
                max
            } else if i == 0 {
                min
            } else {
                (a + (b - a) * i as f64 / (points - 1) as f64).exp()
            }
        })
        .collect()
}

fn mode_label(mode: Mode) -> &'static str {
    match mode {
        Mode::Engine => "Engine",
        Mode::Refrigerator => "Refrigerator",
        Mode::Accelerator => "Accelerator",
        Mode::Heater => "Heater",
        Mode::None => "None",
    }
}

fn mode_letter(mode: Mode) -> &'static str {
    match mode {
        Mode::Engine => "E",
        Mode::Refrigerator => "R",
        Mode::Accelerator => "A",
        Mode::Heater => "H",
        Mode::None => "None",
    }
}

/// One evaluated grid point: full report with the gain filled in.
fn eval_point(template: &CycleSpec, t_c: f64, t_h: f64) -> Result<CycleReport> {
    let spec = CycleSpec::from_reduced_temperatures(
        template.variant,
        template.order,
        template.spectrum_kind,
        template.compression,
        template.n_particles,
        t_c,
        t_h,
    )?;
    let mut report = run_cycle(&spec)?;
    report.gain = work_gain(&report, &spec)?;
    Ok(report)
}

pub(crate) const FIGURE_COLUMNS: [Column; 11] = [
    Column { name: "t_c[T_F]", key: "t_c" },
    Column { name: "t_h[T_F]", key: "t_h" },
    Column { name: "w_out[E_F]", key: "w_out" },
    Column { name: "q_in[E_F]", key: "q_in" },
    Column { name: "q_out[E_F]", key: "q_out" },
    Column { name: "eta", key: "eta" },
    Column { name: "gain", key: "gain" },
    Column { name: "sigma", key: "sigma" },
    Column { name: "sigma_s", key: "sigma_s" },
    Column { name: "mode", key: "mode" },
    Column { name: "error", key: "error" },
];

fn opt_cell(v: Option<f64>) -> Cell {
    v.map_or(Cell::Absent, Cell::Float)
}

pub(crate) fn figure_row(t_c: f64, t_h: f64, outcome: Result<CycleReport>, e_f: f64) -> Vec<Cell> {
    match outcome {
        Ok(r) => vec![
            Cell::Float(t_c),
            Cell::Float(t_h),
            Cell::Float(r.w_out / e_f),
            Cell::Float(r.q_in / e_f),
            Cell::Float(r.q_out / e_f),
            opt_cell(r.eta),
            opt_cell(r.gain),
            opt_cell(r.sigma),
            opt_cell(r.sigma_s),
            Cell::Text(mode_label(r.mode).to_string()),
            Cell::Absent,
        ],
        Err(e) => {
            let mut row = vec![Cell::Float(t_c), Cell::Float(t_h)];
            row.resize(FIGURE_COLUMNS.len() - 1, Cell::Absent);
            row.push(Cell::Text(e.to_string()));
            row
        }
    }
}

pub(crate) const OPTIMIZE_COLUMNS: [Column; 13] = [
    Column { name: "x", key: "x" },
    Column { name: "t_c[T_F]", key: "t_c" },
    Column { name: "t_h[T_F]", key: "t_h" },
    Column { name: "best_ratio", key: "best_ratio" },
    Column { name: "boundary", key: "boundary" },
    Column { name: "w_max[E_F]", key: "w_max" },
    Column { name: "eta_mw", key: "eta_mw" },
    Column { name: "sigma", key: "sigma" },
    Column { name: "sigma_s", key: "sigma_s" },
    Column { name: "eta_otto", key: "eta_otto" },
    Column { name: "eta_carnot", key: "eta_carnot" },
    Column { name: "eta_ca", key: "eta_ca" },
    Column { name: "error", key: "error" },
];

pub(crate) fn optimize_row(x: f64, t_c: f64, t_h: f64, outcome: Result<OptimizationResult>) -> Vec<Cell> {
    match outcome {
        Ok(o) => {
            let r2 = 1.0 / (o.best_ratio * o.best_ratio);
            let b = bounds(t_c, t_h, r2).expect("T_h > 0 checked by the optimizer");
            vec![
                Cell::Float(x),
                Cell::Float(t_c),
                Cell::Float(t_h),
                Cell::Float(o.best_ratio),
                Cell::Bool(o.boundary),
                Cell::Float(o.w_max),
                opt_cell(o.eta_mw),
                opt_cell(o.sigma),
                opt_cell(o.sigma_s),
                Cell::Float(b.eta_otto),
                Cell::Float(b.eta_carnot),
                Cell::Float(b.eta_ca),
                Cell::Absent,
            ]
        }
        Err(e) => {
            let mut row = vec![Cell::Float(x), Cell::Float(t_c), Cell::Float(t_h)];
            row.resize(OPTIMIZE_COLUMNS.len() - 1, Cell::Absent);
            row.push(Cell::Text(e.to_string()));
            row
        }
    }
}

pub(crate) const ATLAS_COLUMNS: [Column; 4] = [
    Column { name: "t_c[T_F]", key: "t_c" },
    Column { name: "t_h[T_F]", key: "t_h" },
    Column { name: "mode", key: "mode" },
    Column { name: "error", key: "error" },
];

/// Evaluate the grid, one row per point in grid order; per-point failures
/// become rows with the `error` column set and the sweep continues.
pub fn sweep(spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let t_f = spec.cycle.fermi_energy_b();
    match spec.axis {
        SweepAxis::HotTemp | SweepAxis::ColdTemp => {
            let values = match &spec.grid {
                Grid::Values(v) => v,
                Grid::Bounds2D { .. } => unreachable!("validated"),
            };
            let hot_axis = spec.axis == SweepAxis::HotTemp;
            let fixed = if hot_axis { spec.cycle.t_c / t_f } else { spec.cycle.t_h / t_f };
            let rows = values
                .par_iter()
                .map(|&v| {
                    let (t_c, t_h) = if hot_axis { (fixed, v) } else { (v, fixed) };
                    figure_row(t_c, t_h, eval_point(&spec.cycle, t_c, t_h), t_f)
                })
                .collect();
            Ok(Table { columns: &FIGURE_COLUMNS, rows })
        }
        SweepAxis::RatioOptimize => {
            let values = match &spec.grid {
                Grid::Values(v) => v,
                Grid::Bounds2D { .. } => unreachable!("validated"),
            };
            let t_c = spec.cycle.t_c / t_f;
            let rows = values
                .par_iter()
                .map(|&x| {
                    let t_h = t_c / x;
                    let opt = OptimizeSpec {
                        variant: spec.cycle.variant,
                        order: spec.cycle.order,
                        spectrum_kind: spec.cycle.spectrum_kind,
                        n_particles: spec.cycle.n_particles,
                        t_c,
                        t_h,
                        params: spec.params,
                    };
                    optimize_row(x, t_c, t_h, optimize_ratio(&opt))
                })
                .collect();
            Ok(Table { columns: &OPTIMIZE_COLUMNS, rows })
        }
        SweepAxis::ModeAtlas => {
            let (t_c, t_h, resolution) = match &spec.grid {
                Grid::Bounds2D { t_c, t_h, resolution } => (*t_c, *t_h, *resolution),
                Grid::Values(_) => unreachable!("validated"),
            };
            let atlas = mode_atlas(&AtlasSpec {
                variant: spec.cycle.variant,
                order: spec.cycle.order,
                spectrum_kind: spec.cycle.spectrum_kind,
                n_particles: spec.cycle.n_particles,
                ratio_squared: spec.cycle.compression.ratio_squared(spec.cycle.spectrum_kind),
                t_c_range: t_c,
                t_h_range: t_h,
                resolution,
            })?;
            Ok(atlas_table(&atlas))
        }
    }
}

/// Flatten an atlas in cell-storage order (t_h outer, t_c inner).
pub fn atlas_table(atlas: &ModeAtlas) -> Table {
    let mut rows = Vec::with_capacity(atlas.cells.len());
    for (i_h, &t_h) in atlas.t_h.iter().enumerate() {
        for (i_c, &t_c) in atlas.t_c.iter().enumerate() {
            let row = match atlas.cell(i_h, i_c) {
                Ok(mode) => vec![
                    Cell::Float(t_c),
                    Cell::Float(t_h),
                    Cell::Text(mode_letter(*mode).to_string()),
                    Cell::Absent,
                ],
                Err(msg) => vec![
                    Cell::Float(t_c),
                    Cell::Float(t_h),
                    Cell::Absent,
                    Cell::Text(msg.clone()),
                ],
            };
            rows.push(row);
        }
    }
    Table { columns: &ATLAS_COLUMNS, rows }
}

fn report_at_ratio(spec: &OptimizeSpec, r: f64) -> Result<CycleReport> {
    let compression = CompressionSpec::from_ratio_squared(spec.spectrum_kind, 1.0 / (r * r), 1.0)?;
    let cycle = CycleSpec::from_reduced_temperatures(
        spec.variant,
        spec.order,
        spec.spectrum_kind,
        compression,
        spec.n_particles,
        spec.t_c,
        spec.t_h,
    )?;
    run_cycle(&cycle)
}

/// Maximize net work over the compression ratio: a log-spaced coarse scan
/// followed by golden-section refinement between the neighbors of the best
/// coarse point (relative r-tolerance 1e−6). Coarse points that fail to
/// evaluate are skipped unless every point fails.
pub fn optimize_ratio(spec: &OptimizeSpec) -> Result<OptimizationResult> {
    let (lo, hi) = spec.params.interval;
    if !(lo > 0.0 && hi > lo) || !hi.is_finite() {
        return Err(Error::Config(format!(
            "ratio search interval must satisfy 0 < lo < hi, got [{lo}, {hi}]"
        )));
    }
    if spec.params.coarse_points < 2 {
        return Err(Error::Config("ratio scan needs at least 2 coarse points".into()));
    }
    if !(spec.t_h > 0.0) {
        return Err(Error::Domain(format!(
            "work optimization needs T_h > 0, got {}",
            spec.t_h
        )));
    }

    let grid = log_grid(lo, hi, spec.params.coarse_points);
    let works: Vec<std::result::Result<f64, Error>> = grid
        .par_iter()
        .map(|&r| report_at_ratio(spec, r).map(|rep| rep.w_out))
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for (i, w) in works.iter().enumerate() {
        if let Ok(w) = w {
            if best.is_none_or(|(_, bw)| *w > bw) {
                best = Some((i, *w));
            }
        }
    }
    let Some((i_best, w_coarse)) = best else {
        // every point failed the same way; surface the first failure
        return Err(works.into_iter().find_map(|w| w.err()).expect("at least one error"));
    };
    let boundary = i_best == 0 || i_best == grid.len() - 1;

    let a = grid[i_best.saturating_sub(1)];
    let b = grid[(i_best + 1).min(grid.len() - 1)];
    let pending = std::cell::Cell::new(None);
    let (mut r_star, w_star) = golden_max(
        |r| match report_at_ratio(spec, r) {
            Ok(rep) => rep.w_out,
            Err(e) => {
                pending.set(Some(e));
                f64::NEG_INFINITY
            }
        },
        a,
        b,
        1e-6,
    );
    if let Some(e) = pending.take() {
        return Err(e);
    }
    if w_coarse > w_star {
        r_star = grid[i_best];
    }

    let report = report_at_ratio(spec, r_star)?;
    let e_f = Spectrum::new(spec.spectrum_kind, 1.0)?.fermi_energy(spec.n_particles);
    Ok(OptimizationResult {
        t_c: spec.t_c,
        t_h: spec.t_h,
        best_ratio: r_star,
        boundary,
        w_max: report.w_out / e_f,
        eta_mw: report.eta,
        sigma: report.sigma,
        sigma_s: report.sigma_s,
    })
}

/// Classify the operational mode over an inclusive (T_c, T_h) rectangle.
/// Cell failures are recorded as error cells and the scan continues.
pub fn mode_atlas(spec: &AtlasSpec) -> Result<ModeAtlas> {
    for (name, range) in [("t_c", spec.t_c_range), ("t_h", spec.t_h_range)] {
        if !(range.0.is_finite() && range.1.is_finite() && range.0 >= 0.0 && range.1 > range.0) {
            return Err(Error::Config(format!(
                "{name} range must satisfy 0 ≤ min < max, got [{}, {}]",
                range.0, range.1
            )));
        }
    }
    let (n_c, n_h) = spec.resolution;
    if n_c < 2 || n_h < 2 {
        return Err(Error::Config(format!(
            "atlas resolution must be ≥ 2 per axis, got {:?}",
            spec.resolution
        )));
    }
    let compression =
        CompressionSpec::from_ratio_squared(spec.spectrum_kind, spec.ratio_squared, 1.0)?;
    let t_c = lin_grid(spec.t_c_range.0, spec.t_c_range.1, n_c);
    let t_h = lin_grid(spec.t_h_range.0, spec.t_h_range.1, n_h);
    let cells = (0..n_c * n_h)
        .into_par_iter()
        .map(|idx| {
            let (i_h, i_c) = (idx / n_c, idx % n_c);
            CycleSpec::from_reduced_temperatures(
                spec.variant,
                spec.order,
                spec.spectrum_kind,
                compression,
                spec.n_particles,
                t_c[i_c],
                t_h[i_h],
            )
            .and_then(|s| run_cycle(&s))
            .map(|r| r.mode)
            .map_err(|e| e.to_string())
        })
        .collect();
    Ok(ModeAtlas { t_c, t_h, cells })
}
