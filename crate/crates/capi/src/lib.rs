//! C surface for the engine simulator. Reports are opaque handles; every
//! temperature crosses the boundary in T_F units and every energy comes back
//! in E_F units, both taken at the compressed trap, matching the CLI's
//! emission convention. All functions are panic-safe: a caught panic is
//! reported as a status code, never unwound across the boundary.

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use statengine::cycles::{run_cycle, work_gain, CycleReport, CycleSpec, Mode, Order, Variant};
use statengine::harness::{optimize_ratio, OptimizeParams, OptimizeSpec};
use statengine::spectra::{CompressionSpec, SpectrumKind};
use statengine::strokes::StrokeKind;
use statengine::Error;

/// Result of every fallible call. Anything but `SE_OK` leaves details in
/// `se_last_error_message`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum se_status {
    SE_OK = 0,
    /// A required pointer argument was null.
    SE_ERR_NULL = 1,
    /// Arguments outside the model's domain (bad enum value, negative
    /// temperature, non-positive compression, ...).
    SE_ERR_CONFIG = 2,
    /// A solver failed to converge; typical for statistics switches into the
    /// Bose gas below its condensate entropy floor.
    SE_ERR_NUMERICAL = 3,
    /// The requested figure is undefined for this cycle (e.g. efficiency of
    /// a refrigerator); the output was set to NaN.
    SE_ERR_UNDEFINED = 4,
    /// An internal invariant broke. Please report the message.
    SE_ERR_PANIC = 5,
}

/// Engine layout: four-stroke switching, six-stroke switching, the
/// equivalence construction, or one of the non-switching references.
#[repr(C)]
#[derive(Clone, Copy)]
pub enum se_variant {
    SE_VARIANT_A = 0,
    SE_VARIANT_T = 1,
    SE_VARIANT_GV = 2,
    SE_VARIANT_SINGLE = 3,
    SE_VARIANT_FERMI = 4,
    SE_VARIANT_BOSE = 5,
}

/// Which statistics the medium holds while compressed. References take
/// `SE_ORDER_NONE`; switching variants must pick a direction.
#[repr(C)]
#[derive(Clone, Copy)]
pub enum se_order {
    SE_ORDER_NONE = 0,
    SE_ORDER_BG_TG = 1,
    SE_ORDER_TG_BG = 2,
}

#[repr(C)]
#[derive(Clone, Copy)]
pub enum se_spectrum {
    SE_SPECTRUM_BOX = 0,
    SE_SPECTRUM_HARMONIC = 1,
}

/// Operational mode from the signs of (Q_in, Q_out, W_out).
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum se_mode {
    SE_MODE_ENGINE = 0,
    SE_MODE_REFRIGERATOR = 1,
    SE_MODE_ACCELERATOR = 2,
    SE_MODE_HEATER = 3,
    SE_MODE_NONE = 4,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum se_stroke_kind {
    SE_STROKE_ADIABAT = 0,
    SE_STROKE_ISOCHORE = 1,
    SE_STROKE_STAT_ISOTHERM = 2,
    SE_STROKE_GV_ISOCHORE = 3,
}

/// One stroke's energy ledger. Energies in E_F units, `t_out` in T_F units.
/// `d_u == work + heat` holds exactly; the `_stat` split is nonzero only for
/// statistical isotherms.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct se_stroke {
    pub kind: se_stroke_kind,
    pub d_u: f64,
    pub work: f64,
    pub heat: f64,
    pub heat_stat: f64,
    pub work_stat: f64,
    pub t_out: f64,
}

/// Compression-ratio optimum for fixed baths. Optional figures (`eta_mw`,
/// `sigma`, `sigma_s`) are NaN when the optimum is not an engine.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct se_optimum {
    /// Bath temperatures echoed back, T_F units.
    pub t_c: f64,
    pub t_h: f64,
    /// Work-maximizing trap-size ratio r (box lengths L_a/L_b).
    pub best_ratio: f64,
    /// True when the coarse scan peaked at an end of [r_min, r_max].
    pub boundary: bool,
    /// Net work at the maximizer, E_F units; <= 0 means no engine exists in
    /// the searched interval.
    pub w_max: f64,
    pub eta_mw: f64,
    pub sigma: f64,
    pub sigma_s: f64,
}

/// Opaque cycle report. Create with `se_cycle_run`, read through the
/// `se_report_*` getters, release with `se_report_free`.
pub struct se_report {
    report: CycleReport,
    /// E_F at the compressed trap; doubles as T_F for temperature readouts.
    unit: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("error message unavailable").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = sanitized);
}

fn fail(status: se_status, message: &str) -> se_status {
    set_error(message);
    status
}

fn fail_with(err: &Error) -> se_status {
    let status = match err {
        Error::Numerical { .. } => se_status::SE_ERR_NUMERICAL,
        _ => se_status::SE_ERR_CONFIG,
    };
    fail(status, &err.to_string())
}

/// Explanation of the most recent failure on this thread. Valid until the
/// next failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn se_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn se_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

fn guarded<F: FnOnce() -> se_status>(body: F) -> se_status {
    catch_unwind(AssertUnwindSafe(body))
        .unwrap_or_else(|_| fail(se_status::SE_ERR_PANIC, "internal panic; state unchanged"))
}

fn variant_of(v: se_variant) -> Variant {
    match v {
        se_variant::SE_VARIANT_A => Variant::A,
        se_variant::SE_VARIANT_T => Variant::T,
        se_variant::SE_VARIANT_GV => Variant::Gv,
        se_variant::SE_VARIANT_SINGLE => Variant::BaselineSingle,
        se_variant::SE_VARIANT_FERMI => Variant::BaselineFermi,
        se_variant::SE_VARIANT_BOSE => Variant::BaselineBose,
    }
}

fn order_of(o: se_order) -> Order {
    match o {
        se_order::SE_ORDER_NONE => Order::NotApplicable,
        se_order::SE_ORDER_BG_TG => Order::BgTg,
        se_order::SE_ORDER_TG_BG => Order::TgBg,
    }
}

fn spectrum_of(s: se_spectrum) -> SpectrumKind {
    match s {
        se_spectrum::SE_SPECTRUM_BOX => SpectrumKind::Box,
        se_spectrum::SE_SPECTRUM_HARMONIC => SpectrumKind::Harmonic,
    }
}

/// Run one full cycle.
///
/// `ratio_squared` is the Otto ratio (L_b/L_a)² for boxes, ω_a/ω_b for
/// harmonic traps; `scale_b` fixes the compressed trap's absolute size (pass
/// 1.0 unless absolute energies matter — reduced outputs do not depend on
/// it). `t_c`/`t_h` are bath temperatures in T_F units. On success writes a
/// fresh handle to `out`, which the caller owns.
#[no_mangle]
pub extern "C" fn se_cycle_run(
    variant: se_variant,
    order: se_order,
    spectrum: se_spectrum,
    n_particles: u64,
    ratio_squared: f64,
    scale_b: f64,
    t_c: f64,
    t_h: f64,
    out: *mut *mut se_report,
) -> se_status {
    guarded(|| {
        if out.is_null() {
            return fail(se_status::SE_ERR_NULL, "out pointer is null");
        }
        let kind = spectrum_of(spectrum);
        let compression = match CompressionSpec::from_ratio_squared(kind, ratio_squared, scale_b) {
            Ok(c) => c,
            Err(e) => return fail_with(&e),
        };
        let spec = match CycleSpec::from_reduced_temperatures(
            variant_of(variant),
            order_of(order),
            kind,
            compression,
            n_particles,
            t_c,
            t_h,
        ) {
            Ok(s) => s,
            Err(e) => return fail_with(&e),
        };
        let mut report = match run_cycle(&spec) {
            Ok(r) => r,
            Err(e) => return fail_with(&e),
        };
        report.gain = match work_gain(&report, &spec) {
            Ok(g) => g,
            Err(e) => return fail_with(&e),
        };
        let handle = Box::new(se_report { report, unit: spec.fermi_energy_b() });
        unsafe { *out = Box::into_raw(handle) };
        se_status::SE_OK
    })
}

/// Release a report handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn se_report_free(report: *mut se_report) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

fn read_figure(
    report: *const se_report,
    out: *mut f64,
    figure: impl FnOnce(&se_report) -> Option<f64>,
) -> se_status {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return fail(se_status::SE_ERR_NULL, "null pointer argument");
        }
        let handle = unsafe { &*report };
        match figure(handle) {
            Some(v) => {
                unsafe { *out = v };
                se_status::SE_OK
            }
            None => {
                unsafe { *out = f64::NAN };
                fail(se_status::SE_ERR_UNDEFINED, "figure undefined for this cycle")
            }
        }
    })
}

/// Net extracted work, E_F units (positive when the cycle produces work).
#[no_mangle]
pub extern "C" fn se_report_w_out(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| Some(h.report.w_out / h.unit))
}

/// Heat exchanged with the hot bath, E_F units, into-medium positive.
#[no_mangle]
pub extern "C" fn se_report_q_in(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| Some(h.report.q_in / h.unit))
}

/// Heat exchanged with the cold bath, E_F units, into-medium positive.
#[no_mangle]
pub extern "C" fn se_report_q_out(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| Some(h.report.q_out / h.unit))
}

/// Efficiency W_out/Q_in. Undefined unless the cycle actually works as an
/// engine (the equivalence construction defines it whenever heat flowed).
#[no_mangle]
pub extern "C" fn se_report_eta(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| h.report.eta)
}

/// Work relative to N independent single-particle engines between the same
/// baths. Undefined when that reference is not itself an engine.
#[no_mangle]
pub extern "C" fn se_report_gain(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| h.report.gain)
}

/// Thermal share of the hot-leg heat (six-stroke variant only).
#[no_mangle]
pub extern "C" fn se_report_sigma(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| h.report.sigma)
}

/// Statistical share of the hot-leg heat (six-stroke variant only).
#[no_mangle]
pub extern "C" fn se_report_sigma_s(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| h.report.sigma_s)
}

/// Net energy drift over the closed cycle, E_F units (diagnostic; should be
/// at round-off scale).
#[no_mangle]
pub extern "C" fn se_report_closure(report: *const se_report, out: *mut f64) -> se_status {
    read_figure(report, out, |h| Some(h.report.closure_residual() / h.unit))
}

/// Operational mode classification.
#[no_mangle]
pub extern "C" fn se_report_mode(report: *const se_report, out: *mut se_mode) -> se_status {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return fail(se_status::SE_ERR_NULL, "null pointer argument");
        }
        let mode = match unsafe { &*report }.report.mode {
            Mode::Engine => se_mode::SE_MODE_ENGINE,
            Mode::Refrigerator => se_mode::SE_MODE_REFRIGERATOR,
            Mode::Accelerator => se_mode::SE_MODE_ACCELERATOR,
            Mode::Heater => se_mode::SE_MODE_HEATER,
            Mode::None => se_mode::SE_MODE_NONE,
        };
        unsafe { *out = mode };
        se_status::SE_OK
    })
}

/// Number of strokes in the cycle (4 or 6).
#[no_mangle]
pub extern "C" fn se_report_stroke_count(report: *const se_report, out: *mut usize) -> se_status {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return fail(se_status::SE_ERR_NULL, "null pointer argument");
        }
        unsafe { *out = (*report).report.ledgers.len() };
        se_status::SE_OK
    })
}

/// Copy one stroke's ledger, zero-indexed in execution order.
#[no_mangle]
pub extern "C" fn se_report_stroke(
    report: *const se_report,
    index: usize,
    out: *mut se_stroke,
) -> se_status {
    guarded(|| {
        if report.is_null() || out.is_null() {
            return fail(se_status::SE_ERR_NULL, "null pointer argument");
        }
        let handle = unsafe { &*report };
        let Some(ledger) = handle.report.ledgers.get(index) else {
            return fail(
                se_status::SE_ERR_CONFIG,
                &format!("stroke index {index} out of range 0..{}", handle.report.ledgers.len()),
            );
        };
        let kind = match ledger.kind {
            StrokeKind::Adiabat => se_stroke_kind::SE_STROKE_ADIABAT,
            StrokeKind::Isochore => se_stroke_kind::SE_STROKE_ISOCHORE,
            StrokeKind::StatIsotherm => se_stroke_kind::SE_STROKE_STAT_ISOTHERM,
            StrokeKind::GvIsochore => se_stroke_kind::SE_STROKE_GV_ISOCHORE,
        };
        let u = handle.unit;
        unsafe {
            *out = se_stroke {
                kind,
                d_u: ledger.d_u / u,
                work: ledger.work / u,
                heat: ledger.heat / u,
                heat_stat: ledger.heat_stat / u,
                work_stat: ledger.work_stat / u,
                t_out: ledger.state_out.temperature / u,
            };
        }
        se_status::SE_OK
    })
}

/// Maximize net work over the trap-size ratio r in [r_min, r_max] at fixed
/// baths (T_F units). Pass `coarse_points = 0` for the default scan density.
#[no_mangle]
pub extern "C" fn se_optimize_ratio(
    variant: se_variant,
    order: se_order,
    spectrum: se_spectrum,
    n_particles: u64,
    t_c: f64,
    t_h: f64,
    r_min: f64,
    r_max: f64,
    coarse_points: usize,
    out: *mut se_optimum,
) -> se_status {
    guarded(|| {
        if out.is_null() {
            return fail(se_status::SE_ERR_NULL, "out pointer is null");
        }
        let mut spec = OptimizeSpec::new(
            variant_of(variant),
            order_of(order),
            spectrum_of(spectrum),
            n_particles,
            t_c,
            t_h,
        );
        let defaults = OptimizeParams::default();
        spec.params.interval = (r_min, r_max);
        spec.params.coarse_points =
            if coarse_points == 0 { defaults.coarse_points } else { coarse_points };
        let result = match optimize_ratio(&spec) {
            Ok(r) => r,
            Err(e) => return fail_with(&e),
        };
        unsafe {
            *out = se_optimum {
                t_c: result.t_c,
                t_h: result.t_h,
                best_ratio: result.best_ratio,
                boundary: result.boundary,
                w_max: result.w_max,
                eta_mw: result.eta_mw.unwrap_or(f64::NAN),
                sigma: result.sigma.unwrap_or(f64::NAN),
                sigma_s: result.sigma_s.unwrap_or(f64::NAN),
            };
        }
        se_status::SE_OK
    })
}
