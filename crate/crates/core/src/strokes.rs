//! Stroke primitives for Otto-style cycles: isentropic trap changes (with or
//! without a statistics switch), isochoric thermalization, the isothermal
//! statistics switch with its heat/work split, and the variant that books all
//! thermal-leg energy changes as heat.
//!
//! Sign convention: `work` is done ON the medium (positive = invested),
//! `heat` flows INTO the medium (positive = absorbed). Net engine output is
//! the negated work sum over a cycle.

use std::cell::Cell;

use crate::ensembles::{make_state, StatKind, ThermalState};
use crate::error::{Error, Result};
use crate::numerics::{brent_root, expand_bracket_increasing};
use crate::spectra::Spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrokeKind {
    Adiabat,
    Isochore,
    StatIsotherm,
    GvIsochore,
}

/// Energy bookkeeping for one stroke. `d_u = work + heat` holds exactly for
/// every kind; the statistical split (`heat_stat`, `work_stat`) is nonzero
/// only for `StatIsotherm`, where `work == work_stat` and `heat == heat_stat`.
#[derive(Debug, Clone)]
pub struct StrokeLedger {
    pub kind: StrokeKind,
    pub d_u: f64,
    pub work: f64,
    pub heat: f64,
    pub heat_stat: f64,
    pub work_stat: f64,
    pub state_out: ThermalState,
}

/// Relative entropy-matching tolerance for adiabats.
fn tol_s(s_in: f64) -> f64 {
    1e-10 * s_in.max(1.0)
}

/// Isentropic stroke: change the trap scale and (optionally) the statistics,
/// solving for the effective temperature that conserves entropy. The output
/// spectrum must be of the same kind as the input's.
pub fn adiabat(state_in: &ThermalState, spectrum_out: Spectrum, stats_out: StatKind) -> Result<StrokeLedger> {
    if spectrum_out.kind != state_in.spectrum.kind {
        return Err(Error::Config(format!(
            "adiabat cannot change spectrum kind ({:?} -> {:?})",
            state_in.spectrum.kind, spectrum_out.kind
        )));
    }
    let n = state_in.n_particles;
    let s_target = state_in.entropy();
    let state_out = if s_target == 0.0 {
        // zero entropy pins the target to its own ground state
        make_state(stats_out, spectrum_out, n, 0.0)?
    } else {
        let t_out = match_entropy(stats_out, spectrum_out, n, s_target, initial_guess(state_in, spectrum_out))?;
        make_state(stats_out, spectrum_out, n, t_out)?
    };
    let d_u = state_out.total_energy() - state_in.total_energy();
    Ok(StrokeLedger {
        kind: StrokeKind::Adiabat,
        d_u,
        work: d_u,
        heat: 0.0,
        heat_stat: 0.0,
        work_stat: 0.0,
        state_out,
    })
}

/// First-guess effective temperature from the spectral rescaling alone:
/// (L_in/L_out)² for the box, ω_out/ω_in for the harmonic trap. Exact for a
/// same-statistics stroke (the spectrum rescales uniformly).
fn initial_guess(state_in: &ThermalState, spectrum_out: Spectrum) -> f64 {
    state_in.temperature * spectrum_out.first_level() / state_in.spectrum.first_level()
}

/// Solve S(stats, spectrum, N, T) = s_target for T. S is strictly increasing
/// in T, so a bracketing search is unconditionally safe.
fn match_entropy(stats: StatKind, spectrum: Spectrum, n: u64, s_target: f64, t_guess: f64) -> Result<f64> {
    let failure: Cell<Option<Error>> = Cell::new(None);
    let g = |t: f64| match make_state(stats, spectrum, n, t) {
        Ok(state) => state.entropy() - s_target,
        Err(e) => {
            failure.set(Some(e));
            f64::NAN
        }
    };
    let seed = if t_guess > 0.0 { t_guess } else { 1.0 };
    let bracket = expand_bracket_increasing(&g, seed / 4.0, seed * 4.0, 4.0, 80, "adiabat entropy match");
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let (lo, hi, glo, ghi) = bracket?;
    let root = brent_root(&g, lo, hi, glo, ghi, 4.0 * f64::EPSILON, "adiabat entropy match");
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let t_out = root?;
    let residual = (make_state(stats, spectrum, n, t_out)?.entropy() - s_target).abs();
    if residual > tol_s(s_target) {
        return Err(Error::numerical(
            "adiabat entropy match",
            format!("entropy residual {residual:e} exceeds tolerance at T = {t_out:e}"),
        ));
    }
    Ok(t_out)
}

/// Thermalization with a bath at fixed trap and statistics: all energy change
/// is heat.
pub fn isochore(state_in: &ThermalState, t_bath: f64) -> Result<StrokeLedger> {
    let state_out = make_state(state_in.stats, state_in.spectrum, state_in.n_particles, t_bath)?;
    let d_u = state_out.total_energy() - state_in.total_energy();
    Ok(StrokeLedger {
        kind: StrokeKind::Isochore,
        d_u,
        work: 0.0,
        heat: d_u,
        heat_stat: 0.0,
        work_stat: 0.0,
        state_out,
    })
}

/// Statistics switch at fixed trap while coupled to a bath the medium is
/// already equilibrated with. The energy change splits into statistical heat
/// Q_s = T·ΔS and statistical work W_s = ΔU − Q_s.
pub fn statistical_isotherm(state_in: &ThermalState, stats_out: StatKind, t_bath: f64) -> Result<StrokeLedger> {
    let t_in = state_in.temperature;
    if (t_in - t_bath).abs() > 1e-9 * t_in.max(t_bath) {
        return Err(Error::Domain(format!(
            "statistical isotherm requires the medium at bath temperature (T = {t_in:e}, bath = {t_bath:e})"
        )));
    }
    let state_out = make_state(stats_out, state_in.spectrum, state_in.n_particles, t_bath)?;
    let d_u = state_out.total_energy() - state_in.total_energy();
    let heat_stat = t_bath * (state_out.entropy() - state_in.entropy());
    let work_stat = d_u - heat_stat;
    Ok(StrokeLedger {
        kind: StrokeKind::StatIsotherm,
        d_u,
        work: work_stat,
        heat: heat_stat,
        heat_stat,
        work_stat,
        state_out,
    })
}

/// Thermal leg in the convention that books the whole energy difference as
/// heat (no statistical work split), optionally switching statistics.
pub fn gv_isochore(state_in: &ThermalState, t_bath: f64, stats_out: StatKind) -> Result<StrokeLedger> {
    let state_out = make_state(stats_out, state_in.spectrum, state_in.n_particles, t_bath)?;
    let d_u = state_out.total_energy() - state_in.total_energy();
    Ok(StrokeLedger {
        kind: StrokeKind::GvIsochore,
        d_u,
        work: 0.0,
        heat: d_u,
        heat_stat: 0.0,
        work_stat: 0.0,
        state_out,
    })
}
