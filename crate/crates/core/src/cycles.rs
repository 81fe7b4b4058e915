//! Cycle composition: the statistics-switching four-stroke engine (switch
//! during the adiabats), the six-stroke engine (switch isothermally while
//! coupled to the baths), the all-heat bookkeeping variant of the latter, and
//! the three statistics-free baselines. Reports carry per-stroke ledgers plus
//! the cycle-level figures of merit and an operational-mode label.

use crate::ensembles::{make_state, StatKind, ThermalState};
use crate::error::{Error, Result};
use crate::spectra::{CompressionSpec, SpectrumKind};
use crate::strokes::{adiabat, gv_isochore, isochore, statistical_isotherm, StrokeLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Four strokes; statistics change during the adiabats.
    A,
    /// Six strokes; statistics change isothermally at bath temperature with a
    /// heat/work split.
    T,
    /// Same sequence as `T` but every thermal-leg energy change is booked as
    /// heat ("global variable" convention).
    Gv,
    /// One distinguishable particle, Boltzmann statistics, plain Otto cycle.
    BaselineSingle,
    /// Fermi-Dirac medium throughout, no statistics change.
    BaselineFermi,
    /// Bose-Einstein medium throughout, no statistics change.
    BaselineBose,
}

impl Variant {
    pub fn is_baseline(self) -> bool {
        matches!(self, Variant::BaselineSingle | Variant::BaselineFermi | Variant::BaselineBose)
    }
}

/// Which statistics the medium holds during the compression stroke (first
/// tag) and the expansion stroke (second tag).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    BgTg,
    TgBg,
    /// Baselines never switch statistics.
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Engine,
    Refrigerator,
    Accelerator,
    Heater,
    None,
}

#[derive(Debug, Clone)]
pub struct CycleSpec {
    pub variant: Variant,
    pub order: Order,
    pub compression: CompressionSpec,
    /// Cold-bath temperature, absolute units.
    pub t_c: f64,
    /// Hot-bath temperature, absolute units.
    pub t_h: f64,
    pub n_particles: u64,
    pub spectrum_kind: SpectrumKind,
}

impl CycleSpec {
    /// Bath temperatures given in units of the Fermi temperature at the
    /// compressed trap (point b), the natural reporting scale.
    pub fn from_reduced_temperatures(
        variant: Variant,
        order: Order,
        spectrum_kind: SpectrumKind,
        compression: CompressionSpec,
        n_particles: u64,
        t_c_reduced: f64,
        t_h_reduced: f64,
    ) -> Result<Self> {
        let t_f = compression.spectrum_b(spectrum_kind).fermi_energy(n_particles);
        let spec = CycleSpec {
            variant,
            order,
            compression,
            t_c: t_c_reduced * t_f,
            t_h: t_h_reduced * t_f,
            n_particles,
            spectrum_kind,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_c >= 0.0) || !(self.t_h >= 0.0) || !self.t_c.is_finite() || !self.t_h.is_finite() {
            return Err(Error::Config(format!(
                "bath temperatures must be finite and ≥ 0 (T_c = {}, T_h = {})",
                self.t_c, self.t_h
            )));
        }
        if self.n_particles < 1 {
            return Err(Error::Config("particle number must be ≥ 1".into()));
        }
        if !self.variant.is_baseline() && self.order == Order::NotApplicable {
            return Err(Error::Config(format!(
                "variant {:?} needs a statistics order",
                self.variant
            )));
        }
        if self.variant.is_baseline() && self.order != Order::NotApplicable {
            return Err(Error::Config(format!(
                "variant {:?} never switches statistics; drop the order",
                self.variant
            )));
        }
        Ok(())
    }

    /// Fermi energy at the compressed trap — the energy/temperature unit all
    /// reports are quoted against.
    pub fn fermi_energy_b(&self) -> f64 {
        self.compression
            .spectrum_b(self.spectrum_kind)
            .fermi_energy(self.n_particles)
    }

    /// Otto efficiency of the compression alone.
    pub fn otto_efficiency(&self) -> f64 {
        1.0 - self.compression.ratio_squared(self.spectrum_kind)
    }

    /// (compression stats, expansion stats) for the switching variants.
    fn stats_pair(&self) -> (StatKind, StatKind) {
        match self.order {
            Order::BgTg => (StatKind::BoseGas, StatKind::TonksGirardeau),
            Order::TgBg => (StatKind::TonksGirardeau, StatKind::BoseGas),
            Order::NotApplicable => {
                let s = match self.variant {
                    Variant::BaselineFermi => StatKind::TonksGirardeau,
                    Variant::BaselineBose => StatKind::BoseGas,
                    _ => StatKind::SingleParticleBoltzmann,
                };
                (s, s)
            }
        }
    }

    /// The medium's particle count: baselines against one Boltzmann particle
    /// use exactly one.
    fn medium_n(&self) -> u64 {
        if self.variant == Variant::BaselineSingle {
            1
        } else {
            self.n_particles
        }
    }
}

#[derive(Debug, Clone)]
pub struct CycleReport {
    pub ledgers: Vec<StrokeLedger>,
    /// Net extracted work, −ΣW over all strokes (statistical work included).
    pub w_out: f64,
    /// Total heat exchanged while coupled to the hot bath.
    pub q_in: f64,
    /// Total heat exchanged while coupled to the cold bath.
    pub q_out: f64,
    /// Absent when the device is not producing work from positive heat input.
    pub eta: Option<f64>,
    /// Work output relative to N independent single-particle engines; filled
    /// by [`work_gain`].
    pub gain: Option<f64>,
    /// Fraction of hot-bath heat entering through plain thermalization
    /// (six-stroke variants only).
    pub sigma: Option<f64>,
    /// Fraction entering through the statistics switch; complements `sigma`.
    pub sigma_s: Option<f64>,
    pub mode: Mode,
}

impl CycleReport {
    /// Σ dU over the ledger — zero for a closed cycle up to accumulation.
    pub fn closure_residual(&self) -> f64 {
        self.ledgers.iter().map(|l| l.d_u).sum()
    }
}

/// Sign deadband for mode classification, scaled to the medium's energy.
pub fn mode_deadband(spec: &CycleSpec) -> f64 {
    let n = spec.medium_n();
    1e-12 * n as f64 * spec.compression.spectrum_b(spec.spectrum_kind).fermi_energy(n)
}

/// Operational-mode label from the signs of (Q_in, Q_out, W_out); magnitudes
/// below `eps` satisfy either sign. First match wins in the order
/// Engine, Refrigerator, Accelerator, Heater.
pub fn classify_mode(q_in: f64, q_out: f64, w_out: f64, eps: f64) -> Mode {
    let pos = |v: f64| v >= -eps;
    let neg = |v: f64| v <= eps;
    if pos(q_in) && neg(q_out) && pos(w_out) {
        Mode::Engine
    } else if neg(q_in) && pos(q_out) && neg(w_out) {
        Mode::Refrigerator
    } else if pos(q_in) && neg(q_out) && neg(w_out) {
        Mode::Accelerator
    } else if neg(q_in) && neg(q_out) && neg(w_out) {
        Mode::Heater
    } else {
        Mode::None
    }
}

fn stroke_context(variant: Variant, index: usize, err: Error) -> Error {
    Error::numerical(
        "cycle evaluation",
        format!("{variant:?} cycle stroke {index}: {err}"),
    )
}

/// Four strokes, statistics switching during the adiabats:
/// adiabat(a→b) → isochore(T_h) → adiabat(c→d) → isochore(T_c).
pub fn run_a_cycle(spec: &CycleSpec) -> Result<CycleReport> {
    if spec.variant != Variant::A {
        return Err(Error::Config(format!("run_a_cycle got variant {:?}", spec.variant)));
    }
    spec.validate()?;
    let (stats_compressed, stats_expanded) = spec.stats_pair();
    let spec_a = spec.compression.spectrum_a(spec.spectrum_kind);
    let spec_b = spec.compression.spectrum_b(spec.spectrum_kind);
    let start = make_state(stats_compressed, spec_a, spec.n_particles, spec.t_c)
        .map_err(|e| stroke_context(spec.variant, 0, e))?;
    let ledgers = four_stroke(spec, &start, spec_b, stats_expanded, stats_compressed)?;
    Ok(assemble(spec, ledgers, &[1], &[3]))
}

/// The statistics-free Otto cycle for the three reference media.
pub fn run_baseline(spec: &CycleSpec) -> Result<CycleReport> {
    if !spec.variant.is_baseline() {
        return Err(Error::Config(format!("run_baseline got variant {:?}", spec.variant)));
    }
    spec.validate()?;
    let (stats, _) = spec.stats_pair();
    let spec_a = spec.compression.spectrum_a(spec.spectrum_kind);
    let spec_b = spec.compression.spectrum_b(spec.spectrum_kind);
    let start = make_state(stats, spec_a, spec.medium_n(), spec.t_c)
        .map_err(|e| stroke_context(spec.variant, 0, e))?;
    let ledgers = four_stroke(spec, &start, spec_b, stats, stats)?;
    Ok(assemble(spec, ledgers, &[1], &[3]))
}

fn four_stroke(
    spec: &CycleSpec,
    start: &ThermalState,
    spec_b: crate::spectra::Spectrum,
    stats_hot: StatKind,
    stats_cold: StatKind,
) -> Result<Vec<StrokeLedger>> {
    let v = spec.variant;
    let s1 = adiabat(start, spec_b, stats_hot).map_err(|e| stroke_context(v, 1, e))?;
    let s2 = isochore(&s1.state_out, spec.t_h).map_err(|e| stroke_context(v, 2, e))?;
    let s3 = adiabat(&s2.state_out, start.spectrum, stats_cold).map_err(|e| stroke_context(v, 3, e))?;
    let s4 = isochore(&s3.state_out, spec.t_c).map_err(|e| stroke_context(v, 4, e))?;
    Ok(vec![s1, s2, s3, s4])
}

/// Six strokes, statistics switching isothermally at each bath:
/// adiabat(a→b) → isochore(T_h) → switch(T_h) → adiabat(d→e) →
/// isochore(T_c) → switch(T_c).
pub fn run_t_cycle(spec: &CycleSpec) -> Result<CycleReport> {
    if spec.variant != Variant::T {
        return Err(Error::Config(format!("run_t_cycle got variant {:?}", spec.variant)));
    }
    spec.validate()?;
    let v = spec.variant;
    let (stats_compress, stats_expand) = spec.stats_pair();
    let spec_a = spec.compression.spectrum_a(spec.spectrum_kind);
    let spec_b = spec.compression.spectrum_b(spec.spectrum_kind);
    let start = make_state(stats_compress, spec_a, spec.n_particles, spec.t_c)
        .map_err(|e| stroke_context(v, 0, e))?;
    let s1 = adiabat(&start, spec_b, stats_compress).map_err(|e| stroke_context(v, 1, e))?;
    let s2 = isochore(&s1.state_out, spec.t_h).map_err(|e| stroke_context(v, 2, e))?;
    let s3 = statistical_isotherm(&s2.state_out, stats_expand, spec.t_h).map_err(|e| stroke_context(v, 3, e))?;
    let s4 = adiabat(&s3.state_out, spec_a, stats_expand).map_err(|e| stroke_context(v, 4, e))?;
    let s5 = isochore(&s4.state_out, spec.t_c).map_err(|e| stroke_context(v, 5, e))?;
    let s6 = statistical_isotherm(&s5.state_out, stats_compress, spec.t_c).map_err(|e| stroke_context(v, 6, e))?;
    Ok(assemble(spec, vec![s1, s2, s3, s4, s5, s6], &[1, 2], &[4, 5]))
}

/// Same sequence as [`run_t_cycle`] with each thermal leg split into two
/// all-heat strokes (thermalize, then switch); the heat input telescopes to
/// the bare energy difference across the hot leg.
pub fn run_gv_cycle(spec: &CycleSpec) -> Result<CycleReport> {
    if spec.variant != Variant::Gv {
        return Err(Error::Config(format!("run_gv_cycle got variant {:?}", spec.variant)));
    }
    spec.validate()?;
    let v = spec.variant;
    let (stats_compress, stats_expand) = spec.stats_pair();
    let spec_a = spec.compression.spectrum_a(spec.spectrum_kind);
    let spec_b = spec.compression.spectrum_b(spec.spectrum_kind);
    let start = make_state(stats_compress, spec_a, spec.n_particles, spec.t_c)
        .map_err(|e| stroke_context(v, 0, e))?;
    let s1 = adiabat(&start, spec_b, stats_compress).map_err(|e| stroke_context(v, 1, e))?;
    let s2 = gv_isochore(&s1.state_out, spec.t_h, stats_compress).map_err(|e| stroke_context(v, 2, e))?;
    let s3 = gv_isochore(&s2.state_out, spec.t_h, stats_expand).map_err(|e| stroke_context(v, 3, e))?;
    let s4 = adiabat(&s3.state_out, spec_a, stats_expand).map_err(|e| stroke_context(v, 4, e))?;
    let s5 = gv_isochore(&s4.state_out, spec.t_c, stats_expand).map_err(|e| stroke_context(v, 5, e))?;
    let s6 = gv_isochore(&s5.state_out, spec.t_c, stats_compress).map_err(|e| stroke_context(v, 6, e))?;
    Ok(assemble(spec, vec![s1, s2, s3, s4, s5, s6], &[1, 2], &[4, 5]))
}

/// Dispatch on the variant.
pub fn run_cycle(spec: &CycleSpec) -> Result<CycleReport> {
    match spec.variant {
        Variant::A => run_a_cycle(spec),
        Variant::T => run_t_cycle(spec),
        Variant::Gv => run_gv_cycle(spec),
        _ => run_baseline(spec),
    }
}

fn assemble(spec: &CycleSpec, ledgers: Vec<StrokeLedger>, hot: &[usize], cold: &[usize]) -> CycleReport {
    let w_out = -ledgers.iter().map(|l| l.work).sum::<f64>();
    let q_in: f64 = hot.iter().map(|&i| ledgers[i].heat).sum();
    let q_out: f64 = cold.iter().map(|&i| ledgers[i].heat).sum();

    let eta = match spec.variant {
        // bookkeeping identity: every energy difference is heat, so the
        // ratio is meaningful whenever any heat flowed in
        Variant::Gv => (q_in != 0.0).then(|| w_out / q_in),
        _ => (w_out > 0.0 && q_in > 0.0).then(|| w_out / q_in),
    };

    let (sigma, sigma_s) = if matches!(spec.variant, Variant::T) && q_in != 0.0 {
        let s = ledgers[1].heat / q_in;
        (Some(s), Some(1.0 - s))
    } else {
        (None, None)
    };

    let mode = classify_mode(q_in, q_out, w_out, mode_deadband(spec));
    CycleReport {
        ledgers,
        w_out,
        q_in,
        q_out,
        eta,
        gain: None,
        sigma,
        sigma_s,
        mode,
    }
}

/// Work output relative to N independent single-particle engines run between
/// the same baths over the same compression. Absent when the reference is not
/// itself an engine.
pub fn work_gain(report: &CycleReport, spec: &CycleSpec) -> Result<Option<f64>> {
    let reference_spec = CycleSpec {
        variant: Variant::BaselineSingle,
        order: Order::NotApplicable,
        ..spec.clone()
    };
    let reference = run_baseline(&reference_spec)?;
    if reference.mode != Mode::Engine || !(reference.w_out > 0.0) {
        return Ok(None);
    }
    Ok(Some(report.w_out / (spec.n_particles as f64 * reference.w_out)))
}
