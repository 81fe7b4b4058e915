//! Built-in oracle suite: checks the closed-form predictions and structural
//! invariants against the level-sum numerics on a fresh build. Every check
//! reports the worst deviation it measured together with its tolerance.

use crate::analytics::{
    energy_bg_degenerate, energy_bg_nondegenerate, energy_tg_degenerate, energy_tg_nondegenerate,
    entropy_bg_degenerate, entropy_bg_nondegenerate, entropy_tg_degenerate,
    entropy_tg_nondegenerate, eta_high_temperature,
};
use crate::cycles::{run_cycle, CycleSpec, Order, Variant};
use crate::ensembles::{make_state, StatKind};
use crate::error::{Error, Result};
use crate::spectra::{CompressionSpec, Spectrum, SpectrumKind};
use crate::strokes::adiabat;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// Worst deviation found (relative unless the name says otherwise).
    pub measured: f64,
    pub limit: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.measured <= self.limit
    }
}

const N: u64 = 500;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn cycle_spec(variant: Variant, order: Order, ratio2: f64, t_c: f64, t_h: f64) -> Result<CycleSpec> {
    let compression = CompressionSpec::from_ratio_squared(SpectrumKind::Box, ratio2, 1.0)?;
    CycleSpec::from_reduced_temperatures(variant, order, SpectrumKind::Box, compression, N, t_c, t_h)
}

/// Run every check; `Err` only when a check cannot even be evaluated.
pub fn run_validation() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let spectrum = Spectrum::new_box(1.0)?;
    let e_f = spectrum.fermi_energy(N);
    let density = N as f64;

    // Closed forms against level sums, degenerate side. The fermionized
    // entropy series carries the largest truncation error, so it is sampled
    // on the narrower window where its stated 1% accuracy holds.
    let mut dev = [0.0f64; 4];
    for &t in &[0.05, 0.1, 0.15, 0.2] {
        let be = make_state(StatKind::BoseGas, spectrum, N, t * e_f)?;
        let fd = make_state(StatKind::TonksGirardeau, spectrum, N, t * e_f)?;
        dev[0] = dev[0].max(rel(energy_bg_degenerate(N, density, t), be.total_energy()));
        dev[1] = dev[1].max(rel(entropy_bg_degenerate(N, t), be.entropy()));
        dev[2] = dev[2].max(rel(energy_tg_degenerate(N, density, t), fd.total_energy()));
        if t <= 0.15 {
            dev[3] = dev[3].max(rel(entropy_tg_degenerate(N, t), fd.entropy()));
        }
    }
    out.push(CheckOutcome { name: "deg-energy-bg", measured: dev[0], limit: 0.01 });
    out.push(CheckOutcome { name: "deg-entropy-bg", measured: dev[1], limit: 0.01 });
    out.push(CheckOutcome { name: "deg-energy-tg", measured: dev[2], limit: 0.01 });
    out.push(CheckOutcome { name: "deg-entropy-tg", measured: dev[3], limit: 0.01 });

    // Non-degenerate side: the expansions hold above T ≈ 20 T_F (the energy
    // series still carries a ~0.6% miss at T = 10).
    let mut dev = [0.0f64; 4];
    for &t in &[20.0, 50.0, 100.0] {
        let be = make_state(StatKind::BoseGas, spectrum, N, t * e_f)?;
        let fd = make_state(StatKind::TonksGirardeau, spectrum, N, t * e_f)?;
        dev[0] = dev[0].max(rel(energy_bg_nondegenerate(N, density, t), be.total_energy()));
        dev[1] = dev[1].max(rel(entropy_bg_nondegenerate(N, t), be.entropy()));
        dev[2] = dev[2].max(rel(energy_tg_nondegenerate(N, density, t), fd.total_energy()));
        dev[3] = dev[3].max(rel(entropy_tg_nondegenerate(N, t), fd.entropy()));
    }
    out.push(CheckOutcome { name: "nondeg-energy-bg", measured: dev[0], limit: 0.01 });
    out.push(CheckOutcome { name: "nondeg-entropy-bg", measured: dev[1], limit: 0.01 });
    out.push(CheckOutcome { name: "nondeg-energy-tg", measured: dev[2], limit: 0.01 });
    out.push(CheckOutcome { name: "nondeg-entropy-tg", measured: dev[3], limit: 0.01 });

    // high-temperature efficiency limit, absolute deviation
    for (order, name) in [(Order::BgTg, "high-t-eta-bg-tg"), (Order::TgBg, "high-t-eta-tg-bg")] {
        let spec = cycle_spec(Variant::A, order, 0.1, 0.0, 1e4)?;
        let report = run_cycle(&spec)?;
        let eta = report.eta.ok_or_else(|| {
            Error::numerical("validation", "high-temperature cycle produced no efficiency")
        })?;
        let predicted = eta_high_temperature(Variant::A, order, 1e4, 0.1)?;
        out.push(CheckOutcome { name, measured: (eta - predicted).abs(), limit: 1e-3 });
    }

    // adiabatic invariant: T·L² in a box, T/ω in a trap
    let t0 = 0.3 * e_f;
    let state = make_state(StatKind::BoseGas, spectrum, N, t0)?;
    let stretched = adiabat(&state, Spectrum::new_box(2.0)?, StatKind::BoseGas)?;
    let mut worst = rel(stretched.state_out.temperature, t0 / 4.0);
    let trap = Spectrum::new_harmonic(1.0)?;
    let t1 = 0.4 * trap.fermi_energy(N);
    let state = make_state(StatKind::TonksGirardeau, trap, N, t1)?;
    let squeezed = adiabat(&state, Spectrum::new_harmonic(3.0)?, StatKind::TonksGirardeau)?;
    worst = worst.max(rel(squeezed.state_out.temperature, 3.0 * t1));
    out.push(CheckOutcome { name: "adiabat-invariant", measured: worst, limit: 1e-8 });

    // all-heat bookkeeping reduces the efficiency to the bare Otto value
    let mut worst = 0.0f64;
    for order in [Order::BgTg, Order::TgBg] {
        let report = run_cycle(&cycle_spec(Variant::Gv, order, 0.5, 0.2, 1.0)?)?;
        let eta = report
            .eta
            .ok_or_else(|| Error::numerical("validation", "all-heat cycle lost its efficiency"))?;
        worst = worst.max((eta - 0.5).abs());
    }
    out.push(CheckOutcome { name: "gv-efficiency-identity", measured: worst, limit: 1e-10 });

    // energy closure over a full cycle, in units of N·E_F
    let mut worst = 0.0f64;
    for spec in [
        cycle_spec(Variant::A, Order::BgTg, 0.5, 0.0, 1.0)?,
        cycle_spec(Variant::T, Order::TgBg, 0.5, 0.05, 0.5)?,
        cycle_spec(Variant::Gv, Order::BgTg, 0.5, 0.2, 1.0)?,
    ] {
        let report = run_cycle(&spec)?;
        worst = worst.max(report.closure_residual().abs() / (N as f64 * e_f));
    }
    out.push(CheckOutcome { name: "cycle-closure", measured: worst, limit: 1e-9 });

    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_build_passes_every_check() {
        let checks = run_validation().unwrap();
        assert_eq!(checks.len(), 13);
        for ch in &checks {
            assert!(
                ch.passed(),
                "{}: measured {} exceeds {}",
                ch.name,
                ch.measured,
                ch.limit
            );
        }
    }
}
