//! Equilibrium thermodynamics of ideal gases on a discrete spectrum:
//! Bose-Einstein, Fermi-Dirac (which is also the thermodynamics of the
//! Tonks-Girardeau gas), and the single-particle Boltzmann medium.
//!
//! Chemical potentials are solved to near machine precision; T = 0 states are
//! exact constructions (Fermi step / condensate), never solver limits.

use crate::error::{Error, Result};
use crate::numerics::{brent_root, ln_one_minus_exp_neg, softplus};
use crate::spectra::Spectrum;

/// Occupation-sum closure tolerance, relative to N.
pub const TOL_N_REL: f64 = 1e-10;

/// Occupations below e^{-X_CUT} are treated as zero (level-sum early exit and
/// truncation policy share this constant).
const X_CUT: f64 = 46.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    BoseGas,
    /// Strongly repulsive bosons; thermodynamically identical to ideal
    /// spin-polarized fermions, so all formulas here are Fermi-Dirac.
    TonksGirardeau,
    SingleParticleBoltzmann,
}

impl StatKind {
    pub fn is_quantum(self) -> bool {
        !matches!(self, StatKind::SingleParticleBoltzmann)
    }
}

/// An equilibrium state. Energy and entropy are evaluated at construction
/// (single pass over the levels) and cached; occupations are recomputed on
/// demand from (stats, mu, T).
#[derive(Debug, Clone)]
pub struct ThermalState {
    pub stats: StatKind,
    pub spectrum: Spectrum,
    pub n_particles: u64,
    pub temperature: f64,
    /// Not applicable (None) for the Boltzmann medium and reported as the
    /// highest filled level (FD) or the ground level (BE) at T = 0.
    pub mu: Option<f64>,
    pub n_max: usize,
    energy: f64,
    entropy: f64,
}

impl ThermalState {
    /// Σ occ_n·E_n (Boltzmann: N·Σ p_n E_n with p_n = e^{−E_n/T}/Z).
    pub fn total_energy(&self) -> f64 {
        self.energy
    }

    /// Gibbs entropy in units of k_B; exactly 0 at T = 0.
    pub fn entropy(&self) -> f64 {
        self.entropy
    }
}

/// Mean occupation of a level. BE: 1/(e^{(E−μ)/T} − 1); FD: 1/(e^{(E−μ)/T} + 1);
/// Boltzmann: the unnormalized weight e^{−E/T}.
pub fn occupation(stats: StatKind, e: f64, mu: f64, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::Domain(format!("occupation requires T > 0, got {t}")));
    }
    match stats {
        StatKind::BoseGas => {
            if e <= mu {
                return Err(Error::Domain(format!(
                    "Bose-Einstein occupation diverges for E ≤ μ (E = {e}, μ = {mu})"
                )));
            }
            Ok(occ_be((e - mu) / t))
        }
        StatKind::TonksGirardeau => Ok(occ_fd((e - mu) / t)),
        StatKind::SingleParticleBoltzmann => Ok((-e / t).exp()),
    }
}

#[inline]
fn occ_fd(x: f64) -> f64 {
    if x > 0.0 {
        let ex = (-x).exp();
        ex / (1.0 + ex)
    } else {
        1.0 / (1.0 + x.exp())
    }
}

#[inline]
fn occ_be(x: f64) -> f64 {
    // x > 0; 1/expm1 is accurate for tiny x and underflows cleanly to 0
    1.0 / x.exp_m1()
}

/// Truncation: smallest level count covering E_n ≤ μ₊ + X_CUT·T with margin,
/// floored at N + 64.
fn truncation(spectrum: &Spectrum, n_particles: u64, t: f64, mu_hint: f64) -> usize {
    let floor = n_particles as usize + 64;
    let e_top = mu_hint.max(0.0) + X_CUT * t + spectrum.first_level();
    let k = match spectrum.kind {
        crate::spectra::SpectrumKind::Box => spectrum.scale * e_top.sqrt() / std::f64::consts::PI,
        crate::spectra::SpectrumKind::Harmonic => e_top / spectrum.scale,
    };
    floor.max(k as usize + 2)
}

/// Σ occ over `levels` for quantum statistics; breaks out once the argument
/// exceeds X_CUT (levels ascend).
fn number_sum(fermi: bool, levels: &[f64], mu: f64, t: f64) -> f64 {
    let mut total = 0.0;
    for &e in levels {
        let x = (e - mu) / t;
        if x > X_CUT {
            break;
        }
        total += if fermi { occ_fd(x) } else { occ_be(x) };
    }
    total
}

/// One pass computing (Σocc, ΣE·occ, S) for FD/BE at given μ.
fn state_sums(fermi: bool, levels: &[f64], mu: f64, t: f64) -> (f64, f64, f64) {
    let (mut num, mut energy, mut entropy) = (0.0, 0.0, 0.0);
    for &e in levels {
        let x = (e - mu) / t;
        if x > X_CUT {
            break;
        }
        if fermi {
            let f = occ_fd(x);
            num += f;
            energy += f * e;
            // −[f ln f + (1−f) ln(1−f)] in the stable softplus form
            entropy += f * softplus(x) + (1.0 - f) * softplus(-x);
        } else {
            let b = occ_be(x);
            num += b;
            energy += b * e;
            // (1+b)ln(1+b) − b ln b reduces to b·x − ln(1 − e^{−x})
            entropy += b * x - ln_one_minus_exp_neg(x);
        }
    }
    (num, energy, entropy)
}

/// Chemical potential with Σ occupations = N to within TOL_N_REL·N.
pub fn solve_mu(stats: StatKind, spectrum: &Spectrum, n_particles: u64, t: f64) -> Result<f64> {
    if n_particles < 1 {
        return Err(Error::Domain("need at least one particle".into()));
    }
    if !(t > 0.0) {
        return Err(Error::Domain(format!("solve_mu requires T > 0, got {t}")));
    }
    match stats {
        StatKind::TonksGirardeau => solve_mu_fd(spectrum, n_particles, t),
        StatKind::BoseGas => solve_mu_be(spectrum, n_particles, t),
        StatKind::SingleParticleBoltzmann => Err(Error::Domain(
            "the Boltzmann medium has no chemical potential".into(),
        )),
    }
}

fn solve_mu_fd(spectrum: &Spectrum, n_particles: u64, t: f64) -> Result<f64> {
    let e_f = spectrum.fermi_energy(n_particles);
    let n_max = truncation(spectrum, n_particles, t, e_f);
    let levels = spectrum.levels(n_max);
    let target = n_particles as f64;
    let g = |mu: f64| number_sum(true, &levels, mu, t) - target;
    // μ lies below E_F always and above E_F − O(T·ln) in the classical limit;
    // these bounds are provably bracketing.
    let lo = spectrum.first_level() - X_CUT * t - (e_f + 1.0);
    let hi = e_f + X_CUT * t;
    let (glo, ghi) = (g(lo), g(hi));
    let mu = brent_root(g, lo, hi, glo, ghi, 4.0 * f64::EPSILON, "solve_mu (Fermi-Dirac)")?;
    check_closure(number_sum(true, &levels, mu, t), target, spectrum, t)?;
    Ok(mu)
}

fn solve_mu_be(spectrum: &Spectrum, n_particles: u64, t: f64) -> Result<f64> {
    // μ = E₁ − e^y keeps resolution when E₁ − μ spans many decades near
    // condensation; Σocc is decreasing in y, so solve N − Σocc = 0 (increasing).
    let e1 = spectrum.first_level();
    let n_max = truncation(spectrum, n_particles, t, e1);
    let levels = spectrum.levels(n_max);
    let target = n_particles as f64;
    let g = |y: f64| {
        let mu = e1 - y.exp();
        target - number_sum(false, &levels, mu, t)
    };
    let y0 = (t / target).ln(); // near-condensate estimate b₁ ≈ N
    let (mut lo, mut hi) = (y0 - 4.0, y0 + 4.0);
    let (mut glo, mut ghi) = (g(lo), g(hi));
    let mut k = 0usize;
    while glo > 0.0 {
        hi = lo;
        ghi = glo;
        lo -= 8.0;
        glo = g(lo);
        k += 1;
        if k > 200 {
            return Err(Error::numerical("solve_mu (Bose-Einstein)", "bracket expansion exhausted (low side)"));
        }
    }
    while ghi < 0.0 {
        lo = hi;
        glo = ghi;
        hi += 8.0;
        ghi = g(hi);
        k += 1;
        if k > 200 {
            return Err(Error::numerical("solve_mu (Bose-Einstein)", "bracket expansion exhausted (high side)"));
        }
    }
    let y = brent_root(g, lo, hi, glo, ghi, 4.0 * f64::EPSILON, "solve_mu (Bose-Einstein)")?;
    let mu = e1 - y.exp();
    check_closure(number_sum(false, &levels, mu, t), target, spectrum, t)?;
    Ok(mu)
}

fn check_closure(total: f64, target: f64, spectrum: &Spectrum, t: f64) -> Result<()> {
    if (total - target).abs() > TOL_N_REL * target {
        return Err(Error::numerical(
            "solve_mu",
            format!(
                "occupation sum {total} misses N = {target} beyond tolerance (spectrum {spectrum:?}, T = {t:e})"
            ),
        ));
    }
    Ok(())
}

/// Constructs an equilibrium state; T = 0 is built exactly.
pub fn make_state(stats: StatKind, spectrum: Spectrum, n_particles: u64, t: f64) -> Result<ThermalState> {
    if n_particles < 1 {
        return Err(Error::Domain("need at least one particle".into()));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain(format!("temperature must be ≥ 0, got {t}")));
    }
    if t == 0.0 {
        return Ok(zero_temperature_state(stats, spectrum, n_particles));
    }
    match stats {
        StatKind::TonksGirardeau | StatKind::BoseGas => {
            let fermi = stats == StatKind::TonksGirardeau;
            let mu = solve_mu(stats, &spectrum, n_particles, t)?;
            let n_max = truncation(&spectrum, n_particles, t, mu);
            let levels = spectrum.levels(n_max);
            let (_, energy, entropy) = state_sums(fermi, &levels, mu, t);
            Ok(ThermalState {
                stats,
                spectrum,
                n_particles,
                temperature: t,
                mu: Some(mu),
                n_max,
                energy,
                entropy,
            })
        }
        StatKind::SingleParticleBoltzmann => {
            // N independent distinguishable particles; energies measured with
            // the ground level factored out of the weights for stability.
            let e1 = spectrum.first_level();
            let n_max = truncation(&spectrum, n_particles, t, e1);
            let levels = spectrum.levels(n_max);
            let (mut z, mut ez) = (0.0, 0.0);
            for &e in &levels {
                let x = (e - e1) / t;
                if x > X_CUT {
                    break;
                }
                let w = (-x).exp();
                z += w;
                ez += w * e;
            }
            let e_mean = ez / z;
            let n = n_particles as f64;
            Ok(ThermalState {
                stats,
                spectrum,
                n_particles,
                temperature: t,
                mu: None,
                n_max,
                energy: n * e_mean,
                entropy: n * (z.ln() + (e_mean - e1) / t),
            })
        }
    }
}

fn zero_temperature_state(stats: StatKind, spectrum: Spectrum, n_particles: u64) -> ThermalState {
    let off = spectrum.level_offset();
    let (energy, mu, n_max) = match stats {
        StatKind::TonksGirardeau => {
            let e: f64 = (0..n_particles).map(|i| spectrum.level_unchecked(off + i)).sum();
            let top = spectrum.level_unchecked(off + n_particles - 1);
            (e, Some(top), n_particles as usize)
        }
        StatKind::BoseGas => {
            let e1 = spectrum.first_level();
            (n_particles as f64 * e1, Some(e1), 1)
        }
        StatKind::SingleParticleBoltzmann => {
            let e1 = spectrum.first_level();
            (n_particles as f64 * e1, None, 1)
        }
    };
    ThermalState {
        stats,
        spectrum,
        n_particles,
        temperature: 0.0,
        mu,
        n_max,
        energy,
        entropy: 0.0,
    }
}
