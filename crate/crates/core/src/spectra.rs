//! Single-particle spectra for the 1D hard-wall box and 1D harmonic trap.
//!
//! Natural units ħ = 2m = k_B = 1 throughout. Box levels are E_n = n²π²/L²
//! with n = 1, 2, …; harmonic levels are E_n = (n + ½)ω with n = 0, 1, ….

use crate::error::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    Box,
    Harmonic,
}

/// A trap spectrum: `scale` is the box length L (Box) or the trap frequency ω
/// (Harmonic), both positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub scale: f64,
}

impl Spectrum {
    pub fn new_box(length: f64) -> Result<Self> {
        Self::new(SpectrumKind::Box, length)
    }

    pub fn new_harmonic(omega: f64) -> Result<Self> {
        Self::new(SpectrumKind::Harmonic, omega)
    }

    pub fn new(kind: SpectrumKind, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::Domain(format!("spectrum scale must be positive, got {scale}")));
        }
        Ok(Spectrum { kind, scale })
    }

    /// First admissible quantum number: 1 for the box, 0 for the harmonic trap.
    pub fn level_offset(&self) -> u64 {
        match self.kind {
            SpectrumKind::Box => 1,
            SpectrumKind::Harmonic => 0,
        }
    }

    /// E_n. Errors below `level_offset`.
    pub fn level_energy(&self, n: u64) -> Result<f64> {
        if n < self.level_offset() {
            return Err(Error::Domain(format!(
                "quantum number {n} below first level {}",
                self.level_offset()
            )));
        }
        Ok(self.level_unchecked(n))
    }

    #[inline]
    pub(crate) fn level_unchecked(&self, n: u64) -> f64 {
        match self.kind {
            SpectrumKind::Box => {
                let k = n as f64 * PI / self.scale;
                k * k
            }
            SpectrumKind::Harmonic => (n as f64 + 0.5) * self.scale,
        }
    }

    /// Ground-state energy E_{offset}.
    pub(crate) fn first_level(&self) -> f64 {
        self.level_unchecked(self.level_offset())
    }

    /// Energies of the first `count` levels starting at the offset.
    pub(crate) fn levels(&self, count: usize) -> Vec<f64> {
        let off = self.level_offset();
        (0..count as u64).map(|i| self.level_unchecked(off + i)).collect()
    }

    /// Fermi energy for N particles: N²π²/L² for the box (equals E_N exactly),
    /// N·ω for the harmonic trap (the energy of the N-th filled level up to
    /// the constant ½ω offset — this convention sets the reporting units).
    pub fn fermi_energy(&self, n_particles: u64) -> f64 {
        match self.kind {
            SpectrumKind::Box => {
                let k = n_particles as f64 * PI / self.scale;
                k * k
            }
            SpectrumKind::Harmonic => n_particles as f64 * self.scale,
        }
    }

    pub fn rescale(&self, new_scale: f64) -> Result<Spectrum> {
        Spectrum::new(self.kind, new_scale)
    }
}

/// Trap scales at the two turning points of a cycle: `scale_a` before
/// compression, `scale_b` after.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionSpec {
    pub scale_a: f64,
    pub scale_b: f64,
}

impl CompressionSpec {
    pub fn new(scale_a: f64, scale_b: f64) -> Result<Self> {
        if !(scale_a > 0.0 && scale_b > 0.0) || !scale_a.is_finite() || !scale_b.is_finite() {
            return Err(Error::Domain(format!(
                "compression scales must be positive, got ({scale_a}, {scale_b})"
            )));
        }
        Ok(CompressionSpec { scale_a, scale_b })
    }

    /// Builds the spec from the Otto ratio r² (η_O = 1 − r²): (L_b/L_a)² for
    /// the box, ω_a/ω_b for the harmonic trap. Compression (r² < 1) shrinks
    /// the box / stiffens the trap.
    pub fn from_ratio_squared(kind: SpectrumKind, ratio_squared: f64, scale_b: f64) -> Result<Self> {
        if !(ratio_squared > 0.0) || !ratio_squared.is_finite() {
            return Err(Error::Domain(format!(
                "ratio_squared must be positive, got {ratio_squared}"
            )));
        }
        let scale_a = match kind {
            SpectrumKind::Box => scale_b / ratio_squared.sqrt(),
            SpectrumKind::Harmonic => ratio_squared * scale_b,
        };
        CompressionSpec::new(scale_a, scale_b)
    }

    /// The Otto ratio r²: every level satisfies E_n(a) = r²·E_n(b).
    pub fn ratio_squared(&self, kind: SpectrumKind) -> f64 {
        match kind {
            SpectrumKind::Box => {
                let r = self.scale_b / self.scale_a;
                r * r
            }
            SpectrumKind::Harmonic => self.scale_a / self.scale_b,
        }
    }

    pub fn spectrum_a(&self, kind: SpectrumKind) -> Spectrum {
        Spectrum { kind, scale: self.scale_a }
    }

    pub fn spectrum_b(&self, kind: SpectrumKind) -> Spectrum {
        Spectrum { kind, scale: self.scale_b }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_levels() {
        let s = Spectrum::new_box(1.0).unwrap();
        assert!((s.level_energy(1).unwrap() - PI * PI).abs() < 1e-12);
        let s2 = Spectrum::new_box(2.0).unwrap();
        assert!((s2.level_energy(2).unwrap() - PI * PI).abs() < 1e-12);
        assert!(s.level_energy(0).is_err());
    }

    #[test]
    fn harmonic_levels() {
        let s = Spectrum::new_harmonic(1.0).unwrap();
        assert!((s.level_energy(0).unwrap() - 0.5).abs() < 1e-15);
        let s2 = Spectrum::new_harmonic(2.0).unwrap();
        assert!((s2.level_energy(0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fermi_energy_values() {
        let s = Spectrum::new_box(1.0).unwrap();
        assert!((s.fermi_energy(500) - 500.0 * 500.0 * PI * PI).abs() < 1.0);
        let s = Spectrum::new_box(PI).unwrap();
        assert!((s.fermi_energy(1) - 1.0).abs() < 1e-14);
        let s = Spectrum::new_box(1.0).unwrap();
        assert!((s.fermi_energy(3) - 9.0 * PI * PI).abs() < 1e-10);
        // E_F(N) equals E_N exactly for the box
        assert_eq!(s.fermi_energy(3), s.level_energy(3).unwrap());
    }

    #[test]
    fn rescale_quadruples_box_levels() {
        let s = Spectrum::new_box(1.0).unwrap();
        let t = s.rescale(0.5).unwrap();
        assert!((t.level_energy(1).unwrap() - 4.0 * PI * PI).abs() < 1e-10);
        assert_eq!(s.rescale(1.0).unwrap(), s);
        assert!(s.rescale(-1.0).is_err());
    }

    #[test]
    fn scale_invariance_of_box_levels() {
        for n in [1u64, 7, 100] {
            let a = Spectrum::new_box(0.37).unwrap();
            let b = Spectrum::new_box(5.1).unwrap();
            let va = a.level_unchecked(n) * 0.37 * 0.37;
            let vb = b.level_unchecked(n) * 5.1 * 5.1;
            assert!((va - vb).abs() < 1e-9 * va.abs());
        }
    }

    #[test]
    fn compression_ratio_roundtrip() {
        let c = CompressionSpec::from_ratio_squared(SpectrumKind::Box, 0.5, 1.0).unwrap();
        assert!((c.ratio_squared(SpectrumKind::Box) - 0.5).abs() < 1e-15);
        assert!((c.scale_a - 2f64.sqrt()).abs() < 1e-15);
        let h = CompressionSpec::from_ratio_squared(SpectrumKind::Harmonic, 0.5, 1.0).unwrap();
        assert!((h.ratio_squared(SpectrumKind::Harmonic) - 0.5).abs() < 1e-15);
        // harmonic compression ratio ω_b/ω_a = 2 ⇔ r² = 1/2
        assert!((h.scale_b / h.scale_a - 2.0).abs() < 1e-15);
    }
}
