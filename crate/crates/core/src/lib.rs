//! Thermodynamics of Otto-like heat engines whose 1D trapped working medium
//! can switch between ideal Bose gas and fermionized (Tonks-Girardeau)
//! statistics mid-cycle.
//!
//! The layers build on each other: [`spectra`] defines the traps,
//! [`ensembles`] the equilibrium states on them, [`strokes`] the four cycle
//! primitives, [`cycles`] the engine variants and their figures of merit, and
//! [`analytics`] the closed-form oracles. [`harness`] drives sweeps,
//! optimization, and the CLI's file formats.
//!
//! Units: ħ = 2m = k_B = 1. Box levels are E_n = (nπ/L)² with n ≥ 1;
//! harmonic levels E_n = (n + ½)ω with n ≥ 0. Reports are quoted against the
//! Fermi energy at the compressed trap.

pub mod analytics;
pub mod cycles;
pub mod ensembles;
pub mod error;
pub mod harness;
mod numerics;
pub mod spectra;
pub mod strokes;

pub use error::{Error, Result};
