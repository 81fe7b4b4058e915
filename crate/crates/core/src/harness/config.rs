//! TOML run-configuration model (one section per subcommand plus `[common]`)
//! and the string forms shared by the config file, the CLI flags, and the
//! config echo.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::cycles::{Order, Variant};
use crate::error::{Error, Result};
use crate::harness::table::OutputFormat;
use crate::harness::SweepAxis;
use crate::spectra::SpectrumKind;

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub(crate) struct FileConfig {
    pub common: CommonSection,
    pub cycle: CycleSection,
    pub sweep: SweepSection,
    pub optimize: OptimizeSection,
    pub atlas: AtlasSection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub(crate) struct CommonSection {
    pub variant: Option<String>,
    pub order: Option<String>,
    pub spectrum: Option<String>,
    pub n: Option<u64>,
    pub ratio2: Option<f64>,
    pub scale_b: Option<f64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub(crate) struct CycleSection {
    pub tc: Option<f64>,
    pub th: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub(crate) struct SweepSection {
    pub axis: Option<String>,
    /// Fixed cold bath for the hot-temperature and ratio axes.
    pub tc: Option<f64>,
    /// Fixed hot bath for the cold-temperature axis.
    pub th: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub points: Option<usize>,
    pub log: Option<bool>,
    /// Explicit axis values; wins over min/max/points unless a grid flag is
    /// passed.
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub(crate) struct OptimizeSection {
    pub tc: Option<f64>,
    pub th: Option<f64>,
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub coarse: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub(crate) struct AtlasSection {
    pub tc_min: Option<f64>,
    pub tc_max: Option<f64>,
    pub th_min: Option<f64>,
    pub th_max: Option<f64>,
    /// Grid points per axis.
    pub resolution: Option<usize>,
    pub ratio2: Option<f64>,
}

pub(crate) fn load_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Error::Config(format!("config {}: {e}", path.display())))
}

pub(crate) fn parse_variant(s: &str) -> Result<Variant> {
    match s.to_ascii_lowercase().as_str() {
        "a" => Ok(Variant::A),
        "t" => Ok(Variant::T),
        "gv" => Ok(Variant::Gv),
        "single" => Ok(Variant::BaselineSingle),
        "fermi" => Ok(Variant::BaselineFermi),
        "bose" => Ok(Variant::BaselineBose),
        _ => Err(Error::Config(format!(
            "unknown variant '{s}' (expected A, T, GV, single, fermi, or bose)"
        ))),
    }
}

pub(crate) fn variant_label(v: Variant) -> &'static str {
    match v {
        Variant::A => "A",
        Variant::T => "T",
        Variant::Gv => "GV",
        Variant::BaselineSingle => "single",
        Variant::BaselineFermi => "fermi",
        Variant::BaselineBose => "bose",
    }
}

pub(crate) fn parse_order(s: &str) -> Result<Order> {
    match s.to_ascii_lowercase().as_str() {
        "bg-tg" => Ok(Order::BgTg),
        "tg-bg" => Ok(Order::TgBg),
        "none" => Ok(Order::NotApplicable),
        _ => Err(Error::Config(format!(
            "unknown order '{s}' (expected bg-tg, tg-bg, or none)"
        ))),
    }
}

pub(crate) fn order_label(o: Order) -> &'static str {
    match o {
        Order::BgTg => "bg-tg",
        Order::TgBg => "tg-bg",
        Order::NotApplicable => "none",
    }
}

pub(crate) fn parse_spectrum(s: &str) -> Result<SpectrumKind> {
    match s.to_ascii_lowercase().as_str() {
        "box" => Ok(SpectrumKind::Box),
        "harmonic" => Ok(SpectrumKind::Harmonic),
        _ => Err(Error::Config(format!(
            "unknown spectrum '{s}' (expected box or harmonic)"
        ))),
    }
}

pub(crate) fn spectrum_label(k: SpectrumKind) -> &'static str {
    match k {
        SpectrumKind::Box => "box",
        SpectrumKind::Harmonic => "harmonic",
    }
}

pub(crate) fn parse_format(s: &str) -> Result<OutputFormat> {
    match s.to_ascii_lowercase().as_str() {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        _ => Err(Error::Config(format!("unknown format '{s}' (expected csv or json)"))),
    }
}

pub(crate) fn format_label(f: OutputFormat) -> &'static str {
    match f {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    }
}

pub(crate) fn parse_axis(s: &str) -> Result<SweepAxis> {
    match s.to_ascii_lowercase().as_str() {
        "hot-temp" => Ok(SweepAxis::HotTemp),
        "cold-temp" => Ok(SweepAxis::ColdTemp),
        "ratio-optimize" => Ok(SweepAxis::RatioOptimize),
        "mode-atlas" => Ok(SweepAxis::ModeAtlas),
        _ => Err(Error::Config(format!(
            "unknown axis '{s}' (expected hot-temp, cold-temp, ratio-optimize, or mode-atlas)"
        ))),
    }
}

pub(crate) fn axis_label(a: SweepAxis) -> &'static str {
    match a {
        SweepAxis::HotTemp => "hot-temp",
        SweepAxis::ColdTemp => "cold-temp",
        SweepAxis::RatioOptimize => "ratio-optimize",
        SweepAxis::ModeAtlas => "mode-atlas",
    }
}
