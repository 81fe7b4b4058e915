//! Flag parsing, config-file resolution, subcommand dispatch, and output
//! writing. Exit codes: 0 success, 2 invalid flags or configuration, 3
//! numerical failure (including validation-tolerance breaches).

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use super::config::{self, FileConfig};
use super::table::{
    fmt_float, json_config, json_row, write_csv_echo, write_csv_table, write_json_array,
    write_table, Cell, Column, Echo, OutputFormat, Table,
};
use super::{
    optimize_ratio, sweep, Grid, OptimizeParams, OptimizeSpec, SweepAxis, SweepSpec,
};
use crate::cycles::{CycleReport, CycleSpec, Order, Variant};
use crate::error::{Error, Result};
use crate::spectra::{CompressionSpec, SpectrumKind};

#[derive(Parser)]
#[command(
    name = "statengine",
    version,
    about = "Otto-style heat-engine simulator for 1D trapped ideal quantum gases"
)]
struct Cli {
    /// TOML config file; flags override its values.
    #[arg(long, value_name = "PATH", global = true)]
    config: Option<PathBuf>,
    /// Cycle family: A, T, GV, single, fermi, or bose.
    #[arg(long, global = true)]
    variant: Option<String>,
    /// Statistics over the cycle: bg-tg, tg-bg, or none.
    #[arg(long, global = true)]
    order: Option<String>,
    /// Particle number.
    #[arg(long = "N", value_name = "COUNT", global = true)]
    n: Option<u64>,
    /// Otto ratio r²: level spacings at the expanded trap over those at the
    /// compressed trap.
    #[arg(long, global = true)]
    ratio2: Option<f64>,
    /// Cold-bath temperature in T_F units.
    #[arg(long, global = true)]
    tc: Option<f64>,
    /// Hot-bath temperature in T_F units.
    #[arg(long, global = true)]
    th: Option<f64>,
    /// Output file (default: stdout).
    #[arg(long, value_name = "PATH", global = true)]
    out: Option<PathBuf>,
    /// Output format: csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Worker threads, 0 = one per core; the STATENGINE_THREADS environment
    /// variable takes precedence.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one cycle and print its report.
    Cycle,
    /// Evaluate a cycle across a grid, one output row per point.
    Sweep {
        /// hot-temp, cold-temp, ratio-optimize, or mode-atlas.
        #[arg(long)]
        axis: Option<String>,
        /// Grid lower bound.
        #[arg(long)]
        min: Option<f64>,
        /// Grid upper bound.
        #[arg(long)]
        max: Option<f64>,
        /// Grid size (atlas: points per axis).
        #[arg(long)]
        points: Option<usize>,
    },
    /// Maximize work output over the compression ratio.
    Optimize,
    /// Map the operational mode over the (T_c, T_h) plane.
    Atlas {
        /// Grid points per axis.
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Check the closed-form predictions against the level-sum numerics.
    Validate,
}

/// Parse `args` (argv[0] included) and run to completion, returning the
/// process exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Numerical { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    let file = match &cli.config {
        Some(path) => config::load_file(path)?,
        None => FileConfig::default(),
    };
    let common = resolve_common(cli, &file)?;
    let threads = resolve_threads(cli, &file)?;
    match &cli.command {
        Command::Cycle => cycle_cmd(cli, &file, &common),
        Command::Sweep { axis, min, max, points } => {
            sweep_cmd(cli, &file, &common, threads, axis.as_deref(), *min, *max, *points)
        }
        Command::Optimize => optimize_cmd(cli, &file, &common, threads),
        Command::Atlas { resolution } => atlas_cmd(cli, &file, &common, threads, *resolution),
        Command::Validate => validate_cmd(),
    }
}

struct Common {
    variant: Variant,
    order: Order,
    spectrum: SpectrumKind,
    n: u64,
    ratio2: f64,
    scale_b: f64,
    format: OutputFormat,
    out: Option<PathBuf>,
}

fn resolve_common(cli: &Cli, file: &FileConfig) -> Result<Common> {
    let variant = config::parse_variant(
        cli.variant.as_deref().or(file.common.variant.as_deref()).unwrap_or("A"),
    )?;
    let mut order = config::parse_order(
        cli.order.as_deref().or(file.common.order.as_deref()).unwrap_or("bg-tg"),
    )?;
    if variant.is_baseline() {
        // baselines never switch statistics; normalize quietly
        order = Order::NotApplicable;
    }
    Ok(Common {
        variant,
        order,
        spectrum: config::parse_spectrum(file.common.spectrum.as_deref().unwrap_or("box"))?,
        n: cli.n.or(file.common.n).unwrap_or(500),
        ratio2: cli.ratio2.or(file.common.ratio2).unwrap_or(0.5),
        scale_b: file.common.scale_b.unwrap_or(1.0),
        format: config::parse_format(
            cli.format.as_deref().or(file.common.format.as_deref()).unwrap_or("csv"),
        )?,
        out: cli.out.clone().or(file.common.out.clone()),
    })
}

/// STATENGINE_THREADS > --threads > config file > 0 (one per core).
fn resolve_threads(cli: &Cli, file: &FileConfig) -> Result<usize> {
    if let Ok(v) = std::env::var("STATENGINE_THREADS") {
        return v.trim().parse().map_err(|_| {
            Error::Config(format!("STATENGINE_THREADS must be a thread count, got '{v}'"))
        });
    }
    Ok(cli.threads.or(file.common.threads).unwrap_or(0))
}

fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))
}

fn cycle_template(c: &Common, ratio2: f64, t_c: f64, t_h: f64) -> Result<CycleSpec> {
    let compression = CompressionSpec::from_ratio_squared(c.spectrum, ratio2, c.scale_b)?;
    CycleSpec::from_reduced_temperatures(c.variant, c.order, c.spectrum, compression, c.n, t_c, t_h)
}

fn base_echo(command: &str, c: &Common) -> Echo {
    let mut echo = Echo::default();
    echo.text("command", command.to_string());
    echo.text("variant", config::variant_label(c.variant));
    echo.text("order", config::order_label(c.order));
    echo.text("spectrum", config::spectrum_label(c.spectrum));
    echo.int("n", c.n);
    echo
}

fn finish_echo(echo: &mut Echo, format: OutputFormat) {
    echo.text("energy_unit", "E_F(b)");
    echo.text("temperature_unit", "T_F(b)");
    echo.text("format", config::format_label(format));
}

fn io_err(e: io::Error) -> Error {
    Error::Config(format!("output: {e}"))
}

fn emit(out: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let mut w: Box<dyn Write> = match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            Error::Config(format!("cannot write {}: {e}", p.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout())),
    };
    f(&mut *w).and_then(|()| w.flush()).map_err(io_err)
}

const STROKE_COLUMNS: [Column; 8] = [
    Column { name: "stroke", key: "stroke" },
    Column { name: "kind", key: "kind" },
    Column { name: "d_u[E_F]", key: "d_u" },
    Column { name: "work[E_F]", key: "work" },
    Column { name: "heat[E_F]", key: "heat" },
    Column { name: "heat_stat[E_F]", key: "heat_stat" },
    Column { name: "work_stat[E_F]", key: "work_stat" },
    Column { name: "t_out[T_F]", key: "t_out" },
];

fn strokes_table(report: &CycleReport, e_f: f64) -> Table {
    let rows = report
        .ledgers
        .iter()
        .enumerate()
        .map(|(i, l)| {
            vec![
                Cell::Int(i as u64 + 1),
                Cell::Text(format!("{:?}", l.kind)),
                Cell::Float(l.d_u / e_f),
                Cell::Float(l.work / e_f),
                Cell::Float(l.heat / e_f),
                Cell::Float(l.heat_stat / e_f),
                Cell::Float(l.work_stat / e_f),
                Cell::Float(l.state_out.temperature / e_f),
            ]
        })
        .collect();
    Table { columns: &STROKE_COLUMNS, rows }
}

fn cycle_cmd(cli: &Cli, file: &FileConfig, c: &Common) -> Result<i32> {
    let t_c = cli.tc.or(file.cycle.tc).unwrap_or(0.0);
    let t_h = cli.th.or(file.cycle.th).unwrap_or(1.0);
    let template = cycle_template(c, c.ratio2, t_c, t_h)?;
    let e_f = template.fermi_energy_b();
    let report = super::eval_point(&template, t_c, t_h)?;
    let figures = Table {
        columns: &super::FIGURE_COLUMNS,
        rows: vec![super::figure_row(t_c, t_h, Ok(report.clone()), e_f)],
    };
    let strokes = strokes_table(&report, e_f);

    let mut echo = base_echo("cycle", c);
    echo.float("ratio2", c.ratio2);
    echo.float("scale_b", c.scale_b);
    echo.float("tc", t_c);
    echo.float("th", t_h);
    finish_echo(&mut echo, c.format);

    emit(&c.out, |w| match c.format {
        OutputFormat::Csv => {
            write_csv_echo(w, &echo)?;
            writeln!(w, "# figures")?;
            write_csv_table(w, &figures)?;
            writeln!(w, "# strokes")?;
            write_csv_table(w, &strokes)
        }
        OutputFormat::Json => {
            write!(
                w,
                "{{\"config\":{},\"figures\":{},\"strokes\":",
                json_config(&echo),
                json_row(&figures, &figures.rows[0])
            )?;
            write_json_array(w, &strokes)?;
            writeln!(w, "}}")
        }
    })?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn sweep_cmd(
    cli: &Cli,
    file: &FileConfig,
    c: &Common,
    threads: usize,
    axis_flag: Option<&str>,
    min: Option<f64>,
    max: Option<f64>,
    points: Option<usize>,
) -> Result<i32> {
    let axis = config::parse_axis(
        axis_flag.or(file.sweep.axis.as_deref()).unwrap_or("hot-temp"),
    )?;
    if axis == SweepAxis::ModeAtlas {
        return atlas_run(cli, file, c, threads, "sweep", points);
    }

    // per-axis grid and fixed-bath defaults
    let (d_min, d_max, d_points, d_log, d_fixed) = match axis {
        SweepAxis::HotTemp => (0.05, 10.0, 200, true, 0.0),
        SweepAxis::ColdTemp => (0.05, 10.0, 200, true, 1.0),
        SweepAxis::RatioOptimize => (0.02, 0.98, 25, false, 0.1),
        SweepAxis::ModeAtlas => unreachable!(),
    };

    let mut echo = base_echo("sweep", c);
    if axis != SweepAxis::RatioOptimize {
        echo.float("ratio2", c.ratio2);
        echo.float("scale_b", c.scale_b);
    }
    echo.text("axis", config::axis_label(axis));

    let grid_flags = min.is_some() || max.is_some() || points.is_some();
    let values = if let (false, Some(values)) = (grid_flags, &file.sweep.values) {
        echo.text(
            "grid_values",
            values.iter().map(|&v| fmt_float(v)).collect::<Vec<_>>().join(","),
        );
        values.clone()
    } else {
        let g_min = min.or(file.sweep.min).unwrap_or(d_min);
        let g_max = max.or(file.sweep.max).unwrap_or(d_max);
        let g_points = points.or(file.sweep.points).unwrap_or(d_points);
        let g_log = file.sweep.log.unwrap_or(d_log);
        if !(g_min.is_finite() && g_max > g_min) {
            return Err(Error::Config(format!(
                "grid bounds must satisfy min < max, got [{g_min}, {g_max}]"
            )));
        }
        if g_points < 2 {
            return Err(Error::Config(format!("a grid needs ≥ 2 points, got {g_points}")));
        }
        if g_log && !(g_min > 0.0) {
            return Err(Error::Config(format!(
                "a log-spaced grid needs min > 0, got {g_min}"
            )));
        }
        echo.float("grid_min", g_min);
        echo.float("grid_max", g_max);
        echo.int("grid_points", g_points as u64);
        echo.bool("grid_log", g_log);
        if g_log {
            super::log_grid(g_min, g_max, g_points)
        } else {
            super::lin_grid(g_min, g_max, g_points)
        }
    };

    // the fixed bath: cold for the hot-temperature and ratio axes, hot for
    // the cold-temperature axis
    let (t_c0, t_h0) = match axis {
        SweepAxis::ColdTemp => {
            let t_h = cli.th.or(file.sweep.th).unwrap_or(d_fixed);
            echo.float("th", t_h);
            (0.0, t_h)
        }
        _ => {
            let t_c = cli.tc.or(file.sweep.tc).unwrap_or(d_fixed);
            echo.float("tc", t_c);
            (t_c, 1.0)
        }
    };

    let params = optimize_params(file);
    if axis == SweepAxis::RatioOptimize {
        echo.float("r_min", params.interval.0);
        echo.float("r_max", params.interval.1);
        echo.int("coarse", params.coarse_points as u64);
    }
    finish_echo(&mut echo, c.format);

    let spec = SweepSpec {
        cycle: cycle_template(c, c.ratio2, t_c0, t_h0)?,
        axis,
        grid: Grid::Values(values),
        params,
        output_path: c.out.clone(),
        format: c.format,
    };
    let table = pool(threads)?.install(|| sweep(&spec))?;
    emit(&spec.output_path, |w| write_table(w, spec.format, &echo, &table))?;
    Ok(0)
}

fn optimize_params(file: &FileConfig) -> OptimizeParams {
    let d = OptimizeParams::default();
    OptimizeParams {
        interval: (
            file.optimize.r_min.unwrap_or(d.interval.0),
            file.optimize.r_max.unwrap_or(d.interval.1),
        ),
        coarse_points: file.optimize.coarse.unwrap_or(d.coarse_points),
    }
}

fn optimize_cmd(cli: &Cli, file: &FileConfig, c: &Common, threads: usize) -> Result<i32> {
    let t_c = cli.tc.or(file.optimize.tc).unwrap_or(0.1);
    let t_h = cli.th.or(file.optimize.th).unwrap_or(1.0);
    let params = optimize_params(file);
    let spec = OptimizeSpec {
        variant: c.variant,
        order: c.order,
        spectrum_kind: c.spectrum,
        n_particles: c.n,
        t_c,
        t_h,
        params,
    };
    let result = pool(threads)?.install(|| optimize_ratio(&spec))?;
    let table = Table {
        columns: &super::OPTIMIZE_COLUMNS,
        rows: vec![super::optimize_row(t_c / t_h, t_c, t_h, Ok(result))],
    };

    let mut echo = base_echo("optimize", c);
    echo.float("tc", t_c);
    echo.float("th", t_h);
    echo.float("r_min", params.interval.0);
    echo.float("r_max", params.interval.1);
    echo.int("coarse", params.coarse_points as u64);
    finish_echo(&mut echo, c.format);

    emit(&c.out, |w| write_table(w, c.format, &echo, &table))?;
    Ok(0)
}

fn atlas_cmd(
    cli: &Cli,
    file: &FileConfig,
    c: &Common,
    threads: usize,
    resolution: Option<usize>,
) -> Result<i32> {
    atlas_run(cli, file, c, threads, "atlas", resolution)
}

fn atlas_run(
    cli: &Cli,
    file: &FileConfig,
    c: &Common,
    threads: usize,
    command: &str,
    resolution: Option<usize>,
) -> Result<i32> {
    let ratio2 = cli.ratio2.or(file.atlas.ratio2).or(file.common.ratio2).unwrap_or(0.5);
    let t_c = (file.atlas.tc_min.unwrap_or(0.01), file.atlas.tc_max.unwrap_or(2.5));
    let t_h = (file.atlas.th_min.unwrap_or(0.01), file.atlas.th_max.unwrap_or(2.5));
    let res = resolution.or(file.atlas.resolution).unwrap_or(200);

    let mut echo = base_echo(command, c);
    echo.float("ratio2", ratio2);
    if command == "sweep" {
        echo.text("axis", config::axis_label(SweepAxis::ModeAtlas));
    }
    echo.float("tc_min", t_c.0);
    echo.float("tc_max", t_c.1);
    echo.float("th_min", t_h.0);
    echo.float("th_max", t_h.1);
    echo.int("resolution", res as u64);
    finish_echo(&mut echo, c.format);

    let spec = SweepSpec {
        cycle: cycle_template(c, ratio2, 0.0, 1.0)?,
        axis: SweepAxis::ModeAtlas,
        grid: Grid::Bounds2D { t_c, t_h, resolution: (res, res) },
        params: OptimizeParams::default(),
        output_path: c.out.clone(),
        format: c.format,
    };
    let table = pool(threads)?.install(|| sweep(&spec))?;
    emit(&spec.output_path, |w| write_table(w, spec.format, &echo, &table))?;
    Ok(0)
}

fn validate_cmd() -> Result<i32> {
    let checks = super::validate::run_validation()?;
    let failed = checks.iter().filter(|ch| !ch.passed()).count();
    for ch in &checks {
        println!(
            "{}  {}  measured = {}  limit = {}",
            if ch.passed() { "PASS" } else { "FAIL" },
            ch.name,
            fmt_float(ch.measured),
            fmt_float(ch.limit),
        );
    }
    println!("{} checks, {failed} failed", checks.len());
    Ok(if failed == 0 { 0 } else { 3 })
}
