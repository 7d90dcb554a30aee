//! Argument model and renderers behind the `domino` binary.
//!
//! Every command renders to a `String` so the output can be compared
//! byte-for-byte in tests. Numbers in CSV are written as `{:.15e}` (16
//! significant digits) regardless of locale.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use domino_core::{
    collision_factors, limiting_solution, scaling_g, scaling_g_close, scaling_g_wide,
    scaling_modulus, simulate_chain, ChainGeometry64, CollisionAngle, SimulationOptions,
};
use serde::Serialize;
use serde_json::json;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "domino", version, about = "Speed of the falling-domino wave")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write output to this file instead of standard output
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Limiting angular velocity, modulus, fall time, speed and G for one chain
    Speed(GeometryArgs),
    /// Sweep of the scaling function G(d/l)
    Curve(CurveArgs),
    /// Rod-by-rod simulation from an initial push
    Simulate(SimulateArgs),
    /// Exact G against one of its asymptotic forms
    Asymptotics(AsymptoticsArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GeometryArgs {
    /// Rod length l (m)
    #[arg(long)]
    pub length: f64,
    /// Pivot spacing d (m), 0 < d < l
    #[arg(long)]
    pub spacing: f64,
    /// Gravitational acceleration g (m/s²)
    #[arg(long)]
    pub gravity: f64,
    /// Point mass on each rod (kg); has no effect on any result
    #[arg(long, default_value_t = 1.0)]
    pub mass: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    /// Smallest d/l, in (0, 1)
    #[arg(long, default_value_t = 0.05)]
    pub min: f64,
    /// Largest d/l, in (0, 1)
    #[arg(long, default_value_t = 0.95)]
    pub max: f64,
    /// Number of evenly spaced samples, endpoints included
    #[arg(long, default_value_t = 19)]
    pub samples: usize,
    /// Rod length l (m); with --gravity adds the speed column
    #[arg(long)]
    pub length: Option<f64>,
    /// Gravitational acceleration g (m/s²); with --length adds the speed column
    #[arg(long)]
    pub gravity: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub geometry: GeometryArgs,
    /// Angular velocity given to the first rod (rad/s)
    #[arg(long)]
    pub omega1: f64,
    /// Stop after this many rods if not yet converged
    #[arg(long, default_value_t = 1000)]
    pub max_rods: usize,
    /// Relative tolerance on the rod speed that counts as converged
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    /// Keep simulating up to --max-rods after convergence
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    Close,
    Wide,
}

#[derive(Debug, Clone, Args)]
pub struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    pub regime: Regime,
    /// Comma-separated d/l values; defaults depend on the regime
    #[arg(long, value_delimiter = ',')]
    pub points: Vec<f64>,
}

impl Regime {
    fn name(self) -> &'static str {
        match self {
            Regime::Close => "close",
            Regime::Wide => "wide",
        }
    }

    pub fn default_points(self) -> Vec<f64> {
        match self {
            Regime::Close => vec![0.1, 0.01, 0.001],
            Regime::Wide => vec![1.0 - 1e-4, 1.0 - 1e-6, 1.0 - 1e-8],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or values outside a model's domain; exit code 2.
    Usage(String),
    /// The numerics failed on valid input; exit code 3.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Numerical(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for CliError {}

impl From<domino_core::Error> for CliError {
    fn from(e: domino_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpeedRow {
    pub omega_limit: f64,
    pub modulus: f64,
    pub fall_time: f64,
    pub speed: f64,
    #[serde(rename = "G")]
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow {
    pub d_over_l: f64,
    pub beta1: f64,
    pub f_plus: f64,
    pub k_modulus: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RodRow {
    pub index: usize,
    pub omega_i: f64,
    pub omega_f: f64,
    pub omega_b: f64,
    pub fall_time: f64,
    pub cumulative_time: f64,
    pub instantaneous_speed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub converged_at: Option<usize>,
    pub limiting_speed_estimate: f64,
    pub closed_form_speed: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[allow(non_snake_case)]
pub struct AsymptoticRow {
    pub x: f64,
    pub G_exact: f64,
    pub G_asymptotic: f64,
    pub relative_error: f64,
}

fn num(x: f64) -> String {
    format!("{x:.15e}")
}

fn csv_line(out: &mut String, fields: &[String]) {
    out.push_str(&fields.join(","));
    out.push('\n');
}

fn json_document(
    command: &str,
    parameters: serde_json::Value,
    rows: serde_json::Value,
    summary: Option<serde_json::Value>,
) -> String {
    let mut doc = json!({
        "meta": {
            "command": command,
            "parameters": parameters,
            "version": VERSION,
        },
        "rows": rows,
    });
    if let Some(summary) = summary {
        doc["summary"] = summary;
    }
    let mut text = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    text.push('\n');
    text
}

fn to_value<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("plain data serializes")
}

impl GeometryArgs {
    pub fn build(&self) -> Result<ChainGeometry64, CliError> {
        Ok(ChainGeometry64::new(
            self.length,
            self.spacing,
            self.gravity,
            self.mass,
        )?)
    }

    fn parameters(&self) -> serde_json::Value {
        json!({
            "length": self.length,
            "spacing": self.spacing,
            "gravity": self.gravity,
            "mass": self.mass,
        })
    }
}

pub fn speed_row(args: &GeometryArgs) -> Result<SpeedRow, CliError> {
    let s = limiting_solution(&args.build()?)?;
    Ok(SpeedRow {
        omega_limit: s.omega_limit,
        modulus: s.modulus,
        fall_time: s.fall_time,
        speed: s.speed,
        g: s.scaling_g,
    })
}

pub fn render_speed(args: &GeometryArgs, format: Format) -> Result<String, CliError> {
    let row = speed_row(args)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::new();
            csv_line(
                &mut out,
                &["omega_limit", "modulus", "fall_time", "speed", "G"].map(String::from),
            );
            csv_line(
                &mut out,
                &[
                    row.omega_limit,
                    row.modulus,
                    row.fall_time,
                    row.speed,
                    row.g,
                ]
                .map(num),
            );
            out
        }
        Format::Json => json_document("speed", args.parameters(), json!([row]), None),
    })
}

/// Evenly spaced sweep points, both endpoints included, ascending.
pub fn sweep(min: f64, max: f64, samples: usize) -> Result<Vec<f64>, CliError> {
    if !(min > 0.0 && min < 1.0) || !(max > 0.0 && max < 1.0) {
        return Err(usage(format!(
            "sweep bounds must lie strictly inside (0, 1), got --min {min} --max {max}"
        )));
    }
    if min >= max {
        return Err(usage(format!("--min {min} must be below --max {max}")));
    }
    if samples < 2 {
        return Err(usage(format!(
            "--samples must be at least 2, got {samples}"
        )));
    }
    let last = (samples - 1) as f64;
    Ok((0..samples)
        .map(|i| {
            if i + 1 == samples {
                return max;
            }
            let i = i as f64;
            (min * (last - i) + max * i) / last
        })
        .collect())
}

pub fn curve_rows(args: &CurveArgs) -> Result<Vec<CurveRow>, CliError> {
    let speed_scale = match (args.length, args.gravity) {
        (None, None) => None,
        (Some(l), Some(g)) => {
            if !(l > 0.0 && l.is_finite()) || !(g > 0.0 && g.is_finite()) {
                return Err(usage(format!(
                    "--length and --gravity must be positive, got {l} and {g}"
                )));
            }
            Some((g * l).sqrt())
        }
        _ => return Err(usage("--length and --gravity must be given together")),
    };
    sweep(args.min, args.max, args.samples)?
        .into_iter()
        .map(|x| {
            let angle = CollisionAngle::from_ratio(x)?;
            let g = scaling_g(x)?;
            Ok(CurveRow {
                d_over_l: x,
                beta1: angle.radians(),
                f_plus: collision_factors(&angle).f_plus,
                k_modulus: scaling_modulus(x)?.k(),
                g,
                v: speed_scale.map(|s| s * g),
            })
        })
        .collect()
}

pub fn render_curve(args: &CurveArgs, format: Format) -> Result<String, CliError> {
    let rows = curve_rows(args)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::new();
            let mut header = vec!["d_over_l", "beta1_rad", "f_plus", "k_modulus", "G"];
            if args.length.is_some() {
                header.push("v");
            }
            csv_line(
                &mut out,
                &header.into_iter().map(String::from).collect::<Vec<_>>(),
            );
            for r in &rows {
                let mut fields = vec![
                    num(r.d_over_l),
                    num(r.beta1),
                    num(r.f_plus),
                    num(r.k_modulus),
                    num(r.g),
                ];
                if let Some(v) = r.v {
                    fields.push(num(v));
                }
                csv_line(&mut out, &fields);
            }
            out
        }
        Format::Json => json_document(
            "curve",
            json!({
                "min": args.min,
                "max": args.max,
                "samples": args.samples,
                "length": args.length,
                "gravity": args.gravity,
            }),
            to_value(&rows),
            None,
        ),
    })
}

pub fn simulation_rows(args: &SimulateArgs) -> Result<(Vec<RodRow>, SimulationSummary), CliError> {
    let geom = args.geometry.build()?;
    let opts = SimulationOptions {
        max_rods: args.max_rods,
        tol: args.tol,
        stop_at_convergence: !args.full,
    };
    let run = simulate_chain(&geom, args.omega1, &opts)?;
    let rows = run
        .rods
        .iter()
        .map(|r| RodRow {
            index: r.index,
            omega_i: r.omega_i,
            omega_f: r.omega_f,
            omega_b: r.omega_b,
            fall_time: r.fall_time,
            cumulative_time: r.cumulative_time,
            instantaneous_speed: r.instantaneous_speed,
        })
        .collect();
    let summary = SimulationSummary {
        converged_at: run.converged_at,
        limiting_speed_estimate: run.limiting_speed_estimate,
        closed_form_speed: run.closed_form_speed,
    };
    Ok((rows, summary))
}

pub fn render_simulation(args: &SimulateArgs, format: Format) -> Result<String, CliError> {
    let (rows, summary) = simulation_rows(args)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::new();
            csv_line(
                &mut out,
                &["k", "omega_i", "omega_f", "omega_b", "T_k", "t_cum", "v_k"].map(String::from),
            );
            for r in &rows {
                csv_line(
                    &mut out,
                    &[
                        r.index.to_string(),
                        num(r.omega_i),
                        num(r.omega_f),
                        num(r.omega_b),
                        num(r.fall_time),
                        num(r.cumulative_time),
                        num(r.instantaneous_speed),
                    ],
                );
            }
            let converged = summary
                .converged_at
                .map_or_else(|| "none".to_string(), |k| k.to_string());
            let _ = writeln!(out, "# converged_at,{converged}");
            let _ = writeln!(
                out,
                "# limiting_speed_estimate,{}",
                num(summary.limiting_speed_estimate)
            );
            let _ = writeln!(
                out,
                "# closed_form_speed,{}",
                num(summary.closed_form_speed)
            );
            out
        }
        Format::Json => {
            let mut parameters = args.geometry.parameters();
            parameters["omega1"] = json!(args.omega1);
            parameters["max_rods"] = json!(args.max_rods);
            parameters["tol"] = json!(args.tol);
            parameters["full"] = json!(args.full);
            json_document(
                "simulate",
                parameters,
                to_value(&rows),
                Some(to_value(&summary)),
            )
        }
    })
}

pub fn asymptotic_rows(args: &AsymptoticsArgs) -> Result<Vec<AsymptoticRow>, CliError> {
    let points = if args.points.is_empty() {
        args.regime.default_points()
    } else {
        args.points.clone()
    };
    points
        .into_iter()
        .map(|x| {
            let approx = match args.regime {
                Regime::Close => scaling_g_close(x)?,
                Regime::Wide => scaling_g_wide(x)?,
            };
            let exact = scaling_g(x)?;
            Ok(AsymptoticRow {
                x,
                G_exact: exact,
                G_asymptotic: approx,
                relative_error: (approx - exact).abs() / exact,
            })
        })
        .collect()
}

pub fn render_asymptotics(args: &AsymptoticsArgs, format: Format) -> Result<String, CliError> {
    let rows = asymptotic_rows(args)?;
    Ok(match format {
        Format::Csv => {
            let mut out = String::new();
            csv_line(
                &mut out,
                &["x", "G_exact", "G_asymptotic", "relative_error"].map(String::from),
            );
            for r in &rows {
                csv_line(
                    &mut out,
                    &[r.x, r.G_exact, r.G_asymptotic, r.relative_error].map(num),
                );
            }
            out
        }
        Format::Json => json_document(
            "asymptotics",
            json!({ "regime": args.regime.name(), "points": rows.iter().map(|r| r.x).collect::<Vec<_>>() }),
            to_value(&rows),
            None,
        ),
    })
}

pub fn render(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Speed(args) => render_speed(args, cli.format),
        Command::Curve(args) => render_curve(args, cli.format),
        Command::Simulate(args) => render_simulation(args, cli.format),
        Command::Asymptotics(args) => render_asymptotics(args, cli.format),
    }
}
