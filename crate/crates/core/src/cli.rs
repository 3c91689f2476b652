//! The `swpst` command line.
//!
//! Every command takes its parameters from flags and, optionally, a TOML
//! config file of flat `key = value` pairs (`--config`); flags win. The fully
//! resolved parameters are echoed at the top of each output file, so a file
//! can be regenerated byte for byte from its own header.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::Error;
use crate::kicked_top::{
    phase_portrait, run_qkt, seed_grid, Chaoticity, QktParams, Readout, POINT_C, POINT_R,
};
use crate::phase_space::PhaseSpaceFrame;
use crate::states::StateSpec;
use crate::tomography::{circuit_read, direct_read, sparsity_sweep, SelectionSpec};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "SWPST_OUT_DIR";

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "swpst",
    version,
    about = "Discrete Wigner tomography and kicked-top tools"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner quadrant of a state, full or selective, exact or sampled.
    Wigner(WignerArgs),
    /// Sparsity and pruning statistics of randomized harmonic states.
    Sparsity(SparsityArgs),
    /// Quantum kicked top with per-kick selective readout.
    Qkt(QktArgs),
    /// Classical kicked-top phase portrait.
    Portrait(PortraitArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Circuit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KPreset {
    Regular,
    Mixed,
    Chaotic,
}

impl KPreset {
    fn k(self) -> f64 {
        match self {
            KPreset::Regular => Chaoticity::Regular.k(),
            KPreset::Mixed => Chaoticity::Mixed.k(),
            KPreset::Chaotic => Chaoticity::Chaotic.k(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Point {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "C", alias = "c")]
    C,
}

/// Flags shared by every command.
#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputArgs {
    /// Config file with `key = value` lines.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Output file; defaults to $SWPST_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WignerArgs {
    /// basis:<n> | plusplus | bell | scs:<θ>,<φ> | harmonic:<j> | randharm:<j>,<η>
    #[arg(long)]
    pub state: Option<String>,
    /// Hilbert dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// all | row:<q> | col:<p> | q,p;q,p;…
    #[arg(long)]
    pub select: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Shots per cell for the circuit method; 0 gives exact expectations.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also emit the full 2N × 2N grid.
    #[arg(long)]
    #[serde(default)]
    pub full: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Serialize)]
pub struct WignerConfig {
    pub state: String,
    pub n: usize,
    pub select: String,
    pub method: Method,
    pub shots: u64,
    pub seed: u64,
    pub full: bool,
    pub format: Format,
}

#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SparsityArgs {
    /// Harmonic index.
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Comma-separated randomization strengths.
    #[arg(long)]
    pub etas: Option<String>,
    /// Comma-separated pruning thresholds (fractions of the max magnitude).
    #[arg(long)]
    pub thresholds: Option<String>,
    /// Number of seeds averaged per η.
    #[arg(long)]
    pub seeds: Option<u64>,
    /// First seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Serialize)]
pub struct SparsityConfig {
    pub j: usize,
    pub n: usize,
    #[serde(serialize_with = "join_list")]
    pub etas: Vec<f64>,
    #[serde(serialize_with = "join_list")]
    pub thresholds: Vec<f64>,
    pub seeds: u64,
    pub seed: u64,
    pub format: Format,
}

fn join_list<S: serde::Serializer>(values: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let parts: Vec<String> = values.iter().map(f64::to_string).collect();
    s.serialize_str(&parts.join(","))
}

#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QktArgs {
    /// Named initial point, R = (π/2, π) or C = (1.0, 2.5).
    #[arg(long, value_enum)]
    pub point: Option<Point>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Chaoticity parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, value_enum)]
    pub k_preset: Option<KPreset>,
    #[arg(long)]
    pub kicks: Option<usize>,
    #[arg(long)]
    pub select: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// csv, or json for JSON lines.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Serialize)]
pub struct QktConfig {
    pub k: f64,
    pub theta: f64,
    pub phi: f64,
    pub kicks: usize,
    pub select: String,
    pub method: Method,
    pub shots: u64,
    pub seed: u64,
    pub format: Format,
}

#[derive(Clone, Debug, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PortraitArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long, value_enum)]
    pub k_preset: Option<KPreset>,
    /// `<rows>x<cols>` seed grid, or explicit seeds `θ,φ;θ,φ;…`.
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Serialize)]
pub struct PortraitConfig {
    pub k: f64,
    pub grid: String,
    pub steps: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::error::ErrorKind;
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(());
        }
        Err(e) => return Err(usage(e.to_string())),
    };
    run(cli)
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Wigner(args) => {
            let out = args.output.clone();
            let args = merge_config(args, &out, merge_wigner)?;
            let config = resolve_wigner(&args)?;
            let ext = ext(config.format);
            emit(&out, &format!("wigner.{ext}"), &render_wigner(&config)?)
        }
        Command::Sparsity(args) => {
            let out = args.output.clone();
            let args = merge_config(args, &out, merge_sparsity)?;
            let config = resolve_sparsity(&args)?;
            let ext = ext(config.format);
            emit(&out, &format!("sparsity.{ext}"), &render_sparsity(&config)?)
        }
        Command::Qkt(args) => {
            let out = args.output.clone();
            let args = merge_config(args, &out, merge_qkt)?;
            let config = resolve_qkt(&args)?;
            let ext = match config.format {
                Format::Csv => "csv",
                Format::Json => "jsonl",
            };
            emit(&out, &format!("qkt.{ext}"), &render_qkt(&config)?)
        }
        Command::Portrait(args) => {
            let out = args.output.clone();
            let args = merge_config(args, &out, merge_portrait)?;
            let config = resolve_portrait(&args)?;
            emit(&out, "portrait.csv", &render_portrait(&config)?)
        }
    }
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn merge_config<A: for<'de> Deserialize<'de> + Default>(
    args: A,
    out: &OutputArgs,
    merge: fn(A, A) -> A,
) -> CliResult<A> {
    match &out.config {
        None => Ok(args),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            let file: A = toml::from_str(&text)
                .map_err(|e| usage(format!("bad config {}: {e}", path.display())))?;
            Ok(merge(args, file))
        }
    }
}

fn merge_wigner(a: WignerArgs, f: WignerArgs) -> WignerArgs {
    WignerArgs {
        state: a.state.or(f.state),
        n: a.n.or(f.n),
        select: a.select.or(f.select),
        method: a.method.or(f.method),
        shots: a.shots.or(f.shots),
        seed: a.seed.or(f.seed),
        full: a.full || f.full,
        format: a.format.or(f.format),
        output: a.output,
    }
}

fn merge_sparsity(a: SparsityArgs, f: SparsityArgs) -> SparsityArgs {
    SparsityArgs {
        j: a.j.or(f.j),
        n: a.n.or(f.n),
        etas: a.etas.or(f.etas),
        thresholds: a.thresholds.or(f.thresholds),
        seeds: a.seeds.or(f.seeds),
        seed: a.seed.or(f.seed),
        format: a.format.or(f.format),
        output: a.output,
    }
}

fn merge_qkt(a: QktArgs, f: QktArgs) -> QktArgs {
    // A flag-level k or k-preset replaces both of the file's.
    let (k, k_preset) = if a.k.is_some() || a.k_preset.is_some() {
        (a.k, a.k_preset)
    } else {
        (f.k, f.k_preset)
    };
    let (point, theta, phi) = if a.point.is_some() || a.theta.is_some() || a.phi.is_some() {
        (a.point, a.theta, a.phi)
    } else {
        (f.point, f.theta, f.phi)
    };
    QktArgs {
        point,
        theta,
        phi,
        k,
        k_preset,
        kicks: a.kicks.or(f.kicks),
        select: a.select.or(f.select),
        method: a.method.or(f.method),
        shots: a.shots.or(f.shots),
        seed: a.seed.or(f.seed),
        format: a.format.or(f.format),
        output: a.output,
    }
}

fn merge_portrait(a: PortraitArgs, f: PortraitArgs) -> PortraitArgs {
    let (k, k_preset) = if a.k.is_some() || a.k_preset.is_some() {
        (a.k, a.k_preset)
    } else {
        (f.k, f.k_preset)
    };
    PortraitArgs {
        k,
        k_preset,
        grid: a.grid.or(f.grid),
        steps: a.steps.or(f.steps),
        output: a.output,
    }
}

fn resolve_k(k: Option<f64>, preset: Option<KPreset>) -> CliResult<f64> {
    match (k, preset) {
        (Some(_), Some(_)) => Err(usage("give either --k or --k-preset, not both")),
        (Some(k), None) if k.is_finite() => Ok(k),
        (Some(k), None) => Err(usage(format!("k must be finite, got {k}"))),
        (None, Some(p)) => Ok(p.k()),
        (None, None) => Ok(KPreset::Regular.k()),
    }
}

pub fn resolve_wigner(a: &WignerArgs) -> CliResult<WignerConfig> {
    let state = a
        .state
        .clone()
        .ok_or_else(|| usage("--state is required"))?;
    state.parse::<StateSpec>().map_err(usage)?;
    let select = a.select.clone().unwrap_or_else(|| "all".into());
    select.parse::<SelectionSpec>().map_err(usage)?;
    let method = a.method.unwrap_or(Method::Direct);
    if method == Method::Direct && a.shots.is_some_and(|s| s > 0) {
        return Err(usage("--shots needs --method circuit"));
    }
    Ok(WignerConfig {
        state,
        n: a.n.unwrap_or(4),
        select,
        method,
        shots: a.shots.unwrap_or(0),
        seed: a.seed.unwrap_or(0),
        full: a.full,
        format: a.format.unwrap_or(Format::Csv),
    })
}

fn parse_list(text: &str, what: &str) -> CliResult<Vec<f64>> {
    let values = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| usage(format!("bad {what} `{s}`: {e}")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    if values.is_empty() || values.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(usage(format!("{what} values must lie in [0, 1]")));
    }
    Ok(values)
}

pub fn resolve_sparsity(a: &SparsityArgs) -> CliResult<SparsityConfig> {
    let etas = parse_list(
        a.etas.as_deref().unwrap_or("0,0.1,0.2,0.4,0.6,0.8,1"),
        "eta",
    )?;
    let thresholds = parse_list(a.thresholds.as_deref().unwrap_or("0.1,0.01"), "threshold")?;
    let seeds = a.seeds.unwrap_or(200);
    if seeds == 0 {
        return Err(usage("--seeds must be positive"));
    }
    Ok(SparsityConfig {
        j: a.j.unwrap_or(0),
        n: a.n.unwrap_or(8),
        etas,
        thresholds,
        seeds,
        seed: a.seed.unwrap_or(0),
        format: a.format.unwrap_or(Format::Csv),
    })
}

pub fn resolve_qkt(a: &QktArgs) -> CliResult<QktConfig> {
    let (theta, phi) = match (a.theta, a.phi) {
        (Some(t), Some(p)) if a.point.is_none() => (t, p),
        (Some(_), Some(_)) => return Err(usage("give either --point or --theta/--phi")),
        (None, None) => match a.point.unwrap_or(Point::R) {
            Point::R => POINT_R,
            Point::C => POINT_C,
        },
        _ => return Err(usage("--theta and --phi go together")),
    };
    let select = a.select.clone().unwrap_or_else(|| "row:0".into());
    select.parse::<SelectionSpec>().map_err(usage)?;
    let method = a.method.unwrap_or(Method::Direct);
    if method == Method::Direct && a.shots.is_some_and(|s| s > 0) {
        return Err(usage("--shots needs --method circuit"));
    }
    Ok(QktConfig {
        k: resolve_k(a.k, a.k_preset)?,
        theta,
        phi,
        kicks: a.kicks.unwrap_or(8),
        select,
        method,
        shots: a.shots.unwrap_or(0),
        seed: a.seed.unwrap_or(0),
        format: a.format.unwrap_or(Format::Csv),
    })
}

/// Seeds for a portrait grid spec: `<rows>x<cols>` or `θ,φ;θ,φ;…`.
pub fn parse_grid(spec: &str) -> CliResult<Vec<(f64, f64)>> {
    if let Some((r, c)) = spec.split_once('x') {
        let r: usize = r
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad grid `{spec}`")))?;
        let c: usize = c
            .trim()
            .parse()
            .map_err(|_| usage(format!("bad grid `{spec}`")))?;
        if r == 0 || c == 0 {
            return Err(usage("grid dimensions must be positive"));
        }
        return Ok(seed_grid(r, c));
    }
    spec.split(';')
        .map(|pair| {
            let (t, p) = pair
                .split_once(',')
                .ok_or_else(|| usage(format!("bad seed `{pair}`")))?;
            let t: f64 = t
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad seed `{pair}`")))?;
            let p: f64 = p
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad seed `{pair}`")))?;
            Ok((t, p))
        })
        .collect()
}

pub fn resolve_portrait(a: &PortraitArgs) -> CliResult<PortraitConfig> {
    let grid = a.grid.clone().unwrap_or_else(|| "20x20".into());
    parse_grid(&grid)?;
    let steps = a.steps.unwrap_or(200);
    if steps == 0 {
        return Err(usage("--steps must be at least 1"));
    }
    Ok(PortraitConfig {
        k: resolve_k(a.k, a.k_preset)?,
        grid,
        steps,
    })
}

/// Fixed 12-decimal rendering used in every CSV data field.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:.12}");
    // No "-0.000000000000".
    if s.trim_start_matches('-')
        .bytes()
        .all(|b| b == b'0' || b == b'.')
    {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn comment_header<C: Serialize>(command: &str, config: &C) -> String {
    let mut out = format!("# swpst {VERSION} {command}\n");
    let body = toml::to_string(config).expect("config serializes");
    for line in body.lines() {
        writeln!(out, "# {line}").unwrap();
    }
    out
}

fn json_header<C: Serialize>(command: &str, config: &C) -> serde_json::Value {
    json!({ "swpst": VERSION, "command": command, "config": config })
}

fn render_wigner(c: &WignerConfig) -> CliResult<String> {
    let spec: StateSpec = c.state.parse().map_err(usage)?;
    let frame = PhaseSpaceFrame::build(c.n)?;
    let rho = spec.build(c.n, c.seed)?;
    let sel = c
        .select
        .parse::<SelectionSpec>()
        .map_err(usage)?
        .resolve(c.n)?;
    let result = match c.method {
        Method::Direct => direct_read(&frame, &rho, &sel)?,
        Method::Circuit => circuit_read(&frame, &rho, &sel, c.shots, c.seed)?,
    };
    let quadrant = result.to_wigner(c.n);
    if c.full && quadrant.is_none() {
        return Err(usage(
            "--full needs a selection covering the whole quadrant",
        ));
    }
    match c.format {
        Format::Csv => {
            let mut out = comment_header("wigner", c);
            let mut grid = vec![vec![String::new(); c.n]; c.n];
            for v in &result.cells {
                let (q0, p0, sign) = crate::phase_space::fold_cell(v.q, v.p, c.n);
                grid[q0][p0] = fmt_num(sign * v.w);
            }
            for row in grid {
                writeln!(out, "{}", row.join(",")).unwrap();
            }
            if let (true, Some(w)) = (c.full, &quadrant) {
                out.push_str("# full grid\n");
                for row in w.expand_full() {
                    let fields: Vec<String> = row.into_iter().map(fmt_num).collect();
                    writeln!(out, "{}", fields.join(",")).unwrap();
                }
            }
            Ok(out)
        }
        Format::Json => {
            let mut doc = json_header("wigner", c);
            doc["dim"] = json!(c.n);
            doc["result"] = serde_json::to_value(&result).expect("result serializes");
            if let Some(w) = &quadrant {
                doc["quadrant"] = json!(w.rows());
                if c.full {
                    doc["full"] = json!(w.expand_full());
                }
            }
            Ok(format!("{doc}\n"))
        }
    }
}

fn render_sparsity(c: &SparsityConfig) -> CliResult<String> {
    let frame = PhaseSpaceFrame::build(c.n)?;
    let rows = sparsity_sweep(&frame, c.j, &c.etas, &c.thresholds, c.seeds, c.seed)?;
    match c.format {
        Format::Csv => {
            let mut out = comment_header("sparsity", c);
            out.push_str(
                "eta,threshold,rho_sparsity_mean,rho_sparsity_std,w_sparsity_mean,w_sparsity_std,\
                 infidelity_mean,infidelity_std\n",
            );
            for r in rows {
                let fields = [
                    r.eta,
                    r.threshold,
                    r.rho_sparsity.mean,
                    r.rho_sparsity.std,
                    r.wigner_sparsity.mean,
                    r.wigner_sparsity.std,
                    r.pruning_infidelity.mean,
                    r.pruning_infidelity.std,
                ];
                let fields: Vec<String> = fields.into_iter().map(fmt_num).collect();
                writeln!(out, "{}", fields.join(",")).unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let mut doc = json_header("sparsity", c);
            doc["rows"] = serde_json::to_value(&rows).expect("rows serialize");
            Ok(format!("{doc}\n"))
        }
    }
}

fn render_qkt(c: &QktConfig) -> CliResult<String> {
    let selection = c
        .select
        .parse::<SelectionSpec>()
        .map_err(usage)?
        .resolve(4)?;
    let readout = match c.method {
        Method::Direct => Readout::Direct,
        Method::Circuit => Readout::Circuit {
            shots: c.shots,
            seed: c.seed,
        },
    };
    let params = QktParams {
        k: c.k,
        kicks: c.kicks,
        theta0: c.theta,
        phi0: c.phi,
        selection: selection.clone(),
        readout,
        keep_states: false,
    };
    let run = run_qkt(&params)?;
    match c.format {
        Format::Csv => {
            let mut out = comment_header("qkt", c);
            let mut cols = vec!["t".to_string()];
            cols.extend(
                selection
                    .cells()
                    .iter()
                    .map(|cell| format!("w_{}_{}", cell.q, cell.p)),
            );
            cols.push("S".into());
            writeln!(out, "{}", cols.join(",")).unwrap();
            for r in &run.records {
                let mut fields = vec![r.t.to_string()];
                fields.extend(r.cells.iter().map(|v| fmt_num(v.w)));
                fields.push(fmt_num(r.s));
                writeln!(out, "{}", fields.join(",")).unwrap();
            }
            Ok(out)
        }
        Format::Json => {
            let mut out = format!("{}\n", json_header("qkt", c));
            for r in &run.records {
                let line = json!({ "t": r.t, "cells": r.cells, "S": r.s });
                writeln!(out, "{line}").unwrap();
            }
            Ok(out)
        }
    }
}

fn render_portrait(c: &PortraitConfig) -> CliResult<String> {
    let seeds = parse_grid(&c.grid)?;
    let portrait = phase_portrait(c.k, &seeds, c.steps);
    let mut out = comment_header("portrait", c);
    out.push_str("seed_id,step,theta,phi\n");
    for (id, points) in portrait.iter().enumerate() {
        for (step, (theta, phi)) in points.iter().enumerate() {
            writeln!(
                out,
                "{id},{},{},{}",
                step + 1,
                fmt_num(*theta),
                fmt_num(*phi)
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn emit(out: &OutputArgs, default_name: &str, contents: &str) -> CliResult<()> {
    let path = match (&out.out, std::env::var_os(OUT_DIR_ENV)) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(PathBuf::from(dir).join(default_name)),
        (None, None) => None,
    };
    match path {
        Some(path) => write_atomic(&path, contents),
        None => {
            io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}
