//! Command-line front end: scenario configuration, figure presets, trace
//! generation by any method, comparison runs and deterministic CSV emission.
//!
//! Exit codes: 0 success, 1 tolerance failure in `compare`, 2 invalid input.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::analysis::{
    compare_traces, detect_revivals, envelope_for_state, DEFAULT_CONTRAST_THRESHOLD,
    DEFAULT_REVIVAL_THRESHOLD,
};
use crate::closedform::{
    intensity_coherent, intensity_coherent_resonant, intensity_number, intensity_number_resonant,
};
use crate::model::{build_polariton_basis, ModelParams};
use crate::oracle::{oracle_intensity, BlockMode};
use crate::state::{InitialState, IntensityTrace, Method, TimeGrid};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidInput(String),
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    fn invalid(msg: impl Into<String>) -> Self {
        CliError::InvalidInput(msg.into())
    }
}

/// A fully validated run description.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub params: ModelParams,
    pub state: InitialState,
    pub grid: TimeGrid,
    pub method: Method,
    /// Second method for `compare`.
    pub method_b: Option<Method>,
    pub tolerance: Option<f64>,
    pub output_path: Option<PathBuf>,
    pub preset: Option<String>,
}

/// One figure preset. Frequencies are in units of the nominal linewidth γ,
/// so time comes out in units of 1/γ.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub omega_c: f64,
    pub omega_ex: f64,
    pub g: f64,
    pub a: f64,
    pub b: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub number: Option<u64>,
    pub nbar: Option<f64>,
    pub t_end: f64,
    pub n_samples: usize,
}

const G: f64 = 1000.0;
const A: f64 = 10.0;
const FIG1_T: f64 = 3.0 * 2.0 * std::f64::consts::PI / A;
const FIG2_T: f64 = 5.0;
const FIG3_T: f64 = 2.5 * 4.0 * std::f64::consts::PI / A;
const SAMPLES: usize = 20_000;

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "fig1a",
        description: "number state N=2, resonant, no dissipation",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: Some(2),
        nbar: None,
        t_end: FIG1_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig1b",
        description: "number state N=2, resonant, gamma=1",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 1.0,
        gamma2: 1.0,
        number: Some(2),
        nbar: None,
        t_end: FIG1_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig1c",
        description: "number state N=11, resonant, no dissipation",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: Some(11),
        nbar: None,
        t_end: FIG1_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig1d",
        description: "number state N=11, resonant, gamma=1",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 1.0,
        gamma2: 1.0,
        number: Some(11),
        nbar: None,
        t_end: FIG1_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig2a",
        description: "number state N=10, delta=0.2g, B=0",
        omega_c: 200.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: Some(10),
        nbar: None,
        t_end: FIG2_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig2b",
        description: "number state N=10, delta=0.2g, B=0.3A",
        omega_c: 200.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 3.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: Some(10),
        nbar: None,
        t_end: FIG2_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig2c",
        description: "number state N=10, delta=0.4g, B=0.3A",
        omega_c: 400.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 3.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: Some(10),
        nbar: None,
        t_end: FIG2_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig2d",
        description: "number state N=10, delta=0.6g, B=0.3A",
        omega_c: 600.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 3.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: Some(10),
        nbar: None,
        t_end: FIG2_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig3a",
        description: "coherent state nbar=2, resonant, no dissipation",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: None,
        nbar: Some(2.0),
        t_end: FIG3_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig3b",
        description: "coherent state nbar=2, resonant, gamma=1",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 1.0,
        gamma2: 1.0,
        number: None,
        nbar: Some(2.0),
        t_end: FIG3_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig3c",
        description: "coherent state nbar=11, resonant, no dissipation",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 0.0,
        gamma2: 0.0,
        number: None,
        nbar: Some(11.0),
        t_end: FIG3_T,
        n_samples: SAMPLES,
    },
    Preset {
        name: "fig3d",
        description: "coherent state nbar=11, resonant, gamma=1",
        omega_c: 0.0,
        omega_ex: 0.0,
        g: G,
        a: A,
        b: 0.0,
        gamma1: 1.0,
        gamma2: 1.0,
        number: None,
        nbar: Some(11.0),
        t_end: FIG3_T,
        n_samples: SAMPLES,
    },
];

pub fn find_preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

/// Raw key=value configuration before preset resolution and validation.
#[derive(Debug, Default, Clone)]
struct RawConfig {
    omega_c: Option<f64>,
    omega_ex: Option<f64>,
    g: Option<f64>,
    a: Option<f64>,
    b: Option<f64>,
    gamma1: Option<f64>,
    gamma2: Option<f64>,
    state: Option<String>,
    n: Option<u64>,
    nbar: Option<f64>,
    phi: Option<f64>,
    t_end: Option<f64>,
    n_samples: Option<usize>,
    method: Option<String>,
    preset: Option<String>,
    tolerance: Option<f64>,
}

fn parse_f64(key: &str, value: &str) -> Result<f64, CliError> {
    value
        .parse::<f64>()
        .map_err(|_| CliError::invalid(format!("key '{key}' expects a number, got '{value}'")))
}

/// Parse the flat key=value config format. Section headers in square
/// brackets, blank lines and '#' comments are ignored.
fn parse_config(text: &str) -> Result<RawConfig, CliError> {
    let mut raw = RawConfig::default();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') && line.ends_with(']') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::invalid(format!(
                "config line {}: expected key = value, got '{line}'",
                lineno + 1
            )));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "omega_c" => raw.omega_c = Some(parse_f64(key, value)?),
            "omega_ex" => raw.omega_ex = Some(parse_f64(key, value)?),
            "g" => raw.g = Some(parse_f64(key, value)?),
            "A" => raw.a = Some(parse_f64(key, value)?),
            "B" => raw.b = Some(parse_f64(key, value)?),
            "gamma1" => raw.gamma1 = Some(parse_f64(key, value)?),
            "gamma2" => raw.gamma2 = Some(parse_f64(key, value)?),
            "state" => raw.state = Some(value.to_string()),
            "n" => {
                raw.n = Some(value.parse::<u64>().map_err(|_| {
                    CliError::invalid(format!(
                        "key 'n' expects a nonnegative integer, got '{value}'"
                    ))
                })?)
            }
            "nbar" => raw.nbar = Some(parse_f64(key, value)?),
            "phi" => raw.phi = Some(parse_f64(key, value)?),
            "t_end" => raw.t_end = Some(parse_f64(key, value)?),
            "n_samples" => {
                raw.n_samples = Some(value.parse::<usize>().map_err(|_| {
                    CliError::invalid(format!("key 'n_samples' expects an integer, got '{value}'"))
                })?)
            }
            "method" => raw.method = Some(value.to_string()),
            "preset" => raw.preset = Some(value.to_string()),
            "tolerance" => raw.tolerance = Some(parse_f64(key, value)?),
            other => {
                return Err(CliError::invalid(format!("unknown config key '{other}'")));
            }
        }
    }
    Ok(raw)
}

fn apply_preset(raw: &mut RawConfig, preset: &Preset) {
    // a preset overrides all physics keys; grid and method stay overridable
    raw.omega_c = Some(preset.omega_c);
    raw.omega_ex = Some(preset.omega_ex);
    raw.g = Some(preset.g);
    raw.a = Some(preset.a);
    raw.b = Some(preset.b);
    raw.gamma1 = Some(preset.gamma1);
    raw.gamma2 = Some(preset.gamma2);
    match (preset.number, preset.nbar) {
        (Some(n), _) => {
            raw.state = Some("number".into());
            raw.n = Some(n);
        }
        (_, Some(nbar)) => {
            raw.state = Some("coherent".into());
            raw.nbar = Some(nbar);
        }
        _ => unreachable!("preset without a state"),
    }
    if raw.t_end.is_none() {
        raw.t_end = Some(preset.t_end);
    }
    if raw.n_samples.is_none() {
        raw.n_samples = Some(preset.n_samples);
    }
}

fn resolve(raw: RawConfig, output: Option<PathBuf>) -> Result<ScenarioConfig, CliError> {
    let mut raw = raw;
    let preset_name = raw.preset.clone();
    if let Some(name) = &preset_name {
        let preset = find_preset(name)
            .ok_or_else(|| CliError::invalid(format!("unknown preset '{name}'")))?;
        apply_preset(&mut raw, preset);
    }
    let require = |v: Option<f64>, key: &str| {
        v.ok_or_else(|| CliError::invalid(format!("missing required key '{key}'")))
    };
    let params = ModelParams::new(
        require(raw.omega_c, "omega_c")?,
        require(raw.omega_ex, "omega_ex")?,
        require(raw.g, "g")?,
        require(raw.a, "A")?,
        require(raw.b, "B")?,
        require(raw.gamma1, "gamma1")?,
        require(raw.gamma2, "gamma2")?,
    )
    .map_err(|e| CliError::invalid(e.to_string()))?;

    let state = match raw.state.as_deref() {
        Some("number") => InitialState::number(
            raw.n
                .ok_or_else(|| CliError::invalid("state=number requires key 'n'"))?,
        ),
        Some("coherent") => {
            let nbar = raw
                .nbar
                .ok_or_else(|| CliError::invalid("state=coherent requires key 'nbar'"))?;
            InitialState::coherent(nbar, raw.phi.unwrap_or(0.0))
                .map_err(|e| CliError::invalid(e.to_string()))?
        }
        Some(other) => {
            return Err(CliError::invalid(format!(
                "state must be 'number' or 'coherent', got '{other}'"
            )))
        }
        None => return Err(CliError::invalid("missing required key 'state'")),
    };

    let grid = TimeGrid::new(
        require(raw.t_end, "t_end")?,
        raw.n_samples
            .ok_or_else(|| CliError::invalid("missing required key 'n_samples'"))?,
    )
    .map_err(|e| CliError::invalid(e.to_string()))?;

    let method_text = raw.method.unwrap_or_else(|| "closed_general".to_string());
    let mut parts = method_text.split(',').map(str::trim);
    let first = parts.next().unwrap_or("");
    let method = Method::parse(first)
        .ok_or_else(|| CliError::invalid(format!("unknown method '{first}'")))?;
    let method_b = match parts.next() {
        Some(second) => Some(
            Method::parse(second)
                .ok_or_else(|| CliError::invalid(format!("unknown method '{second}'")))?,
        ),
        None => None,
    };
    if parts.next().is_some() {
        return Err(CliError::invalid(
            "at most two comma-separated methods are supported",
        ));
    }

    let config = ScenarioConfig {
        params,
        state,
        grid,
        method,
        method_b,
        tolerance: raw.tolerance,
        output_path: output,
        preset: preset_name,
    };
    for m in std::iter::once(config.method).chain(config.method_b) {
        validate_method(&config, m)?;
    }
    Ok(config)
}

fn validate_method(config: &ScenarioConfig, method: Method) -> Result<(), CliError> {
    if method == Method::ClosedResonant && config.params.detuning() != 0.0 {
        return Err(CliError::invalid(format!(
            "method closed_resonant requires delta = 0, got delta = {}",
            config.params.detuning()
        )));
    }
    if method == Method::OracleFull && config.params.gamma_sum() != 0.0 {
        return Err(CliError::invalid(
            "method oracle_full requires gamma1 = gamma2 = 0".to_string(),
        ));
    }
    Ok(())
}

/// Generate the trace a config describes with the given method.
pub fn generate_trace(config: &ScenarioConfig, method: Method) -> Result<IntensityTrace, CliError> {
    let params = &config.params;
    let basis = build_polariton_basis(params).map_err(|e| CliError::invalid(e.to_string()))?;
    let grid = &config.grid;
    let trace = match (method, &config.state) {
        (Method::ClosedGeneral, InitialState::Number { n }) => {
            intensity_number(params, &basis, *n, grid)
        }
        (Method::ClosedGeneral, InitialState::Coherent { nbar, .. }) => {
            intensity_coherent(params, &basis, *nbar, grid)
        }
        (Method::ClosedResonant, InitialState::Number { n }) => {
            intensity_number_resonant(params, *n, grid)
                .map_err(|e| CliError::invalid(e.to_string()))?
        }
        (Method::ClosedResonant, InitialState::Coherent { nbar, .. }) => {
            intensity_coherent_resonant(params, *nbar, grid)
                .map_err(|e| CliError::invalid(e.to_string()))?
        }
        (Method::OracleSecular, state) => {
            oracle_intensity(params, &basis, state, grid, BlockMode::Secular)
                .map_err(|e| CliError::invalid(e.to_string()))?
        }
        (Method::OracleFull, state) => {
            oracle_intensity(params, &basis, state, grid, BlockMode::Full)
                .map_err(|e| CliError::invalid(e.to_string()))?
        }
    };
    Ok(trace)
}

fn header_line(method_field: &str, state: &InitialState, params: &ModelParams) -> String {
    let n_field = match state {
        InitialState::Number { n } => n.to_string(),
        InitialState::Coherent { nbar, .. } => format!("{:e}", nbar),
    };
    format!(
        "# {method_field} state={} n={} g={:e} A={:e} B={:e} delta={:e} gamma1={:e} gamma2={:e}",
        state.label(),
        n_field,
        params.g,
        params.a,
        params.b,
        params.detuning(),
        params.gamma1,
        params.gamma2
    )
}

/// Deterministic CSV for one trace: provenance header, column names, then
/// one row per sample in shortest round-trip scientific notation.
pub fn trace_to_csv(trace: &IntensityTrace) -> String {
    let basis = build_polariton_basis(&trace.params).expect("trace params were validated");
    let mut out = String::new();
    out.push_str(&header_line(
        &format!("method={}", trace.method),
        &trace.state,
        &trace.params,
    ));
    out.push('\n');
    out.push_str("t,intensity,envelope\n");
    for (&t, &i) in trace.times.iter().zip(&trace.intensity) {
        let env = envelope_for_state(&trace.state, &basis, t);
        let _ = writeln!(out, "{:e},{:e},{:e}", t, i, env);
    }
    out
}

/// Deterministic comparison CSV plus the summary line, which is also the
/// function's second return value.
pub fn comparison_to_csv(
    a: &IntensityTrace,
    b: &IntensityTrace,
    label_a: &str,
    label_b: &str,
) -> Result<(String, String), CliError> {
    let cmp = compare_traces(a, b).map_err(|e| CliError::invalid(e.to_string()))?;
    let mut out = String::new();
    out.push_str(&header_line(
        &format!("method_a={label_a} method_b={label_b}"),
        &a.state,
        &a.params,
    ));
    out.push('\n');
    out.push_str("t,intensity_a,intensity_b,diff\n");
    for ((&t, &x), &y) in a.times.iter().zip(&a.intensity).zip(&b.intensity) {
        let _ = writeln!(out, "{:e},{:e},{:e},{:e}", t, x, y, x - y);
    }
    let summary = format!("max_abs={:e} rms={:e}", cmp.max_abs, cmp.rms);
    out.push_str(&summary);
    out.push('\n');
    Ok((out, summary))
}

/// Parse a trace back out of the simulate CSV format (used by
/// `compare --against`). Header lines starting with '#' and the column-name
/// row are skipped; only the first two columns are read.
pub fn trace_from_csv(
    text: &str,
    method: Method,
    state: InitialState,
    params: ModelParams,
) -> Result<IntensityTrace, CliError> {
    let mut times = Vec::new();
    let mut intensity = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('t') {
            continue;
        }
        if line.starts_with("max_abs=") {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(tf), Some(inf)) = (fields.next(), fields.next()) else {
            return Err(CliError::invalid(format!("malformed CSV row '{line}'")));
        };
        times.push(
            tf.parse::<f64>()
                .map_err(|_| CliError::invalid(format!("bad time value '{tf}'")))?,
        );
        intensity.push(
            inf.parse::<f64>()
                .map_err(|_| CliError::invalid(format!("bad intensity value '{inf}'")))?,
        );
    }
    if times.is_empty() {
        return Err(CliError::invalid("CSV contains no data rows"));
    }
    Ok(IntensityTrace::new(times, intensity, method, state, params))
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(path) => fs::write(path, content).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Run one scenario: generate the configured trace and emit its CSV to the
/// output path (or stdout). Deterministic bytes for a fixed config.
pub fn run_scenario(config: &ScenarioConfig) -> Result<(), CliError> {
    let trace = generate_trace(config, config.method)?;
    if trace.weak_nonlinearity_flagged {
        eprintln!(
            "warning: excitation {} with max(A,B) = {} exceeds the weak-nonlinearity \
             advisory (0.2 g = {}); analytic formulas may drift from the full model",
            config.state.excitation(),
            config.params.a.max(config.params.b),
            0.2 * config.params.g
        );
    }
    write_output(config.output_path.as_deref(), &trace_to_csv(&trace))
}

/// Run a two-method comparison. Returns the exit code: 1 when a tolerance is
/// configured and exceeded, 0 otherwise.
pub fn compare_command(config: &ScenarioConfig, against: Option<&Path>) -> Result<i32, CliError> {
    let trace_a = generate_trace(config, config.method)?;
    let (trace_b, label_b) = match against {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            let trace = trace_from_csv(&text, config.method, config.state, config.params)?;
            (trace, format!("file:{}", path.display()))
        }
        None => {
            let method_b = config.method_b.ok_or_else(|| {
                CliError::invalid(
                    "compare needs two comma-separated methods (method = a,b) or --against <csv>",
                )
            })?;
            (generate_trace(config, method_b)?, method_b.to_string())
        }
    };
    let (csv, summary) = comparison_to_csv(&trace_a, &trace_b, config.method.as_str(), &label_b)?;
    write_output(config.output_path.as_deref(), &csv)?;
    if config.output_path.is_some() {
        println!("{summary}");
    }
    let max_abs: f64 = summary
        .split_whitespace()
        .next()
        .and_then(|s| s.strip_prefix("max_abs="))
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::INFINITY);
    match config.tolerance {
        Some(tol) if max_abs > tol => Ok(1),
        _ => Ok(0),
    }
}

/// Run revival analysis on the configured trace and print a deterministic
/// key=value report.
pub fn analyze_command(config: &ScenarioConfig) -> Result<(), CliError> {
    let trace = generate_trace(config, config.method)?;
    let report = detect_revivals(
        &trace,
        DEFAULT_CONTRAST_THRESHOLD,
        DEFAULT_REVIVAL_THRESHOLD,
    )
    .map_err(|e| CliError::invalid(e.to_string()))?;
    let mut out = String::new();
    let _ = writeln!(out, "center_level={:e}", report.center_level);
    let _ = writeln!(out, "carrier_frequency={:e}", report.carrier_frequency);
    match report.collapse_time {
        Some(t) => {
            let _ = writeln!(out, "collapse_time={:e}", t);
        }
        None => {
            let _ = writeln!(out, "collapse_time=none");
        }
    }
    let times: Vec<String> = report
        .revival_times
        .iter()
        .map(|t| format!("{:e}", t))
        .collect();
    let amps: Vec<String> = report
        .revival_amplitudes
        .iter()
        .map(|a| format!("{:e}", a))
        .collect();
    let _ = writeln!(out, "revival_times={}", times.join(","));
    let _ = writeln!(out, "revival_amplitudes={}", amps.join(","));
    let _ = writeln!(out, "grid_resolution={:e}", report.grid_resolution);
    write_output(config.output_path.as_deref(), &out)
}

/// List the available presets, one deterministic line each.
pub fn presets_command() -> String {
    let mut out = String::new();
    for p in PRESETS {
        let state = match (p.number, p.nbar) {
            (Some(n), _) => format!("number n={n}"),
            (_, Some(nbar)) => format!("coherent nbar={:e}", nbar),
            _ => unreachable!(),
        };
        let _ = writeln!(
            out,
            "{}: {} | {} g={:e} A={:e} B={:e} delta={:e} gamma1={:e} gamma2={:e} t_end={:e} n_samples={}",
            p.name,
            p.description,
            state,
            p.g,
            p.a,
            p.b,
            p.omega_c - p.omega_ex,
            p.gamma1,
            p.gamma2,
            p.t_end,
            p.n_samples
        );
    }
    out
}

struct ParsedArgs {
    subcommand: String,
    config_path: Option<PathBuf>,
    preset: Option<String>,
    output: Option<PathBuf>,
    method: Option<String>,
    tolerance: Option<f64>,
    against: Option<PathBuf>,
}

fn parse_args(args: &[String]) -> Result<ParsedArgs, CliError> {
    let Some(subcommand) = args.first() else {
        return Err(CliError::invalid(
            "usage: polariton-revival <simulate|compare|analyze|presets> [--config <path>] \
             [--preset <name>] [--output <path>] [--method <m>[,<m>]] [--tolerance <v>] \
             [--against <csv>]",
        ));
    };
    let mut parsed = ParsedArgs {
        subcommand: subcommand.clone(),
        config_path: None,
        preset: None,
        output: None,
        method: None,
        tolerance: None,
        against: None,
    };
    let mut it = args[1..].iter();
    while let Some(flag) = it.next() {
        let mut value = |name: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| CliError::invalid(format!("flag {name} expects a value")))
        };
        match flag.as_str() {
            "--config" => parsed.config_path = Some(PathBuf::from(value("--config")?)),
            "--preset" => parsed.preset = Some(value("--preset")?),
            "--output" => parsed.output = Some(PathBuf::from(value("--output")?)),
            "--method" => parsed.method = Some(value("--method")?),
            "--against" => parsed.against = Some(PathBuf::from(value("--against")?)),
            "--tolerance" => {
                let v = value("--tolerance")?;
                parsed.tolerance = Some(v.parse::<f64>().map_err(|_| {
                    CliError::invalid(format!("--tolerance expects a number, got '{v}'"))
                })?);
            }
            other => return Err(CliError::invalid(format!("unknown flag '{other}'"))),
        }
    }
    Ok(parsed)
}

fn load_config(parsed: &ParsedArgs) -> Result<ScenarioConfig, CliError> {
    let mut raw = match &parsed.config_path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            parse_config(&text)?
        }
        None => RawConfig::default(),
    };
    if parsed.preset.is_some() {
        raw.preset = parsed.preset.clone();
    }
    if let Some(m) = &parsed.method {
        raw.method = Some(m.clone());
    }
    if parsed.tolerance.is_some() {
        raw.tolerance = parsed.tolerance;
    }
    resolve(raw, parsed.output.clone())
}

/// Entry point used by the binary; returns the process exit code.
pub fn run(args: &[String]) -> i32 {
    let parsed = match parse_args(args) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let result: Result<i32, CliError> = match parsed.subcommand.as_str() {
        "presets" => {
            print!("{}", presets_command());
            Ok(0)
        }
        "simulate" => load_config(&parsed).and_then(|c| run_scenario(&c).map(|_| 0)),
        "compare" => {
            load_config(&parsed).and_then(|c| compare_command(&c, parsed.against.as_deref()))
        }
        "analyze" => load_config(&parsed).and_then(|c| analyze_command(&c).map(|_| 0)),
        other => Err(CliError::invalid(format!(
            "unknown subcommand '{other}' (expected simulate, compare, analyze or presets)"
        ))),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parses_sections_comments_and_keys() {
        let text = "\
# scenario
[model]
omega_c = 200
omega_ex = 0
g = 1000
A = 10
B = 3
gamma1 = 0
gamma2 = 0

[state]
state = number
n = 10

[grid]
t_end = 1.2566
n_samples = 2000

[run]
method = closed_general
";
        let raw = parse_config(text).unwrap();
        let config = resolve(raw, None).unwrap();
        assert_eq!(config.params.g, 1000.0);
        assert_eq!(config.params.detuning(), 200.0);
        assert_eq!(config.grid.n_samples, 2000);
        assert_eq!(config.method, Method::ClosedGeneral);
        assert!(matches!(config.state, InitialState::Number { n: 10 }));
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(parse_config("frequency = 2\n").is_err());
        assert!(parse_config("omega_c : 2\n").is_err());
    }

    #[test]
    fn preset_overrides_physics_keys() {
        let mut raw = parse_config(
            "omega_c = 7\nomega_ex = 1\ng = 5\nA = 1\nB = 1\ngamma1 = 9\ngamma2 = 9\n\
             state = number\nn = 3\nt_end = 0.5\nn_samples = 64\npreset = fig1d\n",
        )
        .unwrap();
        raw.method = Some("closed_resonant".into());
        let config = resolve(raw, None).unwrap();
        // physics comes from the preset
        assert_eq!(config.params.g, 1000.0);
        assert_eq!(config.params.gamma1, 1.0);
        assert!(matches!(config.state, InitialState::Number { n: 11 }));
        // grid and method stay as configured
        assert_eq!(config.grid.n_samples, 64);
        assert_eq!(config.method, Method::ClosedResonant);
    }

    #[test]
    fn resonant_method_requires_zero_detuning() {
        let raw = parse_config(
            "omega_c = 10\nomega_ex = 0\ng = 1000\nA = 10\nB = 0\ngamma1 = 0\ngamma2 = 0\n\
             state = number\nn = 2\nt_end = 1\nn_samples = 100\nmethod = closed_resonant\n",
        )
        .unwrap();
        assert!(resolve(raw, None).is_err());
    }

    #[test]
    fn full_oracle_requires_zero_decay() {
        let raw = parse_config(
            "omega_c = 0\nomega_ex = 0\ng = 1000\nA = 10\nB = 0\ngamma1 = 1\ngamma2 = 1\n\
             state = number\nn = 2\nt_end = 1\nn_samples = 100\nmethod = oracle_full\n",
        )
        .unwrap();
        assert!(resolve(raw, None).is_err());
    }

    #[test]
    fn all_presets_resolve() {
        for p in PRESETS {
            let raw = RawConfig {
                preset: Some(p.name.to_string()),
                ..Default::default()
            };
            let config = resolve(raw, None).unwrap();
            assert_eq!(config.grid.n_samples, SAMPLES);
            assert!(config.params.g > 0.0);
        }
        assert_eq!(PRESETS.len(), 12);
    }

    #[test]
    fn csv_round_trips_through_parser() {
        let raw = RawConfig {
            preset: Some("fig1a".into()),
            n_samples: Some(256),
            ..Default::default()
        };
        let config = resolve(raw, None).unwrap();
        let trace = generate_trace(&config, config.method).unwrap();
        let csv = trace_to_csv(&trace);
        let back = trace_from_csv(&csv, trace.method, trace.state, trace.params).unwrap();
        assert_eq!(back.times, trace.times);
        assert_eq!(back.intensity, trace.intensity);
    }

    #[test]
    fn csv_bytes_are_deterministic() {
        let raw = RawConfig {
            preset: Some("fig3a".into()),
            n_samples: Some(128),
            ..Default::default()
        };
        let config = resolve(raw, None).unwrap();
        let a = trace_to_csv(&generate_trace(&config, config.method).unwrap());
        let b = trace_to_csv(&generate_trace(&config, config.method).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("# method=closed_general state=coherent n=2e0 g=1e3 A=1e1 B=0e0"));
    }
}
