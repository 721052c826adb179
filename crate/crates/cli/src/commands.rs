//! Implementations behind the CLI subcommands: single-scenario conversion,
//! one-axis parameter scans, the two-qubit entanglement scenarios, and the
//! deterministic self-check suites.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;

use photon_graviton::checks::{run_all, run_suite, Suite};
use photon_graviton::conversion::{
    apply_q, conversion_modes, photon_enhancement, prob_primordial, CouplingConfig, SectorSpec,
};
use photon_graviton::cosmology::{squeeze_amplitude, PrimordialSpectrum};
use photon_graviton::entanglement::{
    run_generation_scenario, run_swap_scenario, scenario_space, swap_unitary,
};
use photon_graviton::fock::{
    apply, apply_creator, build_space, inner, normalize, tensor_product, vacuum, Polarization,
};
use photon_graviton::gaussian::{
    displacement_op, squeeze_op, two_mode_squeezed_vacuum, CoherentParams, SqueezeParams,
    TwoModeSqueezeParams,
};
use photon_graviton::polarization::{decompose_b, norm3, WaveVector};
use photon_graviton::units::{HERTZ_TO_EV, M_PL_EV};
use photon_graviton::{Error, Result};

use crate::config::{validate_config, ScenarioConfig};
use crate::output::{emit, emit_text, fmt_bool, fmt_float, CsvDocument};

/// Largest truncation the brute-force oracle accepts; the four-mode space
/// grows as (n_max + 1)^4.
const ORACLE_N_MAX_LIMIT: usize = 32;

/// One computed conversion scenario, ready for tabulation.
#[derive(Debug, Clone)]
pub struct ConvertRecord {
    pub b_perp_tesla: f64,
    pub length_m: f64,
    pub frequency_hz: f64,
    pub squeeze_r: f64,
    pub squeeze_phase: f64,
    pub coherent_amp: f64,
    pub coherent_phase: f64,
    pub graviton_z: f64,
    pub lambda_ev: f64,
    pub lambda_t: f64,
    pub photon_factor: f64,
    pub graviton_factor: f64,
    pub prob_analytic: f64,
    pub prob_oracle: Option<f64>,
    pub rel_deviation: Option<f64>,
    pub perturbative_ok: bool,
}

const RECORD_HEADER: &[&str] = &[
    "b_perp_tesla",
    "length_m",
    "frequency_hz",
    "squeeze_r",
    "squeeze_phase_rad",
    "coherent_amp",
    "coherent_phase_rad",
    "graviton_z",
    "lambda_ev",
    "lambda_t",
    "photon_factor",
    "graviton_factor",
    "prob_analytic",
    "prob_oracle",
    "rel_deviation",
    "perturbative_ok",
];

/// Graviton squeezing for the run: an explicit `z` from the config, or the
/// amplitude the primordial spectrum implies at the scenario frequency.
fn effective_graviton(config: &ScenarioConfig) -> Result<TwoModeSqueezeParams> {
    match config.f_c_hz {
        Some(f_c) => {
            let spectrum = PrimordialSpectrum::new(f_c)?;
            squeeze_amplitude(&spectrum, config.frequency_hz)
        }
        None => TwoModeSqueezeParams::new(config.graviton_z, config.graviton_chi),
    }
}

/// Evaluate the analytic conversion probability (and the truncated-Fock
/// oracle when enabled) for one scenario.
pub fn compute_record(config: &ScenarioConfig) -> Result<ConvertRecord> {
    let k_ev = config.frequency_hz * HERTZ_TO_EV;
    let k = WaveVector::new([k_ev, 0.0, 0.0])?;
    let decomp = decompose_b(config.b_tesla, &k)?;
    let coupling = CouplingConfig::from_physical(config.b_tesla, &k, config.length_m, M_PL_EV)?;
    let params_s = SqueezeParams::new(config.squeeze_r, config.squeeze_phase)?;
    let params_c = CoherentParams::new(Complex64::from_polar(
        config.coherent_amp,
        config.coherent_phase,
    ));
    let params_g = effective_graviton(config)?;

    let prob = prob_primordial(&coupling, &params_s, &params_c, &params_g)?;
    let (prob_oracle, rel_deviation) = if config.oracle {
        let numeric = oracle_probability(config, &coupling, &params_s, &params_c, &params_g)?;
        let deviation = if prob.value > 0.0 {
            (numeric / prob.value - 1.0).abs()
        } else {
            numeric.abs()
        };
        (Some(numeric), Some(deviation))
    } else {
        (None, None)
    };

    Ok(ConvertRecord {
        b_perp_tesla: norm3(decomp.b_perp),
        length_m: config.length_m,
        frequency_hz: config.frequency_hz,
        squeeze_r: config.squeeze_r,
        squeeze_phase: config.squeeze_phase,
        coherent_amp: config.coherent_amp,
        coherent_phase: config.coherent_phase,
        graviton_z: params_g.z(),
        lambda_ev: coupling.lambda_ev(),
        lambda_t: coupling.lambda_t(),
        photon_factor: photon_enhancement(&params_s, &params_c),
        graviton_factor: params_g.z().cosh().powi(2),
        prob_analytic: prob.value,
        prob_oracle,
        rel_deviation,
        perturbative_ok: prob.perturbative_ok,
    })
}

/// First-order cross-check of the analytic probability on the four-mode
/// truncated Fock space. One signal photon rides on the squeezed-coherent
/// background while the graviton pair starts two-mode squeezed; the reported
/// probability is the squared amplitude for the signal photon to convert
/// with both backgrounds surviving unchanged. States are prepared on small
/// per-mode spaces and tensored together, so the only matrix exponentials
/// are single-mode.
fn oracle_probability(
    config: &ScenarioConfig,
    coupling: &CouplingConfig,
    params_s: &SqueezeParams,
    params_c: &CoherentParams,
    params_g: &TwoModeSqueezeParams,
) -> Result<f64> {
    let n_max = config.n_max;
    if n_max > ORACLE_N_MAX_LIMIT {
        return Err(Error::Resource(format!(
            "oracle cross-check supports n_max <= {}, got {}",
            ORACLE_N_MAX_LIMIT, n_max
        )));
    }
    let modes = conversion_modes(Polarization::Plus);

    let space_ph = build_space(&modes[2..3], n_max)?;
    let s_op = squeeze_op(&space_ph, modes[2], params_s)?;
    let d_op = displacement_op(&space_ph, modes[2], params_c)?;
    let background = normalize(&apply(&s_op, &apply(&d_op, &vacuum(&space_ph))?)?)?;
    let with_signal = normalize(&apply_creator(&background, modes[2])?)?;

    let space_pair = build_space(&modes[0..2], n_max)?;
    let pair = normalize(&two_mode_squeezed_vacuum(
        &space_pair,
        modes[0],
        modes[1],
        params_g,
    )?)?;
    let pair_final = normalize(&apply_creator(&pair, modes[0])?)?;

    let space_cr = build_space(&modes[3..4], n_max)?;
    let cr_vacuum = vacuum(&space_cr);

    let initial = tensor_product(&tensor_product(&pair, &with_signal)?, &cr_vacuum)?;
    let final_state = tensor_product(&tensor_product(&pair_final, &background)?, &cr_vacuum)?;

    let sector = SectorSpec {
        polarization: Polarization::Plus,
        include_counter_rotating: true,
    };
    let q_psi = apply_q(&initial, coupling, &sector)?;
    Ok(inner(&final_state, &q_psi)?.norm_sqr())
}

fn record_row(rec: &ConvertRecord) -> Vec<String> {
    vec![
        fmt_float(rec.b_perp_tesla),
        fmt_float(rec.length_m),
        fmt_float(rec.frequency_hz),
        fmt_float(rec.squeeze_r),
        fmt_float(rec.squeeze_phase),
        fmt_float(rec.coherent_amp),
        fmt_float(rec.coherent_phase),
        fmt_float(rec.graviton_z),
        fmt_float(rec.lambda_ev),
        fmt_float(rec.lambda_t),
        fmt_float(rec.photon_factor),
        fmt_float(rec.graviton_factor),
        fmt_float(rec.prob_analytic),
        rec.prob_oracle.map(fmt_float).unwrap_or_default(),
        rec.rel_deviation.map(fmt_float).unwrap_or_default(),
        fmt_bool(rec.perturbative_ok),
    ]
}

fn is_vacuum_seed(config: &ScenarioConfig) -> bool {
    config.squeeze_r == 0.0
        && config.coherent_amp == 0.0
        && config.graviton_z == 0.0
        && config.f_c_hz.is_none()
}

/// Build the single-row conversion table for one scenario.
pub fn convert_document(config: &ScenarioConfig) -> Result<CsvDocument> {
    let rec = compute_record(config)?;
    let mut notes = Vec::new();
    if is_vacuum_seed(config) {
        notes.push(format!(
            "vacuum initial state: leading-order conversion probability {}; \
             comparable 10 T, 1e7 m setups are conventionally benchmarked \
             at an order of magnitude near 1e-20",
            fmt_float(rec.prob_analytic)
        ));
    }
    if !rec.perturbative_ok {
        notes.push(format!(
            "warning: lambda_t = {} is outside the leading-order regime; \
             probabilities are reported unclamped",
            fmt_float(rec.lambda_t)
        ));
    }
    Ok(CsvDocument {
        notes,
        header: RECORD_HEADER.to_vec(),
        rows: vec![record_row(&rec)],
    })
}

pub fn cmd_convert(config: &ScenarioConfig, out: Option<&Path>) -> Result<()> {
    emit(&convert_document(config)?, out)
}

/// Parameter swept by `scan`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanAxis {
    FieldMagnitude,
    Length,
    Frequency,
    SqueezeDb,
    CoherentAmp,
    CoherentPhase,
    GravitonZ,
    CutoffFrequency,
}

const AXIS_NAMES: &[(&str, ScanAxis)] = &[
    ("B", ScanAxis::FieldMagnitude),
    ("L", ScanAxis::Length),
    ("f", ScanAxis::Frequency),
    ("r_db", ScanAxis::SqueezeDb),
    ("beta", ScanAxis::CoherentAmp),
    ("phase", ScanAxis::CoherentPhase),
    ("z", ScanAxis::GravitonZ),
    ("f_c", ScanAxis::CutoffFrequency),
];

impl ScanAxis {
    pub fn name(self) -> &'static str {
        AXIS_NAMES
            .iter()
            .find(|(_, axis)| *axis == self)
            .map(|(name, _)| *name)
            .expect("every axis is named")
    }
}

impl FromStr for ScanAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AXIS_NAMES
            .iter()
            .find(|(name, _)| *name == s)
            .map(|(_, axis)| *axis)
            .ok_or_else(|| {
                let names: Vec<&str> = AXIS_NAMES.iter().map(|(name, _)| *name).collect();
                Error::Config(format!(
                    "unknown scan axis '{}'; valid axes: {}",
                    s,
                    names.join(", ")
                ))
            })
    }
}

/// A validated one-axis sweep: endpoints, step count, and spacing.
#[derive(Debug, Clone, Copy)]
pub struct AxisSpec {
    pub axis: ScanAxis,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
    pub log: bool,
}

impl AxisSpec {
    pub fn new(axis: &str, min: f64, max: f64, steps: usize, scale: &str) -> Result<AxisSpec> {
        let axis = ScanAxis::from_str(axis)?;
        let log = match scale {
            "linear" => false,
            "log" => true,
            other => {
                return Err(Error::Config(format!(
                    "unknown scale '{}'; use linear or log",
                    other
                )))
            }
        };
        if steps == 0 {
            return Err(Error::Config("steps must be at least 1".into()));
        }
        if !min.is_finite() || !max.is_finite() {
            return Err(Error::Config(format!(
                "scan endpoints must be finite, got min={} max={}",
                min, max
            )));
        }
        if log && (min <= 0.0 || max <= 0.0) {
            return Err(Error::Config(
                "log spacing requires positive endpoints".into(),
            ));
        }
        Ok(AxisSpec {
            axis,
            min,
            max,
            steps,
            log,
        })
    }

    /// Deterministic grid: both endpoints are hit exactly (up to rounding on
    /// the log grid); a single step yields just `min`.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let denom = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / denom;
                if self.log {
                    self.min * (self.max / self.min).powf(t)
                } else {
                    self.min + (self.max - self.min) * t
                }
            })
            .collect()
    }
}

/// Substitute one axis value into the base scenario and re-validate.
fn apply_axis(base: &ScenarioConfig, axis: ScanAxis, value: f64) -> Result<ScenarioConfig> {
    let mut config = base.clone();
    match axis {
        ScanAxis::FieldMagnitude => {
            let norm = norm3(config.b_tesla);
            if norm == 0.0 {
                return Err(Error::Config(
                    "scanning B needs a nonzero field direction in the base config".into(),
                ));
            }
            let scale = value / norm;
            for component in config.b_tesla.iter_mut() {
                *component *= scale;
            }
        }
        ScanAxis::Length => config.length_m = value,
        ScanAxis::Frequency => config.frequency_hz = value,
        ScanAxis::SqueezeDb => {
            config.squeeze_r = SqueezeParams::from_db(value, config.squeeze_phase)
                .map_err(|e| Error::Config(format!("axis r_db: {}", e)))?
                .r();
        }
        ScanAxis::CoherentAmp => config.coherent_amp = value,
        ScanAxis::CoherentPhase => config.coherent_phase = value,
        ScanAxis::GravitonZ => {
            if config.f_c_hz.is_some() {
                return Err(Error::Config(
                    "axis z conflicts with f_c_hz in the base config".into(),
                ));
            }
            config.graviton_z = value;
        }
        ScanAxis::CutoffFrequency => {
            if config.graviton_z != 0.0 {
                return Err(Error::Config(
                    "axis f_c conflicts with an explicit z in the base config".into(),
                ));
            }
            config.f_c_hz = Some(value);
        }
    }
    validate_config(&config)?;
    Ok(config)
}

/// Build the sweep table: one converted scenario per axis value.
pub fn scan_document(config: &ScenarioConfig, spec: &AxisSpec) -> Result<CsvDocument> {
    let mut header = vec!["axis_param", "axis_value"];
    header.extend_from_slice(RECORD_HEADER);
    let mut rows = Vec::with_capacity(spec.steps);
    let mut any_nonperturbative = false;
    for value in spec.values() {
        let scenario = apply_axis(config, spec.axis, value)?;
        let rec = compute_record(&scenario)?;
        any_nonperturbative |= !rec.perturbative_ok;
        let mut row = vec![spec.axis.name().to_string(), fmt_float(value)];
        row.extend(record_row(&rec));
        rows.push(row);
    }
    let mut notes = Vec::new();
    if any_nonperturbative {
        notes.push(
            "warning: some rows are outside the leading-order regime; \
             probabilities are reported unclamped"
                .to_string(),
        );
    }
    Ok(CsvDocument {
        notes,
        header,
        rows,
    })
}

pub fn cmd_scan(config: &ScenarioConfig, spec: &AxisSpec, out: Option<&Path>) -> Result<()> {
    emit(&scan_document(config, spec)?, out)
}

/// The two entanglement scenarios the simulator models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Swap,
    Generate,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Swap => "swap",
            Scenario::Generate => "generate",
        }
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "swap" => Ok(Scenario::Swap),
            "generate" => Ok(Scenario::Generate),
            other => Err(Error::Config(format!(
                "unknown scenario '{}'; use swap or generate",
                other
            ))),
        }
    }
}

/// Run one entanglement scenario at interaction strength lambda*t.
pub fn entangle_document(scenario: Scenario, strength: f64) -> Result<CsvDocument> {
    let space = scenario_space()?;
    let u = swap_unitary(&space, strength)?;
    let report = match scenario {
        Scenario::Swap => run_swap_scenario(&u)?,
        Scenario::Generate => run_generation_scenario(&u)?,
    };
    let header = vec![
        "scenario",
        "lambda_t",
        "entropy_before_nats",
        "entropy_after_nats",
        "entropy_after_bits",
        "negativity_after_nats",
        "fidelity_to_target",
    ];
    let row = vec![
        scenario.name().to_string(),
        fmt_float(strength),
        fmt_float(report.entropy_before),
        fmt_float(report.entropy_after),
        fmt_float(report.entropy_after / std::f64::consts::LN_2),
        fmt_float(report.negativity_after),
        fmt_float(report.fidelity_to_target),
    ];
    Ok(CsvDocument {
        notes: Vec::new(),
        header,
        rows: vec![row],
    })
}

pub fn cmd_entangle(scenario: Scenario, strength: f64, out: Option<&Path>) -> Result<()> {
    emit(&entangle_document(scenario, strength)?, out)
}

/// Render the self-check report: one line per check, a summary per suite,
/// and an overall verdict. Returns the text and whether every check passed.
pub fn oracle_check_report(suite: Option<Suite>) -> Result<(String, bool)> {
    let reports = match suite {
        Some(s) => vec![run_suite(s)?],
        None => run_all()?,
    };
    let mut text = String::new();
    let mut all_pass = true;
    for report in &reports {
        for check in &report.checks {
            let _ = writeln!(
                text,
                "[{}] {}: value={} tolerance={} {}",
                report.suite.name(),
                check.name,
                fmt_float(check.value),
                fmt_float(check.tolerance),
                if check.pass() { "pass" } else { "FAIL" }
            );
        }
        let _ = writeln!(
            text,
            "suite {}: {} (max value {})",
            report.suite.name(),
            if report.all_pass() { "PASS" } else { "FAIL" },
            fmt_float(report.max_value())
        );
        all_pass &= report.all_pass();
    }
    let _ = writeln!(text, "overall: {}", if all_pass { "PASS" } else { "FAIL" });
    Ok((text, all_pass))
}

pub fn cmd_oracle_check(suite: Option<Suite>, out: Option<&Path>) -> Result<bool> {
    let (text, all_pass) = oracle_check_report(suite)?;
    emit_text(&text, out)?;
    Ok(all_pass)
}
