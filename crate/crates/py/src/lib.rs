//! Python bindings: the channel model, the scheme runners, the
//! closed-form capacity formulas, and the Gaussian gap machinery.
//!
//! Exact rationals cross the boundary as `(numerator, denominator)`
//! tuples so nothing is lost to floating point.

use num_rational::Rational64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use czic::capacity;
use czic::capacity::Alpha;
use czic::channel::{channel_step, partition, LdConfig as CoreConfig, LevelWord};
use czic::gaussian;
use czic::gaussian::GaussianPoint;
use czic::schemes::{self, SchemeKind};

fn ratio(r: Rational64) -> (i64, i64) {
    (*r.numer(), *r.denom())
}

fn parse_alpha(num: i64, den: i64) -> PyResult<Rational64> {
    if den <= 0 || num < 0 {
        return Err(PyValueError::new_err("ratio must be non-negative with positive denominator"));
    }
    Ok(Rational64::new(num, den))
}

fn scheme_kind(name: &str) -> PyResult<SchemeKind> {
    match name {
        "very-weak" => Ok(SchemeKind::VeryWeak),
        "weak" => Ok(SchemeKind::Weak),
        "very-strong" => Ok(SchemeKind::VeryStrong),
        "global" => Ok(SchemeKind::GlobalFeedback),
        _ => Err(PyValueError::new_err(format!(
            "unknown scheme {name:?}; expected very-weak, weak, very-strong or global"
        ))),
    }
}

/// A linear deterministic channel instance (K users, n direct levels,
/// m interference levels).
#[pyclass(name = "LdConfig", frozen)]
struct PyLdConfig {
    inner: CoreConfig,
}

#[pymethods]
impl PyLdConfig {
    #[new]
    fn new(users: usize, direct: usize, cross: usize) -> PyResult<Self> {
        CoreConfig::new(users, direct, cross)
            .map(|inner| Self { inner })
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn users(&self) -> usize {
        self.inner.users
    }

    #[getter]
    fn direct(&self) -> usize {
        self.inner.direct
    }

    #[getter]
    fn cross(&self) -> usize {
        self.inner.cross
    }

    fn word_length(&self) -> usize {
        self.inner.word_length()
    }

    /// Interference ratio m/n as (num, den), or None when n = 0.
    fn alpha(&self) -> Option<(i64, i64)> {
        self.inner.alpha().as_ratio().map(ratio)
    }

    fn __repr__(&self) -> String {
        format!(
            "LdConfig(users={}, direct={}, cross={})",
            self.inner.users, self.inner.direct, self.inner.cross
        )
    }
}

/// Result of one scheme run.
#[pyclass(name = "SchemeResult", frozen, get_all)]
struct PySchemeResult {
    scheme: String,
    bits_per_user: usize,
    blocks: usize,
    rate: (i64, i64),
    normalized_rate: Option<(i64, i64)>,
    decode_success: bool,
    /// Per user: the decoded message as a 0/1 string.
    decoded: Vec<String>,
    /// Full transcript as a JSON string (sent/received words per block).
    trace_json: String,
}

/// Run a feedback coding scheme bit-exactly.
#[pyfunction]
fn run_scheme(scheme: &str, config: &PyLdConfig, seed: u64) -> PyResult<PySchemeResult> {
    let kind = scheme_kind(scheme)?;
    let run = schemes::run_scheme(kind, &config.inner, seed)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let trace = serde_json::to_string(&schemes::trace_json(&run))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(PySchemeResult {
        scheme: kind.name().to_string(),
        bits_per_user: run.result.bits_per_user,
        blocks: run.result.blocks,
        rate: ratio(run.result.rate_per_user),
        normalized_rate: run.result.normalized_rate.map(ratio),
        decode_success: run.result.decode_success,
        decoded: run
            .result
            .decoded
            .iter()
            .map(|bits| bits.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect(),
        trace_json: trace,
    })
}

/// One channel use: map K transmitted words (0/1 strings) to the K
/// received words.
#[pyfunction]
fn step(config: &PyLdConfig, inputs: Vec<String>) -> PyResult<Vec<String>> {
    let words: Vec<LevelWord> = inputs
        .iter()
        .map(|s| LevelWord::parse(s))
        .collect::<Result<_, _>>()
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let outputs =
        channel_step(&words, &config.inner).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(outputs.iter().map(|w| w.to_string()).collect())
}

/// Slice a word into its (upper, top, low) parts.
#[pyfunction(name = "partition")]
fn partition_py(config: &PyLdConfig, word: &str) -> PyResult<(String, String, String)> {
    let w = LevelWord::parse(word).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let p = partition(&w, &config.inner).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok((p.upper.to_string(), p.top.to_string(), p.low.to_string()))
}

/// Normalized symmetric feedback capacity at ratio num/den for K users.
#[pyfunction]
fn c_sym_ld_fb(num: i64, den: i64, users: u32) -> PyResult<(i64, i64)> {
    Ok(ratio(capacity::c_sym_ld_fb(parse_alpha(num, den)?, users)))
}

/// Per-user feedback degrees of freedom (same branches as the capacity).
#[pyfunction]
fn gdof_fb(num: i64, den: i64, users: u32) -> PyResult<(i64, i64)> {
    Ok(ratio(capacity::gdof_fb(parse_alpha(num, den)?, users)))
}

/// No-feedback degrees of freedom (the W-curve).
#[pyfunction]
fn gdof_nofb(num: i64, den: i64) -> PyResult<(i64, i64)> {
    Ok(ratio(capacity::gdof_nofb(parse_alpha(num, den)?)))
}

/// Capacity with global feedback: max(1 - a/2, a/2).
#[pyfunction]
fn c_sym_global_fb(num: i64, den: i64) -> PyResult<(i64, i64)> {
    Ok(ratio(capacity::c_sym_global_fb(parse_alpha(num, den)?)))
}

/// Pairwise upper bound max(1 - a/2, a/2).
#[pyfunction]
fn type1_upper(num: i64, den: i64) -> PyResult<(i64, i64)> {
    Ok(ratio(capacity::type1_upper(parse_alpha(num, den)?)))
}

/// Chain upper bound for a level configuration, or None mid-regime.
#[pyfunction]
fn type2_upper(config: &PyLdConfig) -> Option<(i64, i64)> {
    capacity::type2_upper(&config.inner).map(ratio)
}

/// Interference regime name for ratio num/den (boundaries take the lower
/// regime). A zero denominator stands for an infinite ratio.
#[pyfunction]
fn classify_regime(num: i64, den: i64) -> PyResult<String> {
    let alpha = if den == 0 {
        Alpha::Infinite
    } else {
        Alpha::Finite(parse_alpha(num, den)?)
    };
    Ok(capacity::classify_regime(alpha).name().to_string())
}

/// The Gaussian bound expressions (A, B, C, D, E) in bits/use.
#[pyfunction]
fn compute_bounds(snr: f64, inr: f64) -> PyResult<(f64, f64, f64, f64, f64)> {
    let p = GaussianPoint::new(snr, inr, 2).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let b = gaussian::compute_bounds(&p);
    Ok((b.a, b.b, b.c, b.d, b.e))
}

/// Gap certificate at one Gaussian point.
#[pyclass(name = "GapReport", frozen, get_all)]
struct PyGapReport {
    snr: f64,
    inr: f64,
    users: u32,
    regime: String,
    lower: f64,
    upper: f64,
    gap: f64,
    constant: f64,
    guarded: bool,
    case: Option<String>,
    pass_: bool,
}

/// Certify the constant-gap claim at (snr, inr, K).
#[pyfunction]
fn gap_report(snr: f64, inr: f64, users: u32) -> PyResult<PyGapReport> {
    let p = GaussianPoint::new(snr, inr, users)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let r = gaussian::gap_report(&p).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PyGapReport {
        snr,
        inr,
        users,
        regime: r.regime.name().to_string(),
        lower: r.lower,
        upper: r.upper,
        gap: r.gap,
        constant: r.regime_constant,
        guarded: r.guarded,
        case: r.case.map(|c| format!("{c:?}")),
        pass_: r.pass,
    })
}

/// Finite-power degrees-of-freedom estimate at snr = 2^exponent.
#[pyfunction]
fn gdof_numeric(alpha: f64, users: u32, exponent: u32) -> f64 {
    gaussian::gdof_numeric(alpha, users, exponent)
}

#[pymodule]
fn czic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLdConfig>()?;
    m.add_class::<PySchemeResult>()?;
    m.add_class::<PyGapReport>()?;
    m.add_function(wrap_pyfunction!(run_scheme, m)?)?;
    m.add_function(wrap_pyfunction!(step, m)?)?;
    m.add_function(wrap_pyfunction!(partition_py, m)?)?;
    m.add_function(wrap_pyfunction!(c_sym_ld_fb, m)?)?;
    m.add_function(wrap_pyfunction!(gdof_fb, m)?)?;
    m.add_function(wrap_pyfunction!(gdof_nofb, m)?)?;
    m.add_function(wrap_pyfunction!(c_sym_global_fb, m)?)?;
    m.add_function(wrap_pyfunction!(type1_upper, m)?)?;
    m.add_function(wrap_pyfunction!(type2_upper, m)?)?;
    m.add_function(wrap_pyfunction!(classify_regime, m)?)?;
    m.add_function(wrap_pyfunction!(compute_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(gap_report, m)?)?;
    m.add_function(wrap_pyfunction!(gdof_numeric, m)?)?;
    Ok(())
}
