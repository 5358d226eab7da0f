//! C ABI over the `ostrovsky` crate.
//!
//! Every fallible call returns an [`OstroStatus`]; on failure the message is
//! available from [`ostro_last_error_message`] on the same thread. Objects
//! are opaque handles released with their `_free` function, and strings
//! returned through out-parameters are released with [`ostro_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ostrovsky::equation::{builtin, parse_equation, EvolutionEquation};
use ostrovsky::recursion::{verdict, Verdict, VerdictOptions};
use ostrovsky::simulator::{integrate, invariants, make_state, GridState, Outcome, SimConfig};
use ostrovsky::waves::{characteristic_roots, classify, Label};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OstroStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    ComputationError = 5,
    BlowUp = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OstroLabel {
    Region1 = 1,
    Region2 = 2,
    Region3 = 3,
    Region4 = 4,
    C0 = 10,
    C1 = 11,
    C2 = 12,
    C3 = 13,
    Origin = 20,
}

impl From<Label> for OstroLabel {
    fn from(l: Label) -> Self {
        match l {
            Label::Region1 => OstroLabel::Region1,
            Label::Region2 => OstroLabel::Region2,
            Label::Region3 => OstroLabel::Region3,
            Label::Region4 => OstroLabel::Region4,
            Label::C0 => OstroLabel::C0,
            Label::C1 => OstroLabel::C1,
            Label::C2 => OstroLabel::C2,
            Label::C3 => OstroLabel::C3,
            Label::Origin => OstroLabel::Origin,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OstroVerdict {
    NoObstruction = 0,
    Obstruction = 1,
}

/// Parsed evolution equation.
pub struct OstroEquation {
    inner: EvolutionEquation,
}

/// Simulation state with its configuration.
pub struct OstroSimulator {
    config: SimConfig,
    state: GridState,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Fail(OstroStatus, String);

fn fail<T>(status: OstroStatus, msg: impl Into<String>) -> Result<T, Fail> {
    Err(Fail(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> OstroStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            OstroStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            OstroStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return fail(OstroStatus::NullPointer, "null string");
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(OstroStatus::InvalidUtf8, e.to_string()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail(OstroStatus::NullPointer, "null output pointer".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail(OstroStatus::NullPointer, "null handle".into()))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn ostro_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub extern "C" fn ostro_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ostro_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses equation text or a built-in alias (`ostrovsky`, `kdv`).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out_eq` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ostro_equation_parse(
    text: *const c_char,
    max_degree: u32,
    out_eq: *mut *mut OstroEquation,
) -> OstroStatus {
    guard(|| {
        let slot = out(out_eq)?;
        *slot = ptr::null_mut();
        let src = c_str(text)?;
        let src = builtin(src.trim()).unwrap_or(src);
        let inner = parse_equation(src, max_degree as usize).map_err(|e| Fail(OstroStatus::ParseError, e.to_string()))?;
        *slot = Box::into_raw(Box::new(OstroEquation { inner }));
        Ok(())
    })
}

/// # Safety
/// `eq` must come from [`ostro_equation_parse`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ostro_equation_free(eq: *mut OstroEquation) {
    if !eq.is_null() {
        drop(Box::from_raw(eq));
    }
}

/// Dispersion symbol `omega(xi1)` as text.
///
/// # Safety
/// `eq` must be a live handle; `out_text` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ostro_equation_omega(eq: *const OstroEquation, out_text: *mut *mut c_char) -> OstroStatus {
    guard(|| {
        let slot = out(out_text)?;
        *slot = c_string(handle(eq)?.inner.omega.to_string());
        Ok(())
    })
}

/// Runs the locality test and returns the verdict and a JSON report.
///
/// # Safety
/// `eq` must be a live handle; `out_verdict` must be writable; `out_json`
/// may be null when the report is not wanted.
#[no_mangle]
pub unsafe extern "C" fn ostro_integrability(
    eq: *const OstroEquation,
    max_order: u32,
    depth: u32,
    exhaustive: bool,
    out_verdict: *mut OstroVerdict,
    out_json: *mut *mut c_char,
) -> OstroStatus {
    guard(|| {
        let eq = handle(eq)?;
        let verdict_slot = out(out_verdict)?;
        if max_order == 0 || depth == 0 {
            return fail(OstroStatus::InvalidArgument, "max_order and depth must be positive");
        }
        let opts = VerdictOptions { max_order: max_order as usize, depth: depth as i64, exhaustive };
        let report = verdict(&eq.inner, opts).map_err(|e| Fail(OstroStatus::ComputationError, e.to_string()))?;
        *verdict_slot = match report.verdict {
            Verdict::NoObstructionUpToDepth => OstroVerdict::NoObstruction,
            Verdict::ObstructionFound => OstroVerdict::Obstruction,
        };
        if let Some(slot) = out_json.as_mut() {
            let json = serde_json::to_string(&report).map_err(|e| Fail(OstroStatus::ComputationError, e.to_string()))?;
            *slot = c_string(json);
        }
        Ok(())
    })
}

/// # Safety
/// `out_label` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ostro_waves_classify(p: f64, q: f64, tol: f64, out_label: *mut OstroLabel) -> OstroStatus {
    guard(|| {
        let slot = out(out_label)?;
        let class = classify(p, q, tol).map_err(|e| Fail(OstroStatus::InvalidArgument, e.to_string()))?;
        *slot = class.label.into();
        Ok(())
    })
}

/// Roots of `lambda^4 - q lambda^2 + p`; writes four real and four
/// imaginary parts.
///
/// # Safety
/// `re` and `im` must each point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ostro_waves_roots(p: f64, q: f64, re: *mut f64, im: *mut f64) -> OstroStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return fail(OstroStatus::NullPointer, "null output array");
        }
        for (i, l) in characteristic_roots(p, q).lambdas.iter().enumerate() {
            *re.add(i) = l.re;
            *im.add(i) = l.im;
        }
        Ok(())
    })
}

/// Builds a simulator from `key = value` configuration text (the same
/// format the command-line tool reads).
///
/// # Safety
/// `config` must be a NUL-terminated string; `out_sim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_from_config(
    config: *const c_char,
    out_sim: *mut *mut OstroSimulator,
) -> OstroStatus {
    guard(|| {
        let slot = out(out_sim)?;
        *slot = ptr::null_mut();
        let rc = ostrovsky::simulator::parse_config(c_str(config)?)
            .map_err(|e| Fail(OstroStatus::ParseError, e.to_string()))?;
        let init = make_state(&rc.profile, rc.sim.n, rc.sim.length)
            .map_err(|e| Fail(OstroStatus::InvalidArgument, e.to_string()))?;
        *slot = Box::into_raw(Box::new(OstroSimulator { config: rc.sim, state: init.state }));
        Ok(())
    })
}

/// Builds a simulator from `n` samples on `[0, length)`. The mean is
/// removed.
///
/// # Safety
/// `values` must point to `n` readable doubles; `out_sim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_new(
    values: *const f64,
    n: usize,
    length: f64,
    beta: f64,
    gamma: f64,
    dt: f64,
    out_sim: *mut *mut OstroSimulator,
) -> OstroStatus {
    guard(|| {
        let slot = out(out_sim)?;
        *slot = ptr::null_mut();
        if values.is_null() {
            return fail(OstroStatus::NullPointer, "null values");
        }
        let raw = std::slice::from_raw_parts(values, n);
        let mean = raw.iter().sum::<f64>() / n.max(1) as f64;
        let state = GridState::new(raw.iter().map(|v| v - mean).collect(), length, 0.0)
            .map_err(|e| Fail(OstroStatus::InvalidArgument, e.to_string()))?;
        let config = SimConfig { n, length, dt, t_final: dt, beta, gamma, ..SimConfig::default() };
        config.validate().map_err(|e| Fail(OstroStatus::InvalidArgument, e.to_string()))?;
        *slot = Box::into_raw(Box::new(OstroSimulator { config, state }));
        Ok(())
    })
}

/// # Safety
/// `sim` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_free(sim: *mut OstroSimulator) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Advances `steps` time steps. On blow-up the state is left at the last
/// finite step and [`OstroStatus::BlowUp`] is returned.
///
/// # Safety
/// `sim` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_step(sim: *mut OstroSimulator, steps: u64) -> OstroStatus {
    guard(|| {
        let sim = sim.as_mut().ok_or(Fail(OstroStatus::NullPointer, "null handle".into()))?;
        if steps == 0 {
            return Ok(());
        }
        let config = SimConfig { t_final: sim.config.dt * steps as f64, record_every: usize::MAX, ..sim.config.clone() };
        let traj = integrate(&sim.state, &config, 0).map_err(|e| Fail(OstroStatus::ComputationError, e.to_string()))?;
        sim.state = traj.final_state;
        match traj.outcome {
            Outcome::Completed => Ok(()),
            Outcome::BlowUp { last_valid_time } => fail(OstroStatus::BlowUp, format!("blow-up after t = {last_valid_time}")),
        }
    })
}

/// # Safety
/// `sim` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_invariants(
    sim: *const OstroSimulator,
    out_i: *mut f64,
    out_p: *mut f64,
    out_h: *mut f64,
) -> OstroStatus {
    guard(|| {
        let sim = handle(sim)?;
        let (i, p, h) = (out(out_i)?, out(out_p)?, out(out_h)?);
        let inv = invariants(&sim.state, sim.config.beta, sim.config.gamma)
            .map_err(|e| Fail(OstroStatus::ComputationError, e.to_string()))?;
        (*i, *p, *h) = (inv.i, inv.p, inv.h);
        Ok(())
    })
}

/// Current time, or NaN for a null handle.
///
/// # Safety
/// `sim` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_time(sim: *const OstroSimulator) -> f64 {
    sim.as_ref().map_or(f64::NAN, |s| s.state.t)
}

/// Number of grid points, or 0 for a null handle.
///
/// # Safety
/// `sim` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_len(sim: *const OstroSimulator) -> usize {
    sim.as_ref().map_or(0, |s| s.state.n())
}

/// Copies the field into `buf`, which must hold exactly
/// [`ostro_simulator_len`] doubles.
///
/// # Safety
/// `sim` must be a live handle; `buf` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn ostro_simulator_values(sim: *const OstroSimulator, buf: *mut f64, len: usize) -> OstroStatus {
    guard(|| {
        let sim = handle(sim)?;
        if buf.is_null() {
            return fail(OstroStatus::NullPointer, "null buffer");
        }
        if len != sim.state.n() {
            return fail(OstroStatus::InvalidArgument, format!("buffer holds {len} values, field has {}", sim.state.n()));
        }
        ptr::copy_nonoverlapping(sim.state.values.as_ptr(), buf, len);
        Ok(())
    })
}

