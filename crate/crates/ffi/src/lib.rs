//! C ABI over `qring`.
//!
//! Every function returns a [`QrStatus`] and writes results through out
//! pointers. On failure the message is available from
//! [`qr_last_error_message`] on the same thread. Handles are opaque and
//! must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};

use qring::mathieu::{self, Branch};
use qring::params::{self, SystemParams};
use qring::spectrum::{self, QuantumState};
use qring::wavefun::{self, WaveSpec};
use qring::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Supercritical = 4,
    Convergence = 5,
    Evaluation = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QrParity {
    Ce = 0,
    Se = 1,
}

impl From<QrParity> for Branch {
    fn from(p: QrParity) -> Self {
        match p {
            QrParity::Ce => Branch::Ce,
            QrParity::Se => Branch::Se,
        }
    }
}

/// A configured Hamiltonian.
pub struct QrSystem {
    params: SystemParams,
}

/// A normalised eigenfunction.
pub struct QrWave {
    spec: WaveSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QrStatus {
    match e {
        Error::Parameter(_) | Error::Config(_) => QrStatus::InvalidArgument,
        Error::Domain(_) | Error::Spectral(_) => QrStatus::Domain,
        Error::Supercritical { .. } => QrStatus::Supercritical,
        Error::Convergence { .. } | Error::Integration { .. } => QrStatus::Convergence,
        Error::Pole { .. } | Error::Evaluation { .. } => QrStatus::Evaluation,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard<F: FnOnce() -> Result<(), Failure> + UnwindSafe>(f: F) -> QrStatus {
    match catch_unwind(f) {
        Ok(Ok(())) => {
            set_last_error("");
            QrStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("null pointer: {what}"));
            QrStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            QrStatus::Panic
        }
    }
}

fn out<'a, T>(ptr: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    // SAFETY: callers pass either null or a valid, aligned, writable pointer.
    unsafe { ptr.as_mut() }.ok_or(Failure::Null(what))
}

fn name<'a>(ptr: *const c_char) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::Null("material name"));
    }
    // SAFETY: non-null and NUL-terminated per the API contract.
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| Failure::Lib(Error::Parameter("material name is not UTF-8".into())))
}

fn state(n_r: u32, m: u32, parity: QrParity, delta: f64) -> Result<QuantumState, Failure> {
    Ok(QuantumState::new(n_r, m, parity.into(), delta)?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread ("" after success).
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// H = −∇²/2μ + A r² + B/r² + C + D_θ cos θ / r² with flux ratio δ.
#[no_mangle]
pub extern "C" fn qr_system_new(
    a: f64,
    b: f64,
    c: f64,
    d_theta: f64,
    mu: f64,
    delta: f64,
    out_system: *mut *mut QrSystem,
) -> QrStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        let params = SystemParams::new(a, b, c, d_theta, mu, delta)?;
        *slot = Box::into_raw(Box::new(QrSystem { params }));
        Ok(())
    })
}

/// Ring built from a built-in material with dipole `dipole` (a.u.).
#[no_mangle]
pub extern "C" fn qr_system_from_material(
    material: *const c_char,
    dipole: f64,
    delta: f64,
    out_system: *mut *mut QrSystem,
) -> QrStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        let mat = params::material(name(material)?)?;
        let params = params::from_material(&mat, dipole, delta)?;
        *slot = Box::into_raw(Box::new(QrSystem { params }));
        Ok(())
    })
}

/// Releases a system. Null is ignored.
///
/// # Safety
/// `system` must come from a `qr_system_*` constructor and not be used again.
#[no_mangle]
pub unsafe extern "C" fn qr_system_free(system: *mut QrSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Energy in hartree of state (n_r, m, parity) at the system's flux.
///
/// # Safety
/// `system` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qr_system_energy(
    system: *const QrSystem,
    n_r: u32,
    m: u32,
    parity: QrParity,
    out_energy: *mut f64,
) -> QrStatus {
    guard(|| {
        let sys = system.as_ref().ok_or(Failure::Null("system"))?;
        let slot = out(out_energy, "out_energy")?;
        let s = state(n_r, m, parity, sys.params.delta)?;
        *slot = spectrum::energy(&s, &sys.params)?.energy;
        Ok(())
    })
}

/// a_{2m}(q) or b_{2m}(q).
#[no_mangle]
pub extern "C" fn qr_char_value(m: u32, parity: QrParity, q: f64, out_value: *mut f64) -> QrStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = mathieu::char_value(m, parity.into(), q)?.value;
        Ok(())
    })
}

/// Floquet characteristic value λ_ν(q).
#[no_mangle]
pub extern "C" fn qr_char_value_fractional(nu: f64, q: f64, out_value: *mut f64) -> QrStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        *slot = mathieu::char_value_fractional(nu, q)?.value;
        Ok(())
    })
}

/// Dipole correction in units of ħω₀ for a built-in material.
#[no_mangle]
pub extern "C" fn qr_correction(
    material: *const c_char,
    m: u32,
    parity: QrParity,
    dipole: f64,
    out_value: *mut f64,
) -> QrStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let mat = params::material(name(material)?)?;
        *slot = spectrum::correction(&state(0, m, parity, 0.0)?, &mat, dipole)?;
        Ok(())
    })
}

/// Transition (n_r, m_hi) → (n_r, m_lo) in units of ħω₀; the relative shift
/// is a fraction, not a percentage. An m_lo = 0 partner is always ce.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub extern "C" fn qr_transition(
    material: *const c_char,
    n_r: u32,
    m_hi: u32,
    m_lo: u32,
    parity: QrParity,
    dipole: f64,
    out_with_dipole: *mut f64,
    out_without_dipole: *mut f64,
    out_relative_shift: *mut f64,
) -> QrStatus {
    guard(|| {
        let mat = params::material(name(material)?)?;
        let upper = state(n_r, m_hi, parity, 0.0)?;
        let lower = state(n_r, m_lo, if m_lo == 0 { QrParity::Ce } else { parity }, 0.0)?;
        let t = spectrum::transition(&upper, &lower, &mat, dipole)?;
        *out(out_with_dipole, "out_with_dipole")? = t.de_with_dipole;
        *out(out_without_dipole, "out_without_dipole")? = t.de_without_dipole;
        *out(out_relative_shift, "out_relative_shift")? = t.relative_shift;
        Ok(())
    })
}

/// λ_eff(δ) − λ_eff(0) in units of ħω₀.
#[no_mangle]
pub extern "C" fn qr_ab_correction(
    material: *const c_char,
    m: u32,
    parity: QrParity,
    delta: f64,
    dipole: f64,
    out_value: *mut f64,
) -> QrStatus {
    guard(|| {
        let slot = out(out_value, "out_value")?;
        let mat = params::material(name(material)?)?;
        *slot = spectrum::ab_correction(&state(0, m, parity, 0.0)?, &mat, delta, dipole)?;
        Ok(())
    })
}

/// Normalised eigenfunction of a system.
///
/// # Safety
/// `system` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qr_wave_new(
    system: *const QrSystem,
    n_r: u32,
    m: u32,
    parity: QrParity,
    out_wave: *mut *mut QrWave,
) -> QrStatus {
    guard(|| {
        let sys = system.as_ref().ok_or(Failure::Null("system"))?;
        let slot = out(out_wave, "out_wave")?;
        let spec = WaveSpec::new(&state(n_r, m, parity, sys.params.delta)?, &sys.params)?;
        *slot = Box::into_raw(Box::new(QrWave { spec }));
        Ok(())
    })
}

/// ψ(r, θ) split into real and imaginary parts.
///
/// # Safety
/// `wave` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn qr_wave_psi(
    wave: *const QrWave,
    r: f64,
    theta: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QrStatus {
    guard(|| {
        let w = wave.as_ref().ok_or(Failure::Null("wave"))?;
        let v = wavefun::psi(&w.spec, r, theta)?;
        *out(out_re, "out_re")? = v.re;
        *out(out_im, "out_im")? = v.im;
        Ok(())
    })
}

/// Releases a wavefunction. Null is ignored.
///
/// # Safety
/// `wave` must come from `qr_wave_new` and not be used again.
#[no_mangle]
pub unsafe extern "C" fn qr_wave_free(wave: *mut QrWave) {
    if !wave.is_null() {
        drop(Box::from_raw(wave));
    }
}
