use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qring_ffi::*;

fn gaas() -> CString {
    CString::new("GaAs").unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qr_last_error_message()) }.to_str().unwrap().to_string()
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(qr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn system_energy_round_trip() {
    let mut sys = ptr::null_mut();
    assert_eq!(qr_system_from_material(gaas().as_ptr(), 0.0, 0.0, &mut sys), QrStatus::Ok);
    let mut e = 0.0;
    assert_eq!(unsafe { qr_system_energy(sys, 0, 1, QrParity::Ce, &mut e) }, QrStatus::Ok);
    let hw = qring::params::ev_to_hartree(1.0);
    assert!((e / hw - (1.0 + 5f64.sqrt())).abs() < 1e-12);
    assert_eq!(unsafe { qr_system_energy(sys, 0, 0, QrParity::Se, &mut e) }, QrStatus::InvalidArgument);
    assert!(last_error().contains("ce"));
    unsafe { qr_system_free(sys) };
    unsafe { qr_system_free(ptr::null_mut()) };
}

#[test]
fn harmonic_system() {
    let mut sys = ptr::null_mut();
    assert_eq!(qr_system_new(0.5, 0.0, 0.0, 0.0, 1.0, 0.0, &mut sys), QrStatus::Ok);
    let mut e = 0.0;
    assert_eq!(unsafe { qr_system_energy(sys, 2, 3, QrParity::Se, &mut e) }, QrStatus::Ok);
    assert!((e - 8.0).abs() < 1e-12);
    unsafe { qr_system_free(sys) };
}

#[test]
fn error_codes() {
    let mut sys = ptr::null_mut();
    assert_eq!(qr_system_new(-1.0, 0.0, 0.0, 0.0, 1.0, 0.0, &mut sys), QrStatus::InvalidArgument);
    assert!(sys.is_null());
    assert_eq!(qr_system_new(1.0, 0.0, 0.0, 0.2, 1.0, 0.0, ptr::null_mut()), QrStatus::NullPointer);
    assert!(last_error().contains("out_system"));
    assert_eq!(qr_system_new(1.0, 0.0, 0.0, 0.2, 1.0, 0.0, &mut sys), QrStatus::Ok);
    let mut e = 0.0;
    assert_eq!(unsafe { qr_system_energy(sys, 0, 0, QrParity::Ce, &mut e) }, QrStatus::Supercritical);
    unsafe { qr_system_free(sys) };
    let bad = CString::new("Unobtainium").unwrap();
    assert_eq!(qr_correction(bad.as_ptr(), 0, QrParity::Ce, 1.0, &mut e), QrStatus::InvalidArgument);
    assert_eq!(qr_correction(ptr::null(), 0, QrParity::Ce, 1.0, &mut e), QrStatus::NullPointer);
    assert_eq!(unsafe { qr_system_energy(ptr::null(), 0, 0, QrParity::Ce, &mut e) }, QrStatus::NullPointer);
}

#[test]
fn mathieu_values() {
    let mut v = 0.0;
    assert_eq!(qr_char_value(0, QrParity::Ce, 1.0, &mut v), QrStatus::Ok);
    assert!((v + 0.45513860410741364).abs() < 1e-12);
    assert_eq!(qr_char_value_fractional(3.0, 0.0, &mut v), QrStatus::Ok);
    assert_eq!(v, 9.0);
    assert_eq!(qr_char_value(0, QrParity::Se, 1.0, &mut v), QrStatus::InvalidArgument);
}

#[test]
fn ring_quantities() {
    let (mut w, mut wo, mut rel) = (0.0, 0.0, 0.0);
    assert_eq!(qr_transition(gaas().as_ptr(), 0, 1, 0, QrParity::Ce, 10.0, &mut w, &mut wo, &mut rel), QrStatus::Ok);
    assert!(rel > 0.01);
    assert!((wo - (5f64.sqrt() - 2.0)).abs() < 1e-12);
    let mut c = 0.0;
    assert_eq!(qr_correction(gaas().as_ptr(), 0, QrParity::Ce, 10.0, &mut c), QrStatus::Ok);
    assert!(c < 0.0);
    assert_eq!(qr_ab_correction(gaas().as_ptr(), 0, QrParity::Ce, 1.0, 0.0, &mut c), QrStatus::Ok);
    assert!((c - (5f64.sqrt() - 2.0)).abs() < 1e-12);
}

#[test]
fn wavefunction_handle() {
    let mut sys = ptr::null_mut();
    assert_eq!(qr_system_from_material(gaas().as_ptr(), 5.0, 0.0, &mut sys), QrStatus::Ok);
    let mut wave = ptr::null_mut();
    assert_eq!(unsafe { qr_wave_new(sys, 1, 1, QrParity::Ce, &mut wave) }, QrStatus::Ok);
    let (mut re, mut im) = (0.0, 0.0);
    assert_eq!(unsafe { qr_wave_psi(wave, 0.0, 0.3, &mut re, &mut im) }, QrStatus::Ok);
    assert_eq!((re, im), (0.0, 0.0));
    assert_eq!(unsafe { qr_wave_psi(wave, -1.0, 0.3, &mut re, &mut im) }, QrStatus::Domain);
    unsafe {
        qr_wave_free(wave);
        qr_system_free(sys);
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "qring.h"

int main(void) {
    QrSystem *sys = NULL;
    double e = 0.0;
    if (qr_system_new(0.5, 0.0, 0.0, 0.0, 1.0, 0.0, &sys) != QR_STATUS_OK) return 10;
    if (qr_system_energy(sys, 1, 2, QR_PARITY_CE, &e) != QR_STATUS_OK) return 11;
    qr_system_free(sys);
    if (fabs(e - 5.0) > 1e-12) return 12;
    if (qr_system_energy(NULL, 0, 0, QR_PARITY_CE, &e) != QR_STATUS_NULL_POINTER) return 13;
    printf("%s\n", qr_last_error_message());
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"))
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    assert!(include.join("qring.h").exists());
    let work = std::env::temp_dir().join(format!("qring-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let syntax = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .expect("C compiler available");
    assert!(syntax.success());

    let lib = ["debug", "release"]
        .iter()
        .map(|p| target_dir().join(p).join("libqring_ffi.a"))
        .find(|p| p.exists());
    let Some(lib) = lib else {
        eprintln!("static library not built yet; link step skipped");
        return;
    };
    let exe = work.join("main");
    let built = Command::new("cc")
        .args(["-std=c99", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(built.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert!(String::from_utf8_lossy(&run.stdout).contains("null pointer"));
}
