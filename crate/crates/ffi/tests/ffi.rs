use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use polycond_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(pc_last_error()) }.to_string_lossy().into_owned()
}

fn wilkinson(n: usize) -> *mut PcPolynomial {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pc_polynomial_wilkinson(n, &mut p) }, PcStatus::Ok);
    assert!(!p.is_null());
    p
}

#[test]
fn wilkinson_root_conditions() {
    let p = wilkinson(20);
    assert_eq!(unsafe { pc_polynomial_degree(p) }, 20);
    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..20 {
        let mut v = 0.0;
        assert_eq!(unsafe { pc_root_condition_log10(p, i, 0, &mut v) }, PcStatus::Ok);
        if v > best.1 {
            best = (i, v);
        }
    }
    let mut r = 0.0;
    assert_eq!(unsafe { pc_polynomial_root(p, best.0, &mut r) }, PcStatus::Ok);
    assert_eq!(r, 15.0);
    assert!((best.1 - 16.054).abs() < 1e-3);
    unsafe { pc_polynomial_free(p) };
}

#[test]
fn condition_b_at_zero_is_factorial() {
    let p = wilkinson(20);
    let mut v = 0.0;
    assert_eq!(unsafe { pc_condition_b_log10(p, 0, 1, &mut v) }, PcStatus::Ok);
    // B(0) = |c_0| = 20!
    assert!((v - 18.386_124_616_877_716).abs() < 1e-9);
    assert_eq!(unsafe { pc_condition_b_log10(p, 1, 0, &mut v) }, PcStatus::InvalidArgument);
    unsafe { pc_polynomial_free(p) };
}

#[test]
fn from_roots_and_indicator() {
    let num = [-1i64, 1];
    let den = [1i64, 1];
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { pc_polynomial_from_roots(num.as_ptr(), den.as_ptr(), 2, &mut p) },
        PcStatus::Ok
    );
    let mut v = 0.0;
    assert_eq!(unsafe { pc_indicator_log10(p, 1.1, 0.0, 0, &mut v) }, PcStatus::Ok);
    assert!((10f64.powf(v) - 0.21 / 2.21).abs() < 1e-12);
    assert_eq!(unsafe { pc_indicator_log10(p, 1.0, 0.0, 30, &mut v) }, PcStatus::Ok);
    assert_eq!(v, f64::NEG_INFINITY);
    unsafe { pc_polynomial_free(p) };
}

#[test]
fn named_polynomial() {
    let name = CString::new("s20").unwrap();
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { pc_polynomial_named(name.as_ptr(), &mut p) }, PcStatus::Ok);
    let mut v = 0.0;
    assert_eq!(unsafe { pc_indicator_log10(p, 3.0, -1.5, 60, &mut v) }, PcStatus::Ok);
    assert!(v > -6.0 && v < -4.0);
    unsafe { pc_polynomial_free(p) };

    let bad = CString::new("q3").unwrap();
    assert_eq!(unsafe { pc_polynomial_named(bad.as_ptr(), &mut p) }, PcStatus::InvalidArgument);
    assert!(last_error().contains("unknown polynomial"));
}

#[test]
fn error_codes() {
    let mut v = 0.0;
    assert_eq!(unsafe { pc_condition_b_log10(ptr::null(), 0, 1, &mut v) }, PcStatus::NullPointer);
    assert!(last_error().contains("null"));

    let num = [1i64, 1];
    let den = [1i64, 1];
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { pc_polynomial_from_roots(num.as_ptr(), den.as_ptr(), 2, &mut p) },
        PcStatus::Ok
    );
    assert_eq!(unsafe { pc_root_condition_log10(p, 0, 1, &mut v) }, PcStatus::Singular);
    assert_eq!(unsafe { pc_root_condition_log10(p, 5, 1, &mut v) }, PcStatus::InvalidArgument);
    unsafe { pc_polynomial_free(p) };
    unsafe { pc_polynomial_free(ptr::null_mut()) };

    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { pc_polynomial_from_roots(num.as_ptr(), den.as_ptr(), 0, &mut q) },
        PcStatus::InvalidArgument
    );
    assert_eq!(pc_set_precision(0), PcStatus::InvalidArgument);
    let name = unsafe { CStr::from_ptr(pc_status_name(PcStatus::Singular)) };
    assert_eq!(name.to_str().unwrap(), "singular");
}

fn static_lib() -> Option<PathBuf> {
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let target = tmp.parent()?;
    ["debug", "release"]
        .iter()
        .map(|p| target.join(p).join("libpolycond_ffi.a"))
        .find(|p| p.exists())
}

#[test]
fn c_program_links_against_header() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include").join("polycond.h");
    let text = std::fs::read_to_string(&header).expect("generated header");
    for sym in ["pc_polynomial_wilkinson", "pc_root_condition_log10", "pc_indicator_log10", "PC_STATUS_OK"] {
        assert!(text.contains(sym), "{sym} missing from header");
    }
    let Some(lib) = static_lib() else {
        eprintln!("static library not built; skipping C link check");
        return;
    };
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("polycond_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    let Ok(status) = status else {
        eprintln!("no C compiler; skipping C link check");
        return;
    };
    assert!(status.success(), "C smoke program failed to build");
    let out = Command::new(&exe).output().expect("run smoke program");
    assert!(out.status.success(), "smoke program exited with {:?}", out.status);
    let text = String::from_utf8(out.stdout).unwrap();
    let vals: Vec<f64> = text.split_whitespace().map(|t| t.parse().unwrap()).collect();
    assert!((vals[0] - 16.054).abs() < 1e-3);
    assert!((vals[1] - 18.386).abs() < 1e-3);
}
