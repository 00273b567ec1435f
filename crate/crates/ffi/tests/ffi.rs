use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use cellular_ffi::*;

fn generate(spec: &str) -> *mut CellularScheme {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { cellular_scheme_generate(spec.as_ptr(), &mut out) }, CellularStatus::Ok);
    out
}

fn last_error() -> String {
    let p = cellular_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn matrix_round_trip() {
    let colors: [usize; 9] = [0, 1, 1, 1, 0, 1, 1, 1, 0];
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(cellular_scheme_from_matrix(3, colors.as_ptr(), &mut s), CellularStatus::Ok);
        let (mut n, mut r) = (0, 0);
        assert_eq!(cellular_scheme_size(s, &mut n), CellularStatus::Ok);
        assert_eq!(cellular_scheme_rank(s, &mut r), CellularStatus::Ok);
        assert_eq!((n, r), (3, 2));

        let mut frame = ptr::null_mut();
        assert_eq!(cellular_frame_number(s, 0, &mut frame), CellularStatus::Ok);
        assert_eq!(CStr::from_ptr(frame).to_str().unwrap(), "9");
        cellular_string_free(frame);

        let (mut dim, mut ss) = (0, true);
        assert_eq!(cellular_radical_dim(s, 3, &mut dim), CellularStatus::Ok);
        assert_eq!(cellular_is_semisimple(s, 3, &mut ss), CellularStatus::Ok);
        assert_eq!((dim, ss), (1, false));
        assert_eq!(cellular_is_semisimple(s, 2, &mut ss), CellularStatus::Ok);
        assert!(ss);
        cellular_scheme_free(s);
    }
}

#[test]
fn generated_schemes_verify() {
    let s = generate("thin-group(Q8)");
    let id = CString::new("q8").unwrap();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(cellular_verify_json(s, id.as_ptr(), 0, &mut json), CellularStatus::Ok);
        let line = CStr::from_ptr(json).to_str().unwrap().to_string();
        assert!(line.starts_with("{\"v\":1,\"scheme_id\":\"q8\""));
        assert!(line.ends_with("\"pass\":true}"));
        cellular_string_free(json);
        cellular_scheme_free(s);
    }
}

#[test]
fn error_codes() {
    let mut s = ptr::null_mut();
    let mut n = 0;
    unsafe {
        assert_eq!(cellular_scheme_size(ptr::null(), &mut n), CellularStatus::NullPointer);
        assert!(last_error().contains("scheme"));
        assert_eq!(cellular_scheme_from_matrix(2, ptr::null(), &mut s), CellularStatus::NullPointer);

        let bad: [usize; 9] = [0, 1, 1, 1, 0, 1, 1, 2, 0];
        assert_eq!(cellular_scheme_from_matrix(3, bad.as_ptr(), &mut s), CellularStatus::InvalidScheme);
        assert!(s.is_null());

        let spec = CString::new("cube(3)").unwrap();
        assert_eq!(cellular_scheme_generate(spec.as_ptr(), &mut s), CellularStatus::InvalidArgument);
        assert!(last_error().contains("cube"));

        let k3 = generate("rank2(3)");
        assert_eq!(cellular_radical_dim(k3, 6, &mut n), CellularStatus::NotPrime);
        assert_eq!(cellular_scheme_size(k3, ptr::null_mut()), CellularStatus::NullPointer);
        assert_eq!(cellular_scheme_size(k3, &mut n), CellularStatus::Ok);
        assert!(cellular_last_error().is_null());
        cellular_scheme_free(k3);
        cellular_scheme_free(ptr::null_mut());
        cellular_string_free(ptr::null_mut());
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libcellular_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or C compiler unavailable");
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cellular_smoke");
    let status = Command::new("cc")
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
