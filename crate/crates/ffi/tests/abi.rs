use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use shtuka_ffi::*;

fn last_error() -> String {
    let p = shtuka_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cstrs(xs: &[&str]) -> (Vec<CString>, Vec<*const c_char>) {
    let owned: Vec<CString> = xs.iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs = owned.iter().map(|c| c.as_ptr()).collect();
    (owned, ptrs)
}

fn ring(q: u32, n: usize, zeta: &str) -> *mut ShtukaRing {
    let var = CString::new("eps").unwrap();
    let zeta = CString::new(zeta).unwrap();
    let mut base = ptr::null_mut();
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(shtuka_ring_truncated(q, n, var.as_ptr(), &mut base), ShtukaStatus::Ok);
        assert_eq!(shtuka_ring_with_zeta(base, zeta.as_ptr(), &mut r), ShtukaStatus::Ok);
        shtuka_ring_free(base);
    }
    r
}

#[test]
fn finite_order() {
    let mut f4 = ptr::null_mut();
    let mut sh = ptr::null_mut();
    let (_keep, m) = cstrs(&["w", "1", "0", "w + 1"]);
    let mut order = 0u64;
    unsafe {
        assert_eq!(shtuka_ring_fq(4, &mut f4), ShtukaStatus::Ok);
        assert_eq!(shtuka_ring_dim(f4), 1);
        assert_eq!(shtuka_finite_new(f4, 2, m.as_ptr(), &mut sh), ShtukaStatus::Ok);
        assert_eq!(shtuka_finite_order(sh, &mut order), ShtukaStatus::Ok);
        shtuka_finite_free(sh);
        shtuka_ring_free(f4);
    }
    assert_eq!(order, 16);
}

#[test]
fn local_queries() {
    let r = ring(2, 2, "eps");
    let (_keep, m) = cstrs(&["z", "0", "0", "z - eps"]);
    let mut sh = ptr::null_mut();
    let mut bounded = true;
    let mut d = 0usize;
    unsafe {
        assert_eq!(shtuka_local_new(r, 2, m.as_ptr(), 0, 12, &mut sh), ShtukaStatus::Ok);
        assert_eq!(shtuka_local_is_bounded(sh, 2, &mut bounded), ShtukaStatus::Ok);
        assert_eq!(shtuka_local_nilpotence_order(sh, 6, &mut d), ShtukaStatus::Ok);
        shtuka_local_free(sh);
        shtuka_ring_free(r);
    }
    assert!(!bounded);
    assert_eq!(d, 2);
}

#[test]
fn tower_orders() {
    let r = ring(2, 1, "0");
    let (_keep, m) = cstrs(&["z"]);
    let mut sh = ptr::null_mut();
    let mut orders = [0u64; 3];
    unsafe {
        assert_eq!(shtuka_local_new(r, 1, m.as_ptr(), 0, 12, &mut sh), ShtukaStatus::Ok);
        assert_eq!(shtuka_local_tower_orders(sh, 3, 4, orders.as_mut_ptr()), ShtukaStatus::Ok);
        shtuka_local_free(sh);
        shtuka_ring_free(r);
    }
    assert_eq!(orders, [2, 4, 8]);
}

#[test]
fn errors() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(shtuka_ring_fq(6, &mut out), ShtukaStatus::InvalidArgument);
        assert!(out.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(shtuka_ring_fq(2, ptr::null_mut()), ShtukaStatus::NullPointer);
        assert!(last_error().contains("null"));

        let r = ring(2, 2, "eps");
        let (_keep, m) = cstrs(&["z - ", "0", "0", "1"]);
        let mut sh = ptr::null_mut();
        assert_eq!(shtuka_local_new(r, 2, m.as_ptr(), 0, 8, &mut sh), ShtukaStatus::InvalidArgument);
        let (_keep, m) = cstrs(&["eps"]);
        assert_eq!(shtuka_local_new(r, 1, m.as_ptr(), 0, 8, &mut sh), ShtukaStatus::Math);
        assert!(sh.is_null());

        assert_eq!(shtuka_ring_fq(2, &mut out), ShtukaStatus::Ok);
        assert!(shtuka_last_error().is_null());
        shtuka_ring_free(out);
        shtuka_ring_free(r);
        shtuka_ring_free(ptr::null_mut());
    }
}

#[test]
fn documents() {
    let good = CString::new(
        r#"{"ring": {"preset": "fq", "q": 2},
            "objects": {"sh": {"kind": "local", "matrix": [["z"]]}},
            "commands": [{"op": "tower", "object": "sh", "n_max": 2}]}"#,
    )
    .unwrap();
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(shtuka_run_document(good.as_ptr(), ShtukaFormat::Json, &mut report), ShtukaStatus::Ok);
        let text = CStr::from_ptr(report).to_str().unwrap().to_owned();
        shtuka_string_free(report);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["results"][0]["value"]["orders"], serde_json::json!(["2", "4"]));

        let bad = CString::new(r#"{"ring": {"preset": "fq", "q": 2}, "commands": [{"op": "teleport"}]}"#).unwrap();
        report = ptr::null_mut();
        assert_eq!(shtuka_run_document(bad.as_ptr(), ShtukaFormat::Human, &mut report), ShtukaStatus::InvalidDocument);
        assert!(report.is_null());
        assert!(last_error().contains("commands[0]"));

        let failing = CString::new(r#"{"ring": {"preset": "fq", "q": 2}, "commands": [{"op": "verify-paper", "criteria": [13]}, {"op": "mu-p", "p": 4}]}"#).unwrap();
        assert_eq!(shtuka_run_document(failing.as_ptr(), ShtukaFormat::Human, &mut report), ShtukaStatus::CommandFailed);
        assert!(!report.is_null());
        shtuka_string_free(report);
    }
}

fn target_dir() -> PathBuf {
    // target/<profile>/deps/abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header() {
    let dir = target_dir();
    let lib = dir.join("libshtuka_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("a C compiler");
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "bounded 1 orders 2 4");
}
