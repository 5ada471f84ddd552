use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use htgroups_ffi::*;

fn parse(s: &str) -> *mut HtDiagram {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_parse(c.as_ptr(), 2, &mut out) }, HtStatus::Ok);
    out
}

fn show(d: *const HtDiagram) -> String {
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_to_string(d, &mut s) }, HtStatus::Ok);
    take(s)
}

fn take(s: *mut c_char) -> String {
    let owned = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ht_string_free(s) };
    owned
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ht_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn group_operations() {
    let x = parse("((*,*),*);[1,2,3];(*,(*,*))");
    let y = parse("(*,(*,*));[3,1,2];((*,*),*)");
    assert_eq!(show(y), "(*,*);[2,1];(*,*)");

    let mut xy = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_multiply(y, x, &mut xy) }, HtStatus::Ok);
    assert_eq!(show(xy), "((*,*),*);[3,1,2];((*,*),*)");

    let mut inv = ptr::null_mut();
    let mut back = ptr::null_mut();
    let mut eq = false;
    unsafe {
        assert_eq!(ht_diagram_invert(xy, &mut inv), HtStatus::Ok);
        assert_eq!(ht_diagram_multiply(xy, inv, &mut back), HtStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(ht_diagram_identity(2, 1, &mut id), HtStatus::Ok);
        assert_eq!(ht_diagram_equal(back, id, &mut eq), HtStatus::Ok);
        assert!(eq);
        assert_eq!(ht_diagram_arity(xy), 2);
        assert_eq!(ht_diagram_roots(xy), 1);
        assert_eq!(ht_diagram_leaf_count(xy), 3);
        for d in [x, y, xy, inv, back, id] {
            ht_diagram_free(d);
        }
    }
}

#[test]
fn random_matches_the_library() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_random(3, 2, 5, 42, &mut d) }, HtStatus::Ok);
    assert_eq!(show(d), htgroups::PairedDiagram::random(3, 2, 5, 42).unwrap().to_string());
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_reduce(d, &mut r) }, HtStatus::Ok);
    assert_eq!(show(r), show(d));
    unsafe {
        ht_diagram_free(d);
        ht_diagram_free(r);
    }
}

#[test]
fn word_action() {
    let x = parse("((*,*),*);[1,2,3];(*,(*,*))");
    let w = CString::new("0011").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_apply_word(x, 1, w.as_ptr(), &mut s) }, HtStatus::Ok);
    assert_eq!(take(s), "1:011");
    let short = CString::new("0").unwrap();
    assert_eq!(unsafe { ht_diagram_apply_word(x, 1, short.as_ptr(), &mut s) }, HtStatus::InsufficientDepth);
    assert_eq!(unsafe { ht_diagram_apply_word(x, 2, w.as_ptr(), &mut s) }, HtStatus::Invalid);
    unsafe { ht_diagram_free(x) };
}

#[test]
fn counting_and_independence() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ht_count_trees(3, 5, &mut s) }, HtStatus::Ok);
    assert_eq!(take(s), "3");
    assert_eq!(unsafe { ht_count_trees(2, 41, &mut s) }, HtStatus::Ok);
    assert_eq!(take(s), "2622127042276492108820");
    assert_eq!(unsafe { ht_count_trees(1, 5, &mut s) }, HtStatus::Invalid);

    let mut independent = false;
    let nums = [2u64, 6];
    assert_eq!(unsafe { ht_independence_check(nums.as_ptr(), 2, &mut independent) }, HtStatus::Ok);
    assert!(independent);
    let nums = [2u64, 4];
    assert_eq!(unsafe { ht_independence_check(nums.as_ptr(), 2, &mut independent) }, HtStatus::Ok);
    assert!(!independent);
    let nums = [1u64, 4];
    assert_eq!(unsafe { ht_independence_check(nums.as_ptr(), 2, &mut independent) }, HtStatus::Invalid);
}

#[test]
fn errors_set_status_and_message() {
    let bad = CString::new("(*,*);[1];(*,*)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { ht_diagram_parse(bad.as_ptr(), 2, &mut out) }, HtStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("byte 6"), "{}", last_error());

    assert_eq!(unsafe { ht_diagram_parse(ptr::null(), 2, &mut out) }, HtStatus::NullPointer);
    let ok = CString::new("*;[1];*").unwrap();
    assert_eq!(unsafe { ht_diagram_parse(ok.as_ptr(), 2, ptr::null_mut()) }, HtStatus::NullPointer);

    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { ht_diagram_parse(invalid.as_ptr().cast(), 2, &mut out) }, HtStatus::InvalidUtf8);

    let a = parse("(*,*);[2,1];(*,*)");
    let b = parse("*,*;[2,1];*,*");
    let mut eq = false;
    assert_eq!(unsafe { ht_diagram_equal(a, b, &mut eq) }, HtStatus::Mismatch);
    assert_eq!(unsafe { ht_diagram_multiply(a, b, &mut out) }, HtStatus::Mismatch);
    assert_eq!(unsafe { ht_diagram_to_string(ptr::null(), ptr::null_mut()) }, HtStatus::NullPointer);
    assert_eq!(unsafe { ht_diagram_roots(ptr::null()) }, 0);
    unsafe {
        ht_diagram_free(a);
        ht_diagram_free(b);
        ht_diagram_free(ptr::null_mut());
        ht_string_free(ptr::null_mut());
    }
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(ht_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/htgroups.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "ht_last_error",
        "ht_diagram_parse",
        "ht_diagram_random",
        "ht_diagram_identity",
        "ht_diagram_free",
        "ht_diagram_to_string",
        "ht_string_free",
        "ht_diagram_multiply",
        "ht_diagram_invert",
        "ht_diagram_reduce",
        "ht_diagram_equal",
        "ht_diagram_apply_word",
        "ht_count_trees",
        "ht_independence_check",
        "typedef struct HtDiagram HtDiagram",
        "HT_STATUS_OK = 0",
    ] {
        assert!(h.contains(name), "missing {name}");
    }
}

#[test]
fn c_program_links_against_the_static_library() {
    // test binaries live in <target>/<profile>/deps
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libhtgroups_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/c/smoke.c");
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("htgroups_smoke");
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .expect("C compiler available");
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    assert_eq!(String::from_utf8(run.stdout).unwrap(), "ok\n");
}
