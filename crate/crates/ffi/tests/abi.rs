use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use twosilt_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(ts_last_error()) }.to_string_lossy().into_owned()
}

fn load(name: &str) -> *mut TsAlgebra {
    let name = CString::new(name).unwrap();
    let mut alg = ptr::null_mut();
    assert_eq!(unsafe { ts_algebra_from_example(name.as_ptr(), &mut alg) }, TsStatus::Ok);
    alg
}

#[test]
fn pentagon_through_the_c_abi() {
    unsafe {
        let alg = load("a2-path");
        assert_eq!(ts_algebra_num_vertices(alg), 2);
        assert_eq!(ts_algebra_dim(alg), 3);
        let mut g = ptr::null_mut();
        assert_eq!(ts_explore(alg, TsStart::Algebra, 100, 0, &mut g), TsStatus::Ok);
        assert_eq!(ts_graph_node_count(g), 5);
        assert_eq!(ts_graph_edge_count(g), 5);
        assert_eq!(ts_graph_is_finite(g), 1);
        let mut buf = [0i64; 4];
        assert_eq!(ts_graph_gmatrix(g, 0, buf.as_mut_ptr(), 4), TsStatus::Ok);
        assert_eq!(buf, [-1, 0, 0, -1]);
        assert_eq!(ts_graph_gmatrix(g, 5, buf.as_mut_ptr(), 4), TsStatus::OutOfRange);
        assert_eq!(ts_graph_gmatrix(g, 0, buf.as_mut_ptr(), 3), TsStatus::BufferTooSmall);
        assert!(last_error().contains("need 4"));

        let dot = ts_graph_hasse_dot(g);
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("digraph hasse"));
        ts_string_free(dot);
        let rep = ts_graph_report_json(g, 0);
        let text = CStr::from_ptr(rep).to_str().unwrap().to_owned();
        ts_string_free(rep);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true), "{text}");
        let js = ts_graph_json(g);
        assert!(CStr::from_ptr(js).to_str().unwrap().contains("\"verdict\": \"Finite\""));
        ts_string_free(js);

        ts_graph_free(g);
        ts_algebra_free(alg);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut alg = ptr::null_mut();
        let bad = CString::new("nope").unwrap();
        assert_eq!(ts_algebra_from_example(bad.as_ptr(), &mut alg), TsStatus::UnknownExample);
        assert!(last_error().contains("nope"));
        assert_eq!(ts_algebra_from_example(ptr::null(), &mut alg), TsStatus::NullPointer);
        let text = CString::new("{\"vertices\": [\"1\"], \"arrows\": [], \"bogus\": 1}").unwrap();
        assert_eq!(ts_algebra_from_spec(text.as_ptr(), &mut alg), TsStatus::ParseError);
        let mut g = ptr::null_mut();
        assert_eq!(ts_explore(ptr::null(), TsStart::Algebra, 10, 0, &mut g), TsStatus::NullPointer);
        let a = load("one-simple");
        assert_eq!(ts_explore(a, TsStart::Algebra, 0, 0, &mut g), TsStatus::OutOfRange);
        ts_algebra_free(a);
        ts_algebra_free(ptr::null_mut());
        ts_graph_free(ptr::null_mut());
        ts_string_free(ptr::null_mut());
        assert_eq!(ts_graph_node_count(ptr::null()), 0);
    }
}

#[test]
fn partial_exploration() {
    unsafe {
        let alg = load("sym-local");
        let mut g = ptr::null_mut();
        assert_eq!(ts_explore(alg, TsStart::Shifted, 6, 0, &mut g), TsStatus::Ok);
        assert_eq!(ts_graph_is_finite(g), 0);
        assert_eq!(ts_graph_node_count(g), 6);
        ts_graph_free(g);
        ts_algebra_free(alg);
    }
}

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/abi-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtwosilt_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "twosilt.h"
int main(void) {
    TsAlgebra *alg = NULL;
    TsGraph *g = NULL;
    if (ts_algebra_from_example("a3-rel", &alg) != TS_STATUS_OK) return 10;
    if (ts_explore(alg, TS_START_ALGEBRA, 100, 0, &g) != TS_STATUS_OK) return 11;
    printf("%zu %zu %d\n", ts_graph_node_count(g), ts_graph_edge_count(g), ts_graph_is_finite(g));
    if (ts_algebra_from_example("missing", &alg) != TS_STATUS_UNKNOWN_EXAMPLE) return 12;
    printf("%s\n", ts_last_error());
    ts_graph_free(g);
    ts_algebra_free(alg);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("main");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("12 18 1\n"), "{text}");
    assert!(text.contains("missing"));
}
