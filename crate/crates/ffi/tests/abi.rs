use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use kplexer_ffi::*;

fn graph_from_pairs(n: usize, pairs: &[(u32, u32)]) -> *mut KplexGraph {
    let flat: Vec<u32> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut g = ptr::null_mut();
    let rc = unsafe { kplex_graph_from_edges(n, flat.as_ptr(), pairs.len(), &mut g) };
    assert_eq!(rc, KplexError::Ok);
    g
}

fn last_error() -> String {
    let p = kplex_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn solve_cycle() {
    let g = graph_from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 0), (1, 0)]);
    unsafe {
        assert_eq!(kplex_graph_vertex_count(g), 4);
        assert_eq!(kplex_graph_edge_count(g), 4);
        let mut r = ptr::null_mut();
        assert_eq!(kplex_solve(g, 2, ptr::null(), &mut r), KplexError::Ok);
        assert_eq!(kplex_result_status(r), KplexStatus::Optimal);
        assert_eq!(kplex_result_omega(r), 4);
        assert_eq!(kplex_result_degeneracy(r), 2);
        assert_eq!(kplex_result_community_degeneracy(r), 0);
        let (mut gk, mut cgk) = (-1i64, -1i64);
        assert_eq!(kplex_result_gaps(r, &mut gk, &mut cgk), 2);
        assert_eq!((gk, cgk), (0, 0));
        assert_eq!(kplex_result_witness_len(r), 4);
        let mut buf = [0u64; 2];
        assert_eq!(kplex_result_witness(r, buf.as_mut_ptr(), buf.len()), 4);
        assert_eq!(buf, [0, 1]);
        kplex_result_free(r);
        kplex_graph_free(g);
    }
}

#[test]
fn trivial_status_reports_no_optimum() {
    let g = graph_from_pairs(3, &[(0, 1)]);
    unsafe {
        let mut cfg = kplex_config_default();
        cfg.compute_cd = false;
        let mut r = ptr::null_mut();
        assert_eq!(kplex_solve(g, 3, &cfg, &mut r), KplexError::Ok);
        assert_eq!(kplex_result_status(r), KplexStatus::Trivial);
        assert_eq!(kplex_result_omega(r), -1);
        assert_eq!(kplex_result_community_degeneracy(r), -1);
        assert_eq!(kplex_result_gaps(r, ptr::null_mut(), ptr::null_mut()), 0);
        kplex_result_free(r);
        kplex_graph_free(g);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        let edges = [0u32, 5];
        assert_eq!(kplex_graph_from_edges(3, edges.as_ptr(), 1, &mut g), KplexError::InvalidArgument);
        assert!(last_error().contains("out of range"));
        assert!(g.is_null());
        assert_eq!(kplex_graph_from_edges(3, ptr::null(), 1, &mut g), KplexError::NullPointer);

        let missing = CString::new("/nonexistent/graph.clq").unwrap();
        assert_eq!(kplex_graph_from_file(missing.as_ptr(), KplexFormat::Auto, &mut g), KplexError::Io);
        assert_eq!(kplex_graph_from_file(ptr::null(), KplexFormat::Auto, &mut g), KplexError::NullPointer);

        let g = graph_from_pairs(2, &[(0, 1)]);
        assert!(kplex_last_error_message().is_null());
        let mut r = ptr::null_mut();
        assert_eq!(kplex_solve(g, 0, ptr::null(), &mut r), KplexError::InvalidArgument);
        let mut cfg = kplex_config_default();
        cfg.time_limit_secs = 0.0;
        assert_eq!(kplex_solve(g, 1, &cfg, &mut r), KplexError::InvalidArgument);
        assert!(r.is_null());
        assert_eq!(kplex_solve(ptr::null(), 1, ptr::null(), &mut r), KplexError::NullPointer);
        kplex_graph_free(g);
        kplex_graph_free(ptr::null_mut());
        kplex_result_free(ptr::null_mut());
        assert_eq!(kplex_result_omega(ptr::null()), -1);
    }
}

#[test]
fn parse_error_and_labels_from_file() {
    let dir = std::env::temp_dir().join(format!("kplexer-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("tri.txt");
    std::fs::write(&good, "10 20\n20 30\n30 10\n30 40\n").unwrap();
    let bad = dir.join("bad.clq");
    std::fs::write(&bad, "p edge 2 1\ne 1 x\n").unwrap();
    unsafe {
        let mut g = ptr::null_mut();
        let path = CString::new(bad.to_str().unwrap()).unwrap();
        assert_eq!(kplex_graph_from_file(path.as_ptr(), KplexFormat::Auto, &mut g), KplexError::Parse);

        let path = CString::new(good.to_str().unwrap()).unwrap();
        assert_eq!(kplex_graph_from_file(path.as_ptr(), KplexFormat::EdgeList, &mut g), KplexError::Ok);
        let mut r = ptr::null_mut();
        assert_eq!(kplex_solve(g, 1, ptr::null(), &mut r), KplexError::Ok);
        let mut buf = [0u64; 8];
        let n = kplex_result_witness(r, buf.as_mut_ptr(), buf.len());
        assert_eq!(&buf[..n], &[10, 20, 30]);
        kplex_result_free(r);
        kplex_graph_free(g);
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(crate_dir().join("include/kplexer.h")).unwrap();
    for name in [
        "typedef struct KplexGraph KplexGraph",
        "typedef struct KplexResult KplexResult",
        "KPLEX_ERROR_OK = 0",
        "kplex_graph_from_file",
        "kplex_graph_from_edges",
        "kplex_solve",
        "kplex_result_witness",
        "kplex_result_free",
        "kplex_graph_free",
        "kplex_last_error_message",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

/// Compiles a small C program against the header and the static library
/// when a C compiler and the archive are both around.
#[test]
fn c_program_links_and_runs() {
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| crate_dir().join("../../target"));
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let lib = target.join(profile).join("libkplexer_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !lib.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {} missing", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("kplexer-ffi-c-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "kplexer.h"
int main(void) {
    uint32_t edges[] = {0,1, 1,2, 2,3, 3,0, 0,2};
    KplexGraph *g = NULL;
    if (kplex_graph_from_edges(4, edges, 5, &g) != KPLEX_ERROR_OK) return 10;
    KplexConfig cfg = kplex_config_default();
    cfg.strategy = KPLEX_STRATEGY_HYBRID;
    KplexResult *r = NULL;
    if (kplex_solve(g, 1, &cfg, &r) != KPLEX_ERROR_OK) return 11;
    printf("%d %lld\n", (int)kplex_result_status(r), (long long)kplex_result_omega(r));
    kplex_result_free(r);
    kplex_graph_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("main");
    let out = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "0 3");
    std::fs::remove_dir_all(&dir).unwrap();
}
