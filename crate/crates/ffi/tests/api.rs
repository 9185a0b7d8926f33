use std::ffi::{CStr, CString};
use std::ptr;

use alteration_lab_ffi::*;

fn named(name: &str) -> *mut AlGraph {
    let name = CString::new(name).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { al_graph_named(name.as_ptr(), &mut g) }, AlStatus::Ok);
    g
}

fn last_error() -> String {
    let p = al_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn graph_round_trip_through_text() {
    let edges = [0u32, 1, 1, 2, 2, 0, 2, 3];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(al_graph_new(4, edges.as_ptr(), 4, &mut g), AlStatus::Ok);
        assert_eq!(al_graph_vertex_count(g), 4);
        assert_eq!(al_graph_edge_count(g), 4);
        let mut text = ptr::null_mut();
        assert_eq!(al_graph_to_text(g, &mut text), AlStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(al_graph_from_text(text, &mut back), AlStatus::Ok);
        let mut pairs = [0u32; 8];
        assert_eq!(al_graph_edges(back, pairs.as_mut_ptr(), 4), AlStatus::Ok);
        assert_eq!(pairs, [0, 1, 0, 2, 1, 2, 2, 3]);
        assert_eq!(al_graph_edges(back, pairs.as_mut_ptr(), 3), AlStatus::InvalidArgument);
        al_string_free(text);
        al_graph_free(back);
        al_graph_free(g);
    }
}

#[test]
fn invalid_input_reports_status_and_message() {
    let edges = [0u32, 0];
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(al_graph_new(3, edges.as_ptr(), 1, &mut g), AlStatus::InvalidArgument);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(al_graph_new(3, ptr::null(), 2, &mut g), AlStatus::NullPointer);
        assert_eq!(al_graph_from_text(ptr::null(), &mut g), AlStatus::NullPointer);
        let bad = CString::new("3 1\n0 7\n").unwrap();
        assert_ne!(al_graph_from_text(bad.as_ptr(), &mut g), AlStatus::Ok);
        let mut stats = AlCopyStats::default();
        assert_eq!(al_copy_stats(ptr::null(), ptr::null(), &mut stats), AlStatus::NullPointer);
        al_graph_free(ptr::null_mut());
        al_string_free(ptr::null_mut());
        assert_eq!(al_graph_vertex_count(ptr::null()), 0);
    }
}

#[test]
fn edgeless_pattern_is_reported() {
    let mut empty = ptr::null_mut();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(al_graph_new(3, ptr::null(), 0, &mut empty), AlStatus::Ok);
        let k4 = named("K4");
        assert_eq!(al_alter(k4, empty, AlMethod::Greedy, &mut out), AlStatus::Edgeless);
        al_graph_free(k4);
        al_graph_free(empty);
    }
}

#[test]
fn densities_and_copy_statistics() {
    let (k4, k3, c5) = (named("K4"), named("K3"), named("C5"));
    unsafe {
        let (mut num, mut den, mut strict) = (0i64, 0i64, false);
        assert_eq!(al_m2(c5, &mut num, &mut den, &mut strict), AlStatus::Ok);
        assert_eq!((num, den, strict), (4, 3, true));
        let mut stats = AlCopyStats::default();
        assert_eq!(al_copy_stats(k4, k3, &mut stats), AlStatus::Ok);
        assert_eq!(stats, AlCopyStats { copies: 4, covered_edges: 6, delta: 2, delta2: 1 });
        for g in [k4, k3, c5] {
            al_graph_free(g);
        }
    }
}

#[test]
fn alterations_and_certificates() {
    let k3 = named("K3");
    let c5 = named("C5");
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(al_sample_gnp(30, 0.4, 9, 0, &mut g), AlStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(al_sample_gnp(30, 0.4, 9, 0, &mut again), AlStatus::Ok);
        assert_eq!(al_graph_edge_count(g), al_graph_edge_count(again));
        for method in [AlMethod::Refined, AlMethod::Greedy, AlMethod::Krivelevich] {
            let mut free = ptr::null_mut();
            assert_eq!(al_alter(g, k3, method, &mut free), AlStatus::Ok);
            let mut stats = AlCopyStats::default();
            assert_eq!(al_copy_stats(free, k3, &mut stats), AlStatus::Ok);
            assert_eq!(stats.copies, 0);
            al_graph_free(free);
        }
        let mut ind = AlIndependence::default();
        assert_eq!(al_independence_number(c5, 1000, &mut ind), AlStatus::Ok);
        assert_eq!(ind, AlIndependence { lower: 2, upper: 2, exact: true });
        let mut verdict = AlVerdict::Undetermined;
        assert_eq!(al_ramsey_certificate(c5, k3, 3, 1000, &mut verdict), AlStatus::Ok);
        assert_eq!(verdict, AlVerdict::Certified);
        assert_eq!(al_ramsey_certificate(c5, k3, 2, 1000, &mut verdict), AlStatus::Ok);
        assert_eq!(verdict, AlVerdict::NotCertified);
        for h in [g, again, k3, c5] {
            al_graph_free(h);
        }
    }
}
