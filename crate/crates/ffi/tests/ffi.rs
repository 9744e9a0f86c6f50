//! Exercises the C entry points from Rust, including the error paths a
//! C caller would hit.

use std::ffi::{c_char, CStr, CString};
use std::io::Write;
use std::ptr;

use abjudge_ffi::{
    ab_bootstrap_p, ab_last_error, ab_rank_bt_json, ab_rank_trueskill_json, ab_rank_wincount_json,
    ab_score_pair, ab_string_free, ab_votes_free, ab_votes_len, ab_votes_parse_buffer,
    ab_votes_parse_path, AbScorePair, AbStatus, AbVotes,
};

const VOTES_CSV: &[u8] = b"\
dataset_id,prompt_id,annotator_id,system_a,system_b,choice
d,p1,ann1,alpha,beta,A
d,p1,ann2,alpha,beta,A
d,p2,ann1,alpha,beta,A
d,p2,ann2,alpha,beta,B
d,p1,ann1,alpha,gamma,A
d,p1,ann2,alpha,gamma,A
d,p2,ann1,alpha,gamma,A
d,p2,ann2,alpha,gamma,B
d,p1,ann1,beta,gamma,A
d,p1,ann2,beta,gamma,A
d,p2,ann1,beta,gamma,B
d,p2,ann2,beta,gamma,tie
";

fn parse_fixture() -> *mut AbVotes {
    let mut handle: *mut AbVotes = ptr::null_mut();
    let status =
        unsafe { ab_votes_parse_buffer(VOTES_CSV.as_ptr(), VOTES_CSV.len(), &mut handle) };
    assert_eq!(status, AbStatus::Ok);
    assert!(!handle.is_null());
    handle
}

fn take_string(ptr: *mut c_char) -> String {
    assert!(!ptr.is_null());
    let s = unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string();
    unsafe { ab_string_free(ptr) };
    s
}

fn last_error() -> String {
    let ptr = ab_last_error();
    assert!(!ptr.is_null(), "an error message should be set");
    unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
}

#[test]
fn parse_buffer_round_trip() {
    let handle = parse_fixture();
    assert_eq!(ab_votes_len(handle), 12);
    unsafe { ab_votes_free(handle) };
}

#[test]
fn parse_path_reads_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("votes.csv");
    std::fs::File::create(&path)
        .unwrap()
        .write_all(VOTES_CSV)
        .unwrap();

    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let mut handle: *mut AbVotes = ptr::null_mut();
    let status = unsafe { ab_votes_parse_path(cpath.as_ptr(), &mut handle) };
    assert_eq!(status, AbStatus::Ok);
    assert_eq!(ab_votes_len(handle), 12);
    unsafe { ab_votes_free(handle) };
}

#[test]
fn parse_path_missing_file_sets_error() {
    let cpath = CString::new("/nonexistent/votes.csv").unwrap();
    let mut handle: *mut AbVotes = ptr::null_mut();
    let status = unsafe { ab_votes_parse_path(cpath.as_ptr(), &mut handle) };
    assert_eq!(status, AbStatus::ParseError);
    assert!(handle.is_null(), "out pointer is untouched on failure");
    assert!(last_error().contains("/nonexistent/votes.csv"));
}

#[test]
fn parse_buffer_rejects_garbage() {
    let garbage = b"this is not a vote file at all";
    let mut handle: *mut AbVotes = ptr::null_mut();
    let status = unsafe { ab_votes_parse_buffer(garbage.as_ptr(), garbage.len(), &mut handle) };
    assert_eq!(status, AbStatus::ParseError);
    assert!(handle.is_null());
}

#[test]
fn null_arguments_are_rejected_not_crashed() {
    let mut handle: *mut AbVotes = ptr::null_mut();
    let status = unsafe { ab_votes_parse_path(ptr::null(), &mut handle) };
    assert_eq!(status, AbStatus::NullPointer);

    let status = unsafe { ab_votes_parse_buffer(ptr::null(), 0, &mut handle) };
    assert_eq!(status, AbStatus::NullPointer);

    let status = unsafe { ab_score_pair(1, 1, 1, ptr::null_mut()) };
    assert_eq!(status, AbStatus::NullPointer);

    let status = unsafe { ab_rank_bt_json(ptr::null(), &mut ptr::null_mut()) };
    assert_eq!(status, AbStatus::NullPointer);

    assert_eq!(ab_votes_len(ptr::null()), 0);
    unsafe { ab_votes_free(ptr::null_mut()) };
    unsafe { ab_string_free(ptr::null_mut()) };
}

#[test]
fn score_pair_matches_direct_arithmetic() {
    let mut out = AbScorePair {
        major_win: 0.0,
        major_loss: 0.0,
        distinct_win: 0.0,
        distinct_loss: 0.0,
        distinct_tie: 0.0,
        major_defined: false,
        distinct_defined: false,
    };
    let status = unsafe { ab_score_pair(6, 2, 2, &mut out) };
    assert_eq!(status, AbStatus::Ok);
    assert!(out.major_defined && out.distinct_defined);
    assert!((out.major_win - 0.75).abs() < 1e-12);
    assert!((out.major_loss - 0.25).abs() < 1e-12);
    assert!((out.distinct_win - 0.6).abs() < 1e-12);
    assert!((out.distinct_loss - 0.2).abs() < 1e-12);
    assert!((out.distinct_tie - 0.2).abs() < 1e-12);
}

#[test]
fn score_pair_all_ties_is_undefined_major() {
    let mut out = AbScorePair {
        major_win: 0.0,
        major_loss: 0.0,
        distinct_win: 0.0,
        distinct_loss: 0.0,
        distinct_tie: 0.0,
        major_defined: true,
        distinct_defined: false,
    };
    let status = unsafe { ab_score_pair(0, 0, 5, &mut out) };
    assert_eq!(status, AbStatus::Ok);
    assert!(!out.major_defined);
    assert!(out.major_win.is_nan());
    assert!(out.distinct_defined);
    assert!((out.distinct_tie - 1.0).abs() < 1e-12);
}

#[test]
fn bootstrap_p_is_deterministic_and_directional() {
    let mut p_lopsided = 0.0;
    let status = unsafe { ab_bootstrap_p(90, 10, 0, 2000, 17, &mut p_lopsided) };
    assert_eq!(status, AbStatus::Ok);
    assert!(p_lopsided < 0.01, "90-10 split should be significant");

    let mut again = 0.0;
    unsafe { ab_bootstrap_p(90, 10, 0, 2000, 17, &mut again) };
    assert_eq!(p_lopsided, again);

    let mut p_even = 0.0;
    unsafe { ab_bootstrap_p(50, 50, 0, 2000, 17, &mut p_even) };
    assert!(p_even > 0.3, "even split should not be significant");
}

#[test]
fn bootstrap_p_rejects_all_tie_matchups() {
    let mut p = 0.0;
    let status = unsafe { ab_bootstrap_p(0, 0, 10, 1000, 17, &mut p) };
    assert_eq!(status, AbStatus::AnalysisError);
    assert!(last_error().contains("no decisive votes"));
}

#[test]
fn bt_ranking_returns_ordered_json() {
    let handle = parse_fixture();
    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { ab_rank_bt_json(handle, &mut json) };
    assert_eq!(status, AbStatus::Ok);
    let rows: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    let ids: Vec<&str> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["system_id"].as_str().unwrap())
        .collect();
    assert_eq!(ids[0], "alpha", "alpha wins most matchups");
    assert_eq!(ids.len(), 3);
    unsafe { ab_votes_free(handle) };
}

#[test]
fn trueskill_ranking_returns_ordered_json() {
    let handle = parse_fixture();
    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { ab_rank_trueskill_json(handle, 17, 2, &mut json) };
    assert_eq!(status, AbStatus::Ok);
    let rows: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["system_id"], "alpha");
    assert!(rows[0]["uncertainty"].as_f64().unwrap() > 0.0);
    unsafe { ab_votes_free(handle) };
}

#[test]
fn wincount_ranking_returns_json() {
    let handle = parse_fixture();
    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { ab_rank_wincount_json(handle, &mut json) };
    assert_eq!(status, AbStatus::Ok);
    let value: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
    let entries = value["entries"].as_array().unwrap();
    assert_eq!(entries[0]["system_id"], "alpha");
    assert_eq!(entries[0]["win_count"], 2);
    unsafe { ab_votes_free(handle) };
}

#[test]
fn bt_ranking_reports_analysis_errors() {
    // gamma never wins a decisive vote, so the default undamped fit
    // must refuse and say which system is undominated.
    let csv = b"\
dataset_id,prompt_id,annotator_id,system_a,system_b,choice
d,p1,ann1,alpha,beta,A
d,p2,ann1,alpha,beta,B
d,p1,ann1,alpha,gamma,A
d,p1,ann1,beta,gamma,A
";
    let mut handle: *mut AbVotes = ptr::null_mut();
    let status = unsafe { ab_votes_parse_buffer(csv.as_ptr(), csv.len(), &mut handle) };
    assert_eq!(status, AbStatus::Ok);

    let mut json: *mut c_char = ptr::null_mut();
    let status = unsafe { ab_rank_bt_json(handle, &mut json) };
    assert_eq!(status, AbStatus::AnalysisError);
    assert!(json.is_null());
    assert!(last_error().contains("gamma"));
    unsafe { ab_votes_free(handle) };
}

#[test]
fn generated_header_declares_every_entry_point() {
    let header = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/include/abjudge.h"
    ))
    .expect("build script wrote the header");
    for name in [
        "ab_last_error",
        "ab_votes_parse_path",
        "ab_votes_parse_buffer",
        "ab_votes_len",
        "ab_votes_free",
        "ab_score_pair",
        "ab_bootstrap_p",
        "ab_rank_bt_json",
        "ab_rank_trueskill_json",
        "ab_rank_wincount_json",
        "ab_string_free",
    ] {
        assert!(header.contains(name), "header is missing {name}");
    }
    assert!(
        header.contains("typedef struct AbVotes AbVotes;"),
        "vote handle should be opaque"
    );
}
