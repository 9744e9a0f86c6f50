//! C ABI over the pairwise-vote analytics library.
//!
//! The surface follows the usual C conventions: every fallible call
//! returns an [`AbStatus`] code and writes its result through an out
//! pointer; the human-readable detail of the most recent failure on the
//! calling thread is available from [`ab_last_error`]. Vote lists live
//! behind the opaque [`AbVotes`] handle, created by the parse functions
//! and released with [`ab_votes_free`]. Rankings come back as allocated
//! JSON strings released with [`ab_string_free`].
//!
//! No call panics across the boundary; panics are caught and reported as
//! [`AbStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use abjudge::corpus::{aggregate, parse_votes, MatchupCounts, VoteRecord};
use abjudge::rank::{
    bt_ranking, fit_bradley_terry_default, trueskill_rate, trueskill_ranking, TrueSkillConfig,
};
use abjudge::scores::{score_pair, win_count_ranking};
use abjudge::significance::{bootstrap_test, ResampleUnit};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input could not be read or parsed; see `ab_last_error`.
    ParseError = 3,
    /// The analysis rejected the data; see `ab_last_error`.
    AnalysisError = 4,
    /// An internal invariant failed; see `ab_last_error`.
    Panic = 5,
}

/// Opaque handle to a parsed vote list.
pub struct AbVotes {
    votes: Vec<VoteRecord>,
}

/// Win fractions of one matchup. A `false` flag means the matching
/// fields are undefined (zero denominator) and hold NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AbScorePair {
    pub major_win: f64,
    pub major_loss: f64,
    pub distinct_win: f64,
    pub distinct_loss: f64,
    pub distinct_tie: f64,
    /// Whether the matchup had any decisive vote (major fields defined).
    pub major_defined: bool,
    /// Whether the matchup had any vote at all (distinct fields defined).
    pub distinct_defined: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<Vec<u8>>) {
    let cstring = CString::new(msg).unwrap_or_else(|_| {
        CString::new("error message contained an interior NUL byte").expect("static message")
    });
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(cstring));
}

fn fail(status: AbStatus, msg: impl std::fmt::Display) -> AbStatus {
    set_last_error(msg.to_string());
    status
}

/// Returns the message of the calling thread's most recent error, or
/// null if no call has failed yet. The pointer stays valid until the
/// next failing call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn ab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

fn guarded(f: impl FnOnce() -> AbStatus) -> AbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            fail(AbStatus::Panic, msg)
        }
    }
}

fn votes_ref<'a>(handle: *const AbVotes) -> Option<&'a [VoteRecord]> {
    unsafe { handle.as_ref().map(|h| h.votes.as_slice()) }
}

fn emit_votes(votes: Vec<VoteRecord>, out: *mut *mut AbVotes) -> AbStatus {
    let handle = Box::into_raw(Box::new(AbVotes { votes }));
    unsafe { *out = handle };
    AbStatus::Ok
}

/// Parses a vote file (JSONL, CSV, or TSV, auto-detected) into a new
/// handle written to `*out`.
///
/// # Safety
/// `path` must point to a NUL-terminated string and `out` to writable
/// storage for one pointer. On any status other than `Ok`, `*out` is
/// untouched. The returned handle must be released with `ab_votes_free`.
#[no_mangle]
pub unsafe extern "C" fn ab_votes_parse_path(
    path: *const c_char,
    out: *mut *mut AbVotes,
) -> AbStatus {
    guarded(|| {
        if path.is_null() || out.is_null() {
            return fail(AbStatus::NullPointer, "path and out must be non-null");
        }
        let path = match unsafe { CStr::from_ptr(path) }.to_str() {
            Ok(p) => p,
            Err(e) => return fail(AbStatus::InvalidUtf8, e),
        };
        let file = match std::fs::File::open(path) {
            Ok(f) => f,
            Err(e) => return fail(AbStatus::ParseError, format!("cannot read {path}: {e}")),
        };
        match parse_votes(std::io::BufReader::new(file)) {
            Ok(votes) => emit_votes(votes, out),
            Err(e) => fail(AbStatus::ParseError, e),
        }
    })
}

/// Parses votes from an in-memory buffer (same formats as the path
/// variant) into a new handle written to `*out`.
///
/// # Safety
/// `data` must point to `len` readable bytes and `out` to writable
/// storage for one pointer. The returned handle must be released with
/// `ab_votes_free`.
#[no_mangle]
pub unsafe extern "C" fn ab_votes_parse_buffer(
    data: *const u8,
    len: usize,
    out: *mut *mut AbVotes,
) -> AbStatus {
    guarded(|| {
        if data.is_null() || out.is_null() {
            return fail(AbStatus::NullPointer, "data and out must be non-null");
        }
        let bytes = unsafe { std::slice::from_raw_parts(data, len) };
        match parse_votes(bytes) {
            Ok(votes) => emit_votes(votes, out),
            Err(e) => fail(AbStatus::ParseError, e),
        }
    })
}

/// Number of votes behind the handle; 0 for null.
#[no_mangle]
pub extern "C" fn ab_votes_len(votes: *const AbVotes) -> usize {
    votes_ref(votes).map_or(0, |v| v.len())
}

/// Releases a handle returned by a parse function. Null is a no-op.
///
/// # Safety
/// `votes` must be a pointer previously returned through a parse
/// function's out parameter, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ab_votes_free(votes: *mut AbVotes) {
    if !votes.is_null() {
        drop(unsafe { Box::from_raw(votes) });
    }
}

/// Computes the win fractions of one matchup from raw counts.
///
/// # Safety
/// `out` must point to writable storage for one `AbScorePair`.
#[no_mangle]
pub unsafe extern "C" fn ab_score_pair(
    win: u64,
    loss: u64,
    tie: u64,
    out: *mut AbScorePair,
) -> AbStatus {
    guarded(|| {
        if out.is_null() {
            return fail(AbStatus::NullPointer, "out must be non-null");
        }
        let counts =
            MatchupCounts::from_counts("", "a", "b", win as usize, loss as usize, tie as usize);
        let s = score_pair(&counts);
        let pair = AbScorePair {
            major_win: s.major_win.unwrap_or(f64::NAN),
            major_loss: s.major_loss.unwrap_or(f64::NAN),
            distinct_win: s.distinct_win.unwrap_or(f64::NAN),
            distinct_loss: s.distinct_loss.unwrap_or(f64::NAN),
            distinct_tie: s.distinct_tie.unwrap_or(f64::NAN),
            major_defined: s.major_win.is_some(),
            distinct_defined: s.distinct_win.is_some(),
        };
        unsafe { *out = pair };
        AbStatus::Ok
    })
}

/// One-sided bootstrap p-value for a matchup given its raw counts
/// (vote-level resampling, deterministic for a fixed seed), written to
/// `*out_p`.
///
/// # Safety
/// `out_p` must point to writable storage for one double.
#[no_mangle]
pub unsafe extern "C" fn ab_bootstrap_p(
    win: u64,
    loss: u64,
    tie: u64,
    samples: u64,
    seed: u64,
    out_p: *mut f64,
) -> AbStatus {
    guarded(|| {
        if out_p.is_null() {
            return fail(AbStatus::NullPointer, "out_p must be non-null");
        }
        let counts =
            MatchupCounts::from_counts("", "a", "b", win as usize, loss as usize, tie as usize);
        match bootstrap_test(&counts, samples as usize, ResampleUnit::Vote, seed) {
            Ok(r) => {
                unsafe { *out_p = r.p_value };
                AbStatus::Ok
            }
            Err(e) => fail(AbStatus::AnalysisError, e),
        }
    })
}

fn emit_json(json: String, out_json: *mut *mut c_char) -> AbStatus {
    match CString::new(json) {
        Ok(s) => {
            unsafe { *out_json = s.into_raw() };
            AbStatus::Ok
        }
        Err(e) => fail(AbStatus::Panic, e),
    }
}

/// Bradley-Terry ranking of the handle's votes as a JSON array of
/// `{system_id, score, uncertainty}` rows (score = log-ability,
/// uncertainty = standard error), best system first. The string must be
/// released with `ab_string_free`.
///
/// # Safety
/// `votes` must be a live handle and `out_json` writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_rank_bt_json(
    votes: *const AbVotes,
    out_json: *mut *mut c_char,
) -> AbStatus {
    guarded(|| {
        let (votes, out_json) = match (votes_ref(votes), out_json.is_null()) {
            (Some(v), false) => (v, out_json),
            _ => return fail(AbStatus::NullPointer, "votes and out_json must be non-null"),
        };
        let counts = aggregate(votes);
        let ranking = fit_bradley_terry_default(&counts).and_then(|fit| bt_ranking(&fit));
        match ranking {
            Ok(rows) => emit_json(
                serde_json::to_string(&rows).expect("ranking serializes"),
                out_json,
            ),
            Err(e) => fail(AbStatus::AnalysisError, e),
        }
    })
}

/// TrueSkill ranking of the handle's votes as a JSON array of
/// `{system_id, score, uncertainty}` rows (score = mu, uncertainty =
/// sigma), best system first. `passes` replay passes over the stream
/// shuffled from `seed`. The string must be released with
/// `ab_string_free`.
///
/// # Safety
/// `votes` must be a live handle and `out_json` writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_rank_trueskill_json(
    votes: *const AbVotes,
    seed: u64,
    passes: u32,
    out_json: *mut *mut c_char,
) -> AbStatus {
    guarded(|| {
        let (votes, out_json) = match (votes_ref(votes), out_json.is_null()) {
            (Some(v), false) => (v, out_json),
            _ => return fail(AbStatus::NullPointer, "votes and out_json must be non-null"),
        };
        let cfg = TrueSkillConfig {
            passes: passes as usize,
            shuffle_seed: seed,
            ..TrueSkillConfig::default()
        };
        let ranking = trueskill_rate(votes, &cfg).and_then(|r| trueskill_ranking(&r));
        match ranking {
            Ok(rows) => emit_json(
                serde_json::to_string(&rows).expect("ranking serializes"),
                out_json,
            ),
            Err(e) => fail(AbStatus::AnalysisError, e),
        }
    })
}

/// Win-count ranking of the handle's votes as a JSON object
/// `{entries: [{system_id, win_count, total_matchups, mean_major_win}]}`.
/// The string must be released with `ab_string_free`.
///
/// # Safety
/// `votes` must be a live handle and `out_json` writable storage for one
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn ab_rank_wincount_json(
    votes: *const AbVotes,
    out_json: *mut *mut c_char,
) -> AbStatus {
    guarded(|| {
        let (votes, out_json) = match (votes_ref(votes), out_json.is_null()) {
            (Some(v), false) => (v, out_json),
            _ => return fail(AbStatus::NullPointer, "votes and out_json must be non-null"),
        };
        let ranking = win_count_ranking(&aggregate(votes));
        emit_json(
            serde_json::to_string(&ranking).expect("ranking serializes"),
            out_json,
        )
    })
}

/// Releases a string returned through an `out_json` parameter. Null is a
/// no-op.
///
/// # Safety
/// `s` must be a pointer previously returned by this library and must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
