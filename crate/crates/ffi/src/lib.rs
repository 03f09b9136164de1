//! C interface to the kaleidoscope library.
//!
//! Every function returns a [`KsStatus`]; on failure a message is
//! available from [`ks_last_error`] on the same thread. Strings handed out
//! by the library are NUL-terminated JSON and must be released with
//! [`ks_string_free`]; handles with [`ks_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kaleidoscope::apparitions::{color_search, Kind};
use kaleidoscope::geometry::Tetrad;
use kaleidoscope::golden::Golden;
use kaleidoscope::hexagon::SquareId;
use kaleidoscope::records::{self, ListKind};
use kaleidoscope::verify::{self, Scope};
use kaleidoscope::{Error, Kaleidoscope, Label};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The embedded tables could not be reproduced.
    BuildFailed = 3,
    Internal = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsList {
    Observables = 0,
    Triads = 1,
    States = 2,
    Squares = 3,
    Tetrads = 4,
    Lines = 5,
    MubSets = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsScope {
    All = 0,
    Observables = 1,
    Squares = 2,
    States = 3,
    Reye = 4,
    Apparitions = 5,
    Designs = 6,
    Transforms = 7,
}

/// Opaque handle owning every derived object.
pub struct KsKaleidoscope {
    inner: Kaleidoscope,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior NUL");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(KsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(KsStatus::Internal, e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(KsStatus::InvalidArgument, msg.into())
}

/// Runs `f`, turning errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> KsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            KsStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KsStatus::Internal
        }
    }
}

fn handle<'a>(k: *const KsKaleidoscope) -> Result<&'a Kaleidoscope, Fail> {
    // SAFETY: callers promise `k` is null or came from `ks_new`.
    unsafe { k.as_ref() }
        .map(|k| &k.inner)
        .ok_or_else(|| Fail(KsStatus::NullPointer, "null handle".into()))
}

fn square(n: u8) -> Result<SquareId, Fail> {
    SquareId::new(n).ok_or_else(|| invalid(format!("square {n} is not in 1..=10")))
}

fn optional_square(n: u8) -> Result<Option<SquareId>, Fail> {
    if n == 0 {
        Ok(None)
    } else {
        square(n).map(Some)
    }
}

/// Writes `json` to `*out` as a new C string.
///
/// # Safety
/// `out` must be null or valid for writes.
unsafe fn emit(out: *mut *mut c_char, json: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(KsStatus::NullPointer, "null output pointer".into()));
    }
    let c = CString::new(json).map_err(|_| Fail(KsStatus::Internal, "NUL in output".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

/// Builds a handle from the embedded tables.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_new(out: *mut *mut KsKaleidoscope) -> KsStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(KsStatus::NullPointer, "null output pointer".into()));
        }
        *out = ptr::null_mut();
        let inner = Kaleidoscope::new().map_err(|e| Fail(KsStatus::BuildFailed, e.to_string()))?;
        *out = Box::into_raw(Box::new(KsKaleidoscope { inner }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `k` must be null or a handle from [`ks_new`] not already freed.
#[no_mangle]
pub unsafe extern "C" fn ks_free(k: *mut KsKaleidoscope) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not already freed.
#[no_mangle]
pub unsafe extern "C" fn ks_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ks_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Number of states in the catalog (60).
///
/// # Safety
/// `k` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_state_count(k: *const KsKaleidoscope, out: *mut usize) -> KsStatus {
    guard(|| {
        let k = handle(k)?;
        if out.is_null() {
            return Err(Fail(KsStatus::NullPointer, "null output pointer".into()));
        }
        *out = k.catalog.len();
        Ok(())
    })
}

/// Canonical coordinates of state `label` as real and imaginary parts.
///
/// # Safety
/// `k` must be a live handle; `re` and `im` must each point to 4 writable
/// `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn ks_state_coords(k: *const KsKaleidoscope, label: u8, re: *mut i64, im: *mut i64) -> KsStatus {
    guard(|| {
        let k = handle(k)?;
        if re.is_null() || im.is_null() {
            return Err(Fail(KsStatus::NullPointer, "null output pointer".into()));
        }
        if label == 0 || label as usize > k.catalog.len() {
            return Err(invalid(format!("state {label} is not in 1..={}", k.catalog.len())));
        }
        for (i, z) in k.catalog.state(label).coords().iter().enumerate() {
            *re.add(i) = z.re;
            *im.add(i) = z.im;
        }
        Ok(())
    })
}

/// Records of one kind as a JSON array. `square` is 1..=10 to restrict
/// tetrads or lines, or 0 for none.
///
/// # Safety
/// `k` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_list_json(k: *const KsKaleidoscope, kind: KsList, square: u8, out: *mut *mut c_char) -> KsStatus {
    guard(|| {
        let k = handle(k)?;
        let kind = match kind {
            KsList::Observables => ListKind::Observables,
            KsList::Triads => ListKind::Triads,
            KsList::States => ListKind::States,
            KsList::Squares => ListKind::Squares,
            KsList::Tetrads => ListKind::Tetrads,
            KsList::Lines => ListKind::Lines,
            KsList::MubSets => ListKind::MubSets,
        };
        let recs = records::list(k, kind, optional_square(square)?)?;
        emit(out, to_json(&recs))
    })
}

/// Apparitions as a JSON array. `square` is 1..=10 or 0 for all; `kind`
/// is 18, 20 or 0 for both. With `check`, each record carries its parity
/// result and coloring count.
///
/// # Safety
/// `k` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_apparitions_json(
    k: *const KsKaleidoscope,
    square: u8,
    kind: u8,
    check: bool,
    out: *mut *mut c_char,
) -> KsStatus {
    guard(|| {
        let k = handle(k)?;
        let squares: Vec<SquareId> = optional_square(square)?.map_or_else(|| SquareId::all().collect(), |s| vec![s]);
        let kind = match kind {
            0 => None,
            18 => Some(Kind::Eighteen),
            20 => Some(Kind::Twenty),
            n => return Err(invalid(format!("kind {n} is not 0, 18 or 20"))),
        };
        emit(out, to_json(&records::apparitions(k, &squares, kind, check)?))
    })
}

/// Symplectic maps carrying square `from` onto `to` as a JSON array,
/// optionally with exact unitary lifts.
///
/// # Safety
/// `k` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_find_maps_json(
    k: *const KsKaleidoscope,
    from: u8,
    to: u8,
    lift: bool,
    out: *mut *mut c_char,
) -> KsStatus {
    guard(|| {
        let k = handle(k)?;
        emit(out, to_json(&records::maps(k, square(from)?, square(to)?, lift)?))
    })
}

/// Counts colorings of `states` in which every tetrad has exactly one
/// green member.
///
/// # Safety
/// `states` must point to `n_states` labels and `tetrads` to
/// `4 * n_tetrads` labels; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_color_search(
    states: *const u8,
    n_states: usize,
    tetrads: *const u8,
    n_tetrads: usize,
    out: *mut u64,
) -> KsStatus {
    guard(|| {
        if out.is_null() || (n_states > 0 && states.is_null()) || (n_tetrads > 0 && tetrads.is_null()) {
            return Err(Fail(KsStatus::NullPointer, "null pointer".into()));
        }
        if n_states > 64 {
            return Err(invalid(format!("{n_states} states; at most 64 supported")));
        }
        let states: &[Label] = if n_states == 0 { &[] } else { std::slice::from_raw_parts(states, n_states) };
        let flat: &[Label] = if n_tetrads == 0 { &[] } else { std::slice::from_raw_parts(tetrads, 4 * n_tetrads) };
        let mut ts = Vec::with_capacity(n_tetrads);
        for c in flat.chunks_exact(4) {
            if let Some(l) = c.iter().find(|l| !states.contains(l)) {
                return Err(invalid(format!("tetrad state {l} is not in the state list")));
            }
            let mut t = [c[0], c[1], c[2], c[3]];
            t.sort_unstable();
            ts.push(Tetrad(t));
        }
        let mut uniq = states.to_vec();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != states.len() {
            return Err(invalid("repeated state"));
        }
        *out = color_search(states, &ts);
        Ok(())
    })
}

/// Runs a verification suite on the embedded tables. `passed` receives
/// the overall result and `report` (if not null) the JSON report.
///
/// # Safety
/// `passed` must be valid for writes; `report` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ks_verify(scope: KsScope, passed: *mut bool, report: *mut *mut c_char) -> KsStatus {
    guard(|| {
        if passed.is_null() {
            return Err(Fail(KsStatus::NullPointer, "null output pointer".into()));
        }
        let scope = match scope {
            KsScope::All => Scope::All,
            KsScope::Observables => Scope::Observables,
            KsScope::Squares => Scope::Squares,
            KsScope::States => Scope::States,
            KsScope::Reye => Scope::Reye,
            KsScope::Apparitions => Scope::Apparitions,
            KsScope::Designs => Scope::Designs,
            KsScope::Transforms => Scope::Transforms,
        };
        let r = verify::run(scope, Golden::embedded()?);
        *passed = r.passed;
        if !report.is_null() {
            emit(report, to_json(&r))?;
        }
        Ok(())
    })
}
