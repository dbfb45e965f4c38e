//! C ABI over g2charts.
//!
//! Charts and Hurwitz systems cross the boundary as opaque handles. Every
//! call returns a [`G2Status`]; on failure the message is kept per thread and
//! can be read with [`g2_last_error`]. Strings returned to the caller are
//! released with [`g2_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use g2charts::chart::{apply_move, basic_chart, from_hurwitz, to_hurwitz, validate, BasicChart, Chart, MoveInstance};
use g2charts::hurwitz::{basic_system, BasicName, FiberCounts, HurwitzSystem};
use g2charts::mcg::{is_identity, Budget, Verdict, Word};
use g2charts::stabilize::normal_form;

/// Opaque chart handle.
pub struct G2Chart(Chart);

/// Opaque Hurwitz system handle.
pub struct G2System(HurwitzSystem);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Status {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidChart = 4,
    MoveRefused = 5,
    ConversionFailed = 6,
    UnknownName = 7,
    NotRealizable = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct G2Counts {
    pub n_i_plus: u64,
    pub n_i_minus: u64,
    pub n_ii_plus: u64,
    pub n_ii_minus: u64,
}

impl From<FiberCounts> for G2Counts {
    fn from(c: FiberCounts) -> Self {
        G2Counts { n_i_plus: c.n_i_plus, n_i_minus: c.n_i_minus, n_ii_plus: c.n_ii_plus, n_ii_minus: c.n_ii_minus }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct G2NormalForm {
    pub energy: i64,
    pub epsilon: u8,
    pub a: i64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    /// -1 when no bound is known.
    pub m0: i64,
}

/// Result of an identity check.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum G2Verdict {
    No = 0,
    Yes = 1,
    Unknown = 2,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl ToString) {
    let text = CString::new(msg.to_string().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn failed(status: G2Status, msg: impl ToString) -> G2Status {
    set_error(msg);
    status
}

/// # Safety
/// `s` must be null or a valid nul-terminated string.
unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, G2Status> {
    if s.is_null() {
        return Err(failed(G2Status::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| failed(G2Status::InvalidUtf8, e))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn g2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a chart in the text format.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_parse(src: *const c_char, out: *mut *mut G2Chart) -> G2Status {
    if out.is_null() {
        return failed(G2Status::NullArgument, "null output pointer");
    }
    let s = try_status!(text(src));
    match s.parse::<Chart>() {
        Ok(c) => {
            *out = Box::into_raw(Box::new(G2Chart(c)));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::Parse, e),
    }
}

/// One of N0, N1, N2, F1, F2.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_basic(name: *const c_char, out: *mut *mut G2Chart) -> G2Status {
    if out.is_null() {
        return failed(G2Status::NullArgument, "null output pointer");
    }
    let s = try_status!(text(name));
    match s.parse::<BasicChart>() {
        Ok(b) => {
            *out = Box::into_raw(Box::new(G2Chart(basic_chart(b))));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::UnknownName, e),
    }
}

/// # Safety
/// `chart` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_free(chart: *mut G2Chart) {
    if !chart.is_null() {
        drop(Box::from_raw(chart));
    }
}

/// Chart in the text format; free with [`g2_string_free`]. Null on a null handle.
///
/// # Safety
/// `chart` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_print(chart: *const G2Chart) -> *mut c_char {
    match chart.as_ref() {
        Some(c) => into_c_string(c.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// `Ok` when the chart satisfies every chart condition, `InvalidChart`
/// otherwise (the report is the error message).
///
/// # Safety
/// `chart` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_validate(chart: *const G2Chart) -> G2Status {
    let Some(c) = chart.as_ref() else { return failed(G2Status::NullArgument, "null chart") };
    let report = validate(&c.0);
    if report.is_valid() {
        G2Status::Ok
    } else {
        failed(G2Status::InvalidChart, report)
    }
}

/// # Safety
/// `chart` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_counts(chart: *const G2Chart, out: *mut G2Counts) -> G2Status {
    let (Some(c), false) = (chart.as_ref(), out.is_null()) else {
        return failed(G2Status::NullArgument, "null argument");
    };
    match c.0.black_counts() {
        Ok(counts) => {
            *out = counts.into();
            G2Status::Ok
        }
        Err(e) => failed(G2Status::InvalidChart, e),
    }
}

/// Disjoint union of two charts, as a new handle.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_product(a: *const G2Chart, b: *const G2Chart, out: *mut *mut G2Chart) -> G2Status {
    let (Some(a), Some(b), false) = (a.as_ref(), b.as_ref(), out.is_null()) else {
        return failed(G2Status::NullArgument, "null argument");
    };
    *out = Box::into_raw(Box::new(G2Chart(a.0.product(&b.0))));
    G2Status::Ok
}

/// Applies a move written `<entry> <site>`, e.g. `hoop-remove edge e4`; the
/// input handle is left unchanged.
///
/// # Safety
/// `chart` must be a live handle, `mv` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_apply_move(
    chart: *const G2Chart,
    mv: *const c_char,
    out: *mut *mut G2Chart,
) -> G2Status {
    let (Some(c), false) = (chart.as_ref(), out.is_null()) else {
        return failed(G2Status::NullArgument, "null argument");
    };
    let s = try_status!(text(mv));
    let m: MoveInstance = match s.parse() {
        Ok(m) => m,
        Err(e) => return failed(G2Status::Parse, e),
    };
    match apply_move(&c.0, &m) {
        Ok(next) => {
            *out = Box::into_raw(Box::new(G2Chart(next)));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::MoveRefused, e),
    }
}

/// # Safety
/// `chart` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_chart_to_system(chart: *const G2Chart, out: *mut *mut G2System) -> G2Status {
    let (Some(c), false) = (chart.as_ref(), out.is_null()) else {
        return failed(G2Status::NullArgument, "null argument");
    };
    match to_hurwitz(&c.0) {
        Ok(h) => {
            *out = Box::into_raw(Box::new(G2System(h)));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::ConversionFailed, e),
    }
}

/// Parses a system, one factor per line `conjugator | core | sign`.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_system_parse(src: *const c_char, out: *mut *mut G2System) -> G2Status {
    if out.is_null() {
        return failed(G2Status::NullArgument, "null output pointer");
    }
    let s = try_status!(text(src));
    match s.parse::<HurwitzSystem>() {
        Ok(h) => {
            *out = Box::into_raw(Box::new(G2System(h)));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::Parse, e),
    }
}

/// One of W0, W1, W2, W1p, W2p.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_system_basic(name: *const c_char, out: *mut *mut G2System) -> G2Status {
    if out.is_null() {
        return failed(G2Status::NullArgument, "null output pointer");
    }
    let s = try_status!(text(name));
    match s.parse::<BasicName>() {
        Ok(b) => {
            *out = Box::into_raw(Box::new(G2System(basic_system(b))));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::UnknownName, e),
    }
}

/// # Safety
/// `system` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2_system_free(system: *mut G2System) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// # Safety
/// `system` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn g2_system_print(system: *const G2System) -> *mut c_char {
    match system.as_ref() {
        Some(h) => into_c_string(h.0.to_string()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_system_counts(system: *const G2System, out: *mut G2Counts) -> G2Status {
    let (Some(h), false) = (system.as_ref(), out.is_null()) else {
        return failed(G2Status::NullArgument, "null argument");
    };
    *out = h.0.counts().into();
    G2Status::Ok
}

/// # Safety
/// `system` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_system_to_chart(system: *const G2System, out: *mut *mut G2Chart) -> G2Status {
    let (Some(h), false) = (system.as_ref(), out.is_null()) else {
        return failed(G2Status::NullArgument, "null argument");
    };
    match from_hurwitz(&h.0, Budget::from_env()) {
        Ok(c) => {
            *out = Box::into_raw(Box::new(G2Chart(c)));
            G2Status::Ok
        }
        Err(e) => failed(G2Status::ConversionFailed, e),
    }
}

/// Decides whether a word such as `z1 z2 s' z3` is trivial, with the default
/// budget (or `G2CHARTS_BUDGET`).
///
/// # Safety
/// `word` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_word_is_identity(word: *const c_char, out: *mut G2Verdict) -> G2Status {
    if out.is_null() {
        return failed(G2Status::NullArgument, "null output pointer");
    }
    let s = try_status!(text(word));
    let w: Word = match s.parse() {
        Ok(w) => w,
        Err(e) => return failed(G2Status::Parse, e),
    };
    *out = match is_identity(&w, Budget::from_env()) {
        Verdict::Yes => G2Verdict::Yes,
        Verdict::No => G2Verdict::No,
        Verdict::Unknown(_) => G2Verdict::Unknown,
    };
    G2Status::Ok
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn g2_normal_form(counts: G2Counts, out: *mut G2NormalForm) -> G2Status {
    if out.is_null() {
        return failed(G2Status::NullArgument, "null output pointer");
    }
    let fc = FiberCounts::new(counts.n_i_plus, counts.n_i_minus, counts.n_ii_plus, counts.n_ii_minus);
    match normal_form(fc) {
        Ok(nf) => {
            *out = G2NormalForm {
                energy: nf.energy,
                epsilon: nf.epsilon,
                a: nf.a,
                b: nf.b,
                c: nf.c,
                d: nf.d,
                e: nf.e,
                m0: nf.m0.map_or(-1, |m| m as i64),
            };
            G2Status::Ok
        }
        Err(e) => failed(G2Status::NotRealizable, e),
    }
}
