//! C ABI over `shtuka-core`.
//!
//! Every fallible function returns a [`ShtukaStatus`] and writes results
//! through out-pointers. On failure the message is available from
//! [`shtuka_last_error`] until the next call on the same thread.
//!
//! Handles are opaque and owned by the caller; free them with the matching
//! `*_free` function. Strings returned by the library are freed with
//! [`shtuka_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shtuka_core::anderson::{build_tower, nilpotence_order};
use shtuka_core::doc::{self, expr, Options};
use shtuka_core::drinfeld::presentation;
use shtuka_core::shtuka::{boundedness_check, FiniteShtuka, LocalShtuka};
use shtuka_core::zseries::ZMatrix;
use shtuka_core::{AMatrix, Error, FdAlgebra, FqField};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShtukaStatus {
    Ok = 0,
    /// A document ran, but at least one of its commands failed.
    CommandFailed = 1,
    /// A document could not be parsed or validated.
    InvalidDocument = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    InvalidArgument = 5,
    /// The computation itself failed (not a unit, not divisible, ...).
    Math = 6,
    /// A result does not fit the output type.
    Overflow = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShtukaFormat {
    Human = 0,
    Json = 1,
}

/// A finite local F_q-algebra R together with its nilpotent element zeta.
pub struct ShtukaRing(FdAlgebra);

pub struct ShtukaFinite(FiniteShtuka);

pub struct ShtukaLocal(LocalShtuka);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

type Failure = (ShtukaStatus, String);

fn set_error(msg: Option<String>) {
    let c = msg.map(|m| CString::new(m.replace('\0', " ")).expect("nul bytes removed"));
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn core_error(e: Error) -> Failure {
    let status = match e {
        Error::Invalid(_) | Error::InvalidField(_) | Error::InvalidAlgebra(_) | Error::DimensionMismatch(_) | Error::NotSquare => {
            ShtukaStatus::InvalidArgument
        }
        _ => ShtukaStatus::Math,
    };
    (status, e.to_string())
}

fn guard(f: impl FnOnce() -> Result<ShtukaStatus, Failure>) -> ShtukaStatus {
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| p.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "panic".into());
        Err((ShtukaStatus::Panic, msg))
    });
    match out {
        Ok(s) => {
            if s == ShtukaStatus::Ok {
                set_error(None);
            }
            s
        }
        Err((s, msg)) => {
            set_error(Some(msg));
            s
        }
    }
}

fn null(what: &str) -> Failure {
    (ShtukaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn string<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (ShtukaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Reads rank*rank row-major entry strings.
unsafe fn entries<'a>(p: *const *const c_char, rank: usize) -> Result<Vec<Vec<&'a str>>, Failure> {
    if p.is_null() && rank > 0 {
        return Err(null("entries"));
    }
    let n = rank.checked_mul(rank).ok_or((ShtukaStatus::Overflow, "rank too large".into()))?;
    let flat = if n == 0 { &[][..] } else { std::slice::from_raw_parts(p, n) };
    let flat = flat.iter().map(|&s| string(s, "entry")).collect::<Result<Vec<_>, _>>()?;
    Ok(flat.chunks(rank.max(1)).map(|c| c.to_vec()).collect())
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<ShtukaStatus, Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(v));
    Ok(ShtukaStatus::Ok)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| (ShtukaStatus::InvalidArgument, "output contains a nul byte".into()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn shtuka_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static, nul-terminated version string.
#[no_mangle]
pub extern "C" fn shtuka_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn shtuka_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// F_q itself, zeta = 0.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_ring_fq(q: u32, out: *mut *mut ShtukaRing) -> ShtukaStatus {
    guard(|| {
        let alg = FqField::new(q).and_then(|f| FdAlgebra::base_field(&f)).map_err(core_error)?;
        put(out, ShtukaRing(alg))
    })
}

/// F_{q^m}, zeta = 0.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_ring_extension(q: u32, m: usize, out: *mut *mut ShtukaRing) -> ShtukaStatus {
    guard(|| {
        let alg = FqField::new(q).and_then(|f| FdAlgebra::field_ext(&f, m)).map_err(core_error)?;
        put(out, ShtukaRing(alg))
    })
}

/// F_q[var]/(var^n), zeta = 0.
///
/// # Safety
/// `var` must be a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_ring_truncated(q: u32, n: usize, var: *const c_char, out: *mut *mut ShtukaRing) -> ShtukaStatus {
    guard(|| {
        let var = string(var, "var")?;
        let alg = FqField::new(q).and_then(|f| FdAlgebra::truncated(&f, n, var)).map_err(core_error)?;
        put(out, ShtukaRing(alg))
    })
}

/// A copy of `ring` with zeta set to the element `zeta`, e.g. "eps".
///
/// # Safety
/// `ring` must be a live handle, `zeta` a nul-terminated string and `out`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_ring_with_zeta(ring: *const ShtukaRing, zeta: *const c_char, out: *mut *mut ShtukaRing) -> ShtukaStatus {
    guard(|| {
        let alg = &deref(ring, "ring")?.0;
        let z = expr::parse_element(alg, string(zeta, "zeta")?).map_err(core_error)?;
        put(out, ShtukaRing(alg.with_zeta(z).map_err(core_error)?))
    })
}

/// Dimension of R over F_q, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn shtuka_ring_dim(ring: *const ShtukaRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.dim())
}

/// # Safety
/// `ring` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn shtuka_ring_free(ring: *mut ShtukaRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// A finite shtuka of the given rank. `entries` holds rank*rank row-major
/// elements of R as strings.
///
/// # Safety
/// `ring` must be a live handle, `entries` must point to rank*rank
/// nul-terminated strings and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_finite_new(
    ring: *const ShtukaRing,
    rank: usize,
    entries: *const *const c_char,
    out: *mut *mut ShtukaFinite,
) -> ShtukaStatus {
    guard(|| {
        let alg = &deref(ring, "ring")?.0;
        let rows = self::entries(entries, rank)?
            .into_iter()
            .map(|row| row.into_iter().map(|s| expr::parse_element(alg, s)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()
            .map_err(core_error)?;
        let sh = FiniteShtuka::new(alg, AMatrix::from_rows(alg, rows)).map_err(core_error)?;
        put(out, ShtukaFinite(sh))
    })
}

/// Order q^rank of the associated Drinfeld group scheme, certified by a
/// monomial basis of its coordinate ring.
///
/// # Safety
/// `sh` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_finite_order(sh: *const ShtukaFinite, out: *mut u64) -> ShtukaStatus {
    guard(|| {
        let sh = &deref(sh, "shtuka")?.0;
        let cert = presentation(sh).order().map_err(core_error)?;
        let v = u64::try_from(cert.order).map_err(|_| (ShtukaStatus::Overflow, format!("order {} exceeds 64 bits", cert.order)))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = v;
        Ok(ShtukaStatus::Ok)
    })
}

/// # Safety
/// `sh` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn shtuka_finite_free(sh: *mut ShtukaFinite) {
    if !sh.is_null() {
        drop(Box::from_raw(sh));
    }
}

/// A local shtuka (z - zeta)^twist * M over R[[z]], M given by rank*rank
/// row-major entries such as "z - eps", known to `precision` terms.
///
/// # Safety
/// `ring` must be a live handle, `entries` must point to rank*rank
/// nul-terminated strings and `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_local_new(
    ring: *const ShtukaRing,
    rank: usize,
    entries: *const *const c_char,
    twist: i64,
    precision: usize,
    out: *mut *mut ShtukaLocal,
) -> ShtukaStatus {
    guard(|| {
        let alg = &deref(ring, "ring")?.0;
        let rows = self::entries(entries, rank)?
            .into_iter()
            .map(|row| row.into_iter().map(|s| expr::parse_series(alg, s, precision)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()
            .map_err(core_error)?;
        let sh = LocalShtuka::new(alg, ZMatrix::from_rows(rows), twist).map_err(core_error)?;
        put(out, ShtukaLocal(sh))
    })
}

/// Whether the shtuka is bounded by (z - zeta)^d.
///
/// # Safety
/// `sh` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_local_is_bounded(sh: *const ShtukaLocal, d: usize, out: *mut bool) -> ShtukaStatus {
    guard(|| {
        let rep = boundedness_check(&deref(sh, "shtuka")?.0, d).map_err(core_error)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = rep.bounded;
        Ok(ShtukaStatus::Ok)
    })
}

/// Least d <= d_max for which the Verschiebung exists.
///
/// # Safety
/// `sh` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_local_nilpotence_order(sh: *const ShtukaLocal, d_max: usize, out: *mut usize) -> ShtukaStatus {
    guard(|| {
        let d = nilpotence_order(&deref(sh, "shtuka")?.0, d_max).map_err(core_error)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = d;
        Ok(ShtukaStatus::Ok)
    })
}

/// Orders of the truncation levels 1..=n_max of the associated local
/// Anderson module, written to `orders[0..n_max]`.
///
/// # Safety
/// `sh` must be a live handle and `orders` valid for `n_max` writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_local_tower_orders(sh: *const ShtukaLocal, n_max: usize, d_max: usize, orders: *mut u64) -> ShtukaStatus {
    guard(|| {
        let tower = build_tower(&deref(sh, "shtuka")?.0, n_max, d_max).map_err(core_error)?;
        if orders.is_null() && n_max > 0 {
            return Err(null("orders"));
        }
        for (i, &o) in tower.orders.iter().enumerate().take(n_max) {
            *orders.add(i) = u64::try_from(o).map_err(|_| (ShtukaStatus::Overflow, format!("order {o} exceeds 64 bits")))?;
        }
        Ok(ShtukaStatus::Ok)
    })
}

/// # Safety
/// `sh` must be null or a handle from this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn shtuka_local_free(sh: *mut ShtukaLocal) {
    if !sh.is_null() {
        drop(Box::from_raw(sh));
    }
}

/// Runs a JSON problem document and writes the report to `*report`.
///
/// Returns `Ok`, `CommandFailed` (the report is still written) or
/// `InvalidDocument` (no report; see [`shtuka_last_error`]).
///
/// # Safety
/// `document` must be a nul-terminated string and `report` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn shtuka_run_document(document: *const c_char, format: ShtukaFormat, report: *mut *mut c_char) -> ShtukaStatus {
    guard(|| {
        let text = string(document, "document")?;
        let invalid = |e: doc::DocError| (ShtukaStatus::InvalidDocument, e.to_string());
        let parsed = doc::parse(text).map_err(invalid)?;
        let rep = doc::run(&parsed, &Options::default()).map_err(invalid)?;
        let fmt = match format {
            ShtukaFormat::Human => doc::Format::Human,
            ShtukaFormat::Json => doc::Format::Json,
        };
        put_string(report, doc::emit(&rep, fmt))?;
        if rep.failed() {
            set_error(Some("a command failed".into()));
            Ok(ShtukaStatus::CommandFailed)
        } else {
            Ok(ShtukaStatus::Ok)
        }
    })
}
