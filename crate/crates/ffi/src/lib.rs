//! C ABI over the `qcms` library.
//!
//! Objects cross the boundary as opaque handles created by `*_new` and
//! released by `*_free`. Every fallible call returns a [`QcmsStatus`]; on
//! failure `qcms_last_error_message` describes the error for the calling
//! thread. Strings handed out by the library are NUL-terminated UTF-8 and
//! must be released with `qcms_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use qcms::cache::{IdealCache, IdealStore};
use qcms::iso::poincare_series;
use qcms::jacobian::JacobianContext;
use qcms::presentation::{classical_triple, floer_triple, quantum_triple, PresentationTriple};
use qcms::quantum_n::{gw_via_formula, gw_via_ring, GWQuery, NRing};
use qcms::suites::{run_suite, Suite};
use qcms::{Error, Scalar};

pub const QCMS_RING_CLASSICAL: u32 = 0;
pub const QCMS_RING_FLOER: u32 = 1;
pub const QCMS_RING_QUANTUM: u32 = 2;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcmsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DegreeBalance = 3,
    GenusOutOfRange = 4,
    VerificationFailed = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A relation triple of the classical, Floer or quantum presentation.
pub struct QcmsPresentation {
    triple: PresentationTriple,
}

/// Ideal computations shared across verification calls, optionally backed
/// by an on-disk cache.
pub struct QcmsStore {
    store: IdealStore,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> QcmsStatus {
    match e {
        Error::DegreeBalance { .. } => QcmsStatus::DegreeBalance,
        Error::Genus(..) => QcmsStatus::GenusOutOfRange,
        Error::PsiIndex(_) | Error::OutOfRange(_) | Error::Parse(_) | Error::ParametersTooShort { .. } => {
            QcmsStatus::InvalidArgument
        }
        _ => QcmsStatus::Internal,
    }
}

/// Runs `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (QcmsStatus, String)>) -> QcmsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcmsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QcmsStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (QcmsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (QcmsStatus, String) {
    (QcmsStatus::NullPointer, format!("{what} is null"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior NUL").into_raw()
}

/// # Safety
/// `psi` must point to `n_psi` readable integers, or be null with `n_psi == 0`.
unsafe fn read_query(genus: u32, a: u32, b: u32, psi: *const u32, n_psi: usize) -> Result<GWQuery, (QcmsStatus, String)> {
    let indices: Vec<usize> = if n_psi == 0 {
        Vec::new()
    } else if psi.is_null() {
        return Err(null_err("psi"));
    } else {
        std::slice::from_raw_parts(psi, n_psi).iter().map(|&i| i as usize).collect()
    };
    GWQuery::new(genus, a, b, indices).map_err(lib_err)
}

fn real_string(v: &Scalar) -> String {
    v.to_coef_string()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next library call on the same thread.
#[no_mangle]
pub extern "C" fn qcms_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by the library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcms_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the triple of index `r` for a ring (`QCMS_RING_*`); `genus` is
/// used by the quantum ring only.
///
/// # Safety
/// `out` must be a valid pointer to write the handle to.
#[no_mangle]
pub unsafe extern "C" fn qcms_presentation_new(
    ring: u32,
    r: u32,
    genus: u32,
    out: *mut *mut QcmsPresentation,
) -> QcmsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let triple = match ring {
            QCMS_RING_CLASSICAL => classical_triple(r),
            QCMS_RING_FLOER => floer_triple(r),
            QCMS_RING_QUANTUM => quantum_triple(r, genus).map_err(lib_err)?,
            other => return Err((QcmsStatus::InvalidArgument, format!("unknown ring {other}"))),
        };
        *out = Box::into_raw(Box::new(QcmsPresentation { triple }));
        Ok(())
    })
}

/// # Safety
/// `p` must come from `qcms_presentation_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcms_presentation_free(p: *mut QcmsPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// JSON form of a triple; release with `qcms_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcms_presentation_to_json(p: *const QcmsPresentation, out: *mut *mut c_char) -> QcmsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null_err("presentation"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = into_c_string(p.triple.to_json().to_string());
        Ok(())
    })
}

/// Text form such as "(α, β - 8, γ)"; release with `qcms_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcms_presentation_to_text(p: *const QcmsPresentation, out: *mut *mut c_char) -> QcmsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(|| null_err("presentation"))?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = into_c_string(p.triple.to_string());
        Ok(())
    })
}

/// Gromov–Witten value by the closed formula, as "p/q".
///
/// # Safety
/// `psi` must hold `n_psi` integers (or be null when `n_psi` is 0); `out`
/// must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcms_gw_formula(
    genus: u32,
    alpha: u32,
    beta: u32,
    psi: *const u32,
    n_psi: usize,
    out: *mut *mut c_char,
) -> QcmsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let q = read_query(genus, alpha, beta, psi, n_psi)?;
        let ctx = JacobianContext::new(genus).map_err(lib_err)?;
        let v = gw_via_formula(&ctx, &q).map_err(lib_err)?;
        *out = into_c_string(real_string(&v));
        Ok(())
    })
}

/// Gromov–Witten value by multiplication in QH*(N), as "p/q". Refused at
/// genus 2 with β > 0.
///
/// # Safety
/// As for `qcms_gw_formula`.
#[no_mangle]
pub unsafe extern "C" fn qcms_gw_ring(
    genus: u32,
    alpha: u32,
    beta: u32,
    psi: *const u32,
    n_psi: usize,
    out: *mut *mut c_char,
) -> QcmsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let q = read_query(genus, alpha, beta, psi, n_psi)?;
        let ring = NRing::new(genus).map_err(lib_err)?;
        let v = gw_via_ring(&ring, &q).map_err(lib_err)?;
        *out = into_c_string(real_string(&v));
        Ok(())
    })
}

/// Creates an ideal store; `cache_dir` may be null to disable disk caching.
///
/// # Safety
/// `cache_dir` must be null or a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcms_store_new(cache_dir: *const c_char, out: *mut *mut QcmsStore) -> QcmsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null_err("out"));
        }
        let cache = if cache_dir.is_null() {
            None
        } else {
            let dir = CStr::from_ptr(cache_dir)
                .to_str()
                .map_err(|_| (QcmsStatus::InvalidArgument, "cache_dir is not UTF-8".to_string()))?;
            Some(IdealCache::open(PathBuf::from(dir)).map_err(lib_err)?)
        };
        *out = Box::into_raw(Box::new(QcmsStore { store: IdealStore::new(cache) }));
        Ok(())
    })
}

/// # Safety
/// `s` must come from `qcms_store_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn qcms_store_free(s: *mut QcmsStore) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Runs a verification suite and writes its JSON report to `out`. Returns
/// `QCMS_STATUS_VERIFICATION_FAILED` (with the report still written) when
/// any check fails.
///
/// # Safety
/// `store` must be a live handle, `suite` a NUL-terminated string and `out`
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcms_verify(
    store: *const QcmsStore,
    suite: *const c_char,
    genus: u32,
    out: *mut *mut c_char,
) -> QcmsStatus {
    let mut failed = false;
    let status = guard(|| {
        let store = store.as_ref().ok_or_else(|| null_err("store"))?;
        if suite.is_null() {
            return Err(null_err("suite"));
        }
        if out.is_null() {
            return Err(null_err("out"));
        }
        let name = CStr::from_ptr(suite)
            .to_str()
            .map_err(|_| (QcmsStatus::InvalidArgument, "suite is not UTF-8".to_string()))?;
        let suite: Suite = name.parse().map_err(lib_err)?;
        let report = run_suite(suite, genus, &store.store).map_err(lib_err)?;
        failed = !report.all_pass();
        *out = into_c_string(report.to_json().to_string());
        Ok(())
    });
    if status == QcmsStatus::Ok && failed {
        set_error("one or more checks failed");
        QcmsStatus::VerificationFailed
    } else {
        status
    }
}

/// Writes the Poincaré series coefficients (index = degree) into `coeffs`.
/// `len` receives the number of coefficients even when the buffer is too
/// small, so a call with `capacity` 0 queries the size.
///
/// # Safety
/// `coeffs` must hold `capacity` writable integers (or be null when
/// `capacity` is 0); `len` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qcms_poincare(genus: u32, coeffs: *mut u64, capacity: usize, len: *mut usize) -> QcmsStatus {
    guard(|| {
        if len.is_null() {
            return Err(null_err("len"));
        }
        let series = poincare_series(genus).map_err(lib_err)?;
        *len = series.len();
        if capacity < series.len() {
            return Err((QcmsStatus::BufferTooSmall, format!("need {} coefficients", series.len())));
        }
        if coeffs.is_null() {
            return Err(null_err("coeffs"));
        }
        std::slice::from_raw_parts_mut(coeffs, series.len()).copy_from_slice(&series);
        Ok(())
    })
}
