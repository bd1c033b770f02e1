//! C ABI over `gc-erasure`.
//!
//! Codes are opaque `GcCode` handles created by `gc_code_new` and released
//! with `gc_code_free`. Symbols cross the boundary as `uint16_t` values in
//! polynomial-basis form, arrays row-major, erasure masks as one byte per
//! cell (nonzero = erased). Every fallible call returns a `GcStatus`; the
//! message for the most recent failure on the calling thread is available
//! from `gc_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use gc::{ErasurePattern, FieldElement, FieldSpec};
use gc_erasure as gc;

/// Result codes. Values 0-3 match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    InvalidArgument = 1,
    Uncorrectable = 2,
    BudgetExceeded = 3,
    InvalidCode = 4,
    InvalidPlacement = 5,
    NullPointer = 6,
    Internal = 7,
}

/// Opaque code handle.
pub struct GcCode {
    inner: gc::GcCode,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: GcStatus, msg: impl Into<String>) -> GcStatus {
    let text = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
    status
}

fn from_error(e: gc::Error) -> GcStatus {
    use gc::Error as E;
    let status = match &e {
        E::Uncorrectable(_) => GcStatus::Uncorrectable,
        E::BudgetExceeded { .. } => GcStatus::BudgetExceeded,
        E::InvalidPlacement(_) => GcStatus::InvalidPlacement,
        E::UnsupportedWidth(_)
        | E::BadDegree { .. }
        | E::NonPrimitivePolynomial { .. }
        | E::NotNonDecreasing(_)
        | E::LengthExceedsField { .. }
        | E::ProfileTooTall { .. }
        | E::OutOfRange(_) => GcStatus::InvalidCode,
        _ => GcStatus::InvalidArgument,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> GcStatus) -> GcStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(GcStatus::Internal, "internal panic"))
}

fn symbols(field: &FieldSpec, raw: &[u16]) -> Result<Vec<FieldElement>, GcStatus> {
    raw.iter()
        .map(|&v| field.element(v as u32).map_err(from_error))
        .collect()
}

fn mask(code: &gc::GcCode, raw: &[u8]) -> Result<ErasurePattern, GcStatus> {
    let cells: Vec<usize> = (0..raw.len()).filter(|&i| raw[i] != 0).collect();
    ErasurePattern::from_cells(code.m(), code.n(), &cells).map_err(from_error)
}

/// Builds a code over GF(2^b) with rows of length `n` and per-row budgets
/// `u[0..u_len]` (non-decreasing). `poly = 0` selects the default primitive
/// polynomial for `b`. On success `*out` owns a new handle.
///
/// # Safety
/// `u` must point to `u_len` readable values and `out` to a writable
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn gc_code_new(
    n: usize,
    b: u32,
    poly: u32,
    u: *const usize,
    u_len: usize,
    out: *mut *mut GcCode,
) -> GcStatus {
    if u.is_null() || out.is_null() {
        return fail(GcStatus::NullPointer, "null argument");
    }
    let u = slice::from_raw_parts(u, u_len).to_vec();
    guard(|| {
        let field = if poly == 0 {
            FieldSpec::with_default_poly(b)
        } else {
            FieldSpec::new(b, poly)
        };
        match field.and_then(|f| gc::GcCode::from_u(n, &u, f)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(GcCode { inner }));
                GcStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `code` must come from `gc_code_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn gc_code_free(code: *mut GcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of array rows `m`; 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_code_rows(code: *const GcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.m())
}

/// Row length `n`; 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_code_cols(code: *const GcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.n())
}

/// Number of parity symbols `r`.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_code_parity_count(code: *const GcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.r())
}

/// Number of data symbols `k = mn - r`.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_code_data_count(code: *const GcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.k())
}

/// Minimum distance of the code.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_code_min_distance(code: *const GcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.min_distance_formula())
}

/// Encodes `k` data symbols into the `m*n` array `out`. `placement` is an
/// `m*n` parity mask, or null for the default (trailing cells, largest
/// budgets on top).
///
/// # Safety
/// Pointers must be valid for the stated lengths; `placement` may be null.
#[no_mangle]
pub unsafe extern "C" fn gc_encode(
    code: *const GcCode,
    data: *const u16,
    data_len: usize,
    placement: *const u8,
    out: *mut u16,
    out_len: usize,
) -> GcStatus {
    let Some(code) = code.as_ref() else {
        return fail(GcStatus::NullPointer, "null code");
    };
    if data.is_null() || out.is_null() {
        return fail(GcStatus::NullPointer, "null buffer");
    }
    let c = &code.inner;
    if data_len != c.k() || out_len != c.len() {
        return fail(
            GcStatus::InvalidArgument,
            format!("need {} data and {} output symbols", c.k(), c.len()),
        );
    }
    let data = slice::from_raw_parts(data, data_len);
    let placement = (!placement.is_null()).then(|| slice::from_raw_parts(placement, c.len()));
    let out = slice::from_raw_parts_mut(out, out_len);
    guard(|| {
        let mut run = || -> Result<(), GcStatus> {
            let data = symbols(c.field(), data)?;
            let placement = match placement {
                Some(p) => mask(c, p)?,
                None => gc::default_parity_placement(c),
            };
            let word = gc::encode(c, &data, &placement).map_err(from_error)?;
            for (o, s) in out.iter_mut().zip(word.symbols()) {
                *o = s.value();
            }
            Ok(())
        };
        run().err().unwrap_or(GcStatus::Ok)
    })
}

/// Decodes the `m*n` array `symbols_io` in place; cells with a nonzero byte in
/// `erasures` are recovered. With `verify`, the result is checked against
/// the full parity-check matrix. On failure `symbols_io` is left untouched.
///
/// # Safety
/// `symbols_io` and `erasures` must each hold `len` elements.
#[no_mangle]
pub unsafe extern "C" fn gc_decode(
    code: *const GcCode,
    symbols_io: *mut u16,
    erasures: *const u8,
    len: usize,
    verify: bool,
) -> GcStatus {
    let Some(code) = code.as_ref() else {
        return fail(GcStatus::NullPointer, "null code");
    };
    if symbols_io.is_null() || erasures.is_null() {
        return fail(GcStatus::NullPointer, "null buffer");
    }
    let c = &code.inner;
    if len != c.len() {
        return fail(
            GcStatus::InvalidArgument,
            format!("need {} symbols", c.len()),
        );
    }
    let io = slice::from_raw_parts_mut(symbols_io, len);
    let er = slice::from_raw_parts(erasures, len);
    guard(|| {
        let mut run = || -> Result<(), GcStatus> {
            let pattern = mask(c, er)?;
            // Erased cells may hold garbage; only known cells must be valid.
            let raw: Vec<u16> = io
                .iter()
                .zip(er)
                .map(|(&v, &e)| if e != 0 { 0 } else { v })
                .collect();
            let known = symbols(c.field(), &raw)?;
            let word = gc::ArrayWord::from_symbols(c.m(), c.n(), known)
                .and_then(|w| w.erase(&pattern))
                .map_err(from_error)?;
            let out = gc::decode(c, &word, verify).map_err(from_error)?;
            for (o, s) in io.iter_mut().zip(out.symbols()) {
                *o = s.value();
            }
            Ok(())
        };
        run().err().unwrap_or(GcStatus::Ok)
    })
}

/// Writes whether the `m*n` erasure mask fits the row budgets.
///
/// # Safety
/// `erasures` must hold `len` bytes and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_is_correctable(
    code: *const GcCode,
    erasures: *const u8,
    len: usize,
    out: *mut bool,
) -> GcStatus {
    let Some(code) = code.as_ref() else {
        return fail(GcStatus::NullPointer, "null code");
    };
    if erasures.is_null() || out.is_null() {
        return fail(GcStatus::NullPointer, "null buffer");
    }
    let c = &code.inner;
    if len != c.len() {
        return fail(
            GcStatus::InvalidArgument,
            format!("need {} mask bytes", c.len()),
        );
    }
    let er = slice::from_raw_parts(erasures, len);
    guard(
        || match mask(c, er).and_then(|p| c.correctable(&p).map_err(from_error)) {
            Ok(ok) => {
                *out = ok;
                GcStatus::Ok
            }
            Err(s) => s,
        },
    )
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gc_status_message(status: GcStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        GcStatus::Ok => b"ok\0",
        GcStatus::InvalidArgument => b"invalid argument\0",
        GcStatus::Uncorrectable => b"uncorrectable erasure pattern\0",
        GcStatus::BudgetExceeded => b"budget exceeded\0",
        GcStatus::InvalidCode => b"invalid code parameters\0",
        GcStatus::InvalidPlacement => b"invalid parity placement\0",
        GcStatus::NullPointer => b"null pointer\0",
        GcStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
