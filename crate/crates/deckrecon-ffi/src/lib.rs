//! C ABI over the deckrecon toolkit.
//!
//! Conventions: every fallible call returns a [`DrStatus`] and writes its
//! results through out-pointers. Heap objects are opaque handles created and
//! destroyed by this library; passing a handle to the matching `_free`
//! exactly once is the caller's responsibility. Buffer-filling calls take the
//! caller's capacity and report the required length, returning
//! `BUFFER_TOO_SMALL` when the capacity does not suffice.

use std::os::raw::c_char;

use deckrecon::bounds;
use deckrecon::deck::{Multiset, Subset};
use deckrecon::spectral::{
    distinguishing_number, fourier_indistinguishable, wht, Distinguishability,
};
use deckrecon::structure::{standard_pair, StandardParams};
use deckrecon::witness::build_witness;
use deckrecon::Error;

/// Status codes shared by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DrStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    InstanceTooLarge = 4,
    PreconditionViolated = 5,
    InvariantViolation = 6,
    VerificationFailure = 7,
    TranslatesInput = 8,
    Overflow = 9,
    BufferTooSmall = 10,
}

fn status_of(err: &Error) -> DrStatus {
    match err {
        Error::DimensionMismatch { .. } => DrStatus::DimensionMismatch,
        Error::InvalidArgument(_) => DrStatus::InvalidArgument,
        Error::InstanceTooLarge(_) => DrStatus::InstanceTooLarge,
        Error::Precondition(_) => DrStatus::PreconditionViolated,
        Error::InvariantViolation(_) => DrStatus::InvariantViolation,
        Error::VerificationFailure(_) => DrStatus::VerificationFailure,
        Error::TranslatesInput => DrStatus::TranslatesInput,
    }
}

/// Static name of a status code, e.g. for error messages.
#[no_mangle]
pub extern "C" fn dr_status_name(status: DrStatus) -> *const c_char {
    let name: &'static std::ffi::CStr = match status {
        DrStatus::Ok => c"ok",
        DrStatus::NullArgument => c"null argument",
        DrStatus::InvalidArgument => c"invalid argument",
        DrStatus::DimensionMismatch => c"dimension mismatch",
        DrStatus::InstanceTooLarge => c"instance too large",
        DrStatus::PreconditionViolated => c"precondition violated",
        DrStatus::InvariantViolation => c"invariant violation",
        DrStatus::VerificationFailure => c"verification failure",
        DrStatus::TranslatesInput => c"inputs are translates",
        DrStatus::BufferTooSmall => c"buffer too small",
        DrStatus::Overflow => c"value does not fit the output type",
    };
    name.as_ptr()
}

/// Opaque multiset over Z_2^n.
pub struct DrMultiset(Multiset);

/// Opaque subset of Z_2^n.
pub struct DrSubset(Subset);

/// Creates a multiset from a count vector of length `2^dim`.
///
/// # Safety
/// `counts` must point to `len` readable u64 values and `out` must be a valid
/// writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn dr_multiset_new(
    dim: u32,
    counts: *const u64,
    len: usize,
    out: *mut *mut DrMultiset,
) -> DrStatus {
    if counts.is_null() || out.is_null() {
        return DrStatus::NullArgument;
    }
    let counts = std::slice::from_raw_parts(counts, len).to_vec();
    match Multiset::new(dim, counts) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(DrMultiset(m)));
            DrStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `m` must be a handle from this library, not yet freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn dr_multiset_free(m: *mut DrMultiset) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the multiset, or 0 for a null handle.
///
/// # Safety
/// `m` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn dr_multiset_dim(m: *const DrMultiset) -> u32 {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Copies the count vector into `out` (capacity `cap`); writes the required
/// length to `len`.
///
/// # Safety
/// `m` must be a live handle; `out` must hold `cap` writable u64 slots; `len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_multiset_counts(
    m: *const DrMultiset,
    out: *mut u64,
    cap: usize,
    len: *mut usize,
) -> DrStatus {
    let Some(m) = m.as_ref() else {
        return DrStatus::NullArgument;
    };
    if out.is_null() || len.is_null() {
        return DrStatus::NullArgument;
    }
    let counts = m.0.counts();
    *len = counts.len();
    if cap < counts.len() {
        return DrStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(counts.as_ptr(), out, counts.len());
    DrStatus::Ok
}

/// Walsh-Hadamard spectrum of the multiset, written as i64 values of length
/// `2^dim`. Values outside the i64 range report `OVERFLOW`.
///
/// # Safety
/// `m` must be a live handle; `out` must hold `cap` writable i64 slots; `len`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_multiset_wht(
    m: *const DrMultiset,
    out: *mut i64,
    cap: usize,
    len: *mut usize,
) -> DrStatus {
    let Some(m) = m.as_ref() else {
        return DrStatus::NullArgument;
    };
    if out.is_null() || len.is_null() {
        return DrStatus::NullArgument;
    }
    let spectrum = wht(&m.0);
    *len = spectrum.values().len();
    if cap < spectrum.values().len() {
        return DrStatus::BufferTooSmall;
    }
    for (i, &v) in spectrum.values().iter().enumerate() {
        if v < i64::MIN as i128 || v > i64::MAX as i128 {
            return DrStatus::Overflow;
        }
        *out.add(i) = v as i64;
    }
    DrStatus::Ok
}

/// Least deck level separating the two multisets; writes -1 when they are
/// translates (distinguishing number infinity).
///
/// # Safety
/// `a` and `b` must be live handles; `out_level` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_distinguishing_number(
    a: *const DrMultiset,
    b: *const DrMultiset,
    out_level: *mut i32,
) -> DrStatus {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return DrStatus::NullArgument;
    };
    if out_level.is_null() {
        return DrStatus::NullArgument;
    }
    match distinguishing_number(&a.0, &b.0) {
        Ok(Distinguishability::Distinguishable { level, .. }) => {
            *out_level = level as i32;
            DrStatus::Ok
        }
        Ok(Distinguishability::Translates { .. }) => {
            *out_level = -1;
            DrStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The lexicographically least zero-sum witness at the separating level.
/// Fails with `TRANSLATES_INPUT` when no witness exists.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must hold `cap` writable u32
/// slots; `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_distinguishing_witness(
    a: *const DrMultiset,
    b: *const DrMultiset,
    out: *mut u32,
    cap: usize,
    len: *mut usize,
) -> DrStatus {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return DrStatus::NullArgument;
    };
    if out.is_null() || len.is_null() {
        return DrStatus::NullArgument;
    }
    match distinguishing_number(&a.0, &b.0) {
        Ok(Distinguishability::Distinguishable { witness, .. }) => {
            let elements = witness.elements();
            *len = elements.len();
            if cap < elements.len() {
                return DrStatus::BufferTooSmall;
            }
            for (i, e) in elements.iter().enumerate() {
                *out.add(i) = e.value();
            }
            DrStatus::Ok
        }
        Ok(Distinguishability::Translates { .. }) => DrStatus::TranslatesInput,
        Err(e) => status_of(&e),
    }
}

/// Exact k-indistinguishability of two multisets.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_fourier_indistinguishable(
    a: *const DrMultiset,
    b: *const DrMultiset,
    k: u32,
    out: *mut bool,
) -> DrStatus {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return DrStatus::NullArgument;
    };
    if out.is_null() {
        return DrStatus::NullArgument;
    }
    match fourier_indistinguishable(&a.0, &b.0, k) {
        Ok(v) => {
            *out = v;
            DrStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The reconstruction number of Z_2^n and the threshold exponent t used by
/// its integer form.
///
/// # Safety
/// `out_r` and `out_t` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_reconstruction_formula(
    n: u32,
    out_r: *mut u32,
    out_t: *mut u32,
) -> DrStatus {
    if out_r.is_null() || out_t.is_null() {
        return DrStatus::NullArgument;
    }
    if n == 0 {
        return DrStatus::InvalidArgument;
    }
    *out_t = bounds::tee(n);
    *out_r = bounds::reconstruction_number_formula(n);
    DrStatus::Ok
}

/// Whether `2^(n+1-k) >= k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_predicate(n: u32, k: u32, out: *mut bool) -> DrStatus {
    if out.is_null() {
        return DrStatus::NullArgument;
    }
    if n == 0 || k == 0 {
        return DrStatus::InvalidArgument;
    }
    *out = bounds::predicate(n, k);
    DrStatus::Ok
}

/// Builds the deterministic witness pair for (n, k) as two subset handles.
///
/// # Safety
/// `out_a` and `out_b` must be valid writable handle slots.
#[no_mangle]
pub unsafe extern "C" fn dr_build_witness(
    n: u32,
    k: u32,
    out_a: *mut *mut DrSubset,
    out_b: *mut *mut DrSubset,
) -> DrStatus {
    if out_a.is_null() || out_b.is_null() {
        return DrStatus::NullArgument;
    }
    match build_witness(n, k) {
        Ok((a, b)) => {
            *out_a = Box::into_raw(Box::new(DrSubset(a)));
            *out_b = Box::into_raw(Box::new(DrSubset(b)));
            DrStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `s` must be a handle from this library, not yet freed; null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn dr_subset_free(s: *mut DrSubset) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Dimension of the subset, or 0 for a null handle.
///
/// # Safety
/// `s` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn dr_subset_dim(s: *const DrSubset) -> u32 {
    s.as_ref().map_or(0, |s| s.0.dim())
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `s` must be a live handle from this library or null.
#[no_mangle]
pub unsafe extern "C" fn dr_subset_len(s: *const DrSubset) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the sorted elements into `out` (capacity `cap`); writes the
/// required length to `len`.
///
/// # Safety
/// `s` must be a live handle; `out` must hold `cap` writable u32 slots;
/// `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_subset_elements(
    s: *const DrSubset,
    out: *mut u32,
    cap: usize,
    len: *mut usize,
) -> DrStatus {
    let Some(s) = s.as_ref() else {
        return DrStatus::NullArgument;
    };
    if out.is_null() || len.is_null() {
        return DrStatus::NullArgument;
    }
    let members = s.0.members();
    *len = members.len();
    if cap < members.len() {
        return DrStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(members.as_ptr(), out, members.len());
    DrStatus::Ok
}

/// Builds the standard family pair `(f_(a,b), f_(b,a))` on Z_2^(k-1) from
/// `k - 1` positive weights.
///
/// # Safety
/// `coeffs` must point to `coeffs_len` readable u64 values; `out_f1` and
/// `out_f2` must be valid writable handle slots.
#[no_mangle]
pub unsafe extern "C" fn dr_standard_pair(
    k: u32,
    a: u64,
    b: u64,
    coeffs: *const u64,
    coeffs_len: usize,
    out_f1: *mut *mut DrMultiset,
    out_f2: *mut *mut DrMultiset,
) -> DrStatus {
    if coeffs.is_null() || out_f1.is_null() || out_f2.is_null() {
        return DrStatus::NullArgument;
    }
    let coeffs = std::slice::from_raw_parts(coeffs, coeffs_len).to_vec();
    match StandardParams::new(k, a, b, coeffs) {
        Ok(params) => {
            let (f1, f2) = standard_pair(&params);
            *out_f1 = Box::into_raw(Box::new(DrMultiset(f1)));
            *out_f2 = Box::into_raw(Box::new(DrMultiset(f2)));
            DrStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
