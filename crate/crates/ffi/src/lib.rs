//! C interface to the oriented-zcl engine.
//!
//! Every function returns an [`OzclStatus`]; results are written through out
//! pointers. Rings are opaque handles owned by the caller and released with
//! [`ozcl_ring_free`]. Strings returned by the library are released with
//! [`ozcl_string_free`]. Panics never cross the boundary.

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use oriented_zcl::gseries::g_recurrence;
use oriented_zcl::quotient::{build_quotient, QuotientRing};
use oriented_zcl::zcl::{expected_zcl, zcl_wn};
use oriented_zcl::AlgebraError;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OzclStatus {
    Ok = 0,
    NullPointer = 1,
    Unsupported = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    Inconsistent = 5,
    CapacityExceeded = 6,
    Internal = 7,
}

/// Opaque handle to a built ring `W_n`.
pub struct OzclRing {
    ring: QuotientRing,
}

/// The monomial `w2^b w3^c`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OzclMonomial {
    pub b: u32,
    pub c: u32,
}

/// Zero-divisor cup-length with one witness: `z(w2)^beta z(w3)^gamma` is nonzero
/// and its piece of left degree `r` contains `left (x) right`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OzclZcl {
    pub zcl: u32,
    pub beta: u32,
    pub gamma: u32,
    pub r: u64,
    pub left: OzclMonomial,
    pub right: OzclMonomial,
}

impl From<&AlgebraError> for OzclStatus {
    fn from(e: &AlgebraError) -> Self {
        match e {
            AlgebraError::Unsupported { .. } => OzclStatus::Unsupported,
            AlgebraError::OutOfRange(_) | AlgebraError::ZeroPolynomial => OzclStatus::OutOfRange,
            AlgebraError::Inconsistent(_) => OzclStatus::Inconsistent,
            AlgebraError::CapacityExceeded { .. } => OzclStatus::CapacityExceeded,
        }
    }
}

fn guard(f: impl FnOnce() -> OzclStatus) -> OzclStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(OzclStatus::Internal)
}

/// Static description of a status code; never null, never freed. Takes the raw
/// integer so that unknown codes are safe to pass.
#[no_mangle]
pub extern "C" fn ozcl_status_message(status: i32) -> *const c_char {
    let s: &'static [u8] = match status {
        0 => b"ok\0",
        1 => b"null pointer argument\0",
        2 => b"n is below the supported range\0",
        3 => b"argument out of range\0",
        4 => b"output buffer too small\0",
        5 => b"internal consistency check failed\0",
        6 => b"a degree holds too many basis monomials\0",
        7 => b"internal error\0",
        _ => b"unknown status\0",
    };
    s.as_ptr().cast()
}

/// Builds `W_n` (`n >= 6`) and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_ring_new(n: u32, out: *mut *mut OzclRing) -> OzclStatus {
    if out.is_null() {
        return OzclStatus::NullPointer;
    }
    *out = ptr::null_mut();
    guard(|| match build_quotient(n) {
        Ok(ring) => {
            *out = Box::into_raw(Box::new(OzclRing { ring }));
            OzclStatus::Ok
        }
        Err(e) => OzclStatus::from(&e),
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `ring` must be null or a handle from [`ozcl_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ozcl_ring_free(ring: *mut OzclRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// # Safety
/// `ring` must be a live handle or null; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_ring_n(ring: *const OzclRing, out: *mut u32) -> OzclStatus {
    let (Some(r), false) = (ring.as_ref(), out.is_null()) else {
        return OzclStatus::NullPointer;
    };
    *out = r.ring.n();
    OzclStatus::Ok
}

/// Heights of `w2` and `w3`.
///
/// # Safety
/// `ring` must be a live handle or null; out pointers must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_heights(ring: *const OzclRing, h2: *mut u32, h3: *mut u32) -> OzclStatus {
    let (Some(r), false, false) = (ring.as_ref(), h2.is_null(), h3.is_null()) else {
        return OzclStatus::NullPointer;
    };
    let h = r.ring.heights();
    *h2 = h.h2;
    *h3 = h.h3;
    OzclStatus::Ok
}

/// Dimension of `W_n` over `Z2`.
///
/// # Safety
/// `ring` must be a live handle or null; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_basis_dim(ring: *const OzclRing, out: *mut usize) -> OzclStatus {
    let (Some(r), false) = (ring.as_ref(), out.is_null()) else {
        return OzclStatus::NullPointer;
    };
    *out = r.ring.dim();
    OzclStatus::Ok
}

/// Whether `w2^b w3^c` is nonzero in `W_n`.
///
/// # Safety
/// `ring` must be a live handle or null; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_class_nonzero(ring: *const OzclRing, b: u32, c: u32, out: *mut bool) -> OzclStatus {
    let (Some(r), false) = (ring.as_ref(), out.is_null()) else {
        return OzclStatus::NullPointer;
    };
    *out = r.ring.class_nonzero(b, c);
    OzclStatus::Ok
}

/// Normal form of `w2^b w3^c`, written as basis monomials in decreasing lex order.
///
/// `*len` always receives the number of terms. If it exceeds `capacity`, nothing
/// is written to `terms` and `BUFFER_TOO_SMALL` is returned; `terms` may be null
/// when `capacity` is zero.
///
/// # Safety
/// `ring` must be a live handle or null; `terms` must be valid for `capacity`
/// writes; `len` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_nf_monomial(
    ring: *const OzclRing,
    b: u32,
    c: u32,
    terms: *mut OzclMonomial,
    capacity: usize,
    len: *mut usize,
) -> OzclStatus {
    let (Some(r), false) = (ring.as_ref(), len.is_null()) else {
        return OzclStatus::NullPointer;
    };
    let nf = r.ring.nf_monomial(b, c);
    *len = nf.len();
    if nf.len() > capacity {
        return OzclStatus::BufferTooSmall;
    }
    if nf.is_zero() {
        return OzclStatus::Ok;
    }
    if terms.is_null() {
        return OzclStatus::NullPointer;
    }
    for (i, m) in nf.terms().iter().enumerate() {
        *terms.add(i) = OzclMonomial { b: m.b, c: m.c };
    }
    OzclStatus::Ok
}

/// Zero-divisor cup-length of the ring, by search.
///
/// # Safety
/// `ring` must be a live handle or null; `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_zcl(ring: *const OzclRing, out: *mut OzclZcl) -> OzclStatus {
    let (Some(r), false) = (ring.as_ref(), out.is_null()) else {
        return OzclStatus::NullPointer;
    };
    guard(|| {
        let res = zcl_wn(&r.ring);
        let w = res.witness;
        *out = OzclZcl {
            zcl: res.zcl,
            beta: w.beta,
            gamma: w.gamma,
            r: w.r,
            left: OzclMonomial {
                b: w.left.b,
                c: w.left.c,
            },
            right: OzclMonomial {
                b: w.right.b,
                c: w.right.c,
            },
        };
        OzclStatus::Ok
    })
}

/// Tabulated (`6 <= n <= 14`) or closed-form (`n >= 15`) zero-divisor cup-length.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_zcl_closed_form(n: u32, out: *mut u32) -> OzclStatus {
    if out.is_null() {
        return OzclStatus::NullPointer;
    }
    match expected_zcl(n) {
        Some(z) => {
            *out = z;
            OzclStatus::Ok
        }
        None => OzclStatus::Unsupported,
    }
}

/// Canonical rendering of `g_r`, e.g. `"w2^3 + w3^2"`. Free with [`ozcl_string_free`].
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ozcl_g_render(r: u32, out: *mut *mut c_char) -> OzclStatus {
    if out.is_null() {
        return OzclStatus::NullPointer;
    }
    *out = ptr::null_mut();
    if r > 1 << 16 {
        return OzclStatus::OutOfRange;
    }
    guard(|| {
        let s = CString::new(g_recurrence(r as usize).to_string()).expect("no interior NUL");
        *out = s.into_raw();
        OzclStatus::Ok
    })
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ozcl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
