use std::ffi::CStr;
use std::ptr;

use oriented_zcl_ffi::*;

struct Ring(*mut OzclRing);

impl Ring {
    fn new(n: u32) -> Ring {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { ozcl_ring_new(n, &mut p) }, OzclStatus::Ok);
        assert!(!p.is_null());
        Ring(p)
    }
}

impl Drop for Ring {
    fn drop(&mut self) {
        unsafe { ozcl_ring_free(self.0) }
    }
}

#[test]
fn ring_queries() {
    let r = Ring::new(24);
    let (mut n, mut h2, mut h3, mut dim) = (0u32, 0u32, 0u32, 0usize);
    unsafe {
        assert_eq!(ozcl_ring_n(r.0, &mut n), OzclStatus::Ok);
        assert_eq!(ozcl_heights(r.0, &mut h2, &mut h3), OzclStatus::Ok);
        assert_eq!(ozcl_basis_dim(r.0, &mut dim), OzclStatus::Ok);
    }
    assert_eq!((n, h2, h3), (24, 12, 7));
    assert!(dim > 0);
    let mut nz = false;
    unsafe {
        assert_eq!(ozcl_class_nonzero(r.0, 12, 0, &mut nz), OzclStatus::Ok);
        assert!(nz);
        assert_eq!(ozcl_class_nonzero(r.0, 13, 0, &mut nz), OzclStatus::Ok);
        assert!(!nz);
    }
}

#[test]
fn normal_form_buffer_protocol() {
    let r = Ring::new(22);
    let mut len = 99usize;
    unsafe {
        assert_eq!(
            ozcl_nf_monomial(r.0, 9, 2, ptr::null_mut(), 0, &mut len),
            OzclStatus::BufferTooSmall
        );
        assert_eq!(len, 1);
        let mut buf = [OzclMonomial::default(); 4];
        assert_eq!(
            ozcl_nf_monomial(r.0, 9, 2, buf.as_mut_ptr(), buf.len(), &mut len),
            OzclStatus::Ok
        );
        assert_eq!((len, buf[0]), (1, OzclMonomial { b: 3, c: 6 }));
        assert_eq!(
            ozcl_nf_monomial(r.0, 12, 1, ptr::null_mut(), 0, &mut len),
            OzclStatus::Ok
        );
        assert_eq!(len, 0);
    }
}

#[test]
fn zcl_search_and_closed_form() {
    for n in [6u32, 14, 21, 22, 30] {
        let r = Ring::new(n);
        let mut res = OzclZcl::default();
        let mut z = 0u32;
        unsafe {
            assert_eq!(ozcl_zcl(r.0, &mut res), OzclStatus::Ok);
            assert_eq!(ozcl_zcl_closed_form(n, &mut z), OzclStatus::Ok);
        }
        assert_eq!(res.zcl, z, "n={n}");
        assert_eq!(res.beta + res.gamma, res.zcl);
    }
    let mut z = 0u32;
    assert_eq!(unsafe { ozcl_zcl_closed_form(5, &mut z) }, OzclStatus::Unsupported);
}

#[test]
fn g_strings() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(ozcl_g_render(26, &mut s), OzclStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "w2^13 + w2*w3^8");
        ozcl_string_free(s);
        assert_eq!(ozcl_g_render(13, &mut s), OzclStatus::Ok);
        assert_eq!(CStr::from_ptr(s).to_str().unwrap(), "0");
        ozcl_string_free(s);
        ozcl_string_free(ptr::null_mut());
    }
}

#[test]
fn errors_and_nulls() {
    let mut p = ptr::null_mut();
    unsafe {
        assert_eq!(ozcl_ring_new(5, &mut p), OzclStatus::Unsupported);
        assert!(p.is_null());
        assert_eq!(ozcl_ring_new(9, ptr::null_mut()), OzclStatus::NullPointer);
        let mut h = 0u32;
        assert_eq!(ozcl_heights(ptr::null(), &mut h, &mut h), OzclStatus::NullPointer);
        assert_eq!(ozcl_zcl(ptr::null(), ptr::null_mut()), OzclStatus::NullPointer);
        ozcl_ring_free(ptr::null_mut());
    }
    for code in [0, 4, 7, 42, -1] {
        let msg = unsafe { CStr::from_ptr(ozcl_status_message(code)) };
        assert!(!msg.to_bytes().is_empty());
    }
}
