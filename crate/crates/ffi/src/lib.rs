//! C ABI over `polycond`.
//!
//! Polynomials live behind the opaque `PcPolynomial` handle. Every fallible
//! call returns a `PcStatus`; on failure `pc_last_error` describes the cause
//! for the calling thread. Results are reported as `log10` values, with
//! `-inf` for an exact zero.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use polycond::conditioning::{condition_b, root_condition};
use polycond::pseudozeros::{indicator, WeightVector};
use polycond::scalar::set_default_precision;
use polycond::scenarios::NamedPolynomial;
use polycond::{ComplexScalar, Error, Polynomial, Precision, Scalar};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    Singular = 4,
    DegenerateWeights = 5,
    Precision = 6,
    Unsupported = 7,
    Internal = 8,
}

/// Opaque polynomial handle.
pub struct PcPolynomial {
    inner: Polynomial,
    sorted_roots: Vec<Scalar>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> PcStatus {
    match e {
        Error::Domain(_) => PcStatus::Domain,
        Error::Singularity(_) => PcStatus::Singular,
        Error::DegenerateWeights => PcStatus::DegenerateWeights,
        Error::Precision(_) => PcStatus::Precision,
        Error::UnsupportedBasis(_) => PcStatus::Unsupported,
        Error::Io(_) => PcStatus::Internal,
        _ => PcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PcStatus, String)>) -> PcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PcStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PcStatus::Internal
        }
    }
}

fn lift<T>(r: polycond::Result<T>) -> Result<T, (PcStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (PcStatus, String) {
    (PcStatus::NullPointer, format!("{what} is null"))
}

fn wrap(p: Polynomial) -> *mut PcPolynomial {
    let mut sorted_roots = p.roots().unwrap_or_default().to_vec();
    sorted_roots.sort_by(|a, b| a.partial_cmp(b).expect("real roots"));
    Box::into_raw(Box::new(PcPolynomial {
        inner: p,
        sorted_roots,
    }))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Sets the default working precision in decimal digits.
#[no_mangle]
pub extern "C" fn pc_set_precision(digits: u32) -> PcStatus {
    guard(|| {
        if digits == 0 {
            return Err((PcStatus::InvalidArgument, "precision must be positive".into()));
        }
        set_default_precision(Precision::digits(digits));
        Ok(())
    })
}

/// Builds the monic polynomial with roots `num[k] / den[k]`, expanded
/// exactly in the monomial basis.
///
/// # Safety
/// `num` and `den` must point to `n` readable values each; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_from_roots(
    num: *const i64,
    den: *const i64,
    n: usize,
    out: *mut *mut PcPolynomial,
) -> PcStatus {
    guard(|| {
        if num.is_null() || den.is_null() {
            return Err(null("root array"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: caller guarantees n readable elements behind each pointer.
        let (num, den) = unsafe { (std::slice::from_raw_parts(num, n), std::slice::from_raw_parts(den, n)) };
        if den.contains(&0) {
            return Err((PcStatus::InvalidArgument, "zero denominator".into()));
        }
        let roots: Vec<Scalar> = num.iter().zip(den).map(|(a, b)| Scalar::ratio(*a, *b)).collect();
        let p = lift(Polynomial::from_roots_monomial(&roots))?;
        // SAFETY: checked non-null above.
        unsafe { *out = wrap(p) };
        Ok(())
    })
}

/// Builds a named polynomial: `wilkinson<N>`, `c<N>` or `s<N>`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_named(name: *const c_char, out: *mut *mut PcPolynomial) -> PcStatus {
    guard(|| {
        if name.is_null() {
            return Err(null("name"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        // SAFETY: caller guarantees a NUL-terminated string.
        let name = unsafe { CStr::from_ptr(name) }
            .to_str()
            .map_err(|_| (PcStatus::InvalidArgument, "name is not UTF-8".to_string()))?;
        let named: NamedPolynomial = lift(name.parse())?;
        let p = lift(named.polynomial())?;
        // SAFETY: checked non-null above.
        unsafe { *out = wrap(p) };
        Ok(())
    })
}

/// `prod_{k=1}^n (x - k)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_wilkinson(n: usize, out: *mut *mut PcPolynomial) -> PcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let roots: Vec<Scalar> = (1..=n as i64).map(Scalar::from_int).collect();
        let p = lift(Polynomial::from_roots_monomial(&roots))?;
        // SAFETY: checked non-null above.
        unsafe { *out = wrap(p) };
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `p` must come from one of the constructors and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_free(p: *mut PcPolynomial) {
    if !p.is_null() {
        // SAFETY: caller guarantees p came from Box::into_raw in wrap().
        drop(unsafe { Box::from_raw(p) });
    }
}

/// Degree of the polynomial; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_degree(p: *const PcPolynomial) -> usize {
    // SAFETY: caller guarantees p is null or live.
    unsafe { p.as_ref() }.map_or(0, |p| p.inner.coeffs().len() - 1)
}

/// Root number `index` in ascending order, as a double.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_polynomial_root(p: *const PcPolynomial, index: usize, out: *mut f64) -> PcStatus {
    guard(|| {
        // SAFETY: caller guarantees p is null or live.
        let p = unsafe { p.as_ref() }.ok_or_else(|| null("polynomial"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = p.sorted_roots.get(index).ok_or_else(|| {
            (
                PcStatus::InvalidArgument,
                format!("root index {index} out of range 0..{}", p.sorted_roots.len()),
            )
        })?;
        // SAFETY: checked non-null above.
        unsafe { *out = r.to_f64() };
        Ok(())
    })
}

/// `log10 B(x)` at `x = num / den`, computed exactly.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_condition_b_log10(p: *const PcPolynomial, num: i64, den: i64, out: *mut f64) -> PcStatus {
    guard(|| {
        // SAFETY: caller guarantees p is null or live.
        let p = unsafe { p.as_ref() }.ok_or_else(|| null("polynomial"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if den == 0 {
            return Err((PcStatus::InvalidArgument, "zero denominator".into()));
        }
        let b = condition_b(&p.inner, &Scalar::ratio(num, den));
        // SAFETY: checked non-null above.
        unsafe { *out = b.log10_abs_or_neg_inf() };
        Ok(())
    })
}

/// `log10 A(r)` for root number `index` (ascending order), or
/// `log10 B(r)/|p'(r)|` when `absolute` is nonzero.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_root_condition_log10(
    p: *const PcPolynomial,
    index: usize,
    absolute: i32,
    out: *mut f64,
) -> PcStatus {
    guard(|| {
        // SAFETY: caller guarantees p is null or live.
        let p = unsafe { p.as_ref() }.ok_or_else(|| null("polynomial"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = p.sorted_roots.get(index).ok_or_else(|| {
            (
                PcStatus::InvalidArgument,
                format!("root index {index} out of range 0..{}", p.sorted_roots.len()),
            )
        })?;
        let rc = lift(root_condition(&p.inner, r))?;
        let v = if absolute != 0 { rc.absolute } else { rc.mixed };
        // SAFETY: checked non-null above.
        unsafe { *out = v.log10_abs_or_neg_inf() };
        Ok(())
    })
}

/// `log10 (|p(z)| / B(z))` with weights `|c_k|` at `z = re + i im`, using
/// `digits` decimal digits (0 for the default).
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pc_indicator_log10(
    p: *const PcPolynomial,
    re: f64,
    im: f64,
    digits: u32,
    out: *mut f64,
) -> PcStatus {
    guard(|| {
        // SAFETY: caller guarantees p is null or live.
        let p = unsafe { p.as_ref() }.ok_or_else(|| null("polynomial"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let part = |v: f64| {
            Scalar::from_f64_exact(v).ok_or_else(|| (PcStatus::InvalidArgument, format!("{v} is not finite")))
        };
        let z = ComplexScalar::new(part(re)?, part(im)?);
        let prec = (digits > 0).then(|| Precision::digits(digits));
        let w = lift(WeightVector::moduli(&p.inner))?;
        let v = lift(indicator(&p.inner, &z, &w, prec))?;
        // SAFETY: checked non-null above.
        unsafe { *out = v.log10_abs_or_neg_inf() };
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn pc_status_name(status: PcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PcStatus::Ok => c"ok",
        PcStatus::NullPointer => c"null pointer",
        PcStatus::InvalidArgument => c"invalid argument",
        PcStatus::Domain => c"domain error",
        PcStatus::Singular => c"singular",
        PcStatus::DegenerateWeights => c"degenerate weights",
        PcStatus::Precision => c"precision too low",
        PcStatus::Unsupported => c"unsupported",
        PcStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

