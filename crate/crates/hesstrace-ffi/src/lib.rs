//! C ABI over the hesstrace core. Handles are opaque, every call returns a
//! status code, and results come back through out-parameters. Rationals
//! are returned as (numerator, denominator) pairs. Panics never cross the
//! boundary.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};

use num_traits::ToPrimitive;

use hesstrace::charsum::CycloContext;
use hesstrace::classnum::{hurwitz_h, hurwitz_h_star, ClassNumberValue};
use hesstrace::field::{make_field, FieldTable};
use hesstrace::hessian;
use hesstrace::moments::semicircle_cdf;
use hesstrace::Error;

/// Status codes for every exported call.
#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HtStatus {
    Ok = 0,
    /// Invalid field parameters (non-prime p, p < 5, bad degree, cap).
    BadField = 1,
    /// The field has no cubic character (q ≢ 1 mod 3).
    NoCubicCharacter = 2,
    /// An integer lift fell outside the Hasse window.
    LiftOutOfRange = 3,
    /// The requested fiber is singular (λ³ = 27).
    SingularCurve = 4,
    /// An argument is out of range for the operation.
    BadArgument = 5,
    /// A result does not fit the 64-bit out-parameters.
    Overflow = 6,
    /// A null pointer was passed where a value is required.
    NullPointer = 7,
    /// Unexpected internal failure.
    Internal = 8,
}

fn status_of(e: &Error) -> HtStatus {
    match e {
        Error::NonPrime(_)
        | Error::SmallCharacteristic(_)
        | Error::UnsupportedDegree(_)
        | Error::CapExceeded { .. } => HtStatus::BadField,
        Error::NoCubicCharacter(_) => HtStatus::NoCubicCharacter,
        Error::LiftOutOfRange { .. } => HtStatus::LiftOutOfRange,
        Error::SingularCurve => HtStatus::SingularCurve,
        Error::BadRange(_) | Error::BadDiscriminant(_) | Error::DomainError(_) => {
            HtStatus::BadArgument
        }
        _ => HtStatus::Internal,
    }
}

/// Opaque finite-field context. Create with ht_field_new, release with
/// ht_field_free.
pub struct HtField {
    ft: Arc<FieldTable>,
    ctx: CycloContext,
    values: OnceLock<Result<Vec<i64>, HtStatus>>,
}

impl HtField {
    fn lifted_values(&self) -> Result<&Vec<i64>, HtStatus> {
        self.values
            .get_or_init(|| self.ctx.hess_2f1_all().map_err(|e| status_of(&e)))
            .as_ref()
            .map_err(|e| *e)
    }
}

fn guarded(body: impl FnOnce() -> HtStatus) -> HtStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(HtStatus::Internal)
}

/// Build a field context for q = p^r. On success writes a handle the
/// caller must release with ht_field_free.
#[no_mangle]
pub unsafe extern "C" fn ht_field_new(p: u64, r: u32, out: *mut *mut HtField) -> HtStatus {
    if out.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| match make_field(p, r) {
        Ok(ft) => {
            let ft = Arc::new(ft);
            let handle = Box::new(HtField {
                ft: ft.clone(),
                ctx: CycloContext::new(ft),
                values: OnceLock::new(),
            });
            *out = Box::into_raw(handle);
            HtStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

#[no_mangle]
pub unsafe extern "C" fn ht_field_free(field: *mut HtField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Field order q (0 for a null handle).
#[no_mangle]
pub unsafe extern "C" fn ht_field_order(field: *const HtField) -> u32 {
    if field.is_null() {
        return 0;
    }
    (*field).ft.q()
}

/// The integer lift n(λ) = q·₂F₁(λ). Requires 3 | q−1.
#[no_mangle]
pub unsafe extern "C" fn ht_hess_2f1(
    field: *const HtField,
    lam: u32,
    out: *mut i64,
) -> HtStatus {
    if field.is_null() || out.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| {
        let f = &*field;
        if lam >= f.ft.q() {
            return HtStatus::BadArgument;
        }
        match f.lifted_values() {
            Ok(values) => {
                *out = values[lam as usize];
                HtStatus::Ok
            }
            Err(code) => code,
        }
    })
}

/// Fill buf with all q lifts n(0), …, n(q−1). len must be at least q.
#[no_mangle]
pub unsafe extern "C" fn ht_hess_2f1_all(
    field: *const HtField,
    buf: *mut i64,
    len: usize,
) -> HtStatus {
    if field.is_null() || buf.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| {
        let f = &*field;
        if len < f.ft.q() as usize {
            return HtStatus::BadArgument;
        }
        match f.lifted_values() {
            Ok(values) => {
                std::ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
                HtStatus::Ok
            }
            Err(code) => code,
        }
    })
}

/// Frobenius trace of the Hessian fiber x³+y³+1 = λxy.
#[no_mangle]
pub unsafe extern "C" fn ht_trace(field: *const HtField, lam: u32, out: *mut i64) -> HtStatus {
    if field.is_null() || out.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| {
        let f = &*field;
        if lam >= f.ft.q() {
            return HtStatus::BadArgument;
        }
        match hessian::trace(&f.ft, lam) {
            Ok(a) => {
                *out = a;
                HtStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

fn write_rational(x: ClassNumberValue, num: *mut i64, den: *mut i64) -> HtStatus {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(d)) => unsafe {
            *num = n;
            *den = d;
            HtStatus::Ok
        },
        _ => HtStatus::Overflow,
    }
}

/// Hurwitz class number H(d) as a (num, den) pair; 0/1 off the admissible
/// discriminants, −1/12 at d = 0.
#[no_mangle]
pub unsafe extern "C" fn ht_hurwitz_h(d: i64, num: *mut i64, den: *mut i64) -> HtStatus {
    if num.is_null() || den.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| write_rational(hurwitz_h(d), num, den))
}

/// Unit-weighted Hurwitz class number H*(d) as a (num, den) pair.
#[no_mangle]
pub unsafe extern "C" fn ht_hurwitz_h_star(d: i64, num: *mut i64, den: *mut i64) -> HtStatus {
    if num.is_null() || den.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| write_rational(hurwitz_h_star(d), num, den))
}

/// CDF of the semicircle law, defined on [−2, 2].
#[no_mangle]
pub unsafe extern "C" fn ht_semicircle_cdf(t: f64, out: *mut f64) -> HtStatus {
    if out.is_null() {
        return HtStatus::NullPointer;
    }
    guarded(|| match semicircle_cdf(t) {
        Ok(v) => {
            *out = v;
            HtStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ht_version() -> *const std::os::raw::c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const std::os::raw::c_char
}
