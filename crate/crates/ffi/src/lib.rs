//! C ABI over `torus_ech`.
//!
//! Every fallible call returns an [`EchStatus`] and writes its result
//! through an out-pointer. Objects are opaque handles created by a `*_new`
//! function and released with the matching `*_free`, which accepts NULL.

use std::ffi::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::ToPrimitive;
use torus_ech::arith::rational;
use torus_ech::orbit::{degree, enumerate_generators};
use torus_ech::spectral::GradedComplex;
use torus_ech::verify::verify_identities;
use torus_ech::{EchError, FibrationParams, IndexEngine, PerturbedValue, Rational, ReebCurrent, RotMode};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EchStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    RejectedInput = 3,
    OutOfRange = 4,
    /// The exact result does not fit the fixed-width output type.
    Overflow = 5,
    VerificationFailed = 6,
    Internal = 7,
}

impl From<&EchError> for EchStatus {
    fn from(e: &EchError) -> Self {
        match e {
            EchError::InvalidParameter(_) => EchStatus::InvalidParameter,
            EchError::OutOfRange { .. } => EchStatus::OutOfRange,
            EchError::Verification(_) => EchStatus::VerificationFailed,
            EchError::RejectedInput(_)
            | EchError::OutOfDomain { .. }
            | EchError::UndefinedOffset { .. }
            | EchError::Underivable { .. } => EchStatus::RejectedInput,
            EchError::InconsistentLedger { .. } => EchStatus::Internal,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EchRotMode {
    Exact = 0,
    Perturbed = 1,
}

impl From<EchRotMode> for RotMode {
    fn from(m: EchRotMode) -> Self {
        match m {
            EchRotMode::Exact => RotMode::Exact,
            EchRotMode::Perturbed => RotMode::Perturbed,
        }
    }
}

/// `b^b h^h e^e`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchCurrent {
    pub b: u64,
    pub h: u64,
    pub e: u64,
}

impl From<ReebCurrent> for EchCurrent {
    fn from(c: ReebCurrent) -> Self {
        EchCurrent { b: c.b, h: c.h, e: c.e }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchGenerator {
    pub current: EchCurrent,
    pub degree: u64,
    pub index: i64,
}

/// `num/den + delta·δ` with `den > 0` and the fraction in lowest terms.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EchPerturbed {
    pub num: i64,
    pub den: i64,
    pub delta: i64,
}

/// Opaque fibration `T(2,q)` with its index engine.
pub struct EchFibration {
    engine: IndexEngine,
}

/// Opaque list of generators in degree order.
pub struct EchGeneratorList {
    items: Vec<EchGenerator>,
}

/// Opaque graded complex in gradings `0, 2, …, 2·max_k`.
pub struct EchComplex {
    complex: GradedComplex,
}

fn guard(f: impl FnOnce() -> Result<(), EchStatus>) -> EchStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EchStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => EchStatus::Internal,
    }
}

fn status(e: EchError) -> EchStatus {
    EchStatus::from(&e)
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, EchStatus> {
    p.as_ref().ok_or(EchStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), EchStatus> {
    if out.is_null() {
        return Err(EchStatus::NullPointer);
    }
    out.write(value);
    Ok(())
}

fn to_ffi_fraction(r: &Rational) -> Result<(i64, i64), EchStatus> {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(EchStatus::Overflow),
    }
}

fn to_ffi_perturbed(p: &PerturbedValue) -> Result<EchPerturbed, EchStatus> {
    let (num, den) = to_ffi_fraction(&p.base)?;
    let delta = p.delta_coeff.to_i64().ok_or(EchStatus::Overflow)?;
    Ok(EchPerturbed { num, den, delta })
}

fn from_ffi_perturbed(p: &EchPerturbed) -> Result<PerturbedValue, EchStatus> {
    if p.den == 0 {
        return Err(EchStatus::RejectedInput);
    }
    Ok(PerturbedValue::new(rational(p.num, p.den), p.delta))
}

/// Static description of a status code. Never NULL, never freed.
#[no_mangle]
pub extern "C" fn ech_status_message(status: EchStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        EchStatus::Ok => b"ok\0",
        EchStatus::NullPointer => b"null pointer argument\0",
        EchStatus::InvalidParameter => b"q must be odd and at least 3\0",
        EchStatus::RejectedInput => b"input rejected\0",
        EchStatus::OutOfRange => b"index out of range\0",
        EchStatus::Overflow => b"result does not fit in 64 bits\0",
        EchStatus::VerificationFailed => b"verification failed\0",
        EchStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_fibration_new(q: i64, out: *mut *mut EchFibration) -> EchStatus {
    guard(|| {
        if out.is_null() {
            return Err(EchStatus::NullPointer);
        }
        let engine = FibrationParams::new(q).and_then(IndexEngine::new).map_err(status)?;
        write(out, Box::into_raw(Box::new(EchFibration { engine })))
    })
}

/// # Safety
/// `fib` must be NULL or a handle from [`ech_fibration_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ech_fibration_free(fib: *mut EchFibration) {
    if !fib.is_null() {
        drop(Box::from_raw(fib));
    }
}

/// # Safety
/// `fib` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_fibration_q(fib: *const EchFibration, out: *mut u32) -> EchStatus {
    guard(|| write(out, deref(fib)?.engine.params().q()))
}

/// ECH index of `b^b h^h e^e`. `Overflow` when it does not fit in `int64_t`.
///
/// # Safety
/// `fib` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_index(
    fib: *const EchFibration,
    current: EchCurrent,
    out: *mut i64,
) -> EchStatus {
    guard(|| {
        let eng = &deref(fib)?.engine;
        let c = ReebCurrent::new(current.b, current.h, current.e);
        let i = eng.ech_index(&c).to_i64().ok_or(EchStatus::Overflow)?;
        write(out, i)
    })
}

/// All admissible currents of degree `≤ max_degree`, ordered by degree and
/// then by binding multiplicity.
///
/// # Safety
/// `fib` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_generators_new(
    fib: *const EchFibration,
    max_degree: u64,
    out: *mut *mut EchGeneratorList,
) -> EchStatus {
    guard(|| {
        let eng = &deref(fib)?.engine;
        if out.is_null() {
            return Err(EchStatus::NullPointer);
        }
        let items = enumerate_generators(eng.params(), max_degree as u128)
            .into_iter()
            .map(|c| {
                Ok(EchGenerator {
                    current: c.into(),
                    degree: degree(eng.params(), &c).to_u64().ok_or(EchStatus::Overflow)?,
                    index: eng.ech_index(&c).to_i64().ok_or(EchStatus::Overflow)?,
                })
            })
            .collect::<Result<Vec<_>, EchStatus>>()?;
        write(out, Box::into_raw(Box::new(EchGeneratorList { items })))
    })
}

/// # Safety
/// `list` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_generators_len(list: *const EchGeneratorList, out: *mut usize) -> EchStatus {
    guard(|| write(out, deref(list)?.items.len()))
}

/// # Safety
/// `list` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_generators_get(
    list: *const EchGeneratorList,
    i: usize,
    out: *mut EchGenerator,
) -> EchStatus {
    guard(|| {
        let g = *deref(list)?.items.get(i).ok_or(EchStatus::OutOfRange)?;
        write(out, g)
    })
}

/// # Safety
/// `list` must be NULL or a handle from [`ech_generators_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ech_generators_free(list: *mut EchGeneratorList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Builds the complex through grading `2·max_k`, certifying the index
/// bijection on the way.
///
/// # Safety
/// `fib` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_complex_new(
    fib: *const EchFibration,
    max_k: usize,
    out: *mut *mut EchComplex,
) -> EchStatus {
    guard(|| {
        let eng = &deref(fib)?.engine;
        if out.is_null() {
            return Err(EchStatus::NullPointer);
        }
        let complex = GradedComplex::build(eng, max_k).map_err(status)?;
        write(out, Box::into_raw(Box::new(EchComplex { complex })))
    })
}

/// # Safety
/// `cx` must be NULL or a handle from [`ech_complex_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ech_complex_free(cx: *mut EchComplex) {
    if !cx.is_null() {
        drop(Box::from_raw(cx));
    }
}

/// The generator of grading `2k`.
///
/// # Safety
/// `cx` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_complex_generator(cx: *const EchComplex, k: usize, out: *mut EchGenerator) -> EchStatus {
    guard(|| {
        let g = deref(cx)?.complex.generator(k).map_err(status)?;
        write(
            out,
            EchGenerator {
                current: g.current.into(),
                degree: g.degree.to_u64().ok_or(EchStatus::Overflow)?,
                index: i64::try_from(g.grading).map_err(|_| EchStatus::Overflow)?,
            },
        )
    })
}

/// ECH capacity `c_k` as a reduced fraction.
///
/// # Safety
/// `cx` must be a live handle; `num` and `den` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_complex_capacity(
    cx: *const EchComplex,
    k: usize,
    num: *mut i64,
    den: *mut i64,
) -> EchStatus {
    guard(|| {
        if num.is_null() || den.is_null() {
            return Err(EchStatus::NullPointer);
        }
        let g = deref(cx)?.complex.generator(k).map_err(status)?;
        let (n, d) = to_ffi_fraction(&g.action)?;
        write(num, n)?;
        write(den, d)
    })
}

/// Smallest knot filtration level at which grading `2k` is nonzero.
///
/// # Safety
/// `cx` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_complex_knot_threshold(
    cx: *const EchComplex,
    k: usize,
    mode: EchRotMode,
    out: *mut EchPerturbed,
) -> EchStatus {
    guard(|| {
        let t = deref(cx)?.complex.knot_threshold(k, mode.into()).map_err(status)?;
        write(out, to_ffi_perturbed(&t)?)
    })
}

/// Rank (0 or 1) of knot-filtered ECH in `grading` at `level`.
///
/// # Safety
/// `cx` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_complex_knot_rank(
    cx: *const EchComplex,
    grading: u64,
    level: EchPerturbed,
    mode: EchRotMode,
    out: *mut u8,
) -> EchStatus {
    guard(|| {
        let level = from_ffi_perturbed(&level)?;
        let r = deref(cx)?
            .complex
            .knot_filtered_rank(grading, &level, mode.into())
            .map_err(status)?;
        write(out, r)
    })
}

/// Runs the adjacent-degree identity checks for `1 ≤ m ≤ max_m`. Writes the
/// number of failed checks; returns `VerificationFailed` when it is nonzero.
///
/// # Safety
/// `fib` must be a live handle; `failures` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ech_verify_identities(
    fib: *const EchFibration,
    max_m: u64,
    failures: *mut u64,
) -> EchStatus {
    guard(|| {
        let report = verify_identities(&deref(fib)?.engine, max_m);
        let n = report.failures.len() as u64;
        if !failures.is_null() {
            failures.write(n);
        }
        if n == 0 {
            Ok(())
        } else {
            Err(EchStatus::VerificationFailed)
        }
    })
}
