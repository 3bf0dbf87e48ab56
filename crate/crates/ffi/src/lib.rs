//! C ABI over `legmosaic`.
//!
//! Mosaics cross the boundary as opaque `LmMosaic` handles owned by the caller
//! and released with `lm_mosaic_free`. Every function returns an `LmStatus`;
//! results come back through out-pointers. Strings are written into
//! caller-provided buffers: the required size (including the NUL) is always
//! stored in `*needed`, and `LM_STATUS_BUFFER_TOO_SMALL` is returned when the
//! buffer cannot hold it. The message of the last failure on the calling
//! thread is available from `lm_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use legmosaic::bounds::{lower_bounds, InvariantPair};
use legmosaic::constructions::{build_unknot_plan, crab_bucket};
use legmosaic::counting::{count, Variant, DEFAULT_DIM_CAP};
use legmosaic::invariants::{invariants, invariants_with_rot, LegendrianInvariants};
use legmosaic::render::{render, Style};
use legmosaic::topology::homfly::HomflyEngine;
use legmosaic::topology::identify::identify_with;
use legmosaic::{parse_mosaic, Error, Mosaic};

/// Opaque mosaic handle.
pub struct LmMosaic {
    inner: Mosaic,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidEncoding = 3,
    NotSuitablyConnected = 4,
    NotAKnot = 5,
    NotAnUnknotPair = 6,
    Domain = 7,
    ResourceLimit = 8,
    ComplexityLimit = 9,
    ConstructionFailed = 10,
    Io = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LmStyle {
    Ascii = 0,
    Svg = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LmInvariants {
    pub tb: i64,
    pub rot: i64,
    pub writhe: i64,
    pub positive: u64,
    pub negative: u64,
    pub cusps: u64,
    pub up: u64,
    pub down: u64,
    pub components: usize,
}

/// Lower bounds on the mosaic number; -1 marks a bound that does not apply.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LmBounds {
    pub rot_bound: i64,
    pub tb_bound: i64,
    pub tb_weak_bound: i64,
    pub best_lower: i64,
    /// Unknot upper bound, or -1 when (tb, rot) is not an unknot pair.
    pub upper_unknot: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> LmStatus {
    match e {
        Error::LengthMismatch { .. } | Error::InvalidCharacter { .. } | Error::NotSquare(_) | Error::BadDimensions(_) => {
            LmStatus::InvalidEncoding
        }
        Error::NotSuitablyConnected => LmStatus::NotSuitablyConnected,
        Error::NotAKnot => LmStatus::NotAKnot,
        Error::NotAnUnknotPair { .. } => LmStatus::NotAnUnknotPair,
        Error::Domain(_) => LmStatus::Domain,
        Error::ResourceLimit(_) => LmStatus::ResourceLimit,
        Error::ComplexityLimit { .. } => LmStatus::ComplexityLimit,
        Error::OccupiedBarnTile(..) | Error::MoveHypothesisViolated(_) => LmStatus::ConstructionFailed,
        Error::Io(_) => LmStatus::Io,
    }
}

struct Fail(LmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> LmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            LmStatus::Ok
        }
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            LmStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail(LmStatus::NullPointer, "null pointer argument".into())
}

unsafe fn mosaic_ref<'a>(m: *const LmMosaic) -> Result<&'a Mosaic, Fail> {
    m.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

unsafe fn put_handle(out: *mut *mut LmMosaic, m: Mosaic) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(LmMosaic { inner: m })));
    Ok(())
}

/// Copies `s` plus a NUL into `buf`. `buf` may be null when `cap` is 0.
unsafe fn put_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), Fail> {
    let n = s.len() + 1;
    if !needed.is_null() {
        needed.write(n);
    }
    if cap < n || buf.is_null() {
        return Err(Fail(LmStatus::BufferTooSmall, format!("buffer of {cap} bytes, {n} needed")));
    }
    std::ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

fn convert(i: LegendrianInvariants) -> LmInvariants {
    LmInvariants {
        tb: i.tb,
        rot: i.rot,
        writhe: i.writhe,
        positive: i.positive,
        negative: i.negative,
        cusps: i.cusps,
        up: i.up,
        down: i.down,
        components: i.components,
    }
}

/// Short stable name of a status code, e.g. "not_suitably_connected".
#[no_mangle]
pub extern "C" fn lm_status_name(status: LmStatus) -> *const c_char {
    let s: &'static CStr = match status {
        LmStatus::Ok => c"ok",
        LmStatus::NullPointer => c"null_pointer",
        LmStatus::InvalidUtf8 => c"invalid_utf8",
        LmStatus::InvalidEncoding => c"invalid_encoding",
        LmStatus::NotSuitablyConnected => c"not_suitably_connected",
        LmStatus::NotAKnot => c"not_a_knot",
        LmStatus::NotAnUnknotPair => c"not_an_unknot_pair",
        LmStatus::Domain => c"domain_error",
        LmStatus::ResourceLimit => c"resource_limit",
        LmStatus::ComplexityLimit => c"complexity_limit",
        LmStatus::ConstructionFailed => c"construction_failed",
        LmStatus::Io => c"io_error",
        LmStatus::BufferTooSmall => c"buffer_too_small",
        LmStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Message of the last failed call on this thread; empty after a success.
///
/// # Safety
/// `buf` must be valid for `cap` bytes and `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lm_last_error_message(buf: *mut c_char, cap: usize, needed: *mut usize) -> LmStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    // Does not go through `guard`, which would clear the message.
    match put_str(&msg, buf, cap, needed) {
        Ok(()) => LmStatus::Ok,
        Err(Fail(s, _)) => s,
    }
}

/// Parses `<rows>x<cols>:<digits>` or bare square digits.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_parse(text: *const c_char, out: *mut *mut LmMosaic) -> LmStatus {
    guard(|| {
        if text.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| Fail(LmStatus::InvalidUtf8, e.to_string()))?;
        put_handle(out, parse_mosaic(s)?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_free(m: *mut LmMosaic) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle and the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_dims(m: *const LmMosaic, rows: *mut usize, cols: *mut usize) -> LmStatus {
    guard(|| {
        let m = mosaic_ref(m)?;
        put(rows, m.rows())?;
        put(cols, m.cols())
    })
}

/// Canonical `<rows>x<cols>:<digits>` text.
///
/// # Safety
/// `m` must be a live handle, `buf` valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_encode(
    m: *const LmMosaic,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> LmStatus {
    guard(|| put_str(&mosaic_ref(m)?.encode().to_string(), buf, cap, needed))
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_is_suitably_connected(m: *const LmMosaic, out: *mut bool) -> LmStatus {
    guard(|| put(out, mosaic_ref(m)?.is_suitably_connected()))
}

/// Invariants in the default orientation.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_invariants(m: *const LmMosaic, out: *mut LmInvariants) -> LmStatus {
    guard(|| put(out, convert(invariants(mosaic_ref(m)?)?)))
}

/// Name of the smooth knot type ("unknot", "3_1", "UNKNOWN", ...). A
/// `max_crossings` of 0 uses the library default.
///
/// # Safety
/// `m` must be a live handle, `buf` valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_knot_type(
    m: *const LmMosaic,
    max_crossings: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> LmStatus {
    guard(|| {
        let mut engine =
            if max_crossings == 0 { HomflyEngine::new() } else { HomflyEngine::with_max_crossings(max_crossings) };
        let id = identify_with(&mut engine, mosaic_ref(m)?)?;
        put_str(id.knot_type.name(), buf, cap, needed)
    })
}

/// # Safety
/// `m` must be a live handle, `buf` valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn lm_mosaic_render(
    m: *const LmMosaic,
    style: LmStyle,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> LmStatus {
    guard(|| {
        let style = match style {
            LmStyle::Ascii => Style::Ascii,
            LmStyle::Svg => Style::Svg,
        };
        put_str(&render(mosaic_ref(m)?, style), buf, cap, needed)
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_bounds(tb: i64, rot: i64, out: *mut LmBounds) -> LmStatus {
    guard(|| {
        let r = lower_bounds(InvariantPair { tb, rot });
        put(
            out,
            LmBounds {
                rot_bound: r.lower_thm22.unwrap_or(-1),
                tb_bound: r.lower_thm23.unwrap_or(-1),
                tb_weak_bound: r.lower_thm27ii.unwrap_or(-1),
                best_lower: r.best_lower,
                upper_unknot: r.upper_unknot.unwrap_or(-1),
            },
        )
    })
}

/// Crab bucket of size `n` (n ≥ 5).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lm_construct_crab(n: usize, out: *mut *mut LmMosaic) -> LmStatus {
    guard(|| put_handle(out, crab_bucket(n)?))
}

/// Unknot mosaic realizing (tb, rot). `reversed`, if not null, is set when the
/// requested rot holds for the reverse of the default orientation.
///
/// # Safety
/// `out` must be writable; `reversed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lm_construct_unknot(
    tb: i64,
    rot: i64,
    out: *mut *mut LmMosaic,
    reversed: *mut bool,
) -> LmStatus {
    guard(|| {
        let (built, _) = build_unknot_plan(tb, rot)?;
        let (_, rev) = invariants_with_rot(&built.mosaic, rot)?.ok_or_else(|| {
            Fail(LmStatus::ConstructionFailed, format!("constructed mosaic does not realize rot={rot}"))
        })?;
        if !reversed.is_null() {
            reversed.write(rev);
        }
        put_handle(out, built.mosaic)
    })
}

/// Number of suitably connected m×n mosaics as a decimal string.
///
/// # Safety
/// `buf` must be valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn lm_count(
    m: usize,
    n: usize,
    classical: bool,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> LmStatus {
    guard(|| {
        let variant = if classical { Variant::Classical } else { Variant::Legendrian };
        let c = count(m, n, variant, DEFAULT_DIM_CAP)?;
        put_str(&c.value.to_string(), buf, cap, needed)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn text(f: impl Fn(*mut c_char, usize, *mut usize) -> LmStatus) -> (LmStatus, String) {
        let mut needed = 0usize;
        let s = f(ptr::null_mut(), 0, &mut needed);
        if s != LmStatus::BufferTooSmall {
            return (s, String::new());
        }
        let mut buf = vec![0 as c_char; needed];
        let s = f(buf.as_mut_ptr(), buf.len(), &mut needed);
        let out = unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_string();
        (s, out)
    }

    #[test]
    fn round_trip_and_invariants() {
        unsafe {
            let mut m = ptr::null_mut();
            assert_eq!(lm_mosaic_parse(c"2134".as_ptr(), &mut m), LmStatus::Ok);
            let (s, enc) = text(|b, c, n| lm_mosaic_encode(m, b, c, n));
            assert_eq!((s, enc.as_str()), (LmStatus::Ok, "2x2:2134"));
            let mut inv = LmInvariants::default();
            assert_eq!(lm_mosaic_invariants(m, &mut inv), LmStatus::Ok);
            assert_eq!((inv.tb, inv.rot, inv.components), (-1, 0, 1));
            lm_mosaic_free(m);
        }
    }

    #[test]
    fn errors_carry_status_and_message() {
        unsafe {
            let mut m = ptr::null_mut();
            assert_eq!(lm_mosaic_parse(c"21x4".as_ptr(), &mut m), LmStatus::InvalidEncoding);
            assert!(m.is_null());
            let (_, msg) = text(|b, c, n| lm_last_error_message(b, c, n));
            assert!(msg.contains("invalid character"), "{msg}");
            assert_eq!(lm_mosaic_parse(ptr::null(), &mut m), LmStatus::NullPointer);
            let mut bounds = LmBounds::default();
            assert_eq!(lm_bounds(-2, 0, &mut bounds), LmStatus::Ok);
            assert_eq!(bounds.upper_unknot, -1);
            let name = CStr::from_ptr(lm_status_name(LmStatus::NotAKnot));
            assert_eq!(name.to_str().unwrap(), "not_a_knot");
        }
    }
}
