//! C interface. Handles are opaque and owned by the caller, who releases
//! them with the matching `_free`. Every function returns a [`TtStatus`];
//! results go through out-pointers, which are written only on success. The
//! message of the last failure on the calling thread is available from
//! [`tt_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twotorsion::experiments::{run_census, ExperimentConfig, Preset};
use twotorsion::hassewitt::{hw_matrix, two_torsion_by_manin};
use twotorsion::lattice::{Classification, LatticePolygon};
use twotorsion::laurent::LaurentPoly;
use twotorsion::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidPolygon = 4,
    Inadmissible = 5,
    Degenerate = 6,
    Field = 7,
    Cap = 8,
    Config = 9,
    BufferTooSmall = 10,
    Domain = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtClass {
    NoHalfCanonical = 0,
    Excluded = 1,
    Admissible = 2,
}

pub struct TtPolygon(LatticePolygon);

pub struct TtCurve(LaurentPoly);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn status_of(e: &Error) -> TtStatus {
    match e {
        Error::Parse(_) => TtStatus::Parse,
        Error::InvalidPolygon(_) | Error::LowDimensionalSupport => TtStatus::InvalidPolygon,
        Error::Inadmissible(_) => TtStatus::Inadmissible,
        Error::Degenerate(_) => TtStatus::Degenerate,
        Error::FieldDegree(_) | Error::Reducible { .. } | Error::ContextMismatch => TtStatus::Field,
        Error::EnumerationCap { .. } | Error::ZetaCap(_) | Error::Budget(_) => TtStatus::Cap,
        Error::Config(_) => TtStatus::Config,
        _ => TtStatus::Domain,
    }
}

fn fail(status: TtStatus, msg: impl Into<String>) -> TtStatus {
    LAST_ERROR.with(|m| *m.borrow_mut() = msg.into());
    status
}

/// Runs `body`, turning library errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), TtStatus>) -> TtStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TtStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(TtStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, TtStatus>;
}

impl<T> OrStatus<T> for Result<T, Error> {
    fn or_status(self) -> Result<T, TtStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, TtStatus> {
    if p.is_null() {
        return Err(fail(TtStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TtStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn ref_arg<'a, T>(p: *const T) -> Result<&'a T, TtStatus> {
    p.as_ref().ok_or_else(|| fail(TtStatus::NullPointer, "null handle"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), TtStatus> {
    if out.is_null() {
        return Err(fail(TtStatus::NullPointer, "null output pointer"));
    }
    out.write(v);
    Ok(())
}

/// Copies `s` and a terminating NUL into `buf` when it fits; `needed`
/// always receives the full size including the NUL.
unsafe fn put_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), TtStatus> {
    let n = s.len() + 1;
    if !needed.is_null() {
        needed.write(n);
    }
    if buf.is_null() || cap < n {
        return Err(fail(TtStatus::BufferTooSmall, format!("{n} bytes needed")));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Static, NUL-terminated name of a status code.
#[no_mangle]
pub extern "C" fn tt_status_name(status: TtStatus) -> *const c_char {
    let s: &'static CStr = match status {
        TtStatus::Ok => c"ok",
        TtStatus::NullPointer => c"null_pointer",
        TtStatus::InvalidUtf8 => c"invalid_utf8",
        TtStatus::Parse => c"parse",
        TtStatus::InvalidPolygon => c"invalid_polygon",
        TtStatus::Inadmissible => c"inadmissible",
        TtStatus::Degenerate => c"degenerate",
        TtStatus::Field => c"field",
        TtStatus::Cap => c"cap",
        TtStatus::Config => c"config",
        TtStatus::BufferTooSmall => c"buffer_too_small",
        TtStatus::Domain => c"domain",
        TtStatus::Panic => c"panic",
    };
    s.as_ptr()
}

/// Message of the last failure on this thread.
///
/// # Safety
/// `buf` must be valid for `cap` bytes or null; `needed` must be valid or null.
#[no_mangle]
pub unsafe extern "C" fn tt_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> TtStatus {
    let msg = LAST_ERROR.with(|m| m.borrow().clone());
    guard(|| put_str(&msg, buf, cap, needed))
}

/// Polygon from `"i,j;i,j;..."` vertex text.
///
/// # Safety
/// `vertices` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_polygon_from_vertices(vertices: *const c_char, out: *mut *mut TtPolygon) -> TtStatus {
    guard(|| {
        let p = LatticePolygon::parse_vertices(str_arg(vertices)?).or_status()?;
        put(out, Box::into_raw(Box::new(TtPolygon(p))))
    })
}

/// Polygon from a preset name: `S<i>`, `H<g>`, `E` or `T<d>`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_polygon_from_preset(name: *const c_char, out: *mut *mut TtPolygon) -> TtStatus {
    guard(|| {
        let preset: Preset = str_arg(name)?.parse().or_status()?;
        let p = preset.polygon().or_status()?;
        put(out, Box::into_raw(Box::new(TtPolygon(p))))
    })
}

/// # Safety
/// `p` must come from a `tt_polygon_` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tt_polygon_free(p: *mut TtPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be a live polygon handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_polygon_genus(p: *const TtPolygon, out: *mut usize) -> TtStatus {
    guard(|| put(out, ref_arg(p)?.0.genus()))
}

/// Number of interior lattice points solving every edge congruence.
///
/// # Safety
/// `p` must be a live polygon handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_polygon_rho(p: *const TtPolygon, out: *mut usize) -> TtStatus {
    guard(|| put(out, ref_arg(p)?.0.congruence_solutions().rho))
}

/// # Safety
/// `p` must be a live polygon handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_polygon_classify(p: *const TtPolygon, out: *mut TtClass) -> TtStatus {
    guard(|| {
        let c = match ref_arg(p)?.0.classify() {
            Classification::NoHalfCanonical => TtClass::NoHalfCanonical,
            Classification::Excluded => TtClass::Excluded,
            Classification::Admissible => TtClass::Admissible,
        };
        put(out, c)
    })
}

/// Curve from its JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_from_json(json: *const c_char, out: *mut *mut TtCurve) -> TtStatus {
    guard(|| {
        let v: serde_json::Value =
            serde_json::from_str(str_arg(json)?).map_err(|e| fail(TtStatus::Parse, e.to_string()))?;
        let f = LaurentPoly::from_json(&v).or_status()?;
        put(out, Box::into_raw(Box::new(TtCurve(f))))
    })
}

/// # Safety
/// `c` must come from [`tt_curve_from_json`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_free(c: *mut TtCurve) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Canonical JSON document of the curve.
///
/// # Safety
/// `c` must be a live curve handle; `buf` valid for `cap` bytes or null;
/// `needed` valid or null.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_to_json(c: *const TtCurve, buf: *mut c_char, cap: usize, needed: *mut usize) -> TtStatus {
    guard(|| put_str(&ref_arg(c)?.0.to_json().to_string(), buf, cap, needed))
}

/// Genus of the Newton polygon.
///
/// # Safety
/// `c` must be a live curve handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_genus(c: *const TtCurve, out: *mut usize) -> TtStatus {
    guard(|| put(out, ref_arg(c)?.0.newton_polygon().or_status()?.genus()))
}

/// # Safety
/// `c` must be a live curve handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_is_nondegenerate(c: *const TtCurve, out: *mut bool) -> TtStatus {
    guard(|| put(out, ref_arg(c)?.0.is_nondegenerate().or_status()?))
}

/// Whether the curve is non-degenerate on `delta` with a nonzero
/// coefficient at some solution of its edge congruences.
///
/// # Safety
/// `c` and `delta` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_in_s_delta(c: *const TtCurve, delta: *const TtPolygon, out: *mut bool) -> TtStatus {
    guard(|| put(out, ref_arg(c)?.0.in_s_delta(&ref_arg(delta)?.0).or_status()?))
}

/// Rank of the Hasse-Witt matrix. Fails with `Degenerate` on degenerate curves.
///
/// # Safety
/// `c` must be a live curve handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_hw_rank(c: *const TtCurve, out: *mut usize) -> TtStatus {
    guard(|| put(out, hw_matrix(&ref_arg(c)?.0).or_status()?.rank()))
}

/// 2-rank of the Jacobian.
///
/// # Safety
/// `c` must be a live curve handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_two_rank(c: *const TtCurve, out: *mut usize) -> TtStatus {
    guard(|| put(out, hw_matrix(&ref_arg(c)?.0).or_status()?.two_rank()))
}

/// Whether the Jacobian has a rational point of order 2.
///
/// # Safety
/// `c` must be a live curve handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_curve_has_2torsion(c: *const TtCurve, out: *mut bool) -> TtStatus {
    guard(|| put(out, two_torsion_by_manin(&ref_arg(c)?.0).or_status()?))
}

/// Census over GF(2^r) on a preset polygon with the default method:
/// `samples` draws from `seed`, reporting the non-degenerate draws and
/// those with rational 2-torsion.
///
/// # Safety
/// `preset` must be a NUL-terminated string; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn tt_census(
    preset: *const c_char,
    r: u32,
    samples: usize,
    seed: u64,
    nondegenerate: *mut usize,
    with_2torsion: *mut usize,
) -> TtStatus {
    guard(|| {
        let preset: Preset = str_arg(preset)?.parse().or_status()?;
        let cfg = ExperimentConfig::preset(preset, r, samples, seed).or_status()?;
        let rep = run_census(&cfg).or_status()?;
        if nondegenerate.is_null() || with_2torsion.is_null() {
            return Err(fail(TtStatus::NullPointer, "null output pointer"));
        }
        put(nondegenerate, rep.nondegenerate)?;
        put(with_2torsion, rep.with_2torsion)
    })
}
