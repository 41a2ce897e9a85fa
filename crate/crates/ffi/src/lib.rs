//! C ABI for the harbourne library: opaque report handles, status codes,
//! and plain-struct accessors so other languages can bind without touching
//! Rust types. The header is generated by cbindgen into
//! `include/harbourne.h` at build time.
//!
//! Conventions: every function returns an [`HbStatus`]; results come back
//! through out-pointers. Rationals cross the boundary as reduced `num/den`
//! pairs with a positive denominator. Strings returned by the library must
//! be released with [`hb_string_free`], reports with [`hb_family_free`].

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use harbourne::families::{
    build, cross_check, overall_status, CheckStatus, CrossCheckOptions, FamilyName, FamilySpec,
    FamilyReport,
};
use harbourne::harbourne::{h_bruteforce, h_constant_general, SingularityProfile};
use harbourne::incidence::{verify_configuration, verify_design, DesignKind, KummerModel};
use harbourne::rational::Rat;
use harbourne::render::family_json;

/// Status codes returned by every API entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HbStatus {
    HbOk = 0,
    HbInvalidArgument = 1,
    HbVerificationFailed = 2,
    HbNullPointer = 3,
    HbOverflow = 4,
    HbEnumerationCap = 5,
}

/// Exact rational in lowest terms, `den > 0`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HbRational {
    pub num: i64,
    pub den: i64,
}

fn rat_out(r: &Rat, out: *mut HbRational) -> HbStatus {
    let (Ok(num), Ok(den)) = (i64::try_from(*r.numer()), i64::try_from(*r.denom())) else {
        return HbStatus::HbOverflow;
    };
    unsafe {
        *out = HbRational { num, den };
    }
    HbStatus::HbOk
}

/// Opaque handle to a built family report.
pub struct HbFamilyReport {
    report: FamilyReport,
}

unsafe fn parse_name(name: *const c_char) -> Result<FamilyName, HbStatus> {
    if name.is_null() {
        return Err(HbStatus::HbNullPointer);
    }
    let s = CStr::from_ptr(name)
        .to_str()
        .map_err(|_| HbStatus::HbInvalidArgument)?;
    s.parse().map_err(|_| HbStatus::HbInvalidArgument)
}

/// Builds a family report. `name` is one of the CLI family names
/// (`kummer16-6`, `gamma-k`, ...); `parameter` is n or k.
/// On success `*out` owns the report.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_family_build(
    name: *const c_char,
    parameter: i64,
    out: *mut *mut HbFamilyReport,
) -> HbStatus {
    if out.is_null() {
        return HbStatus::HbNullPointer;
    }
    *out = ptr::null_mut();
    let name = match parse_name(name) {
        Ok(n) => n,
        Err(s) => return s,
    };
    let Ok(spec) = FamilySpec::new(name, parameter) else {
        return HbStatus::HbInvalidArgument;
    };
    match build(&spec) {
        Ok(report) => {
            *out = Box::into_raw(Box::new(HbFamilyReport { report }));
            HbStatus::HbOk
        }
        Err(_) => HbStatus::HbInvalidArgument,
    }
}

/// Releases a report returned by [`hb_family_build`]. NULL is a no-op.
///
/// # Safety
/// `report` must come from [`hb_family_build`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hb_family_free(report: *mut HbFamilyReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// H(C, Sing C). Fails with `HbInvalidArgument` for smooth curves.
///
/// # Safety
/// `report` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hb_family_h_local(
    report: *const HbFamilyReport,
    out: *mut HbRational,
) -> HbStatus {
    let (Some(r), false) = (report.as_ref(), out.is_null()) else {
        return HbStatus::HbNullPointer;
    };
    match &r.report.h_report.h_local {
        Some(h) => rat_out(h, out),
        None => HbStatus::HbInvalidArgument,
    }
}

/// The global Harbourne constant H(C).
///
/// # Safety
/// `report` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hb_family_h_global(
    report: *const HbFamilyReport,
    out: *mut HbRational,
) -> HbStatus {
    let (Some(r), false) = (report.as_ref(), out.is_null()) else {
        return HbStatus::HbNullPointer;
    };
    rat_out(&r.report.h_report.h_global, out)
}

/// Runs the cross-consistency checks; `HbVerificationFailed` if any fails.
/// `level_cap` bounds the torsion level for enumeration (0 selects the
/// default cap of 12).
///
/// # Safety
/// `report` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_family_verify(
    report: *const HbFamilyReport,
    level_cap: u32,
) -> HbStatus {
    let Some(r) = report.as_ref() else {
        return HbStatus::HbNullPointer;
    };
    let opts = CrossCheckOptions {
        level_cap: if level_cap == 0 {
            harbourne::incidence::DEFAULT_LEVEL_CAP
        } else {
            level_cap
        },
        perturb_incidence: false,
    };
    match cross_check(&r.report, &opts) {
        Ok(checks) => match overall_status(&checks) {
            CheckStatus::Fail => HbStatus::HbVerificationFailed,
            _ => HbStatus::HbOk,
        },
        Err(_) => HbStatus::HbEnumerationCap,
    }
}

/// Serializes the report (with its build-time checks) as JSON. The returned
/// string must be released with [`hb_string_free`].
///
/// # Safety
/// `report` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn hb_family_to_json(
    report: *const HbFamilyReport,
    out: *mut *mut c_char,
) -> HbStatus {
    let (Some(r), false) = (report.as_ref(), out.is_null()) else {
        return HbStatus::HbNullPointer;
    };
    let Ok(value) = family_json(&r.report, &r.report.checks, 6) else {
        return HbStatus::HbOverflow;
    };
    let Ok(s) = serde_json::to_string_pretty(&value) else {
        return HbStatus::HbInvalidArgument;
    };
    match CString::new(s) {
        Ok(cs) => {
            *out = cs.into_raw();
            HbStatus::HbOk
        }
        Err(_) => HbStatus::HbInvalidArgument,
    }
}

/// Frees a string returned by this library. NULL is a no-op.
///
/// # Safety
/// `s` must originate from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn hb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Global Harbourne constant of an abstract profile: self-intersection
/// `csq_num/csq_den` and `mults_len` singular multiplicities.
///
/// # Safety
/// `mults` must point to `mults_len` readable u32 values (or be NULL with
/// `mults_len == 0`); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn hb_h_constant(
    csq_num: i64,
    csq_den: i64,
    mults: *const u32,
    mults_len: usize,
    out: *mut HbRational,
) -> HbStatus {
    if out.is_null() || (mults.is_null() && mults_len > 0) {
        return HbStatus::HbNullPointer;
    }
    if csq_den == 0 {
        return HbStatus::HbInvalidArgument;
    }
    let csq = Rat::new(csq_num as i128, csq_den as i128);
    let mults = if mults_len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(mults, mults_len)
    };
    let Ok(profile) = SingularityProfile::new(csq, mults, false, None) else {
        return HbStatus::HbInvalidArgument;
    };
    rat_out(&h_constant_general(&profile).h_global, out)
}

/// Brute-force oracle over subsets of the singular points plus at most
/// `b_cap` smooth and `c_cap` off-curve points.
///
/// # Safety
/// Same contract as [`hb_h_constant`].
#[no_mangle]
pub unsafe extern "C" fn hb_h_bruteforce(
    csq_num: i64,
    csq_den: i64,
    mults: *const u32,
    mults_len: usize,
    b_cap: u64,
    c_cap: u64,
    out: *mut HbRational,
) -> HbStatus {
    if out.is_null() || (mults.is_null() && mults_len > 0) {
        return HbStatus::HbNullPointer;
    }
    if csq_den == 0 {
        return HbStatus::HbInvalidArgument;
    }
    let csq = Rat::new(csq_num as i128, csq_den as i128);
    let mults = if mults_len == 0 {
        &[]
    } else {
        std::slice::from_raw_parts(mults, mults_len)
    };
    let Ok(profile) = SingularityProfile::new(csq, mults, false, None) else {
        return HbStatus::HbInvalidArgument;
    };
    match h_bruteforce(&profile, b_cap, c_cap) {
        Ok(v) => rat_out(&v, out),
        Err(_) => HbStatus::HbInvalidArgument,
    }
}

/// Verified parameters of one of the incidence designs.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct HbDesignParams {
    pub curves: u64,
    pub points_per_curve: u64,
    pub points: u64,
    pub curves_per_point: u64,
    pub lambda: u64,
    pub identity_holds: bool,
}

/// Verifies a design. `kind` is `"16-6"` or `"16-10"`.
///
/// # Safety
/// `kind` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hb_design_verify(
    kind: *const c_char,
    out: *mut HbDesignParams,
) -> HbStatus {
    if kind.is_null() || out.is_null() {
        return HbStatus::HbNullPointer;
    }
    let Ok(kind) = CStr::from_ptr(kind).to_str() else {
        return HbStatus::HbInvalidArgument;
    };
    let design_kind = match kind {
        "16-6" => DesignKind::SixteenSix,
        "16-10" => DesignKind::SixteenTen,
        _ => return HbStatus::HbInvalidArgument,
    };
    let model = KummerModel::new(design_kind);
    let curves = model.curves();
    let points = model.points();
    let Ok(params) = verify_configuration(&curves, &points, |c, p| model.incident(*c, *p)) else {
        return HbStatus::HbVerificationFailed;
    };
    let Ok(lambda) = verify_design(&curves, &points, |c, p| model.incident(*c, *p)) else {
        return HbStatus::HbVerificationFailed;
    };
    *out = HbDesignParams {
        curves: params.curves,
        points_per_curve: params.points_per_curve,
        points: params.points,
        curves_per_point: params.curves_per_point,
        lambda,
        identity_holds: params.curves_per_point * (params.points_per_curve - 1)
            == lambda * (params.curves - 1),
    };
    HbStatus::HbOk
}
