//! C ABI for `loadcomp`.
//!
//! Catalogs and profiles cross the boundary as opaque handles created by
//! `lc_*_parse` / `lc_*_builtin` and released with the matching `lc_*_free`.
//! Every fallible call returns an [`LcStatus`]; on failure
//! [`lc_last_error`] holds a message for the calling thread. Strings returned
//! through `char **` out-parameters are owned by the caller and released with
//! [`lc_string_free`]. Seasons are `LC_SEASON_WINTER` / `LC_SEASON_SUMMER`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chrono::NaiveDate;

use loadcomp::report::{self, Precision};
use loadcomp::{
    composition_from_attribution, composition_shares, daily_extrema, device_daily_energy,
    disaggregate, household_device_energy, monthly_growth, normalize, parse_catalog, parse_profile,
    peak_average_ratio, scale_to_measured, seasonal_table, serialize_catalog, synth_household_day,
    Catalog, CatalogFormat, Granularity, LoadProfile, OccupancyCurve, Season, HOURS,
};

pub const LC_SEASON_WINTER: u32 = 0;
pub const LC_SEASON_SUMMER: u32 = 1;

pub const LC_FORMAT_CSV: u32 = 0;
pub const LC_FORMAT_JSON: u32 = 1;

pub const LC_GRANULARITY_INFER: u32 = 0;
pub const LC_GRANULARITY_HOURLY: u32 = 1;
pub const LC_GRANULARITY_MONTHLY_AVERAGE: u32 = 2;
pub const LC_GRANULARITY_MONTHLY_PEAK: u32 = 3;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    /// A required pointer was NULL.
    NullArgument = 1,
    /// An integer argument is outside its documented range.
    InvalidArgument = 2,
    /// Input bytes could not be parsed.
    Parse = 3,
    /// Parsed input broke a model invariant.
    Validation = 4,
    /// The computation has no defined result for this input.
    Computation = 5,
    /// A caller buffer is too small.
    BufferTooSmall = 6,
    /// Internal panic; the library state is unchanged.
    Panic = 99,
}

/// Opaque appliance catalog.
pub struct LcCatalog(Catalog);

/// Opaque load profile.
pub struct LcProfile(LoadProfile);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(LcStatus, String);

impl Failure {
    fn new(status: LcStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure::new(LcStatus::NullArgument, format!("{what} is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            LcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            LcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(p: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null("data"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

fn season(s: u32) -> Result<Season, Failure> {
    match s {
        LC_SEASON_WINTER => Ok(Season::Winter),
        LC_SEASON_SUMMER => Ok(Season::Summer),
        other => Err(Failure::new(
            LcStatus::InvalidArgument,
            format!("unknown season {other}"),
        )),
    }
}

fn catalog_format(f: u32) -> Result<CatalogFormat, Failure> {
    match f {
        LC_FORMAT_CSV => Ok(CatalogFormat::Csv),
        LC_FORMAT_JSON => Ok(CatalogFormat::Json),
        other => Err(Failure::new(
            LcStatus::InvalidArgument,
            format!("unknown format {other}"),
        )),
    }
}

fn spec_at(cat: &LcCatalog, index: usize) -> Result<&loadcomp::ApplianceSpec, Failure> {
    cat.0.specs().get(index).ok_or_else(|| {
        Failure::new(
            LcStatus::InvalidArgument,
            format!("index {index} out of range (catalog has {})", cat.0.len()),
        )
    })
}

unsafe fn occupancy(weights: *const f64) -> Result<OccupancyCurve, Failure> {
    if weights.is_null() {
        return Ok(OccupancyCurve::default());
    }
    let w = std::slice::from_raw_parts(weights, HOURS);
    OccupancyCurve::new(w).map_err(|e| Failure::new(LcStatus::Validation, e))
}

unsafe fn out_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(LcStatus::Computation, e))?;
    write_out(out, c.into_raw(), "out")
}

/// Message describing the last failed call on this thread, or "".
/// The pointer stays valid until the next `lc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn lc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from an `lc_*` out-parameter and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The built-in 15-activity household catalog.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn lc_catalog_builtin(out: *mut *mut LcCatalog) -> LcStatus {
    guard(|| {
        let handle = Box::into_raw(Box::new(LcCatalog(loadcomp::builtin_paper_catalog())));
        write_out(out, handle, "out").inspect_err(|_| drop(Box::from_raw(handle)))
    })
}

/// Parses and validates a catalog from `len` bytes in `format`.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_catalog_parse(
    data: *const u8,
    len: usize,
    format: u32,
    out: *mut *mut LcCatalog,
) -> LcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let format = catalog_format(format)?;
        let catalog = parse_catalog(bytes(data, len)?, format).map_err(|e| {
            use loadcomp::CatalogError::*;
            let status = match e {
                Invalid { .. } | DuplicateActivity { .. } | NoEntries => LcStatus::Validation,
                _ => LcStatus::Parse,
            };
            Failure::new(status, e)
        })?;
        out.write(Box::into_raw(Box::new(LcCatalog(catalog))));
        Ok(())
    })
}

/// Releases a catalog. NULL is ignored.
///
/// # Safety
/// `cat` must come from `lc_catalog_*` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lc_catalog_free(cat: *mut LcCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

/// Number of activities, 0 for NULL.
///
/// # Safety
/// `cat` must be NULL or a live catalog handle.
#[no_mangle]
pub unsafe extern "C" fn lc_catalog_len(cat: *const LcCatalog) -> usize {
    cat.as_ref().map_or(0, |c| c.0.len())
}

/// Name of activity `index` as a new string.
///
/// # Safety
/// `cat` must be a live catalog handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_catalog_activity_name(
    cat: *const LcCatalog,
    index: usize,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        out_string(out, spec_at(cat, index)?.activity.clone())
    })
}

/// Catalog in the CSV or JSON file schema, as a new string.
///
/// # Safety
/// `cat` must be a live catalog handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_catalog_serialize(
    cat: *const LcCatalog,
    format: u32,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        let text = serialize_catalog(&cat.0, catalog_format(format)?)
            .map_err(|e| Failure::new(LcStatus::Computation, e))?;
        out_string(out, text)
    })
}

/// Wh/day of one unit of activity `index`.
///
/// # Safety
/// `cat` must be a live catalog handle; `out_wh` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_device_daily_energy(
    cat: *const LcCatalog,
    index: usize,
    season_id: u32,
    out_wh: *mut f64,
) -> LcStatus {
    guard(|| {
        let spec = spec_at(deref(cat, "catalog")?, index)?;
        write_out(
            out_wh,
            device_daily_energy(spec, season(season_id)?),
            "out_wh",
        )
    })
}

/// Wh/day of all units of activity `index` in a household.
///
/// # Safety
/// `cat` must be a live catalog handle; `out_wh` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_household_energy(
    cat: *const LcCatalog,
    index: usize,
    season_id: u32,
    out_wh: *mut f64,
) -> LcStatus {
    guard(|| {
        let spec = spec_at(deref(cat, "catalog")?, index)?;
        write_out(
            out_wh,
            household_device_energy(spec, season(season_id)?),
            "out_wh",
        )
    })
}

/// Daily (Wh) and monthly (kWh) household totals.
///
/// # Safety
/// `cat` must be a live catalog handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_seasonal_totals(
    cat: *const LcCatalog,
    season_id: u32,
    days_per_month: u32,
    out_daily_wh: *mut f64,
    out_monthly_kwh: *mut f64,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        let table = seasonal_table(&cat.0, season(season_id)?, days_per_month)
            .map_err(|e| Failure::new(LcStatus::InvalidArgument, e))?;
        write_out(out_daily_wh, table.daily_total_wh, "out_daily_wh")?;
        write_out(out_monthly_kwh, table.monthly_total_kwh, "out_monthly_kwh")
    })
}

/// Percentage share of activity `index` in the season's household energy.
///
/// # Safety
/// `cat` must be a live catalog handle; `out_pct` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_composition_share(
    cat: *const LcCatalog,
    season_id: u32,
    index: usize,
    out_pct: *mut f64,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        let name = &spec_at(cat, index)?.activity;
        let report = composition_shares(&cat.0, season(season_id)?)
            .map_err(|e| Failure::new(LcStatus::Computation, e))?;
        write_out(out_pct, report.shares[name], "out_pct")
    })
}

/// Seasonal table and shares as JSON (full precision), as a new string.
///
/// # Safety
/// `cat` must be a live catalog handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_composition_json(
    cat: *const LcCatalog,
    season_id: u32,
    days_per_month: u32,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        let table = seasonal_table(&cat.0, season(season_id)?, days_per_month)
            .map_err(|e| Failure::new(LcStatus::InvalidArgument, e))?;
        let shares = table
            .composition()
            .map_err(|e| Failure::new(LcStatus::Computation, e))?;
        let doc = report::composition_doc(&[(table, shares)], Precision::Full);
        out_string(out, report::to_json(&doc))
    })
}

/// Per-hour household energy (Wh) of a synthesised day, written to `out_total_wh[24]`.
/// `occupancy` is NULL for the default curve or points to 24 weights.
///
/// # Safety
/// `cat` must be a live catalog handle; `occupancy` NULL or 24 readable
/// doubles; `out_total_wh` must have room for 24 doubles.
#[no_mangle]
pub unsafe extern "C" fn lc_synth_household_day(
    cat: *const LcCatalog,
    season_id: u32,
    occupancy_weights: *const f64,
    out_total_wh: *mut f64,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        if out_total_wh.is_null() {
            return Err(null("out_total_wh"));
        }
        let day = synth_household_day(&cat.0, season(season_id)?, &occupancy(occupancy_weights)?);
        ptr::copy_nonoverlapping(day.total_wh.as_ptr(), out_total_wh, HOURS);
        Ok(())
    })
}

/// Scale factor (measured / bottom-up) and relative gap for a measured monthly energy.
///
/// # Safety
/// `cat` must be a live catalog handle; out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_reconcile_scale(
    cat: *const LcCatalog,
    season_id: u32,
    days_per_month: u32,
    measured_kwh_month: f64,
    out_scale: *mut f64,
    out_gap: *mut f64,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        let table = seasonal_table(&cat.0, season(season_id)?, days_per_month)
            .map_err(|e| Failure::new(LcStatus::InvalidArgument, e))?;
        let r = scale_to_measured(&table, measured_kwh_month)
            .map_err(|e| Failure::new(LcStatus::Computation, e))?;
        write_out(out_scale, r.scale_factor, "out_scale")?;
        write_out(out_gap, r.relative_gap, "out_gap")
    })
}

/// Hourly attribution of a measured day, with its composition, as JSON.
///
/// # Safety
/// `cat` and `profile` must be live handles; `occupancy` NULL or 24 readable
/// doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_disaggregate_json(
    cat: *const LcCatalog,
    profile: *const LcProfile,
    season_id: u32,
    occupancy_weights: *const f64,
    out: *mut *mut c_char,
) -> LcStatus {
    guard(|| {
        let cat = deref(cat, "catalog")?;
        let profile = deref(profile, "profile")?;
        let attr = disaggregate(
            &profile.0,
            &cat.0,
            season(season_id)?,
            &occupancy(occupancy_weights)?,
        )
        .map_err(|e| Failure::new(LcStatus::Computation, e))?;
        let shares = composition_from_attribution(&attr).ok();
        let doc = serde_json::json!({
            "attribution": attr,
            "shares": shares.map(|s| s.shares),
        });
        out_string(out, report::to_json(&doc))
    })
}

/// Parses a `timestamp,power_kw` CSV profile.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_parse(
    data: *const u8,
    len: usize,
    granularity: u32,
    out: *mut *mut LcProfile,
) -> LcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let granularity = match granularity {
            LC_GRANULARITY_INFER => None,
            LC_GRANULARITY_HOURLY => Some(Granularity::Hourly),
            LC_GRANULARITY_MONTHLY_AVERAGE => Some(Granularity::MonthlyAverage),
            LC_GRANULARITY_MONTHLY_PEAK => Some(Granularity::MonthlyPeak),
            other => {
                return Err(Failure::new(
                    LcStatus::InvalidArgument,
                    format!("unknown granularity {other}"),
                ))
            }
        };
        let profile = parse_profile(bytes(data, len)?, "ffi", granularity).map_err(|e| {
            use loadcomp::ProfileError::*;
            let status = match e {
                NegativePower { .. } | NonMonotonic { .. } | Empty => LcStatus::Validation,
                _ => LcStatus::Parse,
            };
            Failure::new(status, e)
        })?;
        out.write(Box::into_raw(Box::new(LcProfile(profile))));
        Ok(())
    })
}

/// Hourly profile on the given date from `n` kW values starting at midnight.
///
/// # Safety
/// `values` must point to `n` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_from_hourly(
    values: *const f64,
    n: usize,
    year: i32,
    month: u32,
    day: u32,
    out: *mut *mut LcProfile,
) -> LcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if values.is_null() {
            return Err(null("values"));
        }
        if n > HOURS {
            return Err(Failure::new(
                LcStatus::InvalidArgument,
                format!("at most 24 hourly values, got {n}"),
            ));
        }
        let date = chrono_date(year, month, day)?;
        let values = std::slice::from_raw_parts(values, n);
        let profile = LoadProfile::hourly_from_values("ffi", date, values)
            .map_err(|e| Failure::new(LcStatus::Validation, e))?;
        out.write(Box::into_raw(Box::new(LcProfile(profile))));
        Ok(())
    })
}

fn chrono_date(year: i32, month: u32, day: u32) -> Result<NaiveDate, Failure> {
    NaiveDate::from_ymd_opt(year, month, day).ok_or_else(|| {
        Failure::new(
            LcStatus::InvalidArgument,
            format!("invalid date {year}-{month}-{day}"),
        )
    })
}

/// Releases a profile. NULL is ignored.
///
/// # Safety
/// `p` must come from `lc_profile_*` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_free(p: *mut LcProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of samples, 0 for NULL.
///
/// # Safety
/// `p` must be NULL or a live profile handle.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_len(p: *const LcProfile) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Writes every sample divided by the peak into `out_fractions` (capacity
/// `cap`, at least the profile length) and the peak in kW into `out_peak_kw`.
///
/// # Safety
/// `p` must be a live profile handle; `out_fractions` must have room for `cap`
/// doubles; `out_peak_kw` must be writable or NULL.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_normalize(
    p: *const LcProfile,
    out_fractions: *mut f64,
    cap: usize,
    out_peak_kw: *mut f64,
) -> LcStatus {
    guard(|| {
        let p = deref(p, "profile")?;
        if out_fractions.is_null() {
            return Err(null("out_fractions"));
        }
        if cap < p.0.len() {
            return Err(Failure::new(
                LcStatus::BufferTooSmall,
                format!("need {} slots, got {cap}", p.0.len()),
            ));
        }
        let n = normalize(&p.0).map_err(|e| Failure::new(LcStatus::Computation, e))?;
        for (i, f) in n.fractions().enumerate() {
            out_fractions.add(i).write(f);
        }
        if !out_peak_kw.is_null() {
            out_peak_kw.write(n.peak_kw);
        }
        Ok(())
    })
}

/// Mean power over peak power.
///
/// # Safety
/// `p` must be a live profile handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_peak_average_ratio(
    p: *const LcProfile,
    out: *mut f64,
) -> LcStatus {
    guard(|| {
        let p = deref(p, "profile")?;
        let r = peak_average_ratio(&p.0).map_err(|e| Failure::new(LcStatus::Computation, e))?;
        write_out(out, r, "out")
    })
}

/// Percentage change between two months (1 = January) of a monthly profile.
///
/// # Safety
/// `p` must be a live profile handle; `out_pct` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_monthly_growth(
    p: *const LcProfile,
    from_month: u32,
    to_month: u32,
    out_pct: *mut f64,
) -> LcStatus {
    guard(|| {
        let p = deref(p, "profile")?;
        let g = monthly_growth(&p.0, from_month, to_month)
            .map_err(|e| Failure::new(LcStatus::Computation, e))?;
        write_out(out_pct, g, "out_pct")
    })
}

/// Hours of maximum and minimum power of a single hourly day.
///
/// # Safety
/// `p` must be a live profile handle; both out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_profile_daily_extrema(
    p: *const LcProfile,
    out_peak_hour: *mut u32,
    out_trough_hour: *mut u32,
) -> LcStatus {
    guard(|| {
        let p = deref(p, "profile")?;
        let ex = daily_extrema(&p.0).map_err(|e| Failure::new(LcStatus::Computation, e))?;
        write_out(out_peak_hour, ex.peak_hour as u32, "out_peak_hour")?;
        write_out(out_trough_hour, ex.trough_hour as u32, "out_trough_hour")
    })
}

/// Copies the last error of this thread into a Rust string; test helper.
#[doc(hidden)]
pub fn last_error_string() -> String {
    unsafe { CStr::from_ptr(lc_last_error()) }
        .to_string_lossy()
        .into_owned()
}
