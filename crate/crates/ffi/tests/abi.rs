use std::ffi::{c_char, CStr};
use std::ptr;

use loadcomp_ffi::*;

fn take_string(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_string_lossy().into_owned();
    unsafe { lc_string_free(s) };
    out
}

fn builtin() -> *mut LcCatalog {
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { lc_catalog_builtin(&mut cat) }, LcStatus::Ok);
    cat
}

#[test]
fn builtin_catalog_energies() {
    let cat = builtin();
    unsafe {
        assert_eq!(lc_catalog_len(cat), 15);

        let mut name = ptr::null_mut();
        assert_eq!(lc_catalog_activity_name(cat, 1, &mut name), LcStatus::Ok);
        assert_eq!(take_string(name), "Air conditioning");

        let mut wh = 0.0;
        assert_eq!(
            lc_household_energy(cat, 1, LC_SEASON_SUMMER, &mut wh),
            LcStatus::Ok
        );
        assert_eq!(wh, 56000.0);
        assert_eq!(
            lc_device_daily_energy(cat, 1, LC_SEASON_SUMMER, &mut wh),
            LcStatus::Ok
        );
        assert_eq!(wh, 11200.0);

        let (mut daily, mut monthly) = (0.0, 0.0);
        assert_eq!(
            lc_seasonal_totals(cat, LC_SEASON_WINTER, 30, &mut daily, &mut monthly),
            LcStatus::Ok
        );
        assert!((daily - 63185.0).abs() < 1e-9);
        assert!((monthly - 1895.55).abs() < 1e-9);

        let mut pct = 0.0;
        assert_eq!(
            lc_composition_share(cat, LC_SEASON_SUMMER, 1, &mut pct),
            LcStatus::Ok
        );
        assert!((pct - 61.886).abs() < 1e-3);

        let mut json = ptr::null_mut();
        assert_eq!(
            lc_composition_json(cat, LC_SEASON_SUMMER, 30, &mut json),
            LcStatus::Ok
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(doc["seasons"][0]["rows"].as_array().unwrap().len(), 15);

        lc_catalog_free(cat);
    }
}

#[test]
fn argument_errors_set_status_and_message() {
    let cat = builtin();
    unsafe {
        let mut wh = 0.0;
        assert_eq!(
            lc_household_energy(cat, 99, LC_SEASON_SUMMER, &mut wh),
            LcStatus::InvalidArgument
        );
        assert!(last_error_string().contains("out of range"));
        assert_eq!(
            lc_household_energy(cat, 0, 7, &mut wh),
            LcStatus::InvalidArgument
        );
        assert!(last_error_string().contains("season"));
        assert_eq!(
            lc_household_energy(ptr::null(), 0, 0, &mut wh),
            LcStatus::NullArgument
        );
        assert_eq!(
            lc_household_energy(cat, 0, 0, ptr::null_mut()),
            LcStatus::NullArgument
        );
        let (mut d, mut m) = (0.0, 0.0);
        assert_eq!(
            lc_seasonal_totals(cat, 0, 0, &mut d, &mut m),
            LcStatus::InvalidArgument
        );
        assert_eq!(lc_household_energy(cat, 0, 0, &mut wh), LcStatus::Ok);
        assert_eq!(last_error_string(), "");
        lc_catalog_free(cat);
        lc_catalog_free(ptr::null_mut());
        lc_string_free(ptr::null_mut());
    }
}

#[test]
fn catalog_parse_and_serialize() {
    let cat = builtin();
    unsafe {
        let mut csv = ptr::null_mut();
        assert_eq!(
            lc_catalog_serialize(cat, LC_FORMAT_CSV, &mut csv),
            LcStatus::Ok
        );
        let text = take_string(csv);
        let mut back = ptr::null_mut();
        assert_eq!(
            lc_catalog_parse(text.as_ptr(), text.len(), LC_FORMAT_CSV, &mut back),
            LcStatus::Ok
        );
        assert_eq!(lc_catalog_len(back), 15);
        lc_catalog_free(back);

        let bad = "activity,tou_winter,tou_summer,units_winter,units_summer,run_watts,idle_watts,operation,run_fraction,idle_fraction\n\
                   Air conditioning,3,10,2,5,1800,100,Semi Auto,0.6,0.5\n";
        let mut out = ptr::null_mut();
        assert_eq!(
            lc_catalog_parse(bad.as_ptr(), bad.len(), LC_FORMAT_CSV, &mut out),
            LcStatus::Validation
        );
        assert!(out.is_null());
        assert!(last_error_string().contains("fraction-sum rule"));

        assert_eq!(
            lc_catalog_parse(ptr::null(), 0, LC_FORMAT_CSV, &mut out),
            LcStatus::Validation
        );
        assert!(last_error_string().contains("no entries"));
        assert_eq!(
            lc_catalog_parse(b"[{".as_ptr(), 2, LC_FORMAT_JSON, &mut out),
            LcStatus::Parse
        );
        lc_catalog_free(cat);
    }
}

#[test]
fn profile_statistics() {
    unsafe {
        let values = [2.0, 4.0, 8.0];
        let mut p = ptr::null_mut();
        assert_eq!(
            lc_profile_from_hourly(values.as_ptr(), 3, 2016, 6, 1, &mut p),
            LcStatus::Ok
        );
        assert_eq!(lc_profile_len(p), 3);

        let mut fr = [0.0; 3];
        let mut peak = 0.0;
        assert_eq!(
            lc_profile_normalize(p, fr.as_mut_ptr(), 3, &mut peak),
            LcStatus::Ok
        );
        assert_eq!(fr, [0.25, 0.5, 1.0]);
        assert_eq!(peak, 8.0);
        assert_eq!(
            lc_profile_normalize(p, fr.as_mut_ptr(), 2, &mut peak),
            LcStatus::BufferTooSmall
        );

        let (mut hi, mut lo) = (0u32, 0u32);
        assert_eq!(lc_profile_daily_extrema(p, &mut hi, &mut lo), LcStatus::Ok);
        assert_eq!((hi, lo), (2, 0));
        let mut g = 0.0;
        assert_eq!(
            lc_profile_monthly_growth(p, 2, 6, &mut g),
            LcStatus::Computation
        );
        lc_profile_free(p);

        let csv = "timestamp,power_kw\n2016-02-01,100\n2016-06-01,230\n";
        assert_eq!(
            lc_profile_parse(csv.as_ptr(), csv.len(), LC_GRANULARITY_INFER, &mut p),
            LcStatus::Ok
        );
        assert_eq!(lc_profile_monthly_growth(p, 2, 6, &mut g), LcStatus::Ok);
        assert_eq!(g, 130.0);
        lc_profile_free(p);

        let zero = [0.0; 4];
        assert_eq!(
            lc_profile_from_hourly(zero.as_ptr(), 4, 2016, 6, 1, &mut p),
            LcStatus::Ok
        );
        let mut r = 0.0;
        assert_eq!(
            lc_profile_peak_average_ratio(p, &mut r),
            LcStatus::Computation
        );
        assert_eq!(last_error_string(), "zero peak");
        lc_profile_free(p);

        let neg = "timestamp,power_kw\n2016-06-01T00:00,-5\n";
        assert_eq!(
            lc_profile_parse(neg.as_ptr(), neg.len(), LC_GRANULARITY_HOURLY, &mut p),
            LcStatus::Validation
        );
        assert_eq!(
            lc_profile_from_hourly(zero.as_ptr(), 4, 2016, 2, 30, &mut p),
            LcStatus::InvalidArgument
        );
    }
}

#[test]
fn synthesis_and_reconciliation() {
    let cat = builtin();
    unsafe {
        let mut total = [0.0; 24];
        assert_eq!(
            lc_synth_household_day(cat, LC_SEASON_SUMMER, ptr::null(), total.as_mut_ptr()),
            LcStatus::Ok
        );
        assert!((total.iter().sum::<f64>() - 90489.7).abs() < 1e-6);

        let bad_occ = [0.0; 24];
        assert_eq!(
            lc_synth_household_day(cat, LC_SEASON_SUMMER, bad_occ.as_ptr(), total.as_mut_ptr()),
            LcStatus::Validation
        );

        let (mut k, mut gap) = (0.0, 0.0);
        let (mut daily, mut monthly) = (0.0, 0.0);
        lc_seasonal_totals(cat, LC_SEASON_SUMMER, 30, &mut daily, &mut monthly);
        assert_eq!(
            lc_reconcile_scale(cat, LC_SEASON_SUMMER, 30, 1.1 * monthly, &mut k, &mut gap),
            LcStatus::Ok
        );
        assert!((k - 1.1).abs() < 1e-9);
        assert_eq!(
            lc_reconcile_scale(cat, LC_SEASON_SUMMER, 30, 0.0, &mut k, &mut gap),
            LcStatus::Computation
        );

        let kw: Vec<f64> = total.iter().map(|wh| wh / 1000.0).collect();
        let mut p = ptr::null_mut();
        assert_eq!(
            lc_profile_from_hourly(kw.as_ptr(), 24, 2016, 7, 1, &mut p),
            LcStatus::Ok
        );
        let mut json = ptr::null_mut();
        assert_eq!(
            lc_disaggregate_json(cat, p, LC_SEASON_SUMMER, ptr::null(), &mut json),
            LcStatus::Ok
        );
        let doc: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        let ac = doc["shares"]["Air conditioning"].as_f64().unwrap();
        assert!((ac - 61.886).abs() < 1e-3);
        assert_eq!(doc["attribution"]["hours"].as_array().unwrap().len(), 24);
        lc_profile_free(p);
        lc_catalog_free(cat);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(lc_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
