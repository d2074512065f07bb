#![allow(dead_code)]

use chrono::NaiveDate;
use loadcomp::{ApplianceSpec, Catalog, LoadProfile, OperationClass, PerSeason};
use proptest::prelude::*;

pub fn operation() -> impl Strategy<Value = OperationClass> {
    prop_oneof![
        Just(OperationClass::Manual),
        Just(OperationClass::SemiAuto),
        Just(OperationClass::Auto),
    ]
}

/// A spec satisfying every invariant; `name` must be unique within a catalog.
pub fn spec(name: String) -> impl Strategy<Value = ApplianceSpec> {
    (
        (0.0..=24.0f64, 0.0..=24.0f64),
        (0u32..=60, 0u32..=60),
        0.0..5000.0f64,
        0.0..=1.0f64,
        0.0..=1.0f64,
        operation(),
    )
        .prop_map(
            move |((tw, ts), (uw, us), run, idle_ratio, gamma, op)| ApplianceSpec {
                activity: name.clone(),
                tou: PerSeason::new(tw, ts),
                units: PerSeason::new(uw, us),
                run_watts: run,
                idle_watts: run * idle_ratio,
                run_fraction: gamma,
                idle_fraction: 1.0 - gamma,
                operation: op,
            },
        )
}

pub fn catalog(max: usize) -> impl Strategy<Value = Catalog> {
    (1..=max)
        .prop_flat_map(|n| {
            (0..n)
                .map(|i| spec(format!("activity {i}")))
                .collect::<Vec<_>>()
        })
        .prop_map(|specs| Catalog::new(specs).expect("generated specs are valid"))
}

/// A catalog whose household energy is positive in both seasons.
pub fn energised_catalog(max: usize) -> impl Strategy<Value = Catalog> {
    catalog(max).prop_filter("needs energy in both seasons", |c| {
        loadcomp::Season::ALL.iter().all(|&s| {
            c.iter()
                .map(|spec| loadcomp::household_device_energy(spec, s))
                .sum::<f64>()
                > 0.0
        })
    })
}

pub fn date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2016, 7, 1).unwrap()
}

/// 1..=24 hourly samples with at least one positive value.
pub fn hourly_profile() -> impl Strategy<Value = LoadProfile> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 4 => 0.0..5000.0f64], 1..=24)
        .prop_filter("positive peak", |v| v.iter().any(|&x| x > 0.0))
        .prop_map(|v| LoadProfile::hourly_from_values("random", date(), &v).unwrap())
}

/// A full 24-hour measured day; some hours may be zero.
pub fn measured_day() -> impl Strategy<Value = LoadProfile> {
    prop::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.0..2000.0f64], 24)
        .prop_map(|v| LoadProfile::hourly_from_values("measured", date(), &v).unwrap())
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= tol * scale || a == b
}
