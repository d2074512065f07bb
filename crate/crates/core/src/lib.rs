//! Residential load composition.
//!
//! Bottom-up appliance energy accounting ([`catalog`], [`composition`]),
//! top-down measured profile analysis ([`profile`]), hourly synthesis of the
//! bottom-up model ([`synth`]) and the reconciliation of the two
//! ([`reconcile`]). The `loadcomp` binary wraps everything in [`cli`].

pub mod catalog;
pub mod cli;
pub mod composition;
pub mod fixtures;
pub mod profile;
pub mod reconcile;
pub mod report;
pub mod synth;

mod error;

pub use catalog::{
    builtin_paper_catalog, parse_catalog, serialize_catalog, validate_spec, ApplianceSpec, Catalog,
    CatalogError, CatalogFormat, OperationClass, PerSeason, Season, Violation,
};
pub use composition::{
    composition_shares, device_daily_energy, household_device_energy, season_pair_report,
    seasonal_table, CompositionError, CompositionReport, DeviceEnergy, MonthConvention,
    SeasonPairReport, SeasonalConsumptionTable,
};
pub use error::{Error, Result};
pub use profile::{
    daily_extrema, monthly_growth, normalize, parse_profile, peak_average_ratio, seasonal_split,
    DailyExtrema, Granularity, LoadProfile, NormalizedProfile, ProfileError, Sample, SeasonalSplit,
};
pub use reconcile::{
    composition_from_attribution, disaggregate, scale_to_measured, HourlyAttribution,
    ReconcileError, ReconciliationResult, GAP_WARNING_THRESHOLD,
};
pub use synth::{
    shape_for, synth_household_day, HourlyShape, OccupancyCurve, SynthDay, SynthError, HOURS,
};
