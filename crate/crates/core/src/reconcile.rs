//! Matching the bottom-up model to measured load.
//!
//! Two views are offered. [`scale_to_measured`] rescales a seasonal table so
//! its monthly total equals the measured energy. [`disaggregate`] splits every
//! measured hour across activities in proportion to the synthesised hourly
//! energy of each activity, so the attributions of an hour always add up to
//! the measured power of that hour.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::{Catalog, Season};
use crate::composition::{CompositionError, CompositionReport, SeasonalConsumptionTable};
use crate::profile::{hourly_day, LoadProfile, ProfileError};
use crate::synth::{synth_household_day, OccupancyCurve, HOURS};

/// Relative gaps above this flag the catalog as likely unrepresentative.
pub const GAP_WARNING_THRESHOLD: f64 = 0.25;

#[derive(Debug, Error)]
pub enum ReconcileError {
    #[error("bottom-up total is zero")]
    ZeroBottomUp,
    #[error("measured energy must be positive and finite, got {0}")]
    ZeroMeasured(f64),
    #[error(
        "unattributable load at hour {hour}: measured {measured_kw} kW but the model draws nothing"
    )]
    UnattributableLoad { hour: usize, measured_kw: f64 },
    #[error("measured profile: {0}")]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

/// A seasonal table rescaled onto a measured monthly energy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReconciliationResult {
    pub season: Season,
    /// measured / bottom-up.
    pub scale_factor: f64,
    pub measured_energy_kwh: f64,
    pub bottom_up_energy_kwh: f64,
    /// |1 - bottom-up / measured|.
    pub relative_gap: f64,
    pub gap_warning: bool,
    pub adjusted_table: SeasonalConsumptionTable,
}

pub fn scale_to_measured(
    table: &SeasonalConsumptionTable,
    measured_kwh_month: f64,
) -> Result<ReconciliationResult, ReconcileError> {
    let bottom_up = table.monthly_total_kwh;
    if !(bottom_up.is_finite() && bottom_up > 0.0) {
        return Err(ReconcileError::ZeroBottomUp);
    }
    if !(measured_kwh_month.is_finite() && measured_kwh_month > 0.0) {
        return Err(ReconcileError::ZeroMeasured(measured_kwh_month));
    }
    let scale_factor = measured_kwh_month / bottom_up;
    let relative_gap = (1.0 - bottom_up / measured_kwh_month).abs();
    Ok(ReconciliationResult {
        season: table.season,
        scale_factor,
        measured_energy_kwh: measured_kwh_month,
        bottom_up_energy_kwh: bottom_up,
        relative_gap,
        gap_warning: relative_gap > GAP_WARNING_THRESHOLD,
        adjusted_table: table.scaled(scale_factor),
    })
}

/// Monthly energy implied by one measured hourly day, kWh.
pub fn measured_monthly_energy(
    measured: &LoadProfile,
    days_per_month: f64,
) -> Result<f64, ReconcileError> {
    let hours = hourly_day(measured)?;
    Ok(hours.iter().map(|(_, kw)| kw).sum::<f64>() * days_per_month)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttributedHour {
    pub hour: usize,
    pub measured_kw: f64,
    /// kW per activity, aligned with [`HourlyAttribution::activities`].
    pub kw: Vec<f64>,
}

/// Measured power of each hour split across catalog activities.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HourlyAttribution {
    pub label: String,
    pub season: Season,
    pub activities: Vec<String>,
    pub hours: Vec<AttributedHour>,
}

impl HourlyAttribution {
    pub fn get(&self, hour: usize, activity: &str) -> Option<f64> {
        let idx = self.activities.iter().position(|a| a == activity)?;
        self.hours
            .iter()
            .find(|h| h.hour == hour)
            .map(|h| h.kw[idx])
    }

    /// Energy attributed to each activity over the day, kWh.
    pub fn activity_energy_kwh(&self) -> Vec<f64> {
        (0..self.activities.len())
            .map(|i| self.hours.iter().map(|h| h.kw[i]).sum())
            .collect()
    }
}

/// Proportional attribution of one measured hourly day.
///
/// Hours where the measurement is zero attribute zero to everything; hours
/// where the measurement is positive but the model draws nothing are an error.
pub fn disaggregate(
    measured: &LoadProfile,
    catalog: &Catalog,
    season: Season,
    occupancy: &OccupancyCurve,
) -> Result<HourlyAttribution, ReconcileError> {
    let hours = hourly_day(measured)?;
    let day = synth_household_day(catalog, season, occupancy);
    let n = day.activities.len();

    let mut out = Vec::with_capacity(hours.len());
    for (hour, measured_kw) in hours {
        debug_assert!(hour < HOURS);
        let total = day.total_wh[hour];
        let kw = if measured_kw == 0.0 {
            vec![0.0; n]
        } else if total <= 0.0 {
            return Err(ReconcileError::UnattributableLoad { hour, measured_kw });
        } else {
            day.activities
                .iter()
                .map(|a| measured_kw * (a.hourly_wh[hour] / total))
                .collect()
        };
        out.push(AttributedHour {
            hour,
            measured_kw,
            kw,
        });
    }

    Ok(HourlyAttribution {
        label: measured.label().to_string(),
        season,
        activities: day.activities.into_iter().map(|a| a.activity).collect(),
        hours: out,
    })
}

/// Shares of each activity in the attributed energy of the day.
pub fn composition_from_attribution(
    attr: &HourlyAttribution,
) -> Result<CompositionReport, ReconcileError> {
    let energies = attr.activities.iter().cloned().zip(
        attr.activity_energy_kwh()
            .into_iter()
            .map(|kwh| kwh * 1000.0),
    );
    Ok(CompositionReport::from_energies(attr.season, energies)?)
}
