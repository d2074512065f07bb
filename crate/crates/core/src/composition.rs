//! Bottom-up energy accounting.
//!
//! Per-unit daily energy of an appliance is its duty-weighted power times its
//! time of use:
//!
//! ```text
//! per_unit = (run_watts * run_fraction + idle_watts * idle_fraction) * tou[season]
//! household = units[season] * per_unit
//! ```
//!
//! Seasonal tables sum the household energies and convert to a monthly
//! total; composition reports turn them into percentage shares.

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{ApplianceSpec, Catalog, Season};

pub const DEFAULT_DAYS_PER_MONTH: u32 = 30;

#[derive(Debug, Error, PartialEq)]
pub enum CompositionError {
    #[error("empty composition basis")]
    EmptyBasis,
    #[error("days per month must be at least 1")]
    InvalidDaysPerMonth,
    #[error("activity `{0}` has a negative or non-finite energy")]
    InvalidEnergy(String),
}

/// Wh/day drawn by one unit of `spec` in `season`.
pub fn device_daily_energy(spec: &ApplianceSpec, season: Season) -> f64 {
    (spec.run_watts * spec.run_fraction + spec.idle_watts * spec.idle_fraction)
        * spec.tou.get(season)
}

/// Wh/day drawn by all units of `spec` in a household in `season`.
pub fn household_device_energy(spec: &ApplianceSpec, season: Season) -> f64 {
    f64::from(spec.units.get(season)) * device_daily_energy(spec, season)
}

/// Month length used to turn Wh/day into kWh/month.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonthConvention {
    /// Every month has the given number of days.
    Fixed(u32),
    /// Mean calendar length of the season's months (non-leap year):
    /// 151/5 days in winter, 214/7 in summer.
    CalendarAverage,
}

impl Default for MonthConvention {
    fn default() -> Self {
        MonthConvention::Fixed(DEFAULT_DAYS_PER_MONTH)
    }
}

impl MonthConvention {
    pub fn days(self, season: Season) -> f64 {
        const LENGTHS: [u32; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
        match self {
            MonthConvention::Fixed(days) => f64::from(days),
            MonthConvention::CalendarAverage => {
                let months = season.months();
                let total: u32 = months.iter().map(|&m| LENGTHS[m as usize - 1]).sum();
                f64::from(total) / months.len() as f64
            }
        }
    }
}

/// Energy of one catalog activity in one season.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviceEnergy {
    pub activity: String,
    pub season: Season,
    pub units: u32,
    pub per_unit_daily_wh: f64,
    pub household_daily_wh: f64,
}

impl DeviceEnergy {
    pub fn of(spec: &ApplianceSpec, season: Season) -> Self {
        let per_unit = device_daily_energy(spec, season);
        let units = spec.units.get(season);
        DeviceEnergy {
            activity: spec.activity.clone(),
            season,
            units,
            per_unit_daily_wh: per_unit,
            household_daily_wh: f64::from(units) * per_unit,
        }
    }
}

/// Per-activity household energy for one season, with daily and monthly totals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeasonalConsumptionTable {
    pub season: Season,
    pub rows: Vec<DeviceEnergy>,
    pub daily_total_wh: f64,
    pub monthly_total_kwh: f64,
    pub days_per_month: f64,
}

impl SeasonalConsumptionTable {
    /// Builds a table from rows, deriving both totals.
    pub fn from_rows(season: Season, rows: Vec<DeviceEnergy>, days_per_month: f64) -> Self {
        let daily_total_wh = rows.iter().map(|r| r.household_daily_wh).sum::<f64>();
        SeasonalConsumptionTable {
            season,
            rows,
            daily_total_wh,
            monthly_total_kwh: daily_total_wh * days_per_month / 1000.0,
            days_per_month,
        }
    }

    /// Every energy multiplied by `factor`; totals recomputed.
    pub fn scaled(&self, factor: f64) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| DeviceEnergy {
                per_unit_daily_wh: r.per_unit_daily_wh * factor,
                household_daily_wh: r.household_daily_wh * factor,
                ..r.clone()
            })
            .collect();
        SeasonalConsumptionTable::from_rows(self.season, rows, self.days_per_month)
    }

    pub fn row(&self, activity: &str) -> Option<&DeviceEnergy> {
        self.rows.iter().find(|r| r.activity == activity)
    }

    pub fn composition(&self) -> Result<CompositionReport, CompositionError> {
        CompositionReport::from_energies(
            self.season,
            self.rows
                .iter()
                .map(|r| (r.activity.clone(), r.household_daily_wh)),
        )
    }
}

/// Seasonal table with a fixed month length.
pub fn seasonal_table(
    catalog: &Catalog,
    season: Season,
    days_per_month: u32,
) -> Result<SeasonalConsumptionTable, CompositionError> {
    seasonal_table_with(catalog, season, MonthConvention::Fixed(days_per_month))
}

pub fn seasonal_table_with(
    catalog: &Catalog,
    season: Season,
    months: MonthConvention,
) -> Result<SeasonalConsumptionTable, CompositionError> {
    if months == MonthConvention::Fixed(0) {
        return Err(CompositionError::InvalidDaysPerMonth);
    }
    let rows = catalog
        .iter()
        .map(|s| DeviceEnergy::of(s, season))
        .collect();
    Ok(SeasonalConsumptionTable::from_rows(
        season,
        rows,
        months.days(season),
    ))
}

/// Percentage share of each activity in a season's energy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositionReport {
    pub season: Season,
    /// Activity to percentage in `[0, 100]`, in catalog order.
    pub shares: IndexMap<String, f64>,
    /// The energy the shares divide, Wh/day.
    pub basis_daily_total_wh: f64,
}

impl CompositionReport {
    /// Shares of `energies` in their total. The total must be positive.
    pub fn from_energies<I>(season: Season, energies: I) -> Result<Self, CompositionError>
    where
        I: IntoIterator<Item = (String, f64)>,
    {
        let energies: Vec<(String, f64)> = energies.into_iter().collect();
        if let Some((name, _)) = energies.iter().find(|(_, e)| !e.is_finite() || *e < 0.0) {
            return Err(CompositionError::InvalidEnergy(name.clone()));
        }
        let total: f64 = energies.iter().map(|(_, e)| e).sum();
        if total <= 0.0 {
            return Err(CompositionError::EmptyBasis);
        }
        let shares = energies
            .into_iter()
            .map(|(name, e)| (name, 100.0 * (e / total)))
            .collect();
        Ok(CompositionReport {
            season,
            shares,
            basis_daily_total_wh: total,
        })
    }

    pub fn share(&self, activity: &str) -> Option<f64> {
        self.shares.get(activity).copied()
    }

    /// Activity with the largest share; the first one on ties.
    pub fn dominant(&self) -> Option<(&str, f64)> {
        self.shares
            .iter()
            .fold(None, |best: Option<(&str, f64)>, (name, &v)| match best {
                Some((_, b)) if b >= v => best,
                _ => Some((name.as_str(), v)),
            })
    }
}

pub fn composition_shares(
    catalog: &Catalog,
    season: Season,
) -> Result<CompositionReport, CompositionError> {
    CompositionReport::from_energies(
        season,
        catalog
            .iter()
            .map(|s| (s.activity.clone(), household_device_energy(s, season))),
    )
}

/// Winter and summer composition side by side.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeasonPairReport {
    pub winter: CompositionReport,
    pub summer: CompositionReport,
    /// Summer share minus winter share, in percentage points.
    pub deltas: IndexMap<String, f64>,
}

pub fn season_pair_report(catalog: &Catalog) -> Result<SeasonPairReport, CompositionError> {
    let winter = composition_shares(catalog, Season::Winter)?;
    let summer = composition_shares(catalog, Season::Summer)?;
    let deltas = winter
        .shares
        .iter()
        .map(|(name, w)| (name.clone(), summer.shares[name] - w))
        .collect();
    Ok(SeasonPairReport {
        winter,
        summer,
        deltas,
    })
}
