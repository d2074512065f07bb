//! Hourly synthesis of the bottom-up model.
//!
//! Each activity's daily household energy is spread over 24 hours by a shape
//! that depends on its operation class:
//!
//! * `Auto`: uniform, 1/24 per hour
//! * `Manual`: the occupancy curve
//! * `SemiAuto`: the mean of the two, renormalised

use std::io::Read;

use chrono::NaiveDate;
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{ApplianceSpec, Catalog, OperationClass, Season};
use crate::composition::household_device_energy;
use crate::profile::{LoadProfile, ProfileError};

pub const HOURS: usize = 24;

/// Raw weights of the default occupancy curve: lowest at 06:00, highest at 15:00.
#[rustfmt::skip]
const DEFAULT_OCCUPANCY: [f64; HOURS] = [
    3.0, 2.4, 2.0, 1.7, 1.5, 1.3, 1.0, 1.6,
    2.6, 3.4, 4.0, 4.6, 5.2, 5.8, 6.4, 7.0,
    6.6, 6.0, 5.6, 5.4, 5.2, 4.8, 4.2, 3.6,
];

#[derive(Debug, Error, PartialEq)]
pub enum SynthError {
    #[error("occupancy curve needs 24 values, found {0}")]
    WrongLength(usize),
    #[error("occupancy value `{0}` is not a number")]
    NotANumber(String),
    #[error("occupancy weight at hour {hour} is negative or non-finite ({value})")]
    InvalidWeight { hour: usize, value: f64 },
    #[error("occupancy weights sum to zero")]
    ZeroSum,
    #[error("io: {0}")]
    Io(String),
}

fn normalized(raw: &[f64]) -> Result<[f64; HOURS], SynthError> {
    if raw.len() != HOURS {
        return Err(SynthError::WrongLength(raw.len()));
    }
    if let Some((hour, &value)) = raw
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite() || **v < 0.0)
    {
        return Err(SynthError::InvalidWeight { hour, value });
    }
    let sum: f64 = raw.iter().sum();
    if sum <= 0.0 {
        return Err(SynthError::ZeroSum);
    }
    Ok(std::array::from_fn(|h| raw[h] / sum))
}

/// Relative presence of occupants over the day; 24 weights summing to 1.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OccupancyCurve {
    weights: [f64; HOURS],
}

impl OccupancyCurve {
    /// Normalises 24 non-negative values to sum to 1.
    pub fn new(values: &[f64]) -> Result<Self, SynthError> {
        Ok(OccupancyCurve {
            weights: normalized(values)?,
        })
    }

    pub fn uniform() -> Self {
        OccupancyCurve {
            weights: [1.0 / HOURS as f64; HOURS],
        }
    }

    /// Reads 24 numbers separated by commas and/or whitespace.
    pub fn parse<R: Read>(mut source: R) -> Result<Self, SynthError> {
        let mut text = String::new();
        source
            .read_to_string(&mut text)
            .map_err(|e| SynthError::Io(e.to_string()))?;
        let values = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| SynthError::NotANumber(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        OccupancyCurve::new(&values)
    }

    pub fn weights(&self) -> &[f64; HOURS] {
        &self.weights
    }
}

impl Default for OccupancyCurve {
    fn default() -> Self {
        OccupancyCurve::new(&DEFAULT_OCCUPANCY).expect("default occupancy is valid")
    }
}

/// How one activity's daily energy is spread over the hours of the day.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HourlyShape {
    pub activity: String,
    pub season: Season,
    pub weights: [f64; HOURS],
}

pub fn shape_for(spec: &ApplianceSpec, season: Season, occupancy: &OccupancyCurve) -> HourlyShape {
    let uniform = 1.0 / HOURS as f64;
    let weights = match spec.operation {
        OperationClass::Auto => [uniform; HOURS],
        OperationClass::Manual => occupancy.weights,
        OperationClass::SemiAuto => {
            let mixed: Vec<f64> = occupancy
                .weights
                .iter()
                .map(|w| 0.5 * (w + uniform))
                .collect();
            normalized(&mixed).expect("mean of two distributions is a distribution")
        }
    };
    HourlyShape {
        activity: spec.activity.clone(),
        season,
        weights,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ActivityDay {
    pub activity: String,
    /// Energy drawn in each hour, Wh.
    pub hourly_wh: [f64; HOURS],
    /// Household energy of the activity over the day, Wh.
    pub daily_wh: f64,
}

/// A synthesised household day.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SynthDay {
    pub season: Season,
    pub activities: Vec<ActivityDay>,
    /// Sum over activities for each hour, Wh.
    pub total_wh: [f64; HOURS],
}

impl SynthDay {
    pub fn daily_total_wh(&self) -> f64 {
        self.activities.iter().map(|a| a.daily_wh).sum()
    }

    pub fn activity(&self, name: &str) -> Option<&ActivityDay> {
        self.activities.iter().find(|a| a.activity == name)
    }

    /// The hourly household total as a kW profile on `date` (Wh in one hour = average W).
    pub fn total_profile(&self, date: NaiveDate) -> Result<LoadProfile, ProfileError> {
        let kw: Vec<f64> = self.total_wh.iter().map(|wh| wh / 1000.0).collect();
        LoadProfile::hourly_from_values(format!("synthesised {}", self.season), date, &kw)
    }
}

pub fn synth_household_day(
    catalog: &Catalog,
    season: Season,
    occupancy: &OccupancyCurve,
) -> SynthDay {
    let activities: Vec<ActivityDay> = catalog
        .iter()
        .map(|spec| {
            let daily = household_device_energy(spec, season);
            let shape = shape_for(spec, season, occupancy);
            ActivityDay {
                activity: spec.activity.clone(),
                hourly_wh: shape.weights.map(|w| daily * w),
                daily_wh: daily,
            }
        })
        .collect();
    let total_wh = std::array::from_fn(|h| activities.iter().map(|a| a.hourly_wh[h]).sum::<f64>());
    SynthDay {
        season,
        activities,
        total_wh,
    }
}
