//! Measured (top-down) load profiles and their summary statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate, NaiveDateTime, NaiveTime, Timelike};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Season;

pub const PROFILE_COLUMNS: [&str; 2] = ["timestamp", "power_kw"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Granularity {
    Hourly,
    MonthlyAverage,
    MonthlyPeak,
}

impl Granularity {
    pub fn as_str(self) -> &'static str {
        match self {
            Granularity::Hourly => "hourly",
            Granularity::MonthlyAverage => "monthly-average",
            Granularity::MonthlyPeak => "monthly-peak",
        }
    }

    pub fn is_monthly(self) -> bool {
        matches!(self, Granularity::MonthlyAverage | Granularity::MonthlyPeak)
    }
}

impl fmt::Display for Granularity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Granularity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hourly" => Ok(Granularity::Hourly),
            "monthly-average" | "monthly_average" => Ok(Granularity::MonthlyAverage),
            "monthly-peak" | "monthly_peak" => Ok(Granularity::MonthlyPeak),
            other => Err(format!("unknown granularity `{other}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("profile is empty")]
    Empty,
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("row {row}: field `{field}`: {message}")]
    Malformed {
        row: usize,
        field: &'static str,
        message: String,
    },
    #[error("row {row}: negative power {value} kW")]
    NegativePower { row: usize, value: f64 },
    #[error("row {row}: timestamp is not after the previous one")]
    NonMonotonic { row: usize },
    #[error("zero peak")]
    ZeroPeak,
    #[error("month {0} not present in profile")]
    MissingMonth(u32),
    #[error("zero base (month {0})")]
    ZeroBase(u32),
    #[error("wrong granularity: expected {expected}, found {found}")]
    WrongGranularity {
        expected: &'static str,
        found: Granularity,
    },
    #[error("not a single hourly day: {0}")]
    NotHourlyDay(String),
    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub timestamp: NaiveDateTime,
    pub power_kw: f64,
}

impl Sample {
    pub fn new(timestamp: NaiveDateTime, power_kw: f64) -> Self {
        Sample {
            timestamp,
            power_kw,
        }
    }
}

/// A timestamped power series in kW.
///
/// Profiles built through [`LoadProfile::new`] or [`parse_profile`] are
/// non-empty with strictly increasing timestamps and non-negative power.
/// The halves of a [`seasonal_split`] keep the ordering and sign invariants
/// but may be empty.
#[derive(Clone, Debug, PartialEq)]
pub struct LoadProfile {
    label: String,
    granularity: Granularity,
    samples: Vec<Sample>,
}

impl LoadProfile {
    pub fn new(
        label: impl Into<String>,
        granularity: Granularity,
        samples: Vec<Sample>,
    ) -> Result<Self, ProfileError> {
        if samples.is_empty() {
            return Err(ProfileError::Empty);
        }
        for (i, s) in samples.iter().enumerate() {
            if !s.power_kw.is_finite() {
                return Err(ProfileError::Malformed {
                    row: i + 1,
                    field: "power_kw",
                    message: format!("power {} is not finite", s.power_kw),
                });
            }
            if s.power_kw < 0.0 {
                return Err(ProfileError::NegativePower {
                    row: i + 1,
                    value: s.power_kw,
                });
            }
            if i > 0 && s.timestamp <= samples[i - 1].timestamp {
                return Err(ProfileError::NonMonotonic { row: i + 1 });
            }
        }
        Ok(LoadProfile {
            label: label.into(),
            granularity,
            samples,
        })
    }

    /// Hourly profile starting at midnight of `date`, one sample per value.
    pub fn hourly_from_values(
        label: impl Into<String>,
        date: NaiveDate,
        values: &[f64],
    ) -> Result<Self, ProfileError> {
        let start = date.and_time(NaiveTime::MIN);
        let samples = values
            .iter()
            .enumerate()
            .map(|(h, &p)| Sample::new(start + chrono::Duration::hours(h as i64), p))
            .collect();
        LoadProfile::new(label, Granularity::Hourly, samples)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn powers(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.power_kw)
    }

    /// Largest power, or `None` when empty.
    pub fn peak_kw(&self) -> Option<f64> {
        self.powers().reduce(f64::max)
    }

    pub fn mean_kw(&self) -> Option<f64> {
        if self.samples.is_empty() {
            None
        } else {
            Some(self.powers().sum::<f64>() / self.samples.len() as f64)
        }
    }

    /// Every power multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self, ProfileError> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(ProfileError::InvalidScale(factor));
        }
        Ok(LoadProfile {
            label: self.label.clone(),
            granularity: self.granularity,
            samples: self
                .samples
                .iter()
                .map(|s| Sample::new(s.timestamp, s.power_kw * factor))
                .collect(),
        })
    }

    /// Writes the profile in the CSV schema [`parse_profile`] reads.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("timestamp,power_kw\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{}\n",
                s.timestamp.format("%Y-%m-%dT%H:%M"),
                s.power_kw
            ));
        }
        out
    }

    fn peak_nonzero(&self) -> Result<f64, ProfileError> {
        match self.peak_kw() {
            None => Err(ProfileError::Empty),
            Some(p) if p > 0.0 => Ok(p),
            Some(_) => Err(ProfileError::ZeroPeak),
        }
    }
}

const DATETIME_FORMATS: [&str; 4] = [
    "%Y-%m-%dT%H:%M:%S",
    "%Y-%m-%dT%H:%M",
    "%Y-%m-%d %H:%M:%S",
    "%Y-%m-%d %H:%M",
];

/// Parses an ISO-8601 date or date-time; a bare date means midnight and a
/// bare `YYYY-MM` means the first of the month.
pub fn parse_timestamp(text: &str) -> Option<NaiveDateTime> {
    let text = text.trim().trim_end_matches('Z');
    for fmt in DATETIME_FORMATS {
        if let Ok(t) = NaiveDateTime::parse_from_str(text, fmt) {
            return Some(t);
        }
    }
    if let Ok(d) = NaiveDate::parse_from_str(text, "%Y-%m-%d") {
        return Some(d.and_time(NaiveTime::MIN));
    }
    NaiveDate::parse_from_str(&format!("{text}-01"), "%Y-%m-%d")
        .ok()
        .map(|d| d.and_time(NaiveTime::MIN))
}

/// Reads a `timestamp,power_kw` CSV.
///
/// With `granularity = None` the profile is taken as monthly averages when
/// every timestamp is midnight on the first of a month and consecutive
/// samples are at least 28 days apart, and as hourly otherwise.
pub fn parse_profile<R: Read>(
    source: R,
    label: impl Into<String>,
    granularity: Option<Granularity>,
) -> Result<LoadProfile, ProfileError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(source);
    let headers = reader.headers()?.clone();
    let column = |name: &'static str| {
        headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(name))
            .ok_or(ProfileError::MissingColumn(name))
    };
    if headers.iter().all(|h| h.is_empty()) {
        return Err(ProfileError::Empty);
    }
    let (ts_col, kw_col) = (column(PROFILE_COLUMNS[0])?, column(PROFILE_COLUMNS[1])?);

    let mut samples = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let ts_text = record.get(ts_col).unwrap_or("");
        let timestamp = parse_timestamp(ts_text).ok_or_else(|| ProfileError::Malformed {
            row,
            field: "timestamp",
            message: format!("`{ts_text}` is not an ISO-8601 timestamp"),
        })?;
        let kw_text = record.get(kw_col).unwrap_or("");
        let power_kw = kw_text
            .parse::<f64>()
            .map_err(|_| ProfileError::Malformed {
                row,
                field: "power_kw",
                message: format!("`{kw_text}` is not a number"),
            })?;
        samples.push(Sample::new(timestamp, power_kw));
    }

    let granularity = granularity.unwrap_or_else(|| infer_granularity(&samples));
    LoadProfile::new(label, granularity, samples)
}

fn infer_granularity(samples: &[Sample]) -> Granularity {
    let month_starts = samples
        .iter()
        .all(|s| s.timestamp.day() == 1 && s.timestamp.time() == NaiveTime::MIN);
    let spaced = samples
        .windows(2)
        .all(|w| (w[1].timestamp - w[0].timestamp).num_days() >= 28);
    if !samples.is_empty() && month_starts && spaced {
        Granularity::MonthlyAverage
    } else {
        Granularity::Hourly
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizedSample {
    pub timestamp: NaiveDateTime,
    pub fraction: f64,
}

/// A profile divided by its own peak.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizedProfile {
    pub label: String,
    pub peak_kw: f64,
    pub samples: Vec<NormalizedSample>,
}

impl NormalizedProfile {
    pub fn fractions(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.fraction)
    }

    /// Reinterprets the fractions as a kW profile.
    pub fn to_profile(&self, granularity: Granularity) -> LoadProfile {
        LoadProfile {
            label: self.label.clone(),
            granularity,
            samples: self
                .samples
                .iter()
                .map(|s| Sample::new(s.timestamp, s.fraction))
                .collect(),
        }
    }
}

/// Divides every sample by the profile peak. Fractions lie in `[0, 1]` and the
/// peak sample maps to exactly 1.
pub fn normalize(profile: &LoadProfile) -> Result<NormalizedProfile, ProfileError> {
    let peak = profile.peak_nonzero()?;
    Ok(NormalizedProfile {
        label: profile.label.clone(),
        peak_kw: peak,
        samples: profile
            .samples
            .iter()
            .map(|s| NormalizedSample {
                timestamp: s.timestamp,
                fraction: s.power_kw / peak,
            })
            .collect(),
    })
}

/// Mean power over peak power, in `(0, 1]`.
pub fn peak_average_ratio(profile: &LoadProfile) -> Result<f64, ProfileError> {
    let peak = profile.peak_nonzero()?;
    let mean = profile.mean_kw().ok_or(ProfileError::Empty)?;
    Ok(mean / peak)
}

/// Mean power of each calendar month present in the profile, keyed 1..=12.
pub fn monthly_values(profile: &LoadProfile) -> BTreeMap<u32, f64> {
    let mut acc: BTreeMap<u32, (f64, usize)> = BTreeMap::new();
    for s in &profile.samples {
        let e = acc.entry(s.timestamp.month()).or_insert((0.0, 0));
        e.0 += s.power_kw;
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(m, (sum, n))| (m, sum / n as f64))
        .collect()
}

/// Percentage change of a monthly profile from `from_month` to `to_month`.
///
/// Several samples in the same calendar month (multi-year input) are averaged.
pub fn monthly_growth(
    profile: &LoadProfile,
    from_month: u32,
    to_month: u32,
) -> Result<f64, ProfileError> {
    if !profile.granularity.is_monthly() {
        return Err(ProfileError::WrongGranularity {
            expected: "monthly",
            found: profile.granularity,
        });
    }
    let months = monthly_values(profile);
    let from = *months
        .get(&from_month)
        .ok_or(ProfileError::MissingMonth(from_month))?;
    let to = *months
        .get(&to_month)
        .ok_or(ProfileError::MissingMonth(to_month))?;
    if from == 0.0 {
        return Err(ProfileError::ZeroBase(from_month));
    }
    Ok(100.0 * (to - from) / from)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeasonalSplit {
    pub winter: LoadProfile,
    pub summer: LoadProfile,
}

impl SeasonalSplit {
    pub fn get(&self, season: Season) -> &LoadProfile {
        match season {
            Season::Winter => &self.winter,
            Season::Summer => &self.summer,
        }
    }
}

/// Partitions samples by the season of their month. Either half may be empty.
pub fn seasonal_split(profile: &LoadProfile) -> SeasonalSplit {
    let (winter, summer): (Vec<Sample>, Vec<Sample>) = profile
        .samples
        .iter()
        .partition(|s| Season::of_month(s.timestamp.month()) == Some(Season::Winter));
    let part = |suffix: &str, samples| LoadProfile {
        label: format!("{} ({suffix})", profile.label),
        granularity: profile.granularity,
        samples,
    };
    SeasonalSplit {
        winter: part("winter", winter),
        summer: part("summer", summer),
    }
}

/// Checks that `profile` is one calendar day of on-the-hour samples and
/// returns `(hour, kW)` pairs.
pub fn hourly_day(profile: &LoadProfile) -> Result<Vec<(usize, f64)>, ProfileError> {
    if profile.granularity != Granularity::Hourly {
        return Err(ProfileError::WrongGranularity {
            expected: "hourly",
            found: profile.granularity,
        });
    }
    let first = profile.samples.first().ok_or(ProfileError::Empty)?;
    let date = first.timestamp.date();
    profile
        .samples
        .iter()
        .map(|s| {
            let t = s.timestamp;
            if t.date() != date {
                Err(ProfileError::NotHourlyDay(format!(
                    "samples span {date} and {}",
                    t.date()
                )))
            } else if t.minute() != 0 || t.second() != 0 || t.nanosecond() != 0 {
                Err(ProfileError::NotHourlyDay(format!(
                    "sample at {t} is not on the hour"
                )))
            } else {
                Ok((t.hour() as usize, s.power_kw))
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DailyExtrema {
    pub peak_hour: usize,
    pub trough_hour: usize,
}

/// Hours of maximum and minimum power in one hourly day; earliest hour wins ties.
pub fn daily_extrema(profile: &LoadProfile) -> Result<DailyExtrema, ProfileError> {
    let hours = hourly_day(profile)?;
    let mut peak = hours[0];
    let mut trough = hours[0];
    for &(h, p) in &hours[1..] {
        if p > peak.1 {
            peak = (h, p);
        }
        if p < trough.1 {
            trough = (h, p);
        }
    }
    Ok(DailyExtrema {
        peak_hour: peak.0,
        trough_hour: trough.0,
    })
}
