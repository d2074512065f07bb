//! Synthetic measured profiles with known statistics.
//!
//! The measured substation series behind the observations these fixtures
//! encode is not public, so each fixture is built to hit one statistic
//! exactly: Feb→Jun growth of +130 %, a mean/peak ratio of 0.86, and a
//! daily curve peaking at 15:00 with its minimum at 06:00. The same data
//! ships as CSV under `crates/core/data/`.

use chrono::{NaiveDate, NaiveTime};

use crate::profile::{Granularity, LoadProfile, Sample};

pub const FIXTURE_YEAR: i32 = 2016;

/// Monthly average kW for January through December. Feb = 100, Jun = 230.
pub const ANNUAL_MONTHLY_KW: [f64; 12] = [
    105.0, 100.0, 120.0, 160.0, 210.0, 230.0, 228.0, 220.0, 190.0, 150.0, 115.0, 104.0,
];

/// Hourly kW of a summer weekday. Maximum at 15:00, minimum at 06:00.
#[rustfmt::skip]
pub const DAILY_HOURLY_KW: [f64; 24] = [
    595.0, 561.0, 527.0, 501.5, 484.5, 476.0, 467.5, 493.0,
    535.5, 595.0, 654.5, 714.0, 765.0, 807.5, 833.0, 850.0,
    841.5, 824.5, 807.5, 790.5, 765.0, 731.0, 680.0, 637.5,
];

/// Hourly kW whose mean is 86 % of its peak: twelve hours at 100, twelve at 72.
pub fn peak_ratio_values() -> [f64; 24] {
    std::array::from_fn(|h| if h % 2 == 0 { 100.0 } else { 72.0 })
}

pub fn annual_profile() -> LoadProfile {
    let samples = ANNUAL_MONTHLY_KW
        .iter()
        .enumerate()
        .map(|(i, &kw)| {
            let date = NaiveDate::from_ymd_opt(FIXTURE_YEAR, i as u32 + 1, 1).unwrap();
            Sample::new(date.and_time(NaiveTime::MIN), kw)
        })
        .collect();
    LoadProfile::new("annual fixture", Granularity::MonthlyAverage, samples)
        .expect("fixture is valid")
}

pub fn daily_profile() -> LoadProfile {
    let date = NaiveDate::from_ymd_opt(FIXTURE_YEAR, 6, 1).unwrap();
    LoadProfile::hourly_from_values("daily fixture", date, &DAILY_HOURLY_KW)
        .expect("fixture is valid")
}

pub fn peak_ratio_profile() -> LoadProfile {
    let date = NaiveDate::from_ymd_opt(FIXTURE_YEAR, 6, 1).unwrap();
    LoadProfile::hourly_from_values("peak ratio fixture", date, &peak_ratio_values())
        .expect("fixture is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{daily_extrema, monthly_growth, parse_profile, peak_average_ratio};

    #[test]
    fn fixtures_hit_their_statistics() {
        assert_eq!(monthly_growth(&annual_profile(), 2, 6).unwrap(), 130.0);
        let ex = daily_extrema(&daily_profile()).unwrap();
        assert_eq!((ex.peak_hour, ex.trough_hour), (15, 6));
        assert!((peak_average_ratio(&peak_ratio_profile()).unwrap() - 0.86).abs() <= 1e-12);
    }

    #[test]
    fn shipped_csv_files_match() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
        for (file, fixture) in [
            ("annual_profile.csv", annual_profile()),
            ("daily_profile.csv", daily_profile()),
            ("peak_ratio_profile.csv", peak_ratio_profile()),
        ] {
            let text = std::fs::read_to_string(format!("{dir}/{file}")).unwrap();
            assert_eq!(text, fixture.to_csv(), "{file}");
            let parsed = parse_profile(text.as_bytes(), fixture.label(), None).unwrap();
            assert_eq!(parsed, fixture, "{file}");
        }
    }
}
