//! CSV and JSON renderings of the library's results.
//!
//! Composition tables are rendered with display rounding (Wh and percent to
//! one decimal, kWh/month to two) unless [`Precision::Full`] is asked for.
//! Everything else is written at full precision. Nothing here embeds
//! timestamps or other run metadata, so identical inputs give identical bytes.

use indexmap::IndexMap;
use serde::Serialize;

use crate::catalog::Season;
use crate::composition::{CompositionReport, SeasonalConsumptionTable};
use crate::profile::{DailyExtrema, LoadProfile, NormalizedProfile};
use crate::reconcile::{HourlyAttribution, ReconciliationResult};
use crate::synth::SynthDay;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Precision {
    #[default]
    Display,
    Full,
}

/// Rounds half away from zero to `decimals` places.
///
/// A relative nudge of a few ulps absorbs binary representation error, so
/// `2213.7000000000003` renders as `2213.7` and `0.05` as `0.1`.
pub fn round_half_up(x: f64, decimals: u32) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let factor = 10f64.powi(decimals as i32);
    let scaled = x.abs() * factor;
    let nudged = scaled + scaled * 4.0 * f64::EPSILON;
    (nudged + 0.5).floor() / factor * x.signum()
}

impl Precision {
    fn apply(self, x: f64, decimals: u32) -> f64 {
        match self {
            Precision::Display => round_half_up(x, decimals),
            Precision::Full => x,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PieSlice {
    pub label: String,
    pub percent: f64,
}

/// Pie-chart data, one slice per activity in report order.
pub fn pie_slices(report: &CompositionReport, precision: Precision) -> Vec<PieSlice> {
    report
        .shares
        .iter()
        .map(|(label, &p)| PieSlice {
            label: label.clone(),
            percent: precision.apply(p, 1),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CompositionRow {
    pub activity: String,
    pub season: Season,
    pub per_unit_wh_day: f64,
    pub household_wh_day: f64,
    pub share_pct: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeasonDoc {
    pub season: Season,
    pub days_per_month: f64,
    pub daily_total_wh: f64,
    pub monthly_total_kwh: f64,
    pub rows: Vec<CompositionRow>,
    pub pie: Vec<PieSlice>,
}

/// Output of the `composition` command.
#[derive(Clone, Debug, Serialize)]
pub struct CompositionDoc {
    pub seasons: Vec<SeasonDoc>,
    /// Summer minus winter share per activity; only when both seasons are present.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deltas_pp: Option<IndexMap<String, f64>>,
}

pub fn season_doc(
    table: &SeasonalConsumptionTable,
    report: &CompositionReport,
    precision: Precision,
) -> SeasonDoc {
    let rows = table
        .rows
        .iter()
        .map(|r| CompositionRow {
            activity: r.activity.clone(),
            season: r.season,
            per_unit_wh_day: precision.apply(r.per_unit_daily_wh, 1),
            household_wh_day: precision.apply(r.household_daily_wh, 1),
            share_pct: precision.apply(report.shares[&r.activity], 1),
        })
        .collect();
    SeasonDoc {
        season: table.season,
        days_per_month: table.days_per_month,
        daily_total_wh: precision.apply(table.daily_total_wh, 1),
        monthly_total_kwh: precision.apply(table.monthly_total_kwh, 2),
        rows,
        pie: pie_slices(report, precision),
    }
}

pub fn composition_doc(
    seasons: &[(SeasonalConsumptionTable, CompositionReport)],
    precision: Precision,
) -> CompositionDoc {
    let docs: Vec<SeasonDoc> = seasons
        .iter()
        .map(|(t, r)| season_doc(t, r, precision))
        .collect();
    let winter = seasons.iter().find(|(t, _)| t.season == Season::Winter);
    let summer = seasons.iter().find(|(t, _)| t.season == Season::Summer);
    let deltas_pp = match (winter, summer) {
        (Some((_, w)), Some((_, s))) => Some(
            w.shares
                .iter()
                .map(|(k, wv)| (k.clone(), precision.apply(s.shares[k] - wv, 1)))
                .collect(),
        ),
        _ => None,
    };
    CompositionDoc {
        seasons: docs,
        deltas_pp,
    }
}

pub fn composition_csv(doc: &CompositionDoc) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for season in &doc.seasons {
        for row in &season.rows {
            w.serialize(row).expect("in-memory csv write");
        }
    }
    into_string(w)
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn into_string(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8")
}

pub fn synth_csv(days: &[SynthDay]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["season", "hour", "activity", "wh"])
        .unwrap();
    for day in days {
        for (h, _) in day.total_wh.iter().enumerate() {
            for a in &day.activities {
                w.write_record([
                    day.season.as_str(),
                    &h.to_string(),
                    &a.activity,
                    &a.hourly_wh[h].to_string(),
                ])
                .unwrap();
            }
        }
    }
    into_string(w)
}

#[derive(Serialize)]
pub struct SynthDoc<'a> {
    pub season: Season,
    pub daily_total_wh: f64,
    pub total_wh: &'a [f64],
    pub activities: &'a [crate::synth::ActivityDay],
}

pub fn synth_docs(days: &[SynthDay]) -> Vec<SynthDoc<'_>> {
    days.iter()
        .map(|d| SynthDoc {
            season: d.season,
            daily_total_wh: d.daily_total_wh(),
            total_wh: &d.total_wh,
            activities: &d.activities,
        })
        .collect()
}

pub fn attribution_csv(attr: &HourlyAttribution) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["hour", "activity", "kw"]).unwrap();
    for h in &attr.hours {
        for (a, kw) in attr.activities.iter().zip(&h.kw) {
            w.write_record([h.hour.to_string().as_str(), a, &kw.to_string()])
                .unwrap();
        }
    }
    into_string(w)
}

#[derive(Serialize)]
pub struct AdjustedRow<'a> {
    pub activity: &'a str,
    pub per_unit_wh_day: f64,
    pub household_wh_day: f64,
}

#[derive(Serialize)]
pub struct ReconciliationDoc<'a> {
    pub season: Season,
    pub scale_factor: f64,
    pub relative_gap: f64,
    pub gap_warning: bool,
    pub measured_energy_kwh: f64,
    pub bottom_up_energy_kwh: f64,
    pub days_per_month: f64,
    pub adjusted_daily_total_wh: f64,
    pub adjusted_monthly_total_kwh: f64,
    pub adjusted_rows: Vec<AdjustedRow<'a>>,
    /// Shares of the attributed measured energy, percent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attributed_shares: Option<&'a IndexMap<String, f64>>,
}

pub fn reconciliation_doc<'a>(
    result: &'a ReconciliationResult,
    attributed: Option<&'a CompositionReport>,
) -> ReconciliationDoc<'a> {
    let t = &result.adjusted_table;
    ReconciliationDoc {
        season: result.season,
        scale_factor: result.scale_factor,
        relative_gap: result.relative_gap,
        gap_warning: result.gap_warning,
        measured_energy_kwh: result.measured_energy_kwh,
        bottom_up_energy_kwh: result.bottom_up_energy_kwh,
        days_per_month: t.days_per_month,
        adjusted_daily_total_wh: t.daily_total_wh,
        adjusted_monthly_total_kwh: t.monthly_total_kwh,
        adjusted_rows: t
            .rows
            .iter()
            .map(|r| AdjustedRow {
                activity: &r.activity,
                per_unit_wh_day: r.per_unit_daily_wh,
                household_wh_day: r.household_daily_wh,
            })
            .collect(),
        attributed_shares: attributed.map(|r| &r.shares),
    }
}

#[derive(Serialize)]
pub struct SplitSummary {
    pub samples: usize,
    pub mean_kw: Option<f64>,
    pub peak_kw: Option<f64>,
}

impl SplitSummary {
    pub fn of(p: &LoadProfile) -> Self {
        SplitSummary {
            samples: p.len(),
            mean_kw: p.mean_kw(),
            peak_kw: p.peak_kw(),
        }
    }
}

#[derive(Serialize)]
pub struct Growth {
    pub from_month: u32,
    pub to_month: u32,
    pub percent: f64,
}

/// Output of the `profile-stats` command.
#[derive(Serialize)]
pub struct ProfileStatsDoc<'a> {
    pub label: &'a str,
    pub granularity: crate::profile::Granularity,
    pub samples: usize,
    pub peak_kw: f64,
    pub mean_kw: f64,
    pub peak_average_ratio: f64,
    /// Only for a single hourly day.
    pub extrema: Option<DailyExtrema>,
    pub winter: SplitSummary,
    pub summer: SplitSummary,
    /// Every ordered pair of distinct months with a non-zero base; monthly profiles only.
    pub monthly_growth: Vec<Growth>,
    pub normalized: &'a NormalizedProfile,
}

pub fn normalized_csv(profile: &LoadProfile, normalized: &NormalizedProfile) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["timestamp", "power_kw", "fraction"])
        .unwrap();
    for (s, n) in profile.samples().iter().zip(&normalized.samples) {
        w.write_record([
            s.timestamp.format("%Y-%m-%dT%H:%M").to_string(),
            s.power_kw.to_string(),
            n.fraction.to_string(),
        ])
        .unwrap();
    }
    into_string(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_paper_catalog;
    use crate::composition::seasonal_table;

    #[test]
    fn rounding() {
        assert_eq!(round_half_up(2213.7000000000003, 1), 2213.7);
        assert_eq!(round_half_up(0.05, 1), 0.1);
        assert_eq!(round_half_up(0.25, 1), 0.3);
        assert_eq!(round_half_up(61.8857, 1), 61.9);
        assert_eq!(round_half_up(2714.691, 2), 2714.69);
        assert_eq!(round_half_up(-1.25, 1), -1.3);
        assert_eq!(round_half_up(19782.0, 1), 19782.0);
        assert_eq!(round_half_up(1.04999, 1), 1.0);
    }

    #[test]
    fn composition_csv_header_and_rows() {
        let cat = builtin_paper_catalog();
        let t = seasonal_table(&cat, Season::Summer, 30).unwrap();
        let r = t.composition().unwrap();
        let doc = composition_doc(&[(t, r)], Precision::Display);
        assert!(doc.deltas_pp.is_none());
        let csv = composition_csv(&doc);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("activity,season,per_unit_wh_day,household_wh_day,share_pct")
        );
        assert_eq!(
            lines.next(),
            Some("Heating (oil-filled),summer,1125.0,1125.0,1.2")
        );
        assert_eq!(
            lines.next(),
            Some("Air conditioning,summer,11200.0,56000.0,61.9")
        );
        assert_eq!(csv.lines().count(), 16);
    }

    #[test]
    fn pie_matches_shares() {
        let cat = builtin_paper_catalog();
        let r = seasonal_table(&cat, Season::Winter, 30)
            .unwrap()
            .composition()
            .unwrap();
        let pie = pie_slices(&r, Precision::Full);
        assert_eq!(pie.len(), 15);
        assert!((pie.iter().map(|p| p.percent).sum::<f64>() - 100.0).abs() < 1e-9);
        let json = to_json(&pie);
        assert!(json.contains("\"label\": \"Lighting\""));
    }
}
