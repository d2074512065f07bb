//! Appliance catalog: the bottom-up parameters of one household archetype.
//!
//! Each [`ApplianceSpec`] carries per-season time of use and unit counts,
//! run/idle wattage and the run/idle split of the time of use. A [`Catalog`]
//! is an ordered, validated, non-empty collection of specs with unique
//! activity names.
//!
//! Catalogs are read from CSV or JSON using the column names in
//! [`CATALOG_COLUMNS`].

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Tolerance on `run_fraction + idle_fraction == 1` for binary floating point.
pub const FRACTION_SUM_TOLERANCE: f64 = 1e-12;

/// Upper bound of a daily time of use, in hours.
pub const MAX_TOU_HOURS: f64 = 24.0;

/// Column names shared by the CSV header and the JSON object keys.
pub const CATALOG_COLUMNS: [&str; 10] = [
    "activity",
    "tou_winter",
    "tou_summer",
    "units_winter",
    "units_summer",
    "run_watts",
    "idle_watts",
    "operation",
    "run_fraction",
    "idle_fraction",
];

const WATER_PUMP: &str = "Water pump";
const WATER_PUMP_ALIASES: [&str; 6] = [
    "water pump",
    "water pump (dynamo)",
    "water bump",
    "water bump (dynamo)",
    "water bumb",
    "water bumb (dynamo)",
];

/// The two seasons of the model.
///
/// Winter covers October through February, summer March through September.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Season {
    Winter,
    Summer,
}

impl Season {
    pub const ALL: [Season; 2] = [Season::Winter, Season::Summer];

    /// Season of a calendar month (1 = January). `None` outside 1..=12.
    pub fn of_month(month: u32) -> Option<Season> {
        match month {
            10..=12 | 1 | 2 => Some(Season::Winter),
            3..=9 => Some(Season::Summer),
            _ => None,
        }
    }

    /// Calendar months belonging to the season, in calendar order.
    pub fn months(self) -> &'static [u32] {
        match self {
            Season::Winter => &[1, 2, 10, 11, 12],
            Season::Summer => &[3, 4, 5, 6, 7, 8, 9],
        }
    }

    /// 0 for winter, 1 for summer.
    pub fn index(self) -> usize {
        match self {
            Season::Winter => 0,
            Season::Summer => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Season::Winter => "winter",
            Season::Summer => "summer",
        }
    }
}

impl fmt::Display for Season {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Season {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "winter" | "0" => Ok(Season::Winter),
            "summer" | "1" => Ok(Season::Summer),
            other => Err(format!("unknown season `{other}`")),
        }
    }
}

/// A value per season.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PerSeason<T> {
    pub winter: T,
    pub summer: T,
}

impl<T: Copy> PerSeason<T> {
    pub fn new(winter: T, summer: T) -> Self {
        PerSeason { winter, summer }
    }

    pub fn both(value: T) -> Self {
        PerSeason {
            winter: value,
            summer: value,
        }
    }

    pub fn get(&self, season: Season) -> T {
        match season {
            Season::Winter => self.winter,
            Season::Summer => self.summer,
        }
    }

    pub fn set(&mut self, season: Season, value: T) {
        match season {
            Season::Winter => self.winter = value,
            Season::Summer => self.summer = value,
        }
    }
}

/// How directly occupant behaviour drives an appliance's schedule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OperationClass {
    Manual,
    SemiAuto,
    Auto,
}

impl OperationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            OperationClass::Manual => "Manual",
            OperationClass::SemiAuto => "Semi Auto",
            OperationClass::Auto => "Auto",
        }
    }
}

impl fmt::Display for OperationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperationClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let folded = s.split_whitespace().collect::<Vec<_>>().join(" ");
        match folded.to_ascii_lowercase().as_str() {
            "manual" => Ok(OperationClass::Manual),
            "semi auto" | "semi-auto" => Ok(OperationClass::SemiAuto),
            "auto" => Ok(OperationClass::Auto),
            _ => Err(format!("unknown operation class `{}`", s.trim())),
        }
    }
}

impl Serialize for OperationClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for OperationClass {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One appliance category of the household.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApplianceSpec {
    pub activity: String,
    /// Daily time of use in hours.
    pub tou: PerSeason<f64>,
    /// Units per household.
    pub units: PerSeason<u32>,
    /// Rated (run-mode) power in W.
    pub run_watts: f64,
    /// Standby (idle-mode) power in W.
    pub idle_watts: f64,
    /// Share of the time of use spent at rated power.
    pub run_fraction: f64,
    /// Share of the time of use spent idle.
    pub idle_fraction: f64,
    pub operation: OperationClass,
}

/// The rule a [`Violation`] breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `run_fraction + idle_fraction = 1`.
    FractionSum,
    /// Each fraction lies in `[0, 1]`.
    FractionRange,
    /// `0 <= tou <= 24`.
    TouRange,
    /// Wattages are non-negative.
    NonNegativeWatts,
    /// `run_watts >= idle_watts`.
    IdleAboveRun,
    /// Every numeric field is finite.
    NonFinite,
    /// The activity name is not blank.
    EmptyName,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::FractionSum => "fraction-sum rule",
            Rule::FractionRange => "fraction range",
            Rule::TouRange => "time-of-use range",
            Rule::NonNegativeWatts => "non-negative wattage",
            Rule::IdleAboveRun => "idle rating above run rating",
            Rule::NonFinite => "finite value",
            Rule::EmptyName => "activity name",
        })
    }
}

/// A broken [`ApplianceSpec`] invariant.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub field: &'static str,
    pub rule: Rule,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}): {}", self.field, self.rule, self.detail)
    }
}

/// Checks every [`ApplianceSpec`] invariant and reports all that fail.
pub fn validate_spec(spec: &ApplianceSpec) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let mut push = |field, rule, detail: String| {
        out.push(Violation {
            field,
            rule,
            detail,
        })
    };

    if spec.activity.trim().is_empty() {
        push("activity", Rule::EmptyName, "activity name is empty".into());
    }

    for season in Season::ALL {
        let field = match season {
            Season::Winter => "tou_winter",
            Season::Summer => "tou_summer",
        };
        let tou = spec.tou.get(season);
        if !tou.is_finite() {
            push(field, Rule::NonFinite, format!("ToU is not finite ({tou})"));
        } else if tou < 0.0 {
            push(
                field,
                Rule::TouRange,
                format!("ToU is negative ({tou} h/day)"),
            );
        } else if tou > MAX_TOU_HOURS {
            push(
                field,
                Rule::TouRange,
                format!("ToU exceeds 24 h/day ({tou})"),
            );
        }
    }

    let mut watts_ok = true;
    for (field, w) in [
        ("run_watts", spec.run_watts),
        ("idle_watts", spec.idle_watts),
    ] {
        if !w.is_finite() {
            watts_ok = false;
            push(
                field,
                Rule::NonFinite,
                format!("wattage is not finite ({w})"),
            );
        } else if w < 0.0 {
            watts_ok = false;
            push(
                field,
                Rule::NonNegativeWatts,
                format!("wattage is negative ({w} W)"),
            );
        }
    }
    if watts_ok && spec.idle_watts > spec.run_watts {
        push(
            "idle_watts",
            Rule::IdleAboveRun,
            format!(
                "idle rating {} W exceeds run rating {} W",
                spec.idle_watts, spec.run_watts
            ),
        );
    }

    let mut fractions_finite = true;
    for (field, g) in [
        ("run_fraction", spec.run_fraction),
        ("idle_fraction", spec.idle_fraction),
    ] {
        if !g.is_finite() {
            fractions_finite = false;
            push(
                field,
                Rule::NonFinite,
                format!("fraction is not finite ({g})"),
            );
        } else if !(0.0..=1.0).contains(&g) {
            push(
                field,
                Rule::FractionRange,
                format!("fraction {g} outside [0, 1]"),
            );
        }
    }
    let sum = spec.run_fraction + spec.idle_fraction;
    if fractions_finite && (sum - 1.0).abs() > FRACTION_SUM_TOLERANCE {
        push(
            "run_fraction",
            Rule::FractionSum,
            format!("run_fraction + idle_fraction must equal 1 (sum {sum})"),
        );
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Where a catalog's numbers come from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSource {
    pub origin: Option<String>,
    pub year: Option<i32>,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog has no entries")]
    NoEntries,
    #[error("missing column `{0}`")]
    MissingColumn(&'static str),
    #[error("row {row}: field `{field}`: {message}")]
    Malformed {
        row: usize,
        field: String,
        message: String,
    },
    #[error("row {row}: duplicate activity `{name}`")]
    DuplicateActivity { row: usize, name: String },
    #[error("row {row} ({activity}): {}", join_violations(.violations))]
    Invalid {
        row: usize,
        activity: String,
        violations: Vec<Violation>,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A validated, ordered collection of appliance specs.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalog {
    specs: Vec<ApplianceSpec>,
    source: CatalogSource,
}

impl Catalog {
    /// Validates every spec, rejects duplicates (case-insensitive) and empty input.
    /// Row numbers in errors are 1-based positions in `specs`.
    pub fn new(specs: Vec<ApplianceSpec>) -> Result<Self, CatalogError> {
        if specs.is_empty() {
            return Err(CatalogError::NoEntries);
        }
        let mut seen = std::collections::HashSet::new();
        for (i, spec) in specs.iter().enumerate() {
            if let Err(violations) = validate_spec(spec) {
                return Err(CatalogError::Invalid {
                    row: i + 1,
                    activity: spec.activity.clone(),
                    violations,
                });
            }
            if !seen.insert(spec.activity.trim().to_lowercase()) {
                return Err(CatalogError::DuplicateActivity {
                    row: i + 1,
                    name: spec.activity.clone(),
                });
            }
        }
        Ok(Catalog {
            specs,
            source: CatalogSource::default(),
        })
    }

    pub fn with_source(mut self, origin: impl Into<String>, year: Option<i32>) -> Self {
        self.source = CatalogSource {
            origin: Some(origin.into()),
            year,
        };
        self
    }

    pub fn source(&self) -> &CatalogSource {
        &self.source
    }

    pub fn specs(&self) -> &[ApplianceSpec] {
        &self.specs
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ApplianceSpec> {
        self.specs.iter()
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    /// Always false for a constructed catalog.
    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    /// Looks an activity up by name, case-insensitively and through aliases.
    pub fn get(&self, name: &str) -> Option<&ApplianceSpec> {
        let wanted = canonical_activity_name(name).to_lowercase();
        self.specs
            .iter()
            .find(|s| s.activity.trim().to_lowercase() == wanted)
    }

    pub fn activity_names(&self) -> impl Iterator<Item = &str> {
        self.specs.iter().map(|s| s.activity.as_str())
    }

    pub fn into_specs(self) -> Vec<ApplianceSpec> {
        self.specs
    }
}

impl<'a> IntoIterator for &'a Catalog {
    type Item = &'a ApplianceSpec;
    type IntoIter = std::slice::Iter<'a, ApplianceSpec>;

    fn into_iter(self) -> Self::IntoIter {
        self.specs.iter()
    }
}

/// Trims, collapses internal whitespace and folds the water pump spellings
/// onto `"Water pump"`.
pub fn canonical_activity_name(name: &str) -> String {
    let folded = name.split_whitespace().collect::<Vec<_>>().join(" ");
    if WATER_PUMP_ALIASES.contains(&folded.to_lowercase().as_str()) {
        WATER_PUMP.to_string()
    } else {
        folded
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogFormat {
    Csv,
    Json,
}

impl CatalogFormat {
    /// Guesses the format from a file extension (`.json` or anything else as CSV).
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => CatalogFormat::Json,
            _ => CatalogFormat::Csv,
        }
    }
}

impl FromStr for CatalogFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(CatalogFormat::Csv),
            "json" => Ok(CatalogFormat::Json),
            other => Err(format!("unknown catalog format `{other}`")),
        }
    }
}

/// Parses and validates a catalog. Row order is preserved.
pub fn parse_catalog<R: Read>(source: R, format: CatalogFormat) -> Result<Catalog, CatalogError> {
    Catalog::new(read_catalog_rows(source, format)?)
}

/// Parses catalog rows without checking the spec invariants.
///
/// Field-level problems (unparseable numbers, unknown operation class) are
/// still errors; range and fraction-sum rules are left to [`validate_spec`].
pub fn read_catalog_rows<R: Read>(
    mut source: R,
    format: CatalogFormat,
) -> Result<Vec<ApplianceSpec>, CatalogError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(&text);
    if text.trim().is_empty() {
        return Err(CatalogError::NoEntries);
    }
    let rows = match format {
        CatalogFormat::Csv => read_csv_rows(text)?,
        CatalogFormat::Json => read_json_rows(text)?,
    };
    if rows.is_empty() {
        return Err(CatalogError::NoEntries);
    }
    Ok(rows)
}

fn read_csv_rows(text: &str) -> Result<Vec<ApplianceSpec>, CatalogError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers()?.clone();
    let mut index = [0usize; CATALOG_COLUMNS.len()];
    for (slot, column) in index.iter_mut().zip(CATALOG_COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h.eq_ignore_ascii_case(column))
            .ok_or(CatalogError::MissingColumn(column))?;
    }

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let row = i + 1;
        let cell = |k: usize| record.get(index[k]).unwrap_or("");
        rows.push(
            RawRow {
                row,
                activity: cell(0).to_string(),
                fields: std::array::from_fn(|k| cell(k + 1).to_string()),
            }
            .into_spec()?,
        );
    }
    Ok(rows)
}

fn read_json_rows(text: &str) -> Result<Vec<ApplianceSpec>, CatalogError> {
    let value: Value = serde_json::from_str(text)?;
    let Value::Array(items) = value else {
        return Err(CatalogError::Malformed {
            row: 0,
            field: "<root>".into(),
            message: "expected an array of objects".into(),
        });
    };
    let mut rows = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let row = i + 1;
        let Value::Object(obj) = item else {
            return Err(CatalogError::Malformed {
                row,
                field: "<row>".into(),
                message: "expected an object".into(),
            });
        };
        let text_of = |key: &str| -> Result<String, CatalogError> {
            match obj.get(key) {
                Some(Value::String(s)) => Ok(s.clone()),
                Some(Value::Number(n)) => Ok(n.to_string()),
                Some(other) => Err(CatalogError::Malformed {
                    row,
                    field: key.to_string(),
                    message: format!("unexpected value {other}"),
                }),
                None => Err(CatalogError::Malformed {
                    row,
                    field: key.to_string(),
                    message: "missing".into(),
                }),
            }
        };
        let activity = text_of(CATALOG_COLUMNS[0])?;
        let mut fields: [String; 9] = Default::default();
        for (slot, key) in fields.iter_mut().zip(&CATALOG_COLUMNS[1..]) {
            *slot = text_of(key)?;
        }
        rows.push(
            RawRow {
                row,
                activity,
                fields,
            }
            .into_spec()?,
        );
    }
    Ok(rows)
}

/// Row as text, in `CATALOG_COLUMNS` order after `activity`.
struct RawRow {
    row: usize,
    activity: String,
    fields: [String; 9],
}

impl RawRow {
    fn malformed(&self, field: &str, message: impl Into<String>) -> CatalogError {
        CatalogError::Malformed {
            row: self.row,
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn real(&self, k: usize) -> Result<f64, CatalogError> {
        let (name, text) = (CATALOG_COLUMNS[k + 1], self.fields[k].trim());
        if text.is_empty() {
            return Err(self.malformed(name, "empty value"));
        }
        text.parse::<f64>()
            .map_err(|_| self.malformed(name, format!("`{text}` is not a number")))
    }

    fn count(&self, k: usize) -> Result<u32, CatalogError> {
        let (name, text) = (CATALOG_COLUMNS[k + 1], self.fields[k].trim());
        text.parse::<u32>()
            .map_err(|_| self.malformed(name, format!("`{text}` is not a non-negative integer")))
    }

    fn into_spec(self) -> Result<ApplianceSpec, CatalogError> {
        let activity = canonical_activity_name(&self.activity);
        if activity.is_empty() {
            return Err(self.malformed("activity", "empty value"));
        }
        let operation = self.fields[6]
            .parse::<OperationClass>()
            .map_err(|e| self.malformed("operation", e))?;
        Ok(ApplianceSpec {
            activity,
            tou: PerSeason::new(self.real(0)?, self.real(1)?),
            units: PerSeason::new(self.count(2)?, self.count(3)?),
            run_watts: self.real(4)?,
            idle_watts: self.real(5)?,
            operation,
            run_fraction: self.real(7)?,
            idle_fraction: self.real(8)?,
        })
    }
}

#[derive(Serialize)]
struct CatalogRecord<'a> {
    activity: &'a str,
    tou_winter: f64,
    tou_summer: f64,
    units_winter: u32,
    units_summer: u32,
    run_watts: f64,
    idle_watts: f64,
    operation: &'static str,
    run_fraction: f64,
    idle_fraction: f64,
}

impl<'a> From<&'a ApplianceSpec> for CatalogRecord<'a> {
    fn from(s: &'a ApplianceSpec) -> Self {
        CatalogRecord {
            activity: &s.activity,
            tou_winter: s.tou.winter,
            tou_summer: s.tou.summer,
            units_winter: s.units.winter,
            units_summer: s.units.summer,
            run_watts: s.run_watts,
            idle_watts: s.idle_watts,
            operation: s.operation.as_str(),
            run_fraction: s.run_fraction,
            idle_fraction: s.idle_fraction,
        }
    }
}

/// Writes a catalog in the same schema [`parse_catalog`] reads.
pub fn serialize_catalog(catalog: &Catalog, format: CatalogFormat) -> Result<String, CatalogError> {
    match format {
        CatalogFormat::Csv => {
            let mut writer = csv::Writer::from_writer(Vec::new());
            for spec in catalog {
                writer.serialize(CatalogRecord::from(spec))?;
            }
            let bytes = writer
                .into_inner()
                .map_err(|e| CatalogError::Io(e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
        }
        CatalogFormat::Json => {
            let records: Vec<_> = catalog.iter().map(CatalogRecord::from).collect();
            let mut out = serde_json::to_string_pretty(&records)?;
            out.push('\n');
            Ok(out)
        }
    }
}

/// The 15-activity household catalog from the 2016 national household
/// appliance-usage survey, in survey order.
pub fn builtin_paper_catalog() -> Catalog {
    use OperationClass::*;

    // activity, tou w/s, units w/s, run W, idle W, operation, run/idle fraction
    type Row = (
        &'static str,
        f64,
        f64,
        u32,
        u32,
        f64,
        f64,
        OperationClass,
        f64,
        f64,
    );
    #[rustfmt::skip]
    let rows: [Row; 15] = [
        ("Heating (oil-filled)", 8.0, 1.5,  2,  1,  1500.0, 0.0,   SemiAuto, 0.5, 0.5),
        ("Air conditioning",     3.0, 10.0, 2,  5,  1800.0, 100.0, SemiAuto, 0.6, 0.4),
        ("Water heating",        14.0, 4.7, 3,  1,  1500.0, 30.0,  Auto,     0.3, 0.7),
        ("Water coolers",        10.0, 17.0, 1, 1,  250.0,  10.0,  Auto,     0.5, 0.5),
        (WATER_PUMP,             1.5, 2.1,  1,  1,  250.0,  0.0,   Auto,     1.0, 0.0),
        ("Washing & Drying",     1.3, 1.9,  2,  2,  2000.0, 0.0,   SemiAuto, 1.0, 0.0),
        ("Ironing",              1.0, 1.8,  1,  1,  1000.0, 0.0,   Manual,   1.0, 0.0),
        ("Vacuum cleaning",      1.0, 1.3,  1,  1,  1000.0, 0.0,   Manual,   1.0, 0.0),
        ("Cooking",              1.6, 1.4,  1,  1,  2150.0, 0.0,   SemiAuto, 1.0, 0.0),
        ("Electric kettle",      1.3, 2.0,  1,  1,  1800.0, 0.0,   Manual,   1.0, 0.0),
        ("Lighting",             7.3, 7.5,  50, 50, 10.0,   0.0,   Manual,   1.0, 0.0),
        ("Food preservation",    24.0, 24.0, 2, 2,  100.0,  0.0,   Auto,     1.0, 0.0),
        ("TV",                   5.3, 5.9,  1,  2,  120.0,  13.0,  Manual,   1.0, 0.0),
        ("PC",                   2.1, 2.6,  2,  2,  150.0,  7.5,   Manual,   1.0, 0.0),
        ("Gaming devices",       2.6, 3.0,  4,  4,  30.0,   7.5,   Manual,   1.0, 0.0),
    ];

    let specs = rows
        .into_iter()
        .map(
            |(activity, tou_w, tou_s, units_w, units_s, run_w, idle_w, operation, run, idle)| {
                ApplianceSpec {
                    activity: activity.to_string(),
                    tou: PerSeason::new(tou_w, tou_s),
                    units: PerSeason::new(units_w, units_s),
                    run_watts: run_w,
                    idle_watts: idle_w,
                    run_fraction: run,
                    idle_fraction: idle,
                    operation,
                }
            },
        )
        .collect();

    Catalog::new(specs)
        .expect("builtin catalog is valid")
        .with_source("Household appliance usage survey", Some(2016))
}
