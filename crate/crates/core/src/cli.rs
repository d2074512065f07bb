//! The `loadcomp` command line.
//!
//! Exit codes: 0 on success, 1 for input or validation errors (including
//! unreadable input files), 2 when an output file cannot be written.
//!
//! Payloads go to `--out` or stdout. When `--out` is given, a
//! `<out>.meta.json` sidecar records the invocation; the payload itself never
//! carries run metadata.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::catalog::{
    builtin_paper_catalog, parse_catalog, read_catalog_rows, validate_spec, ApplianceSpec, Catalog,
    CatalogFormat, Season,
};
use crate::composition::{seasonal_table_with, MonthConvention};
use crate::profile::{
    daily_extrema, monthly_values, normalize, parse_profile, peak_average_ratio, seasonal_split,
    Granularity, LoadProfile,
};
use crate::reconcile::{
    composition_from_attribution, disaggregate, measured_monthly_energy, scale_to_measured,
};
use crate::report::{self, Precision};
use crate::synth::{synth_household_day, OccupancyCurve};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

macro_rules! input_err {
    ($($t:tt)*) => { CliError::Input(format!($($t)*)) };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeasonChoice {
    Winter,
    Summer,
    Both,
}

impl SeasonChoice {
    fn seasons(self) -> &'static [Season] {
        match self {
            SeasonChoice::Winter => &[Season::Winter],
            SeasonChoice::Summer => &[Season::Summer],
            SeasonChoice::Both => &Season::ALL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "loadcomp",
    version,
    about = "Residential load composition from appliance catalogs and measured load profiles"
)]
pub struct Cli {
    /// Payload format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,

    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Days per month used for monthly totals.
    #[arg(long, global = true, default_value_t = 30,
          value_parser = clap::value_parser!(u32).range(1..))]
    pub days_per_month: u32,

    /// Use the mean calendar length of each season's months instead of --days-per-month.
    #[arg(long, global = true)]
    pub calendar_months: bool,

    /// Occupancy curve file: 24 comma-separated non-negative numbers.
    #[arg(long, global = true)]
    pub occupancy: Option<PathBuf>,

    /// Emit unrounded values in composition tables.
    #[arg(long, global = true)]
    pub full_precision: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct CatalogArgs {
    /// Catalog file (.csv or .json).
    #[arg(long)]
    pub catalog: Option<PathBuf>,

    /// Use the built-in 15-activity household catalog.
    #[arg(long)]
    pub builtin_paper: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seasonal consumption tables and composition shares.
    Composition {
        #[command(flatten)]
        catalog: CatalogArgs,
        #[arg(long, value_enum, default_value_t = SeasonChoice::Both)]
        season: SeasonChoice,
        /// Emit only pie-chart data.
        #[arg(long)]
        pie: bool,
    },
    /// Normalisation and summary statistics of a measured profile.
    ProfileStats {
        #[arg(long)]
        profile: PathBuf,
        /// hourly, monthly-average or monthly-peak; inferred when omitted.
        #[arg(long)]
        granularity: Option<Granularity>,
    },
    /// Scale the bottom-up model to a measured day and attribute each hour.
    Reconcile {
        #[command(flatten)]
        catalog: CatalogArgs,
        /// Measured hourly day (timestamp,power_kw).
        #[arg(long)]
        profile: PathBuf,
        /// Defaults to the season of the profile's date.
        #[arg(long)]
        season: Option<Season>,
        /// Measured monthly energy; defaults to the day's energy times the month length.
        #[arg(long)]
        measured_kwh_month: Option<f64>,
        /// Attribution output; defaults to `<out stem>.attribution.<ext>` beside --out.
        #[arg(long)]
        attribution_out: Option<PathBuf>,
    },
    /// Synthesise per-activity hourly energy for a household day.
    Synth {
        #[command(flatten)]
        catalog: CatalogArgs,
        #[arg(long, value_enum, default_value_t = SeasonChoice::Both)]
        season: SeasonChoice,
    },
    /// Check a catalog against the appliance invariants.
    Validate {
        #[command(flatten)]
        catalog: CatalogArgs,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    1
                }
            };
        }
    };
    let argv: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(&cli, &argv, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(
    cli: &Cli,
    argv: &[String],
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let out = Output { cli, argv };
    match &cli.command {
        Command::Composition {
            catalog,
            season,
            pie,
        } => cmd_composition(cli, &out, catalog, *season, *pie, stdout),
        Command::ProfileStats {
            profile,
            granularity,
        } => cmd_profile_stats(cli, &out, profile, *granularity, stdout),
        Command::Reconcile {
            catalog,
            profile,
            season,
            measured_kwh_month,
            attribution_out,
        } => cmd_reconcile(
            cli,
            &out,
            catalog,
            profile,
            *season,
            *measured_kwh_month,
            attribution_out.as_deref(),
            stdout,
            stderr,
        ),
        Command::Synth { catalog, season } => cmd_synth(cli, &out, catalog, *season, stdout),
        Command::Validate { catalog } => cmd_validate(cli, &out, catalog, stdout),
    }
}

struct Output<'a> {
    cli: &'a Cli,
    argv: &'a [String],
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    arguments: &'a [String],
    payload: String,
    written_unix_s: u64,
}

impl Output<'_> {
    /// Writes `payload` to `path`, or stdout when `path` is `None`.
    fn write_to(
        &self,
        path: Option<&Path>,
        payload: &str,
        stdout: &mut dyn Write,
    ) -> Result<(), CliError> {
        let Some(path) = path else {
            return stdout
                .write_all(payload.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")));
        };
        write_file(path, payload)?;
        let sidecar = Sidecar {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            arguments: self.argv,
            payload: path.display().to_string(),
            written_unix_s: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        write_file(&sidecar_path(path), &report::to_json(&sidecar))
    }

    fn write(&self, payload: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
        self.write_to(self.cli.out.as_deref(), payload, stdout)
    }
}

fn write_file(path: &Path, payload: &str) -> Result<(), CliError> {
    std::fs::write(path, payload)
        .map_err(|e| CliError::Io(format!("cannot write `{}`: {e}", path.display())))
}

/// `<path>.meta.json`
pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

fn open_input(path: &Path, what: &str) -> Result<File, CliError> {
    File::open(path).map_err(|e| input_err!("cannot read {what} `{}`: {e}", path.display()))
}

fn load_catalog(args: &CatalogArgs) -> Result<Catalog, CliError> {
    match &args.catalog {
        None => Ok(builtin_paper_catalog()),
        Some(path) => {
            let file = open_input(path, "catalog")?;
            parse_catalog(file, CatalogFormat::from_path(path))
                .map_err(|e| input_err!("catalog `{}`: {e}", path.display()))
        }
    }
}

fn load_occupancy(cli: &Cli) -> Result<OccupancyCurve, CliError> {
    match &cli.occupancy {
        None => Ok(OccupancyCurve::default()),
        Some(path) => OccupancyCurve::parse(open_input(path, "occupancy curve")?)
            .map_err(|e| input_err!("occupancy curve `{}`: {e}", path.display())),
    }
}

fn load_profile(path: &Path, granularity: Option<Granularity>) -> Result<LoadProfile, CliError> {
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_profile(open_input(path, "profile")?, label, granularity)
        .map_err(|e| input_err!("profile `{}`: {e}", path.display()))
}

fn months(cli: &Cli) -> MonthConvention {
    if cli.calendar_months {
        MonthConvention::CalendarAverage
    } else {
        MonthConvention::Fixed(cli.days_per_month)
    }
}

fn precision(cli: &Cli) -> Precision {
    if cli.full_precision {
        Precision::Full
    } else {
        Precision::Display
    }
}

fn cmd_composition(
    cli: &Cli,
    out: &Output<'_>,
    catalog: &CatalogArgs,
    season: SeasonChoice,
    pie: bool,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let catalog = load_catalog(catalog)?;
    let mut seasons = Vec::new();
    for &s in season.seasons() {
        let table = seasonal_table_with(&catalog, s, months(cli)).map_err(crate::Error::from)?;
        let report = table.composition().map_err(|e| input_err!("{s}: {e}"))?;
        seasons.push((table, report));
    }
    let precision = precision(cli);

    let payload = if pie {
        let slices: Vec<(Season, Vec<report::PieSlice>)> = seasons
            .iter()
            .map(|(t, r)| (t.season, report::pie_slices(r, precision)))
            .collect();
        match cli.format {
            OutputFormat::Json if slices.len() == 1 => report::to_json(&slices[0].1),
            OutputFormat::Json => report::to_json(
                &slices
                    .iter()
                    .map(|(s, p)| (s.as_str(), p))
                    .collect::<indexmap::IndexMap<_, _>>(),
            ),
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["season", "label", "percent"])
                    .and_then(|_| {
                        slices.iter().try_for_each(|(s, p)| {
                            p.iter().try_for_each(|slice| {
                                w.write_record([
                                    s.as_str(),
                                    &slice.label,
                                    &slice.percent.to_string(),
                                ])
                            })
                        })
                    })
                    .map_err(|e| CliError::Io(e.to_string()))?;
                String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
                    .expect("utf-8")
            }
        }
    } else {
        let doc = report::composition_doc(&seasons, precision);
        match cli.format {
            OutputFormat::Json => report::to_json(&doc),
            OutputFormat::Csv => report::composition_csv(&doc),
        }
    };
    out.write(&payload, stdout)
}

fn cmd_profile_stats(
    cli: &Cli,
    out: &Output<'_>,
    path: &Path,
    granularity: Option<Granularity>,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let profile = load_profile(path, granularity)?;
    let normalized = normalize(&profile).map_err(|e| input_err!("{e}"))?;
    let payload = match cli.format {
        OutputFormat::Csv => report::normalized_csv(&profile, &normalized),
        OutputFormat::Json => {
            let ratio = peak_average_ratio(&profile).map_err(|e| input_err!("{e}"))?;
            let split = seasonal_split(&profile);
            let monthly_growth = if profile.granularity().is_monthly() {
                let values = monthly_values(&profile);
                let mut growth = Vec::new();
                for (&from, &base) in &values {
                    for (&to, &v) in &values {
                        if from != to && base != 0.0 {
                            growth.push(report::Growth {
                                from_month: from,
                                to_month: to,
                                percent: 100.0 * (v - base) / base,
                            });
                        }
                    }
                }
                growth
            } else {
                Vec::new()
            };
            report::to_json(&report::ProfileStatsDoc {
                label: profile.label(),
                granularity: profile.granularity(),
                samples: profile.len(),
                peak_kw: normalized.peak_kw,
                mean_kw: profile.mean_kw().unwrap_or(0.0),
                peak_average_ratio: ratio,
                extrema: daily_extrema(&profile).ok(),
                winter: report::SplitSummary::of(&split.winter),
                summer: report::SplitSummary::of(&split.summer),
                monthly_growth,
                normalized: &normalized,
            })
        }
    };
    out.write(&payload, stdout)
}

#[allow(clippy::too_many_arguments)]
fn cmd_reconcile(
    cli: &Cli,
    out: &Output<'_>,
    catalog: &CatalogArgs,
    profile_path: &Path,
    season: Option<Season>,
    measured_kwh_month: Option<f64>,
    attribution_out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<(), CliError> {
    let catalog = load_catalog(catalog)?;
    let occupancy = load_occupancy(cli)?;
    let measured = load_profile(profile_path, Some(Granularity::Hourly))?;
    normalize(&measured).map_err(|e| input_err!("profile `{}`: {e}", profile_path.display()))?;

    let season = match season {
        Some(s) => s,
        None => {
            let month = chrono::Datelike::month(&measured.samples()[0].timestamp);
            Season::of_month(month).expect("chrono months are 1..=12")
        }
    };
    let table = seasonal_table_with(&catalog, season, months(cli)).map_err(crate::Error::from)?;
    let measured_kwh = match measured_kwh_month {
        Some(v) => v,
        None => {
            measured_monthly_energy(&measured, table.days_per_month).map_err(crate::Error::from)?
        }
    };
    let result = scale_to_measured(&table, measured_kwh).map_err(crate::Error::from)?;
    let attribution =
        disaggregate(&measured, &catalog, season, &occupancy).map_err(crate::Error::from)?;
    let attributed = composition_from_attribution(&attribution).map_err(crate::Error::from)?;

    let reconciliation = report::to_json(&report::reconciliation_doc(&result, Some(&attributed)));
    let attribution_payload = match cli.format {
        OutputFormat::Csv => report::attribution_csv(&attribution),
        OutputFormat::Json => report::to_json(&attribution),
    };

    out.write(&reconciliation, stdout)?;
    let attribution_path = attribution_out.map(Path::to_path_buf).or_else(|| {
        cli.out.as_ref().map(|o| {
            let stem = o.file_stem().unwrap_or_default().to_string_lossy();
            o.with_file_name(format!("{stem}.attribution.{}", cli.format.extension()))
        })
    });
    if attribution_path.is_none() {
        stdout
            .write_all(b"\n")
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    out.write_to(attribution_path.as_deref(), &attribution_payload, stdout)?;

    let _ = writeln!(
        stderr,
        "scale factor {:.6}, relative gap {:.4}{}",
        result.scale_factor,
        result.relative_gap,
        if result.gap_warning {
            " (warning: gap above threshold; catalog may not represent the measured load)"
        } else {
            ""
        }
    );
    Ok(())
}

fn cmd_synth(
    cli: &Cli,
    out: &Output<'_>,
    catalog: &CatalogArgs,
    season: SeasonChoice,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let catalog = load_catalog(catalog)?;
    let occupancy = load_occupancy(cli)?;
    let days: Vec<_> = season
        .seasons()
        .iter()
        .map(|&s| synth_household_day(&catalog, s, &occupancy))
        .collect();
    let payload = match cli.format {
        OutputFormat::Csv => report::synth_csv(&days),
        OutputFormat::Json => report::to_json(&report::synth_docs(&days)),
    };
    out.write(&payload, stdout)
}

#[derive(Serialize)]
struct ValidationRow {
    row: usize,
    activity: String,
    violations: Vec<ValidationIssue>,
}

#[derive(Serialize)]
struct ValidationIssue {
    field: String,
    rule: String,
    detail: String,
}

fn cmd_validate(
    cli: &Cli,
    out: &Output<'_>,
    catalog: &CatalogArgs,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let specs: Vec<ApplianceSpec> = match &catalog.catalog {
        None => builtin_paper_catalog().into_specs(),
        Some(path) => {
            read_catalog_rows(open_input(path, "catalog")?, CatalogFormat::from_path(path))
                .map_err(|e| input_err!("catalog `{}`: {e}", path.display()))?
        }
    };

    let mut seen = std::collections::HashSet::new();
    let rows: Vec<ValidationRow> = specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let mut violations: Vec<ValidationIssue> = validate_spec(spec)
                .err()
                .unwrap_or_default()
                .into_iter()
                .map(|v| ValidationIssue {
                    field: v.field.to_string(),
                    rule: v.rule.to_string(),
                    detail: v.detail,
                })
                .collect();
            if !seen.insert(spec.activity.trim().to_lowercase()) {
                violations.push(ValidationIssue {
                    field: "activity".into(),
                    rule: "unique activity".into(),
                    detail: format!("duplicate activity `{}`", spec.activity),
                });
            }
            ValidationRow {
                row: i + 1,
                activity: spec.activity.clone(),
                violations,
            }
        })
        .collect();
    let failures: usize = rows.iter().map(|r| r.violations.len()).sum();

    let payload = match cli.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                valid: bool,
                entries: usize,
                rows: &'a [ValidationRow],
            }
            report::to_json(&Doc {
                valid: failures == 0,
                entries: rows.len(),
                rows: &rows,
            })
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut write = || -> csv::Result<()> {
                w.write_record(["row", "activity", "field", "rule", "detail"])?;
                for r in &rows {
                    for v in &r.violations {
                        w.write_record([
                            &r.row.to_string(),
                            &r.activity,
                            &v.field,
                            &v.rule,
                            &v.detail,
                        ])?;
                    }
                }
                Ok(())
            };
            write().map_err(|e| CliError::Io(e.to_string()))?;
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
                .expect("utf-8")
        }
    };
    out.write(&payload, stdout)?;
    if failures > 0 {
        Err(input_err!("{failures} violation(s) in catalog"))
    } else {
        Ok(())
    }
}
