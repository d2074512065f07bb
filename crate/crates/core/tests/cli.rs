use std::path::Path;
use std::process::{Command, Output};

use chrono::NaiveDate;
use loadcomp::{
    builtin_paper_catalog, serialize_catalog, synth_household_day, ApplianceSpec, Catalog,
    CatalogFormat, OccupancyCurve, OperationClass, PerSeason, Season,
};
use serde_json::Value;
use tempfile::TempDir;

const DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");

fn loadcomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loadcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn f(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn composition_reproduces_seasonal_totals() {
    let doc = json(&loadcomp(&["composition", "--builtin-paper"]));
    let seasons = doc["seasons"].as_array().unwrap();
    assert_eq!(seasons.len(), 2);
    assert_eq!(f(&seasons[0]["daily_total_wh"]), 63185.0);
    assert_eq!(f(&seasons[0]["monthly_total_kwh"]), 1895.55);
    assert_eq!(f(&seasons[1]["daily_total_wh"]), 90489.7);
    assert_eq!(f(&seasons[1]["monthly_total_kwh"]), 2714.69);
    let ac = seasons[1]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["activity"] == "Air conditioning")
        .unwrap();
    assert_eq!(f(&ac["share_pct"]), 61.9);
}

#[test]
fn full_precision_keeps_unrounded_totals() {
    let doc = json(&loadcomp(&[
        "composition",
        "--builtin-paper",
        "--season",
        "summer",
        "--full-precision",
    ]));
    let kwh = f(&doc["seasons"][0]["monthly_total_kwh"]);
    assert!((kwh - 2714.691).abs() < 1e-9);
}

#[test]
fn csv_output_is_deterministic_and_sidecar_is_separate() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = loadcomp(&[
            "composition",
            "--builtin-paper",
            "--format",
            "csv",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(out.stdout.is_empty());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("activity,season,per_unit_wh_day,household_wh_day,share_pct\n"));
    assert!(text.contains("Air conditioning,summer,11200.0,56000.0,61.9\n"));

    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.meta.json")).unwrap())
            .unwrap();
    assert!(meta.is_object());

    let stdout = loadcomp(&["composition", "--builtin-paper", "--format", "csv"]);
    assert_eq!(String::from_utf8(stdout.stdout).unwrap(), text);
}

#[test]
fn pie_shares_sum_to_about_100() {
    let doc = json(&loadcomp(&["composition", "--builtin-paper", "--pie"]));
    let text = doc.to_string();
    assert!(text.contains("Air conditioning"));
    let mut sums = Vec::new();
    fn walk(v: &Value, sums: &mut Vec<f64>) {
        match v {
            Value::Array(items) if items.iter().all(|i| i.get("percent").is_some()) => {
                sums.push(items.iter().map(|i| f(&i["percent"])).sum());
            }
            Value::Array(items) => items.iter().for_each(|i| walk(i, sums)),
            Value::Object(map) => map.values().for_each(|i| walk(i, sums)),
            _ => {}
        }
    }
    walk(&doc, &mut sums);
    assert_eq!(sums.len(), 2, "{doc}");
    for s in sums {
        assert!((s - 100.0).abs() <= 0.5, "{s}");
    }
}

#[test]
fn missing_catalog_is_an_input_error() {
    let out = loadcomp(&["composition", "--catalog", "does/not/exist.csv"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("does/not/exist.csv"));
}

#[test]
fn unwritable_output_exits_2() {
    let out = loadcomp(&[
        "composition",
        "--builtin-paper",
        "--out",
        "/nonexistent-dir/sub/out.json",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    assert_eq!(loadcomp(&["composition"]).status.code(), Some(1));
    assert_eq!(
        loadcomp(&["composition", "--builtin-paper", "--days-per-month", "0"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(loadcomp(&["--help"]).status.code(), Some(0));
    assert_eq!(loadcomp(&["--version"]).status.code(), Some(0));
}

#[test]
fn validate_names_the_broken_rule() {
    let dir = TempDir::new().unwrap();
    let mut text = serialize_catalog(&builtin_paper_catalog(), CatalogFormat::Csv).unwrap();
    // Ironing runs 100 % of the time; make its fractions sum to 1.1.
    let line = text
        .lines()
        .find(|l| l.starts_with("Ironing,"))
        .unwrap()
        .to_owned();
    assert!(line.ends_with(",1.0,0.0"), "{line}");
    let broken = format!("{},0.6,0.5", line.strip_suffix(",1.0,0.0").unwrap());
    text = text.replace(&line, &broken);
    let path = write(dir.path(), "bad.csv", &text);

    let out = loadcomp(&["validate", "--catalog", &path]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["valid"], false);
    let bad: Vec<&Value> = doc["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| !r["violations"].as_array().unwrap().is_empty())
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["activity"], "Ironing");
    assert!(
        bad[0].to_string().contains("fraction-sum rule"),
        "{}",
        bad[0]
    );

    let out = loadcomp(&["composition", "--catalog", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("fraction-sum rule"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn malformed_occupancy_is_rejected() {
    let dir = TempDir::new().unwrap();
    let values = vec!["1"; 23].join(",");
    let path = write(dir.path(), "occ.csv", &values);
    let out = loadcomp(&["synth", "--builtin-paper", "--occupancy", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("24"), "{}", stderr(&out));
}

#[test]
fn synth_winter_total_matches_table() {
    let doc = json(&loadcomp(&[
        "synth",
        "--builtin-paper",
        "--season",
        "winter",
    ]));
    let day = &doc[0];
    assert_eq!(day["season"], "winter");
    let total: f64 = day["total_wh"].as_array().unwrap().iter().map(f).sum();
    assert!((total - 63185.0).abs() <= 1e-9 * 63185.0, "{total}");
}

#[test]
fn uniform_occupancy_flattens_auto_catalog() {
    let dir = TempDir::new().unwrap();
    let spec = |name: &str, watts: f64| ApplianceSpec {
        activity: name.into(),
        tou: PerSeason::both(24.0),
        units: PerSeason::both(1),
        run_watts: watts,
        idle_watts: 0.0,
        run_fraction: 1.0,
        idle_fraction: 0.0,
        operation: OperationClass::Auto,
    };
    let catalog = Catalog::new(vec![spec("fridge", 150.0), spec("router", 12.0)]).unwrap();
    let cat = write(
        dir.path(),
        "auto.json",
        &serialize_catalog(&catalog, CatalogFormat::Json).unwrap(),
    );
    let occ = format!("{DATA}/occupancy_uniform.csv");
    let doc = json(&loadcomp(&[
        "synth",
        "--catalog",
        &cat,
        "--occupancy",
        &occ,
        "--season",
        "summer",
    ]));
    let hours: Vec<f64> = doc[0]["total_wh"]
        .as_array()
        .unwrap()
        .iter()
        .map(f)
        .collect();
    assert_eq!(hours.len(), 24);
    for h in &hours {
        assert!((h - 162.0).abs() <= 1e-9, "{hours:?}");
    }
}

fn measured_csv(dir: &Path, factor: f64) -> String {
    let day = synth_household_day(
        &builtin_paper_catalog(),
        Season::Summer,
        &OccupancyCurve::default(),
    );
    let date = NaiveDate::from_ymd_opt(2016, 7, 15).unwrap();
    let profile = day.total_profile(date).unwrap().scaled(factor).unwrap();
    write(dir, &format!("measured-{factor}.csv"), &profile.to_csv())
}

#[test]
fn reconcile_against_the_model_itself_has_unit_scale() {
    let dir = TempDir::new().unwrap();
    for k in [1.0, 1.1] {
        let profile = measured_csv(dir.path(), k);
        let out = loadcomp(&["reconcile", "--builtin-paper", "--profile", &profile]);
        assert!(out.status.success(), "{}", stderr(&out));
        // Without --out the attribution follows the summary on stdout.
        let doc: Value = serde_json::Deserializer::from_slice(&out.stdout)
            .into_iter()
            .next()
            .unwrap()
            .unwrap();
        assert_eq!(doc["season"], "summer");
        let scale = f(&doc["scale_factor"]);
        assert!((scale - k).abs() <= 1e-9, "k={k} scale={scale}");
        assert_eq!(doc["gap_warning"], false);
        assert!(stderr(&out).contains("scale factor"));
    }
}

#[test]
fn reconcile_writes_attribution_beside_out() {
    let dir = TempDir::new().unwrap();
    let profile = measured_csv(dir.path(), 1.0);
    let out_path = dir.path().join("rec.csv");
    let out = loadcomp(&[
        "reconcile",
        "--builtin-paper",
        "--profile",
        &profile,
        "--format",
        "csv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let attribution = std::fs::read_to_string(dir.path().join("rec.attribution.csv")).unwrap();
    let mut lines = attribution.lines();
    assert_eq!(lines.next(), Some("hour,activity,kw"));
    assert_eq!(lines.count(), 24 * 15);
}

#[test]
fn reconcile_rejects_an_all_zero_day() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("timestamp,power_kw\n");
    for h in 0..24 {
        text.push_str(&format!("2016-07-01T{h:02}:00,0\n"));
    }
    let path = write(dir.path(), "zero.csv", &text);
    let out = loadcomp(&["reconcile", "--builtin-paper", "--profile", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("zero peak"), "{}", stderr(&out));
}

#[test]
fn profile_stats_on_fixtures() {
    let annual = json(&loadcomp(&[
        "profile-stats",
        "--profile",
        &format!("{DATA}/annual_profile.csv"),
    ]));
    let feb_jun = annual["monthly_growth"]
        .as_array()
        .unwrap()
        .iter()
        .find(|g| g["from_month"] == 2 && g["to_month"] == 6)
        .unwrap();
    assert_eq!(f(&feb_jun["percent"]), 130.0);

    let daily = json(&loadcomp(&[
        "profile-stats",
        "--profile",
        &format!("{DATA}/daily_profile.csv"),
    ]));
    assert_eq!(daily["extrema"]["peak_hour"], 15);
    assert_eq!(daily["extrema"]["trough_hour"], 6);

    let ratio = json(&loadcomp(&[
        "profile-stats",
        "--profile",
        &format!("{DATA}/peak_ratio_profile.csv"),
    ]));
    assert!((f(&ratio["peak_average_ratio"]) - 0.86).abs() <= 1e-12);
}
