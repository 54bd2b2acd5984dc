//! End-to-end tests of the `longrun` binary: exit codes, file formats,
//! determinism, and the verification exit path.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../configs")
        .join(name)
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("longrun-cli-{}-{name}", std::process::id()));
    fs::remove_dir_all(&dir).ok();
    dir
}

fn longrun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_longrun"))
        .args(args)
        .env_remove("ECON_STRICT")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

/// Parses a one-row CSV with named columns into (header, row).
fn single_row(path: &Path) -> (Vec<String>, Vec<f64>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    (header, row)
}

fn column(header: &[String], row: &[f64], name: &str) -> f64 {
    row[header.iter().position(|h| h == name).unwrap()]
}

#[test]
fn solve_one_sector_writes_the_analytic_aggregates() {
    let out = temp_dir("solve-one");
    let result = longrun(&[
        "solve",
        "--economy",
        config("one_sector.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));

    let (header, row) = single_row(&out.join("aggregates.csv"));
    assert!((column(&header, &row, "nominal_gdp") / 150.0 - 1.0).abs() < 1e-12);
    assert!((column(&header, &row, "aggregate_capital") / 150.0 - 1.0).abs() < 1e-12);
    assert!((column(&header, &row, "labor_share") - 2.0 / 3.0).abs() < 1e-12);
    assert!(stdout(&result).contains("labor share"));
    fs::remove_dir_all(&out).ok();
}

#[test]
fn solve_wheat_sample_keeps_the_sparsity() {
    let out = temp_dir("solve-wheat");
    let result = longrun(&[
        "solve",
        "--economy",
        config("wheat_tractor_power_cnc.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));

    let intensities = fs::read_to_string(out.join("intensities.csv")).unwrap();
    let entry = |sector: &str, good: &str| -> f64 {
        intensities
            .lines()
            .find(|l| l.starts_with(&format!("{sector},{good},")))
            .unwrap()
            .rsplit(',')
            .next()
            .unwrap()
            .parse()
            .unwrap()
    };
    // Wheat uses wheat, tractors, and power but no CNC machines; power uses
    // neither wheat nor tractors.
    assert!(entry("wheat", "wheat") > 0.0);
    assert!(entry("wheat", "tractor") > 0.0);
    assert!(entry("wheat", "power") > 0.0);
    assert_eq!(entry("wheat", "cnc"), 0.0);
    assert_eq!(entry("power", "wheat"), 0.0);
    assert_eq!(entry("power", "tractor"), 0.0);
    fs::remove_dir_all(&out).ok();
}

#[test]
fn identical_configs_produce_byte_identical_reports() {
    let out_a = temp_dir("det-a");
    let out_b = temp_dir("det-b");
    for out in [&out_a, &out_b] {
        let result = longrun(&[
            "solve",
            "--economy",
            config("wheat_tractor_power_cnc.json").to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(result.status.code(), Some(0));
    }
    for file in [
        "economy.json",
        "prices.csv",
        "intensities.csv",
        "labor.csv",
        "aggregates.csv",
        "residuals.csv",
        "manifest.json",
        "summary.txt",
    ] {
        let a = fs::read(out_a.join(file)).unwrap();
        let b = fs::read(out_b.join(file)).unwrap();
        assert_eq!(a, b, "{file} differs between identical runs");
    }
    fs::remove_dir_all(&out_a).ok();
    fs::remove_dir_all(&out_b).ok();
}

#[test]
fn check_passes_on_a_fresh_report_and_flags_a_tampered_price() {
    let out = temp_dir("check");
    let result = longrun(&[
        "solve",
        "--economy",
        config("two_sector_cross.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0));

    let result = longrun(&["check", "--report", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    assert!(stdout(&result).contains("report verifies"));

    // Nudge one price up by 1%.
    let prices_path = out.join("prices.csv");
    let text = fs::read_to_string(&prices_path).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let (name, value) = lines[1].split_once(',').unwrap();
    let tampered: f64 = value.parse::<f64>().unwrap() * 1.01;
    lines[1] = format!("{name},{tampered:.16e}");
    fs::write(&prices_path, lines.join("\n") + "\n").unwrap();

    let result = longrun(&["check", "--report", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(3), "{}", stderr(&result));
    assert!(stderr(&result).contains("error[oracle]"));
    fs::remove_dir_all(&out).ok();
}

#[test]
fn baumol_trajectory_shows_the_fifty_fold_relative_price() {
    let out = temp_dir("baumol");
    let result = longrun(&[
        "baumol",
        "--economy",
        config("carrots_education.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    assert!(stdout(&result).contains("certified"));

    let text = fs::read_to_string(out.join("baumol.csv")).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let at = |row: &str, col: &str| -> f64 {
        let fields: Vec<&str> = row.split(',').collect();
        fields[header.iter().position(|h| *h == col).unwrap()]
            .parse()
            .unwrap()
    };
    let rows: Vec<&str> = lines.collect();
    let first = rows.first().unwrap();
    let last = rows.last().unwrap();
    let start = at(first, "relprice_education");
    let end = at(last, "relprice_education");
    assert!((start / 50.0 - 1.0).abs() < 1e-12, "start {start}");
    assert!((end / 2500.0 - 1.0).abs() < 1e-12, "end {end}");
    assert!((end / start / 50.0 - 1.0).abs() < 1e-12);
    fs::remove_dir_all(&out).ok();
}

#[test]
fn baumol_without_growth_is_a_validation_error() {
    let result = longrun(&[
        "baumol",
        "--economy",
        config("one_sector.json").to_str().unwrap(),
        "--horizon",
        "5",
    ]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("error[validation]"));
}

#[test]
fn calibrate_recovers_the_analytic_rate() {
    let result = longrun(&[
        "calibrate",
        "--economy",
        config("one_sector.json").to_str().unwrap(),
        "--target-capital",
        "150",
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    let text = stdout(&result);
    let rate: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("rate_of_return = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((rate - 1.0 / 3.0).abs() < 1e-10, "rate {rate}");
}

#[test]
fn calibrate_with_out_writes_a_checkable_report() {
    let out = temp_dir("calibrate-out");
    let result = longrun(&[
        "calibrate",
        "--economy",
        config("wheat_tractor_power_cnc.json").to_str().unwrap(),
        "--target-capital",
        "3000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    let (header, row) = single_row(&out.join("aggregates.csv"));
    assert!((column(&header, &row, "aggregate_capital") / 3000.0 - 1.0).abs() < 1e-8);

    let result = longrun(&["check", "--report", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    fs::remove_dir_all(&out).ok();
}

#[test]
fn missing_inputs_map_to_the_documented_exit_codes() {
    let result = longrun(&["solve", "--economy", "/nonexistent/economy.json", "--out", "/tmp/x"]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("error[parse]"));

    let result = longrun(&["check", "--report", "/nonexistent/report"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("error[io]"));
}

#[test]
fn solve_calibrates_when_the_config_gives_a_capital_target() {
    let out = temp_dir("solve-target");
    let result = longrun(&[
        "solve",
        "--economy",
        config("one_sector_target.json").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    assert!(stderr(&result).contains("calibrated rate_of_return"));
    let (header, row) = single_row(&out.join("aggregates.csv"));
    assert!((column(&header, &row, "aggregate_capital") / 150.0 - 1.0).abs() < 1e-8);
    fs::remove_dir_all(&out).ok();
}

#[test]
fn relax_converges_and_writes_a_monotone_trace() {
    let out = temp_dir("relax");
    let result = longrun(&[
        "relax",
        "--economy",
        config("wheat_tractor_power_cnc.json").to_str().unwrap(),
        "--perturb",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    assert!(stdout(&result).contains("converged in"));

    let text = fs::read_to_string(out.join("relax.csv")).unwrap();
    let dispersions: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(dispersions.len() > 2);
    assert!(*dispersions.last().unwrap() < 1e-6);
    for pair in dispersions.windows(2) {
        assert!(pair[1] <= pair[0]);
    }
    fs::remove_dir_all(&out).ok();
}

#[test]
fn toy_reports_closed_forms_and_rejects_cross_capital() {
    let result = longrun(&[
        "toy",
        "--economy",
        config("one_sector.json").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    assert!(stdout(&result).contains("labor share:       0.666667"));

    let result = longrun(&[
        "toy",
        "--economy",
        config("wheat_tractor_power_cnc.json").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("error[validation]"));
}

#[test]
fn bisector_cross_checks_the_solver() {
    let result = longrun(&[
        "bisector",
        "--economy",
        config("two_sector_cross.json").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    let text = stdout(&result);
    let drift: f64 = text
        .lines()
        .find_map(|l| l.rsplit_once("difference: ").map(|(_, v)| v))
        .unwrap()
        .parse()
        .unwrap();
    assert!(drift < 1e-9);

    let result = longrun(&[
        "bisector",
        "--economy",
        config("one_sector.json").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
}

#[test]
fn malformed_configs_exit_with_code_one() {
    let dir = temp_dir("bad-configs");
    fs::create_dir_all(&dir).unwrap();

    let saturated = dir.join("saturated.json");
    fs::write(
        &saturated,
        r#"{"sectors": [{"name": "x", "productivity": 1.0, "depreciation": 0.0,
            "utility_weight": 1.0, "capital_exponents": {"x": 1.0}}],
            "total_labor": 10.0, "rate_of_return": 0.2}"#,
    )
    .unwrap();
    let result = longrun(&[
        "solve",
        "--economy",
        saturated.to_str().unwrap(),
        "--out",
        dir.join("o1").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("error[validation]"));
    assert!(stderr(&result).contains("labor exponent"));

    let dangling = dir.join("dangling.json");
    fs::write(
        &dangling,
        r#"{"sectors": [{"name": "x", "productivity": 1.0, "depreciation": 0.0,
            "utility_weight": 1.0, "capital_exponents": {"steel": 0.2}}],
            "total_labor": 10.0, "rate_of_return": 0.2}"#,
    )
    .unwrap();
    let result = longrun(&[
        "solve",
        "--economy",
        dangling.to_str().unwrap(),
        "--out",
        dir.join("o2").to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("steel"));
    fs::remove_dir_all(&dir).ok();
}

#[test]
fn shipped_configs_match_the_library_samples() {
    let parsed =
        longrun_cli::config::parse_config_with(&config("wheat_tractor_power_cnc.json"), true)
            .unwrap();
    assert_eq!(parsed.economy, longrun::samples::wheat_tractor_power_cnc());

    let parsed =
        longrun_cli::config::parse_config_with(&config("carrots_education.json"), true).unwrap();
    let sample = longrun::samples::carrots_education();
    assert_eq!(parsed.economy, sample.economy);
    assert_eq!(parsed.growth.unwrap(), sample.growth);
    assert_eq!(parsed.horizon, Some(sample.horizon));
}

#[test]
fn unknown_keys_respect_the_strictness_switch() {
    let dir = temp_dir("strictness");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("extra.json");
    fs::write(
        &path,
        r#"{"sectors": [{"name": "x", "productivity": 1.0, "depreciation": 0.0,
            "utility_weight": 1.0, "capital_exponents": {"x": 0.25}}],
            "total_labor": 10.0, "rate_of_return": 0.2, "note": "typo"}"#,
    )
    .unwrap();

    let result = longrun(&["toy", "--economy", path.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("error[parse]"));
    assert!(stderr(&result).contains("note"));

    let result = Command::new(env!("CARGO_BIN_EXE_longrun"))
        .args(["toy", "--economy", path.to_str().unwrap()])
        .env("ECON_STRICT", "0")
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(0), "{}", stderr(&result));
    assert!(stderr(&result).contains("warning"));
    assert!(stderr(&result).contains("note"));
    fs::remove_dir_all(&dir).ok();
}
