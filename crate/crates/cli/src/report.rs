//! Solution reports on disk.
//!
//! A report directory holds one CSV per table (prices, intensities, labor,
//! aggregates, residuals), the resolved economy as `economy.json`, a JSON
//! manifest naming the files and the verification tolerances, and a
//! human-readable `summary.txt`. Field order is fixed and every number is
//! written in scientific notation with 17 significant digits, so identical
//! configurations produce byte-identical reports and re-reading a report is
//! lossless for doubles. Files are written to a temporary name and renamed
//! into place.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use longrun::{
    tolerances::{ACCOUNTING_REL, FD_RESIDUAL, WALRAS_REL},
    AggregateReport, EconomySpec, EquilibriumSolution, LaborCheckVerdict, ResidualReport,
};

use crate::config::{economy_to_json, parse_config_with};
use crate::CliError;

/// 17 significant digits: round-trip exact for f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes via a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io_err = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    version: String,
    economy: String,
    tables: ManifestTables,
    tolerances: ManifestTolerances,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestTables {
    prices: String,
    intensities: String,
    labor: String,
    aggregates: String,
    residuals: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct ManifestTolerances {
    marginal_fd: f64,
    walras: f64,
    accounting: f64,
}

fn prices_csv(spec: &EconomySpec, solution: &EquilibriumSolution) -> String {
    let mut out = String::from("sector,price\n");
    for (name, price) in spec.sector_names.iter().zip(&solution.prices) {
        let _ = writeln!(out, "{name},{}", fmt_f64(*price));
    }
    out
}

fn intensities_csv(spec: &EconomySpec, solution: &EquilibriumSolution) -> String {
    let mut out = String::from("sector,good,intensity\n");
    for (a, row) in solution.capital_intensity.iter().enumerate() {
        for (b, intensity) in row.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{}",
                spec.sector_names[a],
                spec.sector_names[b],
                fmt_f64(*intensity)
            );
        }
    }
    out
}

fn labor_csv(spec: &EconomySpec, solution: &EquilibriumSolution) -> String {
    let mut out = String::from("sector,labor,output_per_labor\n");
    for a in 0..spec.num_sectors() {
        let _ = writeln!(
            out,
            "{},{},{}",
            spec.sector_names[a],
            fmt_f64(solution.labor[a]),
            fmt_f64(solution.output_per_labor[a])
        );
    }
    out
}

const AGGREGATE_COLUMNS: &str =
    "aggregate_capital,nominal_gdp,labor_income,capital_income,labor_share,implied_aggregate_lambda";

fn aggregates_csv(solution: &EquilibriumSolution) -> String {
    let a = &solution.aggregates;
    format!(
        "{AGGREGATE_COLUMNS}\n{},{},{},{},{},{}\n",
        fmt_f64(a.aggregate_capital),
        fmt_f64(a.nominal_gdp),
        fmt_f64(a.labor_income),
        fmt_f64(a.capital_income),
        fmt_f64(a.labor_share),
        fmt_f64(a.implied_aggregate_lambda)
    )
}

fn residuals_csv(spec: &EconomySpec, residuals: &ResidualReport) -> String {
    let mut out = String::from("kind,sector,good,value\n");
    for (a, r) in residuals.wage.iter().enumerate() {
        let _ = writeln!(out, "wage,{},,{}", spec.sector_names[a], fmt_f64(*r));
    }
    for (a, b, r) in &residuals.capital {
        let _ = writeln!(
            out,
            "capital,{},{},{}",
            spec.sector_names[*a],
            spec.sector_names[*b],
            fmt_f64(*r)
        );
    }
    let _ = writeln!(out, "walras,,,{}", fmt_f64(residuals.walras));
    let _ = writeln!(out, "accounting,,,{}", fmt_f64(residuals.accounting));
    let _ = writeln!(out, "max_abs,,,{}", fmt_f64(residuals.max_abs));
    out
}

/// Human-readable recap of a solution; also what `solve` prints.
pub fn summary_text(
    spec: &EconomySpec,
    solution: &EquilibriumSolution,
    residuals: &ResidualReport,
    verdict: &LaborCheckVerdict,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "sectors: {}", spec.num_sectors());
    let _ = writeln!(out, "{:<16} {:>14} {:>14}", "sector", "price", "labor");
    for a in 0..spec.num_sectors() {
        let _ = writeln!(
            out,
            "{:<16} {:>14.6} {:>14.6}",
            spec.sector_names[a], solution.prices[a], solution.labor[a]
        );
    }
    let aggregates = &solution.aggregates;
    let _ = writeln!(
        out,
        "aggregate capital: {:.6}",
        aggregates.aggregate_capital
    );
    let _ = writeln!(out, "nominal gdp:       {:.6}", aggregates.nominal_gdp);
    let _ = writeln!(out, "labor income:      {:.6}", aggregates.labor_income);
    let _ = writeln!(out, "capital income:    {:.6}", aggregates.capital_income);
    let _ = writeln!(out, "labor share:       {:.6}", aggregates.labor_share);
    let _ = writeln!(
        out,
        "residuals: max {:.3e} (walras {:.3e}, accounting {:.3e}); demand check: {}",
        residuals.max_abs,
        residuals.walras,
        residuals.accounting,
        if verdict.passes { "pass" } else { "FAIL" }
    );
    out
}

/// Writes the full report into `dir`, creating it if needed.
pub fn write_solution_report(
    dir: &Path,
    spec: &EconomySpec,
    solution: &EquilibriumSolution,
    residuals: &ResidualReport,
    verdict: &LaborCheckVerdict,
) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION").to_string(),
        economy: "economy.json".to_string(),
        tables: ManifestTables {
            prices: "prices.csv".to_string(),
            intensities: "intensities.csv".to_string(),
            labor: "labor.csv".to_string(),
            aggregates: "aggregates.csv".to_string(),
            residuals: "residuals.csv".to_string(),
        },
        tolerances: ManifestTolerances {
            marginal_fd: FD_RESIDUAL,
            walras: WALRAS_REL,
            accounting: ACCOUNTING_REL,
        },
    };
    write_atomic(&dir.join("economy.json"), &economy_to_json(spec))?;
    write_atomic(&dir.join("prices.csv"), &prices_csv(spec, solution))?;
    write_atomic(
        &dir.join("intensities.csv"),
        &intensities_csv(spec, solution),
    )?;
    write_atomic(&dir.join("labor.csv"), &labor_csv(spec, solution))?;
    write_atomic(&dir.join("aggregates.csv"), &aggregates_csv(solution))?;
    write_atomic(&dir.join("residuals.csv"), &residuals_csv(spec, residuals))?;
    write_atomic(
        &dir.join("summary.txt"),
        &summary_text(spec, solution, residuals, verdict),
    )?;
    let manifest_json =
        serde_json::to_string_pretty(&manifest).expect("manifest serialization cannot fail");
    write_atomic(&dir.join("manifest.json"), &(manifest_json + "\n"))
}

fn read_csv(path: &Path, expected_header: &str) -> Result<Vec<Vec<String>>, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Parse(format!("{}: empty file", path.display())))?;
    if header != expected_header {
        return Err(CliError::Parse(format!(
            "{}: header {header:?}, expected {expected_header:?}",
            path.display()
        )));
    }
    Ok(lines
        .map(|line| line.split(',').map(str::to_string).collect())
        .collect())
}

fn parse_number(field: &str, context: &str) -> Result<f64, CliError> {
    field
        .parse()
        .map_err(|e| CliError::Parse(format!("{context}: bad number {field:?} ({e})")))
}

/// Reads a report directory back into the economy and the stored solution.
pub fn read_solution_report(dir: &Path) -> Result<(EconomySpec, EquilibriumSolution), CliError> {
    let manifest_path = dir.join("manifest.json");
    let manifest_text = fs::read_to_string(&manifest_path)
        .map_err(|e| CliError::Io(format!("{}: {e}", manifest_path.display())))?;
    let manifest: Manifest = serde_json::from_str(&manifest_text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", manifest_path.display())))?;

    // The embedded economy always carries a resolved rate of return.
    let parsed = parse_config_with(&dir.join(&manifest.economy), true)?;
    let spec = parsed.economy;
    let m = spec.num_sectors();
    let sector_index = |name: &str| -> Result<usize, CliError> {
        spec.sector_names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| CliError::Parse(format!("unknown sector {name:?} in report tables")))
    };

    let mut prices = vec![0.0; m];
    for row in read_csv(&dir.join(&manifest.tables.prices), "sector,price")? {
        prices[sector_index(&row[0])?] = parse_number(&row[1], "prices.csv")?;
    }

    let mut capital_intensity = vec![vec![0.0; m]; m];
    for row in read_csv(
        &dir.join(&manifest.tables.intensities),
        "sector,good,intensity",
    )? {
        capital_intensity[sector_index(&row[0])?][sector_index(&row[1])?] =
            parse_number(&row[2], "intensities.csv")?;
    }

    let mut labor = vec![0.0; m];
    let mut output_per_labor = vec![0.0; m];
    for row in read_csv(
        &dir.join(&manifest.tables.labor),
        "sector,labor,output_per_labor",
    )? {
        let a = sector_index(&row[0])?;
        labor[a] = parse_number(&row[1], "labor.csv")?;
        output_per_labor[a] = parse_number(&row[2], "labor.csv")?;
    }

    let aggregate_rows = read_csv(&dir.join(&manifest.tables.aggregates), AGGREGATE_COLUMNS)?;
    let row = aggregate_rows
        .first()
        .ok_or_else(|| CliError::Parse("aggregates.csv: missing data row".to_string()))?;
    let aggregates = AggregateReport {
        aggregate_capital: parse_number(&row[0], "aggregates.csv")?,
        nominal_gdp: parse_number(&row[1], "aggregates.csv")?,
        labor_income: parse_number(&row[2], "aggregates.csv")?,
        capital_income: parse_number(&row[3], "aggregates.csv")?,
        labor_share: parse_number(&row[4], "aggregates.csv")?,
        implied_aggregate_lambda: parse_number(&row[5], "aggregates.csv")?,
    };

    let capital_stocks: Vec<Vec<f64>> = (0..m)
        .map(|a| (0..m).map(|b| capital_intensity[a][b] * labor[a]).collect())
        .collect();

    Ok((
        spec,
        EquilibriumSolution {
            prices,
            capital_intensity,
            labor,
            output_per_labor,
            capital_stocks,
            aggregates,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(fmt_f64(150.0), "1.5000000000000000e2");
        assert_eq!(fmt_f64(-0.25), "-2.5000000000000000e-1");
        let tricky = 0.1 + 0.2;
        let parsed: f64 = fmt_f64(tricky).parse().unwrap();
        assert_eq!(parsed.to_bits(), tricky.to_bits());
    }

    #[test]
    fn report_round_trips() {
        let spec = longrun::samples::wheat_tractor_power_cnc();
        let solution = longrun::assemble_solution(&spec).unwrap();
        let residuals = longrun::check_marginal_conditions(&spec, &solution).unwrap();
        let verdict = longrun::brute_force_labor_check(&spec, &solution);
        let dir = std::env::temp_dir().join(format!("longrun-report-{}", std::process::id()));
        write_solution_report(&dir, &spec, &solution, &residuals, &verdict).unwrap();
        let (read_spec, read_solution) = read_solution_report(&dir).unwrap();
        assert_eq!(read_spec, spec);
        assert_eq!(read_solution.prices, solution.prices);
        assert_eq!(read_solution.labor, solution.labor);
        assert_eq!(
            read_solution.aggregates.nominal_gdp.to_bits(),
            solution.aggregates.nominal_gdp.to_bits()
        );
        std::fs::remove_dir_all(&dir).ok();
    }
}
