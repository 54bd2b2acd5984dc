//! Economy configuration files.
//!
//! One JSON document describes an economy: a `sectors` array plus the shared
//! scalars. Parsing is strict by default -- any key the schema does not know
//! is an error, so typos cannot silently become defaults -- and the
//! `ECON_STRICT=0` environment variable downgrades unknown keys to warnings.
//! The only silent default is `wage: 1`.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use longrun::EconomySpec;

use crate::CliError;

/// How the rate of return is pinned down: given directly, or calibrated so
/// aggregate capital hits a target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RateMode {
    Exogenous(f64),
    CalibrateTo(f64),
}

/// A parsed and structurally validated configuration.
#[derive(Debug, Clone)]
pub struct ParsedConfig {
    /// The economy; in calibration mode its rate of return is a placeholder
    /// until the calibrated value replaces it.
    pub economy: EconomySpec,
    pub rate: RateMode,
    /// Per-period productivity growth per sector, when the file has a
    /// `growth` map.
    pub growth: Option<Vec<f64>>,
    pub horizon: Option<usize>,
    /// Unknown keys tolerated in lenient mode.
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SectorFile {
    name: String,
    productivity: f64,
    depreciation: f64,
    utility_weight: f64,
    /// Good name -> exponent; goods not mentioned get exponent zero.
    capital_exponents: serde_json::Map<String, Value>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ConfigFile {
    sectors: Vec<SectorFile>,
    total_labor: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    wage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rate_of_return: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target_aggregate_capital: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    growth: Option<serde_json::Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    horizon: Option<usize>,
}

const TOP_KEYS: [&str; 7] = [
    "sectors",
    "total_labor",
    "wage",
    "rate_of_return",
    "target_aggregate_capital",
    "growth",
    "horizon",
];
const SECTOR_KEYS: [&str; 5] = [
    "name",
    "productivity",
    "depreciation",
    "utility_weight",
    "capital_exponents",
];

/// Whether `ECON_STRICT` leaves strict parsing on. Anything but `0` does.
pub fn strict_from_env() -> bool {
    std::env::var("ECON_STRICT").map_or(true, |v| v != "0")
}

/// Parses a configuration file with strictness taken from the environment.
pub fn parse_config(path: &Path) -> Result<ParsedConfig, CliError> {
    parse_config_with(path, strict_from_env())
}

/// Parses a configuration file; `strict` decides whether unknown keys abort.
pub fn parse_config_with(path: &Path, strict: bool) -> Result<ParsedConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;

    let mut warnings = Vec::new();
    check_keys(&value, strict, &mut warnings)?;

    let file: ConfigFile = serde_json::from_value(value)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let parsed = build(file, warnings)?;
    let report = parsed.economy.validate();
    if !report.is_valid() {
        return Err(CliError::Validation(report.summary()));
    }
    Ok(parsed)
}

fn check_keys(value: &Value, strict: bool, warnings: &mut Vec<String>) -> Result<(), CliError> {
    let handle = |key_path: String, warnings: &mut Vec<String>| -> Result<(), CliError> {
        if strict {
            Err(CliError::Parse(format!("unknown key `{key_path}`")))
        } else {
            warnings.push(format!("ignoring unknown key `{key_path}`"));
            Ok(())
        }
    };
    let top = value
        .as_object()
        .ok_or_else(|| CliError::Parse("top level must be an object".to_string()))?;
    let top_known: BTreeSet<&str> = TOP_KEYS.into_iter().collect();
    for key in top.keys() {
        if !top_known.contains(key.as_str()) {
            handle(key.clone(), warnings)?;
        }
    }
    if let Some(sectors) = top.get("sectors").and_then(Value::as_array) {
        let sector_known: BTreeSet<&str> = SECTOR_KEYS.into_iter().collect();
        for (index, sector) in sectors.iter().enumerate() {
            if let Some(object) = sector.as_object() {
                for key in object.keys() {
                    if !sector_known.contains(key.as_str()) {
                        handle(format!("sectors[{index}].{key}"), warnings)?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn number(value: &Value, context: &str) -> Result<f64, CliError> {
    value
        .as_f64()
        .ok_or_else(|| CliError::Parse(format!("`{context}` must be a number")))
}

fn build(file: ConfigFile, warnings: Vec<String>) -> Result<ParsedConfig, CliError> {
    let names: Vec<String> = file.sectors.iter().map(|s| s.name.clone()).collect();
    for (index, name) in names.iter().enumerate() {
        if name.is_empty() || name.contains(',') || name.contains('\n') {
            return Err(CliError::Validation(format!(
                "sectors[{index}].name {name:?} must be non-empty without commas or newlines"
            )));
        }
    }
    let m = names.len();
    let index_of = |good: &str| names.iter().position(|n| n == good);

    let mut capital_exponents = vec![vec![0.0; m]; m];
    for (a, sector) in file.sectors.iter().enumerate() {
        for (good, exponent) in &sector.capital_exponents {
            let b = index_of(good).ok_or_else(|| {
                CliError::Validation(format!(
                    "sectors[{a}].capital_exponents references undeclared good `{good}`"
                ))
            })?;
            capital_exponents[a][b] =
                number(exponent, &format!("sectors[{a}].capital_exponents.{good}"))?;
        }
    }

    let rate = match (file.rate_of_return, file.target_aggregate_capital) {
        (Some(rate), None) => RateMode::Exogenous(rate),
        (None, Some(target)) => RateMode::CalibrateTo(target),
        (Some(_), Some(_)) => {
            return Err(CliError::Validation(
                "give either `rate_of_return` or `target_aggregate_capital`, not both".to_string(),
            ))
        }
        (None, None) => {
            return Err(CliError::Validation(
                "one of `rate_of_return` or `target_aggregate_capital` is required".to_string(),
            ))
        }
    };

    let growth = match &file.growth {
        None => None,
        Some(map) => {
            let mut rates = vec![0.0; m];
            for (good, rate) in map {
                let b = index_of(good).ok_or_else(|| {
                    CliError::Validation(format!("growth references undeclared good `{good}`"))
                })?;
                rates[b] = number(rate, &format!("growth.{good}"))?;
            }
            Some(rates)
        }
    };

    let economy = EconomySpec {
        sector_names: names,
        capital_exponents,
        productivity: file.sectors.iter().map(|s| s.productivity).collect(),
        depreciation: file.sectors.iter().map(|s| s.depreciation).collect(),
        utility_weights: file.sectors.iter().map(|s| s.utility_weight).collect(),
        total_labor: file.total_labor,
        rate_of_return: match rate {
            RateMode::Exogenous(r) => r,
            // Placeholder until calibration; any positive value validates.
            RateMode::CalibrateTo(_) => 1.0,
        },
        wage: file.wage.unwrap_or(1.0),
    };

    Ok(ParsedConfig {
        economy,
        rate,
        growth,
        horizon: file.horizon,
        warnings,
    })
}

/// Serializes an economy back into the configuration schema, with the rate of
/// return resolved. Reports embed this so they can be re-checked later.
pub fn economy_to_json(spec: &EconomySpec) -> String {
    let sectors: Vec<SectorFile> = (0..spec.num_sectors())
        .map(|a| SectorFile {
            name: spec.sector_names[a].clone(),
            productivity: spec.productivity[a],
            depreciation: spec.depreciation[a],
            utility_weight: spec.utility_weights[a],
            capital_exponents: spec.capital_exponents[a]
                .iter()
                .enumerate()
                .filter(|(_, exponent)| **exponent != 0.0)
                .map(|(b, exponent)| (spec.sector_names[b].clone(), serde_json::json!(exponent)))
                .collect(),
        })
        .collect();
    let file = ConfigFile {
        sectors,
        total_labor: spec.total_labor,
        wage: Some(spec.wage),
        rate_of_return: Some(spec.rate_of_return),
        target_aggregate_capital: None,
        growth: None,
        horizon: None,
    };
    serde_json::to_string_pretty(&file).expect("config serialization cannot fail") + "\n"
}
