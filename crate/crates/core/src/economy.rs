//! Domain types, validation, and production-function evaluation.
//!
//! An economy has `M` sectors, each producing one good. Sector `a` combines
//! labor with installed physical quantities of goods as capital through a
//! Cobb-Douglas production function
//!
//! ```text
//! Q_a = (T_a L_a)^(lambda_a^L) * prod_b N_ab^(lambda_ab)
//! ```
//!
//! where `lambda_ab` is the exponent of good `b` used as capital in sector `a`
//! and `lambda_a^L = 1 - sum_b lambda_ab` is the implied labor exponent, so
//! returns to scale are constant by construction.
//!
//! Exponent convention: [`EconomySpec::capital_exponents`] stores the CAPITAL
//! exponents. A diagonal economy whose sectors are described by their labor
//! exponent `lambda_a` maps onto `lambda_aa = 1 - lambda_a`; use
//! [`EconomySpec::from_toy`] for that conversion rather than filling the
//! matrix by hand.

use crate::closed_form::{BisectorEconomy, ToyEconomy};
use crate::error::{EconError, Result};

/// Full parameterization of an `M`-sector economy.
///
/// Money values are expressed in wage units: the wage is the numeraire and
/// all prices come out as wage units per unit of good.
#[derive(Debug, Clone, PartialEq)]
pub struct EconomySpec {
    /// Distinct label per sector; sector `a` produces good `a`.
    pub sector_names: Vec<String>,
    /// Matrix with entry `[a][b]` = exponent of good `b` as capital in sector `a`.
    pub capital_exponents: Vec<Vec<f64>>,
    /// Output units per effective unit of labor, per sector.
    pub productivity: Vec<f64>,
    /// Fraction of good `a` consumed per period wherever it is installed.
    pub depreciation: Vec<f64>,
    /// Exponents of the household utility preference.
    pub utility_weights: Vec<f64>,
    /// Total labor force (persons).
    pub total_labor: f64,
    /// Economy-wide rate of return on capital, per period.
    pub rate_of_return: f64,
    /// Numeraire wage.
    pub wage: f64,
}

/// Labor and installed capital quantities fed into one sector's production.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductionInput {
    /// Persons employed in the sector.
    pub labor: f64,
    /// Physical units of each good installed as capital, indexed by good.
    pub capital: Vec<f64>,
}

/// Marginal products of one sector at a given input point.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginals {
    /// dQ/dL.
    pub labor: f64,
    /// dQ/dN_ab per good `b`; zero wherever the exponent is zero.
    pub capital: Vec<f64>,
}

/// One violated invariant, with the offending sector when there is one.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub sector: Option<usize>,
    pub message: String,
}

/// Outcome of validation. Validation never aborts; it reports everything it finds.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// All violations joined into one line.
    pub fn summary(&self) -> String {
        if self.is_valid() {
            return "pass".to_string();
        }
        self.violations
            .iter()
            .map(|v| match v.sector {
                Some(a) => format!("[sector {a}] {}", v.message),
                None => v.message.clone(),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn push(&mut self, sector: Option<usize>, message: impl Into<String>) {
        self.violations.push(Violation {
            sector,
            message: message.into(),
        });
    }
}

impl EconomySpec {
    pub fn num_sectors(&self) -> usize {
        self.sector_names.len()
    }

    /// Implied labor exponent `lambda_a^L = 1 - sum_b lambda_ab`.
    pub fn labor_exponent(&self, sector: usize) -> f64 {
        1.0 - self.capital_exponents[sector].iter().sum::<f64>()
    }

    /// User cost of holding one unit of good `b`: `R_c + delta_b`.
    /// Depreciation is indexed by the good, not by the sector holding it.
    pub fn user_cost(&self, good: usize) -> f64 {
        self.rate_of_return + self.depreciation[good]
    }

    /// Same economy with a different rate of return; used by calibration.
    pub fn with_rate_of_return(&self, rate_of_return: f64) -> Self {
        Self {
            rate_of_return,
            ..self.clone()
        }
    }

    /// Maps a diagonal economy stated in labor exponents onto the capital
    /// exponent convention: `lambda_aa = 1 - lambda_a`, off-diagonal zero.
    /// Sector names are generated as `sector0`, `sector1`, ...
    pub fn from_toy(toy: &ToyEconomy) -> Self {
        let m = toy.labor_exponents.len();
        let mut capital_exponents = vec![vec![0.0; m]; m];
        for (a, lambda) in toy.labor_exponents.iter().enumerate() {
            capital_exponents[a][a] = 1.0 - lambda;
        }
        EconomySpec {
            sector_names: (0..m).map(|a| format!("sector{a}")).collect(),
            capital_exponents,
            productivity: toy.productivity.clone(),
            depreciation: toy.depreciation.clone(),
            utility_weights: toy.utility_weights.clone(),
            total_labor: toy.total_labor,
            rate_of_return: toy.rate_of_return,
            wage: toy.wage,
        }
    }

    /// The diagonal view of this economy, if it has one: every sector's only
    /// capital good is its own output. Inverse of [`EconomySpec::from_toy`].
    pub fn to_toy(&self) -> Option<ToyEconomy> {
        let m = self.num_sectors();
        for a in 0..m {
            for b in 0..m {
                if a != b && self.capital_exponents[a][b] != 0.0 {
                    return None;
                }
            }
        }
        Some(ToyEconomy {
            labor_exponents: (0..m).map(|a| self.labor_exponent(a)).collect(),
            productivity: self.productivity.clone(),
            depreciation: self.depreciation.clone(),
            utility_weights: self.utility_weights.clone(),
            total_labor: self.total_labor,
            rate_of_return: self.rate_of_return,
            wage: self.wage,
        })
    }

    /// The two-sector closed-form view, available when the economy has
    /// exactly two sectors and a common depreciation rate.
    pub fn to_bisector(&self) -> Option<BisectorEconomy> {
        if self.num_sectors() != 2 || self.depreciation[0] != self.depreciation[1] {
            return None;
        }
        Some(BisectorEconomy {
            capital_exponents: [
                [self.capital_exponents[0][0], self.capital_exponents[0][1]],
                [self.capital_exponents[1][0], self.capital_exponents[1][1]],
            ],
            productivity: [self.productivity[0], self.productivity[1]],
            depreciation: self.depreciation[0],
            rate_of_return: self.rate_of_return,
            wage: self.wage,
        })
    }

    /// Embeds a two-sector economy, adding the demand-side data the
    /// closed forms do not need (utility weights and total labor).
    pub fn from_bisector(
        bi: &BisectorEconomy,
        utility_weights: [f64; 2],
        total_labor: f64,
    ) -> Self {
        EconomySpec {
            sector_names: vec!["a".to_string(), "b".to_string()],
            capital_exponents: vec![
                bi.capital_exponents[0].to_vec(),
                bi.capital_exponents[1].to_vec(),
            ],
            productivity: bi.productivity.to_vec(),
            depreciation: vec![bi.depreciation; 2],
            utility_weights: utility_weights.to_vec(),
            total_labor,
            rate_of_return: bi.rate_of_return,
            wage: bi.wage,
        }
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let m = self.num_sectors();

        if m == 0 {
            report.push(None, "economy must have at least one sector");
            return report;
        }
        for a in 0..m {
            for b in a + 1..m {
                if self.sector_names[a] == self.sector_names[b] {
                    report.push(
                        Some(b),
                        format!("duplicate sector name '{}'", self.sector_names[a]),
                    );
                }
            }
        }
        if self.capital_exponents.len() != m {
            report.push(None, "capital exponent matrix must have one row per sector");
            return report;
        }
        for (a, row) in self.capital_exponents.iter().enumerate() {
            if row.len() != m {
                report.push(Some(a), "capital exponent row must have one entry per good");
                return report;
            }
        }
        if self.productivity.len() != m
            || self.depreciation.len() != m
            || self.utility_weights.len() != m
        {
            report.push(None, "per-sector parameter vectors must all have length M");
            return report;
        }

        for (a, row) in self.capital_exponents.iter().enumerate() {
            for (b, &lambda) in row.iter().enumerate() {
                if !lambda.is_finite() || lambda < 0.0 {
                    report.push(
                        Some(a),
                        format!("capital exponent for good {b} must be finite and nonnegative"),
                    );
                }
            }
            // Row sum strictly below 1 <=> positive labor exponent; this also
            // bounds the spectral radius of the exponent matrix below 1, so the
            // log-price system is uniquely solvable.
            let labor_exp = self.labor_exponent(a);
            if !(labor_exp > 0.0) {
                report.push(Some(a), "labor exponent must be positive");
            }
        }
        for (a, &t) in self.productivity.iter().enumerate() {
            if !(t > 0.0 && t.is_finite()) {
                report.push(Some(a), "productivity must be positive");
            }
        }
        for (a, &d) in self.depreciation.iter().enumerate() {
            if !(d >= 0.0 && d.is_finite()) {
                report.push(Some(a), "depreciation must be nonnegative");
            }
        }
        for (a, &s) in self.utility_weights.iter().enumerate() {
            if !(s > 0.0 && s.is_finite()) {
                report.push(Some(a), "utility weight must be positive");
            }
        }
        if !(self.total_labor > 0.0 && self.total_labor.is_finite()) {
            report.push(None, "total labor must be positive");
        }
        if !(self.rate_of_return >= 0.0 && self.rate_of_return.is_finite()) {
            report.push(None, "rate of return must be nonnegative");
        }
        if !(self.wage > 0.0 && self.wage.is_finite()) {
            report.push(None, "wage must be positive");
        }
        for a in 0..m {
            if !(self.user_cost(a) > 0.0) {
                report.push(Some(a), "R_c + delta must be positive");
            }
        }
        report
    }

    /// Validation as a `Result`, for operations that require a valid spec.
    pub fn validated(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(EconError::InvalidEconomy(report))
        }
    }
}

/// `base^exp` with the convention `0^0 = 1`, so zero exponents contribute a
/// neutral factor regardless of the base.
pub(crate) fn pow_zero_neutral(base: f64, exp: f64) -> Result<f64> {
    if exp == 0.0 {
        return Ok(1.0);
    }
    if base < 0.0 {
        return Err(EconError::Domain(format!(
            "negative base {base:e} raised to {exp:e}"
        )));
    }
    if base == 0.0 && exp < 0.0 {
        return Err(EconError::Domain(format!(
            "zero base raised to negative exponent {exp:e}"
        )));
    }
    Ok(base.powf(exp))
}

/// Evaluates sector output `Q_a` at the given inputs.
///
/// Homogeneous of degree one in `(labor, capital)` jointly. With a positive
/// exponent on some good and zero units of it installed, output is zero.
pub fn evaluate_production(
    spec: &EconomySpec,
    sector: usize,
    input: &ProductionInput,
) -> Result<f64> {
    let labor_exp = spec.labor_exponent(sector);
    let mut q = pow_zero_neutral(spec.productivity[sector] * input.labor, labor_exp)?;
    for (b, &lambda) in spec.capital_exponents[sector].iter().enumerate() {
        q *= pow_zero_neutral(input.capital[b], lambda)?;
    }
    Ok(q)
}

/// Closed-form Cobb-Douglas marginal products:
/// `dQ/dL = lambda^L Q / L` and `dQ/dN_ab = lambda_ab Q / N_ab`.
///
/// Requires strictly positive inputs for labor and for every good with a
/// positive exponent.
pub fn marginal_products(
    spec: &EconomySpec,
    sector: usize,
    input: &ProductionInput,
) -> Result<Marginals> {
    if input.labor <= 0.0 {
        return Err(EconError::Domain(format!(
            "marginal products need positive labor, got {:e}",
            input.labor
        )));
    }
    for (b, &lambda) in spec.capital_exponents[sector].iter().enumerate() {
        if lambda > 0.0 && input.capital[b] <= 0.0 {
            return Err(EconError::Domain(format!(
                "marginal products need positive capital of good {b} (exponent {lambda:e})"
            )));
        }
    }
    let q = evaluate_production(spec, sector, input)?;
    let labor = spec.labor_exponent(sector) * q / input.labor;
    let capital = spec.capital_exponents[sector]
        .iter()
        .enumerate()
        .map(|(b, &lambda)| {
            if lambda == 0.0 {
                0.0
            } else {
                lambda * q / input.capital[b]
            }
        })
        .collect();
    Ok(Marginals { labor, capital })
}
