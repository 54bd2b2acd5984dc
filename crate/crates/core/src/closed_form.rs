//! Analytic evaluators for the two restricted economies that admit closed
//! forms: the diagonal ("toy") economy in which every sector's only capital
//! good is its own output, and the two-sector economy with cross capital.
//!
//! These duplicate, on purpose, what the general solver computes numerically;
//! the test suites hold the two routes against each other.

use crate::economy::{ValidationReport, Violation};
use crate::error::{EconError, Result};
use crate::tolerances::BISECTOR_DENOM_MIN;

/// Diagonal economy described by labor exponents.
///
/// Sector `a` produces with `Y_a = (T_a L_a)^lambda_a * N_a^(1-lambda_a)`
/// where `N_a` is the quantity of its own good installed as capital. Note
/// `lambda_a` here is the LABOR exponent; [`crate::EconomySpec::from_toy`] converts
/// to the capital-exponent convention of the general machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyEconomy {
    /// Labor exponent per sector, in `(0, 1]`. `1` means a pure-labor sector.
    pub labor_exponents: Vec<f64>,
    pub productivity: Vec<f64>,
    pub depreciation: Vec<f64>,
    pub utility_weights: Vec<f64>,
    pub total_labor: f64,
    pub rate_of_return: f64,
    pub wage: f64,
}

/// Extensive aggregates of a toy economy, in wage-numeraire units.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyAggregates {
    pub aggregate_capital: f64,
    pub nominal_gdp: f64,
    pub labor_income: f64,
    pub capital_income: f64,
    /// Closed form: the sigma-phi-weighted mean of the labor exponents,
    /// `sum_a lambda_a sigma_a phi_a / sum_b sigma_b phi_b` with
    /// `phi_a = (R_c + delta_a) / (R_c + delta_a lambda_a)`.
    pub labor_share: f64,
    /// The same share computed directly as `L_t W / GDP`; carried alongside
    /// so the two routes can always be compared.
    pub labor_share_direct: f64,
}

impl ToyEconomy {
    pub fn num_sectors(&self) -> usize {
        self.labor_exponents.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let m = self.num_sectors();
        let mut push = |sector: Option<usize>, message: &str| {
            report.violations.push(Violation {
                sector,
                message: message.to_string(),
            });
        };
        if m == 0 {
            push(None, "economy must have at least one sector");
            return report;
        }
        if self.productivity.len() != m
            || self.depreciation.len() != m
            || self.utility_weights.len() != m
        {
            push(None, "per-sector parameter vectors must all have length M");
            return report;
        }
        for a in 0..m {
            let lambda = self.labor_exponents[a];
            if !(lambda > 0.0 && lambda <= 1.0) {
                push(Some(a), "labor exponent must lie in (0, 1]");
            }
            if !(self.productivity[a] > 0.0 && self.productivity[a].is_finite()) {
                push(Some(a), "productivity must be positive");
            }
            if !(self.depreciation[a] >= 0.0 && self.depreciation[a].is_finite()) {
                push(Some(a), "depreciation must be nonnegative");
            }
            if !(self.utility_weights[a] > 0.0 && self.utility_weights[a].is_finite()) {
                push(Some(a), "utility weight must be positive");
            }
            if !(self.rate_of_return + self.depreciation[a] > 0.0) {
                push(Some(a), "R_c + delta must be positive");
            }
            if !(self.rate_of_return + self.depreciation[a] * lambda > 0.0) {
                push(Some(a), "R_c + delta * lambda must be positive");
            }
        }
        if !(self.total_labor > 0.0 && self.total_labor.is_finite()) {
            push(None, "total labor must be positive");
        }
        if !(self.rate_of_return >= 0.0 && self.rate_of_return.is_finite()) {
            push(None, "rate of return must be nonnegative");
        }
        if !(self.wage > 0.0 && self.wage.is_finite()) {
            push(None, "wage must be positive");
        }
        report
    }

    pub fn validated(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(EconError::InvalidEconomy(report))
        }
    }

    /// Long-run capital per laborer,
    /// `n_a = T_a ((1 - lambda_a) / (R_c + delta_a))^(1/lambda_a)`;
    /// zero exactly in the pure-labor limit `lambda_a = 1`.
    pub fn capital_per_labor(&self, sector: usize) -> f64 {
        let lambda = self.labor_exponents[sector];
        if lambda == 1.0 {
            return 0.0;
        }
        let base = (1.0 - lambda) / (self.rate_of_return + self.depreciation[sector]);
        self.productivity[sector] * base.powf(1.0 / lambda)
    }

    /// Long-run price in wage units,
    /// `P_a = (W / (lambda_a T_a)) ((1 - lambda_a) / (R_c + delta_a))^((lambda_a - 1)/lambda_a)`.
    ///
    /// Decreasing in productivity, with `P_a * T_a` independent of `T_a`.
    pub fn price(&self, sector: usize) -> f64 {
        let lambda = self.labor_exponents[sector];
        let lead = self.wage / (lambda * self.productivity[sector]);
        if lambda == 1.0 {
            return lead;
        }
        let base = (1.0 - lambda) / (self.rate_of_return + self.depreciation[sector]);
        lead * base.powf((lambda - 1.0) / lambda)
    }

    /// `phi_a = (R_c + delta_a) / (R_c + delta_a lambda_a)`, the factor by
    /// which depreciation tilts the demand-side labor weights. Equals one in
    /// the pure-labor limit.
    fn phi(&self, sector: usize) -> f64 {
        let lambda = self.labor_exponents[sector];
        (self.rate_of_return + self.depreciation[sector])
            / (self.rate_of_return + self.depreciation[sector] * lambda)
    }

    /// Demand-side labor allocation, `L_a proportional to lambda_a sigma_a phi_a`,
    /// normalized to the total labor force. Independent of every productivity.
    pub fn labor_distribution(&self) -> Vec<f64> {
        let weights: Vec<f64> = (0..self.num_sectors())
            .map(|a| self.labor_exponents[a] * self.utility_weights[a] * self.phi(a))
            .collect();
        let total: f64 = weights.iter().sum();
        // Share first, then scale: keeps the one-sector case exactly L_t.
        weights
            .iter()
            .map(|w| w / total * self.total_labor)
            .collect()
    }

    /// Closed-form aggregates: capital `K_t = W sum_a L_a (1-lambda_a)/(lambda_a (R_c+delta_a))`,
    /// output `GDP = W sum_a L_a / lambda_a`, and both orientations of the labor share.
    pub fn aggregates(&self) -> ToyAggregates {
        let labor = self.labor_distribution();
        let mut aggregate_capital = 0.0;
        let mut nominal_gdp = 0.0;
        let mut capital_income = 0.0;
        for a in 0..self.num_sectors() {
            let lambda = self.labor_exponents[a];
            aggregate_capital += self.wage * labor[a] * (1.0 - lambda)
                / (lambda * (self.rate_of_return + self.depreciation[a]));
            nominal_gdp += self.wage * labor[a] / lambda;
            capital_income += self.wage * labor[a] * (1.0 - lambda) / lambda;
        }
        let weighted: f64 = (0..self.num_sectors())
            .map(|a| self.utility_weights[a] * self.phi(a))
            .sum();
        let weighted_lambda: f64 = (0..self.num_sectors())
            .map(|a| self.labor_exponents[a] * self.utility_weights[a] * self.phi(a))
            .sum();
        ToyAggregates {
            aggregate_capital,
            nominal_gdp,
            labor_income: self.total_labor * self.wage,
            capital_income,
            labor_share: weighted_lambda / weighted,
            labor_share_direct: self.total_labor * self.wage / nominal_gdp,
        }
    }
}

/// Two-sector economy with cross capital and a common depreciation rate.
///
/// Indices: sector 0 is "A", sector 1 is "B";
/// `capital_exponents[a][b]` is the exponent of good `b` in sector `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct BisectorEconomy {
    pub capital_exponents: [[f64; 2]; 2],
    pub productivity: [f64; 2],
    /// Common depreciation rate of both goods.
    pub depreciation: f64,
    pub rate_of_return: f64,
    pub wage: f64,
}

impl BisectorEconomy {
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut push = |sector: Option<usize>, message: &str| {
            report.violations.push(Violation {
                sector,
                message: message.to_string(),
            });
        };
        for a in 0..2 {
            for b in 0..2 {
                let l = self.capital_exponents[a][b];
                if !(l >= 0.0 && l.is_finite()) {
                    push(Some(a), "capital exponents must be finite and nonnegative");
                }
            }
            let row = self.capital_exponents[a][0] + self.capital_exponents[a][1];
            if !(row < 1.0) {
                push(Some(a), "labor exponent must be positive");
            }
            if !(self.productivity[a] > 0.0 && self.productivity[a].is_finite()) {
                push(Some(a), "productivity must be positive");
            }
        }
        if !(self.depreciation >= 0.0 && self.depreciation.is_finite()) {
            push(None, "depreciation must be nonnegative");
        }
        if !(self.rate_of_return >= 0.0 && self.rate_of_return.is_finite()) {
            push(None, "rate of return must be nonnegative");
        }
        if !(self.rate_of_return + self.depreciation > 0.0) {
            push(None, "R_c + delta must be positive");
        }
        if !(self.wage > 0.0 && self.wage.is_finite()) {
            push(None, "wage must be positive");
        }
        if !(self.denominator() > 0.0) {
            push(None, "exponent denominator must be positive");
        }
        report
    }

    pub fn validated(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(EconError::InvalidEconomy(report))
        }
    }

    /// Outer exponent denominator
    /// `1 - l_BB - l_AA + l_AA l_BB - l_AB l_BA`; positive whenever both row
    /// sums are below one.
    pub fn denominator(&self) -> f64 {
        let [[laa, lab], [lba, lbb]] = self.capital_exponents;
        1.0 - lbb - laa + laa * lbb - lab * lba
    }

    /// The same economy with the sector labels swapped.
    pub fn swapped(&self) -> Self {
        let [[laa, lab], [lba, lbb]] = self.capital_exponents;
        BisectorEconomy {
            capital_exponents: [[lbb, lba], [lab, laa]],
            productivity: [self.productivity[1], self.productivity[0]],
            depreciation: self.depreciation,
            rate_of_return: self.rate_of_return,
            wage: self.wage,
        }
    }

    /// Closed-form long-run price of either good, evaluated in log space.
    ///
    /// Sector 0 is computed from the nine-factor closed form; sector 1 is the
    /// same routine applied to the label-swapped economy.
    pub fn price(&self, sector: usize) -> Result<f64> {
        match sector {
            0 => self.price_of_first(),
            1 => self.swapped().price_of_first(),
            _ => Err(EconError::Domain(format!(
                "two-sector economy has no sector {sector}"
            ))),
        }
    }

    fn price_of_first(&self) -> Result<f64> {
        let [[laa, lab], [lba, lbb]] = self.capital_exponents;
        let denom = self.denominator();
        if denom.abs() < BISECTOR_DENOM_MIN {
            return Err(EconError::DegenerateDenominator { denominator: denom });
        }
        let labor_a = 1.0 - laa - lab;
        let labor_b = 1.0 - lbb - lba;
        let user_cost = self.rate_of_return + self.depreciation;

        // exponent * ln(base), with a zero exponent contributing zero
        // regardless of the base.
        let term = |exponent: f64, base: f64| -> Result<f64> {
            if exponent == 0.0 {
                return Ok(0.0);
            }
            if base <= 0.0 {
                return Err(EconError::Domain(format!(
                    "log of non-positive base {base:e}"
                )));
            }
            Ok(exponent * base.ln())
        };

        let mut log_bracket = 0.0;
        log_bracket += term(
            lbb - laa * lbb - lab * lbb - 1.0 + laa + lab,
            self.productivity[0],
        )?;
        log_bracket += term(lab * lbb + lab * lba - lab, self.productivity[1])?;
        log_bracket += term(lab * lba + laa + lab - laa * lbb, user_cost)?;
        log_bracket += term(laa * (lbb - 1.0), laa)?;
        log_bracket += term(lab * (lbb - 1.0), lab)?;
        log_bracket += term(-lab * lba, lba)?;
        log_bracket += term(-lab * lbb, lbb)?;
        log_bracket += term(laa + lab + lbb - laa * lbb - lab * lbb - 1.0, labor_a)?;
        log_bracket += term(lab * lbb + lab * lba - lab, labor_b)?;

        Ok(self.wage * (log_bracket / denom).exp())
    }

    /// Physical capital installed in one sector at a given labor level:
    /// `N_ab = L_a W lambda_ab / (P_b (1 - lambda_aa - lambda_ab) (R_c + delta))`.
    ///
    /// Returns `[N_a0, N_a1]`, exactly zero where the exponent is zero, and
    /// linear in `labor`.
    pub fn capital_allocation(&self, sector: usize, labor: f64) -> Result<[f64; 2]> {
        let prices = [self.price(0)?, self.price(1)?];
        let row = match sector {
            0 | 1 => self.capital_exponents[sector],
            _ => {
                return Err(EconError::Domain(format!(
                    "two-sector economy has no sector {sector}"
                )))
            }
        };
        let labor_exp = 1.0 - row[0] - row[1];
        let user_cost = self.rate_of_return + self.depreciation;
        let mut stocks = [0.0; 2];
        for b in 0..2 {
            if row[b] > 0.0 {
                stocks[b] = labor * self.wage * row[b] / (prices[b] * labor_exp * user_cost);
            }
        }
        Ok(stocks)
    }
}
