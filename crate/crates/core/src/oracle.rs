//! Independent verification layer.
//!
//! Nothing here calls the closed-form marginal products or trusts the solver:
//! derivatives are re-taken by central finite differences of the production
//! function, and the demand side is re-checked from first principles. The
//! point is independence, so a bug in one route cannot hide in the other.

use crate::closed_form::ToyEconomy;
use crate::economy::{evaluate_production, EconomySpec, ProductionInput};
use crate::error::Result;
use crate::solution::EquilibriumSolution;
use crate::solver::demand_closure;
use crate::tolerances::{ACCOUNTING_REL, FD_RELATIVE_STEP, FD_RESIDUAL, WALRAS_REL};

/// All residuals of one solution. Building the report never mutates the
/// solution and never fails a passing run early; everything is measured.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Per-sector residual of `dY_a/dL_a = W / P_a`, derivative by finite
    /// differences.
    pub wage: Vec<f64>,
    /// Per positive exponent `(sector, good, residual)` of
    /// `dY_a/dN_ab = (R_c + delta_b) P_b / P_a`.
    pub capital: Vec<(usize, usize, f64)>,
    /// Relative residual of `sum_a P_a C_a = W L_t + R_c K_t`.
    pub walras: f64,
    /// Relative residual of `GDP = labor income + capital income`.
    pub accounting: f64,
    /// Largest absolute residual across all of the above.
    pub max_abs: f64,
}

impl ResidualReport {
    /// Every residual class within its own tolerance.
    pub fn passes(&self) -> bool {
        self.wage.iter().all(|r| r.abs() < FD_RESIDUAL)
            && self.capital.iter().all(|(_, _, r)| r.abs() < FD_RESIDUAL)
            && self.walras.abs() < WALRAS_REL
            && self.accounting.abs() < ACCOUNTING_REL
    }
}

/// Central finite difference of sector output along one coordinate.
fn central_difference(
    spec: &EconomySpec,
    sector: usize,
    input: &ProductionInput,
    bump: impl Fn(&mut ProductionInput, f64),
    at: f64,
) -> Result<f64> {
    let h = FD_RELATIVE_STEP * at;
    let mut plus = input.clone();
    bump(&mut plus, at + h);
    let mut minus = input.clone();
    bump(&mut minus, at - h);
    Ok(
        (evaluate_production(spec, sector, &plus)? - evaluate_production(spec, sector, &minus)?)
            / (2.0 * h),
    )
}

/// Re-derives every marginal condition by finite differences and measures the
/// Walras and national-accounting identities.
///
/// Requires strictly positive labor everywhere and positive stocks wherever
/// the exponent is positive; zero-exponent pairs are skipped.
pub fn check_marginal_conditions(
    spec: &EconomySpec,
    solution: &EquilibriumSolution,
) -> Result<ResidualReport> {
    let m = spec.num_sectors();
    let mut wage = Vec::with_capacity(m);
    let mut capital = Vec::new();
    let mut max_abs: f64 = 0.0;

    for a in 0..m {
        let input = ProductionInput {
            labor: solution.labor[a],
            capital: solution.capital_stocks[a].clone(),
        };
        let d_labor = central_difference(spec, a, &input, |i, v| i.labor = v, input.labor)?;
        let residual = d_labor * solution.prices[a] / spec.wage - 1.0;
        max_abs = max_abs.max(residual.abs());
        wage.push(residual);

        for b in 0..m {
            if spec.capital_exponents[a][b] <= 0.0 {
                continue;
            }
            let stock = input.capital[b];
            let d_stock = central_difference(spec, a, &input, |i, v| i.capital[b] = v, stock)?;
            let target = spec.user_cost(b) * solution.prices[b] / solution.prices[a];
            let residual = d_stock / target - 1.0;
            max_abs = max_abs.max(residual.abs());
            capital.push((a, b, residual));
        }
    }

    let closure = demand_closure(spec, solution);
    let spent: f64 = closure
        .consumption
        .iter()
        .zip(&solution.prices)
        .map(|(c, p)| c * p)
        .sum();
    let walras = spent / closure.income - 1.0;
    let accounting = solution.aggregates.nominal_gdp
        / (solution.aggregates.labor_income + solution.aggregates.capital_income)
        - 1.0;
    max_abs = max_abs.max(walras.abs()).max(accounting.abs());

    Ok(ResidualReport {
        wage,
        capital,
        walras,
        accounting,
        max_abs,
    })
}

/// Outcome of the demand-side verification.
#[derive(Debug, Clone)]
pub struct LaborCheckVerdict {
    /// `sigma_a lambda_a^L P_a Y_a / (P_a C_a L_a)` per sector; constant at a
    /// correct allocation (it is the preference first-order condition).
    pub lagrange_ratios: Vec<f64>,
    /// Largest relative deviation of the ratios from their mean.
    pub lagrange_spread: f64,
    /// Realized expenditure shares `P_a C_a / (W L_t + R_c K_t)`.
    pub expenditure_shares: Vec<f64>,
    /// Largest relative deviation of a realized share from its weight.
    pub max_share_error: f64,
    pub passes: bool,
}

/// Verifies the labor allocation two ways: the preference first-order
/// condition must come out constant across sectors, and realized expenditure
/// shares must equal the normalized utility weights.
pub fn brute_force_labor_check(
    spec: &EconomySpec,
    solution: &EquilibriumSolution,
) -> LaborCheckVerdict {
    let m = spec.num_sectors();
    let closure = demand_closure(spec, solution);
    let outputs = solution.outputs();

    let lagrange_ratios: Vec<f64> = (0..m)
        .map(|a| {
            spec.utility_weights[a] * spec.labor_exponent(a) * solution.prices[a] * outputs[a]
                / (solution.prices[a] * closure.consumption[a] * solution.labor[a])
        })
        .collect();
    let mean = lagrange_ratios.iter().sum::<f64>() / m as f64;
    let lagrange_spread = lagrange_ratios
        .iter()
        .map(|r| (r / mean - 1.0).abs())
        .fold(0.0, f64::max);

    let expenditure_shares: Vec<f64> = (0..m)
        .map(|a| solution.prices[a] * closure.consumption[a] / closure.income)
        .collect();
    let max_share_error = expenditure_shares
        .iter()
        .zip(&closure.shares)
        .map(|(realized, target)| (realized / target - 1.0).abs())
        .fold(0.0, f64::max);

    let passes = lagrange_spread < crate::tolerances::LABOR_CHECK_REL
        && max_share_error < crate::tolerances::LABOR_CHECK_REL;
    LaborCheckVerdict {
        lagrange_ratios,
        lagrange_spread,
        expenditure_shares,
        max_share_error,
        passes,
    }
}

/// The aggregate labor share of a diagonal economy, three ways.
#[derive(Debug, Clone, Copy)]
pub struct ShareAdjudication {
    /// `L_t W / GDP` computed from the closed-form labor allocation and GDP.
    pub direct: f64,
    /// Closed form: sigma-phi-weighted mean of the labor exponents. Agrees
    /// with `direct` to machine precision.
    pub weighted_mean: f64,
    /// The reciprocal orientation of the same expression, reported alongside
    /// rather than discarded. It cannot be a share: with one sector it equals
    /// `1 / lambda >= 1`.
    pub reciprocal: f64,
}

/// Computes the labor share of a diagonal economy directly, via the closed
/// form, and via the reciprocal orientation of the closed form.
pub fn adjudicate_labor_share(toy: &ToyEconomy) -> ShareAdjudication {
    let aggregates = toy.aggregates();
    let phi = |a: usize| {
        (toy.rate_of_return + toy.depreciation[a])
            / (toy.rate_of_return + toy.depreciation[a] * toy.labor_exponents[a])
    };
    let weighted: f64 = (0..toy.num_sectors())
        .map(|a| toy.utility_weights[a] * phi(a))
        .sum();
    let weighted_lambda: f64 = (0..toy.num_sectors())
        .map(|a| toy.labor_exponents[a] * toy.utility_weights[a] * phi(a))
        .sum();
    ShareAdjudication {
        direct: aggregates.labor_share_direct,
        weighted_mean: weighted_lambda / weighted,
        reciprocal: weighted / weighted_lambda,
    }
}
