//! The long-run equilibrium of an economy and its extensive aggregates.

use crate::economy::EconomySpec;

/// Everything the long-run equilibrium pins down.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSolution {
    /// Price of each good in wage units.
    pub prices: Vec<f64>,
    /// `n_ab`: units of good `b` installed per laborer of sector `a`.
    pub capital_intensity: Vec<Vec<f64>>,
    /// Labor allocation, summing to the total labor force.
    pub labor: Vec<f64>,
    /// `y_a`: units of good `a` produced per laborer of sector `a`.
    pub output_per_labor: Vec<f64>,
    /// `N_ab = n_ab * L_a`: total units of good `b` installed in sector `a`.
    pub capital_stocks: Vec<Vec<f64>>,
    pub aggregates: AggregateReport,
}

/// Extensive aggregates in wage-numeraire units.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateReport {
    /// `K_t = sum_ab P_b N_ab`, the money value of all installed capital.
    pub aggregate_capital: f64,
    /// `GDP = sum_a P_a Y_a`.
    pub nominal_gdp: f64,
    /// `L_t W`.
    pub labor_income: f64,
    /// `sum_ab P_b N_ab (R_c + delta_b)`.
    pub capital_income: f64,
    /// `L_t W / GDP`, in `(0, 1]`.
    pub labor_share: f64,
    /// The labor exponent a one-good aggregate production function would need
    /// to reproduce this income split; numerically identical to `labor_share`.
    pub implied_aggregate_lambda: f64,
}

impl EquilibriumSolution {
    /// Total output per sector, `Y_a = y_a L_a`.
    pub fn outputs(&self) -> Vec<f64> {
        self.output_per_labor
            .iter()
            .zip(&self.labor)
            .map(|(y, l)| y * l)
            .collect()
    }

    /// Consumption of each good: output net of the replacement of that good's
    /// depreciation wherever it is installed,
    /// `C_a = Y_a - delta_a * sum_b N_ba`.
    pub fn consumption(&self, spec: &EconomySpec) -> Vec<f64> {
        let outputs = self.outputs();
        (0..outputs.len())
            .map(|a| {
                let installed_everywhere: f64 = self.capital_stocks.iter().map(|row| row[a]).sum();
                outputs[a] - spec.depreciation[a] * installed_everywhere
            })
            .collect()
    }
}
