//! Time-dependent layers on top of the long-run solver.
//!
//! Two distinct mechanisms live here:
//!
//! * **Relaxation** of an out-of-equilibrium labor allocation. Prices and
//!   capital stocks are frozen at their equilibrium values and only labor
//!   flows: sectors paying above the mean wage attract labor, sectors paying
//!   below it shed labor. Diminishing returns make sector wages fall as labor
//!   arrives, so the flow equalizes wages. Because the stocks are the
//!   equilibrium ones and sector wages are strictly decreasing in sector
//!   labor, the unique wage-equalizing allocation is the equilibrium one.
//!
//! * **Trajectories** under exogenous productivity growth. Each period is an
//!   independent long-run solve at the grown productivity levels
//!   (comparative statics, not a dynamic path). With the wage, rate of
//!   return, and depreciation fixed, each sector's price moves exactly
//!   inversely to its productivity, so sectors with stagnant productivity
//!   see their relative prices rise.

use crate::economy::{evaluate_production, EconomySpec, ProductionInput};
use crate::error::{EconError, Result};
use crate::solver::assemble_solution;
use crate::tolerances::TRAJECTORY_INVARIANCE;

/// Out-of-equilibrium labor allocation with the per-sector wages it implies.
#[derive(Debug, Clone)]
pub struct RelaxationState {
    pub labor: Vec<f64>,
    /// `W_a = P_a lambda_a^L Y_a / L_a` at frozen prices and stocks.
    pub wages: Vec<f64>,
    /// Labor-weighted mean wage `sum_a L_a W_a / L_t`.
    pub mean_wage: f64,
    pub step: usize,
}

impl RelaxationState {
    /// Largest relative wage deviation from the mean.
    pub fn dispersion(&self) -> f64 {
        self.wages
            .iter()
            .map(|w| ((w - self.mean_wage) / self.mean_wage).abs())
            .fold(0.0, f64::max)
    }

    /// Labor-weighted wage variance; the Lyapunov quantity of the relaxation.
    pub fn weighted_variance(&self) -> f64 {
        let total: f64 = self.labor.iter().sum();
        self.wages
            .iter()
            .zip(&self.labor)
            .map(|(w, l)| l * (w - self.mean_wage).powi(2))
            .sum::<f64>()
            / total
    }
}

/// Relaxation engine: the frozen environment labor flows through.
#[derive(Debug, Clone)]
pub struct Relaxation {
    spec: EconomySpec,
    prices: Vec<f64>,
    capital_stocks: Vec<Vec<f64>>,
    equilibrium_labor: Vec<f64>,
}

impl Relaxation {
    /// Solves the economy and freezes its prices and capital stocks.
    pub fn new(spec: &EconomySpec) -> Result<Self> {
        let solution = assemble_solution(spec)?;
        Ok(Relaxation {
            spec: spec.clone(),
            prices: solution.prices,
            capital_stocks: solution.capital_stocks,
            equilibrium_labor: solution.labor,
        })
    }

    pub fn equilibrium_labor(&self) -> &[f64] {
        &self.equilibrium_labor
    }

    /// Wages and mean wage at a labor allocation.
    pub fn state(&self, labor: Vec<f64>, step: usize) -> Result<RelaxationState> {
        let m = labor.len();
        let mut wages = Vec::with_capacity(m);
        for a in 0..m {
            if !(labor[a] > 0.0) {
                return Err(EconError::Domain(format!(
                    "relaxation needs positive labor, sector {a} has {:e}",
                    labor[a]
                )));
            }
            let output = evaluate_production(
                &self.spec,
                a,
                &ProductionInput {
                    labor: labor[a],
                    capital: self.capital_stocks[a].clone(),
                },
            )?;
            wages.push(self.prices[a] * self.spec.labor_exponent(a) * output / labor[a]);
        }
        let mean_wage =
            wages.iter().zip(&labor).map(|(w, l)| w * l).sum::<f64>() / self.spec.total_labor;
        Ok(RelaxationState {
            labor,
            wages,
            mean_wage,
            step,
        })
    }

    /// One multiplicative update `L_a <- L_a (1 + eta (W_a - Wbar)/Wbar)`,
    /// renormalized so total labor is conserved. Errors if the step would
    /// drive any sector's labor non-positive; the caller must reduce `eta`.
    pub fn step(&self, state: &RelaxationState, eta: f64) -> Result<RelaxationState> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(EconError::Domain(format!(
                "step gain must be positive and finite, got {eta:e}"
            )));
        }
        let mut updated = Vec::with_capacity(state.labor.len());
        for (a, (&labor, &wage)) in state.labor.iter().zip(&state.wages).enumerate() {
            let next = labor * (1.0 + eta * (wage - state.mean_wage) / state.mean_wage);
            if !(next > 0.0) {
                return Err(EconError::StepSize {
                    sector: a,
                    labor: next,
                });
            }
            updated.push(next);
        }
        renormalize(&mut updated, self.spec.total_labor);
        self.state(updated, state.step + 1)
    }
}

/// Scales the vector to the target sum, then dumps the leftover rounding
/// onto the largest component so the sum is conserved to the last bit.
fn renormalize(labor: &mut [f64], total: f64) {
    let sum: f64 = labor.iter().sum();
    for l in labor.iter_mut() {
        *l *= total / sum;
    }
    let drift = total - labor.iter().sum::<f64>();
    let largest = (0..labor.len())
        .max_by(|&i, &j| labor[i].total_cmp(&labor[j]))
        .expect("non-empty labor vector");
    labor[largest] += drift;
}

/// One recorded relaxation step.
#[derive(Debug, Clone)]
pub struct RelaxationRecord {
    pub step: usize,
    pub labor: Vec<f64>,
    pub wages: Vec<f64>,
    pub dispersion: f64,
    pub weighted_variance: f64,
}

/// Full trace of a relaxation run that reached the tolerance.
#[derive(Debug, Clone)]
pub struct RelaxationTrace {
    pub records: Vec<RelaxationRecord>,
    pub equilibrium_labor: Vec<f64>,
    pub final_labor: Vec<f64>,
    /// Steps taken before the dispersion tolerance was met.
    pub converged_in: usize,
}

/// Per-sector multiplicative factors `1 +- p`, alternating, for knocking an
/// allocation off equilibrium.
pub fn alternating_perturbation(sectors: usize, p: f64) -> Vec<f64> {
    (0..sectors)
        .map(|a| if a % 2 == 0 { 1.0 + p } else { 1.0 - p })
        .collect()
}

/// Runs the relaxation from a perturbed equilibrium allocation until the
/// relative wage dispersion falls below `tol`, recording every step.
///
/// `perturbation` holds per-sector multiplicative factors applied to the
/// equilibrium labor before renormalization; all factors must keep labor
/// positive. Errors with the final dispersion if `max_steps` is exhausted.
pub fn simulate_relaxation(
    spec: &EconomySpec,
    perturbation: &[f64],
    eta: f64,
    max_steps: usize,
    tol: f64,
) -> Result<RelaxationTrace> {
    let engine = Relaxation::new(spec)?;
    if perturbation.len() != spec.num_sectors() {
        return Err(EconError::Domain(
            "perturbation must have one factor per sector".to_string(),
        ));
    }
    let mut labor: Vec<f64> = engine
        .equilibrium_labor
        .iter()
        .zip(perturbation)
        .map(|(l, f)| l * f)
        .collect();
    if labor.iter().any(|l| !(*l > 0.0)) {
        return Err(EconError::Domain(
            "perturbation must keep every sector's labor positive".to_string(),
        ));
    }
    renormalize(&mut labor, spec.total_labor);

    let mut state = engine.state(labor, 0)?;
    let mut records = Vec::new();
    loop {
        records.push(RelaxationRecord {
            step: state.step,
            labor: state.labor.clone(),
            wages: state.wages.clone(),
            dispersion: state.dispersion(),
            weighted_variance: state.weighted_variance(),
        });
        if state.dispersion() < tol {
            return Ok(RelaxationTrace {
                converged_in: state.step,
                equilibrium_labor: engine.equilibrium_labor.clone(),
                final_labor: state.labor.clone(),
                records,
            });
        }
        if state.step >= max_steps {
            return Err(EconError::NonConvergence {
                steps: state.step,
                dispersion: state.dispersion(),
            });
        }
        state = engine.step(&state, eta)?;
    }
}

/// Which side of the productivity-growth divide a sector falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorClass {
    Stagnant,
    Progressive,
}

/// A productivity growth path over a base economy.
#[derive(Debug, Clone)]
pub struct TrajectorySpec {
    pub economy: EconomySpec,
    /// Per-period growth rate per sector: `T_a(t) = T_a(0) (1 + g_a)^t`.
    pub growth: Vec<f64>,
    /// Number of periods past the base period.
    pub horizon: usize,
    pub classification: Vec<SectorClass>,
}

impl TrajectorySpec {
    /// Classifies sectors automatically: growth below the mean is stagnant.
    pub fn new(economy: EconomySpec, growth: Vec<f64>, horizon: usize) -> Result<Self> {
        if growth.len() != economy.num_sectors() {
            return Err(EconError::Domain(
                "growth vector must have one rate per sector".to_string(),
            ));
        }
        if horizon < 1 {
            return Err(EconError::Domain("horizon must be at least 1".to_string()));
        }
        if growth.iter().any(|g| !(1.0 + g > 0.0)) {
            return Err(EconError::Domain(
                "per-period growth factors 1 + g must be positive".to_string(),
            ));
        }
        let mean = growth.iter().sum::<f64>() / growth.len() as f64;
        let classification = growth
            .iter()
            .map(|&g| {
                if g < mean {
                    SectorClass::Stagnant
                } else {
                    SectorClass::Progressive
                }
            })
            .collect();
        Ok(TrajectorySpec {
            economy,
            growth,
            horizon,
            classification,
        })
    }

    pub fn with_classification(mut self, classification: Vec<SectorClass>) -> Self {
        self.classification = classification;
        self
    }

    /// Productivity levels at period `t`.
    pub fn productivity_at(&self, t: usize) -> Vec<f64> {
        self.economy
            .productivity
            .iter()
            .zip(&self.growth)
            .map(|(t0, g)| t0 * (1.0 + g).powi(t as i32))
            .collect()
    }
}

/// One solved period of a trajectory.
#[derive(Debug, Clone)]
pub struct PeriodRecord {
    pub period: usize,
    pub productivity: Vec<f64>,
    pub prices: Vec<f64>,
    pub labor: Vec<f64>,
    /// Real output per sector, `Y_a`.
    pub outputs: Vec<f64>,
    /// Nominal expenditure share of each sector, `P_a Y_a / GDP`.
    pub expenditure_shares: Vec<f64>,
    pub nominal_gdp: f64,
}

/// All periods of a trajectory plus the invariance certificate.
#[derive(Debug, Clone)]
pub struct TrajectoryReport {
    pub sector_names: Vec<String>,
    pub growth: Vec<f64>,
    pub classification: Vec<SectorClass>,
    pub periods: Vec<PeriodRecord>,
    /// Per sector: `max_t |P_a(t) T_a(t) / (P_a(0) T_a(0)) - 1|`. Under fixed
    /// wage, rate of return, and depreciation this drift is pure rounding.
    pub price_productivity_drift: Vec<f64>,
}

impl TrajectoryReport {
    /// `P_a(t) / P_b(t)`.
    pub fn relative_price(&self, period: usize, a: usize, b: usize) -> f64 {
        self.periods[period].prices[a] / self.periods[period].prices[b]
    }

    /// Whether every sector's price-times-productivity product stayed constant
    /// to within the pinned tolerance.
    pub fn certified(&self) -> bool {
        self.price_productivity_drift
            .iter()
            .all(|d| *d < TRAJECTORY_INVARIANCE)
    }
}

/// Re-solves the economy at every period of the growth path.
pub fn baumol_trajectory(traj: &TrajectorySpec) -> Result<TrajectoryReport> {
    let m = traj.economy.num_sectors();
    let mut periods = Vec::with_capacity(traj.horizon + 1);
    let mut drift = vec![0.0_f64; m];
    let mut base_product: Vec<f64> = Vec::new();

    for t in 0..=traj.horizon {
        let productivity = traj.productivity_at(t);
        let mut spec = traj.economy.clone();
        spec.productivity = productivity.clone();
        let solution = assemble_solution(&spec).map_err(|source| EconError::AtPeriod {
            period: t,
            source: Box::new(source),
        })?;
        let outputs = solution.outputs();
        let expenditure_shares: Vec<f64> = (0..m)
            .map(|a| solution.prices[a] * outputs[a] / solution.aggregates.nominal_gdp)
            .collect();

        for a in 0..m {
            let product = solution.prices[a] * productivity[a];
            if t == 0 {
                base_product.push(product);
            } else {
                drift[a] = drift[a].max((product / base_product[a] - 1.0).abs());
            }
        }

        periods.push(PeriodRecord {
            period: t,
            productivity,
            prices: solution.prices,
            labor: solution.labor,
            outputs,
            expenditure_shares,
            nominal_gdp: solution.aggregates.nominal_gdp,
        });
    }

    Ok(TrajectoryReport {
        sector_names: traj.economy.sector_names.clone(),
        growth: traj.growth.clone(),
        classification: traj.classification.clone(),
        periods,
        price_productivity_drift: drift,
    })
}

/// Relative-price growth of one sector against the most progressive one.
#[derive(Debug, Clone, Copy)]
pub struct RelativePriceGrowth {
    pub sector: usize,
    /// `(P_a(H)/P_a(0)) / (P_base(H)/P_base(0))`; above one means the
    /// sector's price rose relative to the base sector's.
    pub factor: f64,
}

/// Cumulative relative-price picture of a finished trajectory.
#[derive(Debug, Clone)]
pub struct CostDiseaseSummary {
    /// The most progressive sector (highest growth rate), used as the base.
    pub base_sector: usize,
    /// Every other sector's cumulative relative-price growth against the base.
    pub comparisons: Vec<RelativePriceGrowth>,
    /// Sectors labeled stagnant with below-mean growth whose relative price
    /// failed to rise.
    pub violations: Vec<usize>,
    pub consistent: bool,
}

/// Summarizes cumulative relative-price growth against the most progressive
/// sector and checks the classification for consistency: a stagnant sector
/// with below-mean growth must show a rising relative price.
pub fn cost_disease_report(report: &TrajectoryReport) -> CostDiseaseSummary {
    let m = report.sector_names.len();
    let base_sector = (0..m)
        .max_by(|&i, &j| report.growth[i].total_cmp(&report.growth[j]))
        .expect("at least one sector");
    let first = &report.periods[0];
    let last = report.periods.last().expect("at least the base period");
    let base_growth = last.prices[base_sector] / first.prices[base_sector];

    let comparisons: Vec<RelativePriceGrowth> = (0..m)
        .filter(|&a| a != base_sector)
        .map(|a| RelativePriceGrowth {
            sector: a,
            factor: (last.prices[a] / first.prices[a]) / base_growth,
        })
        .collect();

    let mean_growth = report.growth.iter().sum::<f64>() / m as f64;
    let violations: Vec<usize> = comparisons
        .iter()
        .filter(|c| {
            report.classification[c.sector] == SectorClass::Stagnant
                && report.growth[c.sector] < mean_growth
                && c.factor <= 1.0
        })
        .map(|c| c.sector)
        .collect();

    CostDiseaseSummary {
        base_sector,
        consistent: violations.is_empty(),
        comparisons,
        violations,
    }
}
