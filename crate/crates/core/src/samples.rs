//! Ready-made economies used by the documentation, the test suites, the
//! benchmarks, and the shipped configuration files.

use crate::closed_form::ToyEconomy;
use crate::dynamics::TrajectorySpec;
use crate::economy::EconomySpec;

/// One sector with labor exponent 2/3, no depreciation, and a rate of return
/// of 1/3. Everything about it is analytic: price 1.5, capital per laborer 1,
/// GDP 150, aggregate capital 150, labor share 2/3.
pub fn one_sector() -> ToyEconomy {
    ToyEconomy {
        labor_exponents: vec![2.0 / 3.0],
        productivity: vec![1.0],
        depreciation: vec![0.0],
        utility_weights: vec![1.0],
        total_labor: 100.0,
        rate_of_return: 1.0 / 3.0,
        wage: 1.0,
    }
}

/// Four goods with a sparse capital structure: wheat is grown from seed wheat
/// with tractors and engine power (no CNC machines in the field), tractors
/// are machined with power and CNC routers, power generation runs on its own
/// output plus CNC-made parts, and CNC machines reproduce themselves with
/// power. Seed wheat is consumed entirely each season, so its depreciation
/// rate is one.
pub fn wheat_tractor_power_cnc() -> EconomySpec {
    EconomySpec {
        sector_names: vec![
            "wheat".to_string(),
            "tractor".to_string(),
            "power".to_string(),
            "cnc".to_string(),
        ],
        capital_exponents: vec![
            vec![0.10, 0.15, 0.10, 0.00],
            vec![0.00, 0.00, 0.10, 0.20],
            vec![0.00, 0.00, 0.15, 0.15],
            vec![0.00, 0.00, 0.10, 0.25],
        ],
        productivity: vec![3.0, 1.2, 2.0, 1.0],
        depreciation: vec![1.0, 0.10, 0.15, 0.08],
        utility_weights: vec![3.0, 0.5, 1.0, 0.5],
        total_labor: 1000.0,
        rate_of_return: 0.05,
        wage: 1.0,
    }
}

/// Two pure-labor sectors a century apart in productivity growth: carrot
/// farming gets fifty times more productive over one hundred periods while
/// education stays flat. A year of tuition starts out worth 50 kg of carrots
/// and ends up worth 2500 kg.
pub fn carrots_education() -> TrajectorySpec {
    let economy = EconomySpec {
        sector_names: vec!["carrots".to_string(), "education".to_string()],
        capital_exponents: vec![vec![0.0, 0.0], vec![0.0, 0.0]],
        productivity: vec![1.0, 0.02],
        depreciation: vec![0.0, 0.0],
        utility_weights: vec![1.0, 1.0],
        total_labor: 100.0,
        rate_of_return: 0.05,
        wage: 1.0,
    };
    // Fifty-fold productivity growth spread evenly over the horizon.
    let growth = 50.0_f64.powf(0.01) - 1.0;
    TrajectorySpec::new(economy, vec![growth, 0.0], 100).expect("valid growth path")
}
