//! Deterministic fixtures for the benchmarks.

use longrun::EconomySpec;

/// An `m`-sector economy on a ring: each sector installs its own good and the
/// next sector's good as capital. Scales to any `m` without randomness.
pub fn ring_economy(m: usize) -> EconomySpec {
    let mut capital_exponents = vec![vec![0.0; m]; m];
    for a in 0..m {
        capital_exponents[a][a] = 0.2;
        capital_exponents[a][(a + 1) % m] = 0.15;
    }
    EconomySpec {
        sector_names: (0..m).map(|a| format!("ring{a}")).collect(),
        capital_exponents,
        productivity: (0..m).map(|a| 0.5 + 0.1 * (a % 7) as f64).collect(),
        depreciation: (0..m).map(|a| 0.02 + 0.01 * (a % 5) as f64).collect(),
        utility_weights: (0..m).map(|a| 1.0 + 0.25 * (a % 3) as f64).collect(),
        total_labor: 1000.0,
        rate_of_return: 0.05,
        wage: 1.0,
    }
}
