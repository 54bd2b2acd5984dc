//! Randomized economy generators shared by the integration suites.
//!
//! Everything draws from a caller-seeded `StdRng` so failures replay exactly.
#![allow(dead_code)] // each test target uses its own subset

use longrun::{BisectorEconomy, EconomySpec, ToyEconomy};
use rand::rngs::StdRng;
use rand::Rng;

pub fn random_toy(rng: &mut StdRng, sectors: std::ops::RangeInclusive<usize>) -> ToyEconomy {
    let m = rng.gen_range(sectors);
    ToyEconomy {
        labor_exponents: (0..m).map(|_| rng.gen_range(0.2..0.95)).collect(),
        productivity: (0..m).map(|_| rng.gen_range(0.1..10.0)).collect(),
        depreciation: (0..m).map(|_| rng.gen_range(0.0..0.3)).collect(),
        utility_weights: (0..m).map(|_| rng.gen_range(0.2..5.0)).collect(),
        total_labor: rng.gen_range(10.0..1e4),
        rate_of_return: rng.gen_range(0.01..0.5),
        wage: rng.gen_range(0.5..2.0),
    }
}

pub fn random_bisector(rng: &mut StdRng) -> BisectorEconomy {
    let row = |rng: &mut StdRng| {
        let sum: f64 = rng.gen_range(0.05..0.85);
        let split: f64 = rng.gen_range(0.0..1.0);
        // A fifth of the rows get no cross capital at all.
        if rng.gen_bool(0.2) {
            [sum, 0.0]
        } else {
            [sum * split, sum * (1.0 - split)]
        }
    };
    let own = row(rng);
    let other = row(rng);
    BisectorEconomy {
        capital_exponents: [own, [other[1], other[0]]],
        productivity: [rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0)],
        depreciation: rng.gen_range(0.0..0.3),
        rate_of_return: rng.gen_range(0.01..0.5),
        wage: rng.gen_range(0.5..2.0),
    }
}

/// Economy with a random sparse capital structure: each sector installs a
/// random subset of goods, row sums kept safely below one.
pub fn random_sparse_economy(rng: &mut StdRng) -> EconomySpec {
    let m = rng.gen_range(2..=6);
    let mut capital_exponents = vec![vec![0.0; m]; m];
    for row in capital_exponents.iter_mut() {
        let nonzero = rng.gen_range(0..=m);
        if nonzero == 0 {
            continue;
        }
        let row_sum: f64 = rng.gen_range(0.05..0.8);
        let mut weights: Vec<f64> = (0..nonzero).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w *= row_sum / total;
        }
        let mut goods: Vec<usize> = (0..m).collect();
        for weight in weights {
            let pick = rng.gen_range(0..goods.len());
            row[goods.swap_remove(pick)] = weight;
        }
    }
    EconomySpec {
        sector_names: (0..m).map(|a| format!("g{a}")).collect(),
        capital_exponents,
        productivity: (0..m).map(|_| rng.gen_range(0.1..10.0)).collect(),
        depreciation: (0..m).map(|_| rng.gen_range(0.0..0.5)).collect(),
        utility_weights: (0..m).map(|_| rng.gen_range(0.2..5.0)).collect(),
        total_labor: rng.gen_range(10.0..1e4),
        rate_of_return: rng.gen_range(0.01..0.5),
        wage: rng.gen_range(0.5..2.0),
    }
}
