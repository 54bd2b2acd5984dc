//! Long-run equilibrium of multi-sector Cobb-Douglas economies.
//!
//! Each of `M` sectors produces one good from labor and from installed
//! physical quantities of the other goods. In the long run the wage and the
//! rate of return are common across sectors, which pins down every price and
//! every capital-per-laborer ratio; household preferences then close the
//! system by fixing the labor allocation, and the extensive quantities
//! (capital, output, income) aggregate by summation.
//!
//! The crate is organized in layers:
//!
//! * [`economy`] -- domain types, validation, production functions and their
//!   marginal products.
//! * [`closed_form`] -- analytic evaluators for the diagonal economy and the
//!   two-sector economy with cross capital.
//! * [`solver`] -- the general M-sector pipeline (log-linear price system,
//!   intensities, demand-side labor allocation, aggregation) plus calibration
//!   of the rate of return to a capital target.
//! * [`oracle`] -- independent verification: finite-difference marginal
//!   conditions, demand-side re-checks, and the labor-share adjudication.
//! * [`dynamics`] -- wage-equalizing labor relaxation and productivity-growth
//!   price trajectories.
//!
//! Everything is pure and immutable after construction; values can be shared
//! across threads freely.

pub mod closed_form;
pub mod dynamics;
pub mod economy;
mod error;
mod linalg;
pub mod oracle;
pub mod samples;
pub mod solution;
pub mod solver;
pub mod tolerances;

pub use closed_form::{BisectorEconomy, ToyAggregates, ToyEconomy};
pub use dynamics::{
    alternating_perturbation, baumol_trajectory, cost_disease_report, simulate_relaxation,
    CostDiseaseSummary, PeriodRecord, RelativePriceGrowth, Relaxation, RelaxationRecord,
    RelaxationState, RelaxationTrace, SectorClass, TrajectoryReport, TrajectorySpec,
};
pub use economy::{
    evaluate_production, marginal_products, EconomySpec, Marginals, ProductionInput,
    ValidationReport, Violation,
};
pub use error::{EconError, Result};
pub use oracle::{
    adjudicate_labor_share, brute_force_labor_check, check_marginal_conditions, LaborCheckVerdict,
    ResidualReport, ShareAdjudication,
};
pub use solution::{AggregateReport, EquilibriumSolution};
pub use solver::{
    assemble_solution, assemble_solution_strict, calibrate_rate_of_return, capital_intensities,
    demand_closure, labor_distribution, output_per_labor, solve_prices, DemandClosure, PriceSystem,
};
