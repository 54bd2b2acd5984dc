//! Numeric tolerances used across the crate.
//!
//! Solvers and checks never carry ad-hoc thresholds; everything is pinned here.

/// Residual acceptance for the closed-form marginal-condition identities that
/// every assembled solution must satisfy. The identities are algebraic, so
/// observed residuals sit near machine precision; 1e-8 leaves generous headroom.
pub const SOLVER_RESIDUAL: f64 = 1e-8;

/// Relative tolerance on the labor sum `sum L_a = L_t` of a solution.
pub const LABOR_SUM_REL: f64 = 1e-10;

/// Relative tolerance for the Walras identity
/// `sum_a P_a C_a = W L_t + R_c K_t` at an accepted solution.
pub const WALRAS_REL: f64 = 1e-9;

/// Relative tolerance for the national-accounting identity
/// `GDP = labor income + capital income`.
pub const ACCOUNTING_REL: f64 = 1e-9;

/// Relative step of the central finite differences in the verification layer.
/// Balances truncation against roundoff for double precision on smooth powers.
pub const FD_RELATIVE_STEP: f64 = 1e-6;

/// Acceptance threshold for finite-difference marginal-condition residuals.
pub const FD_RESIDUAL: f64 = 1e-5;

/// Relative tolerance of the demand-side verification (constant preference
/// ratio across sectors, expenditure shares equal to normalized weights).
pub const LABOR_CHECK_REL: f64 = 1e-6;

/// Minimum magnitude of the two-sector closed-form exponent denominator.
pub const BISECTOR_DENOM_MIN: f64 = 1e-12;

/// Calibration terminates when aggregate capital matches the target this well...
pub const CALIBRATION_KT_REL: f64 = 1e-10;

/// ...or when the bisection bracket on the rate of return is this narrow.
pub const CALIBRATION_RC_ABS: f64 = 1e-12;

/// Default step gain of the labor relaxation.
pub const RELAX_DEFAULT_ETA: f64 = 0.1;

/// Default wage-dispersion tolerance declaring a relaxation converged.
pub const RELAX_DEFAULT_TOL: f64 = 1e-6;

/// Per-sector drift allowed in the price-times-productivity certificate of a
/// trajectory run under fixed wage, rate of return, and depreciation.
pub const TRAJECTORY_INVARIANCE: f64 = 1e-12;
