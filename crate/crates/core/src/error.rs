//! Error type shared by every operation in the crate.

use std::fmt;

use crate::economy::ValidationReport;

/// Failure modes of solving, calibration, and dynamics.
#[derive(Debug, Clone)]
pub enum EconError {
    /// The economy failed invariant validation; the report lists every violation.
    InvalidEconomy(ValidationReport),
    /// A numeric operation left its domain (zero base with negative exponent,
    /// non-finite input, and the like).
    Domain(String),
    /// A linear system had no unique solution.
    SingularSystem(String),
    /// The demand side admits no positive allocation: some labor or consumption
    /// quantity came out non-positive.
    InfeasibleEconomy(String),
    /// The closed-form two-sector price has a vanishing exponent denominator.
    DegenerateDenominator { denominator: f64 },
    /// A calibration target lies outside the reachable range.
    OutOfRange(String),
    /// A relaxation step would drive some sector's labor non-positive.
    StepSize { sector: usize, labor: f64 },
    /// Relaxation did not reach the dispersion tolerance within the step budget.
    NonConvergence { steps: usize, dispersion: f64 },
    /// A solution failed the independent verification layer.
    OracleFailure(String),
    /// A trajectory period failed; carries the period index and the cause.
    AtPeriod {
        period: usize,
        source: Box<EconError>,
    },
}

impl fmt::Display for EconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EconError::InvalidEconomy(report) => {
                write!(f, "invalid economy: {}", report.summary())
            }
            EconError::Domain(msg) => write!(f, "domain error: {msg}"),
            EconError::SingularSystem(msg) => write!(f, "singular system: {msg}"),
            EconError::InfeasibleEconomy(msg) => write!(f, "infeasible economy: {msg}"),
            EconError::DegenerateDenominator { denominator } => {
                write!(f, "degenerate exponent denominator {denominator:e}")
            }
            EconError::OutOfRange(msg) => write!(f, "target out of range: {msg}"),
            EconError::StepSize { sector, labor } => {
                write!(
                    f,
                    "step size too large: labor of sector {sector} would become {labor:e}"
                )
            }
            EconError::NonConvergence { steps, dispersion } => {
                write!(
                    f,
                    "no convergence after {steps} steps (wage dispersion {dispersion:e})"
                )
            }
            EconError::OracleFailure(msg) => write!(f, "oracle failure: {msg}"),
            EconError::AtPeriod { period, source } => write!(f, "period {period}: {source}"),
        }
    }
}

impl std::error::Error for EconError {}

pub type Result<T> = std::result::Result<T, EconError>;
