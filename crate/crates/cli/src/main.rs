use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use longrun::{
    adjudicate_labor_share, assemble_solution, baumol_trajectory, brute_force_labor_check,
    calibrate_rate_of_return, check_marginal_conditions, cost_disease_report, simulate_relaxation,
    solve_prices, EconomySpec, SectorClass, TrajectorySpec,
};
use longrun_cli::config::{parse_config, ParsedConfig, RateMode};
use longrun_cli::report::{
    fmt_f64, read_solution_report, summary_text, write_atomic, write_solution_report,
};
use longrun_cli::CliError;

#[derive(Parser)]
#[command(
    name = "longrun",
    version,
    about = "Long-run multi-sector equilibrium solver"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the long-run equilibrium, verify it, and write a report
    Solve {
        #[arg(long)]
        economy: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate the diagonal-economy closed forms
    Toy {
        #[arg(long)]
        economy: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the two-sector closed forms and cross-check the solver
    Bisector {
        #[arg(long)]
        economy: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the verification layer on a stored report
    Check {
        #[arg(long)]
        report: PathBuf,
    },
    /// Relax a perturbed labor allocation back to equal wages
    Relax {
        #[arg(long)]
        economy: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        eta: f64,
        #[arg(long, default_value_t = 0.1)]
        perturb: f64,
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-solve the economy along its productivity growth path
    Baumol {
        #[arg(long)]
        economy: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find the rate of return that hits a target aggregate capital
    Calibrate {
        #[arg(long)]
        economy: PathBuf,
        #[arg(long = "target-capital")]
        target_capital: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Solve { economy, out } => solve(&economy, &out),
        Command::Toy { economy, out } => toy(&economy, out.as_deref()),
        Command::Bisector { economy, out } => bisector(&economy, out.as_deref()),
        Command::Check { report } => check(&report),
        Command::Relax {
            economy,
            eta,
            perturb,
            steps,
            tol,
            out,
        } => relax(&economy, eta, perturb, steps, tol, out.as_deref()),
        Command::Baumol {
            economy,
            horizon,
            out,
        } => baumol(&economy, horizon, out.as_deref()),
        Command::Calibrate {
            economy,
            target_capital,
            out,
        } => calibrate(&economy, target_capital, out.as_deref()),
    }
}

/// Parses the config, surfaces lenient-mode warnings, and resolves the rate
/// of return (calibrating when the file gives a capital target instead).
fn load_economy(path: &Path) -> Result<EconomySpec, CliError> {
    let parsed = load_config(path)?;
    resolve_rate(&parsed)
}

fn load_config(path: &Path) -> Result<ParsedConfig, CliError> {
    let parsed = parse_config(path)?;
    for warning in &parsed.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(parsed)
}

fn resolve_rate(parsed: &ParsedConfig) -> Result<EconomySpec, CliError> {
    match parsed.rate {
        RateMode::Exogenous(_) => Ok(parsed.economy.clone()),
        RateMode::CalibrateTo(target) => {
            let rate = calibrate_rate_of_return(&parsed.economy, target)?;
            eprintln!("calibrated rate_of_return = {}", fmt_f64(rate));
            Ok(parsed.economy.with_rate_of_return(rate))
        }
    }
}

fn solve(economy: &Path, out: &Path) -> Result<(), CliError> {
    let spec = load_economy(economy)?;
    let solution = assemble_solution(&spec)?;
    let residuals = check_marginal_conditions(&spec, &solution)?;
    let verdict = brute_force_labor_check(&spec, &solution);
    if !residuals.passes() {
        return Err(CliError::Oracle(format!(
            "finite-difference residual {:e} out of tolerance",
            residuals.max_abs
        )));
    }
    if !verdict.passes {
        return Err(CliError::Oracle(format!(
            "demand-side check failed (ratio spread {:e}, share error {:e})",
            verdict.lagrange_spread, verdict.max_share_error
        )));
    }
    write_solution_report(out, &spec, &solution, &residuals, &verdict)?;
    print!("{}", summary_text(&spec, &solution, &residuals, &verdict));
    println!("report written to {}", out.display());
    Ok(())
}

fn toy(economy: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let spec = load_economy(economy)?;
    let toy = spec.to_toy().ok_or_else(|| {
        CliError::Validation(
            "the closed forms need a diagonal economy: each sector may install only its own good"
                .to_string(),
        )
    })?;
    let labor = toy.labor_distribution();
    let aggregates = toy.aggregates();
    let shares = adjudicate_labor_share(&toy);

    let mut sectors_csv = String::from("sector,price,capital_per_labor,labor\n");
    println!(
        "{:<16} {:>14} {:>18} {:>14}",
        "sector", "price", "capital_per_labor", "labor"
    );
    for a in 0..toy.num_sectors() {
        let price = toy.price(a);
        let intensity = toy.capital_per_labor(a);
        let _ = writeln!(
            sectors_csv,
            "{},{},{},{}",
            spec.sector_names[a],
            fmt_f64(price),
            fmt_f64(intensity),
            fmt_f64(labor[a])
        );
        println!(
            "{:<16} {:>14.6} {:>18.6} {:>14.6}",
            spec.sector_names[a], price, intensity, labor[a]
        );
    }
    println!("aggregate capital: {:.6}", aggregates.aggregate_capital);
    println!("nominal gdp:       {:.6}", aggregates.nominal_gdp);
    println!("capital income:    {:.6}", aggregates.capital_income);
    println!(
        "labor share:       {:.6} (direct {:.6}, reciprocal form {:.6})",
        aggregates.labor_share, shares.direct, shares.reciprocal
    );

    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        write_atomic(&dir.join("toy_sectors.csv"), &sectors_csv)?;
        let aggregates_csv = format!(
            "aggregate_capital,nominal_gdp,labor_income,capital_income,labor_share,labor_share_direct,labor_share_reciprocal\n{},{},{},{},{},{},{}\n",
            fmt_f64(aggregates.aggregate_capital),
            fmt_f64(aggregates.nominal_gdp),
            fmt_f64(aggregates.labor_income),
            fmt_f64(aggregates.capital_income),
            fmt_f64(aggregates.labor_share),
            fmt_f64(shares.direct),
            fmt_f64(shares.reciprocal),
        );
        write_atomic(&dir.join("toy_aggregates.csv"), &aggregates_csv)?;
        println!("closed forms written to {}", dir.display());
    }
    Ok(())
}

fn bisector(economy: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let spec = load_economy(economy)?;
    let bi = spec.to_bisector().ok_or_else(|| {
        CliError::Validation(
            "the two-sector closed forms need exactly two sectors with a common depreciation rate"
                .to_string(),
        )
    })?;
    let closed = [bi.price(0)?, bi.price(1)?];
    let solved = solve_prices(&spec)?;
    let drift = (0..2)
        .map(|a| (closed[a] / solved[a] - 1.0).abs())
        .fold(0.0, f64::max);

    let mut csv = String::from("sector,price_closed_form,price_solver,capital_own,capital_cross\n");
    println!(
        "{:<16} {:>18} {:>18} {:>14} {:>14}",
        "sector", "price_closed_form", "price_solver", "capital_own", "capital_cross"
    );
    for a in 0..2 {
        // Stocks per unit of sector labor.
        let stocks = bi.capital_allocation(a, 1.0)?;
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            spec.sector_names[a],
            fmt_f64(closed[a]),
            fmt_f64(solved[a]),
            fmt_f64(stocks[a]),
            fmt_f64(stocks[1 - a])
        );
        println!(
            "{:<16} {:>18.9} {:>18.9} {:>14.6} {:>14.6}",
            spec.sector_names[a],
            closed[a],
            solved[a],
            stocks[a],
            stocks[1 - a]
        );
    }
    println!("closed form vs solver, max relative difference: {drift:.3e}");

    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        write_atomic(&dir.join("bisector.csv"), &csv)?;
        println!("closed forms written to {}", dir.display());
    }
    Ok(())
}

fn check(report_dir: &Path) -> Result<(), CliError> {
    let (spec, solution) = read_solution_report(report_dir)?;
    let residuals = check_marginal_conditions(&spec, &solution)?;
    let verdict = brute_force_labor_check(&spec, &solution);
    println!(
        "max residual {:.3e}; walras {:.3e}; accounting {:.3e}; demand check {}",
        residuals.max_abs,
        residuals.walras,
        residuals.accounting,
        if verdict.passes { "pass" } else { "FAIL" }
    );
    if !residuals.passes() {
        return Err(CliError::Oracle(format!(
            "stored report fails the marginal-condition checks (max residual {:e})",
            residuals.max_abs
        )));
    }
    if !verdict.passes {
        return Err(CliError::Oracle(format!(
            "stored report fails the demand-side check (ratio spread {:e}, share error {:e})",
            verdict.lagrange_spread, verdict.max_share_error
        )));
    }
    println!("report verifies");
    Ok(())
}

fn relax(
    economy: &Path,
    eta: f64,
    perturb: f64,
    steps: usize,
    tol: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let spec = load_economy(economy)?;
    let perturbation = longrun::alternating_perturbation(spec.num_sectors(), perturb);
    let trace = simulate_relaxation(&spec, &perturbation, eta, steps, tol)?;

    println!(
        "converged in {} steps; final dispersion {:.3e}",
        trace.converged_in,
        trace.records.last().map_or(0.0, |r| r.dispersion)
    );
    let worst = trace
        .final_labor
        .iter()
        .zip(&trace.equilibrium_labor)
        .map(|(found, want)| (found / want - 1.0).abs())
        .fold(0.0, f64::max);
    println!("max relative distance to the demand-side allocation: {worst:.3e}");

    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut csv = String::from("step,dispersion,weighted_variance");
        for name in &spec.sector_names {
            let _ = write!(csv, ",labor_{name}");
        }
        for name in &spec.sector_names {
            let _ = write!(csv, ",wage_{name}");
        }
        csv.push('\n');
        for record in &trace.records {
            let _ = write!(
                csv,
                "{},{},{}",
                record.step,
                fmt_f64(record.dispersion),
                fmt_f64(record.weighted_variance)
            );
            for value in record.labor.iter().chain(&record.wages) {
                let _ = write!(csv, ",{}", fmt_f64(*value));
            }
            csv.push('\n');
        }
        write_atomic(&dir.join("relax.csv"), &csv)?;
        println!("trace written to {}", dir.display());
    }
    Ok(())
}

fn baumol(economy: &Path, horizon: Option<usize>, out: Option<&Path>) -> Result<(), CliError> {
    let parsed = load_config(economy)?;
    let spec = resolve_rate(&parsed)?;
    let growth = parsed.growth.clone().ok_or_else(|| {
        CliError::Validation("the config needs a `growth` map for a trajectory".to_string())
    })?;
    let horizon = horizon.or(parsed.horizon).ok_or_else(|| {
        CliError::Validation("give --horizon or a `horizon` key in the config".to_string())
    })?;
    let traj = TrajectorySpec::new(spec.clone(), growth, horizon)?;
    let report = baumol_trajectory(&traj)?;
    let summary = cost_disease_report(&report);
    let base = summary.base_sector;

    println!(
        "base sector (most progressive): {}",
        spec.sector_names[base]
    );
    for comparison in &summary.comparisons {
        println!(
            "{:<16} {:>12} growth {:>8.4} relative price growth x{:.6}",
            spec.sector_names[comparison.sector],
            match report.classification[comparison.sector] {
                SectorClass::Stagnant => "stagnant",
                SectorClass::Progressive => "progressive",
            },
            report.growth[comparison.sector],
            comparison.factor
        );
    }
    println!(
        "price-times-productivity invariance: {} (max drift {:.3e})",
        if report.certified() {
            "certified"
        } else {
            "VIOLATED"
        },
        report
            .price_productivity_drift
            .iter()
            .cloned()
            .fold(0.0, f64::max)
    );
    if !summary.consistent {
        println!("classification inconsistencies: {:?}", summary.violations);
    }

    if let Some(dir) = out {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let mut csv = String::from("period");
        for name in &spec.sector_names {
            let _ = write!(
                csv,
                ",productivity_{name},price_{name},output_{name},share_{name},relprice_{name}"
            );
        }
        csv.push('\n');
        for period in &report.periods {
            let _ = write!(csv, "{}", period.period);
            for a in 0..spec.num_sectors() {
                let _ = write!(
                    csv,
                    ",{},{},{},{},{}",
                    fmt_f64(period.productivity[a]),
                    fmt_f64(period.prices[a]),
                    fmt_f64(period.outputs[a]),
                    fmt_f64(period.expenditure_shares[a]),
                    fmt_f64(period.prices[a] / period.prices[base])
                );
            }
            csv.push('\n');
        }
        write_atomic(&dir.join("baumol.csv"), &csv)?;
        println!("trajectory written to {}", dir.display());
    }
    Ok(())
}

fn calibrate(economy: &Path, target_capital: f64, out: Option<&Path>) -> Result<(), CliError> {
    let parsed = load_config(economy)?;
    let rate = calibrate_rate_of_return(&parsed.economy, target_capital)?;
    println!("rate_of_return = {}", fmt_f64(rate));
    let spec = parsed.economy.with_rate_of_return(rate);
    let solution = assemble_solution(&spec)?;
    println!(
        "aggregate capital at that rate: {}",
        fmt_f64(solution.aggregates.aggregate_capital)
    );
    if let Some(dir) = out {
        let residuals = check_marginal_conditions(&spec, &solution)?;
        let verdict = brute_force_labor_check(&spec, &solution);
        write_solution_report(dir, &spec, &solution, &residuals, &verdict)?;
        println!("report written to {}", dir.display());
    }
    Ok(())
}
