//! Mode drivers. Cells run in parallel; rows are collected in grid order.

use pbg_core::{
    concurrence, entropy_trace, envelope_amplitude, excited_amplitude, invert_laplace,
    solve_fractional_kinetic, steady_probability, Complex64, Family, LaplaceContour,
    ReservoirParams, TwoQubitInit,
};
use rayon::prelude::*;

use crate::config::{Mode, RunConfig};
use crate::error::CliError;
use crate::table::{label, Table};

/// Oracle comparisons start here to skip the square-root layer at `t = 0`.
pub const ORACLE_WINDOW_START: f64 = 0.1;

pub fn run(config: &RunConfig) -> Result<Table, CliError> {
    config.validate()?;
    match config.mode {
        Mode::Single => single(config),
        Mode::Two => two(config),
        Mode::SweepAlpha => sweep_alpha(config),
        Mode::SweepDelta if config.steady => steady_delta(config),
        Mode::SweepDelta => sweep_delta(config),
        Mode::OracleCheck => oracle_check(config),
    }
}

fn header(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn single(config: &RunConfig) -> Result<Table, CliError> {
    let trace = entropy_trace(&config.bloch_init()?, &config.params()?, &config.grid()?)?;
    let mut table = Table::new(header(&["beta_t", "P", "S"]));
    table.rows = trace
        .into_iter()
        .map(|p| vec![p.beta_t, p.probability, p.entropy])
        .collect();
    Ok(table)
}

/// Evaluate `row(t, u_p(t))` at every grid time.
fn trace_rows<F>(
    config: &RunConfig,
    params: &ReservoirParams,
    row: F,
) -> Result<Vec<Vec<f64>>, CliError>
where
    F: Fn(f64, Complex64) -> Result<Vec<f64>, CliError> + Sync,
{
    let grid = config.grid()?;
    (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let t = grid.time(i);
            row(t, excited_amplitude(params, t)?)
        })
        .collect()
}

fn two(config: &RunConfig) -> Result<Table, CliError> {
    let init = config.two_qubit_init(config.alpha2)?;
    let mut table = Table::new(header(&["beta_t", "P", "C"]));
    table.rows = trace_rows(config, &config.params()?, |t, u| {
        Ok(vec![t, u.norm_sqr(), concurrence(&init, u)?])
    })?;
    Ok(table)
}

fn sweep_alpha(config: &RunConfig) -> Result<Table, CliError> {
    let inits = config
        .alpha2_grid
        .iter()
        .map(|&a| config.two_qubit_init(a))
        .collect::<Result<Vec<_>, _>>()?;
    let mut names = vec!["beta_t".to_string()];
    names.extend(config.alpha2_grid.iter().map(|&a| label("c_a2", a)));
    let mut table = Table::new(names);
    table.rows = trace_rows(config, &config.params()?, |t, u| {
        let mut row = vec![t];
        for init in &inits {
            row.push(concurrence(init, u)?);
        }
        Ok(row)
    })?;
    Ok(table)
}

fn sweep_delta(config: &RunConfig) -> Result<Table, CliError> {
    let init = config.two_qubit_init(config.alpha2)?;
    let params = config
        .delta_grid
        .iter()
        .map(|&d| config.params_at(d))
        .collect::<Result<Vec<_>, _>>()?;
    let grid = config.grid()?;
    let mut names = vec!["beta_t".to_string()];
    names.extend(config.delta_grid.iter().map(|&d| label("c_delta", d)));
    let mut table = Table::new(names);
    table.rows = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let t = grid.time(i);
            let mut row = vec![t];
            for p in &params {
                row.push(concurrence(&init, excited_amplitude(p, t)?)?);
            }
            Ok(row)
        })
        .collect::<Result<_, CliError>>()?;
    Ok(table)
}

/// Steady probability and the steady concurrence of both families at the
/// configured `α²`.
fn steady_delta(config: &RunConfig) -> Result<Table, CliError> {
    let phi = TwoQubitInit::new(Family::Phi, config.alpha2.sqrt(), config.gamma_phase)?;
    let psi = TwoQubitInit::new(Family::Psi, config.alpha2.sqrt(), config.gamma_phase)?;
    let mut table = Table::new(header(&["delta_over_beta", "P_inf", "C_phi", "C_psi"]));
    table.rows = config
        .delta_grid
        .par_iter()
        .map(|&d| {
            let params = config.params_at(d)?;
            let p = steady_probability(&params)?;
            let u = Complex64::new(p.sqrt(), 0.0);
            Ok(vec![d, p, concurrence(&phi, u)?, concurrence(&psi, u)?])
        })
        .collect::<Result<_, CliError>>()?;
    Ok(table)
}

/// Largest pairwise deviations among the closed form, the extrapolated
/// march and the contour inversion over the oracle window.
fn oracle_check(config: &RunConfig) -> Result<Table, CliError> {
    let grid = config.grid()?;
    let contour = LaplaceContour::default();
    let mut table = Table::new(header(&[
        "delta_over_beta",
        "max_dev_march",
        "max_dev_laplace",
        "max_dev_march_laplace",
    ]));
    table.rows = config
        .delta_grid
        .par_iter()
        .map(|&d| {
            let params = config.params_at(d)?;
            let march = solve_fractional_kinetic(&params, &grid)?;
            let mut worst = [0.0_f64; 3];
            for (i, t) in grid.times().enumerate() {
                if t < ORACLE_WINDOW_START {
                    continue;
                }
                let exact = envelope_amplitude(&params, t)?;
                let laplace = invert_laplace(&params, t, &contour)?;
                worst[0] = worst[0].max((march[i] - exact).norm());
                worst[1] = worst[1].max((laplace - exact).norm());
                worst[2] = worst[2].max((march[i] - laplace).norm());
            }
            Ok(vec![d, worst[0], worst[1], worst[2]])
        })
        .collect::<Result<_, CliError>>()?;
    Ok(table)
}
