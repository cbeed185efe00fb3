//! Reduced state of one qubit and its entanglement with the reservoir.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::amplitude::excited_amplitude;
use crate::error::{Error, Result};
use crate::oracle::GridSpec;
use crate::params::ReservoirParams;

/// Slack allowed on `|u_p| ≤ 1` for accumulated rounding.
pub const AMPLITUDE_SLACK: f64 = 1e-9;

/// Initial Bloch-sphere coordinates: `θ₀ = 0` is the excited state,
/// `θ₀ = π` the ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochInit {
    theta0: f64,
    phi0: f64,
}

impl BlochInit {
    pub fn new(theta0: f64, phi0: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta0) {
            return Err(Error::domain(
                "BlochInit",
                format!("theta0 must lie in [0, pi], got {theta0}"),
            ));
        }
        if !(0.0..TAU).contains(&phi0) {
            return Err(Error::domain(
                "BlochInit",
                format!("phi0 must lie in [0, 2pi), got {phi0}"),
            ));
        }
        Ok(BlochInit { theta0, phi0 })
    }

    pub fn excited() -> Self {
        BlochInit {
            theta0: 0.0,
            phi0: 0.0,
        }
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn phi0(&self) -> f64 {
        self.phi0
    }

    /// `cos²(θ₀/2)`, the initial excited population.
    pub fn excited_weight(&self) -> f64 {
        (0.5 * self.theta0).cos().powi(2)
    }
}

/// 2×2 reduced density matrix in the `{|1⟩, |0⟩}` basis with its spectrum.
///
/// `rho01` carries `½ u_p e^{iφ₀} sin θ₀`; `rho10` is its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleQubitDensity {
    pub rho11: Complex64,
    pub rho10: Complex64,
    pub rho01: Complex64,
    pub rho00: Complex64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

impl SingleQubitDensity {
    /// Trace, Hermiticity, spectrum range and positivity, all to `tol`.
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        const OP: &str = "density_matrix";
        let fail = |msg: String| Err(Error::Invariant { op: OP, msg });
        let trace = self.rho11 + self.rho00;
        if (trace - 1.0).norm() > tol {
            return fail(format!("trace {trace}"));
        }
        if (self.rho10 - self.rho01.conj()).norm() > tol {
            return fail("coherences are not conjugate".into());
        }
        if self.rho11.im.abs() > tol || self.rho00.im.abs() > tol {
            return fail("populations are not real".into());
        }
        let det = self.rho11.re * self.rho00.re - self.rho01.norm_sqr();
        if det < -tol {
            return fail(format!("negative determinant {det}"));
        }
        let (lp, lm) = (self.lambda_plus, self.lambda_minus);
        if !(-tol..=1.0 + tol).contains(&lp) || !(-tol..=1.0 + tol).contains(&lm) {
            return fail(format!("eigenvalues out of range: {lp}, {lm}"));
        }
        if (lp + lm - 1.0).abs() > tol {
            return fail(format!("eigenvalues sum to {}", lp + lm));
        }
        Ok(())
    }
}

/// Reduced density matrix for amplitude `u_p`.
pub fn density_matrix(init: &BlochInit, u_p: Complex64) -> Result<SingleQubitDensity> {
    let p = u_p.norm_sqr();
    if !(u_p.norm() <= 1.0 + AMPLITUDE_SLACK) {
        return Err(Error::domain(
            "density_matrix",
            format!("|u_p| = {} exceeds 1", u_p.norm()),
        ));
    }
    let weight = init.excited_weight();
    let rho11 = p * weight;
    let rho01 = 0.5 * u_p * Complex64::from_polar(1.0, init.phi0) * init.theta0.sin();
    let disc = (1.0 - 4.0 * weight * weight * (p - p * p)).max(0.0).sqrt();
    let lambda_plus = (0.5 * (1.0 + disc)).clamp(0.0, 1.0);
    let lambda_minus = (0.5 * (1.0 - disc)).clamp(0.0, 1.0);
    Ok(SingleQubitDensity {
        rho11: Complex64::new(rho11, 0.0),
        rho10: rho01.conj(),
        rho01,
        rho00: Complex64::new(1.0 - rho11, 0.0),
        lambda_plus,
        lambda_minus,
    })
}

/// `P(βt) = |u_p|² cos²(θ₀/2)`.
pub fn excited_probability(init: &BlochInit, params: &ReservoirParams, t: f64) -> Result<f64> {
    let u = excited_amplitude(params, t)?;
    Ok(u.norm_sqr() * init.excited_weight())
}

fn xlnx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Von Neumann entropy in nats, `−λ₊ ln λ₊ − λ₋ ln λ₋`.
pub fn von_neumann_entropy(density: &SingleQubitDensity) -> f64 {
    (-xlnx(density.lambda_plus) - xlnx(density.lambda_minus)).max(0.0)
}

/// One sample of a single-qubit trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub beta_t: f64,
    pub probability: f64,
    pub entropy: f64,
}

/// Excited probability and entropy at every grid time.
pub fn entropy_trace(
    init: &BlochInit,
    params: &ReservoirParams,
    grid: &GridSpec,
) -> Result<Vec<TracePoint>> {
    grid.times()
        .map(|t| {
            let u = excited_amplitude(params, t)?;
            let density = density_matrix(init, u)?;
            Ok(TracePoint {
                beta_t: t,
                probability: density.rho11.re,
                entropy: von_neumann_entropy(&density),
            })
        })
        .collect()
}

/// Peak-to-peak tolerance on the final 20% of a trace for it to count as
/// settled.
pub const PLATEAU_TOL: f64 = 1e-3;

/// Mean of the last 20% of `values` when their peak-to-peak spread is below
/// [`PLATEAU_TOL`].
pub fn plateau(values: &[f64]) -> Option<f64> {
    if values.len() < 5 {
        return None;
    }
    let tail = &values[values.len() - values.len() / 5..];
    let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (hi - lo < PLATEAU_TOL).then(|| tail.iter().sum::<f64>() / tail.len() as f64)
}
