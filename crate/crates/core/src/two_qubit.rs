//! Two identical, independently damped qubits prepared in
//! `|Φ⟩ = α|01⟩ + γ|10⟩` or `|Ψ⟩ = α|00⟩ + γ|11⟩`.
//!
//! Basis order is `|11⟩, |10⟩, |01⟩, |00⟩` (labels 1..4). Each qubit maps
//! `|1⟩ → u_p|1⟩` and leaks the rest of its excitation into its own
//! reservoir, so the state stays X-shaped and six elements describe it.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::amplitude::{excited_amplitude, steady_probability};
use crate::error::{Error, Result};
use crate::oracle::GridSpec;
use crate::params::ReservoirParams;
use crate::single_qubit::AMPLITUDE_SLACK;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// One shared excitation, `α|01⟩ + γ|10⟩`.
    Phi,
    /// Zero or two excitations, `α|00⟩ + γ|11⟩`.
    Psi,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Phi => "phi",
            Family::Psi => "psi",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "phi" => Ok(Family::Phi),
            "psi" => Ok(Family::Psi),
            other => Err(format!("unknown family '{other}', expected phi or psi")),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Initial two-qubit state; `α` is real and `γ = √(1−α²) e^{iφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitInit {
    family: Family,
    alpha: f64,
    gamma_phase: f64,
}

impl TwoQubitInit {
    pub fn new(family: Family, alpha: f64, gamma_phase: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(
                "TwoQubitInit",
                format!("alpha must lie in [0, 1], got {alpha}"),
            ));
        }
        if !(0.0..TAU).contains(&gamma_phase) {
            return Err(Error::domain(
                "TwoQubitInit",
                format!("gamma phase must lie in [0, 2pi), got {gamma_phase}"),
            ));
        }
        Ok(TwoQubitInit {
            family,
            alpha,
            gamma_phase,
        })
    }

    /// Construct from the entangled degree `α²`.
    pub fn from_alpha2(family: Family, alpha2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha2) {
            return Err(Error::domain(
                "TwoQubitInit",
                format!("alpha^2 must lie in [0, 1], got {alpha2}"),
            ));
        }
        Self::new(family, alpha2.sqrt(), 0.0)
    }

    /// Bell state of the family (`α² = 1/2`).
    pub fn bell(family: Family) -> Self {
        TwoQubitInit {
            family,
            alpha: std::f64::consts::FRAC_1_SQRT_2,
            gamma_phase: 0.0,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma_phase(&self) -> f64 {
        self.gamma_phase
    }

    /// `|γ| = √(1 − α²)`.
    pub fn gamma_modulus(&self) -> f64 {
        (1.0 - self.alpha * self.alpha).max(0.0).sqrt()
    }

    pub fn gamma(&self) -> Complex64 {
        Complex64::from_polar(self.gamma_modulus(), self.gamma_phase)
    }

    /// Elements of the initial projector.
    pub fn initial_elements(&self) -> TwoQubitElements {
        let g2 = self.gamma_modulus().powi(2);
        let a2 = self.alpha * self.alpha;
        let coherence = self.gamma() * self.alpha;
        let zero = Complex64::new(0.0, 0.0);
        match self.family {
            Family::Phi => TwoQubitElements {
                rho11: 0.0,
                rho22: g2,
                rho33: a2,
                rho44: 0.0,
                rho14: zero,
                rho23: coherence,
            },
            Family::Psi => TwoQubitElements {
                rho11: g2,
                rho22: 0.0,
                rho33: 0.0,
                rho44: a2,
                rho14: coherence,
                rho23: zero,
            },
        }
    }
}

/// Non-zero elements of the X-shaped two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQubitElements {
    pub rho11: f64,
    pub rho22: f64,
    pub rho33: f64,
    pub rho44: f64,
    pub rho14: Complex64,
    pub rho23: Complex64,
}

impl TwoQubitElements {
    pub fn check_invariants(&self, tol: f64) -> Result<()> {
        const OP: &str = "two_qubit_elements";
        let pops = [self.rho11, self.rho22, self.rho33, self.rho44];
        if pops.iter().any(|&x| x < -tol) {
            return Err(Error::Invariant {
                op: OP,
                msg: format!("negative population in {pops:?}"),
            });
        }
        let total: f64 = pops.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(Error::Invariant {
                op: OP,
                msg: format!("populations sum to {total}"),
            });
        }
        if self.rho23.norm_sqr() > self.rho22 * self.rho33 + tol
            || self.rho14.norm_sqr() > self.rho11 * self.rho44 + tol
        {
            return Err(Error::Invariant {
                op: OP,
                msg: "coherence exceeds its 2x2 block bound".into(),
            });
        }
        Ok(())
    }

    /// Wootters concurrence of the X state for the given family:
    /// `2|ρ₂₃| − 2√(ρ₁₁ρ₄₄)` for Φ, `2|ρ₁₄| − 2√(ρ₂₂ρ₃₃)` for Ψ, clamped at 0.
    pub fn concurrence(&self, family: Family) -> f64 {
        let raw = match family {
            Family::Phi => {
                2.0 * self.rho23.norm() - 2.0 * (self.rho11 * self.rho44).max(0.0).sqrt()
            }
            Family::Psi => {
                2.0 * self.rho14.norm() - 2.0 * (self.rho22 * self.rho33).max(0.0).sqrt()
            }
        };
        raw.max(0.0)
    }
}

fn check_amplitude(op: &'static str, u_p: Complex64) -> Result<()> {
    if u_p.norm() <= 1.0 + AMPLITUDE_SLACK {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("|u_p| = {} exceeds 1", u_p.norm()),
        ))
    }
}

/// Evolved elements for single-qubit amplitude `u_p`.
///
/// `ρ₁₄` picks up `u_p²` (one factor per qubit); `ρ₂₃` picks up
/// `u_p u_p* = |u_p|²`.
pub fn two_qubit_elements(init: &TwoQubitInit, u_p: Complex64) -> Result<TwoQubitElements> {
    const OP: &str = "two_qubit_elements";
    check_amplitude(OP, u_p)?;
    let p = u_p.norm_sqr();
    let start = init.initial_elements();
    let rho11 = start.rho11 * p * p;
    let rho22 = start.rho11 * p * (1.0 - p) + start.rho22 * p;
    let rho33 = start.rho11 * p * (1.0 - p) + start.rho33 * p;
    let elements = TwoQubitElements {
        rho11,
        rho22,
        rho33,
        rho44: 1.0 - (rho11 + rho22 + rho33),
        rho14: start.rho14 * u_p * u_p,
        rho23: start.rho23 * p,
    };
    elements.check_invariants(1e-12)?;
    Ok(elements)
}

/// Unclamped concurrence expression at excited probability `p = |u_p|²`:
/// `2α|γ|p` for Φ, `2|γ|p(α − |γ|(1 − p))` for Ψ.
pub fn concurrence_argument(init: &TwoQubitInit, p: f64) -> f64 {
    let a = init.alpha;
    let g = init.gamma_modulus();
    match init.family {
        Family::Phi => 2.0 * a * g * p,
        Family::Psi => 2.0 * g * p * (a - g * (1.0 - p)),
    }
}

fn family_guard(op: &'static str, init: &TwoQubitInit, expected: Family) -> Result<()> {
    if init.family == expected {
        Ok(())
    } else {
        Err(Error::domain(
            op,
            format!("expected the {expected} family, got {}", init.family),
        ))
    }
}

pub fn concurrence_phi(init: &TwoQubitInit, u_p: Complex64) -> Result<f64> {
    const OP: &str = "concurrence_phi";
    family_guard(OP, init, Family::Phi)?;
    check_amplitude(OP, u_p)?;
    Ok(concurrence_argument(init, u_p.norm_sqr()).max(0.0))
}

pub fn concurrence_psi(init: &TwoQubitInit, u_p: Complex64) -> Result<f64> {
    const OP: &str = "concurrence_psi";
    family_guard(OP, init, Family::Psi)?;
    check_amplitude(OP, u_p)?;
    Ok(concurrence_argument(init, u_p.norm_sqr()).max(0.0))
}

/// Concurrence of either family.
pub fn concurrence(init: &TwoQubitInit, u_p: Complex64) -> Result<f64> {
    match init.family {
        Family::Phi => concurrence_phi(init, u_p),
        Family::Psi => concurrence_psi(init, u_p),
    }
}

/// Long-time concurrence, evaluated at the steady excited probability.
pub fn steady_concurrence(init: &TwoQubitInit, params: &ReservoirParams) -> Result<f64> {
    let p = steady_probability(params)?;
    if p == 0.0 {
        return Ok(0.0);
    }
    Ok(concurrence_argument(init, p).max(0.0))
}

const GOLDEN_TOL: f64 = 1e-9;

/// `α²` maximising the concurrence at fixed excited probability `p`.
///
/// Scans `α²` on a 0.01 grid, then refines the best cell by golden-section
/// search.
pub fn optimal_alpha2_at(family: Family, p: f64) -> f64 {
    if family == Family::Phi {
        return 0.5;
    }
    let value = |alpha2: f64| {
        let init = TwoQubitInit {
            family,
            alpha: alpha2.sqrt(),
            gamma_phase: 0.0,
        };
        concurrence_argument(&init, p)
    };
    let best = (0..=100)
        .map(|i| i as f64 / 100.0)
        .max_by(|a, b| value(*a).total_cmp(&value(*b)))
        .unwrap_or(0.5);
    let (mut lo, mut hi) = ((best - 0.01).max(0.0), (best + 0.01).min(1.0));
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (value(x1), value(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = value(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = value(x1);
        }
    }
    0.5 * (lo + hi)
}

/// `α²` of the initial state with the largest steady concurrence.
pub fn optimal_alpha(family: Family, params: &ReservoirParams) -> Result<f64> {
    let p = steady_probability(params)?;
    if p == 0.0 {
        return Err(Error::domain(
            "optimal_alpha",
            format!(
                "no entanglement trapping at delta/beta = {}",
                params.delta()
            ),
        ));
    }
    Ok(optimal_alpha2_at(family, p))
}

/// Time after which the concurrence is zero for the rest of the window.
///
/// `None` when the concurrence is still positive at `t_max`. A state that is
/// never entangled reports `Some(0.0)`. The crossing is located by bisection
/// on the unclamped expression to `1e-6` in `βt`.
pub fn sudden_death_time(
    init: &TwoQubitInit,
    params: &ReservoirParams,
    grid: &GridSpec,
) -> Result<Option<f64>> {
    const TOL: f64 = 1e-6;
    let argument = |t: f64| -> Result<f64> {
        let u = excited_amplitude(params, t)?;
        Ok(concurrence_argument(init, u.norm_sqr()))
    };
    let values = grid.times().map(&argument).collect::<Result<Vec<f64>>>()?;
    let last_alive = match values.iter().rposition(|&v| v > 0.0) {
        None => return Ok(Some(0.0)),
        Some(i) if i == grid.n_steps() => return Ok(None),
        Some(i) => i,
    };
    let (mut lo, mut hi) = (grid.time(last_alive), grid.time(last_alive + 1));
    while hi - lo > TOL {
        let mid = 0.5 * (lo + hi);
        if argument(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(hi))
}
