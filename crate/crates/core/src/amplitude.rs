//! Closed-form excited-state amplitude.
//!
//! Partial fractions over the indicial roots give
//!
//! ```text
//! U(t) = [Y₁² E_t(½,Y₁²) − Y₂² E_t(½,Y₂²) + Y₁ e^{Y₁² t} − Y₂ e^{Y₂² t}] / (Y₁ − Y₂)
//! ```
//!
//! with `Y₁ − Y₂ = 2 e^{iπ/4} √(β/f³ − δ)`. Each bracket pair
//! `Y² E_t(½,Y²) + Y e^{Y²t}` equals `Y·w(−iY√t)`, which stays bounded where
//! the two pieces are individually exponentially large, so
//! [`envelope_amplitude`] evaluates that form. [`envelope_from_frac_exp`]
//! keeps the term-by-term composition for cross-checking at short times.

use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fracexp::{frac_exp, FracExpArg};
use crate::params::{eighth_turn, indicial_roots, ReservoirParams};

/// Largest supported `βt`.
pub const HORIZON: f64 = 100.0;

fn check_time(op: &'static str, t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::domain(op, format!("beta*t must be >= 0, got {t}")));
    }
    if t > HORIZON {
        return Err(Error::Overflow { op, beta_t: t });
    }
    Ok(())
}

/// `Y·w(−iY√t) = Y² E_t(½,Y²) + Y e^{Y²t}`.
fn root_term(y: Complex64, t: f64) -> Complex64 {
    let z = -Complex64::i() * y * t.sqrt();
    y * z.w()
}

fn finite(op: &'static str, t: f64, v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow { op, beta_t: t })
    }
}

/// Envelope amplitude `U_p(βt)`, the amplitude with the `e^{iδt}` rotation
/// removed.
///
/// Degenerate reservoirs (`|β/f³ − δ| ≤ ε_deg`) use the double-pole solution
/// `(1 + 2Y²t) w(−iY√t) + 2Y√(t/π)` with `Y = −κ e^{iπ/4}`.
pub fn envelope_amplitude(params: &ReservoirParams, t: f64) -> Result<Complex64> {
    const OP: &str = "amplitude_U";
    check_time(OP, t)?;
    if t == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let roots = indicial_roots(params);
    let value = if roots.degenerate {
        let y = roots.y1;
        let z = -Complex64::i() * y * t.sqrt();
        (1.0 + 2.0 * y * y * t) * z.w() + 2.0 * y * (t / std::f64::consts::PI).sqrt()
    } else {
        (root_term(roots.y1, t) - root_term(roots.y2, t)) / (roots.y1 - roots.y2)
    };
    finite(OP, t, value)
}

/// Excited-state amplitude `u_p(βt) = e^{iδt} U_p(βt)`.
pub fn excited_amplitude(params: &ReservoirParams, t: f64) -> Result<Complex64> {
    let envelope = envelope_amplitude(params, t)?;
    Ok(Complex64::from_polar(1.0, params.delta() * t) * envelope)
}

/// Term-by-term evaluation of the closed forms with `E_t(½,·)`.
///
/// Suffers cancellation once `|Y²|t` is large; use [`envelope_amplitude`]
/// for production values.
pub fn envelope_from_frac_exp(params: &ReservoirParams, t: f64) -> Result<Complex64> {
    const OP: &str = "amplitude_U_literal";
    check_time(OP, t)?;
    let roots = indicial_roots(params);
    let rot = eighth_turn();
    let kappa = params.kappa();
    let value = if roots.degenerate {
        let b = params.f().powi(-3);
        let e = frac_exp(FracExpArg::half(Complex64::new(0.0, b), t))?;
        let rot3 = Complex64::from_polar(1.0, 3.0 * std::f64::consts::FRAC_PI_4);
        -2.0 * kappa.powi(3) * rot3 * t * e - kappa * rot * e
            + Complex64::new(1.0, 2.0 * t * b) * Complex64::from_polar(1.0, b * t)
            - 2.0 * kappa * rot * (t / std::f64::consts::PI).sqrt()
    } else {
        let (y1, y2) = (roots.y1, roots.y2);
        let (a1, a2) = (y1 * y1, y2 * y2);
        let e1 = frac_exp(FracExpArg::half(a1, t))?;
        let e2 = frac_exp(FracExpArg::half(a2, t))?;
        let bracket = a1 * e1 - a2 * e2 + y1 * (a1 * t).exp() - y2 * (a2 * t).exp();
        let prefactor = 2.0 * rot * Complex64::new(params.discriminant(), 0.0).sqrt();
        bracket / prefactor
    };
    finite(OP, t, value)
}

/// Non-decaying pole of `Ũ(s)` on the imaginary axis of the principal sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    /// Pole location `s₀ = iω₀`.
    pub pole: Complex64,
    /// `1 / (1 + κ e^{iπ/4} s₀^{−1/2})`.
    pub residue: Complex64,
}

impl BoundState {
    pub fn steady_probability(&self) -> f64 {
        self.residue.norm_sqr()
    }
}

fn laplace_denominator(params: &ReservoirParams, s: Complex64) -> Complex64 {
    s + Complex64::new(0.0, params.delta()) + 2.0 * params.kappa() * eighth_turn() * s.sqrt()
}

/// Searches `s = iω` (ω > 0) for a zero of `s + iδ + 2κ e^{iπ/4} √s`.
///
/// With `ω = x²` the denominator is `i(x² + 2κx + δ)` exactly, so the search is
/// a safeguarded Newton iteration in `x` on a sign-changing bracket. On the
/// negative imaginary axis the real part `2κ√|ω|` never vanishes.
pub fn bound_state(params: &ReservoirParams) -> Result<Option<BoundState>> {
    const OP: &str = "steady_probability";
    const MAX_ITER: usize = 200;
    let kappa = params.kappa();
    let residual = |x: f64| -> Complex64 {
        let s = Complex64::new(0.0, x * x);
        laplace_denominator(params, s) / Complex64::i()
    };
    if residual(0.0).re >= 0.0 {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0_f64, 2.0 * kappa + params.delta().abs().sqrt() + 1.0);
    if residual(hi).re <= 0.0 {
        return Err(Error::RootNonConvergence {
            op: OP,
            iterations: 0,
            residual: residual(hi).norm(),
        });
    }
    let scale = params.delta().abs().max(kappa * kappa).max(1.0);
    let mut x = 0.5 * (lo + hi);
    for iter in 0..MAX_ITER {
        let r = residual(x);
        if r.re.abs() <= 4.0 * f64::EPSILON * scale {
            if r.im.abs() > 1e-10 * scale {
                return Err(Error::RootNonConvergence {
                    op: OP,
                    iterations: iter,
                    residual: r.norm(),
                });
            }
            return Ok(Some(bound_state_at(params, x)));
        }
        if r.re < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let slope = 2.0 * x + 2.0 * kappa;
        let newton = x - r.re / slope;
        x = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 4.0 * f64::EPSILON * hi {
            return Ok(Some(bound_state_at(params, x)));
        }
    }
    Err(Error::RootNonConvergence {
        op: OP,
        iterations: MAX_ITER,
        residual: residual(x).norm(),
    })
}

fn bound_state_at(params: &ReservoirParams, x: f64) -> BoundState {
    let pole = Complex64::new(0.0, x * x);
    let residue = 1.0 / (1.0 + params.kappa() * eighth_turn() / pole.sqrt());
    BoundState { pole, residue }
}

/// Long-time limit of `|U_p(βt)|²`: squared modulus of the bound-state
/// residue, or 0 when no bound state exists.
pub fn steady_probability(params: &ReservoirParams) -> Result<f64> {
    Ok(bound_state(params)?.map_or(0.0, |b| b.steady_probability()))
}
