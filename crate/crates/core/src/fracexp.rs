//! Fractional exponential function
//!
//! ```text
//! E_t(α, a) = t^α Σ_{n≥0} (a t)^n / Γ(α + n + 1)
//! ```
//!
//! the order-(−α) Riemann–Liouville integral of `e^{at}`. Only the α = 1/2
//! member is needed by the amplitude solutions; for it there is the identity
//! `E_t(1/2, a) = e^{at} erf(√(at)) / √a`, evaluated here through the
//! Faddeeva function `w(z) = e^{−z²} erfc(−iz)` so that the error function
//! never has to be formed from two large cancelling pieces.

use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Series mode is used up to this value of `|a t|`.
pub const SERIES_RADIUS: f64 = 4.0;

/// Largest relative rounding error the series may accumulate through
/// cancellation before it is rejected.
pub const ROUNDING_LIMIT: f64 = 1e-11;

const MAX_TERMS: usize = 400;
const EXP_LIMIT: f64 = 709.0;

/// Arguments of `E_t(α, a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracExpArg {
    pub alpha: f64,
    pub a: Complex64,
    pub t: f64,
}

impl FracExpArg {
    pub fn new(alpha: f64, a: Complex64, t: f64) -> Self {
        FracExpArg { alpha, a, t }
    }

    /// The α = 1/2 member used by the amplitude solutions.
    pub fn half(a: Complex64, t: f64) -> Self {
        FracExpArg { alpha: 0.5, a, t }
    }
}

/// Truncated power series for `E_t(α, a)`, any order `α > −1`.
///
/// Summation stops once the geometric bound on the remaining tail drops below
/// `tol·|partial sum|`. Fails if that does not happen within the term cap, or
/// if the largest term is so much bigger than the sum that rounding alone
/// exceeds [`ROUNDING_LIMIT`] relative.
pub fn frac_exp_series(arg: FracExpArg, tol: f64) -> Result<Complex64> {
    const OP: &str = "frac_exp_series";
    let FracExpArg { alpha, a, t } = arg;
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(
            OP,
            format!("t must be finite and >= 0, got {t}"),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(
            OP,
            format!("tol must be positive, got {tol}"),
        ));
    }
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::domain(
            OP,
            format!("order must exceed -1, got {alpha}"),
        ));
    }
    if !(a.re.is_finite() && a.im.is_finite()) {
        return Err(Error::domain(OP, "rate must be finite"));
    }
    if t == 0.0 {
        return if alpha > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else if alpha == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            Err(Error::domain(OP, "negative order is singular at t = 0"))
        };
    }

    let z = a * t;
    let zabs = z.norm();
    let mut term = Complex64::new(1.0 / libm::tgamma(alpha + 1.0), 0.0);
    let mut sum = term;
    let mut largest = term.norm();
    for n in 0..MAX_TERMS {
        let ratio = zabs / (alpha + n as f64 + 2.0);
        if ratio < 1.0 {
            let tail = term.norm() * ratio / (1.0 - ratio);
            if tail <= tol * sum.norm() || tail == 0.0 {
                if 8.0 * f64::EPSILON * largest > ROUNDING_LIMIT * sum.norm() {
                    return Err(Error::SeriesNonConvergence {
                        op: OP,
                        terms: n + 1,
                        magnitude: zabs,
                    });
                }
                return Ok(sum * t.powf(alpha));
            }
        }
        term *= z / (alpha + n as f64 + 1.0);
        sum += term;
        largest = largest.max(term.norm());
    }
    Err(Error::SeriesNonConvergence {
        op: OP,
        terms: MAX_TERMS,
        magnitude: zabs,
    })
}

/// `E_t(1/2, a)` via `(e^{at} − w(i√(at))) / √a` with principal roots.
pub fn frac_exp_closed(a: Complex64, t: f64) -> Result<Complex64> {
    const OP: &str = "frac_exp_closed";
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(
            OP,
            format!("t must be finite and >= 0, got {t}"),
        ));
    }
    if a.norm() == 0.0 || t == 0.0 {
        return frac_exp_series(FracExpArg::half(a, t), 1e-15);
    }
    let at = a * t;
    if at.re > EXP_LIMIT {
        return Err(Error::Overflow { op: OP, beta_t: t });
    }
    let root = at.sqrt();
    let w = (Complex64::i() * root).w();
    let value = (at.exp() - w) / a.sqrt();
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { op: OP, beta_t: t })
    }
}

/// `E_t(1/2, a)`: series for `|at| ≤ 4`, closed form beyond.
pub fn frac_exp(arg: FracExpArg) -> Result<Complex64> {
    const OP: &str = "frac_exp";
    if arg.alpha != 0.5 {
        return Err(Error::domain(
            OP,
            format!("only order 1/2 is supported, got {}", arg.alpha),
        ));
    }
    if !(arg.t >= 0.0) {
        return Err(Error::domain(OP, format!("t must be >= 0, got {}", arg.t)));
    }
    if (arg.a * arg.t).norm() <= SERIES_RADIUS {
        frac_exp_series(arg, 1e-15)
    } else {
        frac_exp_closed(arg.a, arg.t)
    }
}

/// `E_t(−1/2, a) = d/dt E_t(1/2, a) = 1/√(πt) + a E_t(1/2, a)`, for `t > 0`.
pub fn frac_exp_neg_half(a: Complex64, t: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::domain(
            "frac_exp_neg_half",
            format!("t must be > 0, got {t}"),
        ));
    }
    let half = frac_exp(FracExpArg::half(a, t))?;
    Ok(1.0 / (std::f64::consts::PI * t).sqrt() + a * half)
}
