use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|β/f³ − δ|` (in units of β) below which the indicial roots
/// are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// `e^{iπ/4}`.
pub(crate) fn eighth_turn() -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

/// Reservoir coupling in reduced units.
///
/// `delta` is the detuning `δ/β = (ω₁₀ − ω_c)/β`; negative values place the
/// qubit inside the gap. `beta` only fixes the physical time scale: every
/// other routine works in `βt` and `δ/β`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReservoirParams {
    beta: f64,
    f: f64,
    delta: f64,
}

impl ReservoirParams {
    /// Isotropic-scale reservoir (`f = 1`, `β = 1`) at detuning `δ/β`.
    pub fn new(delta_over_beta: f64) -> Result<Self> {
        Self::with_all(1.0, 1.0, delta_over_beta)
    }

    pub fn with_all(beta: f64, f: f64, delta_over_beta: f64) -> Result<Self> {
        const OP: &str = "ReservoirParams";
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain(
                OP,
                format!("beta must be positive, got {beta}"),
            ));
        }
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::domain(OP, format!("f must be positive, got {f}")));
        }
        if !delta_over_beta.is_finite() {
            return Err(Error::domain(OP, "delta/beta must be finite"));
        }
        Ok(ReservoirParams {
            beta,
            f,
            delta: delta_over_beta,
        })
    }

    pub fn with_anisotropy(self, f: f64) -> Result<Self> {
        Self::with_all(self.beta, f, self.delta)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    /// Detuning `δ/β`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Reduced coupling `κ = β^{1/2}/f^{3/2}` with β = 1.
    pub fn kappa(&self) -> f64 {
        self.f.powf(-1.5)
    }

    /// `κ` in physical units, `β^{1/2}/f^{3/2}`.
    pub fn kappa_physical(&self) -> f64 {
        self.beta.sqrt() * self.f.powf(-1.5)
    }

    /// Discriminant `β/f³ − δ` in units of β.
    pub fn discriminant(&self) -> f64 {
        self.f.powi(-3) - self.delta
    }

    pub fn is_degenerate(&self) -> bool {
        self.discriminant().abs() <= DEGENERACY_TOL
    }

    /// Converts reduced time `βt` to physical time.
    pub fn physical_time(&self, beta_t: f64) -> f64 {
        beta_t / self.beta
    }
}

impl Default for ReservoirParams {
    fn default() -> Self {
        ReservoirParams {
            beta: 1.0,
            f: 1.0,
            delta: 0.0,
        }
    }
}

/// Roots of `Y² + 2κ e^{iπ/4} Y + iδ = 0`, with `Y = √s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicialRoots {
    pub y1: Complex64,
    pub y2: Complex64,
    pub degenerate: bool,
}

impl IndicialRoots {
    /// Largest deviation from the Vieta relations, measured relative to
    /// `max(1, |·|)` of the expected sum and product.
    pub fn vieta_residual(&self, params: &ReservoirParams) -> f64 {
        let sum = -2.0 * params.kappa() * eighth_turn();
        let prod = Complex64::new(0.0, params.delta());
        let e_sum = (self.y1 + self.y2 - sum).norm() / sum.norm().max(1.0);
        let e_prod = (self.y1 * self.y2 - prod).norm() / prod.norm().max(1.0);
        e_sum.max(e_prod)
    }
}

/// `Y₁,₂ = e^{iπ/4}(−κ ± √(β/f³ − δ))`, principal square root.
///
/// Inside the degeneracy tolerance both roots collapse onto `−κ e^{iπ/4}`.
pub fn indicial_roots(params: &ReservoirParams) -> IndicialRoots {
    let rot = eighth_turn();
    let kappa = params.kappa();
    if params.is_degenerate() {
        let y = -kappa * rot;
        return IndicialRoots {
            y1: y,
            y2: y,
            degenerate: true,
        };
    }
    let root = Complex64::new(params.discriminant(), 0.0).sqrt();
    IndicialRoots {
        y1: rot * (-kappa + root),
        y2: rot * (-kappa - root),
        degenerate: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_params() {
        assert!(ReservoirParams::with_all(0.0, 1.0, 0.0).is_err());
        assert!(ReservoirParams::with_all(1.0, -1.0, 0.0).is_err());
        assert!(ReservoirParams::new(f64::NAN).is_err());
        assert!(ReservoirParams::new(f64::INFINITY).is_err());
    }

    #[test]
    fn zero_detuning_roots() {
        let p = ReservoirParams::new(0.0).unwrap();
        let r = indicial_roots(&p);
        assert!(!r.degenerate);
        assert!(r.y1.norm() < 1e-15);
        assert!((r.y2 + 2.0 * eighth_turn()).norm() < 1e-15);
    }

    #[test]
    fn degenerate_roots() {
        let p = ReservoirParams::new(1.0).unwrap();
        let r = indicial_roots(&p);
        assert!(r.degenerate);
        assert_eq!(r.y1, r.y2);
        assert!((r.y1 + eighth_turn()).norm() < 1e-15);
    }

    #[test]
    fn gap_roots_match_direct_quadratic() {
        // direct quadratic formula on Y² + bY + c = 0
        let p = ReservoirParams::new(-5.0).unwrap();
        let b = 2.0 * eighth_turn();
        let c = Complex64::new(0.0, -5.0);
        let disc = (b * b - 4.0 * c).sqrt();
        let qa = (-b + disc) / 2.0;
        let qb = (-b - disc) / 2.0;
        let r = indicial_roots(&p);
        let expected1 = eighth_turn() * (-1.0 + 6f64.sqrt());
        let expected2 = eighth_turn() * (-1.0 - 6f64.sqrt());
        assert!((r.y1 - expected1).norm() < 1e-14);
        assert!((r.y2 - expected2).norm() < 1e-14);
        let matched = ((r.y1 - qa).norm() < 1e-12 && (r.y2 - qb).norm() < 1e-12)
            || ((r.y1 - qb).norm() < 1e-12 && (r.y2 - qa).norm() < 1e-12);
        assert!(matched);
        assert!(r.vieta_residual(&p) < 1e-12);
    }

    #[test]
    fn vieta_over_parameter_range() {
        for &f in &[0.5, 1.0, 1.7] {
            for i in 0..=60 {
                let delta = -15.0 + 0.5 * i as f64;
                let p = ReservoirParams::with_all(1.0, f, delta).unwrap();
                let r = indicial_roots(&p);
                if !r.degenerate {
                    assert!(r.vieta_residual(&p) < 1e-12, "f={f} delta={delta}");
                }
            }
        }
    }

    #[test]
    fn degeneracy_flag_follows_tolerance() {
        let inside = ReservoirParams::new(1.0 + 0.5 * DEGENERACY_TOL).unwrap();
        let outside = ReservoirParams::new(1.0 + 10.0 * DEGENERACY_TOL).unwrap();
        assert!(inside.is_degenerate());
        assert!(!outside.is_degenerate());
    }
}
