//! Independent numerical routes to the envelope amplitude.
//!
//! Neither solver touches the fractional exponential function: the
//! Grünwald–Letnikov march discretises the half-order kinetic equation in the
//! time domain, and the contour quadrature inverts `Ũ(s)` directly. Agreement
//! of both with [`crate::amplitude::envelope_amplitude`] certifies the closed
//! forms.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{eighth_turn, indicial_roots, ReservoirParams};

/// Uniform time grid on `[0, t_max]` in units of `βt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    t_max: f64,
    n_steps: usize,
}

impl GridSpec {
    pub const MIN_STEPS: usize = 100;

    pub fn new(t_max: f64, n_steps: usize) -> Result<Self> {
        if !(t_max.is_finite() && t_max > 0.0) {
            return Err(Error::domain(
                "GridSpec",
                format!("t_max must be positive, got {t_max}"),
            ));
        }
        if n_steps < Self::MIN_STEPS {
            return Err(Error::domain(
                "GridSpec",
                format!("need at least {} steps, got {n_steps}", Self::MIN_STEPS),
            ));
        }
        Ok(GridSpec { t_max, n_steps })
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step(&self) -> f64 {
        self.t_max / self.n_steps as f64
    }

    /// Number of grid points, `n_steps + 1`.
    pub fn len(&self) -> usize {
        self.n_steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        if i == self.n_steps {
            self.t_max
        } else {
            self.t_max * i as f64 / self.n_steps as f64
        }
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.time(i))
    }

    /// Same interval with `factor` times as many steps.
    pub fn refined(&self, factor: usize) -> GridSpec {
        GridSpec {
            t_max: self.t_max,
            n_steps: self.n_steps * factor,
        }
    }
}

/// Laplace image `Ũ(s) = 1/(s + iδ + 2κ e^{iπ/4} √s)` on the principal sheet.
pub fn laplace_amplitude(params: &ReservoirParams, s: Complex64) -> Complex64 {
    let denom =
        s + Complex64::new(0.0, params.delta()) + 2.0 * params.kappa() * eighth_turn() * s.sqrt();
    1.0 / denom
}

/// Talbot-type contour `s(θ) = iω_c + r(θ cot θ + iνθ)`, `θ ∈ (−π, π)`.
///
/// `r = scale / t`. The centre `ω_c` and stretch `ν ≥ 1` are chosen per call
/// so the contour wraps the branch cut and passes to the right of every pole
/// of `Ũ` on the principal sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceContour {
    nodes: usize,
    scale: f64,
}

impl LaplaceContour {
    pub const MIN_NODES: usize = 16;

    pub fn new(nodes: usize, scale: f64) -> Result<Self> {
        if nodes < Self::MIN_NODES {
            return Err(Error::domain(
                "LaplaceContour",
                format!("need at least {} nodes, got {nodes}", Self::MIN_NODES),
            ));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::domain(
                "LaplaceContour",
                format!("scale must be positive, got {scale}"),
            ));
        }
        Ok(LaplaceContour { nodes, scale })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
}

impl Default for LaplaceContour {
    fn default() -> Self {
        LaplaceContour {
            nodes: 256,
            scale: 8.0,
        }
    }
}

const PROXIMITY: f64 = 1e-6;
// Angle at which the contour must already clear the outermost pole.
const POLE_ANGLE: f64 = PI / 3.0;
const POLE_MARGIN: f64 = 0.5;

/// Poles of `Ũ(s)` on the principal sheet: `s = Y²` for indicial roots with
/// `arg Y ∈ (−π/2, π/2]`, excluding the branch point itself.
fn principal_poles(params: &ReservoirParams) -> Vec<Complex64> {
    let roots = indicial_roots(params);
    let candidates: &[Complex64] = if roots.degenerate {
        &[roots.y1]
    } else {
        &[roots.y1, roots.y2]
    };
    candidates
        .iter()
        .filter(|y| y.norm() > 1e-12)
        .filter(|y| y.re > 1e-14 * y.norm() || (y.re.abs() <= 1e-14 * y.norm() && y.im > 0.0))
        .map(|y| y * y)
        .collect()
}

/// Numerical inverse Laplace transform of `Ũ(s)` at `βt = t`.
pub fn invert_laplace(
    params: &ReservoirParams,
    t: f64,
    contour: &LaplaceContour,
) -> Result<Complex64> {
    const OP: &str = "invert_laplace";
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(OP, format!("beta*t must be > 0, got {t}")));
    }
    let r = contour.scale / t;
    let poles = principal_poles(params);
    let top = poles.iter().map(|p| p.im).fold(0.0_f64, f64::max);
    let bottom = poles.iter().map(|p| p.im).fold(0.0_f64, f64::min);
    let centre = 0.5 * (top + bottom);
    let half_width = 0.5 * (top - bottom) + POLE_MARGIN;
    let stretch = if poles.is_empty() {
        1.0
    } else {
        (half_width / (r * POLE_ANGLE)).max(1.0)
    };
    let point = |theta: f64| -> Complex64 {
        if theta == 0.0 {
            Complex64::new(r, centre)
        } else {
            Complex64::new(r * theta / theta.tan(), centre + r * stretch * theta)
        }
    };

    for pole in &poles {
        let theta = (pole.im - centre) / (r * stretch);
        if theta.abs() >= PI || point(theta).re <= pole.re {
            return Err(Error::ContourViolation {
                op: OP,
                msg: format!("pole at {pole} is not enclosed"),
            });
        }
    }

    let m = contour.nodes;
    let dtheta = 2.0 * PI / m as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..m {
        let theta = -PI + (k as f64 + 0.5) * dtheta;
        let s = point(theta);
        if s.re <= 0.0 && s.im.abs() < PROXIMITY {
            return Err(Error::ContourViolation {
                op: OP,
                msg: format!("node {s} lies on the branch cut"),
            });
        }
        if let Some(p) = poles.iter().find(|p| (s - **p).norm() < PROXIMITY) {
            return Err(Error::ContourViolation {
                op: OP,
                msg: format!("node {s} is within {PROXIMITY:e} of the pole at {p}"),
            });
        }
        let (sin, cos) = theta.sin_cos();
        let ds = Complex64::new(r * (cos / sin - theta / (sin * sin)), r * stretch);
        let weight = (s * t).exp();
        if weight.norm() == 0.0 {
            continue;
        }
        sum += weight * laplace_amplitude(params, s) * ds;
    }
    let value = sum * dtheta / Complex64::new(0.0, 2.0 * PI);
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { op: OP, beta_t: t })
    }
}

/// Grünwald–Letnikov weights `(−1)^j C(order, j)`, `j = 0..=n`.
fn gl_weights(order: f64, n: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(n + 1);
    w.push(1.0);
    for j in 1..=n {
        let prev = w[j - 1];
        w.push(prev * (1.0 - (order + 1.0) / j as f64));
    }
    w
}

/// Plain first-order Grünwald–Letnikov march of the kinetic equation.
///
/// The march runs on `V = U − 1`, which starts at zero. Since `D^{1/2}1` is
/// exactly the forcing `t^{−1/2}/√π`, `V` obeys
/// `D^{1/2}V + iδ D^{−1/2}V + cV = −c − 2iδ√(t/π)`, `c = 2κe^{iπ/4}`, with a
/// bounded right-hand side at every grid point. Both operators are implicit
/// in the newest value.
pub fn gl_march(params: &ReservoirParams, grid: &GridSpec) -> Result<Vec<Complex64>> {
    const OP: &str = "solve_fractional_kinetic";
    const LIMIT: f64 = 10.0;
    let n = grid.n_steps();
    let h = grid.step();
    let c = 2.0 * params.kappa() * eighth_turn();
    let idelta = Complex64::new(0.0, params.delta());
    let half = gl_weights(0.5, n);
    let neg_half = gl_weights(-0.5, n);
    let a = h.powf(-0.5);
    let b = idelta * h.sqrt();
    let diagonal = a + b + c;

    let mut v = vec![Complex64::new(0.0, 0.0); n + 1];
    for m in 1..=n {
        let t = grid.time(m);
        let forcing = -c - 2.0 * idelta * (t / PI).sqrt();
        let mut hist_half = Complex64::new(0.0, 0.0);
        let mut hist_neg = Complex64::new(0.0, 0.0);
        for j in 1..=m {
            let past = v[m - j];
            hist_half += half[j] * past;
            hist_neg += neg_half[j] * past;
        }
        v[m] = (forcing - a * hist_half - b * hist_neg) / diagonal;
        let magnitude = (v[m] + 1.0).norm();
        if !(magnitude <= LIMIT) {
            return Err(Error::Instability {
                op: OP,
                magnitude,
                beta_t: t,
            });
        }
    }
    Ok(v.into_iter().map(|x| x + 1.0).collect())
}

/// Envelope amplitude on `grid` by Grünwald–Letnikov time marching.
///
/// Runs [`gl_march`] at steps `h`, `h/2`, `h/4` and removes the `O(h)` and
/// `O(h²)` error terms by Richardson extrapolation at the coarse points.
pub fn solve_fractional_kinetic(
    params: &ReservoirParams,
    grid: &GridSpec,
) -> Result<Vec<Complex64>> {
    let coarse = gl_march(params, grid)?;
    let mid = gl_march(params, &grid.refined(2))?;
    let fine = gl_march(params, &grid.refined(4))?;
    let out = (0..grid.len())
        .map(|i| {
            let r1 = 2.0 * mid[2 * i] - coarse[i];
            let r2 = 2.0 * fine[4 * i] - mid[2 * i];
            (4.0 * r2 - r1) / 3.0
        })
        .collect();
    Ok(out)
}

/// Short-time expansion `U ≈ 1 − c t^{1/2}/Γ(3/2) + (c² − iδ)t + (2iδc − c³) t^{3/2}/Γ(5/2)`
/// from the large-`s` expansion of `Ũ(s)`, `c = 2κe^{iπ/4}`.
pub fn small_time_expansion(params: &ReservoirParams, t: f64) -> Complex64 {
    let c = 2.0 * params.kappa() * eighth_turn();
    let idelta = Complex64::new(0.0, params.delta());
    let gamma_3_2 = 0.5 * PI.sqrt();
    let gamma_5_2 = 1.5 * gamma_3_2;
    1.0 - c * t.sqrt() / gamma_3_2
        + (c * c - idelta) * t
        + (2.0 * idelta * c - c * c * c) * t.powf(1.5) / gamma_5_2
}

/// Discrete half-order Riemann–Liouville derivative with a self-convergence
/// estimate.
#[derive(Debug, Clone)]
pub struct HalfDerivative {
    pub values: Vec<Complex64>,
    /// Largest relative change between the `h` and `2h` results at shared
    /// points with `t ≥ 20h`.
    pub self_convergence: f64,
}

impl HalfDerivative {
    pub const COARSE_TOL: f64 = 1e-3;

    pub fn is_coarse(&self) -> bool {
        self.self_convergence > Self::COARSE_TOL
    }
}

fn halfderiv_values(samples: &[Complex64], h: f64) -> Vec<Complex64> {
    let gamma_1_2 = PI.sqrt();
    let gamma_3_2 = 0.5 * gamma_1_2;
    let n = samples.len() - 1;
    let slopes: Vec<Complex64> = samples.windows(2).map(|w| (w[1] - w[0]) / h).collect();
    let mut out = Vec::with_capacity(n + 1);
    let f0 = samples[0];
    out.push(Complex64::new(infinite_like(f0.re), infinite_like(f0.im)));
    for i in 1..=n {
        let t = i as f64 * h;
        let mut acc = f0 / (t.sqrt() * gamma_1_2);
        let mut previous = Complex64::new(0.0, 0.0);
        for (k, &slope) in slopes.iter().enumerate().take(i) {
            let lag = (i - k) as f64 * h;
            acc += (slope - previous) * lag.sqrt() / gamma_3_2;
            previous = slope;
        }
        out.push(acc);
    }
    out
}

fn infinite_like(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x.signum() * f64::INFINITY
    }
}

/// `D^{1/2} f` at every grid point, exact for piecewise-linear `f`.
///
/// The samples are joined linearly and the Riemann–Liouville derivative of
/// the interpolant is evaluated in closed form:
/// `f₀ t^{−1/2}/Γ(1/2) + Σ_k (m_k − m_{k−1}) (t − t_k)^{1/2}/Γ(3/2)`, where
/// `m_k` is the slope on `[t_k, t_{k+1}]`. At `t = 0` the result is 0 when
/// `f(0) = 0` and infinite otherwise.
pub fn riemann_liouville_halfderiv(
    samples: &[Complex64],
    grid: &GridSpec,
) -> Result<HalfDerivative> {
    const OP: &str = "riemann_liouville_halfderiv";
    if samples.len() != grid.len() {
        return Err(Error::domain(
            OP,
            format!("expected {} samples, got {}", grid.len(), samples.len()),
        ));
    }
    let h = grid.step();
    let values = halfderiv_values(samples, h);

    let coarse_samples: Vec<Complex64> = samples.iter().step_by(2).copied().collect();
    let coarse = halfderiv_values(&coarse_samples, 2.0 * h);
    let scale = values
        .iter()
        .skip(1)
        .map(|v| v.norm())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let self_convergence = coarse
        .iter()
        .enumerate()
        .skip(10)
        .map(|(i, c)| (values[2 * i] - c).norm() / scale)
        .fold(0.0_f64, f64::max);
    let result = HalfDerivative {
        values,
        self_convergence,
    };
    if result.is_coarse() {
        log::warn!(
            "{OP}: grid too coarse, h vs 2h relative change {:.3e} exceeds {:.0e}",
            result.self_convergence,
            HalfDerivative::COARSE_TOL
        );
    }
    Ok(result)
}
