//! Exact non-Markovian dynamics of one and two qubits coupled to an
//! anisotropic photonic-band-gap (PBG) reservoir.
//!
//! The excited-state amplitude obeys the half-order kinetic equation
//!
//! ```text
//! D^{1/2} U + iδ D^{-1/2} U + 2κ e^{iπ/4} U = t^{-1/2} / √π,   U(0) = 1
//! ```
//!
//! whose Laplace image is `Ũ(s) = 1 / (s + iδ + 2κ e^{iπ/4} √s)`. The crate
//! evaluates the closed-form solution built from fractional exponential
//! functions ([`amplitude`]), certifies it against two independent numerical
//! routes ([`oracle`]), and derives single-qubit entropy ([`single_qubit`])
//! and two-qubit concurrence ([`two_qubit`]) dynamics from it.
//!
//! Units are reduced throughout: time is `βt`, detuning is `δ/β`, and the
//! anisotropy factor `f` defaults to 1, so `κ = f^{-3/2}`.

// `!(x >= 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod amplitude;
pub mod error;
pub mod fracexp;
pub mod oracle;
pub mod params;
pub mod single_qubit;
pub mod two_qubit;

pub use num_complex::Complex64;

pub use amplitude::{
    bound_state, envelope_amplitude, envelope_from_frac_exp, excited_amplitude, steady_probability,
    BoundState, HORIZON,
};
pub use error::{Error, Result};
pub use fracexp::{frac_exp, frac_exp_closed, frac_exp_neg_half, frac_exp_series, FracExpArg};
pub use oracle::{
    gl_march, invert_laplace, laplace_amplitude, riemann_liouville_halfderiv, small_time_expansion,
    solve_fractional_kinetic, GridSpec, HalfDerivative, LaplaceContour,
};
pub use params::{indicial_roots, IndicialRoots, ReservoirParams, DEGENERACY_TOL};
pub use single_qubit::{
    density_matrix, entropy_trace, excited_probability, plateau, von_neumann_entropy, BlochInit,
    SingleQubitDensity, TracePoint, AMPLITUDE_SLACK,
};
pub use two_qubit::{
    concurrence, concurrence_argument, concurrence_phi, concurrence_psi, optimal_alpha,
    optimal_alpha2_at, steady_concurrence, sudden_death_time, two_qubit_elements, Family,
    TwoQubitElements, TwoQubitInit,
};
