//! Named configurations behind each figure panel.

use crate::config::{Mode, RunConfig};
use pbg_core::Family;

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub config: RunConfig,
}

fn single(delta: f64) -> RunConfig {
    RunConfig {
        mode: Mode::Single,
        delta_over_beta: delta,
        ..RunConfig::default()
    }
}

fn alpha_sweep(family: Family, delta: f64) -> RunConfig {
    RunConfig {
        mode: Mode::SweepAlpha,
        family,
        delta_over_beta: delta,
        ..RunConfig::default()
    }
}

fn bell_traces(family: Family) -> RunConfig {
    RunConfig {
        mode: Mode::SweepDelta,
        family,
        alpha2: 0.5,
        delta_grid: vec![-10.0, -5.0, -2.0, -1.0, 2.0],
        ..RunConfig::default()
    }
}

/// Every figure preset, in panel order.
pub fn figure_manifest() -> Vec<Preset> {
    vec![
        Preset {
            name: "fig2a",
            description: "single qubit inside the gap, delta/beta = -5: P and S against beta*t",
            config: single(-5.0),
        },
        Preset {
            name: "fig2b",
            description: "single qubit outside the gap, delta/beta = 2: P and S against beta*t",
            config: single(2.0),
        },
        Preset {
            name: "fig3a",
            description: "phi family, delta/beta = -5: concurrence per alpha^2",
            config: alpha_sweep(Family::Phi, -5.0),
        },
        Preset {
            name: "fig3b",
            description: "phi family, delta/beta = 2: concurrence per alpha^2",
            config: alpha_sweep(Family::Phi, 2.0),
        },
        Preset {
            name: "fig3c",
            description: "psi family, delta/beta = -5: concurrence per alpha^2",
            config: alpha_sweep(Family::Psi, -5.0),
        },
        Preset {
            name: "fig3d",
            description: "psi family, delta/beta = 2: concurrence per alpha^2",
            config: alpha_sweep(Family::Psi, 2.0),
        },
        Preset {
            name: "fig4a",
            description: "Bell phi state: concurrence per delta/beta",
            config: bell_traces(Family::Phi),
        },
        Preset {
            name: "fig4b",
            description: "Bell psi state: concurrence per delta/beta",
            config: bell_traces(Family::Psi),
        },
        Preset {
            name: "fig4c",
            description: "steady concurrence of both Bell states per delta/beta",
            config: RunConfig {
                mode: Mode::SweepDelta,
                alpha2: 0.5,
                steady: true,
                ..RunConfig::default()
            },
        },
    ]
}

/// Oracle cross-check at the certification resolution.
pub fn oracle_preset() -> RunConfig {
    RunConfig {
        mode: Mode::OracleCheck,
        tmax: 10.0,
        steps: 4000,
        delta_grid: vec![-5.0, -1.0, 0.0, 1.0, 2.0],
        ..RunConfig::default()
    }
}

pub fn preset(name: &str) -> Option<RunConfig> {
    if name == "oracle" {
        return Some(oracle_preset());
    }
    figure_manifest()
        .into_iter()
        .find(|p| p.name == name)
        .map(|p| p.config)
}

/// Manifest listing: a `[name]` header, a description comment, the config.
pub fn manifest_text() -> String {
    let mut out = String::new();
    for p in figure_manifest() {
        out.push_str(&format!(
            "[{}]\n# {}\n{}\n",
            p.name,
            p.description,
            p.config.to_text()
        ));
    }
    out
}
