//! Presets and the effective parameter table.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use sgt_core::increment::{DEFAULT_DENSITY_TARGET, DEFAULT_KAPPA, DEFAULT_STEP_CAP, PAPER_KAPPA};
use sgt_core::recursion::{DEFAULT_GRID_POINTS, SURPLUS_C};
use sgt_core::structure::DEFAULT_ETA;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Desk,
    Paper,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::Desk => "desk",
            Preset::Paper => "paper",
        })
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ParamError {
    #[error("override {0:?} is not of the form key=value")]
    Malformed(String),
    #[error("unknown parameter {0:?}")]
    UnknownKey(String),
    #[error("parameter {key}: cannot parse {value:?}")]
    BadValue { key: String, value: String },
}

/// Every constant an analysis reads. Reports serialize the whole table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Params {
    /// Structure: nominal closeness target.
    pub eps: f64,
    /// Structure: tail-mass gate `Σ_{i∉L_{γn}} λ_i² ≤ δn²`.
    pub delta: f64,
    /// Structure: embedding keeps eigenvalues with `|λ| ≥ γn`.
    pub gamma: f64,
    /// Structure: grid side of the embedding partition.
    pub eta: f64,
    /// Structure: purity for eigen-witness classification.
    pub mu: f64,
    /// Dichotomy check: `δ` with purity `δ^{1/3}`.
    pub dichotomy_delta: f64,
    /// Largest `n` the exhaustive dichotomy check visits.
    pub dichotomy_cap: usize,
    /// Recursion: surplus exponent `c`.
    pub c: f64,
    /// Potential exponent `ρ`; recorded with the preset, no desk analysis reads it.
    pub rho: f64,
    /// Increment recursion exponent `γ`.
    pub increment_gamma: f64,
    /// Thresholds per recursion grid.
    pub grid_points: usize,
    /// Solver check: `ε` of the least-eigenvalue parameter triple.
    pub solver_eps: f64,
    pub kappa: f64,
    pub density_target: f64,
    pub step_cap: usize,
    /// Probes per graph for the Hadamard identity, each clipped and unclipped.
    pub probes: usize,
    pub hadamard_tol: f64,
    /// Clip level for the clipped Hadamard probes.
    pub clip_beta: f64,
    /// Monte Carlo samples for the truncation estimate.
    pub samples: usize,
    pub exact_maxcut_cap: usize,
    /// Largest `n` for certificate-versus-oracle sandwiches.
    pub sandwich_cap: usize,
    pub exact_edit_cap: usize,
    pub pivot_runs: usize,
    pub local_restarts: usize,
    pub sdp_iters: usize,
    pub sdp_tol: f64,
    pub planted_instances: usize,
}

impl Params {
    pub fn preset(preset: Preset) -> Self {
        let desk = Params {
            eps: 0.1,
            delta: 0.1,
            gamma: 0.2,
            eta: DEFAULT_ETA,
            mu: 0.05,
            dichotomy_delta: 5e-4,
            dichotomy_cap: 64,
            c: SURPLUS_C,
            rho: 1.0 / 1000.0,
            increment_gamma: 1.0 / 200.0,
            grid_points: DEFAULT_GRID_POINTS,
            solver_eps: 0.005,
            kappa: DEFAULT_KAPPA,
            density_target: DEFAULT_DENSITY_TARGET,
            step_cap: DEFAULT_STEP_CAP,
            probes: 100,
            hadamard_tol: 1e-6,
            clip_beta: 4.0,
            samples: 10_000,
            exact_maxcut_cap: 26,
            sandwich_cap: 20,
            exact_edit_cap: 12,
            pivot_runs: 32,
            local_restarts: 32,
            sdp_iters: 200,
            sdp_tol: 1e-9,
            planted_instances: 100,
        };
        match preset {
            Preset::Desk => desk,
            Preset::Paper => Params { kappa: PAPER_KAPPA, density_target: 1e-100, eta: desk.gamma.powf(9.5), ..desk },
        }
    }

    /// Applies one `key=value` override.
    pub fn apply(&mut self, assignment: &str) -> Result<(), ParamError> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| ParamError::Malformed(assignment.into()))?;
        let (key, value) = (key.trim(), value.trim());
        macro_rules! set {
            ($($name:ident),* $(,)?) => {
                match key {
                    $(stringify!($name) => self.$name = parse(key, value)?,)*
                    _ => return Err(ParamError::UnknownKey(key.into())),
                }
            };
        }
        set!(
            eps,
            delta,
            gamma,
            eta,
            mu,
            dichotomy_delta,
            dichotomy_cap,
            c,
            rho,
            increment_gamma,
            grid_points,
            solver_eps,
            kappa,
            density_target,
            step_cap,
            probes,
            hadamard_tol,
            clip_beta,
            samples,
            exact_maxcut_cap,
            sandwich_cap,
            exact_edit_cap,
            pivot_runs,
            local_restarts,
            sdp_iters,
            sdp_tol,
            planted_instances,
        );
        Ok(())
    }

    pub fn with_overrides<'a>(preset: Preset, overrides: impl IntoIterator<Item = &'a str>) -> Result<Self, ParamError> {
        let mut p = Params::preset(preset);
        for o in overrides {
            p.apply(o)?;
        }
        Ok(p)
    }

    pub fn structure(&self) -> sgt_core::structure::StructureParams {
        sgt_core::structure::StructureParams { eps: self.eps, gamma: self.gamma, delta: self.delta, eta: self.eta, mu: self.mu }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ParamError> {
    value.parse().map_err(|_| ParamError::BadValue { key: key.into(), value: value.into() })
}
