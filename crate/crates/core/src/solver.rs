//! Common interface over the stochastic solvers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{Gauge, Instance, SpinConfig};
use crate::o2::{self, AnnealParamsO2};
use crate::o3::{self, AnnealParamsO3};
use crate::sa::{self, SaSchedule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SolverKind {
    O3,
    O2,
    SA,
    External,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::O3 => "O3",
            SolverKind::O2 => "O2",
            SolverKind::SA => "SA",
            SolverKind::External => "External",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "o3" => Ok(SolverKind::O3),
            "o2" => Ok(SolverKind::O2),
            "sa" => Ok(SolverKind::SA),
            "external" => Ok(SolverKind::External),
            other => Err(format!("unknown solver `{other}`")),
        }
    }
}

/// A randomized solver: one call is one independent run, fully determined by `seed`.
pub trait Solver: Sync {
    fn kind(&self) -> SolverKind;
    fn solve(&self, instance: &Instance, seed: u64) -> Result<SpinConfig>;
}

/// Inactive vertices carry no couplings; report them as `+1`.
fn normalize_inactive(instance: &Instance, config: SpinConfig) -> SpinConfig {
    let graph = instance.graph();
    if graph.n_active() == graph.n_vertices() {
        return config;
    }
    let sigma = config
        .into_inner()
        .into_iter()
        .enumerate()
        .map(|(v, s)| if graph.is_active(v) { s } else { 1 })
        .collect();
    SpinConfig::new(sigma).expect("entries stay ±1")
}

#[derive(Debug, Clone, Default)]
pub struct O3Annealer {
    pub params: AnnealParamsO3,
    /// when set, kicks `(δ_i, η_i)` are mapped to `(s_i δ_i, s_i η_i)`
    pub kick_gauge: Option<Gauge>,
}

impl O3Annealer {
    pub fn new(params: AnnealParamsO3) -> Self {
        O3Annealer {
            params,
            kick_gauge: None,
        }
    }

    pub fn with_kick_gauge(mut self, gauge: Gauge) -> Self {
        self.kick_gauge = Some(gauge);
        self
    }
}

impl Solver for O3Annealer {
    fn kind(&self) -> SolverKind {
        SolverKind::O3
    }

    fn solve(&self, instance: &Instance, seed: u64) -> Result<SpinConfig> {
        let mut initial = o3::sample_kick_state(instance.n_vertices(), self.params.kappa, seed)?;
        if let Some(g) = &self.kick_gauge {
            initial = initial.gauged(g);
        }
        let state = o3::run_o3_from(instance, &self.params, initial)?;
        Ok(normalize_inactive(instance, o3::readout(&state)))
    }
}

#[derive(Debug, Clone, Default)]
pub struct O2Annealer {
    pub params: AnnealParamsO2,
    /// when set, initial angles are mapped `θ_i -> s_i θ_i`
    pub angle_gauge: Option<Gauge>,
}

impl O2Annealer {
    pub fn new(params: AnnealParamsO2) -> Self {
        O2Annealer {
            params,
            angle_gauge: None,
        }
    }

    pub fn with_angle_gauge(mut self, gauge: Gauge) -> Self {
        self.angle_gauge = Some(gauge);
        self
    }
}

impl Solver for O2Annealer {
    fn kind(&self) -> SolverKind {
        SolverKind::O2
    }

    fn solve(&self, instance: &Instance, seed: u64) -> Result<SpinConfig> {
        self.params.validate()?;
        let mut initial =
            o2::sample_initial_angles(instance.n_vertices(), self.params.kappa, seed);
        if let Some(g) = &self.angle_gauge {
            initial = initial.gauged(g);
        }
        let state = o2::run_o2_from(instance, &self.params, initial)?;
        Ok(normalize_inactive(instance, o2::rotor_readout(&state)))
    }
}

#[derive(Debug, Clone, Default)]
pub struct SaAnnealer {
    pub schedule: SaSchedule,
}

impl SaAnnealer {
    pub fn new(schedule: SaSchedule) -> Self {
        SaAnnealer { schedule }
    }
}

impl Solver for SaAnnealer {
    fn kind(&self) -> SolverKind {
        SolverKind::SA
    }

    fn solve(&self, instance: &Instance, seed: u64) -> Result<SpinConfig> {
        sa::run_sa(instance, &self.schedule, seed)
    }
}
