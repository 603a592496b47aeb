//! Planar-rotor ("compass needle") annealer.
//!
//! This is a reconstruction: spin `i` is the unit vector
//! `cos θ_i ê_x + sin θ_i ê_z` moving in the potential
//!
//! ```text
//! V(θ, s) = -(1 - s) h Σ_i cos θ_i + s Σ_(i,j) J_ij sin θ_i sin θ_j
//! ```
//!
//! with unit inertia and viscous damping `γ`, i.e. `θ̈_i = -∂V/∂θ_i - γ θ̇_i`.
//! It is the planar restriction of the O(3) energy with second-order dynamics;
//! the original code of the compass-needle model is not reproduced.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{CouplingTable, Gauge, Instance, SpinConfig};
use crate::o3::{midpoint_progress, schedule_steps};
use crate::rng::{self, Purpose};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnnealParamsO2 {
    pub h: f64,
    pub t_f: f64,
    pub dt: f64,
    /// viscous damping
    pub gamma: f64,
    /// initial angles are uniform on (-kappa, kappa)
    pub kappa: f64,
}

impl Default for AnnealParamsO2 {
    fn default() -> Self {
        AnnealParamsO2 {
            h: 1.0,
            t_f: 100.0,
            dt: 0.01,
            gamma: 0.1,
            kappa: 0.1,
        }
    }
}

impl AnnealParamsO2 {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_f > 0.0 && self.t_f.is_finite()) {
            return Err(Error::param("t_f", format!("must be > 0, got {}", self.t_f)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_f) {
            return Err(Error::param("dt", format!("must be in (0, t_f], got {}", self.dt)));
        }
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return Err(Error::param("gamma", format!("must be >= 0, got {}", self.gamma)));
        }
        if !(0.0..1.0).contains(&self.kappa) {
            return Err(Error::param("kappa", format!("must be in [0, 1), got {}", self.kappa)));
        }
        if !self.h.is_finite() {
            return Err(Error::param("h", "must be finite"));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        schedule_steps(self.t_f, self.dt)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RotorState {
    /// wrapped to (-π, π]
    pub theta: Vec<f64>,
    pub omega: Vec<f64>,
}

impl RotorState {
    pub fn at_rest(theta: Vec<f64>) -> Self {
        let omega = vec![0.0; theta.len()];
        RotorState { theta, omega }
    }

    pub fn gauged(&self, gauge: &Gauge) -> RotorState {
        RotorState {
            theta: self.theta.iter().enumerate().map(|(i, t)| gauge.sign(i) * t).collect(),
            omega: self.omega.iter().enumerate().map(|(i, w)| gauge.sign(i) * w).collect(),
        }
    }

    pub fn kinetic_energy(&self) -> f64 {
        self.omega.iter().map(|w| 0.5 * w * w).sum()
    }
}

/// Initial angles uniform on `(-κ, κ)`, velocities zero.
pub fn sample_initial_angles(n: usize, kappa: f64, seed: u64) -> RotorState {
    RotorState::at_rest(
        (0..n)
            .map(|i| rng::symmetric_open(rng::word(seed, Purpose::RotorAngles, i as u64), kappa))
            .collect(),
    )
}

/// Map an angle to `(-π, π]`.
#[inline]
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let turns = (theta / (2.0 * PI)).round();
    let mut t = theta - turns * 2.0 * PI;
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// `V(θ, s)`.
pub fn potential(instance: &Instance, theta: &[f64], s: f64, h: f64) -> f64 {
    let transverse: f64 = theta.iter().map(|t| t.cos()).sum();
    let coupling: f64 = instance
        .weighted_edges()
        .map(|(i, j, c)| f64::from(c) * theta[i].sin() * theta[j].sin())
        .sum();
    -(1.0 - s) * h * transverse + s * coupling
}

/// Torques `τ_i = -∂V/∂θ_i = -(1-s) h sin θ_i - s cos θ_i Σ_j J_ij sin θ_j`.
pub fn o2_torque(instance: &Instance, theta: &[f64], s: f64, h: f64) -> Vec<f64> {
    let table = instance.coupling_table();
    let mut parts = TorqueParts::new(theta.len());
    parts.compute(&table, theta, h);
    (0..theta.len()).map(|i| parts.torque(i, s)).collect()
}

/// The two schedule-independent pieces of the torque, so one evaluation per
/// configuration serves any value of `s`.
struct TorqueParts {
    sin: Vec<f64>,
    transverse: Vec<f64>,
    coupling: Vec<f64>,
}

impl TorqueParts {
    fn new(n: usize) -> Self {
        TorqueParts {
            sin: vec![0.0; n],
            transverse: vec![0.0; n],
            coupling: vec![0.0; n],
        }
    }

    fn compute(&mut self, table: &CouplingTable, theta: &[f64], h: f64) {
        let mut cos = vec![0.0; theta.len()];
        for (i, &t) in theta.iter().enumerate() {
            let (s, c) = t.sin_cos();
            self.sin[i] = s;
            cos[i] = c;
            self.transverse[i] = -h * s;
        }
        for (i, c) in cos.iter().enumerate() {
            self.coupling[i] = -c * table.weighted_sum(i, |j| self.sin[j]);
        }
    }

    #[inline]
    fn torque(&self, i: usize, s: f64) -> f64 {
        (1.0 - s) * self.transverse[i] + s * self.coupling[i]
    }
}

/// Anneal from angles drawn from `seed` and return the readout.
pub fn run_o2(instance: &Instance, params: &AnnealParamsO2, seed: u64) -> Result<SpinConfig> {
    params.validate()?;
    let initial = sample_initial_angles(instance.n_vertices(), params.kappa, seed);
    run_o2_from(instance, params, initial).map(|st| rotor_readout(&st))
}

pub fn run_o2_from(
    instance: &Instance,
    params: &AnnealParamsO2,
    initial: RotorState,
) -> Result<RotorState> {
    let steps = params.n_steps();
    let (dt, t_f) = (params.dt, params.t_f);
    run_o2_scheduled(instance, params, initial, steps, |m| midpoint_progress(m, dt, t_f), |_, _| {})
}

/// Damped velocity Verlet under an arbitrary per-step schedule `progress(step)`.
///
/// `observe(step, state)` runs after each step.
pub fn run_o2_scheduled(
    instance: &Instance,
    params: &AnnealParamsO2,
    initial: RotorState,
    steps: usize,
    progress: impl Fn(usize) -> f64,
    mut observe: impl FnMut(usize, &RotorState),
) -> Result<RotorState> {
    params.validate()?;
    let n = instance.n_vertices();
    if initial.theta.len() != n || initial.omega.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: initial.theta.len(),
        });
    }
    let table = instance.coupling_table();
    let (dt, gamma) = (params.dt, params.gamma);
    let half = 0.5 * dt;
    let mut state = initial;
    let mut parts = TorqueParts::new(n);
    parts.compute(&table, &state.theta, params.h);
    for step in 0..steps {
        let s = progress(step);
        for i in 0..n {
            let w = state.omega[i];
            state.omega[i] = w + half * (parts.torque(i, s) - gamma * w);
            state.theta[i] += dt * state.omega[i];
        }
        parts.compute(&table, &state.theta, params.h);
        let shrink = 1.0 / (1.0 + gamma * half);
        for i in 0..n {
            state.omega[i] = (state.omega[i] + half * parts.torque(i, s)) * shrink;
            state.theta[i] = wrap_angle(state.theta[i]);
        }
        observe(step, &state);
    }
    Ok(state)
}

/// `σ_i = sign(sin θ_i)` with ties broken to `+1`.
pub fn rotor_readout(state: &RotorState) -> SpinConfig {
    SpinConfig::from_signs(state.theta.iter().map(|t| t.sin()))
}
