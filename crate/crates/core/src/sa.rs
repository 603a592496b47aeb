//! Single-spin-flip Metropolis simulated annealing.

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, SpinConfig};
use crate::rng::{self, Purpose};

/// Linear inverse-temperature ramp.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SaSchedule {
    pub beta_start: f64,
    pub beta_end: f64,
    pub sweeps: usize,
}

impl Default for SaSchedule {
    fn default() -> Self {
        SaSchedule {
            beta_start: 0.1,
            beta_end: 3.0,
            sweeps: 1000,
        }
    }
}

impl SaSchedule {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta_start >= 0.0 && self.beta_start.is_finite()) {
            return Err(Error::param("beta_start", format!("must be >= 0, got {}", self.beta_start)));
        }
        // equal endpoints are allowed: a constant-temperature run
        if !(self.beta_end >= self.beta_start && self.beta_end.is_finite()) {
            return Err(Error::param(
                "beta_end",
                format!("must be >= beta_start, got {}", self.beta_end),
            ));
        }
        if self.sweeps == 0 {
            return Err(Error::param("sweeps", "must be >= 1"));
        }
        Ok(())
    }

    /// Inverse temperature of sweep `k`.
    pub fn beta(&self, k: usize) -> f64 {
        if self.sweeps == 1 {
            return self.beta_end;
        }
        let frac = k as f64 / (self.sweeps - 1) as f64;
        self.beta_start + (self.beta_end - self.beta_start) * frac
    }
}

/// Metropolis acceptance probability `min(1, exp(-β ΔE))`.
#[inline]
pub fn metropolis_acceptance(beta: f64, delta_e: i64) -> f64 {
    if delta_e <= 0 {
        1.0
    } else {
        (-beta * delta_e as f64).exp()
    }
}

/// An accepted flip reported to the observer of [`run_sa_observed`].
#[derive(Debug, Clone, Copy)]
pub struct Flip {
    pub sweep: usize,
    pub vertex: usize,
    pub delta_e: i64,
}

pub fn run_sa(instance: &Instance, schedule: &SaSchedule, seed: u64) -> Result<SpinConfig> {
    run_sa_observed(instance, schedule, seed, |_, _| {})
}

/// Anneal and call `observe(flip, sigma_after_flip)` for every accepted flip.
pub fn run_sa_observed(
    instance: &Instance,
    schedule: &SaSchedule,
    seed: u64,
    mut observe: impl FnMut(Flip, &[i8]),
) -> Result<SpinConfig> {
    schedule.validate()?;
    let n = instance.n_vertices();
    let graph = instance.graph();
    let mut init = rng::stream(seed, Purpose::SaInit, 0);
    let mut sigma: Vec<i8> = (0..n)
        .map(|v| {
            let bit = init.next_u32() & 1;
            if !graph.is_active(v) || bit == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let active: Vec<usize> = graph.active_vertices().collect();
    let table: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|v| {
            instance
                .coupled_neighbors(v)
                .map(|(u, j)| (u, i64::from(j)))
                .collect()
        })
        .collect();
    let max_delta = 2 * graph.max_degree() as i64;
    let mut uniform = rng::stream(seed, Purpose::SaAccept, 0);
    // acceptance[d] for ΔE = d > 0
    let mut acceptance = vec![1.0; max_delta as usize + 1];

    for sweep in 0..schedule.sweeps {
        let beta = schedule.beta(sweep);
        for (d, a) in acceptance.iter_mut().enumerate() {
            *a = metropolis_acceptance(beta, d as i64);
        }
        for &v in &active {
            let field: i64 = table[v].iter().map(|&(u, j)| j * i64::from(sigma[u])).sum();
            let delta_e = -2 * i64::from(sigma[v]) * field;
            let u = rng::unit_f64(uniform.next_u64());
            let accept = delta_e <= 0 || u < acceptance[delta_e as usize];
            if accept {
                sigma[v] = -sigma[v];
                observe(
                    Flip {
                        sweep,
                        vertex: v,
                        delta_e,
                    },
                    &sigma,
                );
            }
        }
    }
    SpinConfig::new(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::{build_chimera, ChimeraSpec};
    use crate::instance::{energy, gen_instance};

    #[test]
    fn schedule_endpoints() {
        let s = SaSchedule::default();
        assert_eq!(s.beta(0), 0.1);
        assert!((s.beta(999) - 3.0).abs() < 1e-15);
        assert!(SaSchedule { sweeps: 0, ..s }.validate().is_err());
        assert!(SaSchedule { beta_end: 0.05, ..s }.validate().is_err());
        assert!(SaSchedule { beta_start: 0.0, beta_end: 0.0, sweeps: 3 }.validate().is_ok());
    }

    #[test]
    fn detailed_balance_ratio() {
        for &beta in &[0.0, 0.3, 1.7] {
            for d in [-12i64, -4, -2, 2, 6, 10] {
                let ratio = metropolis_acceptance(beta, d) / metropolis_acceptance(beta, -d);
                assert!((ratio - (-beta * d as f64).exp()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn incremental_delta_matches_recompute() {
        let spec = ChimeraSpec::new(2, 2, 4).with_mask([3, 20]);
        let inst = gen_instance(&build_chimera(&spec).unwrap(), 12);
        let sched = SaSchedule {
            sweeps: 50,
            ..Default::default()
        };
        let mut flips = 0;
        run_sa_observed(&inst, &sched, 5, |f, s| {
            let after = SpinConfig::new(s.to_vec()).unwrap();
            let mut before = s.to_vec();
            before[f.vertex] = -before[f.vertex];
            let before = SpinConfig::new(before).unwrap();
            assert_eq!(
                energy(&inst, &after).unwrap() - energy(&inst, &before).unwrap(),
                f.delta_e
            );
            flips += 1;
        })
        .unwrap();
        assert!(flips > 0);
    }

    #[test]
    fn inactive_spins_stay_up() {
        let spec = ChimeraSpec::new(1, 2, 4).with_mask([1, 9]);
        let inst = gen_instance(&build_chimera(&spec).unwrap(), 2);
        for seed in 0..10 {
            let out = run_sa(&inst, &SaSchedule::default(), seed).unwrap();
            assert_eq!((out[1], out[9]), (1, 1));
        }
    }
}
