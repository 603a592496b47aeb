//! Semi-classical O(3) annealer.
//!
//! Each qubit is replaced by a classical unit vector `M_i` that precesses about
//! its local field, `dM_i/dt = H_i × M_i`, with
//!
//! ```text
//! H_i(s) = (1 - s) h ê_x + s (Σ_j J_ij M_j^z) ê_z,      s = t / t_f
//! ```
//!
//! optionally augmented by the Gilbert-type damping `H_i -> H_i + α (H_i × M_i)`.
//! The coupling term is the gradient of `s E(M^z)` with `E = Σ J_ij σ_i σ_j`, so the
//! spins start antiparallel to the transverse field (`M = -ê_x`) and end near a
//! low-energy configuration read out as `σ_i = sign(M_i^z)`.
//!
//! Time stepping rotates every spin exactly about its frozen field, which keeps
//! each `‖M_i‖ = 1` to rounding error.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{CouplingTable, Gauge, Instance, SpinConfig};
use crate::rng::{self, Purpose};

pub type Vec3 = [f64; 3];

#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnnealParamsO3 {
    /// transverse field strength
    pub h: f64,
    /// total anneal time
    pub t_f: f64,
    pub dt: f64,
    /// damping
    pub alpha: f64,
    /// kick amplitude
    pub kappa: f64,
}

impl Default for AnnealParamsO3 {
    fn default() -> Self {
        AnnealParamsO3 {
            h: 2.0,
            t_f: 400.0,
            dt: 0.02,
            alpha: 0.1,
            kappa: 0.1,
        }
    }
}

impl AnnealParamsO3 {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_f > 0.0 && self.t_f.is_finite()) {
            return Err(Error::param("t_f", format!("must be > 0, got {}", self.t_f)));
        }
        if !(self.dt > 0.0 && self.dt <= self.t_f) {
            return Err(Error::param("dt", format!("must be in (0, t_f], got {}", self.dt)));
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::param("alpha", format!("must be >= 0, got {}", self.alpha)));
        }
        check_kappa(self.kappa)?;
        if !self.h.is_finite() {
            return Err(Error::param("h", "must be finite"));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        schedule_steps(self.t_f, self.dt)
    }
}

/// `⌈t_f / dt⌉`, treating ratios within 1e-9 of an integer as that integer.
pub(crate) fn schedule_steps(t_f: f64, dt: f64) -> usize {
    let ratio = t_f / dt;
    let nearest = ratio.round();
    if (ratio - nearest).abs() < 1e-9 * nearest.max(1.0) {
        nearest as usize
    } else {
        ratio.ceil() as usize
    }
}

/// Schedule parameter at the midpoint of step `m`, clamped to 1.
#[inline]
pub(crate) fn midpoint_progress(m: usize, dt: f64, t_f: f64) -> f64 {
    ((m as f64 + 0.5) * dt / t_f).min(1.0)
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(0.0..std::f64::consts::FRAC_1_SQRT_2).contains(&kappa) {
        return Err(Error::param(
            "kappa",
            format!("must be in [0, 1/sqrt(2)), got {kappa}"),
        ));
    }
    Ok(())
}

/// Unit vectors, one per vertex (inactive vertices included; they carry no couplings).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinStateO3 {
    pub vectors: Vec<Vec3>,
}

impl SpinStateO3 {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn max_norm_deviation(&self) -> f64 {
        self.vectors
            .iter()
            .map(|&m| (norm(m) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `(M^x, M^y, M^z)_i -> (M^x, s_i M^y, s_i M^z)_i`, the state-side half of a gauge map.
    pub fn gauged(&self, gauge: &Gauge) -> SpinStateO3 {
        SpinStateO3 {
            vectors: self
                .vectors
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    let s = gauge.sign(i);
                    [m[0], s * m[1], s * m[2]]
                })
                .collect(),
        }
    }

    /// Coupling energy `Σ J_ij M_i^z M_j^z`.
    pub fn coupling_energy(&self, instance: &Instance) -> f64 {
        instance
            .weighted_edges()
            .map(|(i, j, c)| f64::from(c) * self.vectors[i][2] * self.vectors[j][2])
            .sum()
    }
}

/// `M_i = (-sqrt(1 - δ_i² - η_i²), δ_i, η_i)` with `δ_i, η_i` uniform on `(-κ, κ)`.
pub fn sample_kick_state(n: usize, kappa: f64, seed: u64) -> Result<SpinStateO3> {
    check_kappa(kappa)?;
    let vectors = (0..n)
        .map(|i| {
            let delta = rng::symmetric_open(rng::word(seed, Purpose::Kick, 2 * i as u64), kappa);
            let eta = rng::symmetric_open(rng::word(seed, Purpose::Kick, 2 * i as u64 + 1), kappa);
            [-(1.0 - delta * delta - eta * eta).sqrt(), delta, eta]
        })
        .collect();
    Ok(SpinStateO3 { vectors })
}

/// Local fields `H_i = (1-s) h ê_x + s (Σ_j J_ij M_j^z) ê_z`.
pub fn local_field(instance: &Instance, state: &SpinStateO3, s: f64, h: f64) -> Vec<Vec3> {
    let table = instance.coupling_table();
    let mut out = vec![[0.0; 3]; state.len()];
    fill_local_field(&table, &state.vectors, s, h, &mut out);
    out
}

#[inline]
fn fill_local_field(table: &CouplingTable, m: &[Vec3], s: f64, h: f64, out: &mut [Vec3]) {
    let transverse = (1.0 - s) * h;
    for (i, field) in out.iter_mut().enumerate() {
        let coupling = table.weighted_sum(i, |j| m[j][2]);
        *field = [transverse, 0.0, s * coupling];
    }
}

/// Damped field `H + α (H × M)`.
#[inline]
pub fn apply_damping(h: Vec3, m: Vec3, alpha: f64) -> Vec3 {
    if alpha == 0.0 {
        return h;
    }
    let t = cross(h, m);
    [h[0] + alpha * t[0], h[1] + alpha * t[1], h[2] + alpha * t[2]]
}

/// Rotate `m` about `field` by the angle `‖field‖ dt` (exact flow of `dM/dt = H × M`).
#[inline]
pub fn rotate(m: Vec3, field: Vec3, dt: f64) -> Vec3 {
    let w2 = dot(field, field);
    let t2 = w2 * dt * dt;
    let (a, b) = if t2 <= SERIES_LIMIT {
        let (sinc, versc) = sinc_versc(t2);
        (dt * sinc, dt * dt * versc)
    } else {
        let w = w2.sqrt();
        let (sin, cos) = (w * dt).sin_cos();
        (sin / w, (1.0 - cos) / w2)
    };
    rodrigues(m, field, a, b)
}

/// `m cos θ + (H × m) a + H (H·m) b` with `a = sin θ / ‖H‖`, `b = (1 - cos θ) / ‖H‖²`.
#[inline(always)]
fn rodrigues(m: Vec3, field: Vec3, a: f64, b: f64) -> Vec3 {
    let hxm = cross(field, m);
    let k = dot(field, m) * b;
    // cos θ = 1 - ‖H‖² b
    let cos = 1.0 - dot(field, field) * b;
    [
        m[0] * cos + hxm[0] * a + field[0] * k,
        m[1] * cos + hxm[1] * a + field[1] * k,
        m[2] * cos + hxm[2] * a + field[2] * k,
    ]
}

/// Largest squared step angle handled by [`sinc_versc`].
const SERIES_LIMIT: f64 = 1.0;

/// `(sin θ / θ, (1 - cos θ) / θ²)` as power series in `t2 = θ²`, for `t2 <= 1`.
#[inline(always)]
fn sinc_versc(t2: f64) -> (f64, f64) {
    // nested Horner form; the first omitted terms are below 1/19! and 1/20! (< 1e-17)
    let sinc = 1.0 - t2 * (1.0 / 6.0) * (1.0 - t2 * (1.0 / 20.0) * (1.0 - t2 * (1.0 / 42.0) * (1.0 - t2 * (1.0 / 72.0)
        * (1.0 - t2 * (1.0 / 110.0) * (1.0 - t2 * (1.0 / 156.0) * (1.0 - t2 * (1.0 / 210.0) * (1.0 - t2 * (1.0 / 272.0))))))));
    let versc = 1.0 - t2 * (1.0 / 12.0) * (1.0 - t2 * (1.0 / 30.0) * (1.0 - t2 * (1.0 / 56.0) * (1.0 - t2 * (1.0 / 90.0)
        * (1.0 - t2 * (1.0 / 132.0) * (1.0 - t2 * (1.0 / 182.0) * (1.0 - t2 * (1.0 / 240.0) * (1.0 - t2 * (1.0 / 306.0))))))));
    (sinc, 0.5 * versc)
}

/// One exact rotation step for every spin under frozen fields.
pub fn step_rotate(state: &SpinStateO3, fields: &[Vec3], dt: f64) -> SpinStateO3 {
    SpinStateO3 {
        vectors: state
            .vectors
            .iter()
            .zip(fields)
            .map(|(&m, &f)| rotate(m, f, dt))
            .collect(),
    }
}

/// Anneal from a kicked initial state drawn from `seed`.
pub fn run_o3(instance: &Instance, params: &AnnealParamsO3, seed: u64) -> Result<SpinStateO3> {
    params.validate()?;
    let initial = sample_kick_state(instance.n_vertices(), params.kappa, seed)?;
    run_o3_from(instance, params, initial)
}

/// Anneal from an explicit initial state.
pub fn run_o3_from(
    instance: &Instance,
    params: &AnnealParamsO3,
    initial: SpinStateO3,
) -> Result<SpinStateO3> {
    let steps = params.n_steps();
    let (dt, t_f) = (params.dt, params.t_f);
    run_o3_inner(instance, params, initial, steps, &|m| midpoint_progress(m, dt, t_f), None)
}

/// Anneal from `initial`, calling `observe(step, state)` after every step.
pub fn run_o3_observed(
    instance: &Instance,
    params: &AnnealParamsO3,
    initial: SpinStateO3,
    mut observe: impl FnMut(usize, &SpinStateO3),
) -> Result<SpinStateO3> {
    let steps = params.n_steps();
    let (dt, t_f) = (params.dt, params.t_f);
    run_o3_inner(instance, params, initial, steps, &|m| midpoint_progress(m, dt, t_f), Some(&mut observe))
}

/// Integrate `steps` steps under an arbitrary schedule `progress(step)` in `[0, 1]`,
/// e.g. a constant to study the dynamics at frozen `s`. `params.t_f` is ignored.
pub fn run_o3_scheduled(
    instance: &Instance,
    params: &AnnealParamsO3,
    initial: SpinStateO3,
    steps: usize,
    progress: impl Fn(usize) -> f64,
    mut observe: impl FnMut(usize, &SpinStateO3),
) -> Result<SpinStateO3> {
    run_o3_inner(instance, params, initial, steps, &progress, Some(&mut observe))
}

type Observer<'a> = Option<&'a mut dyn FnMut(usize, &SpinStateO3)>;

fn run_o3_inner(
    instance: &Instance,
    params: &AnnealParamsO3,
    initial: SpinStateO3,
    steps: usize,
    progress: &dyn Fn(usize) -> f64,
    mut observe: Observer<'_>,
) -> Result<SpinStateO3> {
    params.validate()?;
    let n = instance.n_vertices();
    if initial.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: initial.len(),
        });
    }
    let table = instance.coupling_table();
    let (dt, alpha) = (params.dt, params.alpha);
    // ‖H + α H×M‖² <= (1 + α²) ‖H‖² and ‖H‖² <= h² + (Σ_j |J_ij|)²
    let degree = table.max_abs_row_sum();
    let bound = (1.0 + alpha * alpha) * (params.h * params.h + degree * degree) * dt * dt;
    let series_only = bound <= SERIES_LIMIT;

    let padded = PaddedTable::new(&table);
    let mut soa = Soa::from_vectors(&initial.vectors);
    let mut bz = vec![0.0; n];
    for step in 0..steps {
        let s = progress(step);
        let hx = (1.0 - s) * params.h;
        padded.fill(&soa.z, s, &mut bz);
        if series_only {
            soa.rotate_series(&bz, hx, alpha, dt);
        } else {
            let Soa { x, y, z } = &mut soa;
            for (((mx, my), mz), &hz) in x.iter_mut().zip(y.iter_mut()).zip(z.iter_mut()).zip(&bz) {
                let m = [*mx, *my, *mz];
                [*mx, *my, *mz] = rotate(m, apply_damping([hx, 0.0, hz], m, alpha), dt);
            }
        }
        if let Some(obs) = observe.as_deref_mut() {
            obs(step, &soa.to_state());
        }
    }
    Ok(soa.to_state())
}

/// Coupling rows padded with zero weights to the maximum degree.
struct PaddedTable {
    width: usize,
    neighbors: Vec<usize>,
    weights: Vec<f64>,
}

impl PaddedTable {
    fn new(table: &CouplingTable) -> Self {
        let n = table.n_vertices();
        let width = (0..n).map(|v| table.row(v).0.len()).max().unwrap_or(0).max(1);
        let mut neighbors = Vec::with_capacity(n * width);
        let mut weights = Vec::with_capacity(n * width);
        for v in 0..n {
            let (nb, w) = table.row(v);
            neighbors.extend_from_slice(nb);
            weights.extend_from_slice(w);
            neighbors.resize((v + 1) * width, v);
            weights.resize((v + 1) * width, 0.0);
        }
        PaddedTable {
            width,
            neighbors,
            weights,
        }
    }

    /// `out_i = s Σ_j J_ij z_j`
    #[inline]
    fn fill(&self, z: &[f64], s: f64, out: &mut [f64]) {
        let rows = self.neighbors.chunks_exact(self.width).zip(self.weights.chunks_exact(self.width));
        for (o, (nb, w)) in out.iter_mut().zip(rows) {
            let mut acc = 0.0;
            for (&j, &c) in nb.iter().zip(w) {
                acc += c * z[j];
            }
            *o = s * acc;
        }
    }
}

/// Component-major copy of the spin vectors used inside the time loop.
struct Soa {
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
}

impl Soa {
    fn from_vectors(v: &[Vec3]) -> Self {
        Soa {
            x: v.iter().map(|m| m[0]).collect(),
            y: v.iter().map(|m| m[1]).collect(),
            z: v.iter().map(|m| m[2]).collect(),
        }
    }

    /// Series-path rotation of every spin about its (damped) field `(hx, 0, bz_i)`.
    #[inline(never)]
    fn rotate_series(&mut self, bz: &[f64], hx: f64, alpha: f64, dt: f64) {
        let n = bz.len();
        let (x, y, z) = (&mut self.x[..n], &mut self.y[..n], &mut self.z[..n]);
        for i in 0..n {
            let m = [x[i], y[i], z[i]];
            let hz = bz[i];
            // apply_damping([hx, 0, hz], m, alpha) with the zero component folded in
            let f = [hx + alpha * -(hz * m[1]), alpha * (hz * m[0] - hx * m[2]), hz + alpha * (hx * m[1])];
            let (sinc, versc) = sinc_versc(dot(f, f) * dt * dt);
            [x[i], y[i], z[i]] = rodrigues(m, f, dt * sinc, dt * dt * versc);
        }
    }

    fn to_state(&self) -> SpinStateO3 {
        let vectors = (0..self.x.len()).map(|i| [self.x[i], self.y[i], self.z[i]]).collect();
        SpinStateO3 { vectors }
    }
}

/// `σ_i = sign(M_i^z)` with ties broken to `+1`.
pub fn readout(state: &SpinStateO3) -> SpinConfig {
    SpinConfig::from_signs(state.vectors.iter().map(|m| m[2]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::{build_chimera, ChimeraSpec, Graph};
    use crate::instance::gen_instance;
    use std::f64::consts::PI;

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        (0..3).all(|k| (a[k] - b[k]).abs() <= tol)
    }

    #[test]
    fn zero_kick_points_along_minus_x() {
        let st = sample_kick_state(5, 0.0, 3).unwrap();
        assert!(st.vectors.iter().all(|&m| m == [-1.0, 0.0, 0.0]));
    }

    #[test]
    fn kicks_are_bounded_and_normalized() {
        let st = sample_kick_state(1000, 0.1, 17).unwrap();
        for m in &st.vectors {
            assert!(m[1].abs() < 0.1 && m[2].abs() < 0.1);
            assert!((norm(*m) - 1.0).abs() < 1e-15);
        }
        assert_eq!(st, sample_kick_state(1000, 0.1, 17).unwrap());
        assert_ne!(st, sample_kick_state(1000, 0.1, 18).unwrap());
    }

    #[test]
    fn kick_amplitude_range() {
        assert!(sample_kick_state(3, 0.71, 0).is_err());
        assert!(sample_kick_state(3, -0.01, 0).is_err());
    }

    #[test]
    fn field_at_schedule_start_is_transverse() {
        let inst = gen_instance(&build_chimera(&ChimeraSpec::new(1, 1, 4)).unwrap(), 1);
        let st = sample_kick_state(8, 0.1, 2).unwrap();
        for f in local_field(&inst, &st, 0.0, 1.5) {
            assert_eq!(f, [1.5, 0.0, 0.0]);
        }
    }

    #[test]
    fn field_single_coupling_at_end() {
        let inst = Instance::uniform("p", Graph::from_edges(2, vec![(0, 1)]).unwrap(), 1).unwrap();
        let st = SpinStateO3 {
            vectors: vec![[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]],
        };
        assert_eq!(local_field(&inst, &st, 1.0, 1.0)[0], [0.0, 0.0, 1.0]);
    }

    #[test]
    fn field_three_spin_chain_midway() {
        // chain 0 -(+1)- 1 -(-1)- 2
        let g = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let inst = Instance::new("chain", 0, g, vec![1, -1]).unwrap();
        let st = SpinStateO3 {
            vectors: vec![[0.6, 0.0, 0.8], [0.0, 0.6, -0.8], [0.0, 1.0, 0.0]],
        };
        let f = local_field(&inst, &st, 0.5, 2.0);
        // (1-0.5)*2 = 1 transverse; coupling sums: 0 -> -0.8, 1 -> 0.8 - 0 = 0.8, 2 -> -(-0.8) = 0.8
        assert!(close(f[0], [1.0, 0.0, -0.4], 1e-15));
        assert!(close(f[1], [1.0, 0.0, 0.4], 1e-15));
        assert!(close(f[2], [1.0, 0.0, 0.4], 1e-15));
    }

    #[test]
    fn damping_cases() {
        let h = [0.3, -1.2, 0.5];
        let m = [0.0, 0.6, 0.8];
        assert_eq!(apply_damping(h, m, 0.0), h);
        assert_eq!(apply_damping([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1.0), [1.0, -1.0, 0.0]);
        let d = apply_damping(h, m, 0.7);
        let diff = [d[0] - h[0], d[1] - h[1], d[2] - h[2]];
        assert!(dot(diff, h).abs() < 1e-15);
    }

    #[test]
    fn zero_field_leaves_state() {
        let st = sample_kick_state(4, 0.1, 1).unwrap();
        assert_eq!(step_rotate(&st, &[[0.0; 3]; 4], 0.5), st);
    }

    #[test]
    fn half_turn_about_x() {
        let dt = 0.02;
        let st = SpinStateO3 {
            vectors: vec![[0.0, 0.0, 1.0]],
        };
        let out = step_rotate(&st, &[[PI / dt, 0.0, 0.0]], dt);
        assert!(close(out.vectors[0], [0.0, 0.0, -1.0], 1e-12));
    }

    #[test]
    fn rotation_direction_matches_precession() {
        // dM/dt = H x M with H = ê_z, M = ê_x gives dM/dt = ê_y
        let m = rotate([1.0, 0.0, 0.0], [0.0, 0.0, 1.0], 1e-6);
        assert!(m[1] > 0.0);
    }

    #[test]
    fn frozen_field_step_splitting() {
        let st = sample_kick_state(16, 0.3, 5).unwrap();
        let fields: Vec<Vec3> = (0..16)
            .map(|i| [1.0 + i as f64 * 0.1, -0.5, 0.3 * i as f64 - 2.0])
            .collect();
        let one = step_rotate(&st, &fields, 0.05);
        let two = step_rotate(&step_rotate(&st, &fields, 0.025), &fields, 0.025);
        for (a, b) in one.vectors.iter().zip(&two.vectors) {
            assert!(close(*a, *b, 1e-12));
        }
    }

    #[test]
    fn series_matches_libm() {
        for k in 1..=2000 {
            let t = k as f64 * 5e-4;
            let (sinc, versc) = sinc_versc(t * t);
            assert!((sinc - t.sin() / t).abs() <= 4e-16, "{t}");
            // 2 sin²(t/2) avoids the cancellation in 1 - cos t
            let half = (0.5 * t).sin();
            assert!((versc - 2.0 * half * half / (t * t)).abs() <= 4e-16, "{t}");
        }
    }

    #[test]
    fn series_and_libm_paths_agree() {
        let m = [0.6, 0.0, 0.8];
        let f = [0.7, -0.2, 1.1];
        // angle just inside and just outside the series range
        for dt in [0.7, 0.76] {
            let a = rotate(m, f, dt);
            let w = norm(f);
            let n = [f[0] / w, f[1] / w, f[2] / w];
            let (sin, cos) = (w * dt).sin_cos();
            let nxm = cross(n, m);
            let k = dot(n, m) * (1.0 - cos);
            let b: Vec3 = std::array::from_fn(|i| m[i] * cos + nxm[i] * sin + n[i] * k);
            assert!(close(a, b, 1e-15), "{dt}");
        }
    }

    #[test]
    fn readout_sign_rule() {
        let st = SpinStateO3 {
            vectors: vec![[0.0, 0.0, 0.3], [0.0, 0.0, -0.7], [1.0, 0.0, 0.0]],
        };
        assert_eq!(readout(&st).as_slice(), &[1, -1, 1]);
    }

    #[test]
    fn zero_kick_stays_in_plane() {
        let inst = gen_instance(&build_chimera(&ChimeraSpec::new(1, 1, 4)).unwrap(), 4);
        let params = AnnealParamsO3 {
            kappa: 0.0,
            t_f: 10.0,
            ..Default::default()
        };
        run_o3_observed(&inst, &params, sample_kick_state(8, 0.0, 0).unwrap(), |_, st| {
            assert!(st.vectors.iter().all(|m| m[1] == 0.0 && m[2] == 0.0));
        })
        .unwrap();
    }

    #[test]
    fn step_count() {
        assert_eq!(AnnealParamsO3::default().n_steps(), 20_000);
        assert_eq!(schedule_steps(1.0, 0.3), 4);
        assert_eq!(schedule_steps(0.3, 0.1), 3);
    }

    #[test]
    fn param_validation() {
        let ok = AnnealParamsO3::default();
        assert!(ok.validate().is_ok());
        assert!(AnnealParamsO3 { t_f: 0.0, ..ok }.validate().is_err());
        assert!(AnnealParamsO3 { dt: 500.0, ..ok }.validate().is_err());
        assert!(AnnealParamsO3 { alpha: -0.1, ..ok }.validate().is_err());
        assert!(AnnealParamsO3 { kappa: 1.0, ..ok }.validate().is_err());
    }
}
