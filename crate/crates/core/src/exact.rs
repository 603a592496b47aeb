//! Exact ground states: Gray-code enumeration for small instances and a
//! column transfer-matrix sweep for chimera graphs.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::chimera::{build_chimera, ChimeraSpec};
use crate::error::{Error, Result};
use crate::instance::{energy, Instance, SpinConfig};

/// Largest active-spin count accepted by [`brute_force_ground`].
pub const BRUTE_FORCE_LIMIT: usize = 30;
/// Largest `shore * rows` (boundary width in bits) accepted by [`chimera_dp_ground`].
pub const DP_BOUNDARY_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    BruteForce,
    ChimeraDP,
}

/// Exact minimum energy and one configuration attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub energy: i64,
    pub witness: SpinConfig,
    pub method: Method,
}

/// Exhaustive search over the `2^(N-1)` configurations with the first active spin up.
///
/// Among degenerate minima the lexicographically smallest witness is returned
/// (ordering `-1 < +1`, vertex 0 most significant). Inactive spins are `+1`.
pub fn brute_force_ground(instance: &Instance) -> Result<GroundTruth> {
    let graph = instance.graph();
    let active: Vec<usize> = graph.active_vertices().collect();
    let n = active.len();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            active: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut sigma = vec![1i8; instance.n_vertices()];
    if n == 0 {
        let witness = SpinConfig::new(sigma)?;
        return Ok(GroundTruth {
            energy: 0,
            witness,
            method: Method::BruteForce,
        });
    }
    // bit (n-1-k) of `key` is 1 iff active[k] is up; start with every free spin down
    for &v in &active[1..] {
        sigma[v] = -1;
    }
    let mut key: u32 = 1 << (n - 1);
    let mut e = energy(instance, &SpinConfig::new(sigma.clone())?)?;
    let mut best = (e, key);

    let free = n - 1;
    for g in 1u64..(1u64 << free) {
        let p = g.trailing_zeros() as usize;
        let v = active[n - 1 - p];
        e -= 2 * i64::from(sigma[v]) * instance.local_sum(v, &sigma);
        sigma[v] = -sigma[v];
        key ^= 1 << p;
        if e < best.0 || (e == best.0 && key < best.1) {
            best = (e, key);
        }
    }

    let mut witness = vec![1i8; instance.n_vertices()];
    for (k, &v) in active.iter().enumerate() {
        witness[v] = if best.1 >> (n - 1 - k) & 1 == 1 { 1 } else { -1 };
    }
    Ok(GroundTruth {
        energy: best.0,
        witness: SpinConfig::new(witness)?,
        method: Method::BruteForce,
    })
}

/// Couplings of one chimera instance laid out for the column sweep.
struct ColumnModel {
    rows: usize,
    cols: usize,
    shore: usize,
    /// `[c][r][b][a]`: intra-cell energy for u=1 bits `b` and u=0 bits `a`
    cell: Vec<Vec<Vec<i32>>>,
    /// `[c][r][a][a']`: vertical energy between u=0 bits of rows r and r+1
    vert: Vec<Vec<Vec<i32>>>,
    /// `[c][r*shore + t]`: horizontal coupling from column c-1 into column c
    horiz: Vec<Vec<i32>>,
}

#[inline]
fn spin(bits: usize, t: usize) -> i32 {
    if bits >> t & 1 == 1 {
        1
    } else {
        -1
    }
}

impl ColumnModel {
    fn new(instance: &Instance, spec: &ChimeraSpec) -> Result<Self> {
        spec.validate()?;
        let reference = build_chimera(spec)?;
        let graph = instance.graph();
        if graph.n_vertices() != reference.n_vertices() {
            return Err(Error::SpecMismatch(format!(
                "{} vertices, spec has {}",
                graph.n_vertices(),
                reference.n_vertices()
            )));
        }
        if graph.active() != reference.active() {
            return Err(Error::SpecMismatch("inactive vertices differ from mask".into()));
        }
        let mut j: HashMap<(usize, usize), i32> = HashMap::with_capacity(graph.n_edges());
        for (a, b, c) in instance.weighted_edges() {
            j.insert((a, b), i32::from(c));
        }
        let allowed: std::collections::HashSet<_> = reference.edges().iter().copied().collect();
        if let Some(&(a, b)) = graph.edges().iter().find(|e| !allowed.contains(e)) {
            return Err(Error::SpecMismatch(format!("edge ({a}, {b}) is not a chimera edge")));
        }
        let jv = |a: usize, b: usize| -> i32 {
            let key = if a < b { (a, b) } else { (b, a) };
            j.get(&key).copied().unwrap_or(0)
        };

        let (rows, cols, k) = (spec.rows, spec.cols, spec.shore);
        let states = 1usize << k;
        let mut cell = vec![vec![vec![0i32; states * states]; rows]; cols];
        let mut vert = vec![vec![vec![0i32; states * states]; rows.saturating_sub(1)]; cols];
        let mut horiz = vec![vec![0i32; rows * k]; cols];
        for c in 0..cols {
            for r in 0..rows {
                for b in 0..states {
                    for a in 0..states {
                        let mut e = 0;
                        for t0 in 0..k {
                            for t1 in 0..k {
                                let coupling =
                                    jv(spec.vertex(r, c, 0, t0), spec.vertex(r, c, 1, t1));
                                e += coupling * spin(a, t0) * spin(b, t1);
                            }
                        }
                        cell[c][r][b * states + a] = e;
                    }
                }
                if r + 1 < rows {
                    for a in 0..states {
                        for a2 in 0..states {
                            let e = (0..k)
                                .map(|t| {
                                    jv(spec.vertex(r, c, 0, t), spec.vertex(r + 1, c, 0, t))
                                        * spin(a, t)
                                        * spin(a2, t)
                                })
                                .sum();
                            vert[c][r][a * states + a2] = e;
                        }
                    }
                }
                if c > 0 {
                    for t in 0..k {
                        horiz[c][r * k + t] =
                            jv(spec.vertex(r, c - 1, 1, t), spec.vertex(r, c, 1, t));
                    }
                }
            }
        }
        Ok(ColumnModel {
            rows,
            cols,
            shore: k,
            cell,
            vert,
            horiz,
        })
    }

    fn states(&self) -> usize {
        1 << self.shore
    }

    fn bits(&self) -> usize {
        self.rows * self.shore
    }

    /// Minimum over the u=0 spins of column `c` for every boundary word.
    fn column_table(&self, c: usize) -> Vec<i32> {
        let mut out = vec![0i32; 1 << self.bits()];
        let mut g = vec![0i32; self.states()];
        for b0 in 0..self.states() {
            for (a, slot) in g.iter_mut().enumerate() {
                *slot = self.cell[c][0][b0 * self.states() + a];
            }
            self.descend(c, 1, b0, &g, &mut out);
        }
        out
    }

    fn descend(&self, c: usize, r: usize, prefix: usize, g: &[i32], out: &mut [i32]) {
        let s = self.states();
        if r == self.rows {
            out[prefix] = *g.iter().min().expect("at least one state");
            return;
        }
        let vert = &self.vert[c][r - 1];
        let h: Vec<i32> = (0..s)
            .map(|a| (0..s).map(|a0| g[a0] + vert[a0 * s + a]).min().unwrap())
            .collect();
        let mut next = vec![0i32; s];
        for b in 0..s {
            let cell = &self.cell[c][r][b * s..(b + 1) * s];
            for a in 0..s {
                next[a] = h[a] + cell[a];
            }
            self.descend(c, r + 1, prefix | b << (r * self.shore), &next, out);
        }
    }

    /// Optimal u=0 words of column `c` for a fixed boundary word.
    fn column_argmin(&self, c: usize, boundary: usize) -> Vec<usize> {
        let s = self.states();
        let b_of = |r: usize| boundary >> (r * self.shore) & (s - 1);
        let mut g: Vec<i32> = (0..s).map(|a| self.cell[c][0][b_of(0) * s + a]).collect();
        let mut back: Vec<Vec<usize>> = Vec::with_capacity(self.rows);
        for r in 1..self.rows {
            let vert = &self.vert[c][r - 1];
            let mut next = vec![0i32; s];
            let mut arg = vec![0usize; s];
            for a in 0..s {
                let (best, val) = (0..s)
                    .map(|a0| (a0, g[a0] + vert[a0 * s + a]))
                    .min_by_key(|&(a0, v)| (v, a0))
                    .unwrap();
                next[a] = val + self.cell[c][r][b_of(r) * s + a];
                arg[a] = best;
            }
            back.push(arg);
            g = next;
        }
        let mut a = (0..s).min_by_key(|&a| (g[a], a)).unwrap();
        let mut words = vec![0usize; self.rows];
        words[self.rows - 1] = a;
        for r in (1..self.rows).rev() {
            a = back[r - 1][a];
            words[r - 1] = a;
        }
        words
    }

    fn horizontal_energy(&self, c: usize, left: usize, right: usize) -> i32 {
        self.horiz[c]
            .iter()
            .enumerate()
            .map(|(q, &j)| j * spin(left, q) * spin(right, q))
            .sum()
    }

    /// `min_{B'} f[B'] + horiz(B', B)` for every `B`, one boundary bit at a time.
    fn eliminate_previous(&self, c: usize, f: &[i32]) -> Vec<i32> {
        let mut m = f.to_vec();
        for (q, &j) in self.horiz[c].iter().enumerate() {
            let bit = 1usize << q;
            for x in 0..m.len() {
                if x & bit != 0 {
                    continue;
                }
                // old bit value down (x) or up (x|bit); new bit value down or up
                let (down, up) = (m[x], m[x | bit]);
                m[x] = (down + j).min(up - j);
                m[x | bit] = (down - j).min(up + j);
            }
        }
        m
    }
}

/// Exact ground state of an instance living on the chimera graph `spec`.
///
/// Sweeps columns left to right keeping, for every assignment of the current
/// column's horizontal (u=1) spins, the best energy of everything to the left.
/// The witness is normalized so the first active spin is `+1`; inactive spins are `+1`.
pub fn chimera_dp_ground(instance: &Instance, spec: &ChimeraSpec) -> Result<GroundTruth> {
    if spec.shore * spec.rows > DP_BOUNDARY_LIMIT {
        return Err(Error::TooLarge {
            active: spec.shore * spec.rows,
            limit: DP_BOUNDARY_LIMIT,
        });
    }
    let model = ColumnModel::new(instance, spec)?;

    let mut tables: Vec<Vec<i32>> = Vec::with_capacity(model.cols);
    for c in 0..model.cols {
        let mut f = model.column_table(c);
        if c > 0 {
            let carried = model.eliminate_previous(c, &tables[c - 1]);
            for (x, y) in f.iter_mut().zip(carried) {
                *x += y;
            }
        }
        tables.push(f);
    }

    let last = &tables[model.cols - 1];
    let mut boundary = (0..last.len()).min_by_key(|&b| (last[b], b)).unwrap();
    let best = last[boundary];

    let mut sigma = vec![1i8; instance.n_vertices()];
    for c in (0..model.cols).rev() {
        let lower = model.column_argmin(c, boundary);
        for r in 0..model.rows {
            for t in 0..model.shore {
                sigma[spec.vertex(r, c, 1, t)] = spin(boundary, r * model.shore + t) as i8;
                sigma[spec.vertex(r, c, 0, t)] = spin(lower[r], t) as i8;
            }
        }
        if c > 0 {
            let prev = &tables[c - 1];
            boundary = (0..prev.len())
                .min_by_key(|&b| (prev[b] + model.horizontal_energy(c, b, boundary), b))
                .unwrap();
        }
    }

    let graph = instance.graph();
    if let Some(first) = graph.active_vertices().next() {
        if sigma[first] < 0 {
            sigma.iter_mut().for_each(|s| *s = -*s);
        }
    }
    for v in 0..sigma.len() {
        if !graph.is_active(v) {
            sigma[v] = 1;
        }
    }
    let witness = SpinConfig::new(sigma)?;
    let e = energy(instance, &witness)?;
    if e != i64::from(best) {
        return Err(Error::OracleFailure {
            id: instance.id.clone(),
            dp: i64::from(best),
            brute: e,
        });
    }
    Ok(GroundTruth {
        energy: e,
        witness,
        method: Method::ChimeraDP,
    })
}
