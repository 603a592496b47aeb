//! ±1 spin-glass instances, spin configurations and the Ising energy.
//!
//! The energy convention throughout the crate is
//! `E(σ) = Σ_(i,j) J_ij σ_i σ_j`, to be minimized, so `J = -1` is ferromagnetic.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::chimera::Graph;
use crate::error::{Error, Result};
use crate::rng::{self, Purpose};

/// An Ising configuration, one `±1` entry per vertex (inactive vertices included).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SpinConfig(Vec<i8>);

impl TryFrom<Vec<i8>> for SpinConfig {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        SpinConfig::new(v)
    }
}

impl From<SpinConfig> for Vec<i8> {
    fn from(c: SpinConfig) -> Vec<i8> {
        c.0
    }
}

impl SpinConfig {
    pub fn new(sigma: Vec<i8>) -> Result<Self> {
        if let Some(pos) = sigma.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::param(
                "sigma",
                format!("entry {pos} is {}, expected -1 or +1", sigma[pos]),
            ));
        }
        Ok(SpinConfig(sigma))
    }

    pub fn all_up(n: usize) -> Self {
        SpinConfig(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    /// Global spin flip.
    pub fn flipped(&self) -> Self {
        SpinConfig(self.0.iter().map(|&s| -s).collect())
    }

    /// Sign of each value, with zero mapped to `+1`.
    pub fn from_signs(values: impl IntoIterator<Item = f64>) -> Self {
        SpinConfig(
            values
                .into_iter()
                .map(|x| if x < 0.0 { -1 } else { 1 })
                .collect(),
        )
    }
}

impl std::ops::Index<usize> for SpinConfig {
    type Output = i8;
    fn index(&self, i: usize) -> &i8 {
        &self.0[i]
    }
}

/// A graph with one `±1` coupling per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub id: String,
    pub seed: u64,
    graph: Graph,
    /// indexed like `graph.edges()`
    couplings: Vec<i8>,
}

impl Instance {
    pub fn new(id: impl Into<String>, seed: u64, graph: Graph, couplings: Vec<i8>) -> Result<Self> {
        if couplings.len() != graph.n_edges() {
            return Err(Error::LengthMismatch {
                expected: graph.n_edges(),
                got: couplings.len(),
            });
        }
        if let Some(k) = couplings.iter().position(|&j| j != 1 && j != -1) {
            return Err(Error::param(
                "couplings",
                format!("edge {k} has J = {}, expected -1 or +1", couplings[k]),
            ));
        }
        Ok(Instance {
            id: id.into(),
            seed,
            graph,
            couplings,
        })
    }

    /// Same couplings on every edge.
    pub fn uniform(id: impl Into<String>, graph: Graph, j: i8) -> Result<Self> {
        let couplings = vec![j; graph.n_edges()];
        Instance::new(id, 0, graph, couplings)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n_vertices(&self) -> usize {
        self.graph.n_vertices()
    }

    pub fn couplings(&self) -> &[i8] {
        &self.couplings
    }

    pub fn coupling(&self, edge: usize) -> i8 {
        self.couplings[edge]
    }

    /// `(i, j, J_ij)` for every edge.
    pub fn weighted_edges(&self) -> impl Iterator<Item = (usize, usize, i8)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.couplings)
            .map(|(&(i, j), &c)| (i, j, c))
    }

    /// Neighbours of `v` with their couplings.
    pub fn coupled_neighbors(&self, v: usize) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.graph
            .neighbors(v)
            .iter()
            .map(move |&(u, e)| (u, self.couplings[e]))
    }

    /// `Σ_j J_ij σ_j` over the neighbours of `v`.
    pub fn local_sum(&self, v: usize, sigma: &[i8]) -> i64 {
        self.coupled_neighbors(v)
            .map(|(u, j)| i64::from(j) * i64::from(sigma[u]))
            .sum()
    }

    pub fn energy(&self, config: &SpinConfig) -> Result<i64> {
        energy(self, config)
    }

    /// Compressed neighbour table for the inner loops of the annealers.
    pub fn coupling_table(&self) -> CouplingTable {
        let n = self.n_vertices();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(2 * self.graph.n_edges());
        let mut weights = Vec::with_capacity(2 * self.graph.n_edges());
        offsets.push(0);
        for v in 0..n {
            for (u, j) in self.coupled_neighbors(v) {
                neighbors.push(u);
                weights.push(f64::from(j));
            }
            offsets.push(neighbors.len());
        }
        CouplingTable {
            offsets,
            neighbors,
            weights,
        }
    }
}

/// CSR adjacency with couplings as `f64`.
#[derive(Debug, Clone)]
pub struct CouplingTable {
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
    weights: Vec<f64>,
}

impl CouplingTable {
    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    #[inline]
    pub fn row(&self, v: usize) -> (&[usize], &[f64]) {
        let (a, b) = (self.offsets[v], self.offsets[v + 1]);
        (&self.neighbors[a..b], &self.weights[a..b])
    }

    /// `Σ_j J_ij x_j` for vertex `v`.
    #[inline]
    pub fn weighted_sum(&self, v: usize, x: impl Fn(usize) -> f64) -> f64 {
        let (nb, w) = self.row(v);
        nb.iter().zip(w).map(|(&u, &j)| j * x(u)).sum()
    }

    /// `max_i Σ_j |J_ij|`.
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.n_vertices())
            .map(|v| self.row(v).1.iter().map(|j| j.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

/// Ising energy `Σ J_ij σ_i σ_j`; inactive vertices have no edges and contribute nothing.
pub fn energy(instance: &Instance, config: &SpinConfig) -> Result<i64> {
    if config.len() != instance.n_vertices() {
        return Err(Error::LengthMismatch {
            expected: instance.n_vertices(),
            got: config.len(),
        });
    }
    let s = config.as_slice();
    Ok(instance
        .weighted_edges()
        .map(|(i, j, c)| i64::from(c) * i64::from(s[i]) * i64::from(s[j]))
        .sum())
}

/// Random `±1` couplings on every edge of `graph`, one counter-based draw per edge.
pub fn gen_instance(graph: &Graph, seed: u64) -> Instance {
    let couplings = (0..graph.n_edges())
        .map(|e| {
            if rng::word(seed, Purpose::Couplings, e as u64) & 1 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Instance::new(format!("seed{seed}"), seed, graph.clone(), couplings)
        .expect("generated couplings are valid")
}

/// Sign vector `s` defining the gauge map `J_ij -> s_i s_j J_ij`, `σ_i -> s_i σ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge(Vec<i8>);

impl Gauge {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        SpinConfig::new(signs).map(|c| Gauge(c.into_inner()))
    }

    pub fn random(n: usize, seed: u64) -> Self {
        Gauge(
            (0..n)
                .map(|i| {
                    if rng::word(seed, Purpose::Sample, i as u64) & 1 == 0 {
                        1
                    } else {
                        -1
                    }
                })
                .collect(),
        )
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    #[inline]
    pub fn sign(&self, i: usize) -> f64 {
        f64::from(self.0[i])
    }

    pub fn apply_instance(&self, instance: &Instance) -> Result<Instance> {
        if self.0.len() != instance.n_vertices() {
            return Err(Error::LengthMismatch {
                expected: instance.n_vertices(),
                got: self.0.len(),
            });
        }
        let couplings = instance
            .weighted_edges()
            .map(|(i, j, c)| self.0[i] * self.0[j] * c)
            .collect();
        Instance::new(
            instance.id.clone(),
            instance.seed,
            instance.graph.clone(),
            couplings,
        )
    }

    pub fn apply_config(&self, config: &SpinConfig) -> SpinConfig {
        SpinConfig(self.0.iter().zip(config.as_slice()).map(|(s, x)| s * x).collect())
    }
}

/// Serialize `instance` in the edge-list text format.
///
/// Metadata (`id`, `seed`, inactive vertices) travels in `#` comment lines so that
/// readers which only understand the bare `N M` / `i j J` layout still accept the file.
pub fn format_instance(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "# id: {}", instance.id).unwrap();
    writeln!(out, "# seed: {}", instance.seed).unwrap();
    let inactive: Vec<String> = (0..instance.n_vertices())
        .filter(|&v| !instance.graph.is_active(v))
        .map(|v| v.to_string())
        .collect();
    if !inactive.is_empty() {
        writeln!(out, "# inactive: {}", inactive.join(" ")).unwrap();
    }
    writeln!(out, "{} {}", instance.n_vertices(), instance.graph.n_edges()).unwrap();
    for (i, j, c) in instance.weighted_edges() {
        writeln!(out, "{i} {j} {c}").unwrap();
    }
    out
}

pub fn write_instance(instance: &Instance, path: &Path) -> Result<()> {
    std::fs::write(path, format_instance(instance)).map_err(|e| Error::io(path, e))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_instance(&text, &path.display().to_string(), &stem)
}

/// Parse the edge-list format. `default_id` is used when the file carries no `# id:` line.
pub fn parse_instance(text: &str, origin: &str, default_id: &str) -> Result<Instance> {
    let err = |line: usize, reason: String| Error::Parse {
        path: origin.to_string(),
        line,
        reason,
    };

    let mut id = default_id.to_string();
    let mut seed = 0u64;
    let mut inactive = Vec::new();
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut couplings = Vec::new();
    let mut last_line = 0;

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim();
            if let Some(v) = comment.strip_prefix("id:") {
                id = v.trim().to_string();
            } else if let Some(v) = comment.strip_prefix("seed:") {
                seed = v
                    .trim()
                    .parse()
                    .map_err(|_| err(lineno, format!("bad seed `{}`", v.trim())))?;
            } else if let Some(v) = comment.strip_prefix("inactive:") {
                for tok in v.split_whitespace() {
                    inactive.push(
                        tok.parse::<usize>()
                            .map_err(|_| err(lineno, format!("bad inactive vertex `{tok}`")))?,
                    );
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                let [n, m] = fields[..] else {
                    return Err(err(lineno, format!("expected header `N M`, found `{line}`")));
                };
                let n = n
                    .parse()
                    .map_err(|_| err(lineno, format!("bad vertex count `{n}`")))?;
                let m = m
                    .parse()
                    .map_err(|_| err(lineno, format!("bad edge count `{m}`")))?;
                header = Some((n, m));
            }
            Some((n, m)) => {
                let [i, j, c] = fields[..] else {
                    return Err(err(lineno, format!("expected `i j J`, found `{line}`")));
                };
                let i: usize = i
                    .parse()
                    .map_err(|_| err(lineno, format!("bad vertex index `{i}`")))?;
                let j: usize = j
                    .parse()
                    .map_err(|_| err(lineno, format!("bad vertex index `{j}`")))?;
                let c: i64 = c
                    .parse()
                    .map_err(|_| err(lineno, format!("bad coupling `{c}`")))?;
                if i >= n || j >= n {
                    return Err(err(lineno, format!("vertex index out of range 0..{n}")));
                }
                if i == j {
                    return Err(err(lineno, format!("self-loop on vertex {i}")));
                }
                if c != 1 && c != -1 {
                    return Err(err(lineno, format!("coupling {c} is not ±1")));
                }
                if edges.len() == m {
                    return Err(err(lineno, format!("more than the declared {m} edges")));
                }
                edges.push((i, j));
                couplings.push(c as i8);
            }
        }
    }

    let Some((n, m)) = header else {
        return Err(err(last_line, "missing `N M` header".into()));
    };
    if edges.len() != m {
        return Err(err(
            last_line,
            format!("declared {m} edges, found {}", edges.len()),
        ));
    }
    let mut active = vec![true; n];
    for v in inactive {
        if v >= n {
            return Err(err(0, format!("inactive vertex {v} out of range")));
        }
        active[v] = false;
    }
    let graph = Graph::new(n, active, edges).map_err(|e| err(0, e.to_string()))?;
    Instance::new(id, seed, graph, couplings)
}
