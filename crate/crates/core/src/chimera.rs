//! Chimera topology and the generic graph type shared by every solver.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A `rows x cols` grid of K(shore, shore) cells, optionally with dead qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChimeraSpec {
    pub rows: usize,
    pub cols: usize,
    #[serde(default = "default_shore")]
    pub shore: usize,
    #[serde(default)]
    pub mask: BTreeSet<usize>,
}

fn default_shore() -> usize {
    4
}

impl ChimeraSpec {
    pub fn new(rows: usize, cols: usize, shore: usize) -> Self {
        ChimeraSpec {
            rows,
            cols,
            shore,
            mask: BTreeSet::new(),
        }
    }

    pub fn with_mask(mut self, mask: impl IntoIterator<Item = usize>) -> Self {
        self.mask = mask.into_iter().collect();
        self
    }

    pub fn n_vertices(&self) -> usize {
        self.rows * self.cols * 2 * self.shore
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 || self.shore == 0 {
            return Err(Error::InvalidSpec(format!(
                "rows, cols and shore must be >= 1 (got {}x{}x{})",
                self.rows, self.cols, self.shore
            )));
        }
        if let Some(&bad) = self.mask.iter().find(|&&v| v >= self.n_vertices()) {
            return Err(Error::InvalidSpec(format!(
                "mask index {bad} out of range for {} vertices",
                self.n_vertices()
            )));
        }
        Ok(())
    }

    /// Index of shore position `t` on side `u` of cell `(r, c)`.
    #[inline]
    pub fn vertex(&self, r: usize, c: usize, u: usize, t: usize) -> usize {
        ((r * self.cols + c) * 2 + u) * self.shore + t
    }

    /// Inverse of [`ChimeraSpec::vertex`]: `(r, c, u, t)`.
    pub fn coords(&self, v: usize) -> (usize, usize, usize, usize) {
        let t = v % self.shore;
        let u = (v / self.shore) % 2;
        let cell = v / (2 * self.shore);
        (cell / self.cols, cell % self.cols, u, t)
    }

    /// Edge count of the unmasked graph.
    pub fn full_edge_count(&self) -> usize {
        let k = self.shore;
        self.rows * self.cols * k * k
            + k * self.cols * (self.rows - 1)
            + k * self.rows * (self.cols - 1)
    }

    /// Every edge of the unmasked graph, in construction order.
    fn full_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.full_edge_count());
        for r in 0..self.rows {
            for c in 0..self.cols {
                for t0 in 0..self.shore {
                    for t1 in 0..self.shore {
                        edges.push((self.vertex(r, c, 0, t0), self.vertex(r, c, 1, t1)));
                    }
                }
                if r + 1 < self.rows {
                    for t in 0..self.shore {
                        edges.push((self.vertex(r, c, 0, t), self.vertex(r + 1, c, 0, t)));
                    }
                }
                if c + 1 < self.cols {
                    for t in 0..self.shore {
                        edges.push((self.vertex(r, c, 1, t), self.vertex(r, c + 1, 1, t)));
                    }
                }
            }
        }
        edges
    }
}

/// Undirected simple graph with optionally inactive vertices.
///
/// Inactive vertices keep their index but carry no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n_vertices: usize,
    active: Vec<bool>,
    edges: Vec<(usize, usize)>,
    /// `(neighbor, edge index)` per vertex
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Build a graph, normalizing each edge to `i < j`.
    pub fn new(n_vertices: usize, active: Vec<bool>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if active.len() != n_vertices {
            return Err(Error::LengthMismatch {
                expected: n_vertices,
                got: active.len(),
            });
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut adjacency = vec![Vec::new(); n_vertices];
        let mut normalized = Vec::with_capacity(edges.len());
        for (k, &(a, b)) in edges.iter().enumerate() {
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if i == j {
                return Err(Error::InvalidSpec(format!("self-loop on vertex {i}")));
            }
            if j >= n_vertices {
                return Err(Error::InvalidSpec(format!(
                    "edge ({i}, {j}) out of range for {n_vertices} vertices"
                )));
            }
            if !active[i] || !active[j] {
                return Err(Error::InvalidSpec(format!(
                    "edge ({i}, {j}) touches an inactive vertex"
                )));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidSpec(format!("duplicate edge ({i}, {j})")));
            }
            adjacency[i].push((j, k));
            adjacency[j].push((i, k));
            normalized.push((i, j));
        }
        Ok(Graph {
            n_vertices,
            active,
            edges: normalized,
            adjacency,
        })
    }

    /// All vertices active.
    pub fn from_edges(n_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Graph::new(n_vertices, vec![true; n_vertices], edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_active(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active[v]
    }

    pub fn active(&self) -> &[bool] {
        &self.active
    }

    pub fn active_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_vertices).filter(move |&v| self.active[v])
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Build the chimera graph described by `spec`.
///
/// Masked vertices stay in the index space but are inactive and lose their edges.
pub fn build_chimera(spec: &ChimeraSpec) -> Result<Graph> {
    spec.validate()?;
    let n = spec.n_vertices();
    let active: Vec<bool> = (0..n).map(|v| !spec.mask.contains(&v)).collect();
    let edges = spec
        .full_edges()
        .into_iter()
        .filter(|&(i, j)| active[i] && active[j])
        .collect();
    Graph::new(n, active, edges)
}

/// Read a mask file: one vertex index per line, `#` comments and blank lines ignored.
pub fn read_mask(path: &Path) -> Result<BTreeSet<usize>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_mask(&text, &path.display().to_string())
}

pub fn parse_mask(text: &str, origin: &str) -> Result<BTreeSet<usize>> {
    let mut mask = BTreeSet::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v = line.parse::<usize>().map_err(|_| Error::Parse {
            path: origin.to_string(),
            line: lineno + 1,
            reason: format!("expected a vertex index, found `{line}`"),
        })?;
        mask.insert(v);
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell_is_k44() {
        let g = build_chimera(&ChimeraSpec::new(1, 1, 4)).unwrap();
        assert_eq!(g.n_active(), 8);
        assert_eq!(g.n_edges(), 16);
        assert!(g.active_vertices().all(|v| g.neighbors(v).len() == 4));
    }

    #[test]
    fn c4_has_352_edges() {
        let g = build_chimera(&ChimeraSpec::new(4, 4, 4)).unwrap();
        assert_eq!(g.n_active(), 128);
        assert_eq!(g.n_edges(), 352);
        assert_eq!(g.max_degree(), 6);
    }

    #[test]
    fn twenty_dead_qubits_leave_108() {
        let spec = ChimeraSpec::new(4, 4, 4).with_mask((0..128).step_by(6).take(20));
        let g = build_chimera(&spec).unwrap();
        assert_eq!(g.n_vertices(), 128);
        assert_eq!(g.n_active(), 108);
        for &(i, j) in g.edges() {
            assert!(!spec.mask.contains(&i) && !spec.mask.contains(&j));
        }
    }

    #[test]
    fn edge_count_formula_small_grids() {
        for rows in 1..=4 {
            for cols in 1..=4 {
                for shore in 1..=4 {
                    let spec = ChimeraSpec::new(rows, cols, shore);
                    let g = build_chimera(&spec).unwrap();
                    assert_eq!(g.n_edges(), spec.full_edge_count(), "{rows}x{cols}x{shore}");
                }
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let spec = ChimeraSpec::new(3, 2, 4);
        for v in 0..spec.n_vertices() {
            let (r, c, u, t) = spec.coords(v);
            assert_eq!(spec.vertex(r, c, u, t), v);
        }
    }

    #[test]
    fn inter_cell_edges_follow_sides() {
        let spec = ChimeraSpec::new(2, 2, 2);
        let g = build_chimera(&spec).unwrap();
        for &(i, j) in g.edges() {
            let (ri, ci, ui, ti) = spec.coords(i);
            let (rj, cj, uj, tj) = spec.coords(j);
            if (ri, ci) == (rj, cj) {
                assert_ne!(ui, uj);
            } else if ci == cj {
                assert_eq!((ui, uj, ti, rj), (0, 0, tj, ri + 1));
            } else {
                assert_eq!((ui, uj, ti, cj), (1, 1, tj, ci + 1));
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(build_chimera(&ChimeraSpec::new(0, 1, 4)).is_err());
        assert!(build_chimera(&ChimeraSpec::new(1, 1, 4).with_mask([8])).is_err());
    }

    #[test]
    fn graph_validation() {
        assert!(Graph::from_edges(3, vec![(0, 0)]).is_err());
        assert!(Graph::from_edges(3, vec![(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, vec![(0, 3)]).is_err());
        let g = Graph::from_edges(3, vec![(2, 0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2)]);
    }

    #[test]
    fn mask_parsing() {
        let m = parse_mask("# dead\n3\n\n17\n", "mask").unwrap();
        assert_eq!(m.into_iter().collect::<Vec<_>>(), vec![3, 17]);
        let err = parse_mask("3\nx\n", "mask").unwrap_err();
        assert!(err.to_string().contains("mask:2"));
    }
}
