//! Oriented graphs, their symmetrization `G*` and the edge adjacency matrix.
//!
//! Oriented edge `i < |E|` is the input edge `i`; edge `i + |E|` is its
//! formal inverse. Loops and parallel edges are allowed.

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::linalg::IntMatrix;

/// Default upper bound on `2|E|`.
pub const DEFAULT_MAX_ORIENTED_EDGES: usize = 64;

/// A finite oriented graph: vertex count plus an ordered edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// On-disk graph format: `{"vertices": n, "edges": [[u, v], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl OrientedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(WittError::InvalidGraph("vertex count must be positive".into()));
        }
        if edges.is_empty() {
            return Err(WittError::InvalidGraph("graph must have at least one edge".into()));
        }
        if let Some((i, &(u, v))) = edges
            .iter()
            .enumerate()
            .find(|(_, &(u, v))| u >= vertex_count || v >= vertex_count)
        {
            return Err(WittError::InvalidGraph(format!(
                "edge {i} = ({u}, {v}) references a vertex >= {vertex_count}"
            )));
        }
        Ok(OrientedGraph { vertex_count, edges })
    }

    pub fn from_json_str(s: &str) -> std::result::Result<Self, GraphParseError> {
        let file: GraphFile = serde_json::from_str(s)?;
        Ok(Self::try_from(file)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn oriented_edge_count(&self) -> usize {
        2 * self.edges.len()
    }

    /// Errors if `2|E|` exceeds `max_oriented_edges`.
    pub fn check_size(&self, max_oriented_edges: usize) -> Result<()> {
        let n = self.oriented_edge_count();
        if n > max_oriented_edges {
            return Err(WittError::CapExceeded {
                what: "oriented edge count",
                value: n,
                limit: max_oriented_edges,
            });
        }
        Ok(())
    }

    /// Whether the underlying undirected graph is connected.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.vertex_count;
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
        components == 1
    }

    /// Relabels vertices by `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.vertex_count {
            return Err(WittError::DimensionMismatch {
                left: self.vertex_count,
                right: perm.len(),
            });
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Self::new(self.vertex_count, edges)
    }
}

/// Free-function form of [`OrientedGraph::is_connected`].
pub fn check_connected(g: &OrientedGraph) -> bool {
    g.is_connected()
}

impl TryFrom<GraphFile> for OrientedGraph {
    type Error = WittError;

    fn try_from(f: GraphFile) -> Result<Self> {
        OrientedGraph::new(f.vertices, f.edges.into_iter().map(|[u, v]| (u, v)).collect())
    }
}

impl From<&OrientedGraph> for GraphFile {
    fn from(g: &OrientedGraph) -> Self {
        GraphFile {
            vertices: g.vertex_count,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GraphParseError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] WittError),
}

/// `G*`: the base graph plus one formal inverse per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetrizedGraph {
    base: OrientedGraph,
}

/// Builds `G*` from `g`.
pub fn symmetrize(g: &OrientedGraph) -> SymmetrizedGraph {
    SymmetrizedGraph { base: g.clone() }
}

impl SymmetrizedGraph {
    pub fn base(&self) -> &OrientedGraph {
        &self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count
    }

    pub fn oriented_edge_count(&self) -> usize {
        self.base.oriented_edge_count()
    }

    pub fn inverse(&self, i: usize) -> usize {
        let m = self.base.edge_count();
        (i + m) % (2 * m)
    }

    pub fn origin(&self, i: usize) -> usize {
        let m = self.base.edge_count();
        if i < m {
            self.base.edges[i].0
        } else {
            self.base.edges[i - m].1
        }
    }

    pub fn end(&self, i: usize) -> usize {
        self.origin(self.inverse(i))
    }

    /// Oriented edges leaving `v`, ascending.
    pub fn out_edges(&self, v: usize) -> Vec<usize> {
        (0..self.oriented_edge_count())
            .filter(|&i| self.origin(i) == v)
            .collect()
    }
}

/// The `2|E| × 2|E|` non-backtracking edge adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMatrix {
    matrix: IntMatrix,
}

/// `T[i][j] = 1` iff `end(i) = origin(j)` and `j` is not the inverse of `i`.
pub fn build_edge_matrix(sg: &SymmetrizedGraph) -> EdgeMatrix {
    let n = sg.oriented_edge_count();
    let mut matrix = IntMatrix::zeros(n).expect("graph has at least one edge");
    for i in 0..n {
        let end = sg.end(i);
        let inv = sg.inverse(i);
        for j in 0..n {
            if j != inv && sg.origin(j) == end {
                matrix.set(i, j, BigInt::one());
            }
        }
    }
    EdgeMatrix { matrix }
}

impl EdgeMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn allows(&self, i: usize, j: usize) -> bool {
        self.matrix.get(i, j).is_one()
    }

    pub fn as_matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.allows(i, j) as u8).collect())
            .collect()
    }
}
