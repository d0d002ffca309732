//! Exhaustive enumeration of non-backtracking, tail-less closed paths in `G*`.
//!
//! Successor lists are built from vertex incidence in the symmetrized graph,
//! not from the edge matrix, so counts here are an independent check on
//! `Tr T^N` and on `Ω(N, T)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Result, WittError};
use crate::graph::SymmetrizedGraph;

/// Longest cycle length the oracle will enumerate by default.
pub const DEFAULT_ORACLE_CAP: u64 = 10;

/// A closed path, as a sequence of oriented edge indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    edges: Vec<usize>,
}

impl Cycle {
    /// Checks the cycle conditions against `sg` and wraps the sequence.
    pub fn new(sg: &SymmetrizedGraph, edges: Vec<usize>) -> Result<Self> {
        let c = Cycle { edges };
        if c.edges.is_empty() {
            return Err(WittError::ZeroArgument("cycle length"));
        }
        if let Some(e) = c.edges.iter().find(|&&e| e >= sg.oriented_edge_count()) {
            return Err(WittError::Precondition(format!("edge index {e} out of range")));
        }
        if !c.is_valid(sg) {
            return Err(WittError::Precondition(format!("{c} is not a cycle")));
        }
        Ok(c)
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Consecutive incidence, non-backtracking between neighbours, closure and
    /// the tail-less condition at the seam.
    pub fn is_valid(&self, sg: &SymmetrizedGraph) -> bool {
        let e = &self.edges;
        let n = e.len();
        let inner = e
            .windows(2)
            .all(|w| sg.end(w[0]) == sg.origin(w[1]) && w[1] != sg.inverse(w[0]));
        inner && sg.end(e[n - 1]) == sg.origin(e[0]) && is_tailless(sg, e)
    }

    /// Rotation by `k` steps: `(e_k, .., e_{N-1}, e_0, .., e_{k-1})`.
    pub fn rotated(&self, k: usize) -> Cycle {
        let mut edges = self.edges.clone();
        edges.rotate_left(k % self.edges.len());
        Cycle { edges }
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> Cycle {
        (0..self.len()).map(|k| self.rotated(k)).min().expect("non-empty cycle")
    }

    /// Number of distinct rotations: the least `d | N` with `rotated(d) == self`.
    pub fn distinct_rotations(&self) -> usize {
        let n = self.len();
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| self.edges[d..].iter().chain(&self.edges[..d]).eq(self.edges.iter()))
            .unwrap_or(n)
    }

    /// `r` in `p = q^r`; 1 for non-periodic cycles.
    pub fn period(&self) -> usize {
        self.len() / self.distinct_rotations()
    }

    pub fn is_periodic(&self) -> bool {
        self.period() > 1
    }
}

fn is_tailless(sg: &SymmetrizedGraph, e: &[usize]) -> bool {
    e[0] != sg.inverse(e[e.len() - 1])
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|e| format!("e{e}")).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// A rotation-equivalence class of cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    pub representative: Cycle,
    /// Distinct rotations, `N / period`.
    pub size: usize,
    pub period: usize,
    /// Members of the class present in the input stream.
    pub observed: usize,
}

impl CycleClass {
    pub fn is_periodic(&self) -> bool {
        self.period > 1
    }
}

/// A necklace coloring induced by a non-periodic cycle class: edge `i` gets
/// color `c_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NecklaceClass {
    /// 1-based color indices, read off the class representative.
    pub colors: Vec<usize>,
}

impl NecklaceClass {
    pub fn word(&self) -> String {
        self.colors
            .iter()
            .map(|c| format!("c{c}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Depth-first cycle stream in lexicographic order.
#[derive(Debug, Clone)]
pub struct CycleIter<'a> {
    sg: &'a SymmetrizedGraph,
    successors: Vec<Vec<usize>>,
    roots: Vec<usize>,
    len: usize,
    path: Vec<usize>,
    cursor: Vec<usize>,
}

impl Iterator for CycleIter<'_> {
    type Item = Cycle;

    fn next(&mut self) -> Option<Cycle> {
        loop {
            let depth = self.path.len();
            if depth == self.len {
                let first = self.path[0];
                let last = self.path[depth - 1];
                let closes = self.sg.end(last) == self.sg.origin(first) && is_tailless(self.sg, &self.path);
                let out = closes.then(|| Cycle {
                    edges: self.path.clone(),
                });
                self.path.pop();
                if out.is_some() {
                    return out;
                }
                continue;
            }
            let options = if depth == 0 {
                &self.roots
            } else {
                &self.successors[self.path[depth - 1]]
            };
            if self.cursor.len() <= depth {
                self.cursor.push(0);
            }
            if let Some(&e) = options.get(self.cursor[depth]) {
                self.cursor[depth] += 1;
                self.path.push(e);
            } else {
                self.cursor.truncate(depth);
                if depth == 0 {
                    return None;
                }
                self.path.pop();
            }
        }
    }
}

/// Brute-force cycle oracle over one symmetrized graph.
#[derive(Debug, Clone)]
pub struct CycleOracle<'a> {
    sg: &'a SymmetrizedGraph,
    max_len: u64,
}

impl<'a> CycleOracle<'a> {
    pub fn new(sg: &'a SymmetrizedGraph) -> Self {
        Self::with_cap(sg, DEFAULT_ORACLE_CAP)
    }

    pub fn with_cap(sg: &'a SymmetrizedGraph, max_len: u64) -> Self {
        CycleOracle { sg, max_len }
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(WittError::ZeroArgument("cycle length"));
        }
        if n > self.max_len {
            return Err(WittError::CapExceeded {
                what: "cycle length",
                value: n as usize,
                limit: self.max_len as usize,
            });
        }
        Ok(())
    }

    /// Every cycle of length `n`, each once, in lexicographic order.
    pub fn enumerate_cycles(&self, n: u64) -> Result<CycleIter<'a>> {
        self.check(n)?;
        let sg = self.sg;
        let m = sg.oriented_edge_count();
        let successors = (0..m)
            .map(|i| {
                let inv = sg.inverse(i);
                sg.out_edges(sg.end(i)).into_iter().filter(|&j| j != inv).collect()
            })
            .collect();
        Ok(CycleIter {
            sg,
            successors,
            roots: (0..m).collect(),
            len: n as usize,
            path: Vec::with_capacity(n as usize),
            cursor: Vec::with_capacity(n as usize),
        })
    }

    pub fn rotation_classes(&self, n: u64) -> Result<Vec<CycleClass>> {
        Ok(rotation_classes(self.enumerate_cycles(n)?))
    }

    /// Counts classes of non-periodic cycles by counting their canonical
    /// representatives, without materializing the classes.
    pub fn count_nonperiodic_classes(&self, n: u64) -> Result<u64> {
        Ok(self
            .enumerate_cycles(n)?
            .filter(|c| !c.is_periodic() && c.canonical() == *c)
            .count() as u64)
    }

    pub fn necklace_classes(&self, n: u64) -> Result<Vec<NecklaceClass>> {
        Ok(self
            .enumerate_cycles(n)?
            .filter(|c| !c.is_periodic() && c.canonical() == *c)
            .map(|c| NecklaceClass {
                colors: c.edges.iter().map(|e| e + 1).collect(),
            })
            .collect())
    }
}

/// Groups cycles into rotation classes, ordered by representative. Inverse
/// cycles stay in separate classes.
pub fn rotation_classes(cycles: impl IntoIterator<Item = Cycle>) -> Vec<CycleClass> {
    let mut groups: BTreeMap<Cycle, usize> = BTreeMap::new();
    for c in cycles {
        *groups.entry(c.canonical()).or_default() += 1;
    }
    groups
        .into_iter()
        .map(|(rep, observed)| {
            let size = rep.distinct_rotations();
            CycleClass {
                period: rep.len() / size,
                size,
                observed,
                representative: rep,
            }
        })
        .collect()
}
