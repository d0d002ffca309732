//! Aggregated per-graph results: the `report`, `oracle`, `necklace` and
//! `classical` documents. Big integers serialize as decimal strings.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WittError};
use crate::graph::{build_edge_matrix, symmetrize, OrientedGraph};
use crate::linalg::{det_poly_direct, det_poly_from_traces, trace_powers};
use crate::oracle::CycleOracle;
use crate::series::{series_inverse, TruncSeries};
use crate::witt::{classical_witt, envelope_dims, generalized_witt_dim, OmegaTable, TSequence};

pub const NOT_CONNECTED_WARNING: &str = "graph is not connected; counts are summed over components";

pub fn to_strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub oriented_edges: usize,
    pub connected: bool,
}

impl GraphSummary {
    pub fn of(g: &OrientedGraph) -> Self {
        GraphSummary {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            oriented_edges: g.oriented_edge_count(),
            connected: g.is_connected(),
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        if self.connected {
            Vec::new()
        } else {
            vec![NOT_CONNECTED_WARNING.to_string()]
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieDimensions {
    /// `Dim L_N` for `N = 1..=K`.
    pub dim_l: Vec<String>,
    /// `Dim U(L)_n` for `n = 1..=K`.
    pub dim_u: Vec<String>,
}

/// Everything computed for one graph up to order `K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub graph: GraphSummary,
    pub warnings: Vec<String>,
    pub order: u64,
    /// `Tr T^N`, `N = 1..=K`.
    pub traces: Vec<String>,
    /// `Ω(N, T)`, `N = 1..=K`.
    pub omega: Vec<String>,
    /// `a_0..a_d` of `det(1 - zT)`.
    pub det_poly: Vec<String>,
    /// `c_+(i)`, `i = 1..=K`.
    pub c_plus: Vec<String>,
    /// Coefficients `1, c_-(1), .., c_-(K)` of the zeta series.
    pub zeta: Vec<String>,
    pub lie: LieDimensions,
}

fn inconsistent(what: &str) -> WittError {
    WittError::Precondition(format!("internal consistency check failed: {what}"))
}

/// Builds the full report; internal cross-checks failing is an error.
pub fn build_report(g: &OrientedGraph, order: u64) -> Result<ReportDocument> {
    if order == 0 {
        return Err(WittError::ZeroArgument("order"));
    }
    let t = build_edge_matrix(&symmetrize(g)).into_matrix();
    let dim = t.dim();
    let traces = trace_powers(&t, (order as usize).max(dim))?;

    let det = det_poly_direct(&t)?;
    if det != det_poly_from_traces(&traces, dim)? {
        return Err(inconsistent("determinant routes disagree"));
    }
    let table = OmegaTable::from_traces(&traces, order)?;
    table.check_invariants()?;

    let k = order as usize;
    let zeta = series_inverse(&TruncSeries::from_ints(det.coeffs(), k))?
        .to_integers()
        .ok_or_else(|| inconsistent("zeta series is not integral"))?;

    let t_seq = TSequence::new(det.c_plus(dim));
    let dim_l = (1..=order)
        .map(|n| generalized_witt_dim(&t_seq, n))
        .collect::<Result<Vec<_>>>()?;
    if dim_l != table.omegas() {
        return Err(inconsistent("Dim L_N differs from Ω(N)"));
    }
    let dim_u = envelope_dims(&t_seq, order)?;
    if dim_u[..] != zeta[1..] {
        return Err(inconsistent("Dim U_n differs from the zeta coefficients"));
    }

    let graph = GraphSummary::of(g);
    Ok(ReportDocument {
        warnings: graph.warnings(),
        graph,
        order,
        traces: to_strings(&table.traces()),
        omega: to_strings(&table.omegas()),
        det_poly: to_strings(det.coeffs()),
        c_plus: to_strings(&det.c_plus(k)),
        zeta: to_strings(&zeta),
        lie: LieDimensions {
            dim_l: to_strings(&dim_l),
            dim_u: to_strings(&dim_u),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub n: u64,
    pub trace: String,
    pub cycles: String,
    pub omega: String,
    pub nonperiodic_classes: String,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub graph: GraphSummary,
    pub warnings: Vec<String>,
    pub rows: Vec<OracleRow>,
    pub all_match: bool,
}

/// Formula versus enumeration for `N = 1..=n_max`.
pub fn oracle_comparison(g: &OrientedGraph, n_max: u64, cap: u64) -> Result<OracleDocument> {
    if n_max == 0 {
        return Err(WittError::ZeroArgument("n_max"));
    }
    let sg = symmetrize(g);
    let oracle = CycleOracle::with_cap(&sg, cap);
    // Validate the cap before doing any work.
    oracle.enumerate_cycles(n_max)?;
    let t = build_edge_matrix(&sg).into_matrix();
    let traces = trace_powers(&t, n_max as usize)?;
    let table = OmegaTable::from_traces(&traces, n_max)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    for row in table.rows() {
        let cycles = BigInt::from(oracle.enumerate_cycles(row.n)?.count());
        let classes = BigInt::from(oracle.count_nonperiodic_classes(row.n)?);
        rows.push(OracleRow {
            n: row.n,
            matches: cycles == row.trace && classes == row.omega,
            trace: row.trace.to_string(),
            cycles: cycles.to_string(),
            omega: row.omega.to_string(),
            nonperiodic_classes: classes.to_string(),
        });
    }
    let graph = GraphSummary::of(g);
    Ok(OracleDocument {
        warnings: graph.warnings(),
        all_match: rows.iter().all(|r| r.matches),
        graph,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceDocument {
    pub n: u64,
    pub count: usize,
    pub words: Vec<String>,
}

pub fn necklace_words(g: &OrientedGraph, n: u64, cap: u64) -> Result<NecklaceDocument> {
    let sg = symmetrize(g);
    let words: Vec<String> = CycleOracle::with_cap(&sg, cap)
        .necklace_classes(n)?
        .iter()
        .map(|c| c.word())
        .collect();
    Ok(NecklaceDocument {
        n,
        count: words.len(),
        words,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalDocument {
    pub r: i64,
    /// `M(N; R)` for `N = 1..=n_max`.
    pub values: Vec<String>,
}

pub fn classical_table(n_max: u64, r: i64) -> Result<ClassicalDocument> {
    if r < 0 {
        return Err(WittError::Precondition(format!("R = {r} must be nonnegative")));
    }
    let values = (1..=n_max).map(|n| classical_witt(n, r)).collect::<Result<Vec<_>>>()?;
    Ok(ClassicalDocument {
        r,
        values: to_strings(&values),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn g1_r2_report() {
        let doc = build_report(&corpus::g1(2), 4).unwrap();
        assert_eq!(doc.omega, ["4", "4", "8", "18"]);
        assert_eq!(doc.traces, ["4", "12", "28", "84"]);
        assert_eq!(doc.det_poly, ["1", "-4", "2", "4", "-3"]);
        assert_eq!(doc.lie.dim_u, ["4", "14", "44", "135"]);
        assert!(doc.warnings.is_empty());
    }

    #[test]
    fn g2_report() {
        let doc = build_report(&corpus::g2(), 6).unwrap();
        assert_eq!(doc.det_poly, ["1", "0", "-6", "0", "9", "0", "-4"]);
        assert_eq!(doc.zeta, ["1", "0", "6", "0", "27", "0", "112"]);
    }

    #[test]
    fn smallest_graph_report() {
        let doc = build_report(&corpus::single_loop(), 5).unwrap();
        assert_eq!(doc.det_poly, ["1", "-2", "1"]);
        assert_eq!(doc.zeta, ["1", "2", "3", "4", "5", "6"]);
    }

    #[test]
    fn disconnected_graph_warns() {
        let g = OrientedGraph::new(2, vec![(0, 0), (1, 1)]).unwrap();
        let doc = oracle_comparison(&g, 4, 8).unwrap();
        assert_eq!(doc.warnings, [NOT_CONNECTED_WARNING]);
        assert!(doc.all_match);
    }

    #[test]
    fn classical_rows() {
        assert_eq!(classical_table(6, 2).unwrap().values, ["2", "1", "2", "3", "6", "9"]);
        assert_eq!(classical_table(4, 1).unwrap().values, ["1", "0", "0", "0"]);
        assert_eq!(classical_table(3, 0).unwrap().values, ["0", "0", "0"]);
        assert!(classical_table(3, -1).is_err());
    }

    #[test]
    fn necklaces_with_no_classes() {
        let doc = necklace_words(&corpus::g2(), 3, 10).unwrap();
        assert_eq!(doc.count, 0);
        assert!(doc.words.is_empty());
    }
}
