//! Reference graphs used throughout the test suite and shipped under
//! `data/corpus/` by the `corpus` subcommand.

use crate::graph::OrientedGraph;

/// `R` loops hooked to a single vertex.
pub fn g1(r: usize) -> OrientedGraph {
    OrientedGraph::new(1, vec![(0, 0); r]).expect("r >= 1")
}

/// Two vertices joined by three parallel edges `0 -> 1`.
pub fn g2() -> OrientedGraph {
    OrientedGraph::new(2, vec![(0, 1); 3]).expect("valid")
}

/// One loop on one vertex.
pub fn single_loop() -> OrientedGraph {
    g1(1)
}

/// Path `0 - 1 - 2` with a loop at each end.
pub fn path_loop() -> OrientedGraph {
    OrientedGraph::new(3, vec![(0, 1), (1, 2), (2, 2), (0, 0)]).expect("valid")
}

/// Every corpus graph with its file stem, in a fixed order.
pub fn all() -> Vec<(&'static str, OrientedGraph)> {
    vec![
        ("g1_r2", g1(2)),
        ("g1_r3", g1(3)),
        ("g1_r4", g1(4)),
        ("g1_r5", g1(5)),
        ("g2", g2()),
        ("single_loop", single_loop()),
        ("path_loop", path_loop()),
    ]
}
