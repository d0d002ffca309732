use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittgraph::graph::{build_edge_matrix, symmetrize, OrientedGraph};
use wittgraph::linalg::trace_powers;
use wittgraph::oracle::CycleOracle;
use wittgraph::report::build_report;
use wittgraph::witt::OmegaTable;

fn random_graph(rng: &mut ChaCha8Rng) -> OrientedGraph {
    let vertices = rng.gen_range(1..=4);
    let edges = (0..rng.gen_range(1..=4))
        .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
        .collect();
    OrientedGraph::new(vertices, edges).unwrap()
}

fn traces(g: &OrientedGraph, k: usize) -> Vec<BigInt> {
    trace_powers(&build_edge_matrix(&symmetrize(g)).into_matrix(), k).unwrap()
}

#[test]
fn enumeration_agrees_with_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..40 {
        let g = random_graph(&mut rng);
        let sg = symmetrize(&g);
        let oracle = CycleOracle::new(&sg);
        let tr = traces(&g, 6);
        let om = OmegaTable::from_traces(&tr, 6).unwrap().omegas();
        for n in 1..=6u64 {
            let cycles = oracle.enumerate_cycles(n).unwrap().count();
            assert_eq!(BigInt::from(cycles), tr[n as usize - 1], "{g:?} N={n}");
            let classes = oracle.count_nonperiodic_classes(n).unwrap();
            assert_eq!(BigInt::from(classes), om[n as usize - 1], "{g:?} N={n}");
        }
    }
}

#[test]
fn reports_are_internally_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let g = random_graph(&mut rng);
        build_report(&g, 10).unwrap_or_else(|e| panic!("{g:?}: {e}"));
    }
}

#[test]
fn traces_ignore_edge_order_and_orientation() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..30 {
        let g = random_graph(&mut rng);
        let mut edges = g.edges().to_vec();
        edges.shuffle(&mut rng);
        for e in edges.iter_mut() {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
        let h = OrientedGraph::new(g.vertex_count(), edges).unwrap();
        assert_eq!(traces(&g, 8), traces(&h, 8), "{g:?} vs {h:?}");
    }
}
