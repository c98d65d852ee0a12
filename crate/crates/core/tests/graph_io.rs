use proptest::prelude::*;
use sssp::generators::{generate_planar, PlanarConfig};
use sssp::graph::{read_graph, write_graph, Graph, GraphBuilder, ParseError};

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 0u64..1_000_000), 0..120).prop_map(move |arcs| {
            let mut b = GraphBuilder::new(n);
            for (u, v, w) in arcs {
                b.add_arc(u, v, w).unwrap();
            }
            b.build()
        })
    })
}

fn arc_list(g: &Graph) -> Vec<(usize, usize, u64)> {
    g.arcs().collect()
}

fn round_trip(g: &Graph) -> Graph {
    let mut buf = Vec::new();
    write_graph(g, &mut buf).unwrap();
    read_graph(buf.as_slice()).unwrap()
}

proptest! {
    #[test]
    fn write_then_read_preserves_arcs(g in arb_graph()) {
        let back = round_trip(&g);
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(arc_list(&back), arc_list(&g));
    }

    #[test]
    fn add_edge_is_symmetric(n in 2usize..20, edges in prop::collection::vec((0usize..20, 0usize..20, 1u64..100), 0..40)) {
        let mut b = GraphBuilder::new(n);
        for (u, v, w) in edges {
            if u < n && v < n {
                b.add_edge(u, v, w).unwrap();
            }
        }
        let g = b.build();
        prop_assert!(g.is_symmetric());
        prop_assert_eq!(g.arc_count() % 2, 0);
    }
}

#[test]
fn planar_graph_survives_file_round_trip() {
    let g = generate_planar(&PlanarConfig::new(500, 3)).unwrap();
    assert_eq!(arc_list(&round_trip(&g)), arc_list(&g));
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "c header\n\np sp 3 2\nc middle\na 0 1 5\na 1 2 7\n";
    let g = read_graph(text.as_bytes()).unwrap();
    assert_eq!(arc_list(&g), [(0, 1, 5), (1, 2, 7)]);
}

#[test]
fn arc_count_mismatch_is_rejected() {
    let err = read_graph("p sp 3 2\na 0 1 5\n".as_bytes()).unwrap_err();
    assert!(matches!(err, ParseError::ArcCountMismatch { .. }), "{err:?}");
}

#[test]
fn negative_weight_is_rejected() {
    assert!(read_graph("p sp 2 1\na 0 1 -4\n".as_bytes()).is_err());
}

#[test]
fn out_of_range_vertex_is_rejected() {
    assert!(read_graph("p sp 2 1\na 0 2 4\n".as_bytes()).is_err());
}
