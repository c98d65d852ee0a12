//! Single-source shortest paths with Dijkstra's algorithm over four
//! priority-queue strategies: a linear-scan candidate list, a balanced
//! ordered set, a binary heap with lazy deletion and a Fibonacci heap.
//!
//! The crate also provides seeded generators for Delaunay planar graphs and
//! G(n, p) random digraphs, a benchmark harness, and a Bellman-Ford oracle.
//!
//! ```
//! use sssp::graph::GraphBuilder;
//! use sssp::solver::{solve, Variant};
//!
//! let mut b = GraphBuilder::new(3);
//! b.add_arc(0, 1, 4).unwrap();
//! b.add_arc(1, 2, 6).unwrap();
//! let g = b.build();
//! let r = solve(&g, 0, Variant::Fib).unwrap();
//! assert_eq!(r.labels[2].value(), Some(10));
//! assert_eq!(r.path_to(2), [0, 1, 2]);
//! ```

pub mod bench;
pub mod cli;
pub mod fibheap;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod solver;

pub use fibheap::FibHeap;
pub use graph::{Graph, GraphBuilder, Label, Neighbour, Vertex, Weight};
pub use solver::{ShortestPathResult, Variant};
