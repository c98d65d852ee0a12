//! Seeded generators for the two benchmark topologies.
//!
//! Both generators draw from `Xoshiro256PlusPlus` (from `rand_xoshiro`),
//! seeded through SplitMix64 via `SeedableRng::seed_from_u64`:
//!
//! ```text
//! seed:   z = (state += 0x9e3779b97f4a7c15)
//!         z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//!         z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//!         z ^ (z >> 31)
//! output: rotl(s0 + s3, 23) + s0
//! ```
//!
//! Uniform floats and bounded integers come from `rand` 0.10's
//! `random::<f64>()` and `random_range`, so a given seed reproduces the same
//! graph on every platform for a fixed dependency set.

pub mod delaunay;

use rand::{RngExt, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use std::collections::HashSet;
use thiserror::Error;

use crate::graph::{Graph, GraphBuilder, Weight};
pub use delaunay::{triangulate, Point};

/// Named generator behind every seeded routine in this crate.
pub type GraphRng = Xoshiro256PlusPlus;

pub fn rng_from_seed(seed: u64) -> GraphRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("planar graphs need at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("square side must be positive and finite, got {0}")]
    InvalidSide(f64),
    #[error("arc probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("maximum weight must be at least 1")]
    InvalidMaxWeight,
}

pub const DEFAULT_SIDE: f64 = 10_000.0;
pub const DEFAULT_MAX_WEIGHT: Weight = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarConfig {
    pub n: usize,
    pub side: f64,
    pub seed: u64,
}

impl PlanarConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        PlanarConfig {
            n,
            side: DEFAULT_SIDE,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if self.n < 3 {
            return Err(GenError::TooFewVertices(self.n));
        }
        if !(self.side.is_finite() && self.side > 0.0) {
            return Err(GenError::InvalidSide(self.side));
        }
        Ok(())
    }

    /// Provenance line for graph files.
    pub fn describe(&self) -> String {
        format!(
            "generator: topology=planar n={} side={} seed={}",
            self.n, self.side, self.seed
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomConfig {
    pub n: usize,
    pub p: f64,
    pub w_max: Weight,
    pub seed: u64,
}

impl RandomConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Self {
        RandomConfig {
            n,
            p,
            w_max: DEFAULT_MAX_WEIGHT,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), GenError> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(GenError::InvalidProbability(self.p));
        }
        if self.w_max < 1 {
            return Err(GenError::InvalidMaxWeight);
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        format!(
            "generator: topology=random n={} p={} wmax={} seed={}",
            self.n, self.p, self.w_max, self.seed
        )
    }

    /// Expected arc count `p * n * (n - 1)`.
    pub fn expected_arcs(&self) -> f64 {
        let n = self.n as f64;
        self.p * n * (n - 1.0)
    }
}

/// A planar graph together with the geometry it was built from.
#[derive(Debug, Clone)]
pub struct PlanarInstance {
    pub points: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub graph: Graph,
}

/// `n` distinct points uniform in `[0, side)^2`. A point that repeats an
/// earlier one is redrawn.
pub fn sample_points(cfg: &PlanarConfig) -> Vec<Point> {
    let mut rng = rng_from_seed(cfg.seed);
    let mut seen = HashSet::with_capacity(cfg.n);
    let mut points = Vec::with_capacity(cfg.n);
    while points.len() < cfg.n {
        let x = rng.random::<f64>() * cfg.side;
        let y = rng.random::<f64>() * cfg.side;
        if seen.insert((x.to_bits(), y.to_bits())) {
            points.push(Point::new(x, y));
        }
    }
    points
}

/// Rounded Euclidean length, never below 1.
pub fn euclidean_weight(a: Point, b: Point) -> Weight {
    (a.distance(b).round() as Weight).max(1)
}

pub fn generate_planar_instance(cfg: &PlanarConfig) -> Result<PlanarInstance, GenError> {
    cfg.validate()?;
    let points = sample_points(cfg);
    let triangles = triangulate(&points);

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(3 * triangles.len());
    for t in &triangles {
        for i in 0..3 {
            let (a, b) = (t[i], t[(i + 1) % 3]);
            edges.push((a.min(b), a.max(b)));
        }
    }
    edges.sort_unstable();
    edges.dedup();

    let mut builder = GraphBuilder::new(cfg.n);
    for &(u, v) in &edges {
        builder
            .add_edge(u, v, euclidean_weight(points[u], points[v]))
            .expect("triangle vertices are in range");
    }
    Ok(PlanarInstance {
        points,
        triangles,
        graph: builder.build(),
    })
}

/// Delaunay-triangulation graph: every triangulation edge becomes two
/// opposite arcs weighted by rounded Euclidean distance.
pub fn generate_planar(cfg: &PlanarConfig) -> Result<Graph, GenError> {
    generate_planar_instance(cfg).map(|inst| inst.graph)
}

/// G(n, p) digraph: each ordered pair `(u, v)`, `u != v`, visited row-major,
/// becomes an arc with probability `p` and weight uniform on `1..=w_max`.
pub fn generate_random(cfg: &RandomConfig) -> Result<Graph, GenError> {
    cfg.validate()?;
    let mut rng = rng_from_seed(cfg.seed);
    let mut builder = GraphBuilder::new(cfg.n);
    let row_hint = (cfg.p * cfg.n as f64).ceil() as usize;
    for u in 0..cfg.n {
        builder.reserve_arcs(u, row_hint);
        for v in 0..cfg.n {
            if u == v {
                continue;
            }
            if rng.random_bool(cfg.p) {
                let w = rng.random_range(1..=cfg.w_max);
                builder.add_arc(u, v, w).expect("indices in range");
            }
        }
    }
    Ok(builder.build())
}
