//! Timed experiment harness.
//!
//! For every vertex count and repetition a fresh graph is generated (outside
//! the timed region) from a seed derived from `(base seed, n, rep)`. Every
//! selected variant then runs on that same graph and source, and only the
//! solver call itself is timed with a monotonic wall clock. By default one
//! untimed warm-up call precedes each timed call.

use std::hint::black_box;
use std::io::{Read, Write};
use std::time::Instant;

use rand::RngExt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{self, rng_from_seed, GenError, PlanarConfig, RandomConfig};
use crate::graph::{Graph, Neighbour, Vertex, Weight};
use crate::solver::{solve, SolveError, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology {
    Planar,
    Random,
}

impl std::fmt::Display for Topology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Topology::Planar => "planar",
            Topology::Random => "random",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourcePolicy {
    Fixed(Vertex),
    /// A fresh source per repetition, drawn from the repetition's seed.
    Random,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchPlan {
    pub topology: Topology,
    pub n_list: Vec<usize>,
    /// Arc probability; required for random graphs, rejected for planar.
    pub p: Option<f64>,
    pub reps: usize,
    pub seed: u64,
    pub variants: Vec<Variant>,
    pub source: SourcePolicy,
    pub side: f64,
    pub w_max: Weight,
    pub warmup: bool,
    /// Points whose estimated graph footprint exceeds this are skipped.
    pub memory_budget_bytes: u64,
}

impl BenchPlan {
    pub const DEFAULT_REPS: usize = 100;
    pub const DEFAULT_MEMORY_BUDGET: u64 = 3 << 30;

    pub fn new(topology: Topology, n_list: Vec<usize>) -> Self {
        BenchPlan {
            topology,
            n_list,
            p: None,
            reps: Self::DEFAULT_REPS,
            seed: 0,
            variants: Variant::ALL.to_vec(),
            source: SourcePolicy::Fixed(0),
            side: generators::DEFAULT_SIDE,
            w_max: generators::DEFAULT_MAX_WEIGHT,
            warmup: true,
            memory_budget_bytes: Self::DEFAULT_MEMORY_BUDGET,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let invalid = |msg: &str| Err(BenchError::InvalidPlan(msg.to_string()));
        if self.reps == 0 {
            return invalid("reps must be at least 1");
        }
        if self.n_list.is_empty() {
            return invalid("n_list must not be empty");
        }
        if self.n_list.windows(2).any(|w| w[0] > w[1]) {
            return invalid("n_list must be sorted ascending");
        }
        if self.variants.is_empty() {
            return invalid("at least one variant is required");
        }
        match (self.topology, self.p) {
            (Topology::Random, None) => return invalid("random topology requires p"),
            (Topology::Planar, Some(_)) => return invalid("p only applies to random topology"),
            _ => {}
        }
        let smallest = self.n_list[0];
        match self.topology {
            Topology::Planar => PlanarConfig {
                n: smallest,
                side: self.side,
                seed: 0,
            }
            .validate()?,
            Topology::Random => RandomConfig {
                n: smallest,
                p: self.p.unwrap_or(0.0),
                w_max: self.w_max,
                seed: 0,
            }
            .validate()?,
        }
        if smallest == 0 {
            return invalid("graphs need at least one vertex");
        }
        if let SourcePolicy::Fixed(s) = self.source {
            if s >= smallest {
                return invalid("fixed source must be below every n");
            }
        }
        Ok(())
    }
}

/// One timed solver execution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub topology: Topology,
    pub n: usize,
    pub m: usize,
    pub p: Option<f64>,
    pub seed: u64,
    pub variant: Variant,
    pub rep: usize,
    pub source: Vertex,
    pub elapsed_seconds: f64,
}

/// A `(n, rep)` point that was not run.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPoint {
    pub n: usize,
    pub rep: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    pub skipped: Vec<SkippedPoint>,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// SplitMix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of the graph generated for repetition `rep` at size `n`.
pub fn derive_seed(base: u64, n: usize, rep: usize) -> u64 {
    mix64(mix64(base ^ mix64(n as u64)).wrapping_add(rep as u64))
}

fn estimated_bytes(plan: &BenchPlan, n: usize) -> u64 {
    let arcs = match plan.topology {
        Topology::Planar => 6.0 * n as f64,
        Topology::Random => RandomConfig::new(n, plan.p.unwrap_or(0.0), 0).expected_arcs(),
    };
    // builder lists plus the frozen copy
    (2.0 * arcs * std::mem::size_of::<Neighbour>() as f64) as u64
}

/// Graph and source for one `(n, rep)` point.
pub fn instance(plan: &BenchPlan, n: usize, rep: usize) -> Result<(Graph, Vertex), BenchError> {
    let seed = derive_seed(plan.seed, n, rep);
    let graph = match plan.topology {
        Topology::Planar => generators::generate_planar(&PlanarConfig {
            n,
            side: plan.side,
            seed,
        })?,
        Topology::Random => generators::generate_random(&RandomConfig {
            n,
            p: plan.p.unwrap_or(0.0),
            w_max: plan.w_max,
            seed,
        })?,
    };
    let source = match plan.source {
        SourcePolicy::Fixed(s) => s,
        SourcePolicy::Random => rng_from_seed(mix64(seed)).random_range(0..n),
    };
    Ok((graph, source))
}

/// Runs the plan, calling `progress` after each record.
pub fn run_bench_with<F: FnMut(&BenchRecord)>(plan: &BenchPlan, mut progress: F) -> Result<BenchOutcome, BenchError> {
    plan.validate()?;
    let mut outcome = BenchOutcome::default();
    for &n in &plan.n_list {
        let bytes = estimated_bytes(plan, n);
        if bytes > plan.memory_budget_bytes {
            for rep in 0..plan.reps {
                outcome.skipped.push(SkippedPoint {
                    n,
                    rep,
                    reason: format!(
                        "estimated graph size {} MiB exceeds budget of {} MiB",
                        bytes >> 20,
                        plan.memory_budget_bytes >> 20
                    ),
                });
            }
            continue;
        }
        for rep in 0..plan.reps {
            let (graph, source) = instance(plan, n, rep)?;
            for &variant in &plan.variants {
                if plan.warmup {
                    black_box(solve(&graph, source, variant)?);
                }
                let start = Instant::now();
                let result = solve(black_box(&graph), black_box(source), variant);
                let elapsed = start.elapsed();
                black_box(result?);
                let record = BenchRecord {
                    topology: plan.topology,
                    n,
                    m: graph.arc_count(),
                    p: plan.p,
                    seed: plan.seed,
                    variant,
                    rep,
                    source,
                    elapsed_seconds: elapsed.as_secs_f64(),
                };
                progress(&record);
                outcome.records.push(record);
            }
        }
    }
    Ok(outcome)
}

pub fn run_bench(plan: &BenchPlan) -> Result<BenchOutcome, BenchError> {
    run_bench_with(plan, |_| {})
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub variant: Variant,
    pub n: usize,
    pub count: usize,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for a single record.
    pub stddev: f64,
}

/// Mean and sample standard deviation of elapsed time per `(variant, n)`,
/// in order of first appearance. Uses Welford's running update.
pub fn summarize(records: &[BenchRecord]) -> Vec<Summary> {
    struct Acc {
        variant: Variant,
        n: usize,
        count: usize,
        mean: f64,
        m2: f64,
    }
    let mut groups: Vec<Acc> = Vec::new();
    for r in records {
        let idx = match groups.iter().position(|g| g.variant == r.variant && g.n == r.n) {
            Some(i) => i,
            None => {
                groups.push(Acc {
                    variant: r.variant,
                    n: r.n,
                    count: 0,
                    mean: 0.0,
                    m2: 0.0,
                });
                groups.len() - 1
            }
        };
        let g = &mut groups[idx];
        g.count += 1;
        let delta = r.elapsed_seconds - g.mean;
        g.mean += delta / g.count as f64;
        g.m2 += delta * (r.elapsed_seconds - g.mean);
    }
    groups
        .into_iter()
        .map(|g| Summary {
            variant: g.variant,
            n: g.n,
            count: g.count,
            mean: g.mean,
            stddev: if g.count > 1 {
                (g.m2 / (g.count - 1) as f64).sqrt()
            } else {
                0.0
            },
        })
        .collect()
}

/// Fixed-width table of summaries, one row per group.
pub fn format_summary(summaries: &[Summary]) -> String {
    let mut out = format!("{:<8} {:>10} {:>6} {:>14} {:>14}\n", "variant", "n", "runs", "mean_s", "stddev_s");
    for s in summaries {
        out.push_str(&format!(
            "{:<8} {:>10} {:>6} {:>14.6e} {:>14.6e}\n",
            s.variant.name(),
            s.n,
            s.count,
            s.mean,
            s.stddev
        ));
    }
    out
}

/// Writes records as CSV with header
/// `topology,n,m,p,seed,variant,rep,source,elapsed_seconds`.
pub fn write_csv<W: Write>(records: &[BenchRecord], writer: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(true).from_writer(writer);
    if records.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub const CSV_HEADER: [&str; 9] = [
    "topology",
    "n",
    "m",
    "p",
    "seed",
    "variant",
    "rep",
    "source",
    "elapsed_seconds",
];

pub fn read_csv<R: Read>(reader: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(BenchError::InvalidPlan(format!("unexpected CSV header {header:?}")));
    }
    r.deserialize().map(|rec| rec.map_err(BenchError::from)).collect()
}
