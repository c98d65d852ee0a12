//! Reference checks shared by the unit, property and acceptance tests.
//!
//! [`heap_oracle_check`] replays a heap operation trace against both
//! [`FibHeap`] and a sorted-set reference queue. [`solver_agreement_check`]
//! runs every Dijkstra variant plus Bellman-Ford on one graph and verifies
//! labels, predecessors and reconstructed paths.

use std::collections::BTreeSet;

use rand::RngExt;

use crate::fibheap::FibHeap;
use crate::generators::rng_from_seed;
use crate::graph::{Graph, Label, Vertex};
use crate::solver::{bellman_ford, path_weight, solve, ShortestPathResult, Variant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeapOp {
    Insert { vertex: Vertex, key: u64 },
    Decrease { vertex: Vertex, key: u64 },
    Extract,
}

/// A sequence of heap operations over the vertex universe `0..universe`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpTrace {
    pub universe: usize,
    pub ops: Vec<HeapOp>,
}

impl OpTrace {
    /// Seeded trace of up to `max_len` operations, weighted towards
    /// decrease-key (roughly 50% decreases, 25% inserts, 25% extracts).
    ///
    /// Half the seeds draw keys from a narrow range so equal keys are
    /// common. About one decrease in twenty asks for a larger key.
    pub fn random(seed: u64, max_len: usize, universe: usize) -> OpTrace {
        let mut rng = rng_from_seed(seed);
        let len = if max_len == 0 { 0 } else { rng.random_range(1..=max_len) };
        let key_range: u64 = if rng.random_bool(0.5) { 32 } else { 1_000_000 };

        // model with ties broken by vertex, used only to pick valid arguments
        let mut live: BTreeSet<(u64, Vertex)> = BTreeSet::new();
        let mut keys: Vec<Option<u64>> = vec![None; universe];
        let mut ops = Vec::with_capacity(len);
        while ops.len() < len {
            let roll = rng.random_range(0..100u32);
            if roll < 25 {
                let free: Vec<Vertex> = (0..universe).filter(|&v| keys[v].is_none()).collect();
                if free.is_empty() {
                    continue;
                }
                let vertex = free[rng.random_range(0..free.len())];
                let key = rng.random_range(0..key_range);
                keys[vertex] = Some(key);
                live.insert((key, vertex));
                ops.push(HeapOp::Insert { vertex, key });
            } else if roll < 75 {
                if live.is_empty() {
                    continue;
                }
                let &(current, vertex) = live.iter().nth(rng.random_range(0..live.len())).unwrap();
                let key = if rng.random_bool(0.05) {
                    current + rng.random_range(1..=key_range)
                } else {
                    rng.random_range(0..=current)
                };
                if key <= current {
                    live.remove(&(current, vertex));
                    live.insert((key, vertex));
                    keys[vertex] = Some(key);
                }
                ops.push(HeapOp::Decrease { vertex, key });
            } else {
                if let Some((_, vertex)) = live.pop_first() {
                    keys[vertex] = None;
                }
                ops.push(HeapOp::Extract);
            }
        }
        OpTrace { universe, ops }
    }
}

/// Priority queue backed by an ordered set, with the same
/// ignore-increases rule as [`FibHeap::decrease_key`].
#[derive(Debug, Clone, Default)]
pub struct ReferenceHeap {
    set: BTreeSet<(u64, Vertex)>,
    keys: Vec<Option<u64>>,
}

impl ReferenceHeap {
    pub fn new(universe: usize) -> Self {
        ReferenceHeap {
            set: BTreeSet::new(),
            keys: vec![None; universe],
        }
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.keys[v].is_some()
    }

    pub fn min_key(&self) -> Option<u64> {
        self.set.first().map(|&(k, _)| k)
    }

    pub fn insert(&mut self, v: Vertex, key: u64) {
        assert!(self.keys[v].is_none(), "duplicate vertex {v}");
        self.keys[v] = Some(key);
        self.set.insert((key, v));
    }

    pub fn decrease(&mut self, v: Vertex, key: u64) {
        let current = self.keys[v].expect("vertex not live");
        if key <= current {
            self.set.remove(&(current, v));
            self.set.insert((key, v));
            self.keys[v] = Some(key);
        }
    }

    /// Removes the specific entry `(key, v)` if it exists and holds a
    /// minimum key.
    pub fn remove_min_entry(&mut self, v: Vertex, key: u64) -> bool {
        if self.min_key() != Some(key) || self.keys[v] != Some(key) {
            return false;
        }
        self.set.remove(&(key, v));
        self.keys[v] = None;
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// `(vertex, key)` pairs in extraction order, including the final drain.
    pub extracted: Vec<(Vertex, u64)>,
    /// Operations whose precondition did not hold at replay time.
    pub skipped: usize,
    pub failure: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays `trace` on a [`FibHeap`] and a [`ReferenceHeap`], then drains
/// both. Extracted keys must agree step by step; among equal keys the
/// vertex may differ, and the reference then removes the same vertex the
/// Fibonacci heap chose so both stay in lockstep. Structural invariants are
/// checked after every operation.
///
/// When two vertices tie, the replay can diverge from the liveness the
/// trace generator assumed; operations that become invalid are skipped on
/// both sides and counted.
pub fn heap_oracle_check(trace: &OpTrace) -> OracleReport {
    let mut fib = FibHeap::new(trace.universe);
    let mut reference = ReferenceHeap::new(trace.universe);
    let mut report = OracleReport {
        extracted: Vec::new(),
        skipped: 0,
        failure: None,
    };

    let extract = |fib: &mut FibHeap, reference: &mut ReferenceHeap, report: &mut OracleReport| -> Result<(), String> {
        let (v, k) = fib.extract_min().map_err(|e| e.to_string())?;
        if !reference.remove_min_entry(v, k) {
            return Err(format!(
                "fib heap extracted ({v}, {k}) but reference minimum is {:?}",
                reference.min_key()
            ));
        }
        report.extracted.push((v, k));
        Ok(())
    };

    let steps = trace.ops.iter().map(Some).chain(std::iter::repeat(None));
    for (step, op) in steps.enumerate() {
        let outcome = match op {
            Some(&HeapOp::Insert { vertex, key }) => {
                if vertex >= trace.universe || reference.contains(vertex) {
                    report.skipped += 1;
                    continue;
                }
                reference.insert(vertex, key);
                fib.insert(vertex, key).map_err(|e| e.to_string())
            }
            Some(&HeapOp::Decrease { vertex, key }) => {
                if vertex >= trace.universe || !reference.contains(vertex) {
                    report.skipped += 1;
                    continue;
                }
                reference.decrease(vertex, key);
                fib.decrease_key(vertex, key).map_err(|e| e.to_string())
            }
            Some(HeapOp::Extract) => {
                if reference.is_empty() {
                    report.skipped += 1;
                    continue;
                }
                extract(&mut fib, &mut reference, &mut report)
            }
            None if reference.is_empty() => break,
            None => extract(&mut fib, &mut reference, &mut report),
        };
        let outcome = outcome
            .and_then(|()| fib.check_invariants())
            .and_then(|()| {
                if fib.len() != reference.len() {
                    Err(format!("size {} vs reference {}", fib.len(), reference.len()))
                } else if fib.peek_min().map(|(_, k)| k) != reference.min_key() {
                    Err("minimum keys disagree".to_string())
                } else {
                    Ok(())
                }
            });
        if let Err(message) = outcome {
            report.failure = Some(format!("step {step} ({op:?}): {message}"));
            return report;
        }
    }
    if !fib.is_empty() {
        report.failure = Some("fib heap not empty after drain".into());
    }
    report
}

/// Checks one solver result against the graph: source conventions, the
/// `INFINITY <=> no predecessor` rule, predecessor arc consistency,
/// arc optimality and simple paths whose weight equals the label.
pub fn check_result(g: &Graph, r: &ShortestPathResult) -> Result<(), String> {
    let s = r.source;
    let n = g.vertex_count();
    if r.labels.len() != n || r.preds.len() != n {
        return Err("result arrays have the wrong length".into());
    }
    if r.labels[s] != Label::ZERO || r.preds[s].is_some() {
        return Err(format!("source {s} must have label 0 and no predecessor"));
    }
    for u in 0..n {
        if u != s && r.labels[u].is_finite() != r.preds[u].is_some() {
            return Err(format!("vertex {u}: finite label iff predecessor violated"));
        }
        if let Some(p) = r.preds[u] {
            let ok = g
                .neighbours(p)
                .iter()
                .any(|nb| nb.vertex == u && r.labels[p].checked_add(nb.weight) == Some(r.labels[u]));
            if !ok {
                return Err(format!("vertex {u}: no arc from predecessor {p} explains its label"));
            }
        }
        if r.labels[u].is_finite() && u != s {
            let path = r.path_to(u);
            if path.first() != Some(&s) || path.last() != Some(&u) {
                return Err(format!("path to {u} does not run from {s}: {path:?}"));
            }
            let mut sorted = path.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != path.len() {
                return Err(format!("path to {u} repeats a vertex: {path:?}"));
            }
            if path_weight(g, &path).and_then(Label::finite) != Some(r.labels[u]) {
                return Err(format!("path to {u} has weight {:?}, label {}", path_weight(g, &path), r.labels[u]));
            }
        }
    }
    for (u, v, w) in g.arcs() {
        if let Some(bound) = r.labels[u].checked_add(w) {
            if r.labels[v] > bound {
                return Err(format!("arc ({u}, {v}, {w}) still relaxes"));
            }
        }
    }
    Ok(())
}

/// Runs all four variants and Bellman-Ford from `s`. On success returns
/// the common label array.
pub fn solver_agreement_check(g: &Graph, s: Vertex) -> Result<Vec<Label>, String> {
    let oracle = bellman_ford(g, s).map_err(|e| e.to_string())?;
    for variant in Variant::ALL {
        let r = solve(g, s, variant).map_err(|e| format!("{variant}: {e}"))?;
        if r.labels != oracle.labels {
            return Err(format!("{variant}: labels differ from Bellman-Ford"));
        }
        check_result(g, &r).map_err(|e| format!("{variant}: {e}"))?;
    }
    Ok(oracle.labels)
}
