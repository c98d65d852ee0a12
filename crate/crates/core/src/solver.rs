//! Dijkstra's algorithm with interchangeable priority-queue strategies.
//!
//! All four variants share one driver loop ([`run`]) and differ only in the
//! [`Frontier`] holding undistinguished vertices with finite labels:
//!
//! | variant | frontier | decrease-key |
//! |---|---|---|
//! | [`Variant::Basic`] | unsorted candidate list, linear scan | implicit (labels read on scan) |
//! | [`Variant::Tree`] | balanced ordered set of `(label, vertex)` | erase + insert |
//! | [`Variant::Heap`] | array-backed binary heap | none, duplicates skipped on pop |
//! | [`Variant::Fib`] | [`FibHeap`] | native |

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fibheap::{FibHeap, FibHeapError};
use crate::graph::{Graph, Label, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Basic,
    Tree,
    Heap,
    Fib,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Basic, Variant::Tree, Variant::Heap, Variant::Fib];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Tree => "tree",
            Variant::Heap => "heap",
            Variant::Fib => "fib",
        }
    }

    /// Human-readable description of the queue used.
    pub fn description(self) -> &'static str {
        match self {
            Variant::Basic => "Dijkstra (basic form)",
            Variant::Tree => "Dijkstra with self-balancing tree",
            Variant::Heap => "Dijkstra with binary heap",
            Variant::Fib => "Dijkstra with Fibonacci heap",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown variant `{0}` (expected basic, tree, heap or fib)")]
pub struct UnknownVariant(pub String);

impl FromStr for Variant {
    type Err = UnknownVariant;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basic" => Ok(Variant::Basic),
            "tree" => Ok(Variant::Tree),
            "heap" => Ok(Variant::Heap),
            "fib" => Ok(Variant::Fib),
            other => Err(UnknownVariant(other.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("source vertex {vertex} out of range for graph with {n} vertices")]
    SourceOutOfRange { vertex: Vertex, n: usize },
    #[error("target vertex {vertex} out of range for graph with {n} vertices")]
    TargetOutOfRange { vertex: Vertex, n: usize },
    #[error("path length overflow while relaxing arcs into vertex {vertex}")]
    Overflow { vertex: Vertex },
    #[error("priority queue failure: {0}")]
    Queue(#[from] FibHeapError),
}

/// Labels `L` and predecessors `P` produced by one solver run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPathResult {
    pub source: Vertex,
    pub labels: Vec<Label>,
    /// `None` for the source and for vertices with no known path.
    pub preds: Vec<Option<Vertex>>,
    /// Vertices distinguished (settled) during the run.
    pub settled: Vec<bool>,
    /// `true` when the run exhausted its queue. Early-exit runs that stopped
    /// at their target are incomplete: only settled labels are final there.
    pub complete: bool,
    /// Number of vertices distinguished.
    pub extractions: usize,
}

impl ShortestPathResult {
    /// Whether `L(u)` is the true shortest distance.
    pub fn is_final(&self, u: Vertex) -> bool {
        self.complete || self.settled[u]
    }

    pub fn path_to(&self, u: Vertex) -> Vec<Vertex> {
        get_path(&self.preds, self.source, u)
    }
}

/// Priority queue over undistinguished vertices with finite labels.
trait Frontier {
    fn with_capacity(n: usize) -> Self;
    /// First finite label for `v`.
    fn insert(&mut self, v: Vertex, key: Label) -> Result<(), SolveError>;
    /// Improvement of an already-queued label from `old` to `new`.
    fn decrease(&mut self, v: Vertex, old: Label, new: Label) -> Result<(), SolveError>;
    /// Removes a minimum-label entry. May return stale entries for vertices
    /// already distinguished; the driver skips those.
    fn pop_min(&mut self, labels: &[Label]) -> Option<Vertex>;
}

/// Linear-scan candidate list; removal swaps the minimum with the last entry.
struct CandidateList(Vec<Vertex>);

impl Frontier for CandidateList {
    fn with_capacity(_n: usize) -> Self {
        CandidateList(Vec::new())
    }

    fn insert(&mut self, v: Vertex, _key: Label) -> Result<(), SolveError> {
        self.0.push(v);
        Ok(())
    }

    fn decrease(&mut self, _v: Vertex, _old: Label, _new: Label) -> Result<(), SolveError> {
        Ok(())
    }

    fn pop_min(&mut self, labels: &[Label]) -> Option<Vertex> {
        let (&first, rest) = self.0.split_first()?;
        let mut best = (0, labels[first]);
        for (i, &v) in rest.iter().enumerate() {
            if labels[v] < best.1 {
                best = (i + 1, labels[v]);
            }
        }
        Some(self.0.swap_remove(best.0))
    }
}

struct OrderedSet(BTreeSet<(u64, Vertex)>);

impl Frontier for OrderedSet {
    fn with_capacity(_n: usize) -> Self {
        OrderedSet(BTreeSet::new())
    }

    fn insert(&mut self, v: Vertex, key: Label) -> Result<(), SolveError> {
        self.0.insert((key.raw(), v));
        Ok(())
    }

    fn decrease(&mut self, v: Vertex, old: Label, new: Label) -> Result<(), SolveError> {
        self.0.remove(&(old.raw(), v));
        self.0.insert((new.raw(), v));
        Ok(())
    }

    fn pop_min(&mut self, _labels: &[Label]) -> Option<Vertex> {
        self.0.pop_first().map(|(_, v)| v)
    }
}

struct LazyBinaryHeap(BinaryHeap<Reverse<(u64, Vertex)>>);

impl Frontier for LazyBinaryHeap {
    fn with_capacity(n: usize) -> Self {
        LazyBinaryHeap(BinaryHeap::with_capacity(n))
    }

    fn insert(&mut self, v: Vertex, key: Label) -> Result<(), SolveError> {
        self.0.push(Reverse((key.raw(), v)));
        Ok(())
    }

    fn decrease(&mut self, v: Vertex, _old: Label, new: Label) -> Result<(), SolveError> {
        self.insert(v, new)
    }

    fn pop_min(&mut self, _labels: &[Label]) -> Option<Vertex> {
        self.0.pop().map(|Reverse((_, v))| v)
    }
}

impl Frontier for FibHeap {
    fn with_capacity(n: usize) -> Self {
        FibHeap::new(n)
    }

    fn insert(&mut self, v: Vertex, key: Label) -> Result<(), SolveError> {
        Ok(FibHeap::insert(self, v, key.raw())?)
    }

    fn decrease(&mut self, v: Vertex, _old: Label, new: Label) -> Result<(), SolveError> {
        Ok(self.decrease_key(v, new.raw())?)
    }

    fn pop_min(&mut self, _labels: &[Label]) -> Option<Vertex> {
        self.extract_min().ok().map(|(v, _)| v)
    }
}

fn run<Q: Frontier>(g: &Graph, s: Vertex, target: Option<Vertex>) -> Result<ShortestPathResult, SolveError> {
    let n = g.vertex_count();
    if s >= n {
        return Err(SolveError::SourceOutOfRange { vertex: s, n });
    }
    if let Some(t) = target.filter(|&t| t >= n) {
        return Err(SolveError::TargetOutOfRange { vertex: t, n });
    }
    let mut labels = vec![Label::INFINITY; n];
    let mut preds = vec![None; n];
    let mut settled = vec![false; n];
    let mut queue = Q::with_capacity(n);
    let mut extractions = 0;
    let mut complete = true;
    let mut last = Label::ZERO;

    labels[s] = Label::ZERO;
    queue.insert(s, Label::ZERO)?;
    while let Some(u) = queue.pop_min(&labels) {
        if settled[u] {
            continue;
        }
        settled[u] = true;
        extractions += 1;
        let lu = labels[u];
        debug_assert!(lu >= last, "extraction order not monotone");
        last = lu;
        if target == Some(u) {
            complete = false;
            break;
        }
        for nb in g.neighbours(u) {
            let v = nb.vertex;
            if settled[v] {
                continue;
            }
            let candidate = lu
                .checked_add(nb.weight)
                .ok_or(SolveError::Overflow { vertex: v })?;
            let lv = labels[v];
            if candidate < lv {
                if lv.is_finite() {
                    queue.decrease(v, lv, candidate)?;
                } else {
                    queue.insert(v, candidate)?;
                }
                labels[v] = candidate;
                preds[v] = Some(u);
            }
        }
    }
    Ok(ShortestPathResult {
        source: s,
        labels,
        preds,
        settled,
        complete,
        extractions,
    })
}

/// Quadratic form: minimum label found by scanning all candidates.
pub fn solve_basic(g: &Graph, s: Vertex) -> Result<ShortestPathResult, SolveError> {
    run::<CandidateList>(g, s, None)
}

/// Ordered-set queue; decrease-key is erase followed by insert.
pub fn solve_tree(g: &Graph, s: Vertex) -> Result<ShortestPathResult, SolveError> {
    run::<OrderedSet>(g, s, None)
}

/// Binary heap without decrease-key (lazy deletion).
pub fn solve_binary_heap(g: &Graph, s: Vertex) -> Result<ShortestPathResult, SolveError> {
    run::<LazyBinaryHeap>(g, s, None)
}

pub fn solve_fibonacci(g: &Graph, s: Vertex) -> Result<ShortestPathResult, SolveError> {
    run::<FibHeap>(g, s, None)
}

/// Full single-source run with the chosen variant.
pub fn solve(g: &Graph, s: Vertex, variant: Variant) -> Result<ShortestPathResult, SolveError> {
    solve_inner(g, s, None, variant)
}

/// Single-source single-target run that halts once `t` is distinguished.
///
/// `L(t)` and the path to `t` are final. Other labels are final only where
/// [`ShortestPathResult::is_final`] says so.
pub fn solve_target(g: &Graph, s: Vertex, t: Vertex, variant: Variant) -> Result<ShortestPathResult, SolveError> {
    solve_inner(g, s, Some(t), variant)
}

fn solve_inner(g: &Graph, s: Vertex, t: Option<Vertex>, variant: Variant) -> Result<ShortestPathResult, SolveError> {
    match variant {
        Variant::Basic => run::<CandidateList>(g, s, t),
        Variant::Tree => run::<OrderedSet>(g, s, t),
        Variant::Heap => run::<LazyBinaryHeap>(g, s, t),
        Variant::Fib => run::<FibHeap>(g, s, t),
    }
}

/// Walks the predecessor array back from `u` to `s`.
///
/// Returns an empty path when `P(u)` is `None`, which covers both an
/// unreachable `u` and `u == s`.
pub fn get_path(preds: &[Option<Vertex>], s: Vertex, u: Vertex) -> Vec<Vertex> {
    let mut path = Vec::new();
    if preds[u].is_none() {
        return path;
    }
    let mut v = u;
    while v != s {
        path.push(v);
        match preds[v] {
            Some(p) if path.len() <= preds.len() => v = p,
            // predecessor chain does not lead back to s
            _ => return Vec::new(),
        }
    }
    path.push(s);
    path.reverse();
    path
}

/// Sum of arc weights along `path`, using the lightest arc between each
/// consecutive pair. `None` if some consecutive pair is not joined by an arc.
pub fn path_weight(g: &Graph, path: &[Vertex]) -> Option<u64> {
    path.windows(2)
        .map(|pair| g.min_arc_weight(pair[0], pair[1]))
        .try_fold(0u64, |acc, w| acc.checked_add(w?))
}

/// Bellman-Ford: `n - 1` rounds of relaxing every arc, stopping early once a
/// round changes nothing. Reference oracle for the Dijkstra variants.
pub fn bellman_ford(g: &Graph, s: Vertex) -> Result<ShortestPathResult, SolveError> {
    let n = g.vertex_count();
    if s >= n {
        return Err(SolveError::SourceOutOfRange { vertex: s, n });
    }
    let mut labels = vec![Label::INFINITY; n];
    let mut preds = vec![None; n];
    labels[s] = Label::ZERO;
    for _ in 1..n {
        let mut changed = false;
        for (u, v, w) in g.arcs() {
            if !labels[u].is_finite() {
                continue;
            }
            let candidate = labels[u].checked_add(w).ok_or(SolveError::Overflow { vertex: v })?;
            if candidate < labels[v] {
                labels[v] = candidate;
                preds[v] = Some(u);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let settled = labels.iter().map(|l| l.is_finite()).collect::<Vec<_>>();
    let extractions = settled.iter().filter(|&&b| b).count();
    Ok(ShortestPathResult {
        source: s,
        labels,
        preds,
        settled,
        complete: true,
        extractions,
    })
}
