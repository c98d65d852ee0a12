//! Immutable directed, arc-weighted graphs.
//!
//! Graphs are assembled through a [`GraphBuilder`] and frozen by
//! [`GraphBuilder::build`]. The frozen form stores every adjacency list
//! back to back in one flat array, preserving insertion order, so solvers
//! see the neighbours of a vertex exactly in the order the arcs were added.
//!
//! The text format is a 0-indexed variant of the DIMACS shortest-path layout:
//!
//! ```text
//! c optional comment lines
//! p sp <n> <m>
//! a <u> <v> <w>
//! ```

use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

/// Vertex identifier, always in `0..n`.
pub type Vertex = usize;

/// Nonnegative integer arc weight.
pub type Weight = u64;

/// One entry of an adjacency list: the head of an arc and its weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Neighbour {
    pub vertex: Vertex,
    pub weight: Weight,
}

/// A tentative or final path length.
///
/// `Label::INFINITY` is reserved for "no path known" and compares greater
/// than every finite label. Finite labels are strictly below `u64::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(u64);

impl Label {
    pub const INFINITY: Label = Label(u64::MAX);
    pub const ZERO: Label = Label(0);

    /// Largest representable finite label.
    pub const MAX_FINITE: u64 = u64::MAX - 1;

    /// Wraps a finite distance. Returns `None` for `u64::MAX`, which is the
    /// infinity sentinel.
    pub fn finite(value: u64) -> Option<Label> {
        (value != u64::MAX).then_some(Label(value))
    }

    pub fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    pub fn value(self) -> Option<u64> {
        self.is_finite().then_some(self.0)
    }

    /// `self + w`, or `None` when `self` is infinite or the sum would not
    /// fit below the sentinel.
    #[inline]
    pub fn checked_add(self, w: Weight) -> Option<Label> {
        if !self.is_finite() {
            return None;
        }
        match self.0.checked_add(w) {
            Some(sum) if sum != u64::MAX => Some(Label(sum)),
            _ => None,
        }
    }

    /// Raw representation, `u64::MAX` for infinity. Used for ordering keys.
    #[inline]
    pub(crate) fn raw(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("infinity"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("negative weights unsupported; use Bellman-Ford oracle (got {weight})")]
    NegativeWeight { weight: i64 },
}

/// Mutable, single-owner staging area for a [`Graph`].
#[derive(Debug, Clone)]
pub struct GraphBuilder {
    adj: Vec<Vec<Neighbour>>,
    m: usize,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn arc_count(&self) -> usize {
        self.m
    }

    /// Reserves room for `additional` outgoing arcs of `u`.
    pub fn reserve_arcs(&mut self, u: Vertex, additional: usize) {
        if let Some(list) = self.adj.get_mut(u) {
            list.reserve(additional);
        }
    }

    fn check_vertex(&self, vertex: Vertex) -> Result<(), GraphError> {
        if vertex < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex,
                n: self.adj.len(),
            })
        }
    }

    /// Appends the arc `(u, v)` with weight `w`. Parallel arcs and
    /// self-loops are accepted.
    pub fn add_arc(&mut self, u: Vertex, v: Vertex, w: Weight) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u].push(Neighbour { vertex: v, weight: w });
        self.m += 1;
        Ok(())
    }

    /// Like [`add_arc`](Self::add_arc) but for weights coming from a signed
    /// source; negative values are rejected.
    pub fn add_signed_arc(&mut self, u: Vertex, v: Vertex, w: i64) -> Result<(), GraphError> {
        let w = Weight::try_from(w).map_err(|_| GraphError::NegativeWeight { weight: w })?;
        self.add_arc(u, v, w)
    }

    /// Adds both `(u, v)` and `(v, u)` with the same weight.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex, w: Weight) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.add_arc(u, v, w)?;
        self.add_arc(v, u, w)
    }

    /// Freezes the builder into an immutable graph.
    pub fn build(self) -> Graph {
        let n = self.adj.len();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut arcs = Vec::with_capacity(self.m);
        offsets.push(0);
        for list in self.adj {
            arcs.extend_from_slice(&list);
            offsets.push(arcs.len());
        }
        debug_assert_eq!(arcs.len(), self.m);
        Graph { offsets, arcs }
    }
}

/// Frozen adjacency-list graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    // adjacency of u is arcs[offsets[u]..offsets[u + 1]]
    offsets: Vec<usize>,
    arcs: Vec<Neighbour>,
}

impl Graph {
    /// Graph with `n` vertices and no arcs.
    pub fn empty(n: usize) -> Graph {
        GraphBuilder::new(n).build()
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Outgoing arcs of `u`, in insertion order.
    #[inline]
    pub fn neighbours(&self, u: Vertex) -> &[Neighbour] {
        &self.arcs[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Iterates every arc as `(tail, head, weight)`.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex, Weight)> + '_ {
        (0..self.vertex_count())
            .flat_map(move |u| self.neighbours(u).iter().map(move |nb| (u, nb.vertex, nb.weight)))
    }

    /// Smallest weight among the arcs `(u, v)`, if any exist.
    pub fn min_arc_weight(&self, u: Vertex, v: Vertex) -> Option<Weight> {
        self.neighbours(u)
            .iter()
            .filter(|nb| nb.vertex == v)
            .map(|nb| nb.weight)
            .min()
    }

    /// Whether every arc `(u, v, w)` has a matching reverse arc `(v, u, w)`,
    /// counting multiplicities.
    pub fn is_symmetric(&self) -> bool {
        let mut forward: Vec<(Vertex, Vertex, Weight)> = self.arcs().collect();
        let mut backward: Vec<(Vertex, Vertex, Weight)> =
            self.arcs().map(|(u, v, w)| (v, u, w)).collect();
        forward.sort_unstable();
        backward.sort_unstable();
        forward == backward
    }

    /// Whether the graph, with arc directions ignored, has a single
    /// component. The empty graph counts as connected.
    pub fn is_weakly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut undirected = vec![Vec::new(); n];
        for (u, v, _) in self.arcs() {
            undirected[u].push(v);
            undirected[v].push(u);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &undirected[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        reached == n
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("missing `p sp <n> <m>` header")]
    MissingHeader,
    #[error("header declares {expected} arcs but {found} were read")]
    ArcCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T, ParseError> {
    let field = field.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    field
        .parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{field}`")))
}

/// Parses a graph in the text format described in the module docs.
pub fn read_graph<R: BufRead>(reader: R) -> Result<Graph, ParseError> {
    let mut builder: Option<(GraphBuilder, usize)> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim_end_matches('\r');
        let mut fields = line.split(' ');
        match fields.next() {
            Some("c") => continue,
            Some("") if line.is_empty() => continue,
            Some("p") => {
                if builder.is_some() {
                    return Err(malformed(line_no, "duplicate header"));
                }
                if fields.next() != Some("sp") {
                    return Err(malformed(line_no, "expected `p sp <n> <m>`"));
                }
                let n: usize = parse_field(fields.next(), line_no, "vertex count")?;
                let m: usize = parse_field(fields.next(), line_no, "arc count")?;
                if fields.next().is_some() {
                    return Err(malformed(line_no, "trailing fields after header"));
                }
                builder = Some((GraphBuilder::new(n), m));
            }
            Some("a") => {
                let (b, expected) = builder
                    .as_mut()
                    .ok_or_else(|| malformed(line_no, "arc line before header"))?;
                let u: Vertex = parse_field(fields.next(), line_no, "tail vertex")?;
                let v: Vertex = parse_field(fields.next(), line_no, "head vertex")?;
                let w: Weight = parse_field(fields.next(), line_no, "weight")?;
                if fields.next().is_some() {
                    return Err(malformed(line_no, "trailing fields after arc"));
                }
                if b.arc_count() == *expected {
                    return Err(ParseError::ArcCountMismatch {
                        expected: *expected,
                        found: expected.saturating_add(1),
                    });
                }
                b.add_arc(u, v, w)
                    .map_err(|e| malformed(line_no, e.to_string()))?;
            }
            _ => return Err(malformed(line_no, format!("unrecognised line `{line}`"))),
        }
    }
    let (b, expected) = builder.ok_or(ParseError::MissingHeader)?;
    if b.arc_count() != expected {
        return Err(ParseError::ArcCountMismatch {
            expected,
            found: b.arc_count(),
        });
    }
    Ok(b.build())
}

/// Writes `graph` preceded by one `c` line per comment.
pub fn write_graph_annotated<W: Write>(graph: &Graph, comments: &[String], mut writer: W) -> io::Result<()> {
    for comment in comments {
        for line in comment.lines() {
            writeln!(writer, "c {line}")?;
        }
    }
    writeln!(writer, "p sp {} {}", graph.vertex_count(), graph.arc_count())?;
    for (u, v, w) in graph.arcs() {
        writeln!(writer, "a {u} {v} {w}")?;
    }
    writer.flush()
}

pub fn write_graph<W: Write>(graph: &Graph, writer: W) -> io::Result<()> {
    write_graph_annotated(graph, &[], writer)
}
