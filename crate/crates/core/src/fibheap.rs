//! Fibonacci heap keyed by integer priorities and addressed by vertex index.
//!
//! Nodes live in an arena with one slot per vertex of the universe `0..capacity`,
//! so the slot index doubles as the handle used by [`FibHeap::decrease_key`].
//! Roots form a circular doubly linked ring, as do the children of every node.
//!
//! Amortized costs: `insert` and `decrease_key` O(1), `extract_min` O(log n).

use thiserror::Error;

use crate::graph::Vertex;

const NIL: u32 = u32::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FibHeapError {
    #[error("vertex {vertex} outside heap universe of size {capacity}")]
    VertexOutOfRange { vertex: Vertex, capacity: usize },
    #[error("vertex {0} already has a live node")]
    Duplicate(Vertex),
    #[error("vertex {0} has no live node")]
    NotInHeap(Vertex),
    #[error("extract_min on an empty heap")]
    Empty,
}

#[derive(Debug, Clone, Copy)]
struct FibNode {
    key: u64,
    degree: u32,
    mark: bool,
    live: bool,
    parent: u32,
    child: u32,
    left: u32,
    right: u32,
}

impl FibNode {
    const VACANT: FibNode = FibNode {
        key: 0,
        degree: 0,
        mark: false,
        live: false,
        parent: NIL,
        child: NIL,
        left: NIL,
        right: NIL,
    };
}

#[derive(Debug, Clone)]
pub struct FibHeap {
    nodes: Vec<FibNode>,
    min: u32,
    count: usize,
    // scratch buffers reused by consolidate
    degree_table: Vec<u32>,
    roots: Vec<u32>,
}

impl FibHeap {
    /// Creates an empty heap over the vertex universe `0..capacity`.
    pub fn new(capacity: usize) -> Self {
        assert!(capacity < NIL as usize, "heap capacity {capacity} exceeds u32 index space");
        FibHeap {
            nodes: vec![FibNode::VACANT; capacity],
            min: NIL,
            count: 0,
            degree_table: Vec::new(),
            roots: Vec::new(),
        }
    }

    pub fn capacity(&self) -> usize {
        self.nodes.len()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains(&self, vertex: Vertex) -> bool {
        self.nodes.get(vertex).is_some_and(|n| n.live)
    }

    /// Current key of a live vertex.
    pub fn key_of(&self, vertex: Vertex) -> Option<u64> {
        self.nodes.get(vertex).filter(|n| n.live).map(|n| n.key)
    }

    /// Minimum entry as `(vertex, key)` without removing it.
    pub fn peek_min(&self) -> Option<(Vertex, u64)> {
        (self.min != NIL).then(|| (self.min as Vertex, self.nodes[self.min as usize].key))
    }

    fn slot(&self, vertex: Vertex) -> Result<u32, FibHeapError> {
        if vertex < self.nodes.len() {
            Ok(vertex as u32)
        } else {
            Err(FibHeapError::VertexOutOfRange {
                vertex,
                capacity: self.nodes.len(),
            })
        }
    }

    #[inline]
    fn node(&self, x: u32) -> &FibNode {
        &self.nodes[x as usize]
    }

    #[inline]
    fn node_mut(&mut self, x: u32) -> &mut FibNode {
        &mut self.nodes[x as usize]
    }

    pub fn insert(&mut self, vertex: Vertex, key: u64) -> Result<(), FibHeapError> {
        let x = self.slot(vertex)?;
        if self.node(x).live {
            return Err(FibHeapError::Duplicate(vertex));
        }
        *self.node_mut(x) = FibNode {
            key,
            live: true,
            ..FibNode::VACANT
        };
        self.splice_into_roots(x);
        self.count += 1;
        Ok(())
    }

    /// Removes and returns the minimum entry as `(vertex, key)`.
    pub fn extract_min(&mut self) -> Result<(Vertex, u64), FibHeapError> {
        let z = self.min;
        if z == NIL {
            return Err(FibHeapError::Empty);
        }
        // promote every child of z to the root ring
        let mut child = self.node(z).child;
        for _ in 0..self.node(z).degree {
            let next = self.node(child).right;
            self.splice_into_roots(child);
            child = next;
        }
        self.unlink(z);
        self.count -= 1;
        let right = self.node(z).right;
        let key = self.node(z).key;
        *self.node_mut(z) = FibNode::VACANT;
        if self.count == 0 {
            self.min = NIL;
        } else {
            self.min = right;
            self.consolidate();
        }
        Ok((z as Vertex, key))
    }

    /// Lowers the key of `vertex` to `new_key`. A `new_key` larger than the
    /// current key leaves the heap untouched.
    pub fn decrease_key(&mut self, vertex: Vertex, new_key: u64) -> Result<(), FibHeapError> {
        let x = self.slot(vertex)?;
        if !self.node(x).live {
            return Err(FibHeapError::NotInHeap(vertex));
        }
        if new_key > self.node(x).key {
            return Ok(());
        }
        self.node_mut(x).key = new_key;
        let parent = self.node(x).parent;
        if parent != NIL && new_key < self.node(parent).key {
            self.cut(x);
            self.cascading_cut(parent);
        }
        if new_key < self.node(self.min).key {
            self.min = x;
        }
        Ok(())
    }

    /// Adds `x` to the root ring as an unmarked root, updating `min`.
    fn splice_into_roots(&mut self, x: u32) {
        let min = self.min;
        {
            let node = self.node_mut(x);
            node.parent = NIL;
            node.mark = false;
        }
        if min == NIL {
            let node = self.node_mut(x);
            node.left = x;
            node.right = x;
            self.min = x;
            return;
        }
        let min_left = self.node(min).left;
        self.node_mut(min).left = x;
        self.node_mut(min_left).right = x;
        let node = self.node_mut(x);
        node.right = min;
        node.left = min_left;
        if self.node(x).key < self.node(min).key {
            self.min = x;
        }
    }

    /// Detaches `x` from whichever ring holds it, fixing the parent's child
    /// pointer and degree. `x`'s own sibling pointers are left stale.
    fn unlink(&mut self, x: u32) {
        let FibNode { left, right, parent, .. } = *self.node(x);
        if right != x {
            self.node_mut(right).left = left;
            self.node_mut(left).right = right;
        }
        if parent != NIL {
            let p = self.node_mut(parent);
            if p.degree == 1 {
                p.child = NIL;
            } else if p.child == x {
                p.child = right;
            }
            p.degree -= 1;
        }
    }

    fn cut(&mut self, x: u32) {
        self.unlink(x);
        self.splice_into_roots(x);
    }

    fn add_child(&mut self, parent: u32, child: u32) {
        if self.node(parent).degree == 0 {
            self.node_mut(parent).child = child;
            let c = self.node_mut(child);
            c.left = child;
            c.right = child;
        } else {
            let first = self.node(parent).child;
            let first_left = self.node(first).left;
            self.node_mut(first).left = child;
            self.node_mut(first_left).right = child;
            let c = self.node_mut(child);
            c.right = first;
            c.left = first_left;
        }
        self.node_mut(child).parent = parent;
        self.node_mut(parent).degree += 1;
    }

    fn cascading_cut(&mut self, mut x: u32) {
        loop {
            let parent = self.node(x).parent;
            if parent == NIL {
                return;
            }
            if !self.node(x).mark {
                self.node_mut(x).mark = true;
                return;
            }
            self.cut(x);
            x = parent;
        }
    }

    /// Makes root `high` a child of root `low`.
    fn link(&mut self, high: u32, low: u32) {
        self.unlink(high);
        self.add_child(low, high);
        self.node_mut(high).mark = false;
    }

    /// Links roots of equal degree until all root degrees are distinct, then
    /// rebuilds the root ring and `min` from the degree table.
    fn consolidate(&mut self) {
        let mut roots = std::mem::take(&mut self.roots);
        roots.clear();
        let start = self.min;
        let mut x = start;
        loop {
            roots.push(x);
            x = self.node(x).right;
            if x == start {
                break;
            }
        }

        let mut table = std::mem::take(&mut self.degree_table);
        table.clear();
        for &root in &roots {
            let mut x = root;
            let mut degree = self.node(x).degree as usize;
            loop {
                if degree >= table.len() {
                    table.resize(degree + 1, NIL);
                }
                let mut y = table[degree];
                if y == NIL {
                    table[degree] = x;
                    break;
                }
                // on equal keys the root being processed becomes the parent
                if self.node(x).key > self.node(y).key {
                    std::mem::swap(&mut x, &mut y);
                }
                self.link(y, x);
                table[degree] = NIL;
                degree += 1;
            }
        }

        self.min = NIL;
        for &root in &table {
            if root != NIL {
                self.splice_into_roots(root);
            }
        }
        self.degree_table = table;
        self.roots = roots;
    }

    /// Largest degree of any node currently in the heap.
    pub fn max_degree(&self) -> u32 {
        self.nodes
            .iter()
            .filter(|n| n.live)
            .map(|n| n.degree)
            .max()
            .unwrap_or(0)
    }

    /// Walks the whole structure and reports the first violated invariant:
    /// heap order, ring consistency, degree counts, root marks, the node
    /// count, `min` being a true minimum, and the `log_phi(count)` degree
    /// bound.
    pub fn check_invariants(&self) -> Result<(), String> {
        let live = self.nodes.iter().filter(|n| n.live).count();
        if live != self.count {
            return Err(format!("{live} live slots but count is {}", self.count));
        }
        if self.count == 0 {
            return if self.min == NIL {
                Ok(())
            } else {
                Err("empty heap has a min node".into())
            };
        }
        if self.min == NIL {
            return Err("nonempty heap has no min node".into());
        }
        let min_key = self.node(self.min).key;
        let roots = self.ring(self.min)?;
        let mut reached = 0usize;
        let mut max_degree = 0u32;
        let mut stack = Vec::new();
        for &r in &roots {
            let node = self.node(r);
            if node.parent != NIL {
                return Err(format!("root {r} has a parent"));
            }
            if node.mark {
                return Err(format!("root {r} is marked"));
            }
            if node.key < min_key {
                return Err(format!("root {r} has key {} below min key {min_key}", node.key));
            }
            stack.push(r);
        }
        while let Some(x) = stack.pop() {
            reached += 1;
            if reached > self.count {
                return Err("more reachable nodes than count".into());
            }
            let node = self.node(x);
            if !node.live {
                return Err(format!("node {x} reachable but not live"));
            }
            max_degree = max_degree.max(node.degree);
            if node.degree == 0 {
                if node.child != NIL {
                    return Err(format!("node {x} has degree 0 but a child"));
                }
                continue;
            }
            if node.child == NIL {
                return Err(format!("node {x} has degree {} but no child", node.degree));
            }
            let children = self.ring(node.child)?;
            if children.len() != node.degree as usize {
                return Err(format!(
                    "node {x} has degree {} but {} children",
                    node.degree,
                    children.len()
                ));
            }
            for &c in &children {
                let child = self.node(c);
                if child.parent != x {
                    return Err(format!("child {c} of {x} points to parent {}", child.parent));
                }
                if child.key < node.key {
                    return Err(format!("heap order violated: {x} ({}) > {c} ({})", node.key, child.key));
                }
                stack.push(c);
            }
        }
        if reached != self.count {
            return Err(format!("{reached} reachable nodes but count is {}", self.count));
        }
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        if phi.powi(max_degree as i32) > self.count as f64 * (1.0 + 1e-9) {
            return Err(format!("degree {max_degree} exceeds log_phi({})", self.count));
        }
        Ok(())
    }

    /// Members of the ring containing `start`, checking link consistency.
    fn ring(&self, start: u32) -> Result<Vec<u32>, String> {
        let mut members = Vec::new();
        let mut x = start;
        loop {
            let right = self.node(x).right;
            if right == NIL || self.node(right).left != x {
                return Err(format!("ring broken at node {x}"));
            }
            members.push(x);
            if members.len() > self.count {
                return Err("ring longer than node count".into());
            }
            x = right;
            if x == start {
                return Ok(members);
            }
        }
    }
}
