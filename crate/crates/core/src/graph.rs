//! Immutable simple undirected graphs over dense vertex identifiers
//! `0..n-1`, plus the bitset vertex sets and deletion views the algorithm
//! modules build on.
//!
//! Neighbor sets are stored as bitsets, so every iteration order in the
//! crate derives from ascending vertex identifier and all algorithms are
//! deterministic.

use std::fmt;

use thiserror::Error;

/// Errors raised while constructing a [`Graph`] from an edge list.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    EndpointOutOfRange(usize, usize, usize),
}

/// A subset of the vertices `0..capacity`, stored as a bitset.
///
/// Membership tests, unions and intersections are O(capacity/64); iteration
/// yields members in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    capacity: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(capacity: usize) -> Self {
        VertexSet {
            capacity,
            blocks: vec![0; capacity.div_ceil(64)],
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for (i, b) in s.blocks.iter_mut().enumerate() {
            let lo = i * 64;
            let hi = (lo + 64).min(capacity);
            if hi > lo {
                *b = if hi - lo == 64 {
                    u64::MAX
                } else {
                    (1u64 << (hi - lo)) - 1
                };
            }
        }
        s
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(capacity: usize, members: I) -> Self {
        let mut s = Self::empty(capacity);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.capacity, "vertex {v} out of range 0..{}", self.capacity);
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.capacity, "vertex {v} out of range 0..{}", self.capacity);
        self.blocks[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.blocks[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        for (i, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(i * 64 + b.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn subtract(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.subtract(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = VertexSet::full(self.capacity);
        s.subtract(self);
        s
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    /// Number of members shared with `other`.
    pub fn count_common(&self, other: &VertexSet) -> usize {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> Members<'_> {
        Members {
            blocks: &self.blocks,
            index: 0,
            word: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
pub struct Members<'a> {
    blocks: &'a [u64],
    index: usize,
    word: u64,
}

impl Iterator for Members<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word == 0 {
            self.index += 1;
            if self.index >= self.blocks.len() {
                return None;
            }
            self.word = self.blocks[self.index];
        }
        let bit = self.word.trailing_zeros() as usize;
        self.word &= self.word - 1;
        Some(self.index * 64 + bit)
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Members<'a>;

    fn into_iter(self) -> Members<'a> {
        self.iter()
    }
}

/// Minimum degree, maximum degree, and the common degree when the graph is
/// regular.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min: usize,
    pub max: usize,
    pub regular: Option<usize>,
}

/// An immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Builds a graph from an unordered edge list.
    ///
    /// Self-loops, duplicate edges (in either orientation) and out-of-range
    /// endpoints are hard errors, reported with the offending pair.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![VertexSet::empty(n); n];
        let mut m = 0;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adj[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            m += 1;
        }
        Ok(Graph { n, m, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Open neighborhood of `v` as a set.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    /// Closed neighborhood: the open neighborhood of `v` together with `v`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range 0..{}", self.n);
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        assert!(self.n >= 1, "degree profile of an empty graph");
        let mut min = usize::MAX;
        let mut max = 0;
        for v in 0..self.n {
            let d = self.degree(v);
            min = min.min(d);
            max = max.max(d);
        }
        DegreeProfile {
            min,
            max,
            regular: (min == max).then_some(min),
        }
    }

    /// View of the graph with the vertices of `deleted` removed. Identifiers
    /// are never renumbered.
    pub fn residual_delete(&self, deleted: &VertexSet) -> Residual<'_> {
        let mut r = self.residual();
        r.delete(deleted);
        r
    }

    /// View with nothing deleted yet.
    pub fn residual(&self) -> Residual<'_> {
        Residual {
            graph: self,
            deleted: VertexSet::empty(self.n),
        }
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty(self.n);
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            seen.insert(start);
            comp.insert(start);
            while let Some(u) = stack.pop() {
                for w in self.adj[u].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            components.push(comp);
        }
        components
    }

    /// Two-coloring `(X, Y)` if the graph has no odd cycle, with each
    /// component's smallest vertex placed in `X`.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side_x = VertexSet::empty(self.n);
        let mut side_y = VertexSet::empty(self.n);
        let mut colored = VertexSet::empty(self.n);
        for start in 0..self.n {
            if colored.contains(start) {
                continue;
            }
            colored.insert(start);
            side_x.insert(start);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let u_in_x = side_x.contains(u);
                for w in self.adj[u].iter() {
                    if !colored.contains(w) {
                        colored.insert(w);
                        if u_in_x {
                            side_y.insert(w);
                        } else {
                            side_x.insert(w);
                        }
                        queue.push_back(w);
                    } else if side_x.contains(w) == u_in_x {
                        return None;
                    }
                }
            }
        }
        Some((side_x, side_y))
    }

    /// Largest degree of the subgraph induced by `set`.
    pub fn max_induced_degree(&self, set: &VertexSet) -> usize {
        set.iter()
            .map(|v| self.adj[v].count_common(set))
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

/// A deletion view over a borrowed [`Graph`].
///
/// Deletions compose: deleting twice is the same as deleting the union.
/// Original identifiers are preserved throughout.
#[derive(Clone)]
pub struct Residual<'g> {
    graph: &'g Graph,
    deleted: VertexSet,
}

impl<'g> Residual<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn delete(&mut self, more: &VertexSet) {
        self.deleted.union_with(more);
    }

    pub fn delete_vertex(&mut self, v: usize) {
        self.deleted.insert(v);
    }

    /// New view with `more` also deleted.
    pub fn without(&self, more: &VertexSet) -> Residual<'g> {
        let mut r = self.clone();
        r.delete(more);
        r
    }

    pub fn alive(&self, v: usize) -> bool {
        v < self.graph.n && !self.deleted.contains(v)
    }

    pub fn deleted_set(&self) -> &VertexSet {
        &self.deleted
    }

    pub fn alive_set(&self) -> VertexSet {
        self.deleted.complement()
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.n).filter(|&v| !self.deleted.contains(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.adj[v].len() - self.graph.adj[v].count_common(&self.deleted)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.graph.adj[v].iter().filter(|&w| !self.deleted.contains(w))
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        self.graph.adj[v].difference(&self.deleted)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.alive(u) && self.alive(v) && self.graph.has_edge(u, v)
    }

    /// Lexicographically least surviving edge `(u, v)` with `u < v`.
    pub fn first_edge(&self) -> Option<(usize, usize)> {
        for u in self.alive_vertices() {
            if let Some(v) = self.neighbors(u).find(|&v| v > u) {
                return Some((u, v));
            }
            // neighbors below u were already scanned as endpoints
        }
        None
    }

    pub fn is_edgeless(&self) -> bool {
        self.first_edge().is_none()
    }
}
