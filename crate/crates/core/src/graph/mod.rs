//! Simple undirected graphs, vertex subsets, edge-list I/O and generators.
//!
//! Vertices are dense indices `0..n`. A [`Graph`] is immutable once built and
//! every constructor checks the simple-graph invariants (no loops, no
//! multi-edges, symmetric sorted adjacency).

mod generate;
mod io;

pub use generate::Family;
pub use io::{parse_graph, write_graph};

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, duplicate edges
    /// (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            m += 1;
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate edge {} {}",
                    v.min(w[0]),
                    v.max(w[0])
                )));
            }
        }
        let g = Self { adjacency, m };
        debug_assert!(g.check_invariants());
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Open neighbourhood `N(v)`, sorted ascending.
    ///
    /// Panics if `v` is out of range; use [`Graph::degree`] for a checked query.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adjacency[v].len())
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    /// Maximum vertex degree.
    pub fn max_degree(&self) -> Result<usize> {
        self.degrees().max().ok_or(Error::EmptyGraph)
    }

    /// Minimum vertex degree.
    pub fn min_degree(&self) -> Result<usize> {
        self.degrees().min().ok_or(Error::EmptyGraph)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// `|N[v] ∩ s|`, counting `v` itself when it belongs to `s`.
    pub fn closed_neighborhood_count(&self, v: Vertex, s: &VertexSet) -> Result<usize> {
        self.check_vertex(v)?;
        s.check_universe(self.n())?;
        Ok(self.closed_count_unchecked(v, s))
    }

    pub(crate) fn closed_count_unchecked(&self, v: Vertex, s: &VertexSet) -> usize {
        usize::from(s.contains(v)) + self.adjacency[v].iter().filter(|&&w| s.contains(w)).count()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Breadth-first connectivity test. The empty graph and `K_1` count as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    fn check_invariants(&self) -> bool {
        let n = self.n();
        self.adjacency.iter().enumerate().all(|(v, list)| {
            list.windows(2).all(|w| w[0] < w[1])
                && list
                    .iter()
                    .all(|&w| w < n && w != v && self.adjacency[w].binary_search(&v).is_ok())
        }) && self.degrees().sum::<usize>() == 2 * self.m
    }
}

/// A subset of the vertices of some graph on `universe_size` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<bool>,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe_size: usize) -> Self {
        Self {
            members: vec![false; universe_size],
            len: 0,
        }
    }

    pub fn full(universe_size: usize) -> Self {
        Self {
            members: vec![true; universe_size],
            len: universe_size,
        }
    }

    pub fn from_vertices<I>(universe_size: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut set = Self::empty(universe_size);
        for v in vertices {
            if v >= universe_size {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: universe_size,
                });
            }
            set.insert(v);
        }
        Ok(set)
    }

    pub fn universe_size(&self) -> usize {
        self.members.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.get(v).copied().unwrap_or(false)
    }

    /// Returns `true` if `v` was newly inserted. Panics if `v` is outside the universe.
    pub fn insert(&mut self, v: Vertex) -> bool {
        let fresh = !self.members[v];
        if fresh {
            self.members[v] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        let present = self.contains(v);
        if present {
            self.members[v] = false;
            self.len -= 1;
        }
        present
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(v, &b)| b.then_some(v))
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub(crate) fn check_universe(&self, n: usize) -> Result<()> {
        if self.universe_size() == n {
            Ok(())
        } else {
            Err(Error::UniverseMismatch {
                expected: n,
                found: self.universe_size(),
            })
        }
    }
}
