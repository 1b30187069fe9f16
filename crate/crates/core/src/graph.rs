//! Finite undirected graphs with positive edge weights.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};

/// Dense vertex handle. Vertices are numbered in declaration order, which is
/// also the order used for deterministic witness reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct Graph<S> {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    // sorted by neighbor
    adj: Vec<Vec<(Vertex, S)>>,
    edge_count: usize,
    tolerance: f64,
}

impl<S: Scalar> Default for Graph<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> Graph<S> {
    pub fn new() -> Self {
        Self {
            names: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            edge_count: 0,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    /// Graph on vertices named `0..n` with no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for i in 0..n {
            g.ensure_vertex(&i.to_string());
        }
        g
    }

    pub fn with_tolerance(mut self, eps: f64) -> Self {
        self.tolerance = eps;
        self
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<Vertex> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_owned()));
        }
        Ok(self.ensure_vertex(name))
    }

    /// Returns the existing vertex with this name, or declares it.
    pub fn ensure_vertex(&mut self, name: &str) -> Vertex {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = Vertex(self.names.len());
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), v);
        self.adj.push(Vec::new());
        v
    }

    pub fn add_edge(&mut self, a: Vertex, b: Vertex, weight: S) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(self.name(a).to_owned()));
        }
        if weight <= S::zero() {
            return Err(Error::NonPositiveWeight(
                self.name(a).to_owned(),
                self.name(b).to_owned(),
            ));
        }
        let pos = match self.adj[a.0].binary_search_by_key(&b, |&(v, _)| v) {
            Ok(_) => {
                return Err(Error::DuplicateEdge(
                    self.name(a).to_owned(),
                    self.name(b).to_owned(),
                ))
            }
            Err(pos) => pos,
        };
        self.adj[a.0].insert(pos, (b, weight));
        let pos = self.adj[b.0]
            .binary_search_by_key(&a, |&(v, _)| v)
            .unwrap_err();
        self.adj[b.0].insert(pos, (a, weight));
        self.edge_count += 1;
        Ok(())
    }

    /// Adds an edge between named vertices, declaring them if needed.
    pub fn add_named_edge(&mut self, a: &str, b: &str, weight: S) -> Result<()> {
        let a = self.ensure_vertex(a);
        let b = self.ensure_vertex(b);
        self.add_edge(a, b, weight)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + Clone {
        (0..self.names.len()).map(Vertex)
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, S)] {
        &self.adj[v.0]
    }

    /// Neighbors of a named vertex with their edge weights.
    pub fn neighbors_of(&self, name: &str) -> Result<&[(Vertex, S)]> {
        Ok(self.neighbors(self.vertex(name)?))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v.0].len()
    }

    pub fn weight(&self, a: Vertex, b: Vertex) -> Option<S> {
        self.adj[a.0]
            .binary_search_by_key(&b, |&(v, _)| v)
            .ok()
            .map(|i| self.adj[a.0][i].1)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.weight(a, b).is_some()
    }

    /// Iterates each undirected edge once, as `(a, b, w)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, S)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .filter(move |&&(b, _)| b.0 > a)
                .map(move |&(b, w)| (Vertex(a), b, w))
        })
    }

    /// True iff two neighbors of `z` are adjacent to each other.
    pub fn in_triangle(&self, z: Vertex) -> bool {
        let nbrs = &self.adj[z.0];
        nbrs.iter().enumerate().any(|(i, &(a, _))| {
            nbrs[i + 1..].iter().any(|&(b, _)| self.has_edge(a, b))
        })
    }

    pub fn is_unit_weight(&self) -> bool {
        self.adj.iter().flatten().all(|&(_, w)| w.is_one())
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![Vertex(0)];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.len()
    }

    /// Same graph with every edge weight mapped through `f`.
    pub fn map_weights<T: Scalar>(&self, f: impl Fn(S) -> T) -> Graph<T> {
        Graph {
            names: self.names.clone(),
            index: self.index.clone(),
            adj: self
                .adj
                .iter()
                .map(|row| row.iter().map(|&(v, w)| (v, f(w))).collect())
                .collect(),
            edge_count: self.edge_count,
            tolerance: self.tolerance,
        }
    }
}
