//! Distance oracles over vertex pairs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use crate::error::Result;
use crate::ext::Ext;
use crate::graph::{Graph, Vertex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    ShortestPath,
    Norm,
}

/// A metric on the vertices `0..vertex_count()`.
pub trait Metric<S: Scalar>: Sync {
    fn kind(&self) -> MetricKind;

    fn vertex_count(&self) -> usize;

    /// Distance between two vertices; `Inf` when they are not connected.
    fn dist(&self, x: Vertex, y: Vertex) -> Ext<S>;

    /// Comparison tolerance for floating-point scalars.
    fn tolerance(&self) -> f64;

    fn vertices(&self) -> std::iter::Map<std::ops::Range<usize>, fn(usize) -> Vertex> {
        (0..self.vertex_count()).map(Vertex as fn(usize) -> Vertex)
    }
}

/// Shortest-path metric of a graph. Rows are computed by Dijkstra on first
/// use and cached per source vertex.
pub struct ShortestPath<'g, S> {
    graph: &'g Graph<S>,
    rows: Vec<OnceLock<Vec<Ext<S>>>>,
}

impl<'g, S: Scalar> ShortestPath<'g, S> {
    pub fn new(graph: &'g Graph<S>) -> Self {
        Self {
            graph,
            rows: (0..graph.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn graph(&self) -> &'g Graph<S> {
        self.graph
    }

    /// Distances from `source` to every vertex.
    pub fn row(&self, source: Vertex) -> &[Ext<S>] {
        self.rows[source.0].get_or_init(|| dijkstra(self.graph, source))
    }

    /// Distance between two named vertices.
    pub fn distance(&self, x: &str, y: &str) -> Result<Ext<S>> {
        let x = self.graph.vertex(x)?;
        let y = self.graph.vertex(y)?;
        Ok(self.dist(x, y))
    }
}

impl<S: Scalar> Metric<S> for ShortestPath<'_, S> {
    fn kind(&self) -> MetricKind {
        MetricKind::ShortestPath
    }

    fn vertex_count(&self) -> usize {
        self.graph.len()
    }

    fn dist(&self, x: Vertex, y: Vertex) -> Ext<S> {
        self.row(x)[y.0]
    }

    fn tolerance(&self) -> f64 {
        self.graph.tolerance()
    }
}

struct Key<S>(S);

impl<S: PartialOrd> PartialEq for Key<S> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<S: PartialOrd> Eq for Key<S> {}
impl<S: PartialOrd> PartialOrd for Key<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<S: PartialOrd> Ord for Key<S> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

fn dijkstra<S: Scalar>(g: &Graph<S>, source: Vertex) -> Vec<Ext<S>> {
    let mut dist = vec![Ext::Inf; g.len()];
    let mut heap = BinaryHeap::new();
    dist[source.0] = Ext::zero();
    heap.push(Reverse((Key(S::zero()), source)));
    while let Some(Reverse((Key(d), v))) = heap.pop() {
        if Ext::Finite(d) > dist[v.0] {
            continue;
        }
        for &(w, weight) in g.neighbors(v) {
            let candidate = Ext::Finite(d + weight);
            if candidate < dist[w.0] {
                dist[w.0] = candidate;
                heap.push(Reverse((Key(d + weight), w)));
            }
        }
    }
    dist
}
