//! Discrete convexity and subharmonicity on finite graphs.
//!
//! A [`Metric`] on the vertices induces a betweenness relation
//! (`z` is between `x` and `y` when `d(x,y) = d(x,z) + d(z,y)`), which in turn
//! defines convex sets, convex hulls and convex functions ([`convexity`]).
//! [`subharmonic`] compares a function against its weighted neighborhood
//! mean. [`group_lattice`] builds windows of `Zⁿ` whose edges are compatible
//! with an L1, L2 or L∞ norm, where midpoint convexity is available, and
//! [`theorems`] checks the implications between all of these on concrete
//! instances.
//!
//! Everything is generic over a [`Scalar`]. Unit-weight graphs and L1/L∞
//! lattices are exact with `i64`; L2 lattices and fractional weights use
//! `f64` with a relative tolerance.

pub mod convexity;
pub mod error;
pub mod ext;
pub mod generators;
pub mod graph;
pub mod group_lattice;
pub mod io;
pub mod metric;
pub mod scalar;
pub mod subharmonic;
pub mod theorems;

pub use convexity::{Check, VertexFunction, VertexSet};
pub use error::{Error, Result};
pub use ext::Ext;
pub use graph::Vertex;
pub use group_lattice::{GroupSpec, Norm, Window};
pub use metric::{Metric, MetricKind};
pub use scalar::{Scalar, DEFAULT_TOLERANCE};

/// Graph with exact integer weights and distances.
pub type IntGraph = graph::Graph<i64>;
/// Graph with floating-point weights.
pub type FloatGraph = graph::Graph<f64>;
/// Graph with exact rational weights.
pub type RationalGraph = graph::Graph<num_rational::Rational64>;

pub type IntFunction = VertexFunction<i64>;
pub type FloatFunction = VertexFunction<f64>;

/// L1/L∞ lattice with exact integer norms.
pub type IntLattice = group_lattice::GroupLattice<i64>;
/// Lattice with floating-point norms (required for L2).
pub type FloatLattice = group_lattice::GroupLattice<f64>;

pub use graph::Graph;
pub use group_lattice::GroupLattice;
