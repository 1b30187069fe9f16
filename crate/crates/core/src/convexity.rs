//! Betweenness, the one-step closure `c1`, convex hulls, convex sets and
//! convex functions over an arbitrary [`Metric`].

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::Vertex;
use crate::metric::Metric;
use crate::scalar::Scalar;

/// Largest vertex count accepted by [`brute_force_hull_oracle`].
pub const BRUTE_FORCE_LIMIT: usize = 14;

/// A subset of the vertices `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        s.bits.insert_range(..);
        s
    }

    pub fn from_vertices(universe: usize, vs: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::empty(universe);
        for v in vs {
            s.insert(v);
        }
        s
    }

    /// Set whose members are the one-bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        Self::from_vertices(
            universe,
            (0..universe).filter(|i| mask >> i & 1 == 1).map(Vertex),
        )
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        let fresh = !self.bits.contains(v.0);
        self.bits.insert(v.0);
        fresh
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.bits.contains(v.0)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.bits.ones().map(Vertex)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Self { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Self { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        Self { bits }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

/// A function from vertices to `R ∪ {+∞}`. Vertices may be left undefined,
/// in which case checks that need their value skip them.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexFunction<S> {
    values: Vec<Option<Ext<S>>>,
}

impl<S: Scalar> VertexFunction<S> {
    pub fn undefined(universe: usize) -> Self {
        Self {
            values: vec![None; universe],
        }
    }

    pub fn constant(universe: usize, value: Ext<S>) -> Self {
        Self {
            values: vec![Some(value); universe],
        }
    }

    pub fn from_values(values: impl IntoIterator<Item = Ext<S>>) -> Self {
        Self {
            values: values.into_iter().map(Some).collect(),
        }
    }

    pub fn from_fn(universe: usize, f: impl FnMut(Vertex) -> Ext<S>) -> Self {
        Self::from_values((0..universe).map(Vertex).map(f))
    }

    pub fn universe(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, v: Vertex) -> Option<Ext<S>> {
        self.values[v.0]
    }

    pub fn set(&mut self, v: Vertex, value: Ext<S>) {
        self.values[v.0] = Some(value);
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn map(&self, f: impl Fn(Ext<S>) -> Ext<S>) -> Self {
        Self {
            values: self.values.iter().map(|v| v.map(&f)).collect(),
        }
    }
}

/// Outcome of a pointwise check, carrying a witness on failure.
#[derive(Debug, Clone, PartialEq)]
pub enum Check<W> {
    Pass,
    Fail(W),
}

impl<W> Check<W> {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Check::Pass => None,
            Check::Fail(w) => Some(w),
        }
    }
}

/// A pair `(x, y)` with `z` between them where
/// `d(x,y)·f(z) > d(y,z)·f(x) + d(x,z)·f(y)`.
///
/// `lhs` and `rhs` are kept in this cleared-denominator form so that exact
/// scalars stay exact; [`ConvexWitness::lhs`] and [`ConvexWitness::rhs`]
/// divide by `span = d(x,y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexWitness<S> {
    pub x: Vertex,
    pub y: Vertex,
    pub span: S,
    pub scaled_lhs: Ext<S>,
    pub scaled_rhs: Ext<S>,
}

impl<S: Scalar> ConvexWitness<S> {
    /// `f(z)`.
    pub fn lhs(&self) -> f64 {
        self.scaled_lhs.to_f64() / self.span.to_f64_lossy()
    }

    /// `(d(y,z)/d(x,y))·f(x) + (d(x,z)/d(x,y))·f(y)`.
    pub fn rhs(&self) -> f64 {
        self.scaled_rhs.to_f64() / self.span.to_f64_lossy()
    }
}

/// True iff `d(x,y) = d(x,z) + d(z,y)` with `d(x,y)` finite.
pub fn between<S: Scalar, M: Metric<S> + ?Sized>(m: &M, x: Vertex, z: Vertex, y: Vertex) -> bool {
    let Ext::Finite(dxy) = m.dist(x, y) else {
        return false;
    };
    match (m.dist(x, z), m.dist(z, y)) {
        (Ext::Finite(a), Ext::Finite(b)) => dxy.approx_eq(a + b, m.tolerance()),
        _ => false,
    }
}

/// `{ z : z is between some x, y in A }`.
pub fn c1<S: Scalar, M: Metric<S> + ?Sized>(m: &M, a: &VertexSet) -> VertexSet {
    let members: Vec<Vertex> = a.iter().collect();
    let mut out = a.clone();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            for z in m.vertices() {
                if !out.contains(z) && between(m, x, z, y) {
                    out.insert(z);
                }
            }
        }
    }
    out
}

/// Least convex superset of `a`, by iterating [`c1`] to its fixed point.
pub fn convex_hull<S: Scalar, M: Metric<S> + ?Sized>(m: &M, a: &VertexSet) -> VertexSet {
    let mut current = a.clone();
    for _ in 0..=m.vertex_count() {
        let next = c1(m, &current);
        if next == current {
            return current;
        }
        current = next;
    }
    panic!("hull iteration did not reach a fixed point within |X| rounds");
}

/// `A` is convex iff `c1(A) = A`.
pub fn is_convex_set<S: Scalar, M: Metric<S> + ?Sized>(m: &M, a: &VertexSet) -> bool {
    c1(m, a) == *a
}

/// First `(z, x, y)` with `z ∉ A` between `x, y ∈ A`, if any.
pub fn set_convexity_witness<S: Scalar, M: Metric<S> + ?Sized>(
    m: &M,
    a: &VertexSet,
) -> Option<(Vertex, Vertex, Vertex)> {
    let members: Vec<Vertex> = a.iter().collect();
    for z in m.vertices().filter(|&z| !a.contains(z)) {
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if between(m, x, z, y) {
                    return Some((z, x, y));
                }
            }
        }
    }
    None
}

/// Checks `d(x,y)·f(z) <= d(y,z)·f(x) + d(x,z)·f(y)` for every pair
/// `x < y` (vertex order) with `z` strictly between them. Pairs where a
/// value is undefined are skipped. The witness is the first failing pair.
pub fn is_convex_fn_at<S: Scalar, M: Metric<S> + ?Sized>(
    m: &M,
    f: &VertexFunction<S>,
    z: Vertex,
) -> Check<ConvexWitness<S>> {
    let Some(fz) = f.get(z) else {
        return Check::Pass;
    };
    let eps = m.tolerance();
    let n = m.vertex_count();
    for x in (0..n).map(Vertex).filter(|&x| x != z) {
        let (Some(fx), Ext::Finite(dxz)) = (f.get(x), m.dist(x, z)) else {
            continue;
        };
        for y in (x.0 + 1..n).map(Vertex).filter(|&y| y != z) {
            let Some(fy) = f.get(y) else { continue };
            let (Ext::Finite(dxy), Ext::Finite(dzy)) = (m.dist(x, y), m.dist(z, y)) else {
                continue;
            };
            if !dxy.approx_eq(dxz + dzy, eps) {
                continue;
            }
            let lhs = fz.scale(dxy);
            let rhs = fx.scale(dzy).add(fy.scale(dxz));
            if !lhs.le(rhs, eps) {
                return Check::Fail(ConvexWitness {
                    x,
                    y,
                    span: dxy,
                    scaled_lhs: lhs,
                    scaled_rhs: rhs,
                });
            }
        }
    }
    Check::Pass
}

/// Convex at every vertex.
pub fn is_convex_fn<S: Scalar, M: Metric<S> + ?Sized>(m: &M, f: &VertexFunction<S>) -> bool {
    m.vertices().all(|z| is_convex_fn_at(m, f, z).passed())
}

/// `min { d(x, y) : y ∈ F }`, or `Inf` for empty `F`.
pub fn dist_to_set<S: Scalar, M: Metric<S> + ?Sized>(m: &M, x: Vertex, f: &VertexSet) -> Ext<S> {
    f.iter().map(|y| m.dist(x, y)).fold(Ext::Inf, Ext::min)
}

/// The function `d(·, F)`.
pub fn distance_function<S: Scalar, M: Metric<S> + ?Sized>(m: &M, f: &VertexSet) -> VertexFunction<S> {
    VertexFunction::from_fn(m.vertex_count(), |x| dist_to_set(m, x, f))
}

/// `0` on `A`, `+∞` elsewhere.
pub fn indicator<S: Scalar>(a: &VertexSet) -> VertexFunction<S> {
    VertexFunction::from_fn(a.universe(), |v| {
        if a.contains(v) {
            Ext::zero()
        } else {
            Ext::Inf
        }
    })
}

/// Every convex subset of the vertex set, by exhaustive enumeration.
pub fn enumerate_convex_sets<S: Scalar, M: Metric<S> + ?Sized>(m: &M) -> Result<Vec<VertexSet>> {
    let n = m.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyVertices {
            limit: BRUTE_FORCE_LIMIT,
            actual: n,
        });
    }
    Ok((0..1u64 << n)
        .map(|mask| VertexSet::from_mask(n, mask))
        .filter(|b| is_convex_set(m, b))
        .collect())
}

/// Intersection of the convex sets in `family` that contain `a`.
pub fn intersect_convex_supersets(universe: usize, family: &[VertexSet], a: &VertexSet) -> VertexSet {
    family
        .iter()
        .filter(|b| a.is_subset(b))
        .fold(VertexSet::full(universe), |acc, b| acc.intersection(b))
}

/// Hull of `a` as the intersection of all convex sets containing it.
/// Exponential in the vertex count; limited to [`BRUTE_FORCE_LIMIT`].
pub fn brute_force_hull_oracle<S: Scalar, M: Metric<S> + ?Sized>(
    m: &M,
    a: &VertexSet,
) -> Result<VertexSet> {
    let family = enumerate_convex_sets(m)?;
    Ok(intersect_convex_supersets(m.vertex_count(), &family, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::metric::ShortestPath;

    // a=0, x=1, y=2, z=3
    fn c4() -> Graph<i64> {
        let mut g = Graph::new();
        for (a, b) in [("a", "x"), ("x", "y"), ("y", "z"), ("z", "a")] {
            g.add_named_edge(a, b, 1).unwrap();
        }
        g
    }

    fn set(g: &Graph<i64>, names: &[&str]) -> VertexSet {
        VertexSet::from_vertices(g.len(), names.iter().map(|n| g.vertex(n).unwrap()))
    }

    fn path(lo: i64, hi: i64) -> Graph<i64> {
        let mut g = Graph::new();
        for i in lo..hi {
            g.add_named_edge(&i.to_string(), &(i + 1).to_string(), 1).unwrap();
        }
        g
    }

    #[test]
    fn betweenness_on_c4() {
        let g = c4();
        let m = ShortestPath::new(&g);
        let v = |n| g.vertex(n).unwrap();
        assert!(between(&m, v("x"), v("a"), v("z")));
        assert!(between(&m, v("x"), v("x"), v("y")));
        assert!(!between(&m, v("x"), v("y"), v("a")));
    }

    #[test]
    fn betweenness_requires_finite_span() {
        let mut g = Graph::<i64>::new();
        g.add_vertex("p").unwrap();
        g.add_vertex("q").unwrap();
        let m = ShortestPath::new(&g);
        assert!(!between(&m, Vertex(0), Vertex(0), Vertex(1)));
    }

    #[test]
    fn closure_examples() {
        let g = c4();
        let m = ShortestPath::new(&g);
        assert!(c1(&m, &VertexSet::empty(4)).is_empty());
        assert_eq!(c1(&m, &set(&g, &["a"])), set(&g, &["a"]));
        assert_eq!(c1(&m, &set(&g, &["x", "z"])), VertexSet::full(4));
        assert_eq!(convex_hull(&m, &set(&g, &["x", "z"])), VertexSet::full(4));
        assert!(convex_hull(&m, &VertexSet::empty(4)).is_empty());
    }

    #[test]
    fn convex_sets_on_c4() {
        let g = c4();
        let m = ShortestPath::new(&g);
        assert!(is_convex_set(&m, &VertexSet::full(4)));
        assert!(!is_convex_set(&m, &set(&g, &["x", "y", "z"])));
        for v in g.vertices() {
            assert!(is_convex_set(&m, &VertexSet::from_vertices(4, [v])));
        }
        let (z, x, y) = set_convexity_witness(&m, &set(&g, &["x", "y", "z"])).unwrap();
        assert_eq!((g.name(z), g.name(x), g.name(y)), ("a", "x", "z"));
    }

    #[test]
    fn distance_to_point_not_convex_on_c4() {
        let g = c4();
        let m = ShortestPath::new(&g);
        let f = distance_function(&m, &set(&g, &["a"]));
        let Check::Fail(w) = is_convex_fn_at(&m, &f, g.vertex("y").unwrap()) else {
            panic!("expected violation at y");
        };
        assert_eq!((g.name(w.x), g.name(w.y)), ("x", "z"));
        assert_eq!((w.lhs(), w.rhs()), (2.0, 1.0));
        assert_eq!(w.span, 2);
    }

    #[test]
    fn constant_is_convex() {
        let g = c4();
        let m = ShortestPath::new(&g);
        let f = VertexFunction::constant(4, Ext::Finite(7i64));
        assert!(is_convex_fn(&m, &f));
    }

    #[test]
    fn square_on_path_is_convex_at_origin() {
        let g = path(-2, 2);
        let m = ShortestPath::new(&g);
        let f = VertexFunction::from_fn(g.len(), |v| {
            let n: i64 = g.name(v).parse().unwrap();
            Ext::Finite(n * n)
        });
        assert!(is_convex_fn_at(&m, &f, g.vertex("0").unwrap()).passed());
    }

    #[test]
    fn dist_to_set_conventions() {
        let g = c4();
        let m = ShortestPath::new(&g);
        let y = g.vertex("y").unwrap();
        assert_eq!(dist_to_set(&m, y, &set(&g, &["a"])), Ext::Finite(2));
        assert_eq!(dist_to_set(&m, y, &set(&g, &["y", "a"])), Ext::Finite(0));
        assert_eq!(dist_to_set(&m, y, &VertexSet::empty(4)), Ext::Inf);
    }

    #[test]
    fn indicator_values() {
        let g = c4();
        let all = indicator::<i64>(&VertexSet::full(4));
        assert!(g.vertices().all(|v| all.get(v) == Some(Ext::Finite(0))));
        let none = indicator::<i64>(&VertexSet::empty(4));
        assert!(g.vertices().all(|v| none.get(v) == Some(Ext::Inf)));
        let chi_a = indicator::<i64>(&set(&g, &["a"]));
        assert_eq!(chi_a.get(g.vertex("y").unwrap()), Some(Ext::Inf));
    }

    #[test]
    fn oracle_matches_hull_on_c4() {
        let g = c4();
        let m = ShortestPath::new(&g);
        for mask in 0..16 {
            let a = VertexSet::from_mask(4, mask);
            assert_eq!(brute_force_hull_oracle(&m, &a).unwrap(), convex_hull(&m, &a));
        }
        assert_eq!(
            brute_force_hull_oracle(&m, &VertexSet::full(4)).unwrap(),
            VertexSet::full(4)
        );
    }

    #[test]
    fn oracle_rejects_large_graphs() {
        let g = path(0, 20);
        let m = ShortestPath::new(&g);
        assert!(matches!(
            brute_force_hull_oracle(&m, &VertexSet::empty(g.len())),
            Err(Error::TooManyVertices { .. })
        ));
    }

    #[test]
    fn undefined_values_are_skipped() {
        let g = c4();
        let m = ShortestPath::new(&g);
        let mut f = VertexFunction::undefined(4);
        f.set(g.vertex("y").unwrap(), Ext::Finite(10));
        f.set(g.vertex("x").unwrap(), Ext::Finite(0));
        assert!(is_convex_fn(&m, &f));
    }
}
