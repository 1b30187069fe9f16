//! Finite windows of `Zⁿ` with an L1, L2 or L∞ norm, and the graph that is
//! compatible with the norm: `x ~ y` iff `0 < ‖x−y‖ <= r`, weighted by
//! `‖x−y‖`.
//!
//! Statements about the infinite group are only meaningful at *interior*
//! vertices, whose whole `r`-ball lies inside the window.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::convexity::{Check, VertexFunction, VertexSet};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{Graph, Vertex};
use crate::metric::{Metric, MetricKind};
use crate::scalar::{Scalar, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl Norm {
    /// Integer key that orders vectors the same way as the norm: the norm
    /// itself for L1/L∞, the squared norm for L2.
    pub fn key(self, v: &[i64]) -> i64 {
        match self {
            Norm::L1 => v.iter().map(|c| c.abs()).sum(),
            Norm::L2 => v.iter().map(|c| c * c).sum(),
            Norm::Linf => v.iter().map(|c| c.abs()).max().unwrap_or(0),
        }
    }

    /// `‖v‖` in the scalar type, if representable.
    pub fn eval<S: Scalar>(self, v: &[i64]) -> Option<S> {
        let key = S::from_int(self.key(v));
        match self {
            Norm::L2 => key.try_sqrt(),
            Norm::L1 | Norm::Linf => Some(key),
        }
    }

    pub fn eval_f64(self, v: &[i64]) -> f64 {
        let key = self.key(v) as f64;
        match self {
            Norm::L2 => key.sqrt(),
            Norm::L1 | Norm::Linf => key,
        }
    }

    /// Exact test of `a·‖u‖ <= b·‖v‖` for nonnegative integers `a`, `b`.
    pub fn scaled_le(self, a: i64, u: &[i64], b: i64, v: &[i64]) -> bool {
        match self {
            Norm::L2 => a * a * self.key(u) <= b * b * self.key(v),
            Norm::L1 | Norm::Linf => a * self.key(u) <= b * self.key(v),
        }
    }

    /// Whether norm values are integers on `Zⁿ`.
    pub fn is_integral(self) -> bool {
        !matches!(self, Norm::L2)
    }
}

impl FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" | "l∞" => Ok(Norm::Linf),
            other => Err(Error::InvalidLattice(format!("unknown norm `{other}`"))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::Linf => "linf",
        })
    }
}

/// Axis-aligned box `∏ [min_i, max_i]` in `Zⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    ranges: Vec<(i64, i64)>,
}

impl Window {
    pub fn new(ranges: Vec<(i64, i64)>) -> Result<Self> {
        if ranges.is_empty() {
            return Err(Error::InvalidLattice("window has no dimensions".into()));
        }
        if let Some(&(lo, hi)) = ranges.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidLattice(format!("empty range {lo}:{hi}")));
        }
        Ok(Self { ranges })
    }

    /// `[lo, hi]` in each of `dim` axes.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![(lo, hi); dim])
    }

    /// `size` points per axis, centered on the origin (`9` gives `[-4, 4]`).
    pub fn centered(dim: usize, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidLattice("window size must be positive".into()));
        }
        let lo = -((size as i64) / 2);
        Self::cube(dim, lo, lo + size as i64 - 1)
    }

    pub fn dim(&self) -> usize {
        self.ranges.len()
    }

    pub fn ranges(&self) -> &[(i64, i64)] {
        &self.ranges
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        p.len() == self.dim() && p.iter().zip(&self.ranges).all(|(c, &(lo, hi))| lo <= *c && *c <= hi)
    }

    /// Number of points in the window.
    pub fn size(&self) -> usize {
        self.ranges
            .iter()
            .map(|(lo, hi)| (hi - lo + 1) as usize)
            .product()
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        box_points(&self.ranges)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Parses `a:b,c:d,...`, one inclusive range per dimension.
    fn from_str(s: &str) -> Result<Self> {
        let ranges = s
            .split(',')
            .map(|part| {
                let bad = || Error::InvalidLattice(format!("bad window range `{part}`"));
                let (lo, hi) = part.trim().split_once(':').ok_or_else(bad)?;
                Ok((
                    lo.trim().parse().map_err(|_| bad())?,
                    hi.trim().parse().map_err(|_| bad())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ranges)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranges.iter().map(|(lo, hi)| format!("{lo}:{hi}")).collect();
        f.write_str(&parts.join(","))
    }
}

fn box_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(ranges.len())];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// Formats a lattice point as a vertex id: `(c1,...,cn)`.
pub fn point_id(p: &[i64]) -> String {
    let parts: Vec<String> = p.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Parses a vertex id of the form `(c1,...,cn)`.
pub fn parse_point_id(s: &str) -> Option<Vec<i64>> {
    let inner = s.trim().strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|c| c.trim().parse().ok()).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSpec {
    pub norm: Norm,
    pub radius: f64,
    pub window: Window,
    pub tolerance: f64,
}

impl GroupSpec {
    pub fn new(norm: Norm, radius: f64, window: Window) -> Self {
        Self {
            norm,
            radius,
            window,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    /// `‖ζ‖ <= r`.
    pub fn in_ball(&self, zeta: &[i64]) -> bool {
        let key = self.norm.key(zeta) as f64;
        match self.norm {
            Norm::L2 => {
                let r2 = self.radius * self.radius;
                key <= r2 || (key - r2).abs() <= self.tolerance * r2.max(1.0)
            }
            Norm::L1 | Norm::Linf => key <= self.radius,
        }
    }

    /// Nonzero group elements of norm at most `r`, lexicographically.
    pub fn ball(&self) -> Vec<Vec<i64>> {
        let reach = self.radius.floor() as i64;
        box_points(&vec![(-reach, reach); self.dim()])
            .into_iter()
            .filter(|z| z.iter().any(|&c| c != 0) && self.in_ball(z))
            .collect()
    }
}

/// A window of `Zⁿ` together with its norm-compatible graph.
#[derive(Debug, Clone)]
pub struct GroupLattice<S> {
    spec: GroupSpec,
    graph: Graph<S>,
    points: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, Vertex>,
    ball: Vec<Vec<i64>>,
    interior: VertexSet,
    midpoint_offsets: Vec<Vec<i64>>,
    warnings: Vec<String>,
}

/// Builds the norm-compatible graph on the window. L2 needs a
/// floating-point scalar since its norms are irrational in general.
pub fn build_lattice<S: Scalar>(spec: GroupSpec) -> Result<GroupLattice<S>> {
    if spec.radius.is_nan() || spec.radius <= 0.0 {
        return Err(Error::InvalidLattice(format!("radius must be positive, got {}", spec.radius)));
    }
    if S::EXACT && !spec.norm.is_integral() {
        return Err(Error::Unsupported(format!(
            "{} norm needs a floating-point scalar",
            spec.norm
        )));
    }
    let points = spec.window.points();
    let mut graph = Graph::new().with_tolerance(spec.tolerance);
    let mut lookup = HashMap::with_capacity(points.len());
    for p in &points {
        let v = graph.add_vertex(&point_id(p))?;
        lookup.insert(p.clone(), v);
    }
    let ball = spec.ball();
    let mut interior = VertexSet::empty(points.len());
    for (i, p) in points.iter().enumerate() {
        let mut all_inside = true;
        for zeta in &ball {
            let q = add(p, zeta);
            match lookup.get(&q) {
                Some(&w) if w.0 > i => {
                    let weight = spec.norm.eval::<S>(zeta).ok_or_else(|| {
                        Error::Unsupported(format!("norm of {} not representable", point_id(zeta)))
                    })?;
                    graph.add_edge(Vertex(i), w, weight)?;
                }
                Some(_) => {}
                None => all_inside = false,
            }
        }
        if all_inside {
            interior.insert(Vertex(i));
        }
    }
    let mut warnings = Vec::new();
    if interior.is_empty() {
        warnings.push(format!(
            "window {} has no interior vertex for radius {}",
            spec.window, spec.radius
        ));
    }
    let spans: Vec<(i64, i64)> = spec
        .window
        .ranges()
        .iter()
        .map(|(lo, hi)| (lo - hi, hi - lo))
        .collect();
    let mut midpoint_offsets: Vec<Vec<i64>> = box_points(&spans)
        .into_iter()
        .filter(|z| z.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0))
        .collect();
    midpoint_offsets.sort_by_key(|z| spec.norm.key(z));
    Ok(GroupLattice {
        spec,
        graph,
        points,
        lookup,
        ball,
        interior,
        midpoint_offsets,
        warnings,
    })
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl<S: Scalar> GroupLattice<S> {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn graph(&self) -> &Graph<S> {
        &self.graph
    }

    pub fn norm(&self) -> Norm {
        self.spec.norm
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, v: Vertex) -> &[i64] {
        &self.points[v.0]
    }

    pub fn vertex_at(&self, p: &[i64]) -> Option<Vertex> {
        self.lookup.get(p).copied()
    }

    /// `v + offset`, if it lies in the window.
    pub fn translate(&self, v: Vertex, offset: &[i64]) -> Option<Vertex> {
        self.vertex_at(&add(self.point(v), offset))
    }

    /// Nonzero elements of `B_r(0)`.
    pub fn ball(&self) -> &[Vec<i64>] {
        &self.ball
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        self.interior.contains(v)
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn metric(&self) -> NormMetric<'_, S> {
        NormMetric { lattice: self }
    }

    /// `‖v − a‖` at every window vertex.
    pub fn norm_distance_to(&self, a: &[i64]) -> Result<VertexFunction<S>> {
        let values = self
            .points
            .iter()
            .map(|p| {
                self.norm()
                    .eval::<S>(&sub(p, a))
                    .map(Ext::Finite)
                    .ok_or_else(|| Error::Unsupported("norm not representable".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VertexFunction::from_values(values))
    }

    /// Function built from coordinates.
    pub fn function(&self, mut f: impl FnMut(&[i64]) -> Ext<S>) -> VertexFunction<S> {
        VertexFunction::from_values(self.points.iter().map(|p| f(p)))
    }
}

/// Vertices whose whole `r`-ball lies in the window.
pub fn interior_vertices<S: Scalar>(lat: &GroupLattice<S>) -> VertexSet {
    lat.interior.clone()
}

/// The norm-induced metric `d(x, y) = ‖x − y‖` on a lattice window.
pub struct NormMetric<'a, S> {
    lattice: &'a GroupLattice<S>,
}

/// Norm-induced metric of a lattice.
pub fn group_metric<S: Scalar>(lat: &GroupLattice<S>) -> NormMetric<'_, S> {
    lat.metric()
}

impl<S: Scalar> Metric<S> for NormMetric<'_, S> {
    fn kind(&self) -> MetricKind {
        MetricKind::Norm
    }

    fn vertex_count(&self) -> usize {
        self.lattice.len()
    }

    fn dist(&self, x: Vertex, y: Vertex) -> Ext<S> {
        let diff = sub(self.lattice.point(x), self.lattice.point(y));
        Ext::Finite(
            self.lattice
                .norm()
                .eval(&diff)
                .expect("lattice construction rejects unrepresentable norms"),
        )
    }

    fn tolerance(&self) -> f64 {
        self.lattice.spec.tolerance
    }
}

/// An offset `z` with `2 f(x) > f(x+z) + f(x−z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MidpointWitness<S> {
    pub z: Vec<i64>,
    pub lhs: Ext<S>,
    pub rhs: Ext<S>,
}

/// Checks `2 f(x) <= f(x+z) + f(x−z)` for every `z ≠ 0` with both `x ± z`
/// in the window. Offsets are tried by increasing norm, `z` and `−z` being
/// the same test; the witness is the first failing one.
pub fn is_midpoint_convex_at<S: Scalar>(
    lat: &GroupLattice<S>,
    f: &VertexFunction<S>,
    x: Vertex,
) -> Check<MidpointWitness<S>> {
    let Some(fx) = f.get(x) else {
        return Check::Pass;
    };
    let lhs = fx.scale(S::from_int(2));
    let eps = lat.spec.tolerance;
    let p = lat.point(x);
    for z in &lat.midpoint_offsets {
        let (Some(plus), Some(minus)) = (lat.vertex_at(&add(p, z)), lat.vertex_at(&sub(p, z))) else {
            continue;
        };
        let (Some(fp), Some(fm)) = (f.get(plus), f.get(minus)) else {
            continue;
        };
        let rhs = fp.add(fm);
        if !lhs.le(rhs, eps) {
            return Check::Fail(MidpointWitness {
                z: z.clone(),
                lhs,
                rhs,
            });
        }
    }
    Check::Pass
}

/// Midpoint convex at every window vertex.
pub fn is_midpoint_convex<S: Scalar>(lat: &GroupLattice<S>, f: &VertexFunction<S>) -> bool {
    lat.graph.vertices().all(|x| is_midpoint_convex_at(lat, f, x).passed())
}

/// A triple `(y1, y2, z)` for which no `y ∈ F` has `2‖y−z‖ <= ‖y1+y2−2z‖`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestNeighborWitness {
    pub y1: Vertex,
    pub y2: Vertex,
    pub z: Vertex,
}

/// Checks the nearest-neighbor property of `F` against every `z` in the
/// window. Comparisons are exact for all three norms.
pub fn has_nearest_neighbor_property<S: Scalar>(
    lat: &GroupLattice<S>,
    f: &VertexSet,
) -> Check<NearestNeighborWitness> {
    let members: Vec<Vertex> = f.iter().collect();
    let norm = lat.norm();
    for (i, &y1) in members.iter().enumerate() {
        for &y2 in &members[i..] {
            let pair_sum = add(lat.point(y1), lat.point(y2));
            for z in lat.graph.vertices() {
                let pz = lat.point(z);
                let target: Vec<i64> = pair_sum.iter().zip(pz).map(|(s, c)| s - 2 * c).collect();
                let covered = members
                    .iter()
                    .any(|&y| norm.scaled_le(2, &sub(lat.point(y), pz), 1, &target));
                if !covered {
                    return Check::Fail(NearestNeighborWitness { y1, y2, z });
                }
            }
        }
    }
    Check::Pass
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice<S: Scalar>(norm: Norm, radius: f64, window: &str) -> GroupLattice<S> {
        build_lattice(GroupSpec::new(norm, radius, window.parse().unwrap())).unwrap()
    }

    fn at<S: Scalar>(lat: &GroupLattice<S>, p: &[i64]) -> Vertex {
        lat.vertex_at(p).unwrap()
    }

    #[test]
    fn neighborhood_sizes() {
        let l1 = lattice::<i64>(Norm::L1, 1.0, "-2:2,-2:2");
        assert_eq!(l1.graph().degree(at(&l1, &[0, 0])), 4);
        assert_eq!(l1.graph().edge_count(), 40);
        let king = lattice::<i64>(Norm::Linf, 1.0, "-2:2,-2:2");
        assert_eq!(king.graph().degree(at(&king, &[0, 0])), 8);
        let l2 = lattice::<f64>(Norm::L2, 1.5, "-2:2,-2:2");
        assert_eq!(l2.graph().degree(at(&l2, &[0, 0])), 8);
        let w = l2.graph().weight(at(&l2, &[0, 0]), at(&l2, &[1, 1])).unwrap();
        assert!((w - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn one_dimensional_path() {
        let lat = lattice::<i64>(Norm::L1, 1.0, "-2:2");
        let g = lat.graph();
        assert_eq!(g.edge_count(), 4);
        assert!(g.is_unit_weight());
        assert_eq!(g.name(Vertex(0)), "(-2)");
    }

    #[test]
    fn interior_flags() {
        let lat = lattice::<i64>(Norm::L1, 1.0, "-2:2,-2:2");
        let interior = interior_vertices(&lat);
        assert!(!interior.contains(at(&lat, &[2, 2])));
        assert!(interior.contains(at(&lat, &[0, 0])));
        assert_eq!(interior.len(), 9);

        let tiny = lattice::<i64>(Norm::L1, 1.0, "0:0,0:0");
        assert!(interior_vertices(&tiny).is_empty());
        assert_eq!(tiny.warnings().len(), 1);
    }

    #[test]
    fn group_metric_values() {
        let l1 = lattice::<i64>(Norm::L1, 1.0, "-2:2,-2:2");
        let m = group_metric(&l1);
        assert_eq!(m.dist(at(&l1, &[0, 0]), at(&l1, &[2, 2])), Ext::Finite(4));
        let l2 = lattice::<f64>(Norm::L2, 1.0, "-2:2,-2:2");
        let Ext::Finite(d) = group_metric(&l2).dist(at(&l2, &[0, 0]), at(&l2, &[1, 1])) else {
            panic!()
        };
        assert!((d - 2f64.sqrt()).abs() <= 1e-9);
        let linf = lattice::<i64>(Norm::Linf, 1.0, "-2:2,-2:2");
        assert_eq!(
            group_metric(&linf).dist(at(&linf, &[0, 0]), at(&linf, &[2, 1])),
            Ext::Finite(2)
        );
    }

    #[test]
    fn exact_scalar_rejects_l2() {
        let err = build_lattice::<i64>(GroupSpec::new(Norm::L2, 1.0, "-1:1".parse().unwrap()));
        assert!(matches!(err, Err(Error::Unsupported(_))));
        let err = build_lattice::<i64>(GroupSpec::new(Norm::L1, 0.0, "-1:1".parse().unwrap()));
        assert!(matches!(err, Err(Error::InvalidLattice(_))));
    }

    #[test]
    fn window_parsing() {
        let w: Window = "-2:2,0:3".parse().unwrap();
        assert_eq!(w.ranges(), &[(-2, 2), (0, 3)]);
        assert_eq!(w.size(), 20);
        assert!("3:1".parse::<Window>().is_err());
        assert!("1-2".parse::<Window>().is_err());
        assert_eq!(Window::centered(2, 9).unwrap().ranges(), &[(-4, 4), (-4, 4)]);
        assert_eq!(parse_point_id("(-1, 2)"), Some(vec![-1, 2]));
        assert_eq!(point_id(&[3, -4]), "(3,-4)");
    }

    #[test]
    fn midpoint_examples() {
        let lat = lattice::<i64>(Norm::L1, 1.0, "-2:2");
        let bump = VertexFunction::from_values([0, 0, 1, 0, 0].map(Ext::Finite));
        let Check::Fail(w) = is_midpoint_convex_at(&lat, &bump, at(&lat, &[0])) else {
            panic!("bump is not midpoint convex at 0");
        };
        assert_eq!(w.z, vec![1]);
        assert_eq!((w.lhs, w.rhs), (Ext::Finite(2), Ext::Finite(0)));

        let constant = VertexFunction::constant(5, Ext::Finite(3));
        assert!(is_midpoint_convex(&lat, &constant));
    }

    #[test]
    fn distance_to_point_is_midpoint_convex() {
        for norm in [Norm::L1, Norm::Linf] {
            let lat = lattice::<i64>(norm, 1.0, "-3:3,-3:3");
            for a in [[0, 0], [2, -1], [5, 5]] {
                assert!(is_midpoint_convex(&lat, &lat.norm_distance_to(&a).unwrap()));
            }
        }
        let lat = lattice::<f64>(Norm::L2, 1.5, "-3:3,-3:3");
        assert!(is_midpoint_convex(&lat, &lat.norm_distance_to(&[1, 2]).unwrap()));
    }

    #[test]
    fn nearest_neighbor_examples() {
        let lat = lattice::<i64>(Norm::L1, 1.0, "-3:3");
        let set = |ps: &[i64]| VertexSet::from_vertices(lat.len(), ps.iter().map(|&p| at(&lat, &[p])));
        assert!(has_nearest_neighbor_property(&lat, &set(&[0])).passed());
        assert!(has_nearest_neighbor_property(&lat, &set(&[])).passed());
        assert!(has_nearest_neighbor_property(&lat, &set(&[-2, -1, 0, 1])).passed());
        let Check::Fail(w) = has_nearest_neighbor_property(&lat, &set(&[-1, 1])) else {
            panic!("{{-1, 1}} lacks the property");
        };
        assert_eq!(
            (lat.point(w.y1), lat.point(w.y2), lat.point(w.z)),
            (&[-1][..], &[1][..], &[0][..])
        );
    }

    #[test]
    fn ball_is_symmetric_at_interior_vertices() {
        let lat = lattice::<f64>(Norm::L2, 1.5, "-3:3,-3:3");
        let g = lat.graph();
        for x in g.vertices().filter(|&x| lat.is_interior(x)) {
            for &(y, w) in g.neighbors(x) {
                let reflected: Vec<i64> = lat
                    .point(x)
                    .iter()
                    .zip(lat.point(y))
                    .map(|(a, b)| 2 * a - b)
                    .collect();
                let r = lat.vertex_at(&reflected).unwrap();
                assert_eq!(g.weight(x, r), Some(w));
            }
        }
    }
}
