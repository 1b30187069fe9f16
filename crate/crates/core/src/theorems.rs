//! Hypothesis checkers and empirical verification of the implications
//! relating convexity and subharmonicity.
//!
//! Every verification produces a [`ClaimReport`] counting how many points
//! were examined and how many of them satisfied the antecedent. A claim whose
//! antecedent never fires is reported as [`ClaimVerdict::Vacuous`] rather
//! than verified.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::convexity::{
    distance_function, is_convex_fn, is_convex_fn_at, is_convex_set, Check, VertexFunction, VertexSet,
};
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::generators;
use crate::graph::{Graph, Vertex};
use crate::group_lattice::{
    has_nearest_neighbor_property, is_midpoint_convex, is_midpoint_convex_at, point_id, GroupLattice,
};
use crate::io;
use crate::metric::ShortestPath;
use crate::scalar::Scalar;
use crate::subharmonic::{mean_comparison, MeanComparison, Weighting};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClaimId {
    /// Convex at a triangle-free vertex of degree > 1 implies subharmonic.
    #[serde(rename = "thm1")]
    Thm1,
    /// Convex at a vertex whose neighbors pair off non-adjacently implies
    /// subharmonic.
    #[serde(rename = "thm2")]
    Thm2,
    /// `d(·, F)` convex under the graph metric implies `F` convex.
    #[serde(rename = "thm3")]
    Thm3,
    /// Midpoint convex implies weighted subharmonic on norm-compatible graphs.
    #[serde(rename = "thm4-cvx-sub")]
    Thm4CvxSub,
    /// On connected 2-regular triangle-free graphs, convex-at iff
    /// subharmonic-at.
    #[serde(rename = "lem-deg2")]
    LemDeg2,
    /// `‖· − a‖` is midpoint convex.
    #[serde(rename = "lem-dist-pt")]
    LemDistPt,
    /// `d(·, F)` midpoint convex implies `F` convex.
    #[serde(rename = "prop-dist-cvx")]
    PropDistCvx,
    /// Convex `F` with the nearest-neighbor property has a midpoint convex,
    /// subharmonic distance function.
    #[serde(rename = "prop-nn")]
    PropNn,
}

impl ClaimId {
    pub const ALL: [ClaimId; 8] = [
        ClaimId::Thm1,
        ClaimId::Thm2,
        ClaimId::Thm3,
        ClaimId::Thm4CvxSub,
        ClaimId::LemDeg2,
        ClaimId::LemDistPt,
        ClaimId::PropDistCvx,
        ClaimId::PropNn,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::Thm1 => "thm1",
            ClaimId::Thm2 => "thm2",
            ClaimId::Thm3 => "thm3",
            ClaimId::Thm4CvxSub => "thm4-cvx-sub",
            ClaimId::LemDeg2 => "lem-deg2",
            ClaimId::LemDistPt => "lem-dist-pt",
            ClaimId::PropDistCvx => "prop-dist-cvx",
            ClaimId::PropNn => "prop-nn",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown claim id `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimVerdict {
    Verified,
    Vacuous,
    Refuted,
}

impl fmt::Display for ClaimVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimVerdict::Verified => "verified",
            ClaimVerdict::Vacuous => "vacuous",
            ClaimVerdict::Refuted => "refuted",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub vertex: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim: ClaimId,
    pub instance: String,
    pub checked: usize,
    pub hypothesis_fired: usize,
    pub verdict: ClaimVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ClaimReport {
    pub fn new(claim: ClaimId, instance: impl Into<String>) -> Self {
        Self {
            claim,
            instance: instance.into(),
            checked: 0,
            hypothesis_fired: 0,
            verdict: ClaimVerdict::Vacuous,
            witness: None,
        }
    }

    fn settle(&mut self) {
        self.verdict = if self.witness.is_some() {
            ClaimVerdict::Refuted
        } else if self.hypothesis_fired == 0 {
            ClaimVerdict::Vacuous
        } else {
            ClaimVerdict::Verified
        };
    }

    fn record(&mut self, fired: bool) {
        self.checked += 1;
        if fired {
            self.hypothesis_fired += 1;
        }
        self.settle();
    }

    fn refute(&mut self, witness: Witness) {
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
        self.settle();
    }

    /// Accumulates another report of the same claim; the first witness wins.
    pub fn merge(&mut self, other: ClaimReport) {
        self.checked += other.checked;
        self.hypothesis_fired += other.hypothesis_fired;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.settle();
    }

    pub fn is_refuted(&self) -> bool {
        self.verdict == ClaimVerdict::Refuted
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} on {} (checked {}, hypothesis fired {})",
            self.claim, self.verdict, self.instance, self.checked, self.hypothesis_fired
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness at {}: {}", w.vertex, w.detail)?;
            if let Some(func) = &w.function {
                write!(f, "\n  f = {}", func.trim_end().replace('\n', ", "))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    TriangleFree,
    Pairing,
    Midpoint,
}

impl Hypothesis {
    pub fn claim(self) -> ClaimId {
        match self {
            Hypothesis::TriangleFree => ClaimId::Thm1,
            Hypothesis::Pairing => ClaimId::Thm2,
            Hypothesis::Midpoint => ClaimId::Thm4CvxSub,
        }
    }
}

/// `deg(z) > 1` and `z` lies on no triangle.
pub fn triangle_free_hypothesis<S: Scalar>(g: &Graph<S>, z: Vertex) -> bool {
    g.degree(z) > 1 && !g.in_triangle(z)
}

/// A partition of `N(z)` into pairs of non-adjacent vertices, if one
/// exists. Found by backtracking.
pub fn pairing_hypothesis<S: Scalar>(g: &Graph<S>, z: Vertex) -> Option<Vec<(Vertex, Vertex)>> {
    let nbrs: Vec<Vertex> = g.neighbors(z).iter().map(|&(v, _)| v).collect();
    if nbrs.len() % 2 == 1 {
        return None;
    }
    let mut used = vec![false; nbrs.len()];
    let mut pairs = Vec::with_capacity(nbrs.len() / 2);
    extend_pairing(g, &nbrs, &mut used, &mut pairs).then_some(pairs)
}

fn extend_pairing<S: Scalar>(
    g: &Graph<S>,
    nbrs: &[Vertex],
    used: &mut [bool],
    pairs: &mut Vec<(Vertex, Vertex)>,
) -> bool {
    let Some(first) = used.iter().position(|u| !u) else {
        return true;
    };
    used[first] = true;
    for other in first + 1..nbrs.len() {
        if used[other] || g.has_edge(nbrs[first], nbrs[other]) {
            continue;
        }
        used[other] = true;
        pairs.push((nbrs[first], nbrs[other]));
        if extend_pairing(g, nbrs, used, pairs) {
            return true;
        }
        pairs.pop();
        used[other] = false;
    }
    used[first] = false;
    false
}

/// Something the verifier can run on.
#[derive(Clone, Copy)]
pub enum Instance<'a, S> {
    Graph(&'a Graph<S>),
    Lattice(&'a GroupLattice<S>),
}

impl<S: Scalar> Instance<'_, S> {
    pub fn graph(&self) -> &Graph<S> {
        match self {
            Instance::Graph(g) => g,
            Instance::Lattice(l) => l.graph(),
        }
    }
}

fn describe_graph<S: Scalar>(g: &Graph<S>) -> String {
    format!("graph |V|={} |E|={}", g.len(), g.edge_count())
}

fn describe_lattice<S: Scalar>(lat: &GroupLattice<S>) -> String {
    let spec = lat.spec();
    format!("lattice {} r={} window {}", spec.norm, spec.radius, spec.window)
}

fn mean_detail<S: Scalar>(cmp: &MeanComparison<S>) -> String {
    format!(
        "f = {} exceeds neighborhood mean {} (M = {})",
        cmp.f_value,
        cmp.mean().map_or_else(|| cmp.mean_f64().to_string(), |m| m.to_string()),
        cmp.total_weight
    )
}

/// The pointwise graph implications on one unit-weight graph, with the
/// per-vertex hypotheses computed once.
pub struct GraphClaims<'g, S> {
    graph: &'g Graph<S>,
    metric: ShortestPath<'g, S>,
    triangle_free: Vec<bool>,
    pairable: Vec<bool>,
}

impl<'g, S: Scalar> GraphClaims<'g, S> {
    pub fn new(graph: &'g Graph<S>) -> Result<Self> {
        if !graph.is_unit_weight() {
            return Err(Error::Unsupported(
                "pointwise graph claims need unit edge weights".into(),
            ));
        }
        let metric = ShortestPath::new(graph);
        for v in graph.vertices() {
            metric.row(v);
        }
        Ok(Self {
            graph,
            metric,
            triangle_free: graph.vertices().map(|z| triangle_free_hypothesis(graph, z)).collect(),
            pairable: graph
                .vertices()
                .map(|z| graph.degree(z) > 0 && pairing_hypothesis(graph, z).is_some())
                .collect(),
        })
    }

    pub fn metric(&self) -> &ShortestPath<'g, S> {
        &self.metric
    }

    pub fn hypothesis_holds(&self, hypothesis: Hypothesis, z: Vertex) -> bool {
        match hypothesis {
            Hypothesis::TriangleFree => self.triangle_free[z.0],
            Hypothesis::Pairing => self.pairable[z.0],
            Hypothesis::Midpoint => false,
        }
    }

    /// First vertex where `f` is convex but not subharmonic, restricted to
    /// vertices satisfying `restrict` when given.
    pub fn violation(
        &self,
        f: &VertexFunction<S>,
        restrict: Option<Hypothesis>,
    ) -> Option<(Vertex, MeanComparison<S>)> {
        self.graph.vertices().find_map(|z| {
            if self.graph.degree(z) == 0 || restrict.is_some_and(|h| !self.hypothesis_holds(h, z)) {
                return None;
            }
            if !is_convex_fn_at(&self.metric, f, z).passed() {
                return None;
            }
            let cmp = mean_comparison(self.graph, f, z, Weighting::Unit).ok()?;
            (!cmp.is_subharmonic()).then_some((z, cmp))
        })
    }

    pub fn check(&self, f: &VertexFunction<S>, hypothesis: Hypothesis) -> Result<ClaimReport> {
        if hypothesis == Hypothesis::Midpoint {
            return Err(Error::Unsupported(
                "the midpoint hypothesis needs a lattice instance".into(),
            ));
        }
        let mut report = ClaimReport::new(hypothesis.claim(), describe_graph(self.graph));
        for z in self.graph.vertices() {
            let fired = self.hypothesis_holds(hypothesis, z)
                && is_convex_fn_at(&self.metric, f, z).passed();
            report.record(fired);
            if !fired {
                continue;
            }
            let cmp = mean_comparison(self.graph, f, z, Weighting::Unit)?;
            if !cmp.is_subharmonic() {
                report.refute(Witness {
                    vertex: self.graph.name(z).to_owned(),
                    detail: format!("convex at vertex but {}", mean_detail(&cmp)),
                    function: Some(io::write_function(self.graph, f)),
                });
            }
        }
        Ok(report)
    }
}

/// For every vertex where `hypothesis` holds and `f` is convex (resp.
/// midpoint convex) there, checks that `f` is subharmonic there.
///
/// Graph instances use the shortest-path metric and the unweighted mean;
/// lattice instances with [`Hypothesis::Midpoint`] check the weighted mean
/// at interior vertices.
pub fn verify_pointwise_implication<S: Scalar>(
    instance: Instance<'_, S>,
    f: &VertexFunction<S>,
    hypothesis: Hypothesis,
) -> Result<ClaimReport> {
    match (instance, hypothesis) {
        (Instance::Lattice(lat), Hypothesis::Midpoint) => {
            let g = lat.graph();
            let mut report = ClaimReport::new(ClaimId::Thm4CvxSub, describe_lattice(lat));
            for x in g.vertices().filter(|&x| lat.is_interior(x)) {
                let fired = is_midpoint_convex_at(lat, f, x).passed();
                report.record(fired);
                if !fired {
                    continue;
                }
                let cmp = mean_comparison(g, f, x, Weighting::Edge)?;
                if !cmp.is_subharmonic() {
                    report.refute(Witness {
                        vertex: g.name(x).to_owned(),
                        detail: format!("midpoint convex but {}", mean_detail(&cmp)),
                        function: Some(io::write_function(g, f)),
                    });
                }
            }
            Ok(report)
        }
        (instance, hypothesis) => GraphClaims::new(instance.graph())?.check(f, hypothesis),
    }
}

/// If `d(·, F)` is convex (graph instance, shortest-path metric) or
/// midpoint convex (lattice instance), checks that `F` is convex.
pub fn verify_dist_convex_implies_set_convex<S: Scalar>(
    instance: Instance<'_, S>,
    set: &VertexSet,
) -> Result<ClaimReport> {
    if set.is_empty() {
        return Err(Error::Unsupported("the set F must be nonempty".into()));
    }
    let (claim, description, fired, convex) = match instance {
        Instance::Graph(g) => {
            let m = ShortestPath::new(g);
            let d = distance_function(&m, set);
            (ClaimId::Thm3, describe_graph(g), is_convex_fn(&m, &d), is_convex_set(&m, set))
        }
        Instance::Lattice(lat) => {
            let m = lat.metric();
            let d = distance_function(&m, set);
            (
                ClaimId::PropDistCvx,
                describe_lattice(lat),
                is_midpoint_convex(lat, &d),
                is_convex_set(&m, set),
            )
        }
    };
    let g = instance.graph();
    let mut report = ClaimReport::new(claim, description);
    report.record(fired);
    if fired && !convex {
        report.refute(Witness {
            vertex: set_label(g, set),
            detail: "distance function convex but set not convex".into(),
            function: None,
        });
    }
    Ok(report)
}

fn set_label<S: Scalar>(g: &Graph<S>, set: &VertexSet) -> String {
    format!("{{{}}}", set.iter().map(|v| g.name(v)).join(","))
}

/// If `F` is convex under the norm metric and has the nearest-neighbor
/// property, checks that `d(·, F)` is midpoint convex and weighted
/// subharmonic at every interior vertex.
pub fn verify_nn_implies_dist_midpoint_convex<S: Scalar>(
    lat: &GroupLattice<S>,
    set: &VertexSet,
) -> Result<ClaimReport> {
    if set.is_empty() {
        return Err(Error::Unsupported("the set F must be nonempty".into()));
    }
    let m = lat.metric();
    let g = lat.graph();
    let fired = is_convex_set(&m, set) && has_nearest_neighbor_property(lat, set).passed();
    let mut report = ClaimReport::new(ClaimId::PropNn, describe_lattice(lat));
    report.record(fired);
    if !fired {
        return Ok(report);
    }
    let d = distance_function(&m, set);
    for x in g.vertices().filter(|&x| lat.is_interior(x)) {
        let detail = match is_midpoint_convex_at(lat, &d, x) {
            Check::Fail(w) => Some(format!(
                "d(·,F) not midpoint convex: 2d = {} > {} for z = {}",
                w.lhs,
                w.rhs,
                point_id(&w.z)
            )),
            Check::Pass => {
                let cmp = mean_comparison(g, &d, x, Weighting::Edge)?;
                (!cmp.is_subharmonic()).then(|| format!("d(·,F) {}", mean_detail(&cmp)))
            }
        };
        if let Some(detail) = detail {
            report.refute(Witness {
                vertex: g.name(x).to_owned(),
                detail: format!("F = {}: {detail}", set_label(g, set)),
                function: None,
            });
            break;
        }
    }
    Ok(report)
}

/// Checks that `‖· − a‖` is midpoint convex at every window vertex.
pub fn verify_dist_to_point_midpoint_convex<S: Scalar>(
    lat: &GroupLattice<S>,
    a: &[i64],
) -> Result<ClaimReport> {
    let f = lat.norm_distance_to(a)?;
    let g = lat.graph();
    let mut report = ClaimReport::new(
        ClaimId::LemDistPt,
        format!("{} a={}", describe_lattice(lat), point_id(a)),
    );
    for x in g.vertices() {
        report.record(true);
        if let Check::Fail(w) = is_midpoint_convex_at(lat, &f, x) {
            report.refute(Witness {
                vertex: g.name(x).to_owned(),
                detail: format!("2f = {} > {} for z = {}", w.lhs, w.rhs, point_id(&w.z)),
                function: None,
            });
        }
    }
    Ok(report)
}

/// Connected, 2-regular and triangle-free.
pub fn degree_two_hypothesis<S: Scalar>(g: &Graph<S>) -> bool {
    !g.is_empty()
        && g.is_connected()
        && g.vertices().all(|v| g.degree(v) == 2 && !g.in_triangle(v))
}

/// On a graph satisfying [`degree_two_hypothesis`], checks that `f` is
/// convex at each vertex exactly when it is subharmonic there.
pub fn verify_degree_two_equivalence<S: Scalar>(
    g: &Graph<S>,
    f: &VertexFunction<S>,
) -> Result<ClaimReport> {
    let mut report = ClaimReport::new(ClaimId::LemDeg2, describe_graph(g));
    if !degree_two_hypothesis(g) {
        report.checked = g.len();
        return Ok(report);
    }
    let m = ShortestPath::new(g);
    check_degree_two(g, &m, f, &mut report)?;
    Ok(report)
}

fn check_degree_two<S: Scalar>(
    g: &Graph<S>,
    m: &ShortestPath<'_, S>,
    f: &VertexFunction<S>,
    report: &mut ClaimReport,
) -> Result<()> {
    for z in g.vertices() {
        report.record(true);
        let convex = is_convex_fn_at(m, f, z);
        let cmp = mean_comparison(g, f, z, Weighting::Unit)?;
        if convex.passed() != cmp.is_subharmonic() {
            let detail = match convex.witness() {
                Some(w) => format!(
                    "subharmonic (f = {}, mean {}) but not convex: pair ({}, {}) gives {} > {}",
                    cmp.f_value,
                    cmp.mean_f64(),
                    g.name(w.x),
                    g.name(w.y),
                    w.lhs(),
                    w.rhs()
                ),
                None => format!("convex but {}", mean_detail(&cmp)),
            };
            report.refute(Witness {
                vertex: g.name(z).to_owned(),
                detail,
                function: Some(io::write_function(g, f)),
            });
        }
    }
    Ok(())
}

/// Every function `0..n → values`, in lexicographic order of value index.
pub fn all_functions<S: Scalar>(n: usize, values: &[i64]) -> impl Iterator<Item = VertexFunction<S>> + '_ {
    (0..n)
        .map(|_| values.iter().copied())
        .multi_cartesian_product()
        .map(|vals| VertexFunction::from_values(vals.into_iter().map(|v| Ext::Finite(S::from_int(v)))))
}

/// Function samplers.
pub mod sampling {
    use super::*;

    /// Independent uniform integers in `[lo, hi]`.
    pub fn uniform_int<S: Scalar, R: Rng + ?Sized>(n: usize, lo: i64, hi: i64, rng: &mut R) -> VertexFunction<S> {
        VertexFunction::from_values((0..n).map(|_| Ext::Finite(S::from_int(rng.gen_range(lo..=hi)))))
    }

    /// Indicator of a random set, each vertex included with probability ½.
    pub fn random_indicator<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> VertexFunction<S> {
        VertexFunction::from_values((0..n).map(|_| if rng.gen_bool(0.5) { Ext::zero() } else { Ext::Inf }))
    }

    /// `max_k (⟨c_k, x⟩ + b_k)` with `k <= 4`, integer `c ∈ [−3,3]ⁿ`,
    /// `b ∈ [−5,5]`. Midpoint convex by construction.
    pub fn max_affine<S: Scalar, R: Rng + ?Sized>(lat: &GroupLattice<S>, rng: &mut R) -> VertexFunction<S> {
        let dim = lat.spec().dim();
        let forms: Vec<(Vec<i64>, i64)> = (0..rng.gen_range(1..=4))
            .map(|_| ((0..dim).map(|_| rng.gen_range(-3..=3)).collect(), rng.gen_range(-5..=5)))
            .collect();
        lat.function(|p| {
            let best = forms
                .iter()
                .map(|(c, b)| c.iter().zip(p).map(|(ci, pi)| ci * pi).sum::<i64>() + b)
                .max()
                .expect("at least one affine form");
            Ext::Finite(S::from_int(best))
        })
    }
}

/// Runs the pointwise implication for `hypothesis` over every connected
/// graph with at most `max_n` vertices and every function into `values`.
pub fn exhaustive_pointwise_suite(max_n: usize, values: &[i64], hypothesis: Hypothesis) -> ClaimReport {
    let graphs: Vec<Graph<i64>> = generators::connected_graphs(max_n);
    let reports: Vec<ClaimReport> = graphs
        .par_iter()
        .map(|g| {
            let claims = GraphClaims::new(g).expect("generated graphs have unit weights");
            let mut report = ClaimReport::new(hypothesis.claim(), describe_graph(g));
            for f in all_functions(g.len(), values) {
                report.merge(claims.check(&f, hypothesis).expect("total functions"));
            }
            report
        })
        .collect();
    let mut total = ClaimReport::new(
        hypothesis.claim(),
        format!("all connected graphs with <= {max_n} vertices, values {values:?}"),
    );
    for r in reports {
        total.merge(r);
    }
    total
}

/// Midpoint-convex-implies-subharmonic suite: `samples` max-of-affine functions on one lattice.
pub fn midpoint_subharmonic_suite<S: Scalar>(lat: &GroupLattice<S>, samples: usize, seed: u64) -> Result<ClaimReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = ClaimReport::new(
        ClaimId::Thm4CvxSub,
        format!("{} with {samples} max-of-affine functions", describe_lattice(lat)),
    );
    for _ in 0..samples {
        let f = sampling::max_affine(lat, &mut rng);
        total.merge(verify_pointwise_implication(Instance::Lattice(lat), &f, Hypothesis::Midpoint)?);
    }
    Ok(total)
}

/// Distance-to-point suite over `samples` random centers near the window.
pub fn dist_to_point_suite<S: Scalar>(lat: &GroupLattice<S>, samples: usize, seed: u64) -> Result<ClaimReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = ClaimReport::new(
        ClaimId::LemDistPt,
        format!("{} with {samples} centers", describe_lattice(lat)),
    );
    for _ in 0..samples {
        let a: Vec<i64> = lat
            .spec()
            .window
            .ranges()
            .iter()
            .map(|&(lo, hi)| rng.gen_range(lo - 2..=hi + 2))
            .collect();
        total.merge(verify_dist_to_point_midpoint_convex(lat, &a)?);
    }
    Ok(total)
}

/// Set claims (`thm3`, `prop-dist-cvx`, `prop-nn`) over every nonempty
/// subset of a window of at most 16 vertices.
pub fn set_sweep_suite<S: Scalar>(claim: ClaimId, lat: &GroupLattice<S>) -> Result<ClaimReport> {
    let n = lat.len();
    if n > 16 {
        return Err(Error::TooManyVertices { limit: 16, actual: n });
    }
    let mut total = ClaimReport::new(claim, format!("{} all nonempty subsets", describe_lattice(lat)));
    for mask in 1..1u64 << n {
        let set = VertexSet::from_mask(n, mask);
        let report = match claim {
            ClaimId::Thm3 => verify_dist_convex_implies_set_convex(Instance::Graph(lat.graph()), &set)?,
            ClaimId::PropDistCvx => verify_dist_convex_implies_set_convex(Instance::Lattice(lat), &set)?,
            ClaimId::PropNn => verify_nn_implies_dist_midpoint_convex(lat, &set)?,
            other => return Err(Error::Unsupported(format!("{other} is not a set claim"))),
        };
        total.merge(report);
    }
    Ok(total)
}

/// Degree-two suite: every function into `values` on each cycle `C_n`.
pub fn degree_two_suite(cycle_lengths: impl IntoIterator<Item = usize>, values: &[i64]) -> Result<ClaimReport> {
    let lengths: Vec<usize> = cycle_lengths.into_iter().collect();
    let mut total = ClaimReport::new(
        ClaimId::LemDeg2,
        format!("cycles {lengths:?}, all functions into {values:?}"),
    );
    for n in lengths {
        let g: Graph<i64> = generators::cycle(n);
        if !degree_two_hypothesis(&g) {
            continue;
        }
        let m = ShortestPath::new(&g);
        let mut report = ClaimReport::new(ClaimId::LemDeg2, describe_graph(&g));
        for f in all_functions(n, values) {
            check_degree_two(&g, &m, &f, &mut report)?;
        }
        total.merge(report);
    }
    Ok(total)
}

const REJECTION_ATTEMPTS: usize = 100_000;

/// Graph families for [`search_counterexample`].
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Grid(usize, usize),
    TriangularTiling(usize, usize),
    /// Connected `G(n, p)`.
    Random { n: usize, p: f64, seed: u64 },
    /// Connected `G(n, p)` conditioned on no triangles and min degree 2.
    /// Gives up after a fixed number of rejected draws.
    TriangleFreeMinDegree2 { n: usize, p: f64, seed: u64 },
    /// Every connected graph with at most `max_n` vertices, up to isomorphism.
    AllConnected { max_n: usize },
}

impl Family {
    fn graphs(&self) -> Box<dyn Iterator<Item = Graph<i64>>> {
        match *self {
            Family::Cycle(n) => Box::new(std::iter::once(generators::cycle(n))),
            Family::Path(n) => Box::new(std::iter::once(generators::path(n))),
            Family::Complete(n) => Box::new(std::iter::once(generators::complete(n))),
            Family::Grid(w, h) => Box::new(std::iter::once(generators::grid(w, h))),
            Family::TriangularTiling(w, h) => {
                Box::new(std::iter::once(generators::triangular_tiling(w, h).0))
            }
            Family::Random { n, p, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Box::new(std::iter::repeat_with(move || generators::random_connected(n, p, &mut rng)))
            }
            Family::TriangleFreeMinDegree2 { n, p, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Box::new(
                    std::iter::repeat_with(move || generators::random_connected::<i64, _>(n, p, &mut rng))
                        .take(REJECTION_ATTEMPTS)
                        .filter(|g| g.vertices().all(|v| triangle_free_hypothesis(g, v))),
                )
            }
            Family::AllConnected { max_n } => Box::new(generators::connected_graphs(max_n).into_iter()),
        }
    }
}

/// Function samplers for [`search_counterexample`].
#[derive(Debug, Clone, PartialEq)]
pub enum Sampler {
    Constant,
    /// `count` functions with independent uniform values in `[lo, hi]`.
    UniformInt { lo: i64, hi: i64, count: usize, seed: u64 },
    /// `d(·, a)` for every vertex `a`.
    Distance,
    /// `count` indicators of random sets.
    Indicator { count: usize, seed: u64 },
    /// Every function into the given values.
    Exhaustive(Vec<i64>),
}

impl Sampler {
    fn functions<'a>(&'a self, g: &'a Graph<i64>) -> Box<dyn Iterator<Item = VertexFunction<i64>> + 'a> {
        let n = g.len();
        match self {
            Sampler::Constant => Box::new(std::iter::once(VertexFunction::constant(n, Ext::Finite(1)))),
            Sampler::UniformInt { lo, hi, count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed ^ n as u64);
                Box::new((0..*count).map(move |_| sampling::uniform_int(n, *lo, *hi, &mut rng)))
            }
            Sampler::Distance => Box::new(g.vertices().map(move |a| {
                let m = ShortestPath::new(g);
                distance_function(&m, &VertexSet::from_vertices(n, [a]))
            })),
            Sampler::Indicator { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed ^ n as u64);
                Box::new((0..*count).map(move |_| sampling::random_indicator(n, &mut rng)))
            }
            Sampler::Exhaustive(values) => Box::new(all_functions(n, values)),
        }
    }
}

/// A graph, function and vertex where the function is convex but not
/// subharmonic, in the text formats of [`crate::io`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub graph: String,
    pub function: String,
    pub vertex: String,
    pub f_value: String,
    pub neighborhood_mean: f64,
}

/// Searches `(graph, function)` instances in enumeration order for a vertex
/// where the function is convex but not subharmonic. With `restrict`, only
/// vertices satisfying that hypothesis count. At most `budget` instances
/// are examined.
pub fn search_counterexample(
    family: &Family,
    sampler: &Sampler,
    restrict: Option<Hypothesis>,
    budget: usize,
) -> Result<Option<Counterexample>> {
    if restrict == Some(Hypothesis::Midpoint) {
        return Err(Error::Unsupported("search restricts to graph hypotheses only".into()));
    }
    let mut remaining = budget;
    for g in family.graphs() {
        if remaining == 0 {
            break;
        }
        let claims = GraphClaims::new(&g)?;
        for f in sampler.functions(&g) {
            if remaining == 0 {
                break;
            }
            remaining -= 1;
            if let Some((z, cmp)) = claims.violation(&f, restrict) {
                return Ok(Some(Counterexample {
                    graph: io::write_graph(&g),
                    function: io::write_function(&g, &f),
                    vertex: g.name(z).to_owned(),
                    f_value: cmp.f_value.to_string(),
                    neighborhood_mean: cmp.mean_f64(),
                }));
            }
        }
    }
    Ok(None)
}

/// Picks `count` distinct random subsets for sweeps on larger windows.
pub fn random_subsets<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<VertexSet> {
    let mut all: Vec<Vertex> = (0..n).map(Vertex).collect();
    (0..count)
        .map(|_| {
            all.shuffle(rng);
            let k = rng.gen_range(1..=n.max(1));
            VertexSet::from_vertices(n, all[..k.min(n)].iter().copied())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_lattice::{build_lattice, GroupSpec, Norm};

    fn c4() -> Graph<i64> {
        io::parse_graph("e a x\ne x y\ne y z\ne z a\n").unwrap()
    }

    fn c4_dist_a() -> VertexFunction<i64> {
        VertexFunction::from_values([0, 1, 2, 1].map(Ext::Finite))
    }

    #[test]
    fn triangle_free_examples() {
        let grid: Graph<i64> = generators::grid(5, 5);
        assert!(triangle_free_hypothesis(&grid, grid.vertex("(2,2)").unwrap()));
        let (tri, interior) = generators::triangular_tiling::<i64>(5, 5);
        assert!(interior.iter().all(|v| !triangle_free_hypothesis(&tri, v)));
        let p: Graph<i64> = generators::path(3);
        assert!(!triangle_free_hypothesis(&p, Vertex(0)));
    }

    #[test]
    fn pairing_examples() {
        let g = c4();
        let pairs = pairing_hypothesis(&g, g.vertex("x").unwrap()).unwrap();
        assert_eq!(pairs, vec![(g.vertex("a").unwrap(), g.vertex("y").unwrap())]);

        let (tri, interior) = generators::triangular_tiling::<i64>(5, 5);
        for v in interior.iter() {
            let pairs = pairing_hypothesis(&tri, v).unwrap();
            assert_eq!(pairs.len(), 3);
            assert!(pairs.iter().all(|&(a, b)| !tri.has_edge(a, b)));
        }

        let k3: Graph<i64> = generators::complete(3);
        assert!(pairing_hypothesis(&k3, Vertex(0)).is_none());
        let star = io::parse_graph::<i64>("e c a\ne c b\ne c d\n").unwrap();
        assert!(pairing_hypothesis(&star, star.vertex("c").unwrap()).is_none());
    }

    #[test]
    fn pairing_needs_backtracking() {
        // neighbors 1..4 of 0; 1 is adjacent to 2 so the pairing must avoid (1,2)
        // while greedy (1,3) would strand (2,4) adjacent.
        let g = io::parse_graph::<i64>("e 0 1\ne 0 2\ne 0 3\ne 0 4\ne 1 2\ne 2 4\n").unwrap();
        let pairs = pairing_hypothesis(&g, g.vertex("0").unwrap()).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|&(a, b)| !g.has_edge(a, b)));
    }

    #[test]
    fn c4_distance_function_is_verified() {
        let g = c4();
        let r = verify_pointwise_implication(Instance::Graph(&g), &c4_dist_a(), Hypothesis::TriangleFree).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);
        assert_eq!(r.checked, 4);
        assert_eq!(r.hypothesis_fired, 3);
    }

    #[test]
    fn constants_verify_everywhere() {
        let g = c4();
        let f = VertexFunction::constant(4, Ext::Finite(2));
        for h in [Hypothesis::TriangleFree, Hypothesis::Pairing] {
            let r = verify_pointwise_implication(Instance::Graph(&g), &f, h).unwrap();
            assert_eq!(r.verdict, ClaimVerdict::Verified);
        }
        let lat = build_lattice::<i64>(GroupSpec::new(Norm::L1, 1.0, "-2:2,-2:2".parse().unwrap())).unwrap();
        let f = VertexFunction::constant(lat.len(), Ext::Finite(2));
        let r = verify_pointwise_implication(Instance::Lattice(&lat), &f, Hypothesis::Midpoint).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);
        assert!(verify_pointwise_implication(Instance::Graph(&g), &f, Hypothesis::Midpoint).is_err());
    }

    #[test]
    fn l1_norm_on_9x9_window() {
        let lat = build_lattice::<i64>(GroupSpec::new(Norm::L1, 1.0, "-4:4,-4:4".parse().unwrap())).unwrap();
        let f = lat.norm_distance_to(&[0, 0]).unwrap();
        let r = verify_pointwise_implication(Instance::Lattice(&lat), &f, Hypothesis::Midpoint).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);
        assert_eq!(r.checked, 49);
        assert_eq!(r.hypothesis_fired, 49);
        let at = lat.vertex_at(&[1, 0]).unwrap();
        let cmp = mean_comparison(lat.graph(), &f, at, Weighting::Edge).unwrap();
        assert_eq!((cmp.weighted_sum, cmp.total_weight), (Ext::Finite(6), 4));
    }

    #[test]
    fn distance_set_claims() {
        let g = c4();
        let a = VertexSet::from_vertices(4, [g.vertex("a").unwrap()]);
        let r = verify_dist_convex_implies_set_convex(Instance::Graph(&g), &a).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Vacuous);
        let r = verify_dist_convex_implies_set_convex(Instance::Graph(&g), &VertexSet::full(4)).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);

        let lat = build_lattice::<i64>(GroupSpec::new(Norm::L1, 1.0, "-5:5".parse().unwrap())).unwrap();
        let set = |ps: &[i64]| VertexSet::from_vertices(lat.len(), ps.iter().map(|&p| lat.vertex_at(&[p]).unwrap()));
        let r = verify_dist_convex_implies_set_convex(Instance::Lattice(&lat), &set(&[0, 1])).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);

        let r = verify_nn_implies_dist_midpoint_convex(&lat, &set(&[0])).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);
        let r = verify_nn_implies_dist_midpoint_convex(&lat, &set(&[-1, 1])).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Vacuous);
        let r = verify_nn_implies_dist_midpoint_convex(&lat, &VertexSet::full(lat.len())).unwrap();
        assert_eq!(r.verdict, ClaimVerdict::Verified);
        assert!(verify_nn_implies_dist_midpoint_convex(&lat, &VertexSet::empty(lat.len())).is_err());
    }

    #[test]
    fn search_examples() {
        // d(·,a) on C4 is neither convex nor subharmonic at y, and every C4
        // vertex satisfies the triangle-free hypothesis, so nothing turns up.
        assert_eq!(
            search_counterexample(&Family::Cycle(4), &Sampler::Distance, None, 100).unwrap(),
            None
        );
        // Endpoints of a path have degree one: d(·,0) on P3 is vacuously
        // convex at vertex 2 but 2 > 1.
        let hit = search_counterexample(&Family::Path(3), &Sampler::Distance, None, 100)
            .unwrap()
            .unwrap();
        assert_eq!(hit.vertex, "2");
        assert_eq!(hit.f_value, "2");
        assert_eq!(hit.function, "0 0\n1 1\n2 2\n");
        assert_eq!(hit.neighborhood_mean, 1.0);

        let family = Family::TriangleFreeMinDegree2 { n: 7, p: 0.4, seed: 3 };
        let sampler = Sampler::UniformInt { lo: -3, hi: 3, count: 20, seed: 1 };
        assert_eq!(
            search_counterexample(&family, &sampler, Some(Hypothesis::TriangleFree), 200).unwrap(),
            None
        );
        assert_eq!(
            search_counterexample(&Family::Complete(2), &Sampler::Constant, None, 10).unwrap(),
            None
        );
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), c.as_str());
        }
        assert!("thm9".parse::<ClaimId>().is_err());
    }

    #[test]
    fn merge_keeps_first_witness() {
        let mut a = ClaimReport::new(ClaimId::Thm1, "a");
        a.record(true);
        let mut b = ClaimReport::new(ClaimId::Thm1, "b");
        b.record(true);
        b.refute(Witness { vertex: "v".into(), detail: "first".into(), function: None });
        let mut c = b.clone();
        c.witness.as_mut().unwrap().detail = "second".into();
        a.merge(b);
        a.merge(c);
        assert_eq!(a.verdict, ClaimVerdict::Refuted);
        assert_eq!(a.witness.unwrap().detail, "first");
        assert_eq!(a.checked, 3);
    }
}
