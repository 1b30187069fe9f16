//! Pointwise harmonic and subharmonic checks.
//!
//! `f` is subharmonic at `x` when `f(x)·M_x <= Σ_{y~x} e(x,y)·f(y)` where
//! `M_x = Σ_{y~x} e(x,y)`. With [`Weighting::Unit`] every edge counts as
//! weight one and `M_x = deg(x)`.

use serde::Serialize;

use crate::convexity::VertexFunction;
use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{Graph, Vertex};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    Unit,
    #[default]
    Edge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeanVerdict {
    Harmonic,
    Subharmonic,
    Neither,
}

/// `f(x)` against the weighted neighborhood mean `Σ e(x,y) f(y) / M_x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanComparison<S> {
    pub vertex: Vertex,
    pub f_value: Ext<S>,
    pub weighted_sum: Ext<S>,
    pub total_weight: S,
    pub verdict: MeanVerdict,
}

impl<S: Scalar> MeanComparison<S> {
    /// The neighborhood mean, when representable exactly in `S`.
    pub fn mean(&self) -> Option<Ext<S>> {
        match self.weighted_sum {
            Ext::Inf => Some(Ext::Inf),
            Ext::Finite(s) => s.exact_div(self.total_weight).map(Ext::Finite),
        }
    }

    pub fn mean_f64(&self) -> f64 {
        self.weighted_sum.to_f64() / self.total_weight.to_f64_lossy()
    }

    pub fn is_subharmonic(&self) -> bool {
        self.verdict != MeanVerdict::Neither
    }

    pub fn is_harmonic(&self) -> bool {
        self.verdict == MeanVerdict::Harmonic
    }
}

fn value_at<S: Scalar>(g: &Graph<S>, f: &VertexFunction<S>, v: Vertex) -> Result<Ext<S>> {
    f.get(v)
        .ok_or_else(|| Error::UndefinedValue(g.name(v).to_owned()))
}

/// Compares `f(x)` with its neighborhood mean.
pub fn mean_comparison<S: Scalar>(
    g: &Graph<S>,
    f: &VertexFunction<S>,
    x: Vertex,
    weighting: Weighting,
) -> Result<MeanComparison<S>> {
    if g.degree(x) == 0 {
        return Err(Error::DegreeZero(g.name(x).to_owned()));
    }
    let f_value = value_at(g, f, x)?;
    let mut weighted_sum = Ext::zero();
    let mut total_weight = S::zero();
    for &(y, w) in g.neighbors(x) {
        let w = match weighting {
            Weighting::Unit => S::one(),
            Weighting::Edge => w,
        };
        weighted_sum = weighted_sum.add(value_at(g, f, y)?.scale(w));
        total_weight = total_weight + w;
    }
    let eps = g.tolerance();
    let scaled = f_value.scale(total_weight);
    let verdict = if scaled.eq_tol(weighted_sum, eps) {
        MeanVerdict::Harmonic
    } else if scaled.le(weighted_sum, eps) {
        MeanVerdict::Subharmonic
    } else {
        MeanVerdict::Neither
    };
    Ok(MeanComparison {
        vertex: x,
        f_value,
        weighted_sum,
        total_weight,
        verdict,
    })
}

pub fn is_subharmonic_at<S: Scalar>(
    g: &Graph<S>,
    f: &VertexFunction<S>,
    x: Vertex,
    weighting: Weighting,
) -> Result<bool> {
    Ok(mean_comparison(g, f, x, weighting)?.is_subharmonic())
}

pub fn is_harmonic_at<S: Scalar>(
    g: &Graph<S>,
    f: &VertexFunction<S>,
    x: Vertex,
    weighting: Weighting,
) -> Result<bool> {
    Ok(mean_comparison(g, f, x, weighting)?.is_harmonic())
}

/// `Σ_{y~x} e(x,y)·(f(y) − f(x))`. Any infinite value involved makes the
/// result `Inf`.
pub fn laplacian<S: Scalar>(g: &Graph<S>, f: &VertexFunction<S>, x: Vertex) -> Result<Ext<S>> {
    if g.degree(x) == 0 {
        return Err(Error::DegreeZero(g.name(x).to_owned()));
    }
    let Ext::Finite(fx) = value_at(g, f, x)? else {
        return Ok(Ext::Inf);
    };
    let mut total = S::zero();
    for &(y, w) in g.neighbors(x) {
        match value_at(g, f, y)? {
            Ext::Finite(fy) => total = total + w * (fy - fx),
            Ext::Inf => return Ok(Ext::Inf),
        }
    }
    Ok(Ext::Finite(total))
}
