//! Extended reals restricted to `R ∪ {+∞}`.
//!
//! Arithmetic follows the conventions used by the convexity checks:
//! `c·∞ = ∞` for `c > 0`, `0·∞ = 0`, `a + ∞ = ∞`, and every value is `<= ∞`.

use std::fmt;

use crate::scalar::Scalar;

/// A finite scalar or `+∞`. The derived ordering places `Inf` above every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub enum Ext<S> {
    Finite(S),
    Inf,
}

impl<S: Scalar> Ext<S> {
    pub fn zero() -> Self {
        Ext::Finite(S::zero())
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    pub fn finite(self) -> Option<S> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Inf => None,
        }
    }

    /// Multiplies by a nonnegative coefficient, with `0·∞ = 0`.
    pub fn scale(self, c: S) -> Self {
        debug_assert!(c >= S::zero(), "scale by negative coefficient");
        match self {
            Ext::Finite(v) => Ext::Finite(c * v),
            Ext::Inf if c.is_zero() => Ext::zero(),
            Ext::Inf => Ext::Inf,
        }
    }

    pub fn add(self, other: Self) -> Self {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
            _ => Ext::Inf,
        }
    }

    /// `self <= other` under the scalar tolerance.
    pub fn le(self, other: Self, eps: f64) -> bool {
        match (self, other) {
            (_, Ext::Inf) => true,
            (Ext::Inf, Ext::Finite(_)) => false,
            (Ext::Finite(a), Ext::Finite(b)) => a.approx_le(b, eps),
        }
    }

    /// Equality under the scalar tolerance; `∞ = ∞`.
    pub fn eq_tol(self, other: Self, eps: f64) -> bool {
        match (self, other) {
            (Ext::Inf, Ext::Inf) => true,
            (Ext::Finite(a), Ext::Finite(b)) => a.approx_eq(b, eps),
            _ => false,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Ext::Finite(v) => v.to_f64_lossy(),
            Ext::Inf => f64::INFINITY,
        }
    }

    /// Parses a decimal literal or the token `inf`.
    pub fn parse(token: &str) -> Option<Self> {
        if token.eq_ignore_ascii_case("inf") || token == "+inf" {
            Some(Ext::Inf)
        } else {
            S::parse_literal(token).map(Ext::Finite)
        }
    }
}

impl<S: Scalar> From<S> for Ext<S> {
    fn from(v: S) -> Self {
        Ext::Finite(v)
    }
}

impl<S: fmt::Display> fmt::Display for Ext<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(v) => v.fmt(f),
            Ext::Inf => f.write_str("inf"),
        }
    }
}
