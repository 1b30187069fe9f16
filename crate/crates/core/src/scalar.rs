//! Scalar types usable as edge weights, distances and function values.
//!
//! Unit-weight graphs and L1/L∞ lattices run on `i64` so that betweenness
//! equalities are decided exactly. Floating-point scalars compare under a
//! relative tolerance: `|a - b| <= eps * max(1, |a|, |b|)`.

use std::fmt::{Debug, Display};

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Default comparison tolerance for floating-point scalars.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

pub trait Scalar:
    Num + Signed + Copy + PartialOrd + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Whether arithmetic on this type is exact (tolerance is ignored).
    const EXACT: bool;

    fn approx_eq(self, other: Self, eps: f64) -> bool;

    fn approx_le(self, other: Self, eps: f64) -> bool {
        self <= other || self.approx_eq(other, eps)
    }

    /// Square root, if representable in this type.
    fn try_sqrt(self) -> Option<Self>;

    /// `self / rhs`, if the quotient is representable exactly.
    fn exact_div(self, rhs: Self) -> Option<Self>;

    /// Parses a decimal literal such as `3`, `-2`, or `0.25`.
    fn parse_literal(s: &str) -> Option<Self>;

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer fits scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

fn float_close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * 1f64.max(a.abs()).max(b.abs())
}

impl Scalar for i64 {
    const EXACT: bool = true;

    fn approx_eq(self, other: Self, _eps: f64) -> bool {
        self == other
    }

    fn try_sqrt(self) -> Option<Self> {
        if self < 0 {
            return None;
        }
        let r = (self as f64).sqrt().round() as i64;
        (r.checked_mul(r) == Some(self)).then_some(r)
    }

    fn exact_div(self, rhs: Self) -> Option<Self> {
        if rhs != 0 && self % rhs == 0 {
            Some(self / rhs)
        } else {
            None
        }
    }

    fn parse_literal(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

macro_rules! impl_float_scalar {
    ($($t:ty),*) => {
        $(
            impl Scalar for $t {
                const EXACT: bool = false;

                fn approx_eq(self, other: Self, eps: f64) -> bool {
                    float_close(self as f64, other as f64, eps)
                }

                fn try_sqrt(self) -> Option<Self> {
                    (self >= 0.0).then(|| self.sqrt())
                }

                fn exact_div(self, rhs: Self) -> Option<Self> {
                    (rhs != 0.0).then(|| self / rhs)
                }

                fn parse_literal(s: &str) -> Option<Self> {
                    s.parse::<$t>().ok().filter(|v| v.is_finite())
                }
            }
        )*
    };
}

impl_float_scalar!(f32, f64);

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn approx_eq(self, other: Self, _eps: f64) -> bool {
        self == other
    }

    fn try_sqrt(self) -> Option<Self> {
        if self < Rational64::from_integer(0) {
            return None;
        }
        let n = self.numer().try_sqrt()?;
        let d = self.denom().try_sqrt()?;
        Some(Rational64::new(n, d))
    }

    fn exact_div(self, rhs: Self) -> Option<Self> {
        (rhs != Rational64::from_integer(0)).then(|| self / rhs)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        if let Some((n, d)) = s.split_once('/') {
            let (n, d): (i64, i64) = (n.parse().ok()?, d.parse().ok()?);
            return (d != 0).then(|| Rational64::new(n, d));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits = format!("{int_part}{frac_part}");
        if !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let numer: i64 = digits.parse().ok()?;
        let denom = 10i64.checked_pow(frac_part.len() as u32)?;
        let value = Rational64::new(numer, denom);
        Some(if neg { -value } else { value })
    }
}
