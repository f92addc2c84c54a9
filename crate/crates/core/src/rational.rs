//! Exact rationals and the extended nonnegative reals `[0, ∞]` used as
//! distance values.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Signed;
use thiserror::Error;

/// Exact rational used for every distance and constant.
pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse rational from {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p/q"` or an integer.
pub fn parse_q(s: &str) -> Result<Q, ParseRationalError> {
    let t = s.trim();
    let err = || ParseRationalError(s.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: i64 = d.trim().parse().map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| err()),
    }
}

/// Renders as an integer when the denominator is one, `p/q` otherwise.
pub fn format_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// A value of `[0, ∞]`: a finite nonnegative rational or infinity.
///
/// Ordering puts `Infinite` above every finite value; addition absorbs
/// infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dist {
    Finite(Q),
    Infinite,
}

impl Dist {
    pub const ZERO: Dist = Dist::Finite(Ratio::new_raw(0, 1));

    pub fn int(n: i64) -> Dist {
        Dist::Finite(q(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            Dist::Finite(v) => Some(*v),
            Dist::Infinite => None,
        }
    }

    /// Scales by a strictly positive rational.
    pub fn scale(self, k: Q) -> Dist {
        debug_assert!(k.is_positive());
        match self {
            Dist::Finite(v) => Dist::Finite(v * k),
            Dist::Infinite => Dist::Infinite,
        }
    }

    pub fn max(self, other: Dist) -> Dist {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Dist) -> Dist {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => a.cmp(b),
            (Dist::Finite(_), Dist::Infinite) => Ordering::Less,
            (Dist::Infinite, Dist::Finite(_)) => Ordering::Greater,
            (Dist::Infinite, Dist::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Dist {
    type Output = Dist;
    fn add(self, rhs: Dist) -> Dist {
        match (self, rhs) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Infinite,
        }
    }
}

impl Add<Q> for Dist {
    type Output = Dist;
    fn add(self, rhs: Q) -> Dist {
        self + Dist::Finite(rhs)
    }
}

impl Mul<Q> for Dist {
    type Output = Dist;
    fn mul(self, rhs: Q) -> Dist {
        self.scale(rhs)
    }
}

impl From<Q> for Dist {
    fn from(v: Q) -> Self {
        Dist::Finite(v)
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(v) => f.write_str(&format_q(v)),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Dist {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(Dist::Infinite),
            other => parse_q(other).map(Dist::Finite),
        }
    }
}
