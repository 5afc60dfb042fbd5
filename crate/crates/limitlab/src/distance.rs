//! Distance values: exact rationals, or certified intervals when a distance
//! is computed by truncating an infinite sum.
//!
//! Verdict-bearing comparisons are conservative: "below epsilon" means the
//! interval's upper bound is below, so a PASS never rests on unknown tail
//! mass. Exact values behave as degenerate intervals with lo = hi.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Parses "p/q" or a bare integer "p" (q > 0 after sign normalization).
pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => {
            let p: BigInt = text.parse().ok()?;
            Some(Rat::from(p))
        }
    }
}

/// Canonical "p/q" spelling, denominator always present: "1/2", "3/1", "0/1".
pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest f64; display-only, never used in verdicts.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distance {
    Exact(Rat),
    /// lo <= true value <= hi.
    Interval { lo: Rat, hi: Rat },
}

impl Distance {
    pub fn zero() -> Distance {
        Distance::Exact(Rat::zero())
    }

    pub fn exact(value: Rat) -> Distance {
        Distance::Exact(value)
    }

    pub fn interval(lo: Rat, hi: Rat) -> Distance {
        assert!(lo <= hi, "malformed interval");
        if lo == hi {
            Distance::Exact(lo)
        } else {
            Distance::Interval { lo, hi }
        }
    }

    pub fn lo(&self) -> &Rat {
        match self {
            Distance::Exact(v) => v,
            Distance::Interval { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rat {
        match self {
            Distance::Exact(v) => v,
            Distance::Interval { hi, .. } => hi,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Distance::Exact(_))
    }

    pub fn exact_value(&self) -> Option<&Rat> {
        match self {
            Distance::Exact(v) => Some(v),
            Distance::Interval { .. } => None,
        }
    }

    /// Interval sum; exact only when both operands are exact.
    pub fn add(&self, other: &Distance) -> Distance {
        match (self, other) {
            (Distance::Exact(a), Distance::Exact(b)) => Distance::Exact(a + b),
            _ => Distance::interval(self.lo() + other.lo(), self.hi() + other.hi()),
        }
    }

    /// Certified strict comparison: the hidden true value is surely < bound.
    pub fn definitely_below(&self, bound: &Rat) -> bool {
        self.hi() < bound
    }

    pub fn is_negative_certain(&self) -> bool {
        self.hi().is_negative()
    }
}

impl std::fmt::Display for Distance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Distance::Exact(v) => write!(f, "{}", rat_to_string(v)),
            Distance::Interval { lo, hi } => {
                write!(f, "[{}, {}]", rat_to_string(lo), rat_to_string(hi))
            }
        }
    }
}
