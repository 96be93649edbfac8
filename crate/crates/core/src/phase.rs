//! Phases, either as exact fractions of a full turn or as float radians.
//!
//! All exact phases are kept reduced modulo one turn, so `Turn::new(5, 4)` and
//! `Turn::new(1, 4)` compare equal. Float phases live in `[0, 2π)`.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Map any real angle into `[0, 2π)`.
pub fn wrap_radians(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if r >= TAU || r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = wrap_radians(a - b);
    d.min(TAU - d)
}

/// An exact phase `2π · num / den` with `0 ≤ num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTurn", into = "RawTurn")]
pub struct Turn {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct RawTurn {
    num: i64,
    den: i64,
}

impl TryFrom<RawTurn> for Turn {
    type Error = String;

    fn try_from(raw: RawTurn) -> Result<Self, Self::Error> {
        if raw.den <= 0 {
            return Err(format!("turn denominator must be positive, got {}", raw.den));
        }
        Ok(Turn::new(raw.num, raw.den))
    }
}

impl From<Turn> for RawTurn {
    fn from(t: Turn) -> Self {
        RawTurn { num: t.num, den: t.den }
    }
}

impl Turn {
    pub const ZERO: Turn = Turn { num: 0, den: 1 };
    pub const HALF: Turn = Turn { num: 1, den: 2 };

    /// Panics if `den <= 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den > 0, "turn denominator must be positive");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        let (num, den) = if num == 0 { (0, 1) } else { (num / g, den / g) };
        Turn {
            num: i64::try_from(num).expect("turn numerator overflow"),
            den: i64::try_from(den).expect("turn denominator overflow"),
        }
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn radians(self) -> f64 {
        TAU * self.num as f64 / self.den as f64
    }

    /// `k` full applications of this phase, i.e. the phase of `e^{ikφ}`.
    pub fn times(self, k: i64) -> Turn {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    /// The numerator this phase takes over the common denominator `d`, if `den | d`.
    pub fn numerator_over(self, d: i64) -> Option<i64> {
        (d % self.den == 0).then(|| self.num * (d / self.den))
    }
}

impl Add for Turn {
    type Output = Turn;

    fn add(self, rhs: Turn) -> Turn {
        let (a, b) = (self.den as i128, rhs.den as i128);
        Turn::from_i128(self.num as i128 * b + rhs.num as i128 * a, a * b)
    }
}

impl Neg for Turn {
    type Output = Turn;

    fn neg(self) -> Turn {
        Turn::from_i128(-(self.num as i128), self.den as i128)
    }
}

impl Sub for Turn {
    type Output = Turn;

    fn sub(self, rhs: Turn) -> Turn {
        self + (-rhs)
    }
}

impl fmt::Debug for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}·2π", self.num, self.den)
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Storage representation of a matrix. Grids are never mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rep {
    Exact,
    Float,
}

/// One entry of a log-Hadamard matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PhaseValue {
    Exact(Turn),
    /// Radians in `[0, 2π)`.
    Float(f64),
}

impl PhaseValue {
    pub const ZERO_EXACT: PhaseValue = PhaseValue::Exact(Turn::ZERO);

    pub fn float(radians: f64) -> Self {
        PhaseValue::Float(wrap_radians(radians))
    }

    pub fn rep(&self) -> Rep {
        match self {
            PhaseValue::Exact(_) => Rep::Exact,
            PhaseValue::Float(_) => Rep::Float,
        }
    }

    pub fn radians(&self) -> f64 {
        match *self {
            PhaseValue::Exact(t) => t.radians(),
            PhaseValue::Float(x) => x,
        }
    }

    /// Phase is zero: exactly for exact phases, within `eps` radians otherwise.
    pub fn is_zero(&self, eps: f64) -> bool {
        match *self {
            PhaseValue::Exact(t) => t.is_zero(),
            PhaseValue::Float(x) => circular_distance(x, 0.0) <= eps,
        }
    }

    /// Sum of two phases of the same representation.
    ///
    /// Mixing an exact and a float phase yields a float phase.
    pub fn add(&self, other: &PhaseValue) -> PhaseValue {
        match (*self, *other) {
            (PhaseValue::Exact(a), PhaseValue::Exact(b)) => PhaseValue::Exact(a + b),
            (a, b) => PhaseValue::float(a.radians() + b.radians()),
        }
    }

    pub fn neg(&self) -> PhaseValue {
        match *self {
            PhaseValue::Exact(t) => PhaseValue::Exact(-t),
            PhaseValue::Float(x) => PhaseValue::float(-x),
        }
    }

    pub fn sub(&self, other: &PhaseValue) -> PhaseValue {
        self.add(&other.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn turns_are_reduced() {
        let t = Turn::new(6, 8);
        assert_eq!((t.num(), t.den()), (3, 4));
        assert_eq!(Turn::new(5, 4), Turn::new(1, 4));
        assert_eq!(Turn::new(-1, 4), Turn::new(3, 4));
        assert_eq!(Turn::new(4, 4), Turn::ZERO);
        assert_eq!(Turn::new(0, 7).den(), 1);
    }

    #[test]
    fn turn_arithmetic() {
        assert_eq!(Turn::new(1, 3) + Turn::new(1, 6), Turn::HALF);
        assert_eq!(Turn::new(1, 3) - Turn::new(2, 3), Turn::new(2, 3));
        assert_eq!(Turn::new(1, 6).times(3), Turn::HALF);
        assert_eq!(Turn::new(1, 6).times(-1), Turn::new(5, 6));
        assert_eq!(Turn::new(1, 4).numerator_over(8), Some(2));
        assert_eq!(Turn::new(1, 3).numerator_over(8), None);
    }

    #[test]
    fn wrapping() {
        assert_eq!(wrap_radians(-0.0), 0.0);
        assert_eq!(wrap_radians(TAU), 0.0);
        assert!((wrap_radians(-PI / 2.0) - 1.5 * PI).abs() < 1e-15);
        assert!(wrap_radians(-1e-300) < TAU);
        assert!((circular_distance(0.01, TAU - 0.01) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn turn_rejects_bad_denominator_in_json() {
        assert!(serde_json::from_str::<Turn>(r#"{"num":1,"den":0}"#).is_err());
        let t: Turn = serde_json::from_str(r#"{"num":-3,"den":6}"#).unwrap();
        assert_eq!(t, Turn::HALF);
    }
}
