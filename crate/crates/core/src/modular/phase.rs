use std::fmt;
use std::ops::{Div, Mul};
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::liealg::Rational;

/// The unit complex number `exp(2πi q)` with `q ∈ [0, 1)` kept as an exact
/// reduced fraction. Multiplication of phases adds the fractions mod 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPhase(Rational);

impl RationalPhase {
    pub fn one() -> Self {
        RationalPhase(Rational::zero())
    }

    /// `exp(2πi q)` for any rational `q`.
    pub fn from_turns(q: Rational) -> Self {
        let den = *q.denom();
        let num = q.numer().mod_floor(&den);
        RationalPhase(Rational::new(num, den))
    }

    /// The phase `exp(-2πi Δ)`.
    pub fn from_conformal_weight(delta: Rational) -> Self {
        Self::from_turns(-delta)
    }

    pub fn turns(&self) -> Rational {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_zero()
    }

    pub fn inverse(self) -> Self {
        Self::from_turns(-self.0)
    }

    pub fn pow(self, e: i64) -> Self {
        Self::from_turns(self.0 * Rational::from_integer(e))
    }

    /// Smallest `m >= 1` with `self^m = 1`.
    pub fn order(&self) -> u64 {
        *self.0.denom() as u64
    }

    pub fn to_complex(&self) -> Complex64 {
        let q = self.0.to_f64().unwrap_or(0.0);
        Complex64::from_polar(1.0, std::f64::consts::TAU * q)
    }
}

impl Default for RationalPhase {
    fn default() -> Self {
        Self::one()
    }
}

// phases multiply by adding turns
impl Mul for RationalPhase {
    type Output = RationalPhase;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: RationalPhase) -> RationalPhase {
        RationalPhase::from_turns(self.0 + rhs.0)
    }
}

impl Div for RationalPhase {
    type Output = RationalPhase;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: RationalPhase) -> RationalPhase {
        RationalPhase::from_turns(self.0 - rhs.0)
    }
}

impl One for RationalPhase {
    fn one() -> Self {
        RationalPhase::one()
    }
}

impl fmt::Display for RationalPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RationalPhase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n
            .parse()
            .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let d: i64 = d
            .parse()
            .map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
        if d <= 0 {
            return Err(format!("non-positive denominator in {s:?}"));
        }
        Ok(RationalPhase::from_turns(Rational::new(n, d)))
    }
}

impl Serialize for RationalPhase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalPhase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
