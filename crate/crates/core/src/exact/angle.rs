use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A rational multiple of π, stored reduced with value in `[0, 2π)`.
///
/// `Angle { num, den }` denotes `π·num/den` with `0 <= num < 2·den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Angle {
    num: i64,
    den: i64,
}

impl Angle {
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidAngle(format!("{num}/{den}: zero denominator")));
        }
        Ok(Self::from_ratio(Rational::new(num as i128, den as i128)))
    }

    /// Reduce an arbitrary multiple of π (given as `r`, meaning `π·r`) modulo 2π.
    pub fn from_ratio(r: Rational) -> Self {
        let (n, d) = (*r.numer(), *r.denom());
        let num = n.mod_floor(&(2 * d));
        Angle {
            num: num.to_i64().expect("angle numerator fits in i64"),
            den: d.to_i64().expect("angle denominator fits in i64"),
        }
    }

    pub const fn zero() -> Self {
        Angle { num: 0, den: 1 }
    }

    pub const fn pi() -> Self {
        Angle { num: 1, den: 1 }
    }

    /// `π/k`.
    pub fn pi_over(k: i64) -> Self {
        Angle::new(1, k).expect("nonzero denominator")
    }

    /// `2π/k`.
    pub fn two_pi_over(k: i64) -> Self {
        Angle::new(2, k).expect("nonzero denominator")
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// The canonical value divided by π, in `[0, 2)`.
    pub fn ratio(&self) -> Rational {
        Rational::new(self.num as i128, self.den as i128)
    }

    /// The representative in `(-π, π]`, divided by π.
    pub fn signed_ratio(&self) -> Rational {
        let r = self.ratio();
        if r > Rational::from_integer(1) {
            r - Rational::from_integer(2)
        } else {
            r
        }
    }

    pub fn radians(&self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn neg(self) -> Self {
        Self::from_ratio(-self.ratio())
    }

    pub fn add(self, other: Angle) -> Self {
        Self::from_ratio(self.ratio() + other.ratio())
    }

    pub fn sub(self, other: Angle) -> Self {
        Self::from_ratio(self.ratio() - other.ratio())
    }

    pub fn mul_int(self, k: i64) -> Self {
        Self::from_ratio(self.ratio() * Rational::from_integer(k as i128))
    }

    /// Integer combination `i·a + j·b`, reduced once at the end.
    pub fn combo(i: i64, a: Angle, j: i64, b: Angle) -> Self {
        Self::from_ratio(
            a.ratio() * Rational::from_integer(i as i128) + b.ratio() * Rational::from_integer(j as i128),
        )
    }

    /// `2π·num/den` reduced into `[0,2π)`: the argument of the root of unity `ζ_den^num`.
    pub fn of_root(num: i64, den: i64) -> Self {
        Self::from_ratio(Rational::new(2 * num as i128, den as i128))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "0"),
            (1, 1) => write!(f, "π"),
            (1, d) => write!(f, "π/{d}"),
            (n, 1) => write!(f, "{n}π"),
            (n, d) => write!(f, "{n}π/{d}"),
        }
    }
}
