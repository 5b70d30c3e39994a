//! Exact elements of the countable circle subgroup `Q[sqrt 2] / Z`.
//!
//! A value is stored as a pair `(rat, irr)` standing for `rat + irr * sqrt(2)`
//! modulo the integers. Since `sqrt(2)` is irrational, only the rational part
//! is ever reduced: `rat` lives in `[0, 1)` and `irr` is an arbitrary rational.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::Order;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GValue {
    rat: BigRational,
    irr: BigRational,
}

fn reduce_unit(q: BigRational) -> BigRational {
    let shifted = &q - q.floor();
    debug_assert!(!shifted.is_negative() && shifted < BigRational::one());
    shifted
}

impl GValue {
    pub fn new(rat: BigRational, irr: BigRational) -> Self {
        GValue {
            rat: reduce_unit(rat),
            irr,
        }
    }

    pub fn zero() -> Self {
        GValue {
            rat: BigRational::zero(),
            irr: BigRational::zero(),
        }
    }

    /// `num/den` taken modulo one, with no irrational part.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    /// `k * sqrt(2)`.
    pub fn from_sqrt2_multiple(k: i64) -> Self {
        GValue {
            rat: BigRational::zero(),
            irr: BigRational::from_integer(BigInt::from(k)),
        }
    }

    /// The unique element of order two.
    pub fn half() -> Self {
        Self::from_fraction(1, 2)
    }

    pub fn rat(&self) -> &BigRational {
        &self.rat
    }

    pub fn irr(&self) -> &BigRational {
        &self.irr
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn add(&self, other: &GValue) -> GValue {
        GValue::new(&self.rat + &other.rat, &self.irr + &other.irr)
    }

    pub fn neg(&self) -> GValue {
        GValue::new(-&self.rat, -&self.irr)
    }

    pub fn scale(&self, k: i64) -> GValue {
        let k = BigRational::from_integer(BigInt::from(k));
        GValue::new(&self.rat * &k, &self.irr * &k)
    }

    /// Infinite iff the irrational part is nonzero, else the denominator of `rat`.
    pub fn order(&self) -> Order {
        if !self.irr.is_zero() {
            return Order::Infinite;
        }
        match self.rat.denom().to_u64() {
            Some(d) => Order::Finite(d),
            None => panic!("order of {self} does not fit in u64"),
        }
    }
}

impl Default for GValue {
    fn default() -> Self {
        GValue::zero()
    }
}

impl fmt::Display for GValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.rat, self.irr)
    }
}

impl fmt::Debug for GValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for GValue {
    type Err = String;

    /// Parses the `Display` form `(a,b)` where `a` and `b` are `p` or `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| format!("expected `(rat,irr)`, got `{s}`"))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected `(rat,irr)`, got `{s}`"))?;
        let parse = |t: &str| -> Result<BigRational, String> {
            let t = t.trim();
            let q = match t.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
                    let q: BigInt = q.trim().parse().map_err(|_| format!("bad rational `{t}`"))?;
                    if q.is_zero() {
                        return Err(format!("zero denominator in `{t}`"));
                    }
                    BigRational::new(p, q)
                }
                None => BigRational::from_integer(
                    t.parse().map_err(|_| format!("bad rational `{t}`"))?,
                ),
            };
            Ok(q)
        };
        Ok(GValue::new(parse(a)?, parse(b)?))
    }
}

impl Serialize for GValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of two finite orders.
pub(crate) fn lcm_u64(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_part_is_reduced_mod_one() {
        let v = GValue::from_fraction(7, 4);
        assert_eq!(v, GValue::from_fraction(3, 4));
        let w = GValue::from_fraction(-1, 4);
        assert_eq!(w, GValue::from_fraction(3, 4));
        assert_eq!(GValue::from_fraction(4, 4), GValue::zero());
    }

    #[test]
    fn zero_iff_both_parts_vanish() {
        assert!(GValue::zero().is_zero());
        assert!(!GValue::from_sqrt2_multiple(1).is_zero());
        assert!(!GValue::half().is_zero());
    }

    #[test]
    fn orders() {
        assert_eq!(GValue::half().order(), Order::Finite(2));
        assert_eq!(GValue::from_fraction(2, 6).order(), Order::Finite(3));
        assert_eq!(GValue::zero().order(), Order::Finite(1));
        assert_eq!(GValue::from_sqrt2_multiple(-3).order(), Order::Infinite);
    }

    #[test]
    fn doubling_half_gives_zero() {
        assert!(GValue::half().scale(2).is_zero());
        assert!(GValue::half().add(&GValue::half()).is_zero());
    }

    #[test]
    fn display_round_trips() {
        for v in [
            GValue::zero(),
            GValue::half(),
            GValue::from_fraction(5, 6),
            GValue::new(BigRational::new(1.into(), 3.into()), BigRational::new((-7).into(), 2.into())),
        ] {
            let back: GValue = v.to_string().parse().unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn negation_is_additive_inverse() {
        let v = GValue::new(BigRational::new(2.into(), 5.into()), BigRational::from_integer(3.into()));
        assert!(v.add(&v.neg()).is_zero());
    }
}
