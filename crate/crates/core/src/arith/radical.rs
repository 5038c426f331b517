use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, Rational};

/// A real number `radicand^(1/index)` with a nonnegative rational radicand.
///
/// Values are always in minimal-index form: no prime `p | index` has both
/// numerator and denominator of the radicand as perfect `p`-th powers. With
/// that invariant two radicals are equal as reals iff they are equal as
/// structs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radical {
    radicand: Rational,
    index: u32,
}

impl Radical {
    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn is_rational(&self) -> bool {
        self.index == 1
    }

    /// The value as a rational, if the index is 1.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.radicand)
    }

    /// Multiplies by a nonnegative rational: `c * r^(1/d) = (c^d r)^(1/d)`.
    pub fn scale(&self, c: &Rational) -> Result<Radical, ArithError> {
        if c.is_negative() {
            return Err(ArithError::NegativeRadicand(c.clone()));
        }
        canonicalize(&self.radicand * &c.pow(self.index), self.index)
    }

    /// Floating-point value. Display only.
    pub fn approx(&self) -> f64 {
        let r = self.radicand.to_f64();
        if self.index == 1 {
            r
        } else {
            r.powf(1.0 / f64::from(self.index))
        }
    }

    /// `approx` rendered with 12 significant digits.
    pub fn approx_string(&self) -> String {
        format_significant(self.approx(), 12)
    }
}

impl From<Rational> for Radical {
    /// Panics if the rational is negative.
    fn from(r: Rational) -> Self {
        assert!(!r.is_negative(), "radical from negative rational {r}");
        Radical {
            radicand: r,
            index: 1,
        }
    }
}

impl PartialOrd for Radical {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Radical {
    fn cmp(&self, other: &Self) -> Ordering {
        rad_cmp(self, other)
    }
}

impl fmt::Display for Radical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            1 => write!(f, "{}", self.radicand),
            2 => write!(f, "sqrt({})", self.radicand),
            d if self.radicand.is_integer() => write!(f, "{}^(1/{d})", self.radicand),
            d => write!(f, "({})^(1/{d})", self.radicand),
        }
    }
}

/// Builds the minimal-index radical equal to `radicand^(1/index)`.
pub fn canonicalize(radicand: Rational, index: u32) -> Result<Radical, ArithError> {
    if index == 0 {
        return Err(ArithError::ZeroIndex);
    }
    if radicand.is_negative() {
        return Err(ArithError::NegativeRadicand(radicand));
    }
    if radicand.is_zero() || radicand == Rational::one() {
        return Ok(Radical { radicand, index: 1 });
    }

    let mut numer = radicand.numer().magnitude().clone();
    let mut denom = radicand.denom().magnitude().clone();
    let mut index = index;
    'outer: loop {
        for p in prime_factors(index) {
            let rn = numer.nth_root(p);
            if Pow::pow(&rn, p) != numer {
                continue;
            }
            let rd = denom.nth_root(p);
            if Pow::pow(&rd, p) != denom {
                continue;
            }
            numer = rn;
            denom = rd;
            index /= p;
            continue 'outer;
        }
        break;
    }
    let radicand = Rational::new(BigInt::from(numer), BigInt::from(denom))?;
    Ok(Radical { radicand, index })
}

/// Orders two radicals by raising both to `lcm` of their indices.
pub fn rad_cmp(a: &Radical, b: &Radical) -> Ordering {
    if a.index == b.index {
        return a.radicand.cmp(&b.radicand);
    }
    let l = a.index.lcm(&b.index);
    let lhs = a.radicand.pow(l / a.index);
    let rhs = b.radicand.pow(l / b.index);
    lhs.cmp(&rhs)
}

/// `a^k`, canonical.
pub fn rad_pow(a: &Radical, k: u32) -> Radical {
    if k == 0 {
        return Radical::from(Rational::one());
    }
    let g = k.gcd(&a.index);
    canonicalize(a.radicand.pow(k / g), a.index / g)
        .expect("power of a nonnegative radicand is nonnegative")
}

/// `floor(sqrt(n))`.
pub fn isqrt(n: &num_bigint::BigUint) -> num_bigint::BigUint {
    n.sqrt()
}

/// Distinct prime factors in ascending order.
fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = digits as i64 - 1 - magnitude;
    if (0..=20).contains(&decimals) && magnitude < digits as i64 {
        format!("{:.*}", decimals as usize, x)
    } else {
        format!("{:.*e}", digits - 1, x)
    }
}

#[derive(Serialize, Deserialize)]
struct RadicalRepr {
    radicand: Rational,
    index: u32,
    #[serde(default, skip_deserializing, skip_serializing_if = "Option::is_none")]
    approx: Option<String>,
}

impl Serialize for Radical {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RadicalRepr {
            radicand: self.radicand.clone(),
            index: self.index,
            approx: Some(self.approx_string()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Radical {
    /// Non-canonical input is accepted and canonicalized.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RadicalRepr::deserialize(deserializer)?;
        canonicalize(repr.radicand, repr.index).map_err(serde::de::Error::custom)
    }
}
