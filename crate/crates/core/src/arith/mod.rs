//! Exact rational and radical arithmetic.
//!
//! Every comparison in the crate bottoms out here, and none of it touches
//! floating point. Floats only appear in `Radical::approx`, which is for
//! display.

mod radical;
mod rational;

pub use radical::{canonicalize, isqrt, rad_cmp, rad_pow, Radical};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("negative radicand {0}")]
    NegativeRadicand(Rational),
    #[error("radical index must be at least 1")]
    ZeroIndex,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// Serde adapter writing big integers as decimal strings, so JSON stays
/// readable and loses no precision.
pub mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(n: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
