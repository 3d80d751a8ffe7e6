//! Exact rational scalars and the small amount of combinatorics the class
//! algebra needs.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Q = BigRational;

pub fn q(numer: i64, denom: i64) -> Q {
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(value: i64) -> Q {
    Q::from_integer(BigInt::from(value))
}

/// Lowest-terms `p/q` (or `p` when the denominator is 1), `-` for negatives.
pub fn format_q(value: &Q) -> String {
    value.to_string()
}

pub fn parse_q(text: &str) -> Result<Q> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix('+').unwrap_or(trimmed);
    if body.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    let (numer, denom) = match body.split_once('/') {
        Some((p, d)) => (p, d),
        None => (body, "1"),
    };
    let numer = BigInt::from_str(numer).map_err(|e| Error::Parse(format!("'{text}': {e}")))?;
    let denom = BigInt::from_str(denom).map_err(|e| Error::Parse(format!("'{text}': {e}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("'{text}': zero denominator")));
    }
    Ok(Q::new(numer, denom))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Hypergeometric weight: the fraction of `sample`-subsets of an `total`-set
/// that meet a fixed `marked`-subset in exactly `hits` elements.
pub fn hypergeometric(total: u64, marked: u64, sample: u64, hits: u64) -> Q {
    if hits > marked || hits > sample || sample - hits > total.saturating_sub(marked) {
        return Q::zero();
    }
    Q::new(
        binomial(marked, hits) * binomial(total - marked, sample - hits),
        binomial(total, sample),
    )
}

/// Serde adapter writing rationals as canonical strings.
pub mod serde_q {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Q, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::super::{format_q, parse_q, Q};
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(
            value: &Option<Q>,
            serializer: S,
        ) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => serializer.serialize_some(&format_q(v)),
                None => serializer.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            deserializer: D,
        ) -> Result<Option<Q>, D::Error> {
            let text = Option::<String>::deserialize(deserializer)?;
            text.map(|t| parse_q(&t).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}
