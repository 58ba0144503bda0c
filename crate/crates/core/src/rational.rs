//! Exact rational numbers used for angles, weights and curvature.

use num_rational::Rational64;
use serde::{Deserialize, Deserializer, Serializer};
use thiserror::Error;

/// Exact rational number. All curvature arithmetic happens in this type.
pub type Q = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid rational literal {0:?} (expected p or p/q with q > 0)")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let t = text.trim();
    let err = || ParseRationalError(text.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: i64 = d.trim().parse().map_err(|_| err())?;
            if d <= 0 {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| err()),
    }
}

/// Canonical `p/q` text (integers print without a denominator).
pub fn format_q(value: &Q) -> String {
    if *value.denom() == 1 {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// serde adapter storing a rational as its `p/q` string.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for `Option<Q>`.
pub mod opt_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&format_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| parse_q(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// serde adapter for `Vec<Vec<Q>>`.
pub mod nested_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(value: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(value.len()))?;
        for row in value {
            let row: Vec<String> = row.iter().map(format_q).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.into_iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse_q(t).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
