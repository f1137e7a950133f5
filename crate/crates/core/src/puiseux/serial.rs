//! JSON encoding: `{"q": 2, "terms": [[1, "3/2"], [4, "-1"]]}`.
//!
//! Input also accepts a bare string in the text grammar. Output is always
//! the object form, which round-trips bit-exactly for canonical values.

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{parse_rational, parse_series, PuiseuxPoly, Valuation};

#[derive(Serialize, Deserialize)]
struct PolyWire {
    q: u64,
    terms: Vec<(i64, String)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Text(String),
    Object(PolyWire),
}

impl Serialize for PuiseuxPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyWire {
            q: self.ramification,
            terms: self
                .terms
                .iter()
                .map(|(&j, c)| (j, c.to_string()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PuiseuxPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        match PolyInput::deserialize(deserializer)? {
            PolyInput::Text(s) => parse_series(&s).map_err(de::Error::custom),
            PolyInput::Object(wire) => {
                if wire.q == 0 {
                    return Err(de::Error::custom("ramification q must be positive"));
                }
                let terms = wire
                    .terms
                    .iter()
                    .map(|(j, c)| parse_rational(c).map(|c| (*j, c)))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(de::Error::custom)?;
                Ok(PuiseuxPoly::from_terms(wire.q, terms))
            }
        }
    }
}

/// Finite values as rational strings, infinity as `"inf"`.
impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_str(&v.to_string()),
            Valuation::Infinity => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// `#[serde(with = ...)]` adapter encoding a [`Rational`] as `"p/q"`.
pub mod rational_string {
    use super::*;
    use crate::puiseux::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn object_form() {
        let x = parse_series("3/2*t^(1/2) - t^2").unwrap();
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"q":2,"terms":[[1,"3/2"],[4,"-1"]]}"#);
        let back: PuiseuxPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn non_canonical_input_is_normalised() {
        let x: PuiseuxPoly =
            serde_json::from_str(r#"{"q":4,"terms":[[2,"6/4"],[8,"-1"],[3,"0"]]}"#).unwrap();
        assert_eq!(x, parse_series("3/2*t^(1/2) - t^2").unwrap());
        let s: PuiseuxPoly = serde_json::from_str(r#""1 + t^(1/3)""#).unwrap();
        assert_eq!(s.ramification(), 3);
        assert!(serde_json::from_str::<PuiseuxPoly>(r#"{"q":0,"terms":[]}"#).is_err());
        assert!(serde_json::from_str::<PuiseuxPoly>(r#"{"q":1,"terms":[[0,"1/0"]]}"#).is_err());
    }

    #[test]
    fn valuation_strings() {
        let v: Vec<Valuation> = serde_json::from_str(r#"["1/2","inf","-3"]"#).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"["1/2","inf","-3"]"#);
    }
}
