//! Payload loading and argument parsers.

use std::fs;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use countrep::extensions::GeneratorId;
use countrep::representability::FiniteGroupTable;

pub enum Failure {
    /// Parse or precondition failure; exit code 2.
    Input(String),
    /// Broken invariant inside the tool; exit code 1.
    Internal(String),
}

impl From<countrep::Error> for Failure {
    fn from(e: countrep::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Reads a JSON payload from a file, or inline when the argument starts
/// with `{` or `[`.
pub fn load<T: DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{}: {}", arg, e)))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {}", arg, e)))
}

/// `{"points": n, "table": [[g·x, ...], ...]}` for the subgroup's elements
/// in the order they were listed.
#[derive(Deserialize)]
pub struct ActionSpec {
    pub points: usize,
    pub table: Vec<Vec<usize>>,
}

pub fn parse_pair(s: &str) -> Result<(GeneratorId, GeneratorId), String> {
    let (i, j) = s.split_once(':').ok_or("expected i:j")?;
    let id = |t: &str| {
        t.trim()
            .parse()
            .map(GeneratorId)
            .map_err(|e| format!("'{}': {}", t, e))
    };
    Ok((id(i)?, id(j)?))
}

pub fn parse_subgroup(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|e| format!("'{}': {}", s, e))
}

/// `Z<n>`, `D<n>`, `S<n>`, `A<n>`, or a JSON table.
pub fn parse_group(arg: &str) -> Result<FiniteGroupTable, Failure> {
    let mut chars = arg.chars();
    let head = chars.next();
    if let (Some(kind), Ok(n)) = (head, chars.as_str().parse::<usize>()) {
        let built = match kind {
            'Z' => Some(FiniteGroupTable::cyclic(n)),
            'D' => Some(FiniteGroupTable::dihedral(n)),
            'S' => Some(FiniteGroupTable::symmetric(n)),
            'A' => Some(FiniteGroupTable::alternating(n)),
            _ => None,
        };
        if let Some(g) = built {
            return Ok(g?);
        }
    }
    load(arg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(parse_pair("3:12"), Ok((GeneratorId(3), GeneratorId(12))));
        assert!(parse_pair("3").is_err());
        assert!(parse_pair("a:1").is_err());
    }

    #[test]
    fn named_groups() {
        assert_eq!(parse_group("S4").ok().map(|g| g.order()), Some(24));
        assert_eq!(parse_group("D4").ok().map(|g| g.order()), Some(8));
        assert_eq!(parse_group("A4").ok().map(|g| g.order()), Some(12));
        assert!(parse_group("Q8").is_err());
    }

    #[test]
    fn inline_json() {
        let v: Vec<u32> = load("[1, 2]").ok().unwrap();
        assert_eq!(v, vec![1, 2]);
    }
}
