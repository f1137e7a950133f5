//! Commutator witnesses from label collisions.
//!
//! Each sampled index `i` carries a pair of opaque labels, e.g. the points
//! `a_i·x` and `b_i·x` of an orbit. Three distinct indices with
//! `aLabel_i = aLabel_j` and `bLabel_i = bLabel_k` yield the word
//! `[a_j⁻¹ a_i, b_k⁻¹ b_i]`, which evaluates to `c`.

use std::collections::BTreeSet;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use super::word::{Letter, Word};
use super::GeneratorId;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelRow {
    pub id: GeneratorId,
    pub a: String,
    pub b: String,
}

/// Ordered label rows with distinct ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LabelTable {
    rows: Vec<LabelRow>,
}

impl LabelTable {
    pub fn new(rows: Vec<LabelRow>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for row in &rows {
            if !seen.insert(row.id) {
                return Err(Error::InvalidInput(format!(
                    "duplicate generator id {} in label table",
                    row.id
                )));
            }
        }
        Ok(LabelTable { rows })
    }

    /// Rows with ids `1, 2, ...` in order.
    pub fn from_pairs<I, A, B>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        LabelTable {
            rows: pairs
                .into_iter()
                .enumerate()
                .map(|(n, (a, b))| LabelRow {
                    id: GeneratorId(n as u64 + 1),
                    a: a.into(),
                    b: b.into(),
                })
                .collect(),
        }
    }

    pub fn rows(&self) -> &[LabelRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableInput {
    Pairs(Vec<(String, String)>),
    Rows { rows: Vec<LabelRow> },
}

/// `{"rows": [{"id": 1, "a": "x", "b": "u"}, ...]}`, or a bare list of
/// `[a, b]` label pairs numbered from 1.
impl<'de> Deserialize<'de> for LabelTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match TableInput::deserialize(deserializer)? {
            TableInput::Pairs(pairs) => Ok(LabelTable::from_pairs(pairs)),
            TableInput::Rows { rows } => LabelTable::new(rows).map_err(de::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PigeonholeWitness {
    pub i: GeneratorId,
    pub j: GeneratorId,
    pub k: GeneratorId,
    pub word: Word,
}

/// Lexicographically least (by row position) distinct triple with matching
/// labels, or `None` when no triple exists.
pub fn pigeonhole_commutator(table: &LabelTable) -> Option<PigeonholeWitness> {
    let rows = &table.rows;
    for (x, ri) in rows.iter().enumerate() {
        for (y, rj) in rows.iter().enumerate() {
            if y == x || rj.a != ri.a {
                continue;
            }
            let hit = rows
                .iter()
                .enumerate()
                .find(|&(z, rk)| z != x && z != y && rk.b == ri.b);
            if let Some((_, rk)) = hit {
                return Some(witness(ri.id, rj.id, rk.id));
            }
        }
    }
    None
}

fn witness(i: GeneratorId, j: GeneratorId, k: GeneratorId) -> PigeonholeWitness {
    let u = Word::new([(Letter::A(j), -1), (Letter::A(i), 1)]);
    let v = Word::new([(Letter::B(k), -1), (Letter::B(i), 1)]);
    PigeonholeWitness {
        i,
        j,
        k,
        word: Word::commutator(&u, &v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{eval_word, DomainTag};

    fn ids(w: &PigeonholeWitness) -> (u64, u64, u64) {
        (w.i.0, w.j.0, w.k.0)
    }

    #[test]
    fn constant_labels() {
        let t = LabelTable::from_pairs([("x", "u"); 3]);
        let w = pigeonhole_commutator(&t).unwrap();
        assert_eq!(ids(&w), (1, 2, 3));
        for tag in [DomainTag::FreeInt, DomainTag::ModTwo, DomainTag::Rational] {
            assert!(eval_word(&w.word, tag).is_c());
        }
    }

    #[test]
    fn too_few_rows() {
        let t = LabelTable::from_pairs([("x", "u"), ("z", "w")]);
        assert_eq!(pigeonhole_commutator(&t), None);
        assert_eq!(pigeonhole_commutator(&LabelTable::default()), None);
    }

    #[test]
    fn split_matches() {
        let t = LabelTable::from_pairs([("x", "u"), ("x", "v"), ("y", "u")]);
        let w = pigeonhole_commutator(&t).unwrap();
        assert_eq!(ids(&w), (1, 2, 3));
        assert!(eval_word(&w.word, DomainTag::FreeInt).is_c());
    }

    #[test]
    fn needs_third_index() {
        // a-match on {1, 2} and b-match on {1, 2} only
        let t = LabelTable::from_pairs([("x", "u"), ("x", "u"), ("y", "v")]);
        assert_eq!(pigeonhole_commutator(&t), None);
    }

    #[test]
    fn ids_are_reported_not_positions() {
        let rows = [(10, "x", "u"), (4, "y", "u"), (7, "x", "w")]
            .map(|(id, a, b)| LabelRow {
                id: GeneratorId(id),
                a: a.into(),
                b: b.into(),
            })
            .to_vec();
        let t = LabelTable::new(rows).unwrap();
        let w = pigeonhole_commutator(&t).unwrap();
        assert_eq!(ids(&w), (10, 7, 4));
        assert!(eval_word(&w.word, DomainTag::FreeInt).is_c());
    }

    #[test]
    fn json_forms() {
        let t: LabelTable = serde_json::from_str(r#"[["x","u"],["x","v"],["y","u"]]"#).unwrap();
        assert_eq!(
            t,
            LabelTable::from_pairs([("x", "u"), ("x", "v"), ("y", "u")])
        );
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<LabelTable>(&json).unwrap(), t);
        let dup = r#"{"rows":[{"id":1,"a":"x","b":"u"},{"id":1,"a":"y","b":"v"}]}"#;
        assert!(serde_json::from_str::<LabelTable>(dup).is_err());
    }
}
