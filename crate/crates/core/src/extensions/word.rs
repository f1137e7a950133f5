//! Words in the generators `a_i`, `b_i`, `c`.
//!
//! Text form: letters `a<i>`, `b<i>`, `c`, each optionally raised to an
//! integer power (`a2^-1`, `c^(5)`), juxtaposed or space separated.
//! Parenthesised subwords may be powered, and `comm(u, v)` or `[u, v]`
//! expands to `u⁻¹ v⁻¹ u v`.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::GeneratorId;
use crate::error::{Error, Result};

/// Expansion cap for powered subwords.
const MAX_LETTERS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A(GeneratorId),
    B(GeneratorId),
    C,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A(i) => write!(f, "a{}", i),
            Letter::B(i) => write!(f, "b{}", i),
            Letter::C => write!(f, "c"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("invalid letter '{}'", s));
        match s.as_bytes().first() {
            Some(b'c') if s.len() == 1 => Ok(Letter::C),
            Some(b'a') | Some(b'b') => {
                let i: u64 = s[1..].parse().map_err(|_| bad())?;
                Ok(if s.starts_with('a') {
                    Letter::A(GeneratorId(i))
                } else {
                    Letter::B(GeneratorId(i))
                })
            }
            _ => Err(bad()),
        }
    }
}

/// A word as a list of `(letter, exponent)` with nonzero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<(Letter, i64)>,
}

impl Word {
    pub fn new<I: IntoIterator<Item = (Letter, i64)>>(letters: I) -> Self {
        Word {
            letters: letters.into_iter().filter(|&(_, e)| e != 0).collect(),
        }
    }

    pub fn letter(letter: Letter, exp: i64) -> Self {
        Self::new([(letter, exp)])
    }

    pub fn a(i: u64) -> Self {
        Self::letter(Letter::A(GeneratorId(i)), 1)
    }

    pub fn b(i: u64) -> Self {
        Self::letter(Letter::B(GeneratorId(i)), 1)
    }

    pub fn c() -> Self {
        Self::letter(Letter::C, 1)
    }

    pub fn letters(&self) -> &[(Letter, i64)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|&(l, e)| (l, -e)).collect(),
        }
    }

    /// `u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    /// Repeated concatenation; errors past the expansion cap.
    pub fn pow(&self, k: i64) -> Result<Word> {
        if self.letters.len() == 1 {
            let (l, e) = self.letters[0];
            let exp = e
                .checked_mul(k)
                .ok_or_else(|| Error::InvalidInput("exponent overflow".into()))?;
            return Ok(Word::letter(l, exp));
        }
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        if base.letters.len().saturating_mul(reps) > MAX_LETTERS {
            return Err(Error::InvalidInput(format!(
                "word power expands beyond {} letters",
                MAX_LETTERS
            )));
        }
        Ok(Word {
            letters: base.letters.repeat(reps),
        })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (n, (l, e)) in self.letters.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", l)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c)))
        }
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn word(&mut self, closers: &[char]) -> Result<Word> {
        let mut w = Word::default();
        loop {
            match self.peek() {
                None => return Ok(w),
                Some(c) if closers.contains(&c) => return Ok(w),
                Some(_) => {
                    let item = self.item()?;
                    w = w.concat(&item);
                }
            }
        }
    }

    fn item(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.eat('^') {
            let k = self.exponent()?;
            atom.pow(k)
        } else {
            Ok(atom)
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.error("expected an integer exponent"))?;
        let mut k: i64 = d.parse().map_err(|_| Error::Syntax {
            position: start,
            message: "exponent out of range".into(),
        })?;
        if neg {
            k = -k;
        }
        if paren {
            self.expect(')')?;
        }
        Ok(k)
    }

    fn atom(&mut self) -> Result<Word> {
        let start = self.pos;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word(&[')'])?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let (u, v) = self.pair(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some('c') => {
                self.pos += 1;
                if self.chars[self.pos..].starts_with(&['o', 'm', 'm']) {
                    self.pos += 3;
                    self.expect('(')?;
                    let (u, v) = self.pair(')')?;
                    return Ok(Word::commutator(&u, &v));
                }
                Ok(Word::c())
            }
            Some(c @ ('a' | 'b')) => {
                self.pos += 1;
                let d = self
                    .digits()
                    .ok_or_else(|| self.error(format!("expected an index after '{}'", c)))?;
                let i: u64 = d.parse().map_err(|_| Error::Syntax {
                    position: start + 1,
                    message: "index out of range".into(),
                })?;
                Ok(if c == 'a' { Word::a(i) } else { Word::b(i) })
            }
            Some(c) => Err(self.error(format!("unexpected '{}'", c))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn pair(&mut self, close: char) -> Result<(Word, Word)> {
        let u = self.word(&[','])?;
        self.expect(',')?;
        let v = self.word(&[close])?;
        self.expect(close)?;
        Ok((u, v))
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            chars: s.chars().collect(),
            pos: 0,
        };
        if s.trim() == "1" {
            return Ok(Word::default());
        }
        let w = p.word(&[])?;
        if p.peek().is_some() {
            return Err(p.error("trailing input"));
        }
        Ok(w)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WordInput {
    Text(String),
    Letters(Vec<(String, i64)>),
}

/// `[["a2", -1], ["a1", 1]]`; input also accepts the text form.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let letters: Vec<(String, i64)> = self
            .letters
            .iter()
            .map(|(l, e)| (l.to_string(), *e))
            .collect();
        letters.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match WordInput::deserialize(deserializer)? {
            WordInput::Text(s) => s.parse().map_err(de::Error::custom),
            WordInput::Letters(items) => {
                let letters = items
                    .into_iter()
                    .map(|(l, e)| l.parse::<Letter>().map(|l| (l, e)))
                    .collect::<Result<Vec<_>>>()
                    .map_err(de::Error::custom)?;
                Ok(Word::new(letters))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parses_letters_and_powers() {
        assert_eq!(
            w("a2^-1 a1").letters(),
            &[
                (Letter::A(GeneratorId(2)), -1),
                (Letter::A(GeneratorId(1)), 1)
            ]
        );
        assert_eq!(w("c^5"), Word::letter(Letter::C, 5));
        assert_eq!(w("c^(-3)"), Word::letter(Letter::C, -3));
        assert_eq!(w("a1b2c"), w("a1 b2 c"));
        assert_eq!(w("a1^0"), Word::default());
        assert_eq!(w(""), Word::default());
        assert_eq!(w("1"), Word::default());
    }

    #[test]
    fn commutator_forms_agree() {
        let u = w("a2^-1 a1");
        let v = w("b3^-1 b1");
        let expected = Word::commutator(&u, &v);
        assert_eq!(w("comm(a2^-1 a1, b3^-1 b1)"), expected);
        assert_eq!(w("[a2^-1 a1, b3^-1 b1]"), expected);
        assert_eq!(expected.to_string(), "a1^-1 a2 b1^-1 b3 a2^-1 a1 b3^-1 b1");
    }

    #[test]
    fn grouped_powers() {
        assert_eq!(w("(a1 b1)^2"), w("a1 b1 a1 b1"));
        assert_eq!(w("(a1 b1)^-1"), w("b1^-1 a1^-1"));
        assert_eq!(w("(a1^2)^3"), w("a1^6"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let pos = |s: &str| match s.parse::<Word>() {
            Err(Error::Syntax { position, .. }) => position,
            other => panic!("{:?}", other),
        };
        assert_eq!(pos("a"), 1);
        assert_eq!(pos("a1 x"), 3);
        assert_eq!(pos("(a1"), 3);
        assert_eq!(pos("a1^"), 3);
        assert_eq!(pos("comm(a1 b1)"), 10);
    }

    #[test]
    fn display_roundtrip_and_json() {
        for s in ["a1 b2^-3 c^7", "comm(a1, b1)", "c"] {
            let x = w(s);
            assert_eq!(w(&x.to_string()), x);
            let json = serde_json::to_string(&x).unwrap();
            assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), x);
        }
        assert_eq!(
            serde_json::to_string(&w("a2^-1 c")).unwrap(),
            r#"[["a2",-1],["c",1]]"#
        );
        assert_eq!(serde_json::from_str::<Word>(r#""c^5""#).unwrap(), w("c^5"));
        assert!(serde_json::from_str::<Word>(r#"[["d1",1]]"#).is_err());
    }
}
