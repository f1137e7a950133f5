//! Text grammar for Puiseux polynomials.
//!
//! ```text
//! expr   := sign? term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' power)?
//! atom   := number | 't' | '(' expr ')'
//! number := digits ('/' digits)?
//! power  := '-'? digits | '(' sign? digits ('/' digits)? ')'
//! ```
//!
//! Canonical output of `Display` (`c*t^(a/b)` terms joined by `+`/`-`) is a
//! subset of this grammar. Fractional powers apply to `t` only; other
//! bases take integer powers, and negative powers only of monomials.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{PuiseuxPoly, Rational};
use crate::error::{Error, Result};

pub fn parse_series(text: &str) -> Result<PuiseuxPoly> {
    let mut parser = Parser::new(text);
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.error("empty expression"));
    }
    let value = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses `p/q` or an integer, with an optional sign.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut parser = Parser::new(text);
    parser.skip_ws();
    let negative = parser.eat('-');
    if !negative {
        parser.eat('+');
    }
    parser.skip_ws();
    let value = parser.number()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(if negative { -value } else { value })
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.char_indices().collect(),
            pos: 0,
            len: src.len(),
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i)
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.offset(),
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
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
            Err(self.error(&format!("expected '{}'", c)))
        }
    }

    fn expr(&mut self) -> Result<PuiseuxPoly> {
        let mut negate = self.eat('-');
        if !negate {
            self.eat('+');
        }
        let mut acc = PuiseuxPoly::zero();
        loop {
            let term = self.term()?;
            acc = if negate { &acc - &term } else { &acc + &term };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<PuiseuxPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PuiseuxPoly> {
        self.skip_ws();
        let is_t = self.peek() == Some('t');
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        self.skip_ws();
        let start = self.offset();
        let power = self.power()?;
        if is_t {
            return Ok(PuiseuxPoly::monomial(
                Rational::from_integer(1.into()),
                &power,
            ));
        }
        if !power.is_integer() {
            return Err(Error::Syntax {
                position: start,
                message: "fractional powers are only allowed on t".into(),
            });
        }
        let k = power
            .to_integer()
            .abs()
            .to_u64()
            .ok_or_else(|| Error::Syntax {
                position: start,
                message: "power too large".into(),
            })?;
        if power.is_negative() {
            Ok(base.invert_monomial()?.pow(k))
        } else {
            Ok(base.pow(k))
        }
    }

    fn atom(&mut self) -> Result<PuiseuxPoly> {
        self.skip_ws();
        match self.peek() {
            Some('t') => {
                self.pos += 1;
                Ok(PuiseuxPoly::t())
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(PuiseuxPoly::constant(self.number()?)),
            Some(_) => Err(self.error("expected a number, 't' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn power(&mut self) -> Result<Rational> {
        if self.eat('(') {
            let negative = self.eat('-');
            if !negative {
                self.eat('+');
            }
            self.skip_ws();
            let value = self.number()?;
            self.expect(')')?;
            Ok(if negative { -value } else { value })
        } else {
            let negative = self.eat('-');
            self.skip_ws();
            let value = Rational::from_integer(self.digits()?);
            Ok(if negative { -value } else { value })
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn number(&mut self) -> Result<Rational> {
        let numer = self.digits()?;
        // a '/' directly after digits is part of the literal
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.offset();
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(Error::ZeroDenominator { position: at });
            }
            return Ok(Rational::new(numer, denom));
        }
        Ok(Rational::from_integer(numer))
    }
}
