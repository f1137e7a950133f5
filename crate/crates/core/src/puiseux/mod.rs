//! Puiseux polynomials over the rationals.
//!
//! An element is a finite sum `Σ λ_j t^(j/q)` with a common ramification
//! `q`. The full field of Puiseux series is only reached through truncated
//! inverses; every value held here has finite support.

mod parse;
mod serial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_rational, parse_series};
pub use serial::rational_string;

pub type Rational = BigRational;

/// Valuation in `ℚ ∪ {∞}`; `Infinity` sorts above every finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(Rational),
    Infinity,
}

impl Valuation {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl From<Rational> for Valuation {
    fn from(v: Rational) -> Self {
        Valuation::Finite(v)
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinity => write!(f, "∞"),
        }
    }
}

impl std::str::FromStr for Valuation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "∞" | "infinity" => Ok(Valuation::Infinity),
            other => parse_rational(other).map(Valuation::Finite),
        }
    }
}

/// Exact finite-support element `Σ λ_j t^(j/q)`.
///
/// Stored coefficients are nonzero and `q` is minimal; the zero element has
/// no terms and `q = 1`. Equality is structural on this canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxPoly {
    ramification: u64,
    terms: BTreeMap<i64, Rational>,
}

/// A truncated value: no term of `value` has exponent `>= cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuiseuxApprox {
    pub value: PuiseuxPoly,
    pub cutoff: Rational,
}

pub(crate) fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly {
            ramification: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The formal variable `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), &Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms(1, [(0, c)])
    }

    /// `coeff · t^exponent` for an arbitrary rational exponent.
    pub fn monomial(coeff: Rational, exponent: &Rational) -> Self {
        let q = exponent
            .denom()
            .to_u64()
            .expect("exponent denominator fits in u64");
        let j = exponent
            .numer()
            .to_i64()
            .expect("exponent numerator fits in i64");
        Self::from_terms(q, [(j, coeff)])
    }

    /// Builds `Σ c_j t^(j/q)`, merging repeated indices and canonicalising.
    pub fn from_terms<I>(ramification: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(ramification > 0, "ramification must be positive");
        let mut map: BTreeMap<i64, Rational> = BTreeMap::new();
        for (j, c) in terms {
            *map.entry(j).or_insert_with(Rational::zero) += c;
        }
        Self::canonical(ramification, map)
    }

    fn canonical(ramification: u64, mut terms: BTreeMap<i64, Rational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Self::zero();
        }
        let mut g = ramification;
        for &j in terms.keys() {
            g = g.gcd(&j.unsigned_abs());
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            let gi = g as i64;
            terms = terms.into_iter().map(|(j, c)| (j / gi, c)).collect();
        }
        PuiseuxPoly {
            ramification: ramification / g,
            terms,
        }
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    /// Raw `(j, λ_j)` pairs in increasing order of `j`.
    pub fn indexed_terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&j, c)| (j, c))
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &Rational)> + '_ {
        let q = self.ramification as i64;
        self.terms.iter().map(move |(&j, c)| (rat(j, q), c))
    }

    /// Number of nonzero terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.ramification == 1
            && self.terms.len() == 1
            && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms rewritten over the common ramification `q` (a multiple of ours).
    fn spread(&self, q: u64) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        let s = (q / self.ramification) as i64;
        self.terms.iter().map(move |(&j, c)| (j * s, c))
    }

    /// Minimum exponent of the support, `∞` for zero.
    pub fn valuation(&self) -> Valuation {
        match self.terms.keys().next() {
            Some(&j) => Valuation::Finite(rat(j, self.ramification as i64)),
            None => Valuation::Infinity,
        }
    }

    pub fn leading_term(&self) -> Option<(Rational, &Rational)> {
        self.terms().next()
    }

    /// Coefficient of `t^exponent` (zero when absent).
    pub fn residue_at(&self, exponent: &Rational) -> Rational {
        let q = BigInt::from(self.ramification);
        let scaled = exponent * Rational::from_integer(q);
        if !scaled.is_integer() {
            return Rational::zero();
        }
        scaled
            .to_integer()
            .to_i64()
            .and_then(|j| self.terms.get(&j).cloned())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PuiseuxPoly {
            ramification: self.ramification,
            terms: self.terms.iter().map(|(&j, x)| (j, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }

    fn filter_exponents(&self, keep: impl Fn(&Rational) -> bool) -> Self {
        let q = self.ramification as i64;
        let terms = self
            .terms
            .iter()
            .filter(|(&j, _)| keep(&rat(j, q)))
            .map(|(&j, c)| (j, c.clone()))
            .collect();
        Self::canonical(self.ramification, terms)
    }

    /// Keeps only the terms with exponent strictly below `bound`.
    pub fn truncate_below(&self, bound: &Rational) -> Self {
        self.filter_exponents(|e| e < bound)
    }

    /// Canonical representative of `self` modulo `L_n = {v > n}`: the terms
    /// with exponent `<= n`, kept verbatim.
    pub fn reduce_mod_threshold(&self, n: u64) -> Result<Self> {
        self.require_integral()?;
        let bound = Rational::from_integer(BigInt::from(n));
        Ok(self.filter_exponents(|e| *e <= bound))
    }

    /// Errors unless `v(self) >= 0`.
    pub fn require_integral(&self) -> Result<()> {
        match self.valuation() {
            Valuation::Finite(v) if v.is_negative() => Err(Error::OutsideValuationRing(v)),
            _ => Ok(()),
        }
    }

    /// Inverse up to exponent `cutoff`: `self · value − 1` only has terms of
    /// exponent `>= cutoff + v(self)`.
    pub fn invert_truncated(&self, cutoff: &Rational) -> Result<PuiseuxApprox> {
        let (lead_exp, lead_coeff) = self.leading_term().ok_or(Error::DivisionByZero)?;
        let lead_inv = Self::monomial(lead_coeff.recip(), &-lead_exp.clone());
        // self = lead · (1 + u) with v(u) > 0
        let u = &(self * &lead_inv) - &Self::one();
        let neg_u = -&u;
        let bound = cutoff + &lead_exp;

        let mut sum = Self::zero();
        let mut power = Self::one().truncate_below(&bound);
        while !power.is_zero() {
            sum = &sum + &power;
            power = (&power * &neg_u).truncate_below(&bound);
        }
        Ok(PuiseuxApprox {
            value: (&sum * &lead_inv).truncate_below(cutoff),
            cutoff: cutoff.clone(),
        })
    }

    /// Exact inverse, available only for monomials.
    pub fn invert_monomial(&self) -> Result<Self> {
        match self.terms.len() {
            0 => Err(Error::DivisionByZero),
            1 => {
                let (e, c) = self.leading_term().expect("one term");
                Ok(Self::monomial(c.recip(), &-e))
            }
            _ => Err(Error::InvalidInput(
                "only monomials have an exact inverse".into(),
            )),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Default for PuiseuxPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for PuiseuxPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for PuiseuxPoly {
    fn from(c: i64) -> Self {
        Self::constant(int(c))
    }
}

impl<'a> Add<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;

    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        let q = lcm(self.ramification, rhs.ramification);
        let mut terms: BTreeMap<i64, Rational> =
            self.spread(q).map(|(j, c)| (j, c.clone())).collect();
        for (j, c) in rhs.spread(q) {
            *terms.entry(j).or_insert_with(Rational::zero) += c;
        }
        PuiseuxPoly::canonical(q, terms)
    }
}

impl<'a> Sub<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;

    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a PuiseuxPoly> for &'a PuiseuxPoly {
    type Output = PuiseuxPoly;

    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        if self.is_zero() || rhs.is_zero() {
            return PuiseuxPoly::zero();
        }
        let q = lcm(self.ramification, rhs.ramification);
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (i, a) in self.spread(q) {
            for (j, b) in rhs.spread(q) {
                *terms.entry(i + j).or_insert_with(Rational::zero) += a * b;
            }
        }
        PuiseuxPoly::canonical(q, terms)
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;

    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            ramification: self.ramification,
            terms: self.terms.iter().map(|(&j, c)| (j, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<PuiseuxPoly> for PuiseuxPoly {
            type Output = PuiseuxPoly;

            fn $method(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PuiseuxPoly {
    type Output = PuiseuxPoly;

    fn neg(self) -> PuiseuxPoly {
        -&self
    }
}

impl fmt::Display for PuiseuxPoly {
    /// Text form accepted back by [`parse_series`], e.g. `3/2*t^(1/2) - t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (exp, coeff)) in self.terms().enumerate() {
            let negative = coeff.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = coeff.abs();
            if exp.is_zero() {
                write!(f, "{}", abs)?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{}*", abs)?;
            }
            if exp.is_one() {
                write!(f, "t")?;
            } else if exp.is_integer() && exp.is_positive() {
                write!(f, "t^{}", exp)?;
            } else {
                write!(f, "t^({})", exp)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for PuiseuxPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_series(s)
    }
}
