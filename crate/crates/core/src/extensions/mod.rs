//! Central extensions of big abelian groups by an explicit bilinear cocycle.
//!
//! The base group is free on symbols `ā_i, b̄_i` (`i` in an index set) with
//! coefficients in ℤ, 𝔽₂ or ℚ according to the [`DomainTag`]. The cocycle
//! `f(x, y) = Σ_i α_i(x) β_i(y)` pairs the `ā`-coefficients of `x` with the
//! `b̄`-coefficients of `y`, and the extension multiplies as
//! `(n, x)·(m, y) = (n + m + f(x, y), x + y)`.
//!
//! With these conventions `a_i ↦ (0, ā_i)`, `b_i ↦ (0, b̄_i)`, `c ↦ (1, 0)`
//! satisfies the presentation where all generators commute except
//! `[a_i, b_i] = c`.

mod pigeonhole;
mod word;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::puiseux::{parse_rational, Rational};

pub use pigeonhole::{pigeonhole_commutator, LabelRow, LabelTable, PigeonholeWitness};
pub use word::{Letter, Word};

/// An element `i` of the index set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GeneratorId(pub u64);

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Coefficient domain of the base group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DomainTag {
    /// Free abelian base, integer center.
    FreeInt,
    /// Free 𝔽₂-module base, center ℤ/2.
    ModTwo,
    /// Free ℚ-module base, rational center.
    Rational,
}

impl DomainTag {
    /// Canonical coefficient, or `None` when it vanishes in this domain.
    fn normalize(self, c: &Rational) -> Result<Option<Rational>> {
        let out = match self {
            DomainTag::Rational => c.clone(),
            DomainTag::FreeInt | DomainTag::ModTwo if !c.is_integer() => {
                return Err(Error::TagMismatch(format!(
                    "coefficient {} is not an integer",
                    c
                )))
            }
            DomainTag::FreeInt => c.clone(),
            DomainTag::ModTwo => Rational::from_integer(c.to_integer().mod_floor(&BigInt::from(2))),
        };
        Ok((!out.is_zero()).then_some(out))
    }

    fn name(self) -> &'static str {
        match self {
            DomainTag::FreeInt => "free-int",
            DomainTag::ModTwo => "mod-two",
            DomainTag::Rational => "rational",
        }
    }
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DomainTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free-int" => Ok(DomainTag::FreeInt),
            "mod-two" => Ok(DomainTag::ModTwo),
            "rational" => Ok(DomainTag::Rational),
            other => Err(Error::InvalidInput(format!(
                "unknown domain tag '{}'",
                other
            ))),
        }
    }
}

fn tag_mismatch(a: DomainTag, b: DomainTag) -> Error {
    Error::TagMismatch(format!("{} vs {}", a, b))
}

/// Finitely supported element of the base group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseAbelian {
    tag: DomainTag,
    a: BTreeMap<GeneratorId, Rational>,
    b: BTreeMap<GeneratorId, Rational>,
}

impl SparseAbelian {
    pub fn zero(tag: DomainTag) -> Self {
        SparseAbelian {
            tag,
            a: BTreeMap::new(),
            b: BTreeMap::new(),
        }
    }

    /// `ā_i`.
    pub fn a(tag: DomainTag, i: u64) -> Self {
        let mut x = Self::zero(tag);
        x.a.insert(GeneratorId(i), Rational::one());
        x
    }

    /// `b̄_i`.
    pub fn b(tag: DomainTag, i: u64) -> Self {
        let mut x = Self::zero(tag);
        x.b.insert(GeneratorId(i), Rational::one());
        x
    }

    pub fn from_coeffs<A, B>(tag: DomainTag, a: A, b: B) -> Result<Self>
    where
        A: IntoIterator<Item = (GeneratorId, Rational)>,
        B: IntoIterator<Item = (GeneratorId, Rational)>,
    {
        let mut x = Self::zero(tag);
        for (i, c) in a {
            let slot = x.a.entry(i).or_insert_with(Rational::zero);
            *slot += c;
        }
        for (i, c) in b {
            let slot = x.b.entry(i).or_insert_with(Rational::zero);
            *slot += c;
        }
        x.a = normalize_map(tag, x.a)?;
        x.b = normalize_map(tag, x.b)?;
        Ok(x)
    }

    pub fn tag(&self) -> DomainTag {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }

    /// `α_i(self)`, the coefficient of `ā_i`.
    pub fn alpha(&self, i: GeneratorId) -> Rational {
        self.a.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `β_i(self)`, the coefficient of `b̄_i`.
    pub fn beta(&self, i: GeneratorId) -> Rational {
        self.b.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn a_coeffs(&self) -> impl Iterator<Item = (GeneratorId, &Rational)> + '_ {
        self.a.iter().map(|(&i, c)| (i, c))
    }

    pub fn b_coeffs(&self) -> impl Iterator<Item = (GeneratorId, &Rational)> + '_ {
        self.b.iter().map(|(&i, c)| (i, c))
    }

    fn check_tag(&self, other: &SparseAbelian) -> Result<()> {
        if self.tag != other.tag {
            return Err(tag_mismatch(self.tag, other.tag));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseAbelian) -> Result<SparseAbelian> {
        self.check_tag(other)?;
        Self::from_coeffs(
            self.tag,
            self.a.iter().chain(&other.a).map(|(&i, c)| (i, c.clone())),
            self.b.iter().chain(&other.b).map(|(&i, c)| (i, c.clone())),
        )
    }

    pub fn neg(&self) -> SparseAbelian {
        self.scale(&-Rational::one())
            .expect("−1 is a scalar in every domain")
    }

    /// Multiplication by a scalar of the coefficient domain.
    pub fn scale(&self, k: &Rational) -> Result<SparseAbelian> {
        Self::from_coeffs(
            self.tag,
            self.a.iter().map(|(&i, c)| (i, c * k)),
            self.b.iter().map(|(&i, c)| (i, c * k)),
        )
    }
}

fn normalize_map(
    tag: DomainTag,
    map: BTreeMap<GeneratorId, Rational>,
) -> Result<BTreeMap<GeneratorId, Rational>> {
    let mut out = BTreeMap::new();
    for (i, c) in map {
        if let Some(c) = tag.normalize(&c)? {
            out.insert(i, c);
        }
    }
    Ok(out)
}

fn write_coeff(f: &mut fmt::Formatter<'_>, first: bool, c: &Rational, sym: &str) -> fmt::Result {
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let abs = c.abs();
    if abs.is_one() {
        write!(f, "{}", sym)
    } else {
        write!(f, "{}*{}", abs, sym)
    }
}

impl fmt::Display for SparseAbelian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in &self.a {
            write_coeff(f, first, c, &format!("a{}", i))?;
            first = false;
        }
        for (i, c) in &self.b {
            write_coeff(f, first, c, &format!("b{}", i))?;
            first = false;
        }
        Ok(())
    }
}

/// Kernel coordinate of an extension element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CenterScalar {
    Int(BigInt),
    Bit(bool),
    Rat(Rational),
    /// Integer modulo `modulus`, reduced into `[0, modulus)`.
    Mod {
        value: BigInt,
        modulus: BigInt,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum CenterKind {
    Int,
    Bit,
    Rat,
    Mod(BigInt),
}

impl CenterScalar {
    pub fn zero(tag: DomainTag) -> Self {
        Self::from_kind(&Self::kind_for(tag), Rational::zero())
    }

    pub fn one(tag: DomainTag) -> Self {
        Self::from_kind(&Self::kind_for(tag), Rational::one())
    }

    fn kind_for(tag: DomainTag) -> CenterKind {
        match tag {
            DomainTag::FreeInt => CenterKind::Int,
            DomainTag::ModTwo => CenterKind::Bit,
            DomainTag::Rational => CenterKind::Rat,
        }
    }

    fn kind(&self) -> CenterKind {
        match self {
            CenterScalar::Int(_) => CenterKind::Int,
            CenterScalar::Bit(_) => CenterKind::Bit,
            CenterScalar::Rat(_) => CenterKind::Rat,
            CenterScalar::Mod { modulus, .. } => CenterKind::Mod(modulus.clone()),
        }
    }

    /// The domain this scalar belongs to; quotient scalars are `FreeInt`.
    pub fn tag(&self) -> DomainTag {
        match self {
            CenterScalar::Int(_) | CenterScalar::Mod { .. } => DomainTag::FreeInt,
            CenterScalar::Bit(_) => DomainTag::ModTwo,
            CenterScalar::Rat(_) => DomainTag::Rational,
        }
    }

    /// Reduces an integral (or, for `Rat`, arbitrary) value into `kind`.
    fn from_kind(kind: &CenterKind, value: Rational) -> Self {
        match kind {
            CenterKind::Rat => CenterScalar::Rat(value),
            CenterKind::Int => CenterScalar::Int(value.to_integer()),
            CenterKind::Bit => CenterScalar::Bit(value.to_integer().is_odd()),
            CenterKind::Mod(m) => CenterScalar::Mod {
                value: value.to_integer().mod_floor(m),
                modulus: m.clone(),
            },
        }
    }

    fn as_rational(&self) -> Rational {
        match self {
            CenterScalar::Int(n) | CenterScalar::Mod { value: n, .. } => {
                Rational::from_integer(n.clone())
            }
            CenterScalar::Bit(b) => Rational::from_integer(BigInt::from(*b as u8)),
            CenterScalar::Rat(q) => q.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_zero()
    }
}

impl fmt::Display for CenterScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterScalar::Int(n) | CenterScalar::Mod { value: n, .. } => write!(f, "{}", n),
            CenterScalar::Bit(b) => write!(f, "{}", *b as u8),
            CenterScalar::Rat(q) => write!(f, "{}", q),
        }
    }
}

fn raw_cocycle(x: &SparseAbelian, y: &SparseAbelian) -> Rational {
    x.a.iter()
        .filter_map(|(i, ax)| y.b.get(i).map(|by| ax * by))
        .sum()
}

/// `f(x, y) = Σ_i α_i(x) β_i(y)` in the center of the domain.
pub fn cocycle_eval(x: &SparseAbelian, y: &SparseAbelian) -> Result<CenterScalar> {
    x.check_tag(y)?;
    Ok(CenterScalar::from_kind(
        &CenterScalar::kind_for(x.tag),
        raw_cocycle(x, y),
    ))
}

/// Element `(n, x)` of the extension; the identity is `(0, 0)` and the
/// central generator is `c = (1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    center: CenterScalar,
    shadow: SparseAbelian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtOp {
    Multiply,
    Invert,
    Commutator,
}

impl ExtElement {
    pub fn new(center: CenterScalar, shadow: SparseAbelian) -> Result<Self> {
        if center.tag() != shadow.tag() {
            return Err(tag_mismatch(center.tag(), shadow.tag()));
        }
        Ok(ExtElement { center, shadow })
    }

    pub fn identity(tag: DomainTag) -> Self {
        ExtElement {
            center: CenterScalar::zero(tag),
            shadow: SparseAbelian::zero(tag),
        }
    }

    /// The central generator `c = (1, 0)`.
    pub fn c(tag: DomainTag) -> Self {
        ExtElement {
            center: CenterScalar::one(tag),
            shadow: SparseAbelian::zero(tag),
        }
    }

    /// Image `(0, ā_i)` of the generator `a_i`.
    pub fn gen_a(tag: DomainTag, i: u64) -> Self {
        ExtElement {
            center: CenterScalar::zero(tag),
            shadow: SparseAbelian::a(tag, i),
        }
    }

    /// Image `(0, b̄_i)` of the generator `b_i`.
    pub fn gen_b(tag: DomainTag, i: u64) -> Self {
        ExtElement {
            center: CenterScalar::zero(tag),
            shadow: SparseAbelian::b(tag, i),
        }
    }

    pub fn center(&self) -> &CenterScalar {
        &self.center
    }

    /// Image under the projection onto the base group.
    pub fn shadow(&self) -> &SparseAbelian {
        &self.shadow
    }

    pub fn tag(&self) -> DomainTag {
        self.shadow.tag
    }

    pub fn is_identity(&self) -> bool {
        self.center.is_zero() && self.shadow.is_zero()
    }

    /// Whether this is the central generator `(1, 0)` of its context.
    pub fn is_c(&self) -> bool {
        self.shadow.is_zero()
            && self.center == CenterScalar::from_kind(&self.center.kind(), Rational::one())
    }

    fn check_compatible(&self, other: &ExtElement) -> Result<()> {
        self.shadow.check_tag(&other.shadow)?;
        if self.center.kind() != other.center.kind() {
            return Err(Error::TagMismatch(
                "center scalars live in different quotients".into(),
            ));
        }
        Ok(())
    }

    /// `(n, x)·(m, y) = (n + m + f(x, y), x + y)`.
    pub fn multiply(&self, other: &ExtElement) -> Result<ExtElement> {
        self.check_compatible(other)?;
        let n = self.center.as_rational()
            + other.center.as_rational()
            + raw_cocycle(&self.shadow, &other.shadow);
        Ok(ExtElement {
            center: CenterScalar::from_kind(&self.center.kind(), n),
            shadow: self.shadow.add(&other.shadow)?,
        })
    }

    /// `(−n + f(x, x), −x)`; over 𝔽₂ this is `(n + f(x, x), x)`.
    pub fn inverse(&self) -> ExtElement {
        let n = -self.center.as_rational() + raw_cocycle(&self.shadow, &self.shadow);
        ExtElement {
            center: CenterScalar::from_kind(&self.center.kind(), n),
            shadow: self.shadow.neg(),
        }
    }

    /// `g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, other: &ExtElement) -> Result<ExtElement> {
        self.inverse()
            .multiply(&other.inverse())?
            .multiply(self)?
            .multiply(other)
    }

    pub fn pow(&self, k: i64) -> ExtElement {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = ExtElement {
            center: CenterScalar::from_kind(&self.center.kind(), Rational::zero()),
            shadow: SparseAbelian::zero(self.tag()),
        };
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same context");
            }
        }
        acc
    }

    /// Least `k` in `1..=bound` with `self^k = e`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.multiply(self).expect("same context");
        }
        None
    }
}

pub fn ext_group_ops(g: &ExtElement, h: &ExtElement, op: ExtOp) -> Result<ExtElement> {
    g.check_compatible(h)?;
    match op {
        ExtOp::Multiply => g.multiply(h),
        ExtOp::Invert => Ok(g.inverse()),
        ExtOp::Commutator => g.commutator(h),
    }
}

impl fmt::Display for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.center, self.shadow)
    }
}

/// Left-to-right product of generator images: `a(i) ↦ (0, ā_i)`,
/// `b(i) ↦ (0, b̄_i)`, `c ↦ (1, 0)`.
pub fn eval_word(word: &Word, tag: DomainTag) -> ExtElement {
    word.letters()
        .iter()
        .fold(ExtElement::identity(tag), |acc, (letter, exp)| {
            let g = match letter {
                Letter::A(i) => ExtElement::gen_a(tag, i.0),
                Letter::B(i) => ExtElement::gen_b(tag, i.0),
                Letter::C => ExtElement::c(tag),
            };
            acc.multiply(&g.pow(*exp)).expect("same tag")
        })
}

/// Image in the quotient by `⟨c^n⟩`.
pub fn quotient_center(g: &ExtElement, n: &BigInt) -> Result<ExtElement> {
    if g.tag() != DomainTag::FreeInt {
        return Err(tag_mismatch(g.tag(), DomainTag::FreeInt));
    }
    if n < &BigInt::one() {
        return Err(Error::InvalidModulus);
    }
    if let CenterScalar::Mod { modulus, .. } = &g.center {
        if !modulus.is_multiple_of(n) {
            return Err(Error::TagMismatch(format!(
                "cannot pass from ℤ/{} to ℤ/{}",
                modulus, n
            )));
        }
    }
    Ok(ExtElement {
        center: CenterScalar::from_kind(&CenterKind::Mod(n.clone()), g.center.as_rational()),
        shadow: g.shadow.clone(),
    })
}

/// The unique `h` with `h^divisor = g` in the ℚ-form of the extension.
///
/// `h = (m, x/d)` with `m = (n − C(d,2)·f(x/d, x/d)) / d`.
pub fn rational_half_power(g: &ExtElement, divisor: u64) -> Result<ExtElement> {
    if g.tag() != DomainTag::Rational {
        return Err(tag_mismatch(g.tag(), DomainTag::Rational));
    }
    if divisor == 0 {
        return Err(Error::DivisionByZero);
    }
    let d = Rational::from_integer(BigInt::from(divisor));
    let y = g.shadow.scale(&d.recip())?;
    let pairs = Rational::from_integer(BigInt::from(divisor) * BigInt::from(divisor - 1) / 2);
    let m = (g.center.as_rational() - pairs * raw_cocycle(&y, &y)) / d;
    Ok(ExtElement {
        center: CenterScalar::Rat(m),
        shadow: y,
    })
}

/// One relation checked by [`check_presentation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PresentationReport {
    pub checks: Vec<RelationCheck>,
}

impl PresentationReport {
    fn record(&mut self, relation: String, holds: bool) {
        self.checks.push(RelationCheck { relation, holds });
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> + '_ {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Checks the defining relations on sampled index pairs.
///
/// For every `(i, j)`: `[a_i, b_i] = c`; when `i ≠ j` the mixed pairs
/// commute; `c` commutes with `a_i, b_i`. Over 𝔽₂ also `a_i² = b_i² = e`.
/// Over ℤ and ℚ, `c^k ≠ e` for `1 <= k <= order_bound`.
pub fn check_presentation(
    tag: DomainTag,
    samples: &[(GeneratorId, GeneratorId)],
    order_bound: u64,
) -> PresentationReport {
    let mut report = PresentationReport::default();
    let c = ExtElement::c(tag);
    let comm = |g: &ExtElement, h: &ExtElement| g.commutator(h).expect("same tag");
    for &(i, j) in samples {
        let (ai, bi) = (ExtElement::gen_a(tag, i.0), ExtElement::gen_b(tag, i.0));
        let (aj, bj) = (ExtElement::gen_a(tag, j.0), ExtElement::gen_b(tag, j.0));
        report.record(format!("[a{i}, b{i}] = c"), comm(&ai, &bi) == c);
        report.record(format!("[a{j}, b{j}] = c"), comm(&aj, &bj) == c);
        report.record(format!("[c, a{i}] = e"), comm(&c, &ai).is_identity());
        report.record(format!("[c, b{i}] = e"), comm(&c, &bi).is_identity());
        if i != j {
            report.record(format!("[a{i}, b{j}] = e"), comm(&ai, &bj).is_identity());
            report.record(format!("[a{j}, b{i}] = e"), comm(&aj, &bi).is_identity());
            report.record(format!("[a{i}, a{j}] = e"), comm(&ai, &aj).is_identity());
            report.record(format!("[b{i}, b{j}] = e"), comm(&bi, &bj).is_identity());
        }
        if tag == DomainTag::ModTwo {
            report.record(format!("a{i}^2 = e"), ai.pow(2).is_identity());
            report.record(format!("b{i}^2 = e"), bi.pow(2).is_identity());
        }
    }
    if tag != DomainTag::ModTwo && order_bound > 0 {
        report.record(
            format!("c^k != e for 1 <= k <= {}", order_bound),
            c.order(order_bound).is_none(),
        );
    }
    report
}

#[derive(Serialize, Deserialize)]
struct SparseWire {
    tag: DomainTag,
    #[serde(default)]
    a: Vec<(GeneratorId, String)>,
    #[serde(default)]
    b: Vec<(GeneratorId, String)>,
}

fn parse_pairs<E: de::Error>(
    pairs: Vec<(GeneratorId, String)>,
) -> std::result::Result<Vec<(GeneratorId, Rational)>, E> {
    pairs
        .into_iter()
        .map(|(i, c)| parse_rational(&c).map(|c| (i, c)).map_err(E::custom))
        .collect()
}

/// `{"tag": "free-int", "a": [[1, "2"]], "b": [[2, "-1"]]}`.
impl Serialize for SparseAbelian {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs = |m: &BTreeMap<GeneratorId, Rational>| {
            m.iter().map(|(&i, c)| (i, c.to_string())).collect()
        };
        SparseWire {
            tag: self.tag,
            a: pairs(&self.a),
            b: pairs(&self.b),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SparseAbelian {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = SparseWire::deserialize(deserializer)?;
        let a = parse_pairs::<D::Error>(wire.a)?;
        let b = parse_pairs::<D::Error>(wire.b)?;
        SparseAbelian::from_coeffs(wire.tag, a, b).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum CenterWire {
    Int(String),
    Bit(bool),
    Rat(String),
    Mod { value: String, modulus: String },
}

/// `{"int": "3"}`, `{"bit": true}`, `{"rat": "1/2"}` or
/// `{"mod": {"value": "2", "modulus": "3"}}`.
impl Serialize for CenterScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CenterScalar::Int(n) => CenterWire::Int(n.to_string()),
            CenterScalar::Bit(b) => CenterWire::Bit(*b),
            CenterScalar::Rat(q) => CenterWire::Rat(q.to_string()),
            CenterScalar::Mod { value, modulus } => CenterWire::Mod {
                value: value.to_string(),
                modulus: modulus.to_string(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CenterScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let int = |s: &str| s.trim().parse::<BigInt>().map_err(de::Error::custom);
        Ok(match CenterWire::deserialize(deserializer)? {
            CenterWire::Int(s) => CenterScalar::Int(int(&s)?),
            CenterWire::Bit(b) => CenterScalar::Bit(b),
            CenterWire::Rat(s) => CenterScalar::Rat(parse_rational(&s).map_err(de::Error::custom)?),
            CenterWire::Mod { value, modulus } => {
                let modulus = int(&modulus)?;
                if modulus < BigInt::one() {
                    return Err(de::Error::custom("modulus must be at least 1"));
                }
                CenterScalar::Mod {
                    value: int(&value)?.mod_floor(&modulus),
                    modulus,
                }
            }
        })
    }
}

#[derive(Serialize, Deserialize)]
struct ExtWire {
    center: CenterScalar,
    shadow: SparseAbelian,
}

/// `{"center": <scalar>, "shadow": <sparse>}`.
impl Serialize for ExtElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExtWire {
            center: self.center.clone(),
            shadow: self.shadow.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExtElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = ExtWire::deserialize(deserializer)?;
        ExtElement::new(wire.center, wire.shadow).map_err(de::Error::custom)
    }
}

/// Small integer helper for callers building words programmatically.
pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::{int, rat};

    const Z: DomainTag = DomainTag::FreeInt;
    const F2: DomainTag = DomainTag::ModTwo;
    const Q: DomainTag = DomainTag::Rational;

    fn sparse(tag: DomainTag, a: &[(u64, Rational)], b: &[(u64, Rational)]) -> SparseAbelian {
        SparseAbelian::from_coeffs(
            tag,
            a.iter().map(|(i, c)| (GeneratorId(*i), c.clone())),
            b.iter().map(|(i, c)| (GeneratorId(*i), c.clone())),
        )
        .unwrap()
    }

    #[test]
    fn cocycle_examples() {
        let (a1, b1) = (SparseAbelian::a(Z, 1), SparseAbelian::b(Z, 1));
        assert_eq!(cocycle_eval(&a1, &b1).unwrap(), CenterScalar::Int(1.into()));
        assert_eq!(cocycle_eval(&b1, &a1).unwrap(), CenterScalar::Int(0.into()));
        let x = sparse(Z, &[(1, int(2)), (2, int(1))], &[]);
        let y = sparse(Z, &[], &[(1, int(3))]);
        assert_eq!(cocycle_eval(&x, &y).unwrap(), CenterScalar::Int(6.into()));
        assert!(matches!(
            cocycle_eval(&a1, &SparseAbelian::b(F2, 1)),
            Err(Error::TagMismatch(_))
        ));
    }

    #[test]
    fn multiplication_examples() {
        let g = ExtElement::gen_a(Z, 1)
            .multiply(&ExtElement::gen_b(Z, 1))
            .unwrap();
        assert_eq!(g.center(), &CenterScalar::Int(1.into()));
        assert_eq!(
            g.shadow(),
            &SparseAbelian::a(Z, 1).add(&SparseAbelian::b(Z, 1)).unwrap()
        );
        assert_eq!(g.to_string(), "(1, a1 + b1)");

        let h = ExtElement::new(
            CenterScalar::Int(3.into()),
            sparse(Z, &[(1, int(2))], &[(2, int(-1))]),
        )
        .unwrap();
        assert_eq!(h.multiply(&ExtElement::identity(Z)).unwrap(), h);
        assert!(h.multiply(&h.inverse()).unwrap().is_identity());
        assert!(h.inverse().multiply(&h).unwrap().is_identity());
    }

    #[test]
    fn commutator_formula() {
        let g = ExtElement::new(
            CenterScalar::Int(5.into()),
            sparse(Z, &[(1, int(2)), (3, int(-1))], &[(1, int(1))]),
        )
        .unwrap();
        let h = ExtElement::new(
            CenterScalar::Int((-2).into()),
            sparse(Z, &[(1, int(1))], &[(1, int(4)), (3, int(7))]),
        )
        .unwrap();
        let comm = ext_group_ops(&g, &h, ExtOp::Commutator).unwrap();
        let f = |x: &ExtElement, y: &ExtElement| raw_cocycle(x.shadow(), y.shadow());
        let expected = f(&g, &h) - f(&h, &g);
        assert_eq!(comm.center(), &CenterScalar::Int(expected.to_integer()));
        assert!(comm.shadow().is_zero());
    }

    #[test]
    fn word_examples() {
        let w: Word = "comm(a2^-1 a1, b3^-1 b1)".parse().unwrap();
        assert!(eval_word(&w, Z).is_c());
        assert!(eval_word(&Word::default(), Z).is_identity());
        let c5 = eval_word(&"c^5".parse().unwrap(), Z);
        assert_eq!(c5.to_string(), "(5, 0)");
    }

    #[test]
    fn presentation_examples() {
        let report = check_presentation(Z, &[(GeneratorId(1), GeneratorId(2))], 100);
        assert!(
            report.all_hold(),
            "{:?}",
            report.failures().collect::<Vec<_>>()
        );

        let report = check_presentation(F2, &[(GeneratorId(7), GeneratorId(7))], 0);
        assert!(report.all_hold());
        assert!(ExtElement::gen_a(F2, 7).pow(2).is_identity());
        let c = ExtElement::gen_a(F2, 7)
            .commutator(&ExtElement::gen_b(F2, 7))
            .unwrap();
        assert!(c.is_c() && !c.is_identity());
        assert!(ExtElement::c(F2).pow(2).is_identity());

        let a12 = ExtElement::gen_a(Z, 1)
            .commutator(&ExtElement::gen_a(Z, 2))
            .unwrap();
        assert!(a12.is_identity());
    }

    #[test]
    fn quotient_examples() {
        let c = ExtElement::c(Z);
        let n = BigInt::from(3);
        assert!(quotient_center(&c.pow(3), &n).unwrap().is_identity());
        let q = quotient_center(&c.pow(5), &BigInt::from(2)).unwrap();
        assert_eq!(q.to_string(), "(1, 0)");
        assert_eq!(quotient_center(&c, &n).unwrap().order(10), Some(3));
        assert_eq!(
            quotient_center(&c, &BigInt::zero()),
            Err(Error::InvalidModulus)
        );
        assert!(matches!(
            quotient_center(&ExtElement::c(Q), &n),
            Err(Error::TagMismatch(_))
        ));
        assert_eq!(c.order(1000), None);
    }

    #[test]
    fn rational_root_examples() {
        let g = ExtElement::gen_a(Q, 1);
        let h = rational_half_power(&g, 2).unwrap();
        assert_eq!(h.shadow(), &sparse(Q, &[(1, rat(1, 2))], &[]));
        assert!(h.center().is_zero());
        assert_eq!(h.pow(2), g);
        assert_eq!(rational_half_power(&g, 1).unwrap(), g);
        let g = ExtElement::new(CenterScalar::Rat(int(0)), sparse(Q, &[], &[(2, int(3))])).unwrap();
        assert_eq!(rational_half_power(&g, 3).unwrap(), ExtElement::gen_b(Q, 2));
        // mixed shadow: the center correction is nonzero
        let g = ExtElement::new(
            CenterScalar::Rat(rat(1, 3)),
            sparse(Q, &[(1, int(1))], &[(1, int(2))]),
        )
        .unwrap();
        for d in 1..6 {
            assert_eq!(rational_half_power(&g, d).unwrap().pow(d as i64), g);
        }
        assert!(rational_half_power(&ExtElement::c(Z), 2).is_err());
    }

    #[test]
    fn mod_two_inverse_matches_formula() {
        let x = sparse(F2, &[(1, int(1)), (2, int(1))], &[(1, int(1))]);
        let g = ExtElement::new(CenterScalar::Bit(true), x.clone()).unwrap();
        let inv = g.inverse();
        // (n + f(x, x), x)
        let f = cocycle_eval(&x, &x).unwrap();
        let expected_bit = matches!(f, CenterScalar::Bit(true)) ^ true;
        assert_eq!(inv.center(), &CenterScalar::Bit(expected_bit));
        assert_eq!(inv.shadow(), &x);
        assert!(g.multiply(&inv).unwrap().is_identity());
    }

    #[test]
    fn json_forms() {
        let g = ExtElement::new(
            CenterScalar::Int(3.into()),
            sparse(Z, &[(1, int(2))], &[(2, int(-1))]),
        )
        .unwrap();
        let json = serde_json::to_string(&g).unwrap();
        assert_eq!(
            json,
            r#"{"center":{"int":"3"},"shadow":{"tag":"free-int","a":[[1,"2"]],"b":[[2,"-1"]]}}"#
        );
        assert_eq!(serde_json::from_str::<ExtElement>(&json).unwrap(), g);
        let q = quotient_center(&g, &BigInt::from(2)).unwrap();
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(serde_json::from_str::<ExtElement>(&json).unwrap(), q);
        let bad = r#"{"center":{"bit":true},"shadow":{"tag":"free-int"}}"#;
        assert!(serde_json::from_str::<ExtElement>(bad).is_err());
        let bad = r#"{"tag":"free-int","a":[[1,"1/2"]]}"#;
        assert!(serde_json::from_str::<SparseAbelian>(bad).is_err());
    }
}
