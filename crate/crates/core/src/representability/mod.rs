//! Separating families of homomorphisms into countable targets.
//!
//! A family separates a group when every non-identity element has some
//! member with a non-identity value. Families here are finite lists that
//! stand in for countable sequences; separation is checked per sample.

mod finite;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::puiseux::{parse_rational, Rational};
use crate::unitriangular::UniMatrix;

pub use finite::{enumerate_faithful_actions, induced_action, FiniteAction, FiniteGroupTable};

/// Group law and identity test for a family's domain.
pub trait GroupElement: Clone {
    fn op(&self, other: &Self) -> Result<Self>;
    fn is_identity(&self) -> bool;
}

/// Finite ℚ-combination of abstract basis symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalReal {
    coeffs: BTreeMap<String, Rational>,
}

impl FormalReal {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(symbol: impl Into<String>) -> Self {
        Self::from_coeffs([(symbol.into(), Rational::one())])
    }

    /// The `k`-th standard symbol `e<k>`.
    pub fn e(k: usize) -> Self {
        Self::basis(format!("e{}", k))
    }

    pub fn from_coeffs<I, S>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<String>,
    {
        let mut out = BTreeMap::new();
        for (s, c) in coeffs {
            *out.entry(s.into()).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        FormalReal { coeffs: out }
    }

    pub fn coeff(&self, symbol: &str) -> Rational {
        self.coeffs
            .get(symbol)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&str, &Rational)> + '_ {
        self.coeffs.iter().map(|(s, c)| (s.as_str(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &FormalReal) -> FormalReal {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(s, c)| (s.clone(), c.clone())),
        )
    }

    pub fn scale(&self, k: &Rational) -> FormalReal {
        Self::from_coeffs(self.coeffs.iter().map(|(s, c)| (s.clone(), c * k)))
    }
}

impl fmt::Display for FormalReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (s, c)) in self.coeffs.iter().enumerate() {
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if c.abs().is_one() {
                write!(f, "{}", s)?;
            } else {
                write!(f, "{}*{}", c.abs(), s)?;
            }
        }
        Ok(())
    }
}

/// `{"e1": "3", "e2": "-1/2"}`.
impl Serialize for FormalReal {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&String, String> = self
            .coeffs
            .iter()
            .map(|(s, c)| (s, c.to_string()))
            .collect();
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalReal {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let map = BTreeMap::<String, String>::deserialize(deserializer)?;
        let coeffs = map
            .into_iter()
            .map(|(s, c)| parse_rational(&c).map(|c| (s, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(FormalReal::from_coeffs(coeffs))
    }
}

impl GroupElement for FormalReal {
    fn op(&self, other: &Self) -> Result<Self> {
        Ok(self.add(other))
    }

    fn is_identity(&self) -> bool {
        self.is_zero()
    }
}

/// Reduces into `[0, 1)`.
pub fn mod_one(q: &Rational) -> Rational {
    q - q.floor()
}

/// Element of `ℚ/ℤ ⊕ FormalReal`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "CircleWire")]
pub struct CircleElement {
    #[serde(with = "crate::puiseux::rational_string")]
    torsion: Rational,
    free: FormalReal,
}

/// `{"torsion": "1/3", "free": {"e1": "1"}}`.
#[derive(Deserialize)]
struct CircleWire {
    #[serde(with = "crate::puiseux::rational_string")]
    torsion: Rational,
    #[serde(default)]
    free: FormalReal,
}

impl From<CircleWire> for CircleElement {
    fn from(w: CircleWire) -> Self {
        CircleElement::new(w.torsion, w.free)
    }
}

impl CircleElement {
    pub fn new(torsion: Rational, free: FormalReal) -> Self {
        CircleElement {
            torsion: mod_one(&torsion),
            free,
        }
    }

    pub fn torsion(&self) -> &Rational {
        &self.torsion
    }

    pub fn free(&self) -> &FormalReal {
        &self.free
    }
}

impl fmt::Display for CircleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.torsion, self.free)
    }
}

impl GroupElement for CircleElement {
    fn op(&self, other: &Self) -> Result<Self> {
        Ok(CircleElement::new(
            &self.torsion + &other.torsion,
            self.free.add(&other.free),
        ))
    }

    fn is_identity(&self) -> bool {
        self.torsion.is_zero() && self.free.is_zero()
    }
}

impl GroupElement for UniMatrix {
    fn op(&self, other: &Self) -> Result<Self> {
        self.multiply(other)
    }

    fn is_identity(&self) -> bool {
        UniMatrix::is_identity(self)
    }
}

impl<A: GroupElement, B: GroupElement> GroupElement for (A, B) {
    fn op(&self, other: &Self) -> Result<Self> {
        Ok((self.0.op(&other.0)?, self.1.op(&other.1)?))
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity() && self.1.is_identity()
    }
}

impl GroupElement for () {
    fn op(&self, _: &Self) -> Result<Self> {
        Ok(())
    }

    fn is_identity(&self) -> bool {
        true
    }
}

/// Value of a family member in a countable group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TargetWire", into = "TargetWire")]
pub enum Target {
    Rational(Rational),
    /// Representative in `[0, 1)`.
    RationalModOne(Rational),
    /// A matrix reduced modulo `L_level`.
    Matrix {
        level: u64,
        matrix: UniMatrix,
    },
}

/// `{"kind": "rational", "value": "1/2"}`, `{"kind": "rational-mod-one", ...}`
/// or `{"kind": "matrix", "value": {"level": n, "matrix": <matrix>}}`.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
enum TargetWire {
    Rational(String),
    RationalModOne(String),
    Matrix { level: u64, matrix: UniMatrix },
}

impl From<Target> for TargetWire {
    fn from(t: Target) -> Self {
        match t {
            Target::Rational(q) => TargetWire::Rational(q.to_string()),
            Target::RationalModOne(q) => TargetWire::RationalModOne(q.to_string()),
            Target::Matrix { level, matrix } => TargetWire::Matrix { level, matrix },
        }
    }
}

impl TryFrom<TargetWire> for Target {
    type Error = Error;

    fn try_from(w: TargetWire) -> Result<Self> {
        Ok(match w {
            TargetWire::Rational(s) => Target::Rational(parse_rational(&s)?),
            TargetWire::RationalModOne(s) => Target::RationalModOne(mod_one(&parse_rational(&s)?)),
            TargetWire::Matrix { level, matrix } => Target::Matrix { level, matrix },
        })
    }
}

impl Target {
    pub fn is_identity(&self) -> bool {
        match self {
            Target::Rational(q) | Target::RationalModOne(q) => q.is_zero(),
            Target::Matrix { matrix, .. } => matrix.is_identity(),
        }
    }

    /// The target group's operation.
    pub fn combine(&self, other: &Target) -> Result<Target> {
        match (self, other) {
            (Target::Rational(p), Target::Rational(q)) => Ok(Target::Rational(p + q)),
            (Target::RationalModOne(p), Target::RationalModOne(q)) => {
                Ok(Target::RationalModOne(mod_one(&(p + q))))
            }
            (
                Target::Matrix {
                    level: m,
                    matrix: u,
                },
                Target::Matrix {
                    level: n,
                    matrix: v,
                },
            ) if m == n => Ok(Target::Matrix {
                level: *m,
                matrix: u.multiply(v)?.reduce_mod(*m)?,
            }),
            _ => Err(Error::InvalidInput("incompatible target values".into())),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Rational(q) => write!(f, "{}", q),
            Target::RationalModOne(q) => write!(f, "{} mod 1", q),
            Target::Matrix { level, matrix } => write!(f, "{} mod L{}", matrix, level),
        }
    }
}

type Evaluator<G> = Arc<dyn Fn(&G) -> Result<Target> + Send + Sync>;

/// A named homomorphism into a countable target.
pub struct Member<G> {
    name: String,
    eval: Evaluator<G>,
}

impl<G> Clone for Member<G> {
    fn clone(&self) -> Self {
        Member {
            name: self.name.clone(),
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<G> Member<G> {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&G) -> Result<Target> + Send + Sync + 'static,
    {
        Member {
            name: name.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, g: &G) -> Result<Target> {
        (self.eval)(g)
    }
}

pub struct SeparatingFamily<G> {
    members: Vec<Member<G>>,
}

impl<G> Clone for SeparatingFamily<G> {
    fn clone(&self) -> Self {
        SeparatingFamily {
            members: self.members.clone(),
        }
    }
}

impl<G> Default for SeparatingFamily<G> {
    fn default() -> Self {
        SeparatingFamily {
            members: Vec::new(),
        }
    }
}

impl<G> fmt::Debug for SeparatingFamily<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.members.iter().map(|m| &m.name))
            .finish()
    }
}

impl<G: 'static> SeparatingFamily<G> {
    pub fn new(members: Vec<Member<G>>) -> Self {
        SeparatingFamily { members }
    }

    pub fn members(&self) -> &[Member<G>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|m| m.name.clone()).collect()
    }

    pub fn evaluate(&self, g: &G) -> Result<Vec<Target>> {
        self.members.iter().map(|m| m.eval(g)).collect()
    }

    /// Keeps only the members whose names satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&str) -> bool) -> Self {
        SeparatingFamily {
            members: self
                .members
                .iter()
                .filter(|m| keep(&m.name))
                .cloned()
                .collect(),
        }
    }

    /// Precomposition with a homomorphism `H → G`.
    pub fn pullback<H: 'static>(
        &self,
        map: impl Fn(&H) -> Result<G> + Send + Sync + 'static,
    ) -> SeparatingFamily<H> {
        let map = Arc::new(map);
        SeparatingFamily {
            members: self
                .members
                .iter()
                .map(|m| {
                    let (m, map) = (m.clone(), Arc::clone(&map));
                    Member::new(m.name.clone(), move |h: &H| m.eval(&map(h)?))
                })
                .collect(),
        }
    }
}

/// Coordinate functionals on the symbols `e1, ..., ed`.
pub fn rational_power_family(d: usize) -> SeparatingFamily<FormalReal> {
    SeparatingFamily::new(
        (1..=d)
            .map(|k| {
                let symbol = format!("e{}", k);
                Member::new(format!("coord {}", symbol), move |x: &FormalReal| {
                    Ok(Target::Rational(x.coeff(&symbol)))
                })
            })
            .collect(),
    )
}

/// Torsion projection into `ℚ/ℤ` followed by `free_rank` coordinate
/// functionals on the free part.
pub fn circle_family(free_rank: usize) -> SeparatingFamily<CircleElement> {
    let mut members = vec![Member::new("torsion", |x: &CircleElement| {
        Ok(Target::RationalModOne(x.torsion.clone()))
    })];
    members.extend(
        rational_power_family(free_rank)
            .pullback(|x: &CircleElement| Ok(x.free.clone()))
            .members,
    );
    SeparatingFamily::new(members)
}

/// Reductions modulo `L_0, ..., L_max_level`; member `n` is reduction mod
/// `L_n`, so the first separating member is the congruence level.
pub fn congruence_tower(max_level: u64) -> SeparatingFamily<UniMatrix> {
    SeparatingFamily::new(
        (0..=max_level)
            .map(|n| {
                Member::new(format!("mod L{}", n), move |u: &UniMatrix| {
                    Ok(Target::Matrix {
                        level: n,
                        matrix: u.reduce_mod(n)?,
                    })
                })
            })
            .collect(),
    )
}

/// Members of `f1` on the first coordinate, then members of `f2` on the
/// second.
pub fn product<A: 'static, B: 'static>(
    f1: &SeparatingFamily<A>,
    f2: &SeparatingFamily<B>,
) -> SeparatingFamily<(A, B)> {
    let left = f1.members.iter().map(|m| {
        let m = m.clone();
        Member::new(format!("1.{}", m.name), move |g: &(A, B)| m.eval(&g.0))
    });
    let right = f2.members.iter().map(|m| {
        let m = m.clone();
        Member::new(format!("2.{}", m.name), move |g: &(A, B)| m.eval(&g.1))
    });
    SeparatingFamily::new(left.chain(right).collect())
}

/// Concatenation of stage families, member names prefixed by the stage.
pub fn tower<G: 'static>(stages: &[SeparatingFamily<G>]) -> SeparatingFamily<G> {
    SeparatingFamily::new(
        stages
            .iter()
            .enumerate()
            .flat_map(|(s, f)| {
                f.members.iter().map(move |m| {
                    let m = m.clone();
                    Member::new(format!("stage {}: {}", s, m.name), move |g: &G| m.eval(g))
                })
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationReport {
    pub separates: bool,
    /// First member with a non-identity value, per sample; `None` for
    /// identity samples and for unseparated ones.
    pub witnesses: Vec<Option<usize>>,
    pub member_names: Vec<String>,
}

impl SeparationReport {
    pub fn unseparated(&self) -> impl Iterator<Item = usize> + '_ {
        self.witnesses
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_none())
            .map(|(n, _)| n)
    }
}

/// Whether every non-identity sample has a member with non-identity value.
pub fn check_separates<G: GroupElement + 'static>(
    family: &SeparatingFamily<G>,
    samples: &[G],
) -> Result<SeparationReport> {
    let mut separates = true;
    let mut witnesses = Vec::with_capacity(samples.len());
    for g in samples {
        let mut found = None;
        for (k, m) in family.members.iter().enumerate() {
            if !m.eval(g)?.is_identity() {
                found = Some(k);
                break;
            }
        }
        if found.is_none() && !g.is_identity() {
            separates = false;
        }
        witnesses.push(found);
    }
    Ok(SeparationReport {
        separates,
        witnesses,
        member_names: family.names(),
    })
}

/// Indices of members failing `m(g·h) = m(g)·m(h)` on some pair.
pub fn check_homomorphism<G: GroupElement + 'static>(
    family: &SeparatingFamily<G>,
    pairs: &[(G, G)],
) -> Result<Vec<usize>> {
    let mut bad = Vec::new();
    for (k, m) in family.members.iter().enumerate() {
        for (g, h) in pairs {
            let lhs = m.eval(&g.op(h)?)?;
            let rhs = m.eval(g)?.combine(&m.eval(h)?)?;
            if lhs != rhs {
                bad.push(k);
                break;
            }
        }
    }
    Ok(bad)
}

fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            while n.is_multiple_of(&p) {
                n /= &p;
            }
            out.push(p.clone());
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Primary decomposition of `q mod 1` in `ℚ/ℤ = ⊕_p ℤ[1/p]/ℤ`.
///
/// With `q = a/b`, `p^e ‖ b` and `m = b/p^e`, the `p`-component is
/// `(a·m⁻¹ mod p^e)/p^e`.
pub fn torsion_primary_decompose(q: &Rational) -> BTreeMap<BigInt, Rational> {
    let q = mod_one(q);
    let (a, b) = (q.numer(), q.denom());
    let mut out = BTreeMap::new();
    for p in prime_factors(b) {
        let mut pe = BigInt::one();
        while b.is_multiple_of(&(&pe * &p)) {
            pe *= &p;
        }
        let m = b / &pe;
        let inv = m.extended_gcd(&pe).x.mod_floor(&pe);
        let c = (a * inv).mod_floor(&pe);
        out.insert(p, Rational::new(c, pe));
    }
    out
}
