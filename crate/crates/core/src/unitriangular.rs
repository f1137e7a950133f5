//! Upper unitriangular matrices over Puiseux polynomials.
//!
//! Only the strictly upper entries are stored, keyed by 1-based `(p, q)`
//! with `p < q`. The congruence subgroup at level `n` is the set of
//! matrices whose off-diagonal entries all have valuation `> n`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::puiseux::{PuiseuxPoly, Rational, Valuation};
use crate::valuation_lemma::{coset_separation_bound, CosetSpec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniMatrix {
    size: usize,
    entries: BTreeMap<(usize, usize), PuiseuxPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Multiply,
    Invert,
    Commutator,
}

impl UniMatrix {
    pub fn identity(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidInput(format!(
                "unitriangular size must be at least 2, got {}",
                size
            )));
        }
        Ok(UniMatrix {
            size,
            entries: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(size: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, PuiseuxPoly)>,
    {
        let mut m = Self::identity(size)?;
        for (p, q, value) in entries {
            if p == 0 || p >= q || q > size {
                return Err(Error::IndexOutOfRange {
                    row: p,
                    col: q,
                    size,
                });
            }
            let slot = m.entries.entry((p, q)).or_insert_with(PuiseuxPoly::zero);
            *slot = &*slot + &value;
        }
        m.entries.retain(|_, v| !v.is_zero());
        Ok(m)
    }

    /// `I + value · E_pq`.
    pub fn elementary(size: usize, p: usize, q: usize, value: PuiseuxPoly) -> Result<Self> {
        Self::from_entries(size, [(p, q, value)])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, p: usize, q: usize) -> PuiseuxPoly {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    /// Nonzero strictly-upper entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &PuiseuxPoly)> + '_ {
        self.entries.iter().map(|(&(p, q), v)| (p, q, v))
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_size(&self, other: &UniMatrix) -> Result<()> {
        if self.size != other.size {
            return Err(Error::SizeMismatch(self.size, other.size));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &UniMatrix) -> Result<UniMatrix> {
        self.check_size(other)?;
        let mut out = self.entries.clone();
        for (&(p, q), v) in &other.entries {
            let slot = out.entry((p, q)).or_insert_with(PuiseuxPoly::zero);
            *slot = &*slot + v;
        }
        // (UV)_pq += Σ U_pk V_kq over p < k < q
        for (&(p, k), u) in &self.entries {
            for (&(_, q), v) in other.entries.range((k, k + 1)..(k + 1, 0)) {
                let slot = out.entry((p, q)).or_insert_with(PuiseuxPoly::zero);
                *slot = &*slot + &(u * v);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(UniMatrix {
            size: self.size,
            entries: out,
        })
    }

    /// Exact inverse by back substitution:
    /// `W_pq = −U_pq − Σ_{p<k<q} U_pk W_kq`.
    pub fn inverse(&self) -> UniMatrix {
        let mut w: BTreeMap<(usize, usize), PuiseuxPoly> = BTreeMap::new();
        for p in (1..self.size).rev() {
            for q in p + 1..=self.size {
                let mut acc = -&self.entry(p, q);
                for k in p + 1..q {
                    if let (Some(u), Some(x)) = (self.entries.get(&(p, k)), w.get(&(k, q))) {
                        acc = &acc - &(u * x);
                    }
                }
                if !acc.is_zero() {
                    w.insert((p, q), acc);
                }
            }
        }
        UniMatrix {
            size: self.size,
            entries: w,
        }
    }

    /// `U⁻¹ V⁻¹ U V`.
    pub fn commutator(&self, other: &UniMatrix) -> Result<UniMatrix> {
        self.inverse()
            .multiply(&other.inverse())?
            .multiply(self)?
            .multiply(other)
    }

    pub fn pow(&self, k: i64) -> UniMatrix {
        let mut base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = UniMatrix {
            size: self.size,
            entries: BTreeMap::new(),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.multiply(&base).expect("same size");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same size");
            }
        }
        acc
    }

    /// Largest `i` with `self ∈ U_m^i`, i.e. every entry with `q − p <= i`
    /// vanishes. `None` stands for `∞` (the identity).
    pub fn lcs_depth(&self) -> Option<usize> {
        self.entries.keys().map(|&(p, q)| q - p - 1).min()
    }

    /// The `(p, p+i+1)` entry, a homomorphism on `U_m^i`.
    pub fn epsilon_entry(&self, p: usize, i: usize) -> Result<PuiseuxPoly> {
        let q = p + i + 1;
        if p == 0 || q > self.size {
            return Err(Error::IndexOutOfRange {
                row: p,
                col: q,
                size: self.size,
            });
        }
        if self.lcs_depth().is_some_and(|d| d < i) {
            return Err(Error::BelowDepth { depth: i });
        }
        Ok(self.entry(p, q))
    }

    /// Minimum valuation over the off-diagonal entries (`∞` for `I`).
    pub fn min_entry_valuation(&self) -> Valuation {
        self.entries
            .values()
            .map(PuiseuxPoly::valuation)
            .min()
            .unwrap_or(Valuation::Infinity)
    }

    /// Errors unless every entry lies in the valuation ring.
    pub fn require_integral(&self) -> Result<()> {
        self.entries
            .values()
            .try_for_each(PuiseuxPoly::require_integral)
    }

    /// Whether every entry of `U − I` has valuation `> n`.
    pub fn congruence_membership(&self, n: u64) -> Result<bool> {
        self.require_integral()?;
        Ok(match self.min_entry_valuation() {
            Valuation::Infinity => true,
            Valuation::Finite(mu) => mu > Rational::from_integer(n.into()),
        })
    }

    /// Least natural `n` with `congruence_membership(n) == false`, i.e. the
    /// ceiling of the minimal entry valuation. `None` for the identity.
    pub fn congruence_level(&self) -> Result<Option<u64>> {
        self.require_integral()?;
        Ok(match self.min_entry_valuation() {
            Valuation::Infinity => None,
            Valuation::Finite(mu) => {
                Some(num_traits::ToPrimitive::to_u64(&mu.ceil().to_integer()).expect("level fits"))
            }
        })
    }

    /// Entry-wise reduction modulo `L_n`.
    pub fn reduce_mod(&self, n: u64) -> Result<UniMatrix> {
        let mut entries = BTreeMap::new();
        for (&k, v) in &self.entries {
            let r = v.reduce_mod_threshold(n)?;
            if !r.is_zero() {
                entries.insert(k, r);
            }
        }
        Ok(UniMatrix {
            size: self.size,
            entries,
        })
    }
}

pub fn uni_group_ops(u: &UniMatrix, v: &UniMatrix, op: GroupOp) -> Result<UniMatrix> {
    u.check_size(v)?;
    match op {
        GroupOp::Multiply => u.multiply(v),
        GroupOp::Invert => Ok(u.inverse()),
        GroupOp::Commutator => u.commutator(v),
    }
}

impl fmt::Display for UniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I")?;
        for (&(p, q), v) in &self.entries {
            write!(f, " + ({})·E{},{}", v, p, q)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixWire {
    m: usize,
    entries: Vec<(usize, usize, PuiseuxPoly)>,
}

/// `{"m": 3, "entries": [[1, 3, <series>], ...]}`.
impl Serialize for UniMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            m: self.size,
            entries: self
                .entries
                .iter()
                .map(|(&(p, q), v)| (p, q, v.clone()))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UniMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = MatrixWire::deserialize(deserializer)?;
        UniMatrix::from_entries(wire.m, wire.entries).map_err(de::Error::custom)
    }
}

/// Data showing `ζ·Γ` misses the congruence subgroup at `level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub level: u64,
    pub row: usize,
    pub depth: usize,
    /// `ε(ζ)`.
    pub offset: PuiseuxPoly,
    /// `ε(γ)`, generating `ε(Γ)`.
    pub step: PuiseuxPoly,
}

/// Separates the coset `ζ⟨γ⟩` from a congruence subgroup.
///
/// With `i` the lower-central depth of `ζ` and `p` the first row where the
/// `(p, p+i+1)` entry of `ζ` is nonzero, `ε` is additive on the commuting
/// pair, so `ε(ζγ^k) = z + k·step` and the coset bound for `z + ℤ·step`
/// gives a level that no `ζγ^k` reaches.
pub fn central_coset_separator(
    zeta: &UniMatrix,
    gamma: &UniMatrix,
) -> Result<SeparationCertificate> {
    zeta.check_size(gamma)?;
    let depth = zeta.lcs_depth().ok_or(Error::IdentityNotAllowed)?;
    zeta.require_integral()?;
    gamma.require_integral()?;
    if zeta.multiply(gamma)? != gamma.multiply(zeta)? {
        return Err(Error::NonCommuting);
    }
    if gamma.lcs_depth().is_some_and(|d| d < depth) {
        return Err(Error::BelowDepth { depth });
    }
    let row = (1..zeta.size - depth)
        .find(|&p| !zeta.entry(p, p + depth + 1).is_zero())
        .expect("depth is attained on some row");
    let offset = zeta.epsilon_entry(row, depth)?;
    let step = gamma.epsilon_entry(row, depth)?;
    let spec = if step.is_zero() {
        CosetSpec::new(offset.clone(), vec![])
    } else {
        CosetSpec::cyclic(offset.clone(), step.clone())
    };
    let bound = coset_separation_bound(&spec)?;
    Ok(SeparationCertificate {
        level: bound.level,
        row,
        depth,
        offset,
        step,
    })
}

/// Hilbert symbol `(a, b)` at the real place: `−1` iff both are negative.
pub fn hilbert_symbol_real(a: &Rational, b: &Rational) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(if a.is_negative() && b.is_negative() {
        -1
    } else {
        1
    })
}

/// Whether `diag(x, x⁻¹, 1)` and `diag(x, 1, x⁻¹)` fail to have commuting
/// lifts to the double cover, i.e. whether `(x, x) = −1`.
pub fn commuting_lift_obstruction(x: &Rational) -> Result<bool> {
    Ok(hilbert_symbol_real(x, x)? == -1)
}
