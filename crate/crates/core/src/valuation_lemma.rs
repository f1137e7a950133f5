//! Valuations on finitely generated additive subgroups of the Puiseux field.
//!
//! For a free abelian `D = ⟨x_1, …, x_r⟩` the valuation takes at most
//! `r + 1` values. [`value_set`] computes them exactly: sort the basis by
//! valuation, record the minimum `w`, and recurse on the kernel of the
//! residue map `x ↦ coefficient of t^w`, which has rank `r − 1`.
//!
//! [`coset_separation_bound`] runs the same recursion on an affine coset
//! `z + C` and returns the least level `n` with `L_n ∩ (z + C) = ∅`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    clear_denominators, hermite_normal_form, integer_kernel, rational_rank,
    solve_linear_diophantine, solve_rational,
};
use crate::puiseux::{PuiseuxPoly, Rational, Valuation};

/// Ordered generators `x_1, …, x_r` of a free abelian subgroup.
///
/// Independence over ℤ is asserted by the caller; [`value_set`] reports a
/// violation when the recursion produces a zero generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupBasis {
    generators: Vec<PuiseuxPoly>,
}

impl SubgroupBasis {
    pub fn new(generators: Vec<PuiseuxPoly>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyBasis);
        }
        Ok(SubgroupBasis { generators })
    }

    /// A basis of the ℤ-span of arbitrary generators, in Hermite normal form
    /// with respect to the term coordinates.
    pub fn span_of(generators: &[PuiseuxPoly]) -> Result<Self> {
        let coords = Coordinates::of(generators);
        let flat: Vec<Rational> = coords.rows.iter().flatten().cloned().collect();
        let (_, l) = clear_denominators(&flat);
        let scale = Rational::from_integer(l.clone());
        let rows: Vec<Vec<BigInt>> = coords
            .rows
            .iter()
            .map(|row| row.iter().map(|c| (c * &scale).to_integer()).collect())
            .collect();
        let basis = hermite_normal_form(&rows)
            .into_iter()
            .map(|row| {
                let values: Vec<Rational> = row
                    .into_iter()
                    .map(|c| Rational::new(c, l.clone()))
                    .collect();
                coords.poly(&values)
            })
            .collect();
        Self::new(basis)
    }

    pub fn generators(&self) -> &[PuiseuxPoly] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Independence over ℤ, decided over ℚ on the term coordinates.
    pub fn is_independent(&self) -> bool {
        rational_rank(&Coordinates::of(&self.generators).rows) == self.generators.len()
    }
}

/// An affine coset `z + C` with `C` given by independent generators.
///
/// `C` may be trivial (no generators), in which case the coset is `{z}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetSpec {
    pub offset: PuiseuxPoly,
    pub generators: Vec<PuiseuxPoly>,
}

impl CosetSpec {
    pub fn new(offset: PuiseuxPoly, generators: Vec<PuiseuxPoly>) -> Self {
        CosetSpec { offset, generators }
    }

    pub fn cyclic(offset: PuiseuxPoly, generator: PuiseuxPoly) -> Self {
        Self::new(offset, vec![generator])
    }
}

/// Result of [`coset_separation_bound`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetBound {
    /// Least natural `n` such that every coset element has valuation `<= n`.
    pub level: u64,
    /// `max {v(z + c) : c ∈ C}`, attained by some coset element.
    #[serde(with = "crate::puiseux::rational_string")]
    pub max_valuation: Rational,
    /// Value set of the enlarged group `⟨z, C⟩`.
    pub enlarged_values: BTreeSet<Valuation>,
}

impl CosetBound {
    /// Ceiling of the largest finite value of the enlarged group, clamped at
    /// zero. Always an upper bound for `level`.
    pub fn enlarged_level(&self) -> u64 {
        self.enlarged_values
            .iter()
            .rev()
            .find_map(Valuation::finite)
            .map_or(0, ceil_natural)
    }
}

/// Common-ramification coordinates for a list of polynomials.
struct Coordinates {
    ramification: u64,
    indices: Vec<i64>,
    rows: Vec<Vec<Rational>>,
}

impl Coordinates {
    fn of(polys: &[PuiseuxPoly]) -> Self {
        let q = polys
            .iter()
            .fold(1u64, |acc, p| num_integer::lcm(acc, p.ramification()));
        let mut indices: Vec<i64> = polys
            .iter()
            .flat_map(|p| {
                let s = (q / p.ramification()) as i64;
                p.indexed_terms().map(move |(j, _)| j * s)
            })
            .collect();
        indices.sort_unstable();
        indices.dedup();
        let rows = polys
            .iter()
            .map(|p| {
                let s = (q / p.ramification()) as i64;
                let mut row = vec![Rational::zero(); indices.len()];
                for (j, c) in p.indexed_terms() {
                    let k = indices.binary_search(&(j * s)).expect("index collected");
                    row[k] = c.clone();
                }
                row
            })
            .collect();
        Coordinates {
            ramification: q,
            indices,
            rows,
        }
    }

    fn poly(&self, values: &[Rational]) -> PuiseuxPoly {
        PuiseuxPoly::from_terms(
            self.ramification,
            self.indices.iter().copied().zip(values.iter().cloned()),
        )
    }
}

fn combine(gens: &[PuiseuxPoly], coeffs: &[BigInt]) -> PuiseuxPoly {
    gens.iter()
        .zip(coeffs)
        .filter(|(_, k)| !k.is_zero())
        .fold(PuiseuxPoly::zero(), |acc, (g, k)| &acc + &g.scale_int(k))
}

fn ceil_natural(v: &Rational) -> u64 {
    if v.is_negative() {
        0
    } else {
        v.ceil().to_integer().to_u64().expect("level fits in u64")
    }
}

fn sorted_by_valuation(mut gens: Vec<PuiseuxPoly>) -> Result<(Vec<PuiseuxPoly>, Rational)> {
    if gens.iter().any(PuiseuxPoly::is_zero) {
        return Err(Error::DependentGenerators);
    }
    // stable: equal valuations keep input order
    gens.sort_by_key(PuiseuxPoly::valuation);
    let w = gens[0]
        .valuation()
        .finite()
        .cloned()
        .expect("nonzero generator");
    Ok((gens, w))
}

/// Generators of the kernel of the residue map at `w`.
fn residue_kernel(gens: &[PuiseuxPoly], w: &Rational) -> Vec<PuiseuxPoly> {
    let residues: Vec<Rational> = gens.iter().map(|g| g.residue_at(w)).collect();
    integer_kernel(&residues)
        .iter()
        .map(|p| combine(gens, p))
        .collect()
}

/// Exact set `{v(x) : x ∈ ⟨basis⟩}`, always containing `∞`.
pub fn value_set(basis: &SubgroupBasis) -> Result<BTreeSet<Valuation>> {
    let mut values = BTreeSet::from([Valuation::Infinity]);
    let mut gens = basis.generators.clone();
    while !gens.is_empty() {
        let (sorted, w) = sorted_by_valuation(gens)?;
        gens = residue_kernel(&sorted, &w);
        values.insert(Valuation::Finite(w));
    }
    Ok(values)
}

/// Errors with [`Error::OffsetInSubgroup`] when `z ∈ ⟨generators⟩`.
///
/// Solves `z = Σ k_i c_i` over ℚ on term coordinates, then checks that the
/// (unique, by independence) solution is integral.
pub fn check_outside_subgroup(spec: &CosetSpec) -> Result<()> {
    if spec.offset.is_zero() {
        return Err(Error::OffsetInSubgroup);
    }
    if spec.generators.is_empty() {
        return Ok(());
    }
    let mut all = spec.generators.clone();
    all.push(spec.offset.clone());
    let coords = Coordinates::of(&all);
    let (gen_rows, z_row) = coords.rows.split_at(spec.generators.len());
    if rational_rank(gen_rows) < spec.generators.len() {
        return Err(Error::DependentGenerators);
    }
    match solve_rational(gen_rows, &z_row[0]) {
        Some(k) if k.iter().all(Rational::is_integer) => Err(Error::OffsetInSubgroup),
        _ => Ok(()),
    }
}

/// `max {v(z + c) : c ∈ C}` by the residue recursion on the coset.
///
/// With `w` the least generator valuation: if `v(z) < w` every coset element
/// has valuation `v(z)`; otherwise elements whose residue at `w` is nonzero
/// have valuation `w`, and the rest form the smaller coset
/// `z + c_0 + ker(ω)`, nonempty iff `ω(c_0) = −ω(z)` is solvable in `C`.
fn coset_max_valuation(spec: &CosetSpec) -> Result<Rational> {
    let mut z = spec.offset.clone();
    let mut gens = spec.generators.clone();
    loop {
        let vz = z
            .valuation()
            .finite()
            .cloned()
            .ok_or(Error::OffsetInSubgroup)?;
        if gens.is_empty() {
            return Ok(vz);
        }
        let (sorted, w) = sorted_by_valuation(gens)?;
        if vz < w {
            return Ok(vz);
        }
        let mut values: Vec<Rational> = sorted.iter().map(|g| g.residue_at(&w)).collect();
        values.push(z.residue_at(&w));
        let (scaled, _) = clear_denominators(&values);
        let (a, b) = scaled.split_at(sorted.len());
        let Some(p) = solve_linear_diophantine(a, &-&b[0]) else {
            return Ok(w);
        };
        z = &z + &combine(&sorted, &p);
        gens = residue_kernel(&sorted, &w);
    }
}

/// Least natural `n` such that `L_n = {v > n}` misses `z + C`.
pub fn coset_separation_bound(spec: &CosetSpec) -> Result<CosetBound> {
    check_outside_subgroup(spec)?;
    let max_valuation = coset_max_valuation(spec)?;
    let mut all = vec![spec.offset.clone()];
    all.extend(spec.generators.iter().cloned());
    let enlarged_values = value_set(&SubgroupBasis::span_of(&all)?)?;
    Ok(CosetBound {
        level: ceil_natural(&max_valuation),
        max_valuation,
        enlarged_values,
    })
}
