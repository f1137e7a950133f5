//! Seeded generators and brute-force oracles shared by the integration
//! tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeSet;

use countrep::extensions::{DomainTag, GeneratorId, LabelTable, SparseAbelian};
use countrep::unitriangular::UniMatrix;
use countrep::valuation_lemma::SubgroupBasis;
use countrep::{PuiseuxPoly, Rational, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn p(s: &str) -> PuiseuxPoly {
    s.parse().unwrap()
}

/// Rational with `|num| <= bound`, `1 <= den <= bound`.
pub fn rand_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn rand_nonzero_rational(rng: &mut impl Rng, bound: i64) -> Rational {
    loop {
        let x = rand_rational(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Up to `max_terms` terms with exponents `j/q`, `q <= max_q`, `j/q` in
/// `[lo, hi]`.
pub fn rand_poly(
    rng: &mut impl Rng,
    max_terms: usize,
    max_q: u64,
    coeff_bound: i64,
    lo: i64,
    hi: i64,
) -> PuiseuxPoly {
    let qq = rng.gen_range(1..=max_q);
    let n = rng.gen_range(0..=max_terms);
    let terms: Vec<(i64, Rational)> = (0..n)
        .map(|_| {
            let j = rng.gen_range(lo * qq as i64..=hi * qq as i64);
            (j, rand_rational(rng, coeff_bound))
        })
        .collect();
    PuiseuxPoly::from_terms(qq, terms)
}

pub fn rand_nonzero_poly(
    rng: &mut impl Rng,
    max_terms: usize,
    max_q: u64,
    coeff_bound: i64,
    lo: i64,
    hi: i64,
) -> PuiseuxPoly {
    loop {
        let x = rand_poly(rng, max_terms.max(1), max_q, coeff_bound, lo, hi);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Integer coordinates of `gens` on a common exponent grid `j/q`, scaled
/// by a common denominator. Valuations are unchanged by the scaling.
pub struct Grid {
    pub q: u64,
    pub lo: i64,
    pub rows: Vec<Vec<i128>>,
}

pub fn grid(gens: &[PuiseuxPoly]) -> Grid {
    let qq = gens
        .iter()
        .map(|g| g.ramification())
        .fold(1u64, |a, b| a.lcm(&b));
    let mut entries: Vec<Vec<(i64, Rational)>> = Vec::new();
    for g in gens {
        let s = (qq / g.ramification()) as i64;
        entries.push(g.indexed_terms().map(|(j, c)| (j * s, c.clone())).collect());
    }
    let lo = entries.iter().flatten().map(|(j, _)| *j).min().unwrap_or(0);
    let hi = entries.iter().flatten().map(|(j, _)| *j).max().unwrap_or(0);
    let den = entries
        .iter()
        .flatten()
        .fold(BigInt::from(1), |a, (_, c)| a.lcm(c.denom()));
    let width = (hi - lo + 1) as usize;
    let rows = entries
        .iter()
        .map(|e| {
            let mut row = vec![0i128; width];
            for (j, c) in e {
                let scaled = (c * Rational::from_integer(den.clone())).to_integer();
                row[(j - lo) as usize] = scaled.to_i128().expect("oracle coordinates fit in i128");
            }
            row
        })
        .collect();
    Grid { q: qq, lo, rows }
}

impl Grid {
    fn valuation_of(&self, v: &[i128]) -> Valuation {
        match v.iter().position(|&c| c != 0) {
            Some(k) => Valuation::Finite(q(self.lo + k as i64, self.q as i64)),
            None => Valuation::Infinity,
        }
    }
}

fn for_each_box(r: usize, bound: i64, mut f: impl FnMut(&[i64])) {
    let mut c = vec![-bound; r];
    loop {
        f(&c);
        let mut k = 0;
        loop {
            if k == r {
                return;
            }
            c[k] += 1;
            if c[k] <= bound {
                break;
            }
            c[k] = -bound;
            k += 1;
        }
    }
}

/// `{v(Σ p_i x_i) : |p_i| <= bound}`.
pub fn brute_values(gens: &[PuiseuxPoly], bound: i64) -> BTreeSet<Valuation> {
    let g = grid(gens);
    let width = g.rows.first().map_or(0, Vec::len);
    let mut out = BTreeSet::new();
    for_each_box(gens.len(), bound, |c| {
        let mut v = vec![0i128; width];
        for (row, &k) in g.rows.iter().zip(c) {
            if k != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a += b * k as i128;
                }
            }
        }
        out.insert(g.valuation_of(&v));
    });
    out
}

/// `max {v(z + Σ k_i c_i) : |k_i| <= bound}`; `None` if some element is 0.
pub fn brute_coset_max(offset: &PuiseuxPoly, gens: &[PuiseuxPoly], bound: i64) -> Option<Rational> {
    let mut all = vec![offset.clone()];
    all.extend(gens.iter().cloned());
    let g = grid(&all);
    let mut best: Option<Rational> = None;
    let mut hit_zero = false;
    for_each_box(gens.len(), bound, |c| {
        let mut v = g.rows[0].clone();
        for (row, &k) in g.rows[1..].iter().zip(c) {
            if k != 0 {
                for (a, b) in v.iter_mut().zip(row) {
                    *a += b * k as i128;
                }
            }
        }
        match g.valuation_of(&v) {
            Valuation::Finite(x) => {
                if best.as_ref().is_none_or(|b| &x > b) {
                    best = Some(x);
                }
            }
            Valuation::Infinity => hit_zero = true,
        }
    });
    if hit_zero {
        None
    } else {
        best
    }
}

/// Independent basis of rank `r` with small exponents and coefficients.
pub fn rand_independent_basis(rng: &mut impl Rng, r: usize) -> SubgroupBasis {
    loop {
        let gens: Vec<PuiseuxPoly> = (0..r)
            .map(|_| {
                let qq = rng.gen_range(1..=2u64);
                let n = rng.gen_range(1..=3);
                let terms: Vec<(i64, Rational)> = (0..n)
                    .map(|_| (rng.gen_range(0..=3 * qq as i64), z(rng.gen_range(-3..=3))))
                    .collect();
                PuiseuxPoly::from_terms(qq, terms)
            })
            .collect();
        if gens.iter().any(PuiseuxPoly::is_zero) {
            continue;
        }
        if let Ok(b) = SubgroupBasis::new(gens) {
            if b.is_independent() {
                return b;
            }
        }
    }
}

/// Integral unitriangular matrix with random sparse entries.
pub fn rand_uni(rng: &mut impl Rng, size: usize, density: f64) -> UniMatrix {
    let mut entries = Vec::new();
    for a in 1..=size {
        for b in a + 1..=size {
            if rng.gen_bool(density) {
                entries.push((a, b, rand_poly(rng, 3, 3, 10, 0, 4)));
            }
        }
    }
    UniMatrix::from_entries(size, entries).unwrap()
}

fn rand_coeff(rng: &mut impl Rng, tag: DomainTag) -> Rational {
    match tag {
        DomainTag::Rational => rand_rational(rng, 9),
        _ => z(rng.gen_range(-9..=9)),
    }
}

fn rand_side(rng: &mut impl Rng, tag: DomainTag, ids: u64) -> Vec<(GeneratorId, Rational)> {
    let n = rng.gen_range(0..=4);
    (0..n)
        .map(|_| (GeneratorId(rng.gen_range(1..=ids)), rand_coeff(rng, tag)))
        .collect()
}

/// Up to four `ā`- and four `b̄`-terms over ids `1..=ids`.
pub fn rand_sparse(rng: &mut impl Rng, tag: DomainTag, ids: u64) -> SparseAbelian {
    let a = rand_side(rng, tag, ids);
    let b = rand_side(rng, tag, ids);
    SparseAbelian::from_coeffs(tag, a, b).unwrap()
}

pub fn rand_label_table(rng: &mut impl Rng, n: usize, labels: usize) -> LabelTable {
    LabelTable::from_pairs((0..n).map(|_| {
        (
            format!("x{}", rng.gen_range(0..labels)),
            format!("u{}", rng.gen_range(0..labels)),
        )
    }))
}

/// Existence of a valid triple by counting: for some `i`, the sets
/// `A = {j ≠ i : a_j = a_i}` and `B = {k ≠ i : b_k = b_i}` admit `j ≠ k`.
pub fn triple_exists(table: &LabelTable) -> bool {
    let rows = table.rows();
    (0..rows.len()).any(|i| {
        let a: BTreeSet<usize> = (0..rows.len())
            .filter(|&j| j != i && rows[j].a == rows[i].a)
            .collect();
        let b: BTreeSet<usize> = (0..rows.len())
            .filter(|&k| k != i && rows[k].b == rows[i].b)
            .collect();
        !a.is_empty() && !b.is_empty() && !(a.len() == 1 && a == b)
    })
}

pub fn is_nonnegative(x: &Rational) -> bool {
    !x.is_negative()
}
