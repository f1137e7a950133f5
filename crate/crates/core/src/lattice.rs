//! Integer and rational linear algebra on small dense matrices.
//!
//! Vectors are rows. Everything is exact: `BigInt` for lattices and
//! [`Rational`] for the solver.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::puiseux::Rational;

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns only the nonzero rows: a basis of the row lattice with positive
/// pivots, pivots moving strictly right, and entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pr = 0;
    for col in 0..ncols {
        if pr == nrows {
            break;
        }
        loop {
            let best = (pr..nrows)
                .filter(|&r| !m[r][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(best) = best else { break };
            m.swap(pr, best);
            let mut clean = true;
            for r in pr + 1..nrows {
                if m[r][col].is_zero() {
                    continue;
                }
                let q = m[r][col].div_floor(&m[pr][col]);
                sub_multiple(&mut m, r, pr, &q);
                if !m[r][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[pr][col].is_zero() {
            continue;
        }
        if m[pr][col].is_negative() {
            for x in m[pr].iter_mut() {
                *x = -&*x;
            }
        }
        for r in 0..pr {
            let q = m[r][col].div_floor(&m[pr][col]);
            if !q.is_zero() {
                sub_multiple(&mut m, r, pr, &q);
            }
        }
        pr += 1;
    }
    m.truncate(pr);
    m
}

fn sub_multiple(m: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(src.iter()) {
        *x -= q * s;
    }
}

/// A ℤ-basis (in Hermite normal form) of `{p ∈ ℤ^r : A p = 0}` where `A`
/// is given by its rows, each of length `r`.
pub fn integer_kernel_matrix(rows: &[Vec<BigInt>], r: usize) -> Vec<Vec<BigInt>> {
    let k = rows.len();
    // augmented rows [column i of A | e_i]; unimodular row operations keep
    // the identity part tracking the combinations
    let augmented: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let mut row: Vec<BigInt> = rows.iter().map(|a| a[i].clone()).collect();
            row.extend((0..r).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            row
        })
        .collect();
    let reduced = hermite_normal_form(&augmented);
    let kernel: Vec<Vec<BigInt>> = reduced
        .into_iter()
        .filter(|row| row[..k].iter().all(Zero::is_zero))
        .map(|row| row[k..].to_vec())
        .collect();
    hermite_normal_form(&kernel)
}

/// Multiplies through by the least common denominator.
pub fn clear_denominators(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = values
        .iter()
        .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
        .collect();
    (scaled, l)
}

/// ℤ-basis of `{p ∈ ℤ^r : Σ p_i·coeffs_i = 0}`, in Hermite normal form.
///
/// Rank is `r − 1` when some coefficient is nonzero and `r` otherwise; the
/// basis vectors are primitive.
pub fn integer_kernel(coeffs: &[Rational]) -> Vec<Vec<BigInt>> {
    let (row, _) = clear_denominators(coeffs);
    integer_kernel_matrix(&[row], coeffs.len())
}

/// Some `p ∈ ℤ^r` with `Σ p_i a_i = b`, if one exists.
pub fn solve_linear_diophantine(a: &[BigInt], b: &BigInt) -> Option<Vec<BigInt>> {
    let mut g = BigInt::zero();
    let mut x = vec![BigInt::zero(); a.len()];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        if g.is_zero() {
            g = ai.clone();
            x[i] = BigInt::one();
            continue;
        }
        let e = g.extended_gcd(ai);
        for xj in x.iter_mut() {
            *xj *= &e.x;
        }
        x[i] = e.y;
        g = e.gcd;
    }
    if g.is_zero() {
        return b.is_zero().then_some(x);
    }
    if !b.is_multiple_of(&g) {
        return None;
    }
    let scale = b / &g;
    Some(x.into_iter().map(|xi| xi * &scale).collect())
}

/// Rank of a rational matrix given by rows.
pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_echelon(&mut m).len()
}

/// Gaussian elimination in place; returns the pivot columns.
fn row_echelon(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..ncols {
        let Some(r) = (pr..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pr, r);
        let inv = m[pr][col].recip();
        for x in m[pr].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[pr].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == pr || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(pivot_row.iter()) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == nrows {
            break;
        }
    }
    pivots
}

/// Solves `Σ_j x_j · columns[j] = rhs` over ℚ.
///
/// `columns` are the column vectors of the system. Returns a solution with
/// free variables set to zero, or `None` when the system is inconsistent.
pub fn solve_rational(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..rhs.len())
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = row_echelon(&mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    Some(x)
}
