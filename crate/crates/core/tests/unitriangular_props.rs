mod common;

use common::{rand_nonzero_poly, rand_nonzero_rational, rand_uni, rng, z};
use countrep::unitriangular::{
    central_coset_separator, commuting_lift_obstruction, hilbert_symbol_real, uni_group_ops,
    GroupOp, UniMatrix,
};
use countrep::{Error, PuiseuxPoly};
use num_traits::Signed;
use proptest::prelude::*;
use rand::Rng;

fn identity(m: usize) -> UniMatrix {
    UniMatrix::identity(m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(seed in any::<u64>(), m in 2usize..=5) {
        let mut r = rng(seed);
        let (u, v, w) = (rand_uni(&mut r, m, 0.5), rand_uni(&mut r, m, 0.5), rand_uni(&mut r, m, 0.5));
        let mul = |a: &UniMatrix, b: &UniMatrix| uni_group_ops(a, b, GroupOp::Multiply).unwrap();
        prop_assert_eq!(mul(&mul(&u, &v), &w), mul(&u, &mul(&v, &w)));
        prop_assert_eq!(mul(&u, &identity(m)), u.clone());
        prop_assert_eq!(mul(&identity(m), &u), u.clone());
        let inv = uni_group_ops(&u, &u, GroupOp::Invert).unwrap();
        prop_assert!(mul(&u, &inv).is_identity());
        prop_assert!(mul(&inv, &u).is_identity());
        prop_assert_eq!(inv.inverse(), u.clone());
    }

    #[test]
    fn lower_central_series_containment(seed in any::<u64>(), m in 3usize..=5) {
        let mut r = rng(seed);
        let (u, v) = (rand_uni(&mut r, m, 0.4), rand_uni(&mut r, m, 0.4));
        if let (Some(du), Some(dv)) = (u.lcs_depth(), v.lcs_depth()) {
            let c = u.commutator(&v).unwrap();
            prop_assert!(c.lcs_depth().is_none_or(|dc| dc > du + dv));
        }
    }

    #[test]
    fn epsilon_is_additive(seed in any::<u64>(), m in 3usize..=5) {
        let mut r = rng(seed);
        let i = r.gen_range(0..m - 1);
        // matrices supported on superdiagonals of index >= i
        let deep = |r: &mut rand_chacha::ChaCha8Rng| {
            let entries: Vec<_> = (1..=m)
                .flat_map(|a| (a + i + 1..=m).map(move |b| (a, b)))
                .map(|(a, b)| (a, b, common::rand_poly(r, 2, 2, 5, 0, 3)))
                .collect();
            UniMatrix::from_entries(m, entries).unwrap()
        };
        let (u, v) = (deep(&mut r), deep(&mut r));
        let uv = u.multiply(&v).unwrap();
        for row in 1..m - i {
            let lhs = uv.epsilon_entry(row, i).unwrap();
            let rhs = &u.epsilon_entry(row, i).unwrap() + &v.epsilon_entry(row, i).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduction_homomorphism_and_kernel(seed in any::<u64>(), n in 0u64..4) {
        let mut r = rng(seed);
        let (u, v) = (rand_uni(&mut r, 3, 0.7), rand_uni(&mut r, 3, 0.7));
        let red = |a: &UniMatrix| a.reduce_mod(n).unwrap();
        let lhs = red(&u.multiply(&v).unwrap());
        let rhs = red(&red(&u).multiply(&red(&v)).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(red(&u).is_identity(), u.congruence_membership(n).unwrap());
    }

    #[test]
    fn congruence_level_is_least_failing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let u = rand_uni(&mut r, 4, 0.5);
        match u.congruence_level().unwrap() {
            None => prop_assert!(u.is_identity()),
            Some(level) => {
                prop_assert!(!u.congruence_membership(level).unwrap());
                if level > 0 {
                    prop_assert!(u.congruence_membership(level - 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn hilbert_symbol_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (
            rand_nonzero_rational(&mut r, 50),
            rand_nonzero_rational(&mut r, 50),
            rand_nonzero_rational(&mut r, 50),
        );
        let h = |x, y| hilbert_symbol_real(x, y).unwrap();
        prop_assert_eq!(h(&a, &b), h(&b, &a));
        let ab = &a * &b;
        prop_assert_eq!(h(&ab, &c), h(&a, &c) * h(&b, &c));
        let neg = -&a;
        prop_assert_eq!(h(&a, &neg), 1);
        prop_assert_eq!(commuting_lift_obstruction(&a).unwrap(), a.is_negative());
    }
}

#[test]
fn separator_soundness_on_random_heisenberg_pairs() {
    let mut r = rng(21);
    let mut done = 0;
    while done < 40 {
        let zeta_entry = rand_nonzero_poly(&mut r, 3, 3, 6, 0, 3);
        let gamma_entry = rand_nonzero_poly(&mut r, 3, 3, 6, 0, 3);
        let zeta = UniMatrix::elementary(3, 1, 3, zeta_entry).unwrap();
        let gamma = UniMatrix::elementary(3, 1, 3, gamma_entry).unwrap();
        let cert = match central_coset_separator(&zeta, &gamma) {
            Ok(c) => c,
            Err(Error::OffsetInSubgroup) => continue,
            Err(e) => panic!("{:?}", e),
        };
        done += 1;
        assert_eq!((cert.row, cert.depth), (1, 1));
        for k in -25..=25 {
            let g = zeta.multiply(&gamma.pow(k)).unwrap();
            assert!(
                !g.congruence_membership(cert.level).unwrap(),
                "{} {} k={}",
                zeta,
                gamma,
                k
            );
        }
    }
}

#[test]
fn separator_on_deeper_series() {
    // size 4, depth 2: the (1,4) entry
    let e14 = |s: &str| UniMatrix::elementary(4, 1, 4, s.parse::<PuiseuxPoly>().unwrap()).unwrap();
    let cert = central_coset_separator(&e14("t^(1/3)"), &e14("t")).unwrap();
    assert_eq!((cert.level, cert.row, cert.depth), (1, 1, 2));
    // E14 is central, so a depth-0 gamma commutes but is rejected
    let shallow = UniMatrix::elementary(4, 1, 2, PuiseuxPoly::constant(z(1))).unwrap();
    assert_eq!(
        central_coset_separator(&e14("t"), &shallow),
        Err(Error::BelowDepth { depth: 2 })
    );
}

#[test]
fn separator_requires_integral_entries() {
    let e13 = |s: &str| UniMatrix::elementary(3, 1, 3, s.parse::<PuiseuxPoly>().unwrap()).unwrap();
    assert!(matches!(
        central_coset_separator(&e13("t^(-1)"), &e13("t")),
        Err(Error::OutsideValuationRing(_))
    ));
}
