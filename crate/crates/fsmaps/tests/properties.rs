//! Algebraic invariants checked on random inputs.

use fsmaps::exact::{factorial, rat, Laurent, USeries, Q3};
use fsmaps::hurwitz::{content_eval, partitions, transition, ContentKind, Direction, Partition};
use fsmaps::oracle::gue_census;
use fsmaps::verify::random_moments;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn q3() -> impl Strategy<Value = Q3> {
    (-6i64..=6, 1i64..=4, -3i64..=3, 1i64..=3).prop_map(|(a, b, c, d)| Q3::new(rat(a, b), rat(c, d)))
}

fn series(prec: i64) -> impl Strategy<Value = USeries> {
    (0i64..3, prop::collection::vec(q3(), 1..6)).prop_map(move |(val, cs)| USeries::from_coeffs(val, &cs, prec))
}

fn unit_series(prec: i64) -> impl Strategy<Value = USeries> {
    (prop::collection::vec(q3(), 1..6))
        .prop_filter("invertible constant term", |cs| !cs[0].is_zero())
        .prop_map(move |cs| USeries::from_coeffs(0, &cs, prec))
}

fn same_laurent(a: &Laurent<Q3>, b: &Laurent<Q3>, upto: i64) -> bool {
    (a.valuation().min(b.valuation())..upto).all(|e| a.coeff(e) == b.coeff(e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_multiplication_is_a_commutative_ring(a in series(10), b in series(10), c in series(10)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), USeries::zero_to(a.prec()));
    }

    #[test]
    fn series_inverse_and_square_root(a in unit_series(9)) {
        let one = a.mul(&a.inv().unwrap());
        prop_assert_eq!(one, USeries::one().truncate(9));
        let sq = a.mul(&a);
        let r = sq.sqrt().unwrap();
        prop_assert!(r == a.truncate(9) || r == a.neg().truncate(9));
    }

    #[test]
    fn reversion_is_an_involution(cs in prop::collection::vec(q3(), 1..6)
        .prop_filter("invertible linear term", |cs| !cs[0].is_zero())) {
        let g = Laurent::new(1, cs, 7);
        let h = g.reversion().unwrap();
        prop_assert!(same_laurent(&h.reversion().unwrap(), &g, 7));
        prop_assert!(same_laurent(&g.compose(&h).unwrap(), &Laurent::var(), 7));
    }

    #[test]
    fn complete_and_elementary_content_sums_are_inverse(n in 1u32..=7, m in 1u32..=6, pick in 0usize..1000) {
        let parts = partitions(n);
        let nu = &parts[pick % parts.len()];
        let mut total = BigInt::zero();
        for k in 0..=m {
            let term = content_eval(ContentKind::E, k, nu) * content_eval(ContentKind::H, m - k, nu);
            if k % 2 == 0 { total += term } else { total -= term }
        }
        prop_assert_eq!(total, BigInt::zero());
    }

    #[test]
    fn transition_round_trip(size in 1u32..=4, seed in any::<u64>()) {
        let cutoff = -6;
        let m = random_moments(size, 2, cutoff, seed);
        let fs = transition(Direction::FsFromOrdinary, &m, size, cutoff - size as i64).unwrap();
        let back = transition(Direction::OrdinaryFromFs, &fs, size, cutoff).unwrap();
        for (p, s) in &m {
            prop_assert!(back[p].agrees(s), "{p}: {} vs {}", back[p], s);
        }
    }

    #[test]
    fn odd_total_boundary_length_has_no_gaussian_maps(parts in prop::collection::vec(1u32..=4, 1..=3)) {
        let census = gue_census(&parts, 14).unwrap();
        let odd = parts.iter().sum::<u32>() % 2 == 1;
        prop_assert!(!odd || census.values().all(|w| w.is_zero()));
    }
}

#[test]
fn class_sizes_and_dimensions_account_for_the_symmetric_group() {
    for n in 1..=9u32 {
        let order = factorial(n as u64);
        let parts = partitions(n);
        let classes: BigInt = parts.iter().map(Partition::class_size).sum();
        let dims: BigInt = parts.iter().map(|p| p.dimension() * p.dimension()).sum();
        assert_eq!(classes, order);
        assert_eq!(dims, order);
        for p in &parts {
            assert_eq!(p.class_size() * p.aut(), order);
        }
    }
}
