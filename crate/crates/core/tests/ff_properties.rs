use num_bigint::BigUint;
use polybox::ff::{frac_dist, random_irreducible};
use polybox::{Field, Interval, Poly};
use proptest::prelude::*;
use std::collections::HashSet;

fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

fn poly(q: u32, max_deg: usize) -> impl Strategy<Value = (u32, Vec<u32>)> {
    prop::collection::vec(0..q, 0..=max_deg + 1).prop_map(move |c| (q, c))
}

fn q_and_poly(max_deg: usize) -> impl Strategy<Value = (u32, Vec<u32>)> {
    prop::sample::select(vec![2u32, 3, 5, 4, 9]).prop_flat_map(move |q| poly(q, max_deg))
}

fn build(q: u32, c: &[u32]) -> Poly {
    Poly::from_coeffs(&field(q), c.to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn norm_is_multiplicative((q, a) in q_and_poly(8), seed in prop::collection::vec(0u32..1000, 9)) {
        let f = field(q);
        let a = build(q, &a);
        let b = Poly::from_coeffs(&f, seed.iter().map(|s| s % q).collect()).unwrap();
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn norm_is_ultrametric((q, a) in q_and_poly(6), seed in prop::collection::vec(0u32..1000, 7)) {
        let f = field(q);
        let a = build(q, &a);
        let b = Poly::from_coeffs(&f, seed.iter().map(|s| s % q).collect()).unwrap();
        let s = (&a + &b).norm();
        let m = a.norm().max(b.norm());
        prop_assert!(s <= m);
        if a.norm() != b.norm() {
            prop_assert_eq!(s, m);
        }
    }

    #[test]
    fn frac_dist_is_coset_invariant(q in prop::sample::select(vec![2u32, 3, 5]), deg in 1usize..6, seed: u64, x in prop::collection::vec(0u32..5, 0..12), y in prop::collection::vec(0u32..5, 0..6)) {
        let f = field(q);
        let m = random_irreducible(&f, deg, seed).unwrap();
        let x = Poly::from_coeffs(&f, x.iter().map(|c| c % q).collect()).unwrap();
        let y = Poly::from_coeffs(&f, y.iter().map(|c| c % q).collect()).unwrap();
        let d = frac_dist(&x, &m).unwrap();
        prop_assert_eq!(frac_dist(&(&x + &(&m * &y)), &m).unwrap(), d.clone());
        prop_assert!(d < m.norm());
        prop_assert_eq!(d == BigUint::from(0u32), m.divides(&x));
    }
}

#[test]
fn divrem_round_trip_exhaustive_q2() {
    let f = field(2);
    for ia in 0..32u64 {
        for ib in 1..32u64 {
            let a = Poly::from_index(&f, ia);
            let b = Poly::from_index(&f, ib);
            let (s, r) = a.divrem(&b).unwrap();
            assert_eq!(&(&s * &b) + &r, a);
            assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}

#[test]
fn interval_enumeration_matches_membership() {
    for q in [2u32, 3] {
        let f = field(q);
        for n in 0..=3 {
            for base in [0u64, 2, 7, 40] {
                let i = Interval::new(Poly::from_index(&f, base), n).unwrap();
                let members: HashSet<Poly> = i.iter().collect();
                assert_eq!(members.len() as u64, (q as u64).pow(n + 1));
                for k in 0..(q as u64).pow(5).max(base * q as u64) {
                    let x = Poly::from_index(&f, k);
                    assert_eq!(i.contains(&x), members.contains(&x));
                }
            }
        }
    }
}
