use polybox::boxcount::{Point, PointSet};
use polybox::detmethod::{
    kappa, mean_distinct_identity, verify_ord_inequality, w_det, w_det_with, wset_grid, DetAlgorithm, WSet,
    DEFAULT_TUPLE_BUDGET,
};
use polybox::ff::monic_irreducibles;
use polybox::{BivarPoly, Field, Poly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

fn random_set(f: &Field, size: usize, rng: &mut ChaCha8Rng) -> PointSet {
    let bound = (f.q() as u64).pow(3);
    let mut pts = Vec::new();
    while pts.len() < size {
        let p: Point = (Poly::from_index(f, rng.gen_range(0..bound)), Poly::from_index(f, rng.gen_range(0..bound)));
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointSet::new(pts)
}

fn family(f: &Field, omega: usize) -> WSet {
    let mut forms = vec![BivarPoly::constant(Poly::one(f)), BivarPoly::x(f), BivarPoly::y(f)];
    if omega == 4 {
        forms.push(BivarPoly::monomial(1, 1, Poly::one(f)));
    }
    WSet::new(forms).unwrap()
}

/// `f^κ | W(P)` for every admissible tuple, and the exact expectation
/// identity, on random sets with all small moduli.
#[test]
fn divisibility_and_expectation_small_corpus() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for q in [2u32, 3] {
        let f = field(q);
        for omega in [3usize, 4] {
            let w = family(&f, omega);
            for size in 1..=5 {
                let s = random_set(&f, size, &mut rng);
                for deg in 1..=2 {
                    for m in monic_irreducibles(&f, deg) {
                        let r = verify_ord_inequality(&w, &s, &m, DEFAULT_TUPLE_BUDGET).unwrap();
                        assert!(r.pass, "{r:?}");
                        let e = mean_distinct_identity(&s, &m, omega, DEFAULT_TUPLE_BUDGET).unwrap();
                        assert!(e.pass);
                    }
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bareiss_agrees_with_cofactor(q in prop::sample::select(vec![2u32, 3, 4]), d in 0u32..=2, m in 0u32..=1, seed: u64) {
        let f = field(q);
        let w = wset_grid(&f, d, m);
        prop_assume!(w.omega() <= 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tuple: Vec<Point> = (0..w.omega())
            .map(|_| (Poly::from_index(&f, rng.gen_range(0..64)), Poly::from_index(&f, rng.gen_range(0..64))))
            .collect();
        prop_assert_eq!(w_det(&w, &tuple).unwrap(), w_det_with(&w, &tuple, DetAlgorithm::Cofactor).unwrap());
    }

    #[test]
    fn congruent_columns_force_divisibility(seed: u64) {
        let f = field(3);
        let m = Poly::from_ints(&f, &[2, 2, 1]);
        let w = wset_grid(&f, 1, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base: Point = (Poly::from_index(&f, rng.gen_range(0..27)), Poly::from_index(&f, rng.gen_range(0..27)));
        let mut tuple = vec![base.clone()];
        for _ in 0..3 {
            if rng.gen_bool(0.5) {
                let (s0, s1) = (rng.gen_range(0..9), rng.gen_range(0..9));
                let shift = |p: &Poly, s| p + &(&m * &Poly::from_index(&f, s));
                tuple.push((shift(&base.0, s0), shift(&base.1, s1)));
            } else {
                tuple.push((Poly::from_index(&f, rng.gen_range(0..81)), Poly::from_index(&f, rng.gen_range(0..81))));
            }
        }
        let det = w_det(&w, &tuple).unwrap();
        let k = kappa(&tuple, &m).unwrap();
        prop_assert!(m.pow(k).divides(&det));
    }
}
