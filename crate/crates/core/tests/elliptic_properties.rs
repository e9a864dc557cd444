use polybox::elliptic::{
    count_n_lambda, extremal_count, iso_witness, invariant_congruent, lambda_sum_identity, small_coeff_model,
    TauPlan,
};
use polybox::ff::{monic_irreducibles, random_irreducible};
use polybox::{Field, Interval, Poly, ResidueRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

#[test]
fn sum_identity_exhaustive() {
    for q in [2u32, 3] {
        let f = field(q);
        for deg in 1..=3 {
            for m in monic_irreducibles(&f, deg) {
                for n in 0..=2 {
                    let i = Interval::centered(&f, n).unwrap();
                    let r = lambda_sum_identity(&i, &m).unwrap();
                    assert!(r.pass, "q={q} f={m} n={n}: {r:?}");
                }
            }
        }
    }
}

#[test]
fn witness_success_implies_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [3u32, 5] {
        let f = field(q);
        for _ in 0..200 {
            let m = random_irreducible(&f, rng.gen_range(1..=3), rng.gen()).unwrap();
            let r = ResidueRing::new(&m).unwrap();
            let n = r.size_u64().unwrap();
            let pick = |rng: &mut ChaCha8Rng| r.element(rng.gen_range(0..n));
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            let (c, d) = if rng.gen_bool(0.5) {
                let t = r.element(rng.gen_range(1..n));
                (r.mul(&a, &r.pow_u64(&t, 4)), r.mul(&b, &r.pow_u64(&t, 6)))
            } else {
                (pick(&mut rng), pick(&mut rng))
            };
            if let Some(t) = iso_witness(&a, &b, &c, &d, &m).unwrap() {
                assert!(invariant_congruent(&a, &b, &c, &d, &m).unwrap());
                assert!(r.eq(&r.mul(&a, &r.pow_u64(&t, 4)), &c));
                assert!(r.eq(&r.mul(&b, &r.pow_u64(&t, 6)), &d));
            }
        }
    }
}

#[test]
fn sharpness_family_lower_bound() {
    for q in [2u32, 3] {
        let f = field(q);
        for n in 0..=3u32 {
            let i = Interval::centered(&f, n).unwrap();
            let m = random_irreducible(&f, 3 * n as usize + 1, n as u64).unwrap();
            let n1 = count_n_lambda(&i, &Poly::one(&f), &m).unwrap();
            let ext = extremal_count(&i).unwrap();
            assert_eq!(ext, (q as u64).pow(n / 3 + 1));
            assert!(n1 >= ext);
        }
    }
}

#[test]
fn small_model_matches_original_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in [2u32, 3] {
        let f = field(q);
        for n in 0..=2u32 {
            let m = 9 * (n + 1) + 2;
            let modulus = random_irreducible(&f, m as usize, rng.gen()).unwrap();
            let plan = TauPlan::default_for(m, n);
            let bound = (q as u64).pow(n + 1);
            for _ in 0..3 {
                let lam = Poly::from_index(&f, rng.gen_range(1..1000));
                let x0 = Poly::from_index(&f, rng.gen_range(0..1000));
                let model = small_coeff_model(&lam, &x0, &modulus, &plan).unwrap();
                for _ in 0..1000 {
                    let x = Poly::from_index(&f, rng.gen_range(0..bound));
                    let y = Poly::from_index(&f, rng.gen_range(0..bound));
                    assert_eq!(model.original_holds(&x, &y), model.model_holds(&x, &y));
                }
            }
        }
    }
}
