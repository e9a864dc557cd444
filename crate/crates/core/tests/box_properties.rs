use polybox::boxcount::{enumerate_box_points, enumerate_box_points_with, residue_stats, EnumStrategy};
use polybox::ff::random_irreducible;
use polybox::{BivarPoly, Field, Interval, PlaneBox, Poly};
use proptest::prelude::*;

fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

fn y_minus_x_pow(f: &Field, d: u32) -> BivarPoly {
    BivarPoly::from_terms(f, [((0, 1), Poly::one(f)), ((d, 0), Poly::from_ints(f, &[-1]))])
}

/// All curves of degree <= 3 over F_q with at most three monomials and
/// coefficients in {1, T}, on boxes with n <= 4 (q = 2) or n <= 2 (q = 3).
#[test]
fn strategies_agree_on_small_corpus() {
    for (q, max_n) in [(2u32, 4u32), (3, 2)] {
        let f = field(q);
        let monomials: Vec<(u32, u32)> = (0..=3).flat_map(|k| (0..=k).map(move |j| (k - j, j))).collect();
        let coeffs = [Poly::one(&f), Poly::t(&f)];
        let mut curves = Vec::new();
        for a in 0..monomials.len() {
            for b in a + 1..monomials.len() {
                for c in [None, Some(0usize), Some(1), Some(2)] {
                    for (ca, cb) in [(0, 0), (1, 0), (0, 1)] {
                        let mut terms = vec![(monomials[a], coeffs[ca].clone()), (monomials[b], coeffs[cb].clone())];
                        if let Some(k) = c {
                            if k != a && k != b {
                                terms.push((monomials[k], Poly::from_ints(&f, &[-1])));
                            }
                        }
                        curves.push(BivarPoly::from_terms(&f, terms));
                    }
                }
            }
        }
        for g in &curves {
            for n in 0..=max_n {
                let bx = PlaneBox::centered(&f, n).unwrap();
                let naive = enumerate_box_points_with(g, &bx, EnumStrategy::Naive).unwrap();
                let crt = enumerate_box_points_with(g, &bx, EnumStrategy::Crt).unwrap();
                assert_eq!(naive, crt, "q={q} n={n} F={g}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn strategies_agree_on_random_larger_cases(
        q in prop::sample::select(vec![2u32, 3]),
        terms in prop::collection::vec((0u32..=4, 0u32..=3, 1u64..40), 2..5),
        bases in (0u64..200, 0u64..200),
        n in 2u32..=4,
    ) {
        let f = field(q);
        let n = if q == 3 { n.min(3) } else { n };
        let g = BivarPoly::from_terms(&f, terms.iter().map(|&(i, j, c)| ((i, j), Poly::from_index(&f, c))));
        prop_assume!(!g.is_zero());
        let bx = PlaneBox::new(
            Interval::new(Poly::from_index(&f, bases.0), n).unwrap(),
            Interval::new(Poly::from_index(&f, bases.1), n).unwrap(),
        ).unwrap();
        let naive = enumerate_box_points_with(&g, &bx, EnumStrategy::Naive).unwrap();
        let crt = enumerate_box_points_with(&g, &bx, EnumStrategy::Crt).unwrap();
        prop_assert_eq!(naive, crt);
    }
}

#[test]
fn closed_form_and_monotonicity() {
    for q in [2u32, 3, 5] {
        let f = field(q);
        for d in 2..=4 {
            let g = y_minus_x_pow(&f, d);
            let mut prev = 0;
            for n in 0..=12 {
                let s = enumerate_box_points(&g, &PlaneBox::centered(&f, n).unwrap()).unwrap();
                assert_eq!(s.len() as u64, (q as u64).pow(n / d + 1), "q={q} d={d} n={n}");
                assert!(s.len() >= prev);
                prev = s.len();
            }
        }
    }
}

#[test]
fn residue_profiles_satisfy_cauchy() {
    for q in [2u32, 3] {
        let f = field(q);
        for d in 2..=3 {
            let s = enumerate_box_points(&y_minus_x_pow(&f, d), &PlaneBox::centered(&f, 4).unwrap()).unwrap();
            for deg in 1..=3 {
                for seed in 0..5 {
                    let m = random_irreducible(&f, deg, seed).unwrap();
                    let p = residue_stats(&s, &m).unwrap();
                    assert!(p.sum_rho() == num_rational::BigRational::from_integer(1.into()));
                    assert!(p.cauchy_holds());
                    assert!(p.distinct() <= (s.len() as u64).min(q.pow(2 * deg as u32) as u64));
                }
            }
        }
    }
}
