use polybox::curves::{
    apply_transform, count_points_in, count_points_mod, find_full_degree_transform, CountStrategy,
};
use polybox::ff::random_irreducible;
use polybox::{BivarPoly, Field, Poly, ResidueField, TransformMatrix};
use proptest::prelude::*;

fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

fn curve(f: &Field, terms: &[(u32, u32, u64)]) -> BivarPoly {
    BivarPoly::from_terms(f, terms.iter().map(|&(i, j, c)| ((i, j), Poly::from_index(f, c))))
}

fn arb_terms(max_deg: u32, max_index: u64) -> impl Strategy<Value = Vec<(u32, u32, u64)>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, 0..max_index), 1..6)
        .prop_map(move |v| v.into_iter().filter(|&(i, j, _)| i + j <= max_deg).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn transform_preserves_degree(q in prop::sample::select(vec![2u32, 3, 5]), terms in arb_terms(4, 30), m in (0u64..30, 0u64..30, 0u64..30, 0u64..30)) {
        let f = field(q);
        let g = curve(&f, &terms);
        prop_assume!(!g.is_zero());
        let Ok(mat) = TransformMatrix::new(
            Poly::from_index(&f, m.0), Poly::from_index(&f, m.1),
            Poly::from_index(&f, m.2), Poly::from_index(&f, m.3),
        ) else { return Ok(()); };
        let h = apply_transform(&g, &mat).unwrap();
        prop_assert_eq!(h.total_degree(), g.total_degree());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transform_evaluation_identity(terms in arb_terms(3, 9), m in (0u64..9, 0u64..9, 0u64..9, 0u64..9), x: u8, y: u8) {
        let f = field(3);
        let g = curve(&f, &terms);
        let Ok(mat) = TransformMatrix::new(
            Poly::from_index(&f, m.0), Poly::from_index(&f, m.1),
            Poly::from_index(&f, m.2), Poly::from_index(&f, m.3),
        ) else { return Ok(()); };
        let h = apply_transform(&g, &mat).unwrap();
        let (x, y) = (Poly::from_index(&f, x as u64), Poly::from_index(&f, y as u64));
        let (u, v) = mat.map_point(&x, &y);
        prop_assert_eq!(h.evaluate(&x, &y), g.evaluate(&u, &v));
    }

    #[test]
    fn point_count_invariant_under_linear_change(terms in arb_terms(3, 9), m in (0u64..9, 0u64..9, 0u64..9, 0u64..9), seed in 0u64..50) {
        let f = field(3);
        let modulus = random_irreducible(&f, 2, seed).unwrap();
        let g = curve(&f, &terms);
        let mat = TransformMatrix {
            a: Poly::from_index(&f, m.0).rem(&modulus).unwrap(),
            b: Poly::from_index(&f, m.1).rem(&modulus).unwrap(),
            c: Poly::from_index(&f, m.2).rem(&modulus).unwrap(),
            d: Poly::from_index(&f, m.3).rem(&modulus).unwrap(),
        };
        prop_assume!(!mat.det().rem(&modulus).unwrap().is_zero());
        let h = apply_transform(&g, &mat).unwrap();
        match (count_points_mod(&g, &modulus), count_points_mod(&h, &modulus)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "mismatch {a:?} {b:?}"),
        }
    }

    #[test]
    fn counting_strategies_agree(q in prop::sample::select(vec![2u32, 3]), terms in arb_terms(5, 9), seed in 0u64..50) {
        let f = field(q);
        let g = curve(&f, &terms);
        let modulus = random_irreducible(&f, 3, seed).unwrap();
        let rf = ResidueField::new(&modulus).unwrap();
        let Ok(ex) = count_points_in(&g, &rf, CountStrategy::Exhaustive) else { return Ok(()); };
        prop_assert_eq!(count_points_in(&g, &rf, CountStrategy::RootsPerX).unwrap(), ex);
        prop_assert_eq!(count_points_in(&g, &rf, CountStrategy::RootsPerY).unwrap(), ex);
    }
}

/// Every curve of degree <= 3 over F_2 with coefficients in {0, 1, T, T+1}.
#[test]
fn full_degree_transform_exhaustive_q2() {
    let f = field(2);
    let monomials: Vec<(u32, u32)> = (0..=3).flat_map(|k| (0..=k).map(move |j| (k - j, j))).collect();
    for code in 1u64..4u64.pow(monomials.len() as u32) {
        let mut c = code;
        let mut terms = Vec::new();
        for &e in &monomials {
            terms.push((e, Poly::from_index(&f, c % 4)));
            c /= 4;
        }
        let g = BivarPoly::from_terms(&f, terms);
        let (_, h) = find_full_degree_transform(&g).unwrap();
        assert_eq!(h.deg_x(), g.total_degree().unwrap());
    }
}
