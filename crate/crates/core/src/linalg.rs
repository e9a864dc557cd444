//! Exact linear algebra over `F_q[T]` and over `F_q`.

use crate::ff::{Field, Poly};

pub type PolyMatrix = Vec<Vec<Poly>>;

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
pub fn det_bareiss(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        panic!("empty matrix has no field");
    }
    let field = m[0][0].field().clone();
    let mut a: PolyMatrix = m.to_vec();
    let mut prev = Poly::one(&field);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Poly::zero(&field);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .div_exact(&prev)
                    .expect("same field")
                    .expect("Bareiss quotients are exact");
            }
            a[i][k] = Poly::zero(&field);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant by Laplace expansion along the first row. Exponential; meant
/// for `n <= 5` and as a cross-check.
pub fn det_cofactor(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix required");
    let cols: Vec<usize> = (0..n).collect();
    cofactor_rec(m, 0, &cols)
}

fn cofactor_rec(m: &[Vec<Poly>], row: usize, cols: &[usize]) -> Poly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = Poly::zero(m[0][0].field());
    for (k, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &m[row][c] * &cofactor_rec(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b).expect("nonzero");
    (a * b).div_exact(&g).expect("same field").expect("gcd divides")
}

/// Divides a vector by the monic gcd of its entries.
pub fn strip_content(v: &mut [Poly]) {
    let mut g: Option<Poly> = None;
    for x in v.iter().filter(|x| !x.is_zero()) {
        g = Some(match g {
            None => x.monic(),
            Some(g) => g.gcd(x).expect("nonzero"),
        });
        if g.as_ref().is_some_and(Poly::is_one) {
            return;
        }
    }
    if let Some(g) = g {
        for x in v.iter_mut() {
            *x = x.div_exact(&g).expect("same field").expect("content divides");
        }
    }
}

/// A nonzero vector `x` over `F_q[T]` with `A x = 0`, or `None` if `A` has
/// full column rank.
///
/// Gauss–Jordan elimination without division: the pivot is the
/// lowest-degree nonzero entry of its column, every updated row has its
/// content stripped, and the first non-pivot column is set to the lcm `L`
/// of the pivots so the remaining entries `-a_kf·L/p_k` are polynomials.
pub fn kernel_vector(a: &[Vec<Poly>], ncols: usize, field: &Field) -> Option<Vec<Poly>> {
    let mut a: PolyMatrix = a.to_vec();
    let nrows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| (a[i][c].degree(), i))
        else {
            continue;
        };
        a.swap(r, p);
        for i in 0..nrows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let (pr, fi) = (a[r][c].clone(), a[i][c].clone());
            let row: Vec<Poly> = (0..ncols).map(|j| &(&pr * &a[i][j]) - &(&fi * &a[r][j])).collect();
            a[i] = row;
            strip_content(&mut a[i]);
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free = (0..ncols).find(|c| !pivot_cols.contains(c))?;
    let l = pivot_cols
        .iter()
        .enumerate()
        .fold(Poly::one(field), |acc, (k, &c)| lcm(&acc, &a[k][c]));
    let mut x = vec![Poly::zero(field); ncols];
    x[free] = l.clone();
    for (k, &c) in pivot_cols.iter().enumerate() {
        let ratio = l.div_exact(&a[k][c]).expect("same field").expect("pivot divides lcm");
        x[c] = -(&a[k][free] * &ratio);
    }
    strip_content(&mut x);
    Some(x)
}

/// Reduced row echelon form over `F_q`, in place; returns the pivot columns.
pub fn rref_fq(a: &mut [Vec<u32>], ncols: usize, field: &Field) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        let inv = field.inv(a[r][c]).expect("nonzero pivot");
        for v in a[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = field.sub(*v, field.mul(factor, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A nonzero kernel vector over `F_q`: the first free variable is 1 and the
/// others 0. `None` if the columns are independent.
pub fn kernel_vector_fq(rows: &[Vec<u32>], ncols: usize, field: &Field) -> Option<Vec<u32>> {
    let mut a = rows.to_vec();
    let pivots = rref_fq(&mut a, ncols, field);
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut x = vec![0u32; ncols];
    x[free] = 1;
    for (k, &c) in pivots.iter().enumerate() {
        x[c] = field.neg(a[k][free]);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn matrix(field: &Field, idx: &[u64], n: usize) -> PolyMatrix {
        idx.chunks(n)
            .map(|r| r.iter().map(|&i| Poly::from_index(field, i)).collect())
            .collect()
    }

    #[test]
    fn small_determinants() {
        let f = gf(3);
        let m = matrix(&f, &[1, 0, 0, 0, 1, 0, 0, 0, 1], 3);
        assert!(det_bareiss(&m).is_one());
        // [[0,1],[1,0]] has determinant -1
        let m = matrix(&f, &[0, 1, 1, 0], 2);
        assert_eq!(det_bareiss(&m), Poly::from_ints(&f, &[-1]));
        assert_eq!(det_cofactor(&m), Poly::from_ints(&f, &[-1]));
        let m = matrix(&f, &[3, 4, 3, 4], 2);
        assert!(det_bareiss(&m).is_zero());
    }

    #[test]
    fn kernel_of_line_through_two_points() {
        // rows (1, x, y) at (0,0) and (1,1) over F_2
        let f = gf(2);
        let a = matrix(&f, &[1, 0, 0, 1, 1, 1], 3);
        let x = kernel_vector(&a, 3, &f).unwrap();
        assert_eq!(x, vec![Poly::zero(&f), Poly::one(&f), Poly::one(&f)]);
        let full = matrix(&f, &[1, 0, 0, 1, 1, 0, 1, 0, 1], 3);
        assert!(kernel_vector(&full, 3, &f).is_none());
    }

    #[test]
    fn fq_kernel() {
        let f = gf(3);
        let rows = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let x = kernel_vector_fq(&rows, 3, &f).unwrap();
        for r in &rows {
            let dot = r.iter().zip(&x).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
            assert_eq!(dot, 0);
        }
        assert_eq!(x[2], 1);
        assert!(kernel_vector_fq(&[vec![1, 0], vec![0, 1]], 2, &f).is_none());
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(q in prop::sample::select(vec![2u32, 3, 4]), n in 1usize..=5, seed in prop::collection::vec(0u64..200, 25)) {
            let f = gf(q);
            let m = matrix(&f, &seed[..n * n], n);
            prop_assert_eq!(det_bareiss(&m), det_cofactor(&m));
        }

        #[test]
        fn kernel_is_in_kernel(q in prop::sample::select(vec![2u32, 3]), rows in 1usize..5, extra in 1usize..3, seed in prop::collection::vec(0u64..100, 40)) {
            let f = gf(q);
            let ncols = rows + extra;
            let a = matrix(&f, &seed[..rows * ncols], ncols);
            let x = kernel_vector(&a, ncols, &f).expect("more columns than rows");
            prop_assert!(x.iter().any(|v| !v.is_zero()));
            for r in &a {
                let dot = r.iter().zip(&x).fold(Poly::zero(&f), |acc, (a, b)| &acc + &(a * b));
                prop_assert!(dot.is_zero());
            }
        }
    }
}
