//! Plane curves `F(X, Y) = 0` with coefficients in `F_q[T]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::upoly;
use crate::ff::{Field, Interval, Poly, ResidueField};

/// `F = sum F_ij X^i Y^j` with `F_ij` in `F_q[T]`. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BivarPoly {
    field: Field,
    terms: BTreeMap<(u32, u32), Poly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    /// `max(i + j)`
    pub total: u32,
    pub x: u32,
    pub y: u32,
    /// Largest `T`-degree among coefficients.
    pub t: usize,
}

impl BivarPoly {
    pub fn zero(field: &Field) -> BivarPoly {
        BivarPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Poly) -> BivarPoly {
        BivarPoly::monomial(0, 0, c)
    }

    /// `c·X^i·Y^j`.
    pub fn monomial(i: u32, j: u32, c: Poly) -> BivarPoly {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BivarPoly { field, terms }
    }

    pub fn x(field: &Field) -> BivarPoly {
        BivarPoly::monomial(1, 0, Poly::one(field))
    }

    pub fn y(field: &Field) -> BivarPoly {
        BivarPoly::monomial(0, 1, Poly::one(field))
    }

    /// Sums repeated exponents and drops zero coefficients.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = ((u32, u32), Poly)>) -> BivarPoly {
        let mut out = BivarPoly::zero(field);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    fn add_term(&mut self, e: (u32, u32), c: &Poly) {
        if c.is_zero() {
            return;
        }
        assert!(c.field() == &self.field, "{}", Error::FieldMismatch);
        let sum = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Poly> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Poly {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_stats(&self) -> Result<DegreeStats> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let keys = self.terms.keys();
        Ok(DegreeStats {
            total: keys.clone().map(|&(i, j)| i + j).max().unwrap_or(0),
            x: keys.clone().map(|&(i, _)| i).max().unwrap_or(0),
            y: keys.map(|&(_, j)| j).max().unwrap_or(0),
            t: self.terms.values().filter_map(Poly::degree).max().unwrap_or(0),
        })
    }

    pub fn deg_x(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn deg_y(&self) -> u32 {
        self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// `F(X, Y)` computed exactly in `F_q[T]`.
    pub fn evaluate(&self, x: &Poly, y: &Poly) -> Poly {
        let xs = powers(x, self.deg_x());
        let ys = powers(y, self.deg_y());
        let mut acc = Poly::zero(&self.field);
        for (&(i, j), c) in &self.terms {
            let term = &(c * &xs[i as usize]) * &ys[j as usize];
            acc = &acc + &term;
        }
        acc
    }

    /// Coefficients `c_j(X)` of `F(X, Y) = sum_j c_j(X) Y^j` at a fixed `X`.
    pub fn specialize_x(&self, x: &Poly) -> Vec<Poly> {
        let xs = powers(x, self.deg_x());
        let mut out = vec![Poly::zero(&self.field); self.deg_y() as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[j as usize] = &out[j as usize] + &(c * &xs[i as usize]);
        }
        out
    }

    /// Coefficients of `F(X, Y) = sum_i c_i(Y) X^i` at a fixed `Y`.
    pub fn specialize_y(&self, y: &Poly) -> Vec<Poly> {
        self.swap_xy().specialize_x(y)
    }

    /// `F(Y, X)`.
    pub fn swap_xy(&self) -> BivarPoly {
        BivarPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// The homogeneous part of top total degree.
    pub fn top_form(&self) -> BivarPoly {
        let d = self.total_degree().unwrap_or(0);
        BivarPoly {
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i + j == d)
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Poly) -> BivarPoly {
        BivarPoly::from_terms(&self.field, self.terms.iter().map(|(&e, v)| (e, v * c)))
    }

    /// Coefficients reduced modulo `f`.
    pub fn reduce_mod(&self, f: &Poly) -> Result<BivarPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&e, c) in &self.terms {
            terms.push((e, c.rem(f)?));
        }
        Ok(BivarPoly::from_terms(&self.field, terms))
    }

    /// Whether `self = λ·other` for some nonzero `λ` in `F_q(T)`, tested by
    /// cross-multiplying coefficients against a reference monomial.
    pub fn is_proportional(&self, other: &BivarPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return false;
        }
        if self.terms.len() != other.terms.len()
            || self.terms.keys().zip(other.terms.keys()).any(|(a, b)| a != b)
        {
            return false;
        }
        let (e0, a0) = self.terms.iter().next().expect("nonzero");
        let b0 = &other.terms[e0];
        self.terms
            .iter()
            .all(|(e, a)| a * b0 == &other.terms[e] * a0)
    }
}

fn powers(x: &Poly, n: u32) -> Vec<Poly> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Poly::one(x.field()));
    for k in 1..=n as usize {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        self + &(-rhs)
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero(&self.field);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    /// Canonical form: terms sorted by `(i, j)` descending, each written
    /// `(<poly>)*X^i*Y^j` with unit coefficients and unit exponents elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            if !(c.is_one() && (i, j) != (0, 0)) {
                factors.push(format!("({c})"));
            }
            match i {
                0 => {}
                1 => factors.push("X".into()),
                _ => factors.push(format!("X^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("Y".into()),
                _ => factors.push(format!("Y^{j}")),
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

/// `(X, Y) = (A X' + B Y', C X' + D Y')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMatrix {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl TransformMatrix {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Result<TransformMatrix> {
        let m = TransformMatrix { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(m)
    }

    pub fn identity(field: &Field) -> TransformMatrix {
        TransformMatrix {
            a: Poly::one(field),
            b: Poly::zero(field),
            c: Poly::zero(field),
            d: Poly::one(field),
        }
    }

    /// `X = X'`, `Y = c X' + Y'`.
    pub fn shear(c: Poly) -> TransformMatrix {
        let field = c.field().clone();
        TransformMatrix {
            a: Poly::one(&field),
            b: Poly::zero(&field),
            c,
            d: Poly::one(&field),
        }
    }

    pub fn det(&self) -> Poly {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    /// Image of a point `(x', y')` in the original coordinates.
    pub fn map_point(&self, x: &Poly, y: &Poly) -> (Poly, Poly) {
        (
            &(&self.a * x) + &(&self.b * y),
            &(&self.c * x) + &(&self.d * y),
        )
    }
}

/// `F'(X', Y') = F(A X' + B Y', C X' + D Y')`, expanded term by term:
/// `F_ij (AX'+BY')^i (CX'+DY')^j = sum_{k,l} C(i,k) C(j,l) F_ij A^{i-k} B^k
/// C^{j-l} D^l X'^{i+j-k-l} Y'^{k+l}`.
pub fn apply_transform(f: &BivarPoly, m: &TransformMatrix) -> Result<BivarPoly> {
    if m.det().is_zero() {
        return Err(Error::SingularTransform);
    }
    let field = f.field();
    let (dx, dy) = (f.deg_x(), f.deg_y());
    let pa = powers(&m.a, dx);
    let pb = powers(&m.b, dx);
    let pc = powers(&m.c, dy);
    let pd = powers(&m.d, dy);
    let mut out = BivarPoly::zero(field);
    for (&(i, j), coef) in f.terms() {
        for k in 0..=i {
            let left = &(&pa[(i - k) as usize] * &pb[k as usize]).scale(field.binomial(i, k)) * coef;
            if left.is_zero() {
                continue;
            }
            for l in 0..=j {
                let right = (&pc[(j - l) as usize] * &pd[l as usize]).scale(field.binomial(j, l));
                out.add_term((i + j - k - l, k + l), &(&left * &right));
            }
        }
    }
    Ok(out)
}

/// A transform with `deg_{X'} F' = deg F`. Tries the shears `Y = c X' + Y'`
/// for `c` in `F_q` in canonical order, then `c` of degree 1, 2, ... ; the
/// `X'^d` coefficient of the result is `F_d(1, c)`, which has at most `d`
/// roots `c`.
pub fn find_full_degree_transform(f: &BivarPoly) -> Result<(TransformMatrix, BivarPoly)> {
    let stats = f.degree_stats()?;
    let field = f.field();
    if stats.x == stats.total {
        return Ok((TransformMatrix::identity(field), f.clone()));
    }
    let top = f.top_form();
    let mut index = 0u64;
    loop {
        let c = Poly::from_index(field, index);
        let lead = top.evaluate(&Poly::one(field), &c);
        if !lead.is_zero() {
            let m = TransformMatrix::shear(c);
            let g = apply_transform(f, &m)?;
            debug_assert_eq!(g.deg_x(), stats.total);
            return Ok((m, g));
        }
        index += 1;
    }
}

/// How [`count_points_mod_with`] walks the residue plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountStrategy {
    /// `deg_Y <= 3` uses per-row root counting, otherwise exhaustive.
    Auto,
    /// Evaluate at all `|f|^2` points.
    Exhaustive,
    /// For each `x`, count distinct roots in `y` as `deg gcd(F(x,y), y^Q - y)`.
    RootsPerX,
    /// For each `y`, count distinct roots in `x`.
    RootsPerY,
}

/// `#{(x, y) in (F_q[T]/f)^2 : F(x, y) = 0 mod f}`.
pub fn count_points_mod(f: &BivarPoly, modulus: &Poly) -> Result<u64> {
    count_points_mod_with(f, modulus, CountStrategy::Auto)
}

pub fn count_points_mod_with(f: &BivarPoly, modulus: &Poly, strategy: CountStrategy) -> Result<u64> {
    let rf = ResidueField::new(modulus)?;
    count_points_in(f, &rf, strategy)
}

/// As [`count_points_mod_with`] over a prebuilt residue field.
pub fn count_points_in(f: &BivarPoly, rf: &ResidueField, strategy: CountStrategy) -> Result<u64> {
    let reduced: Vec<((u32, u32), u32)> = f
        .terms()
        .iter()
        .map(|(&e, c)| (e, rf.encode(c)))
        .filter(|&(_, c)| c != 0)
        .collect();
    if reduced.is_empty() {
        return Err(Error::VanishesModulo(rf.ring().modulus().to_string()));
    }
    let strategy = match strategy {
        CountStrategy::Auto if f.deg_y() <= 3 => CountStrategy::RootsPerX,
        CountStrategy::Auto => CountStrategy::Exhaustive,
        s => s,
    };
    let order = rf.order();
    let ar = rf.arith();
    let count = match strategy {
        CountStrategy::Exhaustive => (0..order)
            .into_par_iter()
            .map(|x| {
                let row = specialize_codes(ar, &reduced, x, false);
                (0..order).filter(|&y| upoly::eval(ar, &row, y) == 0).count() as u64
            })
            .sum(),
        CountStrategy::RootsPerX | CountStrategy::RootsPerY => {
            let swap = strategy == CountStrategy::RootsPerY;
            (0..order)
                .into_par_iter()
                .map(|v| {
                    let row = specialize_codes(ar, &reduced, v, swap);
                    if row.is_empty() {
                        order as u64
                    } else {
                        upoly::count_distinct_roots(ar, &row) as u64
                    }
                })
                .sum()
        }
        CountStrategy::Auto => unreachable!(),
    };
    Ok(count)
}

/// The univariate polynomial in the free variable after fixing `X = v`
/// (or `Y = v` when `swap`).
fn specialize_codes(
    ar: &crate::ff::gf::GfArith,
    terms: &[((u32, u32), u32)],
    v: u32,
    swap: bool,
) -> Vec<u32> {
    let free_deg = terms
        .iter()
        .map(|&((i, j), _)| if swap { i } else { j })
        .max()
        .unwrap_or(0);
    let mut row = vec![0u32; free_deg as usize + 1];
    for &((i, j), c) in terms {
        let (fixed, free) = if swap { (j, i) } else { (i, j) };
        let t = ar.mul(c, ar.pow(v, fixed as u64));
        row[free as usize] = ar.add(row[free as usize], t);
    }
    upoly::trim(&mut row);
    row
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeilWindow {
    pub count: u64,
    pub norm: u64,
    /// `C·sqrt(|f|)`, for display; the pass verdict is computed exactly.
    pub bound: f64,
    pub pass: bool,
}

/// Checks `|count - |f|| <= C·sqrt(|f|)`, exactly, as
/// `(|count - |f||·den)^2 <= num^2·|f|` for `C = num/den`.
pub fn weil_window_check(f: &BivarPoly, modulus: &Poly, c: Ratio<u64>) -> Result<WeilWindow> {
    let rf = ResidueField::new(modulus)?;
    weil_window_in(f, &rf, c)
}

pub fn weil_window_in(f: &BivarPoly, rf: &ResidueField, c: Ratio<u64>) -> Result<WeilWindow> {
    let count = count_points_in(f, rf, CountStrategy::Auto)?;
    let norm = rf.order() as u64;
    let dev = count.abs_diff(norm) as u128 * *c.denom() as u128;
    let num = *c.numer() as u128;
    let pass = dev * dev <= num * num * norm as u128;
    let bound = *c.numer() as f64 / *c.denom() as f64 * (norm as f64).sqrt();
    Ok(WeilWindow {
        count,
        norm,
        bound,
        pass,
    })
}

/// Whether `F` has the shape `u Y^2 + a1 XY + a3 Y - (v X^3 + a2 X^2 + a4 X + a6)`
/// with `u, v` nonzero constants.
pub fn is_weierstrass_shape(f: &BivarPoly) -> bool {
    let allowed = [(0, 2), (1, 1), (0, 1), (3, 0), (2, 0), (1, 0), (0, 0)];
    f.terms().keys().all(|e| allowed.contains(e))
        && f.terms().get(&(0, 2)).is_some_and(Poly::is_constant)
        && f.terms().get(&(3, 0)).is_some_and(Poly::is_constant)
}

/// `2` for Weierstrass-shaped curves (the Hasse bound on affine points),
/// `2·d^2` otherwise.
pub fn default_weil_constant(f: &BivarPoly) -> Ratio<u64> {
    if is_weierstrass_shape(f) {
        Ratio::from_integer(2)
    } else {
        let d = f.total_degree().unwrap_or(0) as u64;
        Ratio::from_integer(2 * d * d)
    }
}

/// Points of `F` in `I_x × I_y` by direct double loop. Reference
/// implementation for small boxes.
pub(crate) fn naive_zeros(f: &BivarPoly, ix: &Interval, iy: &Interval) -> Vec<(Poly, Poly)> {
    (0..ix.size())
        .into_par_iter()
        .flat_map_iter(|a| {
            let x = ix.element(a);
            let row = f.specialize_x(&x);
            iy.iter()
                .filter(|y| eval_univariate(&row, y).is_zero())
                .map(|y| (x.clone(), y))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `sum_j c_j y^j` by Horner's rule.
pub(crate) fn eval_univariate(coeffs: &[Poly], y: &Poly) -> Poly {
    let mut acc = Poly::zero(y.field());
    for c in coeffs.iter().rev() {
        acc = &(&acc * y) + c;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn c(field: &Field, ints: &[i64]) -> Poly {
        Poly::from_ints(field, ints)
    }

    fn term(field: &Field, i: u32, j: u32, ints: &[i64]) -> ((u32, u32), Poly) {
        ((i, j), c(field, ints))
    }

    /// y^2 - x^3 - x
    fn weierstrass(field: &Field) -> BivarPoly {
        BivarPoly::from_terms(field, [term(field, 0, 2, &[1]), term(field, 3, 0, &[-1]), term(field, 1, 0, &[-1])])
    }

    #[test]
    fn evaluate_examples() {
        let f = gf(2);
        let parabola = BivarPoly::from_terms(&f, [term(&f, 0, 1, &[1]), term(&f, 2, 0, &[-1])]);
        let t = Poly::t(&f);
        assert!(parabola.evaluate(&t, &t.pow(2)).is_zero());
        let one = BivarPoly::constant(Poly::one(&f));
        assert!(one.evaluate(&t, &t).is_one());
        let g = BivarPoly::from_terms(&f, [term(&f, 1, 0, &[0, 1]), term(&f, 0, 2, &[1])]);
        assert_eq!(g.evaluate(&Poly::one(&f), &t), c(&f, &[0, 1, 1]));
    }

    #[test]
    fn degree_stats_examples() {
        let f = gf(3);
        let g = BivarPoly::from_terms(&f, [term(&f, 1, 0, &[0, 0, 1]), term(&f, 0, 2, &[1, 1])]);
        assert_eq!(g.degree_stats().unwrap(), DegreeStats { total: 2, x: 1, y: 2, t: 2 });
        let xy = BivarPoly::monomial(1, 1, Poly::one(&f));
        assert_eq!(xy.degree_stats().unwrap(), DegreeStats { total: 2, x: 1, y: 1, t: 0 });
        let h = BivarPoly::from_terms(&f, [term(&f, 3, 0, &[1]), term(&f, 0, 1, &[1]), term(&f, 0, 0, &[-1])]);
        assert_eq!(h.degree_stats().unwrap(), DegreeStats { total: 3, x: 3, y: 1, t: 0 });
        assert_eq!(BivarPoly::zero(&f).degree_stats(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn count_points_examples() {
        let f2 = gf(2);
        let e = weierstrass(&f2);
        assert_eq!(count_points_mod(&e, &Poly::t(&f2)).unwrap(), 2);
        assert_eq!(count_points_mod(&e, &c(&f2, &[1, 1, 1])).unwrap(), 4);
        let one = BivarPoly::constant(Poly::one(&f2));
        assert_eq!(count_points_mod(&one, &Poly::t(&f2)).unwrap(), 0);
        let vanishing = BivarPoly::constant(Poly::t(&f2));
        assert!(matches!(count_points_mod(&vanishing, &Poly::t(&f2)), Err(Error::VanishesModulo(_))));
    }

    #[test]
    fn strategies_agree() {
        let f = gf(3);
        let curves = [
            weierstrass(&f),
            BivarPoly::from_terms(&f, [term(&f, 1, 1, &[1])]),
            BivarPoly::from_terms(&f, [term(&f, 4, 1, &[1, 1]), term(&f, 0, 5, &[2]), term(&f, 1, 0, &[0, 1])]),
        ];
        for g in &curves {
            for m in [c(&f, &[1, 0, 1]), c(&f, &[1, 2, 0, 1])] {
                let rf = ResidueField::new(&m).unwrap();
                let ex = count_points_in(g, &rf, CountStrategy::Exhaustive).unwrap();
                assert_eq!(count_points_in(g, &rf, CountStrategy::RootsPerX).unwrap(), ex);
                assert_eq!(count_points_in(g, &rf, CountStrategy::RootsPerY).unwrap(), ex);
            }
        }
    }

    #[test]
    fn weil_window_examples() {
        let f2 = gf(2);
        let e = weierstrass(&f2);
        let w = weil_window_check(&e, &c(&f2, &[1, 1, 1]), Ratio::from_integer(2)).unwrap();
        assert_eq!((w.count, w.norm, w.pass), (4, 4, true));

        // XY = 0 is two lines: 2|f| - 1 points, outside any fixed window for large |f|
        let xy = BivarPoly::monomial(1, 1, Poly::one(&f2));
        let m = crate::ff::random_irreducible(&f2, 10, 1).unwrap();
        let w = weil_window_check(&xy, &m, Ratio::from_integer(8)).unwrap();
        assert_eq!(w.count, 2 * 1024 - 1);
        assert!(!w.pass);
    }

    #[test]
    fn transform_examples() {
        let f = gf(2);
        let y2 = BivarPoly::monomial(0, 2, Poly::one(&f));
        let same = apply_transform(&y2, &TransformMatrix::identity(&f)).unwrap();
        assert_eq!(same, y2);

        let m = TransformMatrix::shear(Poly::one(&f));
        let g = apply_transform(&y2, &m).unwrap();
        // (X' + Y')^2 = X'^2 + Y'^2 over F_2
        assert_eq!(g.to_string(), "X^2+Y^2");
        let f3 = gf(3);
        let g3 = apply_transform(&BivarPoly::monomial(0, 2, Poly::one(&f3)), &TransformMatrix::shear(Poly::one(&f3))).unwrap();
        assert_eq!(g3.to_string(), "X^2+(2)*X*Y+Y^2");

        let singular = TransformMatrix::new(Poly::one(&f), Poly::one(&f), Poly::one(&f), Poly::one(&f));
        assert_eq!(singular, Err(Error::SingularTransform));
    }

    #[test]
    fn full_degree_transform_examples() {
        let f = gf(2);
        let x2 = BivarPoly::from_terms(&f, [term(&f, 2, 0, &[1]), term(&f, 0, 1, &[1])]);
        let (m, g) = find_full_degree_transform(&x2).unwrap();
        assert_eq!(m, TransformMatrix::identity(&f));
        assert_eq!(g, x2);

        let y2 = BivarPoly::monomial(0, 2, Poly::one(&f));
        let (m, g) = find_full_degree_transform(&y2).unwrap();
        assert_eq!(m, TransformMatrix::shear(Poly::one(&f)));
        assert_eq!(g.deg_x(), 2);

        let xy = BivarPoly::monomial(1, 1, Poly::one(&f));
        let (m, g) = find_full_degree_transform(&xy).unwrap();
        assert!(!m.c.is_zero());
        assert_eq!(g.deg_x(), 2);
    }

    #[test]
    fn full_degree_transform_needs_polynomial_shift_when_q_small() {
        // top form X^2 Y + X Y^2 = XY(X + Y) vanishes at c = 0, 1 over F_2
        let f = gf(2);
        let g = BivarPoly::from_terms(&f, [term(&f, 2, 1, &[1]), term(&f, 1, 2, &[1])]);
        let (m, h) = find_full_degree_transform(&g).unwrap();
        assert_eq!(m.c.degree(), Some(1));
        assert_eq!(h.deg_x(), 3);
    }

    #[test]
    fn display_is_canonical() {
        let f = gf(5);
        let g = BivarPoly::from_terms(&f, [term(&f, 0, 2, &[1]), term(&f, 3, 0, &[-1]), term(&f, 1, 0, &[0, -1])]);
        assert_eq!(g.to_string(), "(4)*X^3+(4*T)*X+Y^2");
    }

    #[test]
    fn proportionality() {
        let f = gf(3);
        let g = weierstrass(&f);
        let h = g.scale(&c(&f, &[1, 2]));
        assert!(g.is_proportional(&h));
        assert!(!g.is_proportional(&(&h + &BivarPoly::x(&f))));
    }
}
