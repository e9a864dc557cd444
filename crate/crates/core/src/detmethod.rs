//! Determinants `W(P) = det(F_i(P_j))` of a family of forms at a tuple of
//! points, their divisibility by powers of `f` when points collide modulo
//! `f`, and interpolation of low-degree curves through given points.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::boxcount::{Point, PointSet};
use crate::curves::BivarPoly;
use crate::error::{Error, Result};
use crate::ff::{Field, Poly};
use crate::linalg::{det_bareiss, det_cofactor, kernel_vector, PolyMatrix};

pub const DEFAULT_TUPLE_BUDGET: u128 = 1_000_000;
pub const DEFAULT_SUBSET_BUDGET: u128 = 100_000;

/// An ordered family of forms `F_1, ..., F_ω` containing `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WSet {
    forms: Vec<BivarPoly>,
    grid: Option<(u32, u32)>,
}

impl WSet {
    pub fn new(forms: Vec<BivarPoly>) -> Result<WSet> {
        let Some(first) = forms.first() else {
            return Err(Error::InvalidArgument("empty form family".into()));
        };
        let one = BivarPoly::constant(Poly::one(first.field()));
        if !forms.contains(&one) {
            return Err(Error::InvalidArgument("form family must contain 1".into()));
        }
        for (i, a) in forms.iter().enumerate() {
            if a.is_zero() || forms[..i].contains(a) {
                return Err(Error::InvalidArgument("forms must be nonzero and pairwise distinct".into()));
            }
        }
        Ok(WSet { forms, grid: None })
    }

    pub fn forms(&self) -> &[BivarPoly] {
        &self.forms
    }

    pub fn field(&self) -> &Field {
        self.forms[0].field()
    }

    pub fn omega(&self) -> usize {
        self.forms.len()
    }

    /// `d_W = sum deg F_i`.
    pub fn d_w(&self) -> u64 {
        self.forms.iter().map(|f| f.total_degree().unwrap_or(0) as u64).sum()
    }

    /// `(d, M)` when built by [`wset_grid`].
    pub fn grid(&self) -> Option<(u32, u32)> {
        self.grid
    }
}

/// Monomials `X^i Y^j`, `0 <= i <= d`, `0 <= j <= M`, with `i` outer and
/// `j` inner.
pub fn wset_grid(field: &Field, d: u32, m: u32) -> WSet {
    let forms = (0..=d)
        .flat_map(|i| (0..=m).map(move |j| (i, j)))
        .map(|(i, j)| BivarPoly::monomial(i, j, Poly::one(field)))
        .collect();
    WSet {
        forms,
        grid: Some((d, m)),
    }
}

/// `(d+1)(M+1)(d+M)/2`.
pub fn grid_d_w(d: u32, m: u32) -> u64 {
    (d as u64 + 1) * (m as u64 + 1) * (d as u64 + m as u64) / 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetAlgorithm {
    Bareiss,
    Cofactor,
}

/// `(F_i(P_j))_{i,j}`.
pub fn w_matrix(w: &WSet, tuple: &[Point]) -> Result<PolyMatrix> {
    if tuple.len() != w.omega() {
        return Err(Error::InvalidArgument(format!(
            "tuple has {} points, expected {}",
            tuple.len(),
            w.omega()
        )));
    }
    Ok(w.forms
        .iter()
        .map(|form| tuple.iter().map(|(x, y)| form.evaluate(x, y)).collect())
        .collect())
}

pub fn w_det(w: &WSet, tuple: &[Point]) -> Result<Poly> {
    w_det_with(w, tuple, DetAlgorithm::Bareiss)
}

pub fn w_det_with(w: &WSet, tuple: &[Point], algo: DetAlgorithm) -> Result<Poly> {
    let m = w_matrix(w, tuple)?;
    Ok(match algo {
        DetAlgorithm::Bareiss => det_bareiss(&m),
        DetAlgorithm::Cofactor => det_cofactor(&m),
    })
}

/// `ω` minus the number of distinct residues of the tuple modulo `f`.
pub fn kappa(tuple: &[Point], f: &Poly) -> Result<u32> {
    let mut residues = Vec::with_capacity(tuple.len());
    for (x, y) in tuple {
        residues.push((x.rem(f)?, y.rem(f)?));
    }
    residues.sort();
    residues.dedup();
    Ok((tuple.len() - residues.len()) as u32)
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Positions in the point set.
    pub tuple: Vec<usize>,
    pub ord: u32,
    pub kappa: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdReport {
    pub omega: usize,
    #[serde(rename = "d_W")]
    pub d_w: u64,
    pub tuples_total: u128,
    pub tuples_admissible: u128,
    /// `sum* ord_f W(P)`, the exponent of `f` in `Δ = prod* W(P)`.
    pub sum_ord: u128,
    pub sum_kappa: u128,
    /// `sum* deg W(P)`, i.e. `log_q Δ` with norms.
    pub sum_log_q: u128,
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
}

fn tuple_count(n: usize, omega: usize, budget: u128) -> Result<u128> {
    let required = (n as u128).checked_pow(omega as u32).unwrap_or(u128::MAX);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(required)
}

fn decode_tuple(mut k: u128, n: usize, omega: usize) -> Vec<usize> {
    (0..omega)
        .map(|_| {
            let i = (k % n as u128) as usize;
            k /= n as u128;
            i
        })
        .collect()
}

/// Checks `f^κ(P) | W(P)` for every admissible tuple `P` in `S^ω`, and the
/// summed form `ord_f Δ >= sum* κ`.
pub fn verify_ord_inequality(w: &WSet, s: &PointSet, f: &Poly, budget: u128) -> Result<OrdReport> {
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    let omega = w.omega();
    let n = s.len();
    let total = tuple_count(n, omega, budget)?;
    let pts = s.points();
    let residue_ids = residue_classes(pts, f)?;

    struct Acc {
        admissible: u128,
        ord: u128,
        kappa: u128,
        log: u128,
        bad: Vec<Counterexample>,
    }
    let acc = (0..total)
        .into_par_iter()
        .map(|k| {
            let idx = decode_tuple(k, n, omega);
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() < omega {
                return None;
            }
            let tuple: Vec<Point> = idx.iter().map(|&i| pts[i].clone()).collect();
            let det = w_det(w, &tuple).expect("tuple length matches");
            if det.is_zero() {
                return None;
            }
            let mut cls: Vec<usize> = idx.iter().map(|&i| residue_ids[i]).collect();
            cls.sort_unstable();
            cls.dedup();
            let kap = (omega - cls.len()) as u32;
            let ord = det.ord(f).expect("same field").expect("nonzero");
            Some((idx, ord, kap, det.degree().expect("nonzero")))
        })
        .fold(
            || Acc { admissible: 0, ord: 0, kappa: 0, log: 0, bad: Vec::new() },
            |mut a, r| {
                if let Some((idx, ord, kap, deg)) = r {
                    a.admissible += 1;
                    a.ord += ord as u128;
                    a.kappa += kap as u128;
                    a.log += deg as u128;
                    if ord < kap {
                        a.bad.push(Counterexample { tuple: idx, ord, kappa: kap });
                    }
                }
                a
            },
        )
        .reduce(
            || Acc { admissible: 0, ord: 0, kappa: 0, log: 0, bad: Vec::new() },
            |mut a, b| {
                a.admissible += b.admissible;
                a.ord += b.ord;
                a.kappa += b.kappa;
                a.log += b.log;
                a.bad.extend(b.bad);
                a
            },
        );
    let mut bad = acc.bad;
    bad.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    Ok(OrdReport {
        omega,
        d_w: w.d_w(),
        tuples_total: total,
        tuples_admissible: acc.admissible,
        sum_ord: acc.ord,
        sum_kappa: acc.kappa,
        sum_log_q: acc.log,
        pass: bad.is_empty() && acc.ord >= acc.kappa,
        counterexamples: bad,
    })
}

/// Index of each point's residue class modulo `f`, numbered by first
/// appearance.
fn residue_classes(pts: &[Point], f: &Poly) -> Result<Vec<usize>> {
    let mut ids: HashMap<Point, usize> = HashMap::new();
    let mut out = Vec::with_capacity(pts.len());
    for (x, y) in pts {
        let key = (x.rem(f)?, y.rem(f)?);
        let next = ids.len();
        out.push(*ids.entry(key).or_insert(next));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeanIdentity {
    pub omega: usize,
    pub tuples_total: u128,
    /// Mean of `ω - κ(P)` over `S^ω`.
    #[serde(serialize_with = "ser_ratio")]
    pub lhs: BigRational,
    /// `sum_P (1 - (1 - ρ_P)^ω)`.
    #[serde(serialize_with = "ser_ratio")]
    pub rhs: BigRational,
    pub pass: bool,
}

/// Compares the exhaustive mean number of distinct residues in an
/// `ω`-tuple with `sum_P (1 - (1 - ρ_P)^ω)`, as exact rationals.
pub fn mean_distinct_identity(s: &PointSet, f: &Poly, omega: usize, budget: u128) -> Result<MeanIdentity> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    let n = s.len();
    let total = tuple_count(n, omega, budget)?;
    let ids = residue_classes(s.points(), f)?;
    let classes = ids.iter().max().map_or(0, |m| m + 1);
    let distinct_sum: u128 = (0..total)
        .into_par_iter()
        .map(|k| {
            let mut seen = vec![false; classes];
            let mut count = 0u128;
            for i in decode_tuple(k, n, omega) {
                if !seen[ids[i]] {
                    seen[ids[i]] = true;
                    count += 1;
                }
            }
            count
        })
        .sum();
    let lhs = BigRational::new(BigInt::from(distinct_sum), BigInt::from(total));

    let mut sizes = vec![0u64; classes];
    for &i in &ids {
        sizes[i] += 1;
    }
    let one = BigRational::one();
    let rhs = sizes.iter().fold(BigRational::zero(), |acc, &c| {
        let rho = BigRational::new(c.into(), (n as u64).into());
        acc + (&one - (&one - rho).pow(omega as u32))
    });
    Ok(MeanIdentity {
        omega,
        tuples_total: total,
        pass: lhs == rhs,
        lhs,
        rhs,
    })
}

/// Monomials of total degree `<= d`: by degree `k`, then `X^k, X^{k-1}Y, ..., Y^k`.
pub fn monomials_upto(d: u32) -> Vec<(u32, u32)> {
    (0..=d)
        .flat_map(|k| (0..=k).map(move |j| (k - j, j)))
        .collect()
}

/// `r(d) = d^2 + 1`.
pub fn r_of(d: u32) -> u64 {
    d as u64 * d as u64 + 1
}

/// `n(d) = (d+1)(d+2)/2`.
pub fn n_of(d: u32) -> u64 {
    (d as u64 + 1) * (d as u64 + 2) / 2
}

/// Row `k` holds the monomials of degree `<= d` evaluated at point `k`.
pub fn monomial_matrix(points: &[Point], d: u32) -> PolyMatrix {
    let mons = monomials_upto(d);
    points
        .iter()
        .map(|(x, y)| {
            let xs: Vec<Poly> = (0..=d).map(|e| x.pow(e)).collect();
            let ys: Vec<Poly> = (0..=d).map(|e| y.pow(e)).collect();
            mons.iter().map(|&(i, j)| &xs[i as usize] * &ys[j as usize]).collect()
        })
        .collect()
}

/// A nonzero form `G` of degree `<= d` through all the points, with
/// polynomial coefficients of trivial content.
pub fn interpolate_form(field: &Field, points: &[Point], d: u32) -> Result<BivarPoly> {
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != points.len() {
        return Err(Error::InvalidArgument("interpolation points must be distinct".into()));
    }
    let mons = monomials_upto(d);
    let a = monomial_matrix(points, d);
    let g = kernel_vector(&a, mons.len(), field).ok_or(Error::FullRank { degree: d })?;
    Ok(BivarPoly::from_terms(field, mons.into_iter().zip(g)))
}

/// `sum_i g_i F_i`.
pub fn w_combination(w: &WSet, g: &[Poly]) -> BivarPoly {
    w.forms
        .iter()
        .zip(g)
        .fold(BivarPoly::zero(w.field()), |acc, (form, c)| &acc + &form.scale(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WCurveMax {
    pub max: usize,
    pub subsets_examined: u128,
    /// Every `(ω-1)`-subset was examined, so `max` is exact for that family.
    pub exhausted: bool,
}

/// Largest number of points of `S` on one `W`-curve through an
/// `(ω-1)`-subset of `S`. A lower bound for the incidence constant.
pub fn max_points_on_wcurve(w: &WSet, s: &PointSet, budget: u128) -> Result<WCurveMax> {
    let k = w.omega() - 1;
    let n = s.len();
    if n <= k {
        return Ok(WCurveMax { max: n, subsets_examined: 0, exhausted: true });
    }
    let required: u128 = binomial(n as u128, k as u128);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let pts = s.points();
    let field = w.field();
    let subsets = combinations(n, k);
    let best = subsets
        .par_iter()
        .map(|sub| {
            let rows: PolyMatrix = sub
                .iter()
                .map(|&i| w.forms.iter().map(|form| form.evaluate(&pts[i].0, &pts[i].1)).collect())
                .collect();
            let g = kernel_vector(&rows, w.omega(), field).expect("fewer rows than columns");
            let curve = w_combination(w, &g);
            pts.iter().filter(|(x, y)| curve.evaluate(x, y).is_zero()).count()
        })
        .max()
        .unwrap_or(0);
    Ok(WCurveMax {
        max: best,
        subsets_examined: required,
        exhausted: true,
    })
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
