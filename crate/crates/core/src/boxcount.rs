//! Zeros of a plane curve in a box `I_x × I_y`, the growth exponent of
//! their count, and their distribution modulo `f`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::curves::{eval_univariate, naive_zeros, BivarPoly};
use crate::error::{Error, Result};
use crate::ff::upoly;
use crate::ff::{monic_irreducibles, Field, Interval, Poly, ResidueField};

pub type Point = (Poly, Poly);

/// `I_x × I_y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneBox {
    pub x: Interval,
    pub y: Interval,
}

impl PlaneBox {
    pub fn new(x: Interval, y: Interval) -> Result<PlaneBox> {
        if x.field() != y.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(PlaneBox { x, y })
    }

    pub fn square(i: Interval) -> PlaneBox {
        PlaneBox { x: i.clone(), y: i }
    }

    /// `{deg <= n}^2`.
    pub fn centered(field: &Field, n: u32) -> Result<PlaneBox> {
        Ok(PlaneBox::square(Interval::centered(field, n)?))
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.x.contains(&p.0) && self.y.contains(&p.1)
    }
}

/// A finite set of points, sorted canonically and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    source: Option<(BivarPoly, PlaneBox)>,
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = Point>) -> PointSet {
        let mut points: Vec<Point> = points.into_iter().collect();
        points.sort();
        points.dedup();
        PointSet { points, source: None }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The curve and box this set was enumerated from, if any.
    pub fn source(&self) -> Option<&(BivarPoly, PlaneBox)> {
        self.source.as_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStrategy {
    /// Every `(X, Y)` in the box.
    Naive,
    /// Degree-class pruning, then per-`X` roots in `Y` through reductions
    /// modulo small irreducibles and CRT lifting.
    Crt,
}

pub fn enumerate_box_points(f: &BivarPoly, bx: &PlaneBox) -> Result<PointSet> {
    enumerate_box_points_with(f, bx, EnumStrategy::Crt)
}

pub fn enumerate_box_points_with(f: &BivarPoly, bx: &PlaneBox, strategy: EnumStrategy) -> Result<PointSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.field() != bx.field() {
        return Err(Error::FieldMismatch);
    }
    let points = match strategy {
        EnumStrategy::Naive => naive_zeros(f, &bx.x, &bx.y),
        EnumStrategy::Crt => crt_zeros(f, bx),
    };
    let mut set = PointSet::new(points);
    set.source = Some((f.clone(), bx.clone()));
    Ok(set)
}

/// Degree of the members of one slice of an interval; `None` is the zero
/// polynomial.
type DegClass = Option<usize>;

fn degree_classes(iv: &Interval) -> Vec<DegClass> {
    match iv.fixed_degree() {
        Some(d) => vec![Some(d)],
        None => std::iter::once(None)
            .chain((0..=iv.bound() as usize).map(Some))
            .collect(),
    }
}

/// Whether some `X` of degree `e` and `Y` of degree `g` could satisfy
/// `F(X, Y) = 0`: the leading degree among the surviving terms must be
/// attained at least twice, or no term survives.
fn newton_feasible(terms: &[((u32, u32), usize)], e: DegClass, g: DegClass) -> bool {
    let mut best = None;
    let mut hits = 0;
    for &((i, j), dt) in terms {
        if (i > 0 && e.is_none()) || (j > 0 && g.is_none()) {
            continue;
        }
        let v = dt + i as usize * e.unwrap_or(0) + j as usize * g.unwrap_or(0);
        match best {
            Some(b) if v < b => {}
            Some(b) if v == b => hits += 1,
            _ => {
                best = Some(v);
                hits = 1;
            }
        }
    }
    best.is_none() || hits >= 2
}

/// Index ranges of the members of `iv` with degree class `e`. Raw ranges
/// index `F_q[T]` directly; otherwise they index the interval.
fn class_ranges(iv: &Interval, e: DegClass) -> (u64, u64, bool) {
    if iv.fixed_degree().is_some() {
        return (0, iv.size(), false);
    }
    let q = iv.field().q() as u64;
    match e {
        None => (0, 1, true),
        Some(d) => (q.pow(d as u32), q.pow(d as u32 + 1), true),
    }
}

struct AuxModulus {
    h: Poly,
    rf: ResidueField,
}

/// Small irreducibles for CRT: degree `k0` with `q^k0 >= 64`, continuing to
/// higher degrees until the total degree comfortably exceeds `need`.
fn aux_moduli(field: &Field, need: usize) -> Vec<AuxModulus> {
    let q = field.q() as u64;
    let mut k = 1;
    while q.pow(k as u32) < 64 {
        k += 1;
    }
    let target = 2 * (need + 1) + 4 * k;
    let mut out = Vec::new();
    let mut total = 0;
    while total < target {
        for h in monic_irreducibles(field, k) {
            let rf = ResidueField::new(&h).expect("irreducible by construction");
            out.push(AuxModulus { h, rf });
            total += k;
            if total >= target {
                break;
            }
        }
        k += 1;
    }
    out
}

fn crt_zeros(f: &BivarPoly, bx: &PlaneBox) -> Vec<Point> {
    let terms: Vec<((u32, u32), usize)> = f
        .terms()
        .iter()
        .map(|(&e, c)| (e, c.degree().expect("nonzero")))
        .collect();
    let y_classes = degree_classes(&bx.y);
    let ranges: Vec<(u64, u64, bool)> = degree_classes(&bx.x)
        .into_iter()
        .filter(|&e| y_classes.iter().any(|&g| newton_feasible(&terms, e, g)))
        .map(|e| class_ranges(&bx.x, e))
        .collect();
    let aux = aux_moduli(bx.field(), bx.y.max_degree());
    let field = bx.field();
    let aux = &aux;
    ranges
        .into_par_iter()
        .flat_map(|(lo, hi, raw)| {
            (lo..hi).into_par_iter().flat_map_iter(move |k| {
                let x = if raw { Poly::from_index(field, k) } else { bx.x.element(k) };
                let row = f.specialize_x(&x);
                roots_in_interval(&row, &bx.y, aux)
                    .into_iter()
                    .map(move |y| (x.clone(), y))
            })
        })
        .collect()
}

/// Roots `Y` in `iy` of `sum_j row[j] Y^j`.
fn roots_in_interval(row: &[Poly], iy: &Interval, aux: &[AuxModulus]) -> Vec<Poly> {
    let Some(top) = row.iter().rposition(|c| !c.is_zero()) else {
        return iy.iter().collect();
    };
    let row = &row[..=top];
    match top {
        0 => return Vec::new(),
        1 => {
            return match (-&row[0]).div_exact(&row[1]).expect("same field") {
                Some(y) if iy.contains(&y) => vec![y],
                _ => Vec::new(),
            };
        }
        _ => {}
    }
    // degrees of nonzero roots are slopes of the Newton polygon
    let degs: Vec<(usize, usize)> = row
        .iter()
        .enumerate()
        .filter_map(|(j, c)| c.degree().map(|d| (j, d)))
        .collect();
    let mut slopes = Vec::new();
    for (a, &(i, di)) in degs.iter().enumerate() {
        for &(j, dj) in &degs[a + 1..] {
            if di >= dj && (di - dj) % (j - i) == 0 {
                slopes.push((di - dj) / (j - i));
            }
        }
    }
    let bound = match iy.fixed_degree() {
        Some(d) if slopes.contains(&d) => d,
        Some(_) => return Vec::new(),
        None => slopes.into_iter().filter(|&s| s <= iy.bound() as usize).max().unwrap_or(0),
    };

    let mut residues: Vec<(&Poly, Vec<u32>, &ResidueField)> = Vec::new();
    let mut covered = 0;
    for m in aux {
        let mut codes: Vec<u32> = row.iter().map(|c| m.rf.encode(c)).collect();
        upoly::trim(&mut codes);
        if codes.is_empty() {
            continue;
        }
        let ar = m.rf.arith();
        if codes.len() > 1 && upoly::count_distinct_roots(ar, &codes) == 0 {
            return Vec::new();
        }
        let roots: Vec<u32> = (0..m.rf.order()).filter(|&y| upoly::eval(ar, &codes, y) == 0).collect();
        if roots.is_empty() {
            return Vec::new();
        }
        residues.push((&m.h, roots, &m.rf));
        covered += m.h.degree().expect("non-constant");
        if covered > bound {
            break;
        }
    }
    if covered <= bound {
        return iy.iter().filter(|y| eval_univariate(row, y).is_zero()).collect();
    }

    let field = iy.field();
    let mut cands = vec![Poly::zero(field)];
    let mut modulus = Poly::one(field);
    for (h, roots, rf) in residues {
        let minv = modulus.inverse_mod(h).expect("distinct irreducibles are coprime");
        let mut next = Vec::with_capacity(cands.len() * roots.len());
        for y in &cands {
            for &r in &roots {
                let r = rf.decode(r);
                let step = (&(&r - y) * &minv).rem(h).expect("same field");
                next.push(y + &(&modulus * &step));
            }
        }
        modulus = &modulus * h;
        cands = next;
    }
    cands
        .into_iter()
        .filter(|y| y.degree().is_none_or(|d| d <= bound))
        .filter(|y| iy.contains(y) && eval_univariate(row, y).is_zero())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub n: u32,
    pub size_i: u64,
    pub count: u64,
    /// `ln|S| / ln|I|`, or 0 when `|S| <= 1`.
    pub exponent: f64,
}

/// One row per `n`, on the square box `{deg <= n}^2`.
pub fn exponent_scan(f: &BivarPoly, ns: impl IntoIterator<Item = u32>) -> Result<Vec<ScanRow>> {
    let zero = Poly::zero(f.field());
    exponent_scan_based(f, &zero, &zero, ns)
}

/// As [`exponent_scan`] on `(X_0 + {deg <= n}) × (Y_0 + {deg <= n})`.
pub fn exponent_scan_based(
    f: &BivarPoly,
    base_x: &Poly,
    base_y: &Poly,
    ns: impl IntoIterator<Item = u32>,
) -> Result<Vec<ScanRow>> {
    ns.into_iter()
        .map(|n| {
            let bx = PlaneBox::new(Interval::new(base_x.clone(), n)?, Interval::new(base_y.clone(), n)?)?;
            let count = enumerate_box_points(f, &bx)?.len() as u64;
            let size_i = bx.x.size();
            Ok(ScanRow {
                n,
                size_i,
                count,
                exponent: exponent_of(count, size_i),
            })
        })
        .collect()
}

pub fn exponent_of(count: u64, size: u64) -> f64 {
    if count <= 1 {
        0.0
    } else {
        (count as f64).ln() / (size as f64).ln()
    }
}

/// Least-squares slope of `ln|S|` against `ln|I|`, over rows with `|S| >= 1`.
pub fn fitted_slope(rows: &[ScanRow]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.count >= 1)
        .map(|r| ((r.size_i as f64).ln(), (r.count as f64).ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// How a point set distributes over the residue plane modulo `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueProfile {
    pub modulus: Poly,
    /// Residue point (canonical remainders) to multiplicity.
    pub counts: BTreeMap<Point, u64>,
    pub total: u64,
    pub norm: BigUint,
}

impl ResidueProfile {
    pub fn distinct(&self) -> u64 {
        self.counts.len() as u64
    }

    pub fn rho(&self, p: &Point) -> BigRational {
        let c = self.counts.get(p).copied().unwrap_or(0);
        BigRational::new(c.into(), self.total.into())
    }

    /// `distinct / |f|`.
    pub fn alpha(&self) -> BigRational {
        BigRational::new(self.distinct().into(), BigInt::from(self.norm.clone()))
    }

    pub fn sum_rho(&self) -> BigRational {
        self.counts
            .values()
            .fold(BigRational::zero(), |acc, &c| acc + BigRational::new(c.into(), self.total.into()))
    }

    pub fn sum_rho_squared(&self) -> BigRational {
        let num: BigInt = self.counts.values().map(|&c| BigInt::from(c) * c).sum();
        BigRational::new(num, BigInt::from(self.total) * self.total)
    }

    /// `sum rho_P^2 >= 1/(alpha |f|)`.
    pub fn cauchy_holds(&self) -> bool {
        let rhs = BigRational::one() / (self.alpha() * BigRational::from_integer(self.norm.clone().into()));
        self.sum_rho_squared() >= rhs
    }
}

pub fn residue_stats(s: &PointSet, f: &Poly) -> Result<ResidueProfile> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if !f.is_irreducible()? {
        return Err(Error::NotIrreducible(f.to_string()));
    }
    let mut counts = BTreeMap::new();
    for (x, y) in s.points() {
        *counts.entry((x.rem(f)?, y.rem(f)?)).or_insert(0u64) += 1;
    }
    Ok(ResidueProfile {
        modulus: f.clone(),
        counts,
        total: s.len() as u64,
        norm: f.norm(),
    })
}
