//! Weierstrass pairs `E_{a,b}` modulo `f`: isomorphism `(a, b) ~ (at^4, bt^6)`,
//! census counts over boxes, and the small-multiplier reduction of the
//! congruence `(X + X_0)^3 = λ(X_0 + Y)^2 (mod f)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ff::{Field, Interval, Poly, ResidueRing, MAX_TABLE_ORDER};
use crate::linalg::kernel_vector_fq;

/// `(a, b)` with `4a^3 + 27b^2 != 0`, read literally: in characteristic 2
/// this only asks `b != 0`, in characteristic 3 only `a != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ECPair {
    pub a: Poly,
    pub b: Poly,
    /// Set in characteristic 2 or 3, where the literal test is degenerate.
    pub char_warning: bool,
}

impl ECPair {
    pub fn new(a: Poly, b: Poly) -> Result<ECPair> {
        let field = a.field().clone();
        let disc = &a.pow(3).scale(field.from_int(4)) + &b.pow(2).scale(field.from_int(27));
        if disc.is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(ECPair {
            a,
            b,
            char_warning: matches!(field.p(), 2 | 3),
        })
    }

    pub fn discriminant(&self) -> Poly {
        let field = self.a.field();
        &self.a.pow(3).scale(field.from_int(4)) + &self.b.pow(2).scale(field.from_int(27))
    }
}

fn ring(f: &Poly) -> Result<ResidueRing> {
    ResidueRing::new(f)
}

/// `a^3 d^2 = c^3 b^2 (mod f)`.
pub fn invariant_congruent(a: &Poly, b: &Poly, c: &Poly, d: &Poly, f: &Poly) -> Result<bool> {
    let r = ring(f)?;
    let lhs = r.mul(&r.pow_u64(a, 3), &r.pow_u64(d, 2));
    let rhs = r.mul(&r.pow_u64(c, 3), &r.pow_u64(b, 2));
    Ok(r.eq(&lhs, &rhs))
}

fn is_witness(r: &ResidueRing, a: &Poly, b: &Poly, c: &Poly, d: &Poly, t: &Poly) -> bool {
    !r.is_zero(t) && r.eq(&r.mul(a, &r.pow_u64(t, 4)), c) && r.eq(&r.mul(b, &r.pow_u64(t, 6)), d)
}

/// A unit `t` with `at^4 = c` and `bt^6 = d (mod f)`, if one exists.
///
/// With `a, b, c, d` all units, `t^2 = da/(bc)` forces `t` up to sign and
/// both signs give the same `t^4, t^6`, so one square root decides. Other
/// zero patterns are settled by search over the residue field.
pub fn iso_witness(a: &Poly, b: &Poly, c: &Poly, d: &Poly, f: &Poly) -> Result<Option<Poly>> {
    let r = ring(f)?;
    let [a, b, c, d] = [a, b, c, d].map(|x| r.reduce(x));
    let zeros = [&a, &b, &c, &d].map(|x| x.is_zero());
    if zeros == [false; 4] {
        let ba = r.inv(&r.mul(&b, &c)).expect("unit");
        let u = r.mul(&r.mul(&d, &a), &ba);
        return Ok(r.sqrt(&u).filter(|t| is_witness(&r, &a, &b, &c, &d, t)));
    }
    if zeros[0] != zeros[2] || zeros[1] != zeros[3] {
        return Ok(None);
    }
    if zeros == [true; 4] {
        return Ok(Some(Poly::one(r.field())));
    }
    let size = r.size_u64().filter(|&n| n <= MAX_TABLE_ORDER).ok_or_else(|| Error::ModulusTooLarge {
        norm: r.size().to_string(),
        limit: MAX_TABLE_ORDER,
    })?;
    Ok((1..size)
        .into_par_iter()
        .map(|k| r.element(k))
        .find_first(|t| is_witness(&r, &a, &b, &c, &d, t)))
}

/// Exhaustive search over all units; the reference for [`iso_witness`].
pub fn iso_witness_naive(a: &Poly, b: &Poly, c: &Poly, d: &Poly, f: &Poly) -> Result<Option<Poly>> {
    let r = ring(f)?;
    let size = r.size_u64().ok_or(Error::ModulusTooLarge {
        norm: r.size().to_string(),
        limit: u64::MAX,
    })?;
    Ok((1..size).map(|k| r.element(k)).find(|t| is_witness(&r, a, b, c, d, t)))
}

/// Multiplicities of `g(x) mod f` over `x` in `I`.
fn residue_histogram(i: &Interval, r: &ResidueRing, g: impl Fn(&Poly) -> Poly + Sync) -> HashMap<Poly, u64> {
    (0..i.size())
        .into_par_iter()
        .fold(HashMap::new, |mut h: HashMap<Poly, u64>, k| {
            *h.entry(r.reduce(&g(&i.element(k)))).or_insert(0) += 1;
            h
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// `N_λ(I^2) = #{(a, b) in I^2 : a^3 = λ b^2 (mod f)}`, by matching the
/// residues of `a^3` against those of `λ b^2`.
pub fn count_n_lambda(i: &Interval, lambda: &Poly, f: &Poly) -> Result<u64> {
    let r = ring(f)?;
    let cubes = residue_histogram(i, &r, |a| r.pow_u64(a, 3));
    let lam = r.reduce(lambda);
    let squares = residue_histogram(i, &r, |b| r.mul(&lam, &r.mul(b, b)));
    Ok(cubes
        .iter()
        .map(|(k, &n)| n * squares.get(k).copied().unwrap_or(0))
        .sum())
}

/// Double loop over `I^2`.
pub fn count_n_lambda_naive(i: &Interval, lambda: &Poly, f: &Poly) -> Result<u64> {
    let r = ring(f)?;
    let mut n = 0;
    for a in i.iter() {
        let a3 = r.pow_u64(&a, 3);
        for b in i.iter() {
            if r.eq(&a3, &r.mul(lambda, &r.mul(&b, &b))) {
                n += 1;
            }
        }
    }
    Ok(n)
}

/// `(a, b) -> [a^3 : b^2]` in `P^1(F_q[T]/f)`, or `None` when both vanish.
fn projective_class(r: &ResidueRing, a: &Poly, b: &Poly) -> Option<Option<Poly>> {
    let a3 = r.pow_u64(a, 3);
    let b2 = r.mul(b, b);
    if b2.is_zero() {
        return if a3.is_zero() { None } else { Some(None) };
    }
    Some(Some(r.mul(&a3, &r.inv(&b2).expect("unit"))))
}

/// `N(I^2)`: quadruples `((a,b),(c,d))` in `I^4` with `a^3 d^2 = c^3 b^2 (mod f)`.
///
/// Pairs are bucketed by `[a^3 : b^2]`; pairs with `a = b = 0 (mod f)`
/// match everything, so `N = sum cnt^2 + 2|Z||I|^2 - |Z|^2`.
pub fn count_n(i: &Interval, f: &Poly) -> Result<u64> {
    let r = ring(f)?;
    let n = i.size();
    let buckets = (0..n * n)
        .into_par_iter()
        .fold(HashMap::new, |mut h: HashMap<Option<Option<Poly>>, u64>, k| {
            let (a, b) = (i.element(k / n), i.element(k % n));
            *h.entry(projective_class(&r, &a, &b)).or_insert(0) += 1;
            h
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let z = buckets.get(&None).copied().unwrap_or(0);
    let pairs = n * n;
    let matched: u64 = buckets
        .iter()
        .filter(|(k, _)| k.is_some())
        .map(|(_, &c)| c * c)
        .sum();
    Ok(matched + 2 * z * pairs - z * z)
}

/// Quadruple loop over `I^4`.
pub fn count_n_naive(i: &Interval, f: &Poly) -> Result<u64> {
    let r = ring(f)?;
    let pairs: Vec<(Poly, Poly)> = i
        .iter()
        .flat_map(|a| i.iter().map(move |b| (a.clone(), b)))
        .map(|(a, b)| (r.pow_u64(&a, 3), r.mul(&b, &b)))
        .collect();
    Ok(pairs
        .par_iter()
        .map(|(a3, b2)| {
            pairs
                .iter()
                .filter(|(c3, d2)| r.eq(&r.mul(a3, d2), &r.mul(c3, b2)))
                .count() as u64
        })
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumIdentity {
    /// `sum_λ N_λ(I^2)` over all residues `λ`.
    pub lhs: u64,
    pub unit_b: u64,
    pub both_divisible: u64,
    /// `#{f ∤ b} + |f|·#{f | a, f | b}`.
    pub rhs: u64,
    pub pass: bool,
}

pub fn lambda_sum_identity(i: &Interval, f: &Poly) -> Result<SumIdentity> {
    let r = ring(f)?;
    let size = r.size_u64().filter(|&n| n <= MAX_TABLE_ORDER).ok_or_else(|| Error::ModulusTooLarge {
        norm: r.size().to_string(),
        limit: MAX_TABLE_ORDER,
    })?;
    let mut lhs = 0;
    for k in 0..size {
        lhs += count_n_lambda(i, &r.element(k), f)?;
    }
    let (mut unit_b, mut both) = (0, 0);
    for a in i.iter() {
        let a0 = r.is_zero(&a);
        for b in i.iter() {
            let b0 = r.is_zero(&b);
            unit_b += !b0 as u64;
            both += (a0 && b0) as u64;
        }
    }
    let rhs = unit_b + size * both;
    Ok(SumIdentity {
        lhs,
        unit_b,
        both_divisible: both,
        rhs,
        pass: lhs == rhs,
    })
}

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_rows<S: Serializer>(rows: &[(Poly, u64)], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|(l, c)| (l.to_string(), c)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scan19 {
    #[serde(rename = "size_I")]
    pub size_i: u64,
    #[serde(serialize_with = "ser_display")]
    pub norm_f: BigUint,
    /// `(λ mod f, N_λ)` for every `λ` met by a pair with `b` a unit.
    #[serde(serialize_with = "ser_rows")]
    pub rows: Vec<(Poly, u64)>,
    pub max_count: u64,
    /// `max N_λ / |I|^{1/3}`.
    pub ratio_to_cuberoot: f64,
}

/// `N_λ(I^2)` for all realised `λ`, under `|I| <= |f|^{1/9}` unless `force`.
pub fn theorem19_scan(i: &Interval, f: &Poly, force: bool) -> Result<Scan19> {
    let r = ring(f)?;
    let m = r.degree();
    let box_exp = i.bound() + 1;
    if !force && 9 * box_exp as usize > m {
        return Err(Error::BoxTooLarge {
            box_exp,
            modulus_degree: m,
        });
    }
    let mut buckets: BTreeMap<Poly, u64> = BTreeMap::new();
    let mut zero_pairs = 0u64;
    let n = i.size();
    for a in i.iter() {
        let a3 = r.pow_u64(&a, 3);
        for b in i.iter() {
            let b2 = r.mul(&b, &b);
            match r.inv(&b2) {
                Some(inv) => *buckets.entry(r.mul(&a3, &inv)).or_insert(0) += 1,
                None if a3.is_zero() => zero_pairs += 1,
                None => {}
            }
        }
    }
    let rows: Vec<(Poly, u64)> = buckets.into_iter().map(|(l, c)| (l, c + zero_pairs)).collect();
    let max_count = rows.iter().map(|r| r.1).max().unwrap_or(0);
    Ok(Scan19 {
        size_i: n,
        norm_f: r.size().clone(),
        ratio_to_cuberoot: max_count as f64 / (n as f64).cbrt(),
        rows,
        max_count,
    })
}

/// `x` with `x^2, x^3` both in `I`; each gives `a^3 = b^2` exactly.
pub fn extremal_witnesses(i: &Interval) -> Result<Vec<Poly>> {
    if !i.base().is_zero() {
        return Err(Error::NonzeroBase);
    }
    let half = Interval::centered(i.field(), i.bound() / 2)?;
    Ok(half
        .iter()
        .filter(|x| i.contains(&x.pow(2)) && i.contains(&x.pow(3)))
        .collect())
}

/// `q^{floor(n/3) + 1}`, counted from the witnesses.
pub fn extremal_count(i: &Interval) -> Result<u64> {
    Ok(extremal_witnesses(i)?.len() as u64)
}

/// Find `t != 0 (mod f)` with `{X_i t}_f < q^{τ_i}` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PigeonInstance {
    pub f: Poly,
    pub xs: Vec<Poly>,
    pub taus: Vec<u32>,
}

impl PigeonInstance {
    pub fn new(f: Poly, xs: Vec<Poly>, taus: Vec<u32>) -> Result<PigeonInstance> {
        if xs.len() != taus.len() || xs.is_empty() {
            return Err(Error::InvalidArgument("need one exponent per X_i".into()));
        }
        if !f.is_irreducible()? {
            return Err(Error::NotIrreducible(f.to_string()));
        }
        let m = f.degree().expect("non-constant") as u32;
        if taus.iter().any(|&t| t > m) {
            return Err(Error::InvalidArgument(format!("exponents must lie in [0, {m}]")));
        }
        Ok(PigeonInstance { f, xs, taus })
    }

    pub fn m(&self) -> usize {
        self.f.degree().expect("non-constant")
    }

    /// `t` is nonzero mod `f` and meets every distance bound.
    pub fn verify(&self, t: &Poly) -> bool {
        let Ok(tr) = t.rem(&self.f) else { return false };
        !tr.is_zero()
            && self.xs.iter().zip(&self.taus).all(|(x, &tau)| {
                (x * &tr)
                    .rem(&self.f)
                    .expect("same field")
                    .degree()
                    .is_none_or(|d| d < tau as usize)
            })
    }
}

/// A solution, if any exists, with `deg t < m`.
///
/// The bounds say the coefficients of degree `>= τ_i` of `X_i t rem f`
/// vanish: homogeneous `F_q`-linear conditions on the `m` coefficients of
/// `t`. A nonzero kernel vector (first free coordinate 1) is a solution and
/// a trivial kernel means none exists.
pub fn solve_pigeonhole(inst: &PigeonInstance) -> Result<Option<Poly>> {
    let f = &inst.f;
    let field = f.field();
    let m = inst.m();
    let mut rows = Vec::new();
    for (x, &tau) in inst.xs.iter().zip(&inst.taus) {
        let images: Vec<Poly> = (0..m)
            .map(|k| (x * &Poly::monomial(field, 1, k)).rem(f))
            .collect::<Result<_>>()?;
        for j in tau as usize..m {
            rows.push(images.iter().map(|p| p.coeff(j)).collect::<Vec<u32>>());
        }
    }
    Ok(kernel_vector_fq(&rows, m, field).map(|v| Poly::from_coeffs(field, v).expect("field elements")))
}

/// The multiplier guaranteed when `sum τ_i > (s - 1) m`.
pub fn pigeonhole_multiplier(inst: &PigeonInstance) -> Result<Poly> {
    let s = inst.xs.len() as u64;
    let sum: u64 = inst.taus.iter().map(|&t| t as u64).sum();
    let needed = (s - 1) * inst.m() as u64;
    if sum <= needed {
        return Err(Error::PigeonholePrecondition { sum, needed });
    }
    Ok(solve_pigeonhole(inst)?.expect("fewer equations than unknowns"))
}

/// Exhaustive search over all nonzero `t` with `deg t < m`.
pub fn pigeonhole_oracle(inst: &PigeonInstance) -> Option<Poly> {
    let field = inst.f.field();
    let count = (field.q() as u64).pow(inst.m() as u32);
    (1..count).map(|k| Poly::from_index(field, k)).find(|t| inst.verify(t))
}

/// Exponents `τ_1..τ_5` bounding `|f_i| < q^{τ_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauPlan {
    pub taus: [u32; 5],
    /// `|I| = q^{n+1}`.
    pub n: u32,
    /// `T = q^{t_exp}`.
    pub t_exp: u32,
}

impl TauPlan {
    /// `T_1 = T^4|I|^2`, `T_2 = T_4 = |f|/(T|I|)`, `T_3 = T_5 = |f|/T`, as
    /// powers of `q` made one larger since the bounds are non-strict, and
    /// clamped to `[0, m]`.
    pub fn standard(m: u32, n: u32, t_exp: u32) -> TauPlan {
        let s = (n + 1) as i64;
        let (m_, t) = (m as i64, t_exp as i64);
        let raw = [4 * t + 2 * s + 1, m_ - t - s + 1, m_ - t + 1, m_ - t - s + 1, m_ - t + 1];
        TauPlan {
            taus: raw.map(|v| v.clamp(0, m_) as u32),
            n,
            t_exp,
        }
    }

    /// `t_exp = max(0, floor((m - 4(n+1)) / 5))`.
    pub fn default_for(m: u32, n: u32) -> TauPlan {
        let t = (m as i64 - 4 * (n as i64 + 1)).div_euclid(5).max(0) as u32;
        TauPlan::standard(m, n, t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallModel {
    #[serde(serialize_with = "ser_display")]
    pub lambda: Poly,
    #[serde(serialize_with = "ser_display")]
    pub x0: Poly,
    #[serde(serialize_with = "ser_display")]
    pub f: Poly,
    #[serde(serialize_with = "ser_display")]
    pub t: Poly,
    /// `(1, 3X_0, 3X_0^2, -λ, -2λX_0, X_0^3 - λX_0^2)`.
    #[serde(serialize_with = "ser_polys")]
    pub xs: Vec<Poly>,
    /// `f_i = X_i t rem f`.
    #[serde(serialize_with = "ser_polys")]
    pub fs: Vec<Poly>,
    pub plan: TauPlan,
    /// Bound on `|Z|` in `f_1X^3 + f_2X^2 + f_3X + f_4Y^2 + f_5Y + f_6 = f·Z`
    /// for `X, Y` in `{deg <= n}`.
    #[serde(serialize_with = "ser_display")]
    pub z_bound: BigUint,
}

fn ser_polys<S: Serializer>(v: &[Poly], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|p| p.to_string()))
}

impl SmallModel {
    /// `(X + X_0)^3 = λ(X_0 + Y)^2 (mod f)`.
    pub fn original_holds(&self, x: &Poly, y: &Poly) -> bool {
        let lhs = (x + &self.x0).pow(3);
        let rhs = &self.lambda * &(&self.x0 + y).pow(2);
        (&lhs - &rhs).rem(&self.f).expect("same field").is_zero()
    }

    pub fn model_value(&self, x: &Poly, y: &Poly) -> Poly {
        let mons = [x.pow(3), x.pow(2), x.clone(), y.pow(2), y.clone(), Poly::one(x.field())];
        self.fs
            .iter()
            .zip(&mons)
            .fold(Poly::zero(x.field()), |acc, (c, m)| &acc + &(c * m))
    }

    pub fn model_holds(&self, x: &Poly, y: &Poly) -> bool {
        self.model_value(x, y).rem(&self.f).expect("same field").is_zero()
    }
}

/// Multiplies the expanded congruence by a pigeonhole `t` so the five
/// variable coefficients become small.
pub fn small_coeff_model(lambda: &Poly, x0: &Poly, f: &Poly, plan: &TauPlan) -> Result<SmallModel> {
    let field: Field = f.field().clone();
    let c = |k: i64| Poly::constant(&field, field.from_int(k));
    let xs = vec![
        Poly::one(&field),
        &c(3) * x0,
        &c(3) * &x0.pow(2),
        -lambda,
        &(&c(-2) * lambda) * x0,
        &x0.pow(3) - &(lambda * &x0.pow(2)),
    ];
    let inst = PigeonInstance::new(f.clone(), xs[..5].to_vec(), plan.taus.to_vec())?;
    let t = pigeonhole_multiplier(&inst)?;
    let fs: Vec<Poly> = xs
        .iter()
        .map(|x| (x * &t).rem(f))
        .collect::<Result<_>>()?;

    let n = plan.n as usize;
    let m = inst.m();
    let powers = [3 * n, 2 * n, n, 2 * n, n, 0];
    let top = fs
        .iter()
        .zip(powers)
        .filter_map(|(p, k)| p.degree().map(|d| d + k))
        .max();
    let q = BigUint::from(field.q());
    let z_bound = match top {
        Some(d) if d >= m => q.pow((d - m) as u32),
        _ => BigUint::zero(),
    };
    Ok(SmallModel {
        lambda: lambda.clone(),
        x0: x0.clone(),
        f: f.clone(),
        t,
        xs,
        fs,
        plan: plan.clone(),
        z_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::random_irreducible;

    fn gf(q: u32) -> Field {
        Field::with_order(q).unwrap()
    }

    fn p(field: &Field, ints: &[i64]) -> Poly {
        Poly::from_ints(field, ints)
    }

    #[test]
    fn discriminant_gate() {
        let f = gf(5);
        assert!(ECPair::new(p(&f, &[1]), p(&f, &[1])).is_ok());
        // a = -3, b = 2: 4·(-27) + 27·4 = 0
        assert_eq!(ECPair::new(p(&f, &[-3]), p(&f, &[2])), Err(Error::SingularCurve));
        let e = ECPair::new(p(&gf(2), &[0]), p(&gf(2), &[1])).unwrap();
        assert!(e.char_warning);
    }

    #[test]
    fn congruence_examples() {
        let f2 = gf(2);
        let m = p(&f2, &[1, 1, 1]);
        let t = Poly::t(&f2);
        let one = Poly::one(&f2);
        let c = t.pow(4).rem(&m).unwrap();
        let d = t.pow(6).rem(&m).unwrap();
        assert!(invariant_congruent(&one, &one, &c, &d, &m).unwrap());
        assert!(!invariant_congruent(&one, &one, &one, &t, &m).unwrap());
        let zero = Poly::zero(&f2);
        assert!(invariant_congruent(&zero, &one, &zero, &t, &m).unwrap());
    }

    #[test]
    fn witness_examples() {
        let f3 = gf(3);
        let m = p(&f3, &[2, 2, 1]);
        let t = Poly::t(&f3);
        let one = Poly::one(&f3);
        let c = t.pow(4).rem(&m).unwrap();
        let d = t.pow(6).rem(&m).unwrap();
        let w = iso_witness(&one, &one, &c, &d, &m).unwrap().unwrap();
        let r = ResidueRing::new(&m).unwrap();
        assert!(is_witness(&r, &one, &one, &c, &d, &w));
    }

    #[test]
    fn twist_satisfies_invariant_but_is_not_isomorphic() {
        // (c, d) = (a u^2, b u^3) with u a non-square satisfies a^3 d^2 = c^3 b^2
        let f = gf(3);
        let m = p(&f, &[2, 2, 1]);
        let r = ResidueRing::new(&m).unwrap();
        let u = r.elements().skip(1).find(|x| !r.is_square(x)).unwrap();
        let (a, b) = (p(&f, &[1]), p(&f, &[0, 1]));
        let c = r.mul(&a, &r.mul(&u, &u));
        let d = r.mul(&b, &r.pow_u64(&u, 3));
        assert!(invariant_congruent(&a, &b, &c, &d, &m).unwrap());
        assert_eq!(iso_witness(&a, &b, &c, &d, &m).unwrap(), None);
        assert_eq!(iso_witness_naive(&a, &b, &c, &d, &m).unwrap(), None);
    }

    #[test]
    fn witness_agrees_with_search() {
        let f = gf(3);
        let m = p(&f, &[1, 2, 0, 1]);
        let r = ResidueRing::new(&m).unwrap();
        let elems: Vec<Poly> = r.elements().collect();
        for (k, a) in elems.iter().enumerate().step_by(5) {
            for b in elems.iter().skip(k % 3).step_by(4) {
                for c in elems.iter().step_by(7) {
                    for d in elems.iter().skip(1).step_by(6) {
                        let fast = iso_witness(a, b, c, d, &m).unwrap();
                        let slow = iso_witness_naive(a, b, c, d, &m).unwrap();
                        assert_eq!(fast.is_some(), slow.is_some(), "{a} {b} {c} {d}");
                        if let Some(t) = fast {
                            assert!(is_witness(&r, a, b, c, d, &t));
                            assert!(invariant_congruent(a, b, c, d, &m).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn n_lambda_examples() {
        let f = gf(2);
        let i = Interval::centered(&f, 0).unwrap();
        let t = Poly::t(&f);
        assert_eq!(count_n_lambda(&i, &Poly::one(&f), &t).unwrap(), 2);
        assert_eq!(count_n_lambda(&i, &Poly::zero(&f), &t).unwrap(), 2);
    }

    #[test]
    fn census_methods_agree() {
        for q in [2, 3] {
            let f = gf(q);
            for deg in 1..=2 {
                for m in crate::ff::monic_irreducibles(&f, deg) {
                    for n in 0..=1 {
                        let i = Interval::centered(&f, n).unwrap();
                        let fast = count_n(&i, &m).unwrap();
                        assert_eq!(fast, count_n_naive(&i, &m).unwrap());
                        assert!(fast >= i.size() * i.size());
                        for l in 0..q as u64 {
                            let lam = Poly::from_index(&f, l);
                            assert_eq!(
                                count_n_lambda(&i, &lam, &m).unwrap(),
                                count_n_lambda_naive(&i, &lam, &m).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sum_identity_small() {
        let f = gf(3);
        for m in crate::ff::monic_irreducibles(&f, 2) {
            for n in 0..=2 {
                let i = Interval::centered(&f, n).unwrap();
                assert!(lambda_sum_identity(&i, &m).unwrap().pass);
            }
        }
    }

    #[test]
    fn scan19_and_extremal() {
        let f = gf(2);
        let i = Interval::centered(&f, 1).unwrap();
        let m = random_irreducible(&f, 18, 3).unwrap();
        let scan = theorem19_scan(&i, &m, false).unwrap();
        let ext = extremal_count(&i).unwrap();
        let one = scan.rows.iter().find(|(l, _)| l.is_one()).unwrap().1;
        assert!(one >= ext);
        let small = random_irreducible(&f, 17, 3).unwrap();
        assert!(matches!(theorem19_scan(&i, &small, false), Err(Error::BoxTooLarge { .. })));
        assert!(theorem19_scan(&i, &small, true).is_ok());

        for (n, want) in [(6, 8), (0, 2), (2, 2)] {
            assert_eq!(extremal_count(&Interval::centered(&f, n).unwrap()).unwrap(), want);
        }
        let shifted = Interval::new(Poly::one(&f), 2).unwrap();
        assert_eq!(extremal_count(&shifted), Err(Error::NonzeroBase));
    }

    #[test]
    fn pigeonhole_examples() {
        let f = gf(2);
        let m = p(&f, &[1, 1, 1]);
        let t = Poly::t(&f);
        let inst = PigeonInstance::new(m.clone(), vec![t.clone(), t.clone()], vec![2, 1]).unwrap();
        let sol = pigeonhole_multiplier(&inst).unwrap();
        assert_eq!(sol, p(&f, &[1, 1]));
        assert!(inst.verify(&sol));

        let zeros = PigeonInstance::new(m.clone(), vec![m.clone(), Poly::zero(&f)], vec![0, 0]).unwrap();
        assert!(matches!(pigeonhole_multiplier(&zeros), Err(Error::PigeonholePrecondition { .. })));
        assert_eq!(solve_pigeonhole(&zeros).unwrap(), Some(Poly::one(&f)));

        let single = PigeonInstance::new(m.clone(), vec![t.clone()], vec![2]).unwrap();
        assert!(single.verify(&pigeonhole_multiplier(&single).unwrap()));
    }

    #[test]
    fn pigeonhole_matches_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = if rng.gen_bool(0.5) { 2 } else { 3 };
            let f = gf(q);
            let m = rng.gen_range(1..=4);
            let modulus = random_irreducible(&f, m, rng.gen()).unwrap();
            let s = rng.gen_range(1..=3);
            let xs = (0..s)
                .map(|_| Poly::from_index(&f, rng.gen_range(0..(q as u64).pow(m as u32 + 1))))
                .collect();
            let taus = (0..s).map(|_| rng.gen_range(0..=m as u32)).collect();
            let inst = PigeonInstance::new(modulus, xs, taus).unwrap();
            let solved = solve_pigeonhole(&inst).unwrap();
            assert_eq!(solved.is_some(), pigeonhole_oracle(&inst).is_some());
            if let Some(t) = solved {
                assert!(inst.verify(&t));
            }
        }
    }

    #[test]
    fn small_model_zero_base() {
        let f = gf(2);
        let m = p(&f, &[1, 0, 1, 0, 0, 1]);
        let one = Poly::one(&f);
        let zero = Poly::zero(&f);
        let model = small_coeff_model(&one, &zero, &m, &TauPlan::default_for(5, 0)).unwrap();
        assert!(model.t.is_one());
        let expected = [1, 0, 0, 1, 0, 0].map(|c| Poly::constant(&f, c));
        assert_eq!(model.xs, expected);
        assert_eq!(model.fs, expected);
    }

    #[test]
    fn small_model_equivalence_exhaustive() {
        let f = gf(2);
        for n in 0..=2u32 {
            let m = random_irreducible(&f, 9 * (n as usize + 1), 11).unwrap();
            let plan = TauPlan::default_for(9 * (n + 1), n);
            let i = Interval::centered(&f, n).unwrap();
            for (lam, x0) in [(1u64, 0u64), (5, 3), (2, 7)] {
                let model = small_coeff_model(&Poly::from_index(&f, lam), &Poly::from_index(&f, x0), &m, &plan).unwrap();
                for (k, (x, tau)) in model.xs.iter().zip(plan.taus).enumerate() {
                    let fk = &model.fs[k];
                    assert_eq!(*fk, (x * &model.t).rem(&m).unwrap());
                    assert!(fk.degree().is_none_or(|d| d < tau as usize));
                }
                for x in i.iter() {
                    for y in i.iter() {
                        assert_eq!(model.original_holds(&x, &y), model.model_holds(&x, &y));
                    }
                }
            }
        }
    }
}
