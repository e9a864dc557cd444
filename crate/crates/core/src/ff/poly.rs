use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use super::gf::prime_factors;
use super::upoly;
use crate::error::{Error, Result};

/// An element of `F_q[T]`, stored as normalized coefficients (lowest degree
/// first, no trailing zeros).
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn constant(field: &Field, c: u32) -> Poly {
        Poly::monomial(field, c, 0)
    }

    /// `c·T^e`.
    pub fn monomial(field: &Field, c: u32, e: usize) -> Poly {
        assert!(c < field.q(), "coefficient {c} outside F_{}", field.q());
        if c == 0 {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0; e + 1];
        coeffs[e] = c;
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// The variable `T`.
    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn from_coeffs(field: &Field, mut coeffs: Vec<u32>) -> Result<Poly> {
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.q()) {
            return Err(Error::InvalidArgument(format!(
                "coefficient code {c} outside F_{}",
                field.q()
            )));
        }
        upoly::trim(&mut coeffs);
        Ok(Poly {
            field: field.clone(),
            coeffs,
        })
    }

    /// Coefficients given as integers, mapped into the prime subfield.
    pub fn from_ints(field: &Field, ints: &[i64]) -> Poly {
        let mut coeffs: Vec<u32> = ints.iter().map(|&c| field.from_int(c)).collect();
        upoly::trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub(crate) fn from_raw(field: &Field, mut coeffs: Vec<u32>) -> Poly {
        upoly::trim(&mut coeffs);
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// The polynomial whose coefficients are the base-`q` digits of `index`.
    /// Indices enumerate `F_q[T]` in canonical order: by degree, then by
    /// coefficients from the top down.
    pub fn from_index(field: &Field, mut index: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::new();
        while index > 0 {
            coeffs.push((index % q) as u32);
            index /= q;
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Inverse of [`Poly::from_index`]; `None` if the index overflows `u64`.
    pub fn index(&self) -> Option<u64> {
        let q = self.field.q() as u64;
        self.coeffs.iter().rev().try_fold(0u64, |acc, &c| {
            acc.checked_mul(q)?.checked_add(c as u64)
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, with `None` standing for the `-inf` degree of zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    /// `|X| = q^deg X`, with `|0| = 0`.
    pub fn norm(&self) -> BigUint {
        match self.degree() {
            None => BigUint::from(0u32),
            Some(d) => BigUint::from(self.field.q()).pow(d as u32),
        }
    }

    pub fn monic(&self) -> Poly {
        Poly::from_raw(&self.field, upoly::monic(self.field.arith(), &self.coeffs))
    }

    pub fn scale(&self, c: u32) -> Poly {
        Poly::from_raw(&self.field, upoly::scale(self.field.arith(), &self.coeffs, c))
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn check_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly::from_raw(
            &self.field,
            upoly::add(self.field.arith(), &self.coeffs, &other.coeffs),
        ))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly::from_raw(
            &self.field,
            upoly::sub(self.field.arith(), &self.coeffs, &other.coeffs),
        ))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        Ok(Poly::from_raw(
            &self.field,
            upoly::mul(self.field.arith(), &self.coeffs, &other.coeffs),
        ))
    }

    /// `(s, r)` with `self = s·b + r` and `deg r < deg b`.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = upoly::divrem(self.field.arith(), &self.coeffs, &b.coeffs);
        Ok((Poly::from_raw(&self.field, q), Poly::from_raw(&self.field, r)))
    }

    /// Canonical remainder modulo `b`.
    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        self.check_field(b)?;
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Poly::from_raw(
            &self.field,
            upoly::rem(self.field.arith(), &self.coeffs, &b.coeffs),
        ))
    }

    /// Exact quotient, or `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(b)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        Ok(Poly::from_raw(
            &self.field,
            upoly::gcd(self.field.arith(), &self.coeffs, &other.coeffs),
        ))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        if self.field != m.field || m.is_zero() {
            return None;
        }
        let (g, s) = upoly::half_xgcd(self.field.arith(), &self.coeffs, &m.coeffs);
        (g == [1]).then(|| Poly::from_raw(&self.field, s))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        self.check_field(m)?;
        if m.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Poly::from_raw(
            &self.field,
            upoly::powmod_big(self.field.arith(), &self.coeffs, e, &m.coeffs),
        ))
    }

    pub(crate) fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        Poly::from_raw(
            &self.field,
            upoly::mulmod(self.field.arith(), &self.coeffs, &other.coeffs, &m.coeffs),
        )
    }

    /// Value at a field element.
    pub fn eval(&self, x: u32) -> u32 {
        upoly::eval(self.field.arith(), &self.coeffs, x)
    }

    /// Multiplicity of `f` as a factor of `self`; `None` for zero.
    pub fn ord(&self, f: &Poly) -> Result<Option<u32>> {
        if f.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        if self.is_zero() {
            return Ok(None);
        }
        let mut k = 0;
        let mut x = self.clone();
        while let Some(q) = x.div_exact(f)? {
            x = q;
            k += 1;
        }
        Ok(Some(k))
    }

    /// `{X}_f`: the least norm in the coset `X + f·F_q[T]`.
    ///
    /// Any coset element other than the canonical remainder `r` is `r + f·Z`
    /// with `Z != 0`, whose degree is at least `deg f > deg r`, so the minimum
    /// is `|X rem f|`.
    pub fn frac_dist(&self, f: &Poly) -> Result<BigUint> {
        Ok(self.rem(f)?.norm())
    }

    /// Irreducibility over `F_q`: `f | T^{q^n} - T` and
    /// `gcd(f, T^{q^{n/r}} - T) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let ar = self.field.arith();
        let f = upoly::monic(ar, &self.coeffs);
        let q = self.field.q() as u64;
        let t = upoly::rem(ar, &[0, 1], &f);
        // frob[i] = T^{q^i} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(t.clone());
        for i in 0..n {
            let next = upoly::powmod_u64(ar, &frob[i], q, &f);
            frob.push(next);
        }
        if frob[n] != t {
            return Ok(false);
        }
        for r in prime_factors(n as u64) {
            let h = upoly::sub(ar, &frob[n / r as usize], &t);
            if upoly::gcd(ar, &f, &h) != [1] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `|a|`.
pub fn poly_norm(a: &Poly) -> BigUint {
    a.norm()
}

pub fn poly_gcd(a: &Poly, b: &Poly) -> Result<Poly> {
    a.gcd(b)
}

pub fn is_irreducible(f: &Poly) -> Result<bool> {
    f.is_irreducible()
}

pub fn frac_dist(x: &Poly, f: &Poly) -> Result<BigUint> {
    x.frac_dist(f)
}

/// A monic irreducible polynomial of exact degree `deg`, drawn by rejection
/// sampling from a ChaCha stream seeded with `seed`.
pub fn random_irreducible(field: &Field, deg: usize, seed: u64) -> Result<Poly> {
    if deg == 0 {
        return Err(Error::InvalidArgument("degree must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut coeffs: Vec<u32> = (0..deg).map(|_| rng.gen_range(0..field.q())).collect();
        coeffs.push(1);
        let f = Poly::from_raw(field, coeffs);
        if f.is_irreducible()? {
            return Ok(f);
        }
    }
}

/// All monic irreducible polynomials of degree `deg`, in canonical order.
pub fn monic_irreducibles(field: &Field, deg: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = field.q() as u64;
    let lo = q.pow(deg as u32);
    (lo..2 * lo).filter_map(move |i| {
        let f = Poly::from_index(field, i);
        f.is_irreducible().unwrap_or(false).then_some(f)
    })
}

fn same_field_or_panic(a: &Poly, b: &Poly) {
    assert!(a.field == b.field, "{}", Error::FieldMismatch);
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        same_field_or_panic(self, rhs);
        Poly::from_raw(
            &self.field,
            upoly::add(self.field.arith(), &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        same_field_or_panic(self, rhs);
        Poly::from_raw(
            &self.field,
            upoly::sub(self.field.arith(), &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        same_field_or_panic(self, rhs);
        Poly::from_raw(
            &self.field,
            upoly::mul(self.field.arith(), &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_raw(&self.field, upoly::neg(self.field.arith(), &self.coeffs))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    /// Canonical order: by degree, then coefficients from the top down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    /// Prime fields print as `T^3+2*T+1`; extension fields as a JSON array
    /// of per-coefficient coordinate arrays.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.field.is_prime_field() {
            let parts: Vec<String> = self
                .coeffs
                .iter()
                .map(|&c| {
                    let coords: Vec<String> =
                        self.field.coords(c).iter().map(|x| x.to_string()).collect();
                    format!("[{}]", coords.join(","))
                })
                .collect();
            return write!(f, "[{}]", parts.join(","));
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "T")?,
                (1, c) => write!(f, "{c}*T")?,
                (e, 1) => write!(f, "T^{e}")?,
                (e, c) => write!(f, "{c}*T^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
