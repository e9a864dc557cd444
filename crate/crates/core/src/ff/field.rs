use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gf::{prime_factors, GfArith};
use super::poly::Poly;
use super::upoly;
use crate::error::{Error, Result};

/// Largest base field order supported.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Conway polynomials `C_{p,k}` for small `p` and `k <= 4`, coefficients
/// lowest degree first.
const CONWAY: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
];

/// Seed used to pick the modulus of an extension field with no table entry.
pub const DEFAULT_MODULUS_SEED: u64 = 0;

/// Parameters of `F_q`, `q = p^k`. For `k > 1` the field is
/// `F_p[u]/(modulus(u))`, with the modulus stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

impl FieldParams {
    pub fn q(&self) -> u32 {
        self.p.pow(self.k)
    }
}

struct FieldInner {
    params: FieldParams,
    arith: GfArith,
}

/// A finite field `F_q`. Cheap to clone; all clones share one set of tables.
///
/// Elements are `u32` codes in `0..q`. For an extension field the code of
/// `c_0 + c_1 u + ... + c_{k-1} u^{k-1}` is `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`,
/// and the canonical total order on elements is the order of codes.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!(
                "order {p} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        Ok(Field(Arc::new(FieldInner {
            params: FieldParams {
                p,
                k: 1,
                modulus: None,
            },
            arith: GfArith::prime(p),
        })))
    }

    /// `F_{p^k}`. Without an explicit modulus the Conway polynomial is used
    /// when tabulated, otherwise a seeded random irreducible.
    pub fn extension(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        let base = Field::prime(p)?;
        if k == 1 {
            if modulus.is_some() {
                return Err(Error::InvalidField(
                    "a prime field takes no modulus".into(),
                ));
            }
            return Ok(base);
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER as u64);
        let Some(q) = q else {
            return Err(Error::InvalidField(format!(
                "{p}^{k} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        };
        let modulus = match modulus {
            Some(m) => {
                validate_modulus(&base, k, &m)?;
                m
            }
            None => default_modulus(&base, k),
        };
        let arith = extension_arith(p, k, q as u32, &modulus);
        Ok(Field(Arc::new(FieldInner {
            params: FieldParams {
                p,
                k,
                modulus: Some(modulus),
            },
            arith,
        })))
    }

    /// The field with `q` elements, for a prime power `q`.
    pub fn with_order(q: u32) -> Result<Field> {
        let factors = prime_factors(q as u64);
        if factors.len() != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = factors[0] as u32;
        let mut k = 0;
        let mut r = q;
        while r > 1 {
            r /= p;
            k += 1;
        }
        Field::extension(p, k, None)
    }

    pub fn from_params(params: &FieldParams) -> Result<Field> {
        Field::extension(params.p, params.k, params.modulus.clone())
    }

    pub fn params(&self) -> &FieldParams {
        &self.0.params
    }

    pub fn q(&self) -> u32 {
        self.0.arith.order()
    }

    pub fn p(&self) -> u32 {
        self.0.params.p
    }

    pub fn k(&self) -> u32 {
        self.0.params.k
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.params.k == 1
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> Range<u32> {
        0..self.q()
    }

    pub(crate) fn arith(&self) -> &GfArith {
        &self.0.arith
    }

    pub fn same(&self, other: &Field) -> bool {
        self == other
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.arith.add(a, b)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.0.arith.sub(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.arith.neg(a)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.arith.mul(a, b)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.arith.inv(a))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        self.0.arith.pow(a, e)
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> u32 {
        self.0.arith.embed_int(c)
    }

    /// Coordinates of an element over `F_p` (lowest power of `u` first).
    pub fn coords(&self, e: u32) -> Vec<u32> {
        let p = self.p();
        let mut out = Vec::with_capacity(self.k() as usize);
        let mut r = e;
        for _ in 0..self.k() {
            out.push(r % p);
            r /= p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<u32> {
        if coords.len() > self.k() as usize || coords.iter().any(|&c| c >= self.p()) {
            return Err(Error::InvalidArgument(format!(
                "{coords:?} is not an element of F_{}",
                self.q()
            )));
        }
        Ok(coords.iter().rev().fold(0, |acc, &c| acc * self.p() + c))
    }

    /// Binomial coefficient `C(n, k)` as an element of the prime subfield.
    pub fn binomial(&self, n: u32, k: u32) -> u32 {
        if k > n {
            return 0;
        }
        // Lucas: C(n,k) = prod C(n_i, k_i) over base-p digits
        let p = self.p();
        let (mut n, mut k) = (n, k);
        let mut acc: u64 = 1;
        while n > 0 || k > 0 {
            let (ni, ki) = (n % p, k % p);
            if ki > ni {
                return 0;
            }
            let mut c: u64 = 1;
            for i in 0..ki {
                c = c * (ni - i) as u64 % p as u64;
            }
            let mut d: u64 = 1;
            for i in 1..=ki {
                d = d * i as u64 % p as u64;
            }
            let d_inv = pow_mod(d, p as u64 - 2, p as u64);
            acc = acc * c % p as u64 * d_inv % p as u64;
            n /= p;
            k /= p;
        }
        self.from_int(acc as i64)
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.params == other.0.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.params.modulus {
            None => write!(f, "F_{}", self.q()),
            Some(m) => write!(f, "F_{}[u]/{:?}", self.p(), m),
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn conway_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    CONWAY
        .iter()
        .find(|(cp, ck, _)| *cp == p && *ck == k)
        .map(|(_, _, m)| m.to_vec())
}

fn default_modulus(base: &Field, k: u32) -> Vec<u32> {
    conway_modulus(base.p(), k).unwrap_or_else(|| {
        super::poly::random_irreducible(base, k as usize, DEFAULT_MODULUS_SEED)
            .expect("degree >= 1")
            .coeffs()
            .to_vec()
    })
}

fn validate_modulus(base: &Field, k: u32, m: &[u32]) -> Result<()> {
    if m.len() != k as usize + 1 || m.last() != Some(&1) || m.iter().any(|&c| c >= base.p()) {
        return Err(Error::InvalidField(format!(
            "modulus {m:?} must be a monic degree-{k} polynomial over F_{}",
            base.p()
        )));
    }
    let poly = Poly::from_coeffs(base, m.to_vec())?;
    if !poly.is_irreducible()? {
        return Err(Error::InvalidField(format!("modulus {m:?} is reducible")));
    }
    Ok(())
}

fn extension_arith(p: u32, k: u32, q: u32, modulus: &[u32]) -> GfArith {
    let prime = GfArith::prime(p);
    let to_digits = |mut e: u32| {
        let mut d = Vec::with_capacity(k as usize);
        for _ in 0..k {
            d.push(e % p);
            e /= p;
        }
        upoly::trim(&mut d);
        d
    };
    let from_digits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    let mul = |a: u32, b: u32| {
        let prod = upoly::mulmod(&prime, &to_digits(a), &to_digits(b), modulus);
        from_digits(&prod)
    };
    // Adding 1 touches only the constant digit.
    let add_one = |a: u32| {
        let c0 = a % p;
        a - c0 + (c0 + 1) % p
    };
    GfArith::from_ops(q, p, mul, add_one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_table_is_irreducible() {
        for &(p, k, m) in CONWAY {
            let base = Field::prime(p).unwrap();
            let poly = Poly::from_coeffs(&base, m.to_vec()).unwrap();
            assert!(poly.is_irreducible().unwrap(), "C_{{{p},{k}}}");
        }
    }

    #[test]
    fn extension_fields_are_fields() {
        for q in [4u32, 8, 9, 16, 25, 27] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(f.q(), q);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    // additive structure is F_p^k digitwise
                    let (ca, cb) = (f.coords(a), f.coords(b));
                    let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % f.p()).collect();
                    assert_eq!(f.add(a, b), f.from_coords(&sum).unwrap());
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn default_modulus_beyond_table_is_seeded() {
        let a = Field::extension(11, 2, None).unwrap();
        let b = Field::extension(11, 2, None).unwrap();
        assert_eq!(a.params(), b.params());
        assert_eq!(a.q(), 121);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(Field::prime(9).is_err());
        assert!(Field::with_order(12).is_err());
        assert!(Field::extension(2, 2, Some(vec![1, 0, 1])).is_err());
    }

    #[test]
    fn binomials_mod_p() {
        let f = Field::prime(2).unwrap();
        assert_eq!(f.binomial(2, 1), 0);
        assert_eq!(f.binomial(3, 1), 1);
        let g = Field::prime(5).unwrap();
        assert_eq!(g.binomial(6, 2), 15 % 5);
        assert_eq!(g.binomial(7, 3), 35 % 5);
    }
}
