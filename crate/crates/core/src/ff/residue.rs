use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::field::Field;
use super::gf::{GfArith, MAX_TABLE_ORDER};
use super::poly::Poly;
use crate::error::{Error, Result};

/// `F_q[T]/(f)` for irreducible `f`, a field with `|f|` elements.
///
/// Elements are canonical remainders of degree `< deg f`.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    modulus: Poly,
    size: BigUint,
}

impl ResidueRing {
    pub fn new(f: &Poly) -> Result<ResidueRing> {
        if !f.is_irreducible()? {
            return Err(Error::NotIrreducible(f.to_string()));
        }
        Ok(ResidueRing {
            modulus: f.monic(),
            size: f.norm(),
        })
    }

    /// The monic generator of the ideal.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("modulus is non-constant")
    }

    pub fn field(&self) -> &Field {
        self.modulus.field()
    }

    /// `|f|`.
    pub fn size(&self) -> &BigUint {
        &self.size
    }

    pub fn size_u64(&self) -> Option<u64> {
        self.size.to_u64()
    }

    pub fn reduce(&self, x: &Poly) -> Poly {
        x.rem(&self.modulus).expect("field checked by caller")
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a + b))
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&(a - b))
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.reduce(&-a)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mulmod(b, &self.modulus)
    }

    pub fn is_zero(&self, a: &Poly) -> bool {
        self.reduce(a).is_zero()
    }

    pub fn eq(&self, a: &Poly, b: &Poly) -> bool {
        self.reduce(&(a - b)).is_zero()
    }

    pub fn inv(&self, a: &Poly) -> Option<Poly> {
        self.reduce(a).inverse_mod(&self.modulus)
    }

    pub fn pow(&self, a: &Poly, e: &BigUint) -> Poly {
        a.pow_mod(e, &self.modulus).expect("same field")
    }

    pub fn pow_u64(&self, a: &Poly, e: u64) -> Poly {
        self.pow(a, &BigUint::from(e))
    }

    /// Euler's criterion (every element is a square in characteristic 2).
    pub fn is_square(&self, a: &Poly) -> bool {
        let a = self.reduce(a);
        if a.is_zero() || self.field().p() == 2 {
            return true;
        }
        let e = (&self.size - 1u32) >> 1;
        self.pow(&a, &e).is_one()
    }

    /// A square root, if one exists. Characteristic 2 uses `a^{Q/2}`; odd
    /// characteristic uses Tonelli–Shanks with the first non-square in
    /// canonical order.
    pub fn sqrt(&self, a: &Poly) -> Option<Poly> {
        let a = self.reduce(a);
        if a.is_zero() {
            return Some(a);
        }
        let field = self.field().clone();
        if field.p() == 2 {
            return Some(self.pow(&a, &(&self.size >> 1)));
        }
        if !self.is_square(&a) {
            return None;
        }
        let one = BigUint::one();
        let qm1 = &self.size - &one;
        let s = qm1.trailing_zeros().expect("Q - 1 > 0");
        let odd = &qm1 >> s;
        let z = self
            .elements_from(1)
            .find(|x| !self.is_square(x))
            .expect("odd-order field has a non-square");
        let mut m = s;
        let mut c = self.pow(&z, &odd);
        let mut t = self.pow(&a, &odd);
        let mut r = self.pow(&a, &((&odd + &one) >> 1));
        while !t.is_one() {
            let mut i = 0;
            let mut t2 = t.clone();
            while !t2.is_one() {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = self.mul(&b, &b);
            }
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// All residues in canonical order. Panics if `|f|` exceeds `u64`.
    pub fn elements(&self) -> impl Iterator<Item = Poly> + '_ {
        self.elements_from(0)
    }

    fn elements_from(&self, start: u64) -> impl Iterator<Item = Poly> + '_ {
        let n = self.size_u64().expect("residue field too large to enumerate");
        (start..n).map(move |i| Poly::from_index(self.field(), i))
    }

    /// Reduction of an element given as a code of its canonical remainder.
    pub fn element(&self, index: u64) -> Poly {
        Poly::from_index(self.field(), index)
    }
}

/// A residue field with table arithmetic, for exhaustive work modulo small `f`.
///
/// The code of a residue `c_0 + c_1 T + ...` is its index
/// `c_0 + c_1 q + ...` (see [`Poly::index`]).
#[derive(Clone, Debug)]
pub struct ResidueField {
    ring: ResidueRing,
    arith: GfArith,
}

impl ResidueField {
    pub fn new(f: &Poly) -> Result<ResidueField> {
        let ring = ResidueRing::new(f)?;
        let order = match ring.size_u64() {
            Some(n) if n <= MAX_TABLE_ORDER => n as u32,
            _ => {
                return Err(Error::ModulusTooLarge {
                    norm: ring.size().to_string(),
                    limit: MAX_TABLE_ORDER,
                })
            }
        };
        let field = ring.field().clone();
        let q = field.q();
        let modulus = ring.modulus().clone();
        let mul = |a: u32, b: u32| {
            let pa = Poly::from_index(&field, a as u64);
            let pb = Poly::from_index(&field, b as u64);
            pa.mulmod(&pb, &modulus).index().expect("fits") as u32
        };
        let add_one = |a: u32| {
            let c0 = a % q;
            a - c0 + field.add(c0, 1)
        };
        let arith = GfArith::from_ops(order, field.p(), mul, add_one);
        Ok(ResidueField { ring, arith })
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn order(&self) -> u32 {
        self.arith.order()
    }

    pub(crate) fn arith(&self) -> &GfArith {
        &self.arith
    }

    pub fn encode(&self, x: &Poly) -> u32 {
        self.ring.reduce(x).index().expect("residue fits") as u32
    }

    pub fn decode(&self, code: u32) -> Poly {
        Poly::from_index(self.ring.field(), code as u64)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.arith.add(a, b)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.arith.mul(a, b)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.arith.neg(a)
    }
}
