//! Table-driven arithmetic for a finite field of order `Q <= 2^24`.
//!
//! Elements are `u32` codes in `0..Q`, with `0` the additive and `1` the
//! multiplicative identity. Multiplication goes through exp/log tables of a
//! primitive element. Prime fields add directly mod `p`; extension fields add
//! through Zech logarithms, `log(1 + g^t)`.

const NO_ZECH: u32 = u32::MAX;

/// Largest field order accepted for table construction.
pub const MAX_TABLE_ORDER: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub(crate) struct GfArith {
    order: u32,
    characteristic: u32,
    prime: bool,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl GfArith {
    /// Arithmetic of the prime field `F_p`.
    pub fn prime(p: u32) -> Self {
        let pp = p as u64;
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % pp) as u32;
        let generator = find_generator(p, &mul);
        let (exp, log) = build_exp_log(p, generator, &mul);
        GfArith {
            order: p,
            characteristic: p,
            prime: true,
            exp,
            log,
            zech: Vec::new(),
        }
    }

    /// Arithmetic of a field of order `order` and characteristic `p`, given
    /// a (slow) multiplication on codes and the map `x -> x + 1`.
    pub fn from_ops(
        order: u32,
        p: u32,
        mul: impl Fn(u32, u32) -> u32,
        add_one: impl Fn(u32) -> u32,
    ) -> Self {
        let generator = find_generator(order, &mul);
        let (exp, log) = build_exp_log(order, generator, &mul);
        let zech = exp
            .iter()
            .map(|&x| {
                let s = add_one(x);
                if s == 0 {
                    NO_ZECH
                } else {
                    log[s as usize]
                }
            })
            .collect();
        GfArith {
            order,
            characteristic: p,
            prime: false,
            exp,
            log,
            zech,
        }
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    #[inline]
    fn group_order(&self) -> u32 {
        self.order - 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.prime {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.group_order();
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let t = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[t as usize];
        if z == NO_ZECH {
            0
        } else {
            self.exp[((la as u64 + z as u64) % n as u64) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        if self.prime {
            return self.order - a;
        }
        if self.characteristic == 2 {
            return a;
        }
        let n = self.group_order();
        let l = self.log[a as usize] + n / 2;
        self.exp[(l % n) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.prime {
            return ((a as u64 * b as u64) % self.order as u64) as u32;
        }
        let n = self.group_order();
        let l = self.log[a as usize] + self.log[b as usize];
        self.exp[(if l >= n { l - n } else { l }) as usize]
    }

    /// Multiplicative inverse; `a` must be nonzero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let n = self.group_order();
        let l = self.log[a as usize];
        self.exp[(if l == 0 { 0 } else { n - l }) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = self.group_order() as u64;
        let l = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[l as usize]
    }

    /// Element `c * 1` of the prime subfield for an integer `c`.
    pub fn embed_int(&self, c: i64) -> u32 {
        let p = self.characteristic as i64;
        let r = c.rem_euclid(p) as u32;
        if self.prime {
            r
        } else {
            // The prime subfield is spanned by 1, and 1 + 1 + ... is computed
            // through the tables.
            let mut acc = 0;
            for _ in 0..r {
                acc = self.add(acc, 1);
            }
            acc
        }
    }
}

fn pow_slow(mut base: u32, mut e: u64, mul: &impl Fn(u32, u32) -> u32) -> u32 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn find_generator(order: u32, mul: &impl Fn(u32, u32) -> u32) -> u32 {
    if order == 2 {
        return 1;
    }
    let n = (order - 1) as u64;
    let factors = prime_factors(n);
    (2..order)
        .find(|&g| factors.iter().all(|&r| pow_slow(g, n / r, mul) != 1))
        .expect("finite field has a primitive element")
}

fn build_exp_log(order: u32, generator: u32, mul: &impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let n = (order - 1) as usize;
    let mut exp = Vec::with_capacity(n);
    let mut log = vec![0u32; order as usize];
    let mut x = 1;
    for i in 0..n {
        exp.push(x);
        log[x as usize] = i as u32;
        x = mul(x, generator);
    }
    (exp, log)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_axioms_exhaustive_small() {
        for p in [2u32, 3, 5, 7, 13] {
            let f = GfArith::prime(p);
            for a in 0..p {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..p {
                    assert_eq!(f.add(a, b), (a + b) % p);
                    assert_eq!(f.mul(a, b), (a * b) % p);
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn gf4_from_ops() {
        // F_4 = F_2[u]/(u^2+u+1), code = c0 + 2 c1
        let mul = |a: u32, b: u32| {
            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
            // (a0 + a1 u)(b0 + b1 u) = a0b0 + (a0b1 + a1b0) u + a1b1 u^2, u^2 = u + 1
            let c2 = a1 & b1;
            let c0 = (a0 & b0) ^ c2;
            let c1 = (a0 & b1) ^ (a1 & b0) ^ c2;
            c0 | (c1 << 1)
        };
        let f = GfArith::from_ops(4, 2, mul, |x| x ^ 1);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), mul(a, b));
            }
        }
        assert_eq!(f.neg(3), 3);
    }
}
