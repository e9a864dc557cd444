//! Dense univariate polynomial kernels over a table field.
//!
//! Polynomials are coefficient vectors, lowest degree first, with no trailing
//! zeros (the empty vector is zero). These are the shared kernels behind
//! [`crate::Poly`] and the residue-field root counters.

use num_bigint::BigUint;

use super::gf::GfArith;

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn add(ar: &GfArith, a: &[u32], b: &[u32]) -> Vec<u32> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, &s) in out.iter_mut().zip(short) {
        *o = ar.add(*o, s);
    }
    trim(&mut out);
    out
}

pub(crate) fn neg(ar: &GfArith, a: &[u32]) -> Vec<u32> {
    a.iter().map(|&c| ar.neg(c)).collect()
}

pub(crate) fn sub(ar: &GfArith, a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push(ar.sub(x, y));
    }
    trim(&mut out);
    out
}

pub(crate) fn scale(ar: &GfArith, a: &[u32], c: u32) -> Vec<u32> {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|&x| ar.mul(x, c)).collect()
}

pub(crate) fn mul(ar: &GfArith, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if is_prime_field(ar) {
        let p = ar.order() as u64;
        // Each product is < p^2 < 2^32, so a u64 accumulator cannot overflow
        // for any realistic length.
        let mut acc = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x as u64 * y as u64;
            }
            if i % 1024 == 1023 {
                for v in acc.iter_mut() {
                    *v %= p;
                }
            }
        }
        let mut out: Vec<u32> = acc.into_iter().map(|v| (v % p) as u32).collect();
        trim(&mut out);
        return out;
    }
    let mut out = vec![0u32; n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ar.add(out[i + j], ar.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

#[inline]
fn is_prime_field(ar: &GfArith) -> bool {
    ar.order() == ar.characteristic()
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(ar: &GfArith, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let db = b.len() - 1;
    let lc_inv = ar.inv(b[db]);
    let mut r = a.to_vec();
    let mut q = vec![0u32; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db];
        if c == 0 {
            continue;
        }
        let t = ar.mul(c, lc_inv);
        q[k] = t;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = ar.sub(r[k + j], ar.mul(t, bj));
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(ar: &GfArith, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    divrem(ar, a, b).1
}

pub(crate) fn monic(ar: &GfArith, a: &[u32]) -> Vec<u32> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(ar, a, ar.inv(lc)),
    }
}

/// Monic gcd (zero when both inputs are zero).
pub(crate) fn gcd(ar: &GfArith, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(ar, &x, &y);
        x = y;
        y = r;
    }
    monic(ar, &x)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s·a ≡ g (mod m)`.
pub(crate) fn half_xgcd(ar: &GfArith, a: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (a.to_vec(), m.to_vec());
    let (mut s0, mut s1) = (vec![1u32], Vec::new());
    if r0.is_empty() {
        s0.clear();
    }
    while !r1.is_empty() {
        let (q, r) = divrem(ar, &r0, &r1);
        let s = sub(ar, &s0, &mul(ar, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(&lc) => {
            let inv = ar.inv(lc);
            (scale(ar, &r0, inv), rem(ar, &scale(ar, &s0, inv), m))
        }
    }
}

pub(crate) fn mulmod(ar: &GfArith, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    rem(ar, &mul(ar, a, b), m)
}

pub(crate) fn powmod_u64(ar: &GfArith, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
    let mut acc = rem(ar, &[1], m);
    let mut b = rem(ar, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(ar, &acc, &b, m);
        }
        e >>= 1;
        if e > 0 {
            b = mulmod(ar, &b, &b, m);
        }
    }
    acc
}

pub(crate) fn powmod_big(ar: &GfArith, base: &[u32], e: &BigUint, m: &[u32]) -> Vec<u32> {
    let mut acc = rem(ar, &[1], m);
    let b = rem(ar, base, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(ar, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(ar, &acc, &b, m);
        }
    }
    acc
}

pub(crate) fn eval(ar: &GfArith, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| ar.add(ar.mul(acc, x), c))
}

/// Number of distinct roots in the table field of a nonzero polynomial,
/// computed as `deg gcd(a, x^Q - x)`.
pub(crate) fn count_distinct_roots(ar: &GfArith, a: &[u32]) -> usize {
    assert!(!a.is_empty(), "root count of the zero polynomial");
    let m = monic(ar, a);
    match m.len() {
        1 => 0,
        2 => 1,
        _ => {
            let xq = powmod_u64(ar, &[0, 1], ar.order() as u64, &m);
            let h = sub(ar, &xq, &[0, 1]);
            gcd(ar, &m, &h).len() - 1
        }
    }
}
