use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

/// A box `I = X_0 + {Y : deg Y <= n}` in `F_q[T]`, with `|I| = q^{n+1}`.
///
/// Enumeration visits `X_0 + Y` with `Y` running through the polynomials of
/// degree `<= n` in canonical order (by index: `c_0` varies fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    base: Poly,
    bound: u32,
    size: u64,
}

impl Interval {
    pub fn new(base: Poly, bound: u32) -> Result<Interval> {
        let q = base.field().q();
        let size = (q as u64)
            .checked_pow(bound + 1)
            .ok_or(Error::IntervalTooLarge { q, exp: bound + 1 })?;
        Ok(Interval { base, bound, size })
    }

    /// The interval `{deg <= n}` based at zero.
    pub fn centered(field: &Field, bound: u32) -> Result<Interval> {
        Interval::new(Poly::zero(field), bound)
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    /// `|I| = q^{n+1}`.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn contains(&self, x: &Poly) -> bool {
        match (x - &self.base).degree() {
            None => true,
            Some(d) => d <= self.bound as usize,
        }
    }

    /// The `index`-th element in enumeration order.
    pub fn element(&self, index: u64) -> Poly {
        debug_assert!(index < self.size);
        &self.base + &Poly::from_index(self.field(), index)
    }

    pub fn iter(&self) -> impl Iterator<Item = Poly> + '_ {
        (0..self.size).map(move |i| self.element(i))
    }

    /// When `deg X_0 <= n` the interval coincides with `{deg <= n}` as a set;
    /// otherwise every element has degree exactly `deg X_0`.
    pub fn fixed_degree(&self) -> Option<usize> {
        match self.base.degree() {
            Some(d) if d > self.bound as usize => Some(d),
            _ => None,
        }
    }

    /// Largest degree of any element (`None` only for the singleton `{0}`
    /// never arises: `|I| >= q >= 2`).
    pub fn max_degree(&self) -> usize {
        self.fixed_degree().unwrap_or(self.bound as usize)
    }
}

pub fn interval_contains(interval: &Interval, x: &Poly) -> bool {
    interval.contains(x)
}

pub fn interval_enumerate(interval: &Interval) -> impl Iterator<Item = Poly> + '_ {
    interval.iter()
}
