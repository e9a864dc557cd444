//! Arithmetic in `F_q`, `F_q[T]` and `F_q[T]/(f)`, plus intervals.

mod field;
pub(crate) mod gf;
mod interval;
mod poly;
mod residue;
pub(crate) mod upoly;

pub use field::{conway_modulus, is_prime, Field, FieldParams, MAX_FIELD_ORDER};
pub use gf::MAX_TABLE_ORDER;
pub use interval::{interval_contains, interval_enumerate, Interval};
pub use poly::{frac_dist, is_irreducible, monic_irreducibles, poly_gcd, poly_norm, random_irreducible, Poly};
pub use residue::{ResidueField, ResidueRing};
