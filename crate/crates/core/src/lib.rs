//! Exact arithmetic over `F_q[T]` for counting points of plane curves in
//! boxes, the determinant-method identities behind such counts, and the
//! isomorphism-class census of Weierstrass curves `E_{a,b}` modulo `f`.

pub mod boxcount;
pub mod curves;
pub mod detmethod;
pub mod elliptic;
pub mod error;
pub mod ff;
pub mod linalg;

pub use error::{Error, Result};
pub use boxcount::{PlaneBox, Point, PointSet};
pub use curves::{BivarPoly, TransformMatrix};
pub use detmethod::WSet;
pub use elliptic::{ECPair, PigeonInstance, SmallModel};
pub use ff::{Field, FieldParams, Interval, Poly, ResidueField, ResidueRing};
