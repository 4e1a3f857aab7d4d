//! Generalized toric codes over small finite fields.
//!
//! The crate builds evaluation codes from sets of lattice exponents, computes
//! their exact parameters with two independent minimum-distance engines, and
//! provides the supporting algebra: Minkowski length of lattice polygons,
//! factorization patterns of univariate families, and point counts on the
//! cubic family `a x^2 y + b x y^2 + c x y z + d z^3`.

pub mod code;
pub mod cubics;
pub mod figures;
pub mod gf;
pub mod lattice;
pub mod polyfact;
pub mod tables;
pub mod verify;

pub use gf::{FieldSpec, Gf, GfError};
