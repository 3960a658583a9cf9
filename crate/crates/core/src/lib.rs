//! Finite-field twisted polynomial rings `K[t;σ]`, the nonassociative Petit
//! algebras `K[t;σ]/K[t;σ]f`, their isomorphism classification, and the
//! rank-metric and skew constacyclic codes they carry.
//!
//! Everything is exact and enumerative: the intended instances are small
//! (`|K| ≤ 2^20`, algebras of at most a few thousand elements for the
//! exhaustive sweeps). Sweeps run on rayon when the `parallel` feature is on
//! (the default) and sequentially otherwise; results are identical.

pub mod acceptance;
pub mod classify;
pub mod codes;
mod error;
pub mod export;
pub mod fields;
pub mod linalg;
mod par;
pub mod petit;
pub mod skewpoly;

pub use error::{Error, Result};
pub use fields::{make_field, make_tower, Elem, ExtensionTower, FiniteField, GaloisGenerator};
pub use petit::{AlgebraElement, PetitAlgebra};
pub use skewpoly::{Degree, SkewPoly, SkewRing};
