//! Exact reconstruction of the Néron–Severi lattice of the supersingular K3
//! surface of Artin invariant one in characteristic `p ≡ 3 (mod 4)`, its
//! elliptic fibrations and translation automorphisms, and certification that
//! a composite of translations has Salem degree 22.
//!
//! Everything is computed with arbitrary-precision integers and rationals.

pub mod error;
pub mod exact;
pub mod fibration;
pub mod isometry;
pub mod lattice;
pub mod ns;
pub mod pipeline;
pub mod salem;
pub mod symbolic;
pub mod weierstrass;

pub use error::{Error, Result};
