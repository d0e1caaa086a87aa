//! Maximum scattered linear sets of PG(1, q⁴), exactly.
//!
//! The line PG(1, q⁴) carries the family of GF(q)-linear sets L_{U(b)}
//! defined by the subspaces U(b) = {(x, b·x^q + x^{q³})}. This crate
//! constructs them over an exact GF(q⁴) tower, classifies each b by norm
//! conditions into scattered / one double point / q+1 double points,
//! computes PGL(2,q⁴)- and PΓL(2,q⁴)-orbit censuses from the norm invariant
//! b^{q²+1}, and verifies all of it against independent brute-force
//! group-action oracles and the projection geometry of the Klein quadric.
//!
//! Modules:
//! - [`field`]: the tower GF(p) ⊆ GF(q) ⊆ GF(q²) ⊆ GF(q⁴) on Zech-log tables.
//! - [`qpoly`]: q-polynomials Σ cᵢ x^{qⁱ}, adjoints, kernels.
//! - [`linear_set`]: points of PG(1,q⁴), linear sets, weights and spectra.
//! - [`classify`]: closed-form case labels, equivalence predicates, censuses.
//! - [`oracle`]: exhaustive PGL/PΓL/GL enumeration cross-checks.
//! - [`geometry`]: the canonical subgeometry Σ, its collineation σ, vertex
//!   lines, projections, Plücker embedding and Klein quadrics.
//!
//! Heavy sweeps are data-parallel over rayon when the `parallel` feature
//! (default) is on; `*_seq` twins run the identical computation inline and
//! return bit-identical results.

pub mod classify;
pub mod error;
mod exec;
pub mod field;
pub mod geometry;
pub mod linear_set;
pub mod oracle;
pub mod qpoly;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Felt, FieldSpec};
pub use qpoly::QPoly;
