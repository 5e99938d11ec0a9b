//! Exact-arithmetic toolkit for symmetric decompositions of polynomials,
//! real-rootedness and interlacing certificates, Eulerian/derangement-type
//! polynomial families, lattice-zonotope Ehrhart pipelines, and barycentric
//! subdivision h-polynomials, with brute-force oracles throughout.

pub mod complexes;
pub mod decompose;
pub mod error;
pub mod families;
pub mod operators;
pub mod poly;
pub mod rootcert;
pub mod verify;
pub mod zonotopes;

pub use error::{Error, Result};
pub use poly::{Poly, Rat};
