//! Exact-arithmetic workbench recomputing the equivariant cohomology of
//! moduli of geometrically marked degree-3 and degree-4 Del Pezzo surfaces.
//!
//! Everything is computed over the integers/rationals or tiny finite fields:
//! root systems and reflection groups in Picard lattices ([`weyl`]),
//! character tables ([`chartab`]), point counts over finite fields
//! ([`finitegeom`], [`pointcount`]), toric and hyperplane arrangement posets
//! with equivariant Poincaré polynomials ([`arrangements`]), and the
//! representation-theoretic sieve assembling the final cohomology tables
//! ([`moduli`]).

pub mod arrangements;
pub mod cache;
pub mod chartab;
pub mod cli;
pub mod finitegeom;
pub mod frac;
pub mod golden;
pub mod intlin;
pub mod moduli;
pub mod pointcount;
pub mod poly;
pub mod weyl;
