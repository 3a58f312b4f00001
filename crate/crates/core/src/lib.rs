//! Computational toolkit for D-modules on smooth toric varieties.
//!
//! The Cox ring `S = k[x_1..x_d]` of a smooth fan carries a grading by the
//! class group; the Weyl algebra `A` of `S` inherits it. This crate builds
//! graded presentations of `A`-modules, checks the theta condition, computes
//! characteristic ideals with Gröbner bases, and works out the local
//! operators attached to a cone.

pub mod charvar;
pub mod dmod;
pub mod expr;
pub mod fan_cox;
pub mod fixtures;
pub mod groebner;
pub mod lattice;
pub mod poly;
pub mod weyl;
