//! Exact-arithmetic workbench for deformation quantization of polynomial
//! Poisson structures on affine space.
//!
//! All arithmetic is over the rationals. The crate is organised by subsystem:
//!
//! * [`poly`]: multivariate polynomials, truncated ℏ-series, polyvector fields,
//!   the Schouten bracket and poly-differential operators.
//! * [`star`]: Moyal products and an order-by-order associativity solver.
//! * [`quadratic`]: deformed quadratic relations, the truncated
//!   quantization/dequantization correspondence and homogenization.
//! * [`rees`]: Rees presentations, filtration checks and tangency criteria.
//! * [`algebroid`]: combinatorial algebroid data, holonomy, gauge fixing and
//!   simplicial cohomology.
//!
//! # Conventions
//!
//! A bivector stores `γ^{ij}` for `i < j`; the full matrix is antisymmetric and
//! the bracket is `{f,g} = Σ_{i,j} γ^{ij} ∂_i f ∂_j g`. The first-order
//! star-product term is `B₁ = Σ_{i,j} γ^{ij} ∂_i ⊗ ∂_j`, so
//! `f*g − g*f = 2ℏ{f,g} + O(ℏ²)` (not `ℏ{f,g}`).
//!
//! The Schouten bracket is normalised so that
//! `[γ,γ](df,dg,dh) = 2·({{f,g},h} + {{g,h},f} + {{h,f},g})`.

pub mod algebroid;
pub mod error;
pub mod json;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod quadratic;
pub mod rational;
pub mod rees;
pub mod star;
pub mod trunc;

pub use error::{Error, Result};
pub use rational::Rat;

/// Version tag for the sign/normalisation conventions listed in the crate docs.
pub const CONVENTIONS_VERSION: &str = "conventions-v1";
