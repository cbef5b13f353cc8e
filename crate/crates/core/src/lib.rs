//! Numerical and exact verification of Sasakian spheres, their Kähler
//! cones, and the complex structures on products `S₁ × S₂`.
//!
//! * [`geom`]: embedded points, tangent projection, seeded sampling and
//!   finite-difference brackets and exterior derivatives.
//! * [`sphere`]: the round Sasakian structure `(ξ, η, φ, g)`.
//! * [`cone`]: the cone `C(S)` with `J`, `ω` and homotheties.
//! * [`product`]: the `G_α` quotient, `J_α`, the CEM family `J_{a,b}` and
//!   their metrics.
//! * [`checks`] and [`suites`]: pointwise checks and seeded reports.
//! * [`algebra`]: the special-metric table and structure matching.
//! * [`cohomology`]: exact Dolbeault Hodge numbers from transverse models.
//! * [`cli`]: the `sasakian` command.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod checks;
pub mod cli;
pub mod cohomology;
pub mod cone;
pub mod error;
pub mod geom;
pub mod product;
pub mod sphere;
pub mod suites;

pub use error::{Error, Result};
pub use geom::{AmbientPoint, SampleConfig, Sampler, Vector};
pub use product::{AlphaParam, CemParam, ProductPoint, ProductTangent};
pub use sphere::SasakianSphere;
