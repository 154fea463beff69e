//! Isogeometric Kirchhoff-Love thin-shell analysis.
//!
//! The crate provides NURBS and bilinear Lagrange surface discretizations, the
//! Koiter shell model in linear and geometrically nonlinear form, and the hybrid
//! B2M1 discretization in which quadratic NURBS elements carry the bending
//! stiffness while bilinear elements on the same control net carry the membrane
//! stiffness.
//!
//! Module overview:
//!
//! - [`geometry`]: knot vectors, NURBS patches, bilinear control-net meshes,
//!   benchmark surfaces, degree elevation and mesh distortion.
//! - [`kinematics`]: pointwise differential geometry and strain measures.
//! - [`material`]: Koiter elasticity tensors and stress resultants.
//! - [`element`]: quadrature and element force / tangent computation.
//! - [`hybrid`]: pairing of the bending and membrane meshes and the membrane
//!   force redistribution operator.
//! - [`solver`]: dof bookkeeping, sparse assembly, linear and Newton solves.
//! - [`postprocess`]: stress recovery, surface projection, error norms and
//!   CSV / VTK export.

pub mod element;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod hybrid;
pub mod kinematics;
pub mod material;
pub mod postprocess;
pub mod solver;

pub use error::{Error, Result};
pub use exec::Execution;

/// Three-component vector used for positions, displacements and forces.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 2x2 matrix used for surface tensor components.
pub type Mat2 = nalgebra::Matrix2<f64>;
/// 3x3 matrix used for nodal stiffness blocks and embedded tensors.
pub type Mat3 = nalgebra::Matrix3<f64>;
