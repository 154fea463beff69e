//! Surface representations and benchmark geometries.

pub mod benchmarks;
pub mod elevate;
pub mod io;
pub mod knots;
pub mod lagrange;
pub mod m1;
pub mod nurbs;
pub mod shape;

pub use benchmarks::{apply_skew, make_cantilever, make_hemisphere, make_scordelis};
pub use elevate::{degree_elevate, insert_knots, refine_uniform};
pub use io::{patch_from_str, patch_to_string, read_patch, write_patch};
pub use knots::{BasisEval, KnotVector};
pub use lagrange::{eval_bilinear, BilinearEval};
pub use m1::M1Mesh;
pub use nurbs::NurbsPatch;
pub use shape::{PointDerivatives, ShapeFunctions};
