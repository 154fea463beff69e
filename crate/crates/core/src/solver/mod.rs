//! Global assembly, constraints and equilibrium solves.

pub mod assemble;
pub mod bc;
pub mod dofs;
pub mod newton;
pub mod sparse;

pub use assemble::{external_force, Assembler, GlobalSystem, Loads};
pub use dofs::{DofKind, DofMap};
pub use newton::{solve_linear, solve_newton, NewtonOptions, Solution, StepReport};
pub use sparse::{LinearSolver, SparsePattern, SymMatrix};
