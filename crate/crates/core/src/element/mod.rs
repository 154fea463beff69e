//! Element integrals: internal forces, tangents, energies and external loads.

pub mod kernel;
pub mod loads;
pub mod quadrature;
pub mod sets;

pub use kernel::{covariant_second_derivatives, evaluate_element, membrane_derivatives, ElementMatrices, QuadPoint};
pub use loads::{edge_traction, surface_load, Edge};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use sets::{ElementSet, LagrangeElements, NurbsElements};

/// Which parts of the shell model an element carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Full,
    BendingOnly,
    MembraneOnly,
}

impl ElementKind {
    pub fn has_membrane(self) -> bool {
        matches!(self, ElementKind::Full | ElementKind::MembraneOnly)
    }

    pub fn has_bending(self) -> bool {
        matches!(self, ElementKind::Full | ElementKind::BendingOnly)
    }
}

/// Infinitesimal or geometrically nonlinear kinematics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinematicMode {
    Linear,
    Nonlinear,
}
