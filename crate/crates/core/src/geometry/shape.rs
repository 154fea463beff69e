//! Element shape-function data at one evaluation point.

use crate::Vec3;

/// Shape functions of one element at one point.
///
/// Derivatives are taken with respect to the surface parameters used by the
/// element (global knot parameters for NURBS, local coordinates for bilinear
/// elements). Second derivatives are stored in the order (11, 22, 12).
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ShapeFunctions {
    pub nodes: Vec<usize>,
    pub n: Vec<f64>,
    pub dn: Vec<[f64; 2]>,
    pub ddn: Vec<[f64; 3]>,
}

/// Position and its first and second parametric derivatives at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointDerivatives {
    pub x: Vec3,
    pub a: [Vec3; 2],
    /// Second derivatives x_{,11}, x_{,22}, x_{,12}.
    pub da: [Vec3; 3],
}

impl ShapeFunctions {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Interpolates a nodal field stored by global node id.
    pub fn interpolate(&self, field: &[Vec3]) -> PointDerivatives {
        self.interpolate_with(|i| field[self.nodes[i]])
    }

    /// Interpolates a nodal field given in local element order.
    pub fn interpolate_local(&self, local: &[Vec3]) -> PointDerivatives {
        self.interpolate_with(|i| local[i])
    }

    fn interpolate_with(&self, node: impl Fn(usize) -> Vec3) -> PointDerivatives {
        let mut out = PointDerivatives {
            x: Vec3::zeros(),
            a: [Vec3::zeros(); 2],
            da: [Vec3::zeros(); 3],
        };
        for i in 0..self.nodes.len() {
            let p = node(i);
            out.x += self.n[i] * p;
            out.a[0] += self.dn[i][0] * p;
            out.a[1] += self.dn[i][1] * p;
            for k in 0..3 {
                out.da[k] += self.ddn[i][k] * p;
            }
        }
        out
    }
}
