//! External load vectors.

use nalgebra::DVector;

use super::kernel::QuadPoint;
use super::quadrature::gauss_legendre;
use crate::geometry::NurbsPatch;
use crate::kinematics::SurfaceState;
use crate::{Error, Result, Vec3};

/// Patch boundary edges: 0 is xi2 = 0, 1 is xi1 = 1, 2 is xi2 = 1, 3 is xi1 = 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge(pub usize);

impl Edge {
    pub const SOUTH: Edge = Edge(0);
    pub const EAST: Edge = Edge(1);
    pub const NORTH: Edge = Edge(2);
    pub const WEST: Edge = Edge(3);
}

/// Nodal forces of a constant load `f0` per unit reference area.
pub fn surface_load(qps: &[QuadPoint], x_ref: &[Vec3], f0: Vec3) -> Result<DVector<f64>> {
    let n = x_ref.len();
    let mut f = DVector::zeros(3 * n);
    for qp in qps {
        let s = SurfaceState::new(&qp.shape.interpolate_local(x_ref))?;
        let da = s.area * qp.weight;
        for i in 0..n {
            for c in 0..3 {
                f[3 * i + c] += qp.shape.n[i] * f0[c] * da;
            }
        }
    }
    Ok(f)
}

/// Nodal forces of a constant traction `t0` per unit reference length along a
/// patch edge, returned as `(node, force)` pairs in edge order.
pub fn edge_traction(patch: &NurbsPatch, edge: Edge, t0: Vec3) -> Result<Vec<(usize, Vec3)>> {
    if edge.0 > 3 {
        return Err(Error::InvalidEdge(edge.0));
    }
    let along = if edge.0.is_multiple_of(2) { 0 } else { 1 };
    let fixed = match edge.0 {
        0 | 3 => 0.0,
        _ => 1.0,
    };
    let kv = patch.knots(along);
    let (x, w) = gauss_legendre(kv.degree() + 2);
    let mut acc: Vec<(usize, Vec3)> = Vec::new();
    for e in 0..kv.n_elements() {
        let (a, b) = kv.element_bounds(e);
        for (s, wg) in x.iter().zip(&w) {
            let u = a + 0.5 * (b - a) * (1.0 + s);
            let xi = if along == 0 { [u, fixed] } else { [fixed, u] };
            let (_, sf) = patch.shape_at(xi)?;
            let d = sf.interpolate(patch.points());
            let ds = d.a[along].norm() * 0.5 * (b - a) * wg;
            for (k, &node) in sf.nodes.iter().enumerate() {
                if sf.n[k].abs() < 1e-300 {
                    continue;
                }
                let val = sf.n[k] * ds * t0;
                match acc.iter_mut().find(|(nd, _)| *nd == node) {
                    Some((_, v)) => *v += val,
                    None => acc.push((node, val)),
                }
            }
        }
    }
    acc.sort_by_key(|(n, _)| *n);
    Ok(acc)
}
