//! Projection of B2 surface points along the B2 normal onto the faceted M1
//! surface of the same control net, carried out in the reference configuration.

use crate::geometry::{eval_bilinear, M1Mesh, NurbsPatch};
use crate::kinematics::SurfaceState;
use crate::{Error, Result, Vec3};

/// Location on the M1 mesh.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct M1Point {
    pub element: usize,
    /// Local coordinates in [-1, 1]^2.
    pub local: [f64; 2],
    /// Distance between the B2 point and its image.
    pub distance: f64,
    /// How far the unclamped image lies outside the element in local
    /// coordinates; zero unless the normal misses the M1 surface.
    pub overshoot: f64,
}

const PARAM_TOL: f64 = 1e-12;
const INSIDE_TOL: f64 = 1e-9;
const MAX_OVERSHOOT: f64 = 1.0;

/// Projects the B2 point at knot parameters `xi` onto the bilinear surface
/// spanned by `m1_points` (node positions of `m1`). Candidate elements around
/// the Greville interval are tried in ascending index order, so points on
/// shared element edges resolve to the lowest index. Near the patch boundary
/// the normal can miss the M1 surface; the point then maps to the nearest
/// candidate element with clamped local coordinates.
pub fn project_normal(patch: &NurbsPatch, m1: &M1Mesh, m1_points: &[Vec3], xi: [f64; 2]) -> Result<M1Point> {
    let d = patch.eval_surface(xi[0], xi[1])?;
    let s = SurfaceState::new(&d)?;
    project_with_frame(m1, m1_points, xi, d.x, s.a)
}

/// As [`project_normal`] with the B2 point and tangents already evaluated.
pub fn project_with_frame(m1: &M1Mesh, m1_points: &[Vec3], xi: [f64; 2], p: Vec3, tangents: [Vec3; 2]) -> Result<M1Point> {
    let [ne1, ne2] = m1.n_elements_dir();
    let locate = |dir: usize, v: f64, ne: usize| -> usize {
        let g = m1.node_params(dir);
        g.partition_point(|&x| x <= v).saturating_sub(1).min(ne - 1)
    };
    let (i0, j0) = (locate(0, xi[0], ne1), locate(1, xi[1], ne2));
    let mut candidates = Vec::with_capacity(9);
    for j in j0.saturating_sub(1)..=(j0 + 1).min(ne2 - 1) {
        for i in i0.saturating_sub(1)..=(i0 + 1).min(ne1 - 1) {
            candidates.push(m1.element_index(i, j));
        }
    }
    candidates.sort_unstable();
    let mut nearest: Option<M1Point> = None;
    for e in candidates {
        let nodes = m1.elements()[e];
        let x: Vec<Vec3> = nodes.iter().map(|&k| m1_points[k]).collect();
        let spacing = (0..4).map(|k| (x[(k + 1) % 4] - x[k]).norm()).fold(0.0, f64::max);
        let (i, j) = m1.element_ij(e);
        let g1 = m1.node_params(0);
        let g2 = m1.node_params(1);
        let seed = [
            (2.0 * (xi[0] - g1[i]) / (g1[i + 1] - g1[i]) - 1.0).clamp(-1.0, 1.0),
            (2.0 * (xi[1] - g2[j]) / (g2[j + 1] - g2[j]) - 1.0).clamp(-1.0, 1.0),
        ];
        let Some((local, dist)) = newton_on_element(&x, p, tangents, seed) else { continue };
        if dist > 2.0 * spacing {
            continue;
        }
        let overshoot = local.iter().map(|v| v.abs() - 1.0).fold(0.0, f64::max);
        let hit = M1Point {
            element: e,
            local: [local[0].clamp(-1.0, 1.0), local[1].clamp(-1.0, 1.0)],
            distance: dist,
            overshoot: if overshoot <= INSIDE_TOL { 0.0 } else { overshoot },
        };
        if hit.overshoot == 0.0 {
            return Ok(hit);
        }
        if overshoot <= MAX_OVERSHOOT && nearest.is_none_or(|n| overshoot < n.overshoot) {
            nearest = Some(hit);
        }
    }
    nearest.ok_or(Error::Projection(xi[0], xi[1]))
}

/// Solves `(X(s, t) - p) . t_a = 0` for the bilinear element with corner
/// positions `x`.
fn newton_on_element(x: &[Vec3], p: Vec3, t: [Vec3; 2], seed: [f64; 2]) -> Option<([f64; 2], f64)> {
    let mut st = seed;
    for _ in 0..50 {
        let b = eval_bilinear(st[0], st[1]);
        let mut pos = Vec3::zeros();
        let mut d = [Vec3::zeros(); 2];
        for k in 0..4 {
            pos += b.values[k] * x[k];
            d[0] += b.d1[k][0] * x[k];
            d[1] += b.d1[k][1] * x[k];
        }
        let r = pos - p;
        let f = [r.dot(&t[0]), r.dot(&t[1])];
        let j = nalgebra::Matrix2::new(d[0].dot(&t[0]), d[1].dot(&t[0]), d[0].dot(&t[1]), d[1].dot(&t[1]));
        let inv = j.try_inverse()?;
        let step = inv * nalgebra::Vector2::new(f[0], f[1]);
        st[0] -= step[0];
        st[1] -= step[1];
        if !st[0].is_finite() || !st[1].is_finite() || st[0].abs() > 10.0 || st[1].abs() > 10.0 {
            return None;
        }
        if step.norm() < PARAM_TOL {
            let b = eval_bilinear(st[0], st[1]);
            let pos: Vec3 = (0..4).map(|k| b.values[k] * x[k]).sum();
            return Some((st, (pos - p).norm()));
        }
    }
    None
}
