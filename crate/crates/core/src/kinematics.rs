//! Pointwise surface geometry and strain measures.

use crate::geometry::PointDerivatives;
use crate::{Error, Mat2, Mat3, Result, Vec3};

/// Differential geometry of a surface at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceState {
    pub x: Vec3,
    /// Covariant tangent vectors a_1, a_2.
    pub a: [Vec3; 2],
    /// Contravariant (dual) tangent vectors a^1, a^2.
    pub a_dual: [Vec3; 2],
    /// Second derivatives a_{1,1}, a_{2,2}, a_{1,2}.
    pub da: [Vec3; 3],
    /// Covariant metric a_{ab}.
    pub metric: Mat2,
    /// Contravariant metric a^{ab}.
    pub inv_metric: Mat2,
    /// Covariant curvature components b_{ab}.
    pub curvature: Mat2,
    /// Unit normal along a_1 x a_2.
    pub normal: Vec3,
    /// Christoffel symbols: `christoffel[g][k]` is Gamma^g_{ab} with `k`
    /// indexing (11, 22, 12).
    pub christoffel: [[f64; 3]; 2],
    /// Area element sqrt(det a_{ab}).
    pub area: f64,
}

/// Membrane and bending strain components (covariant).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrainState {
    pub eps: Mat2,
    pub kappa: Mat2,
    pub linear: bool,
}

/// Index pairs in (11, 22, 12) order.
pub const VOIGT: [(usize, usize); 3] = [(0, 0), (1, 1), (0, 1)];

impl SurfaceState {
    pub fn new(d: &PointDerivatives) -> Result<Self> {
        let [a1, a2] = d.a;
        let cross = a1.cross(&a2);
        let cn = cross.norm();
        let scale = a1.norm() * a2.norm();
        if !(cn >= 1e-14 * scale) || scale == 0.0 {
            return Err(Error::SingularSurface { cross: cn, scale });
        }
        let normal = cross / cn;
        let metric = Mat2::new(a1.dot(&a1), a1.dot(&a2), a2.dot(&a1), a2.dot(&a2));
        let det = metric[(0, 0)] * metric[(1, 1)] - metric[(0, 1)] * metric[(1, 0)];
        let inv_metric = Mat2::new(metric[(1, 1)], -metric[(0, 1)], -metric[(1, 0)], metric[(0, 0)]) / det;
        let a_dual = [
            inv_metric[(0, 0)] * a1 + inv_metric[(0, 1)] * a2,
            inv_metric[(1, 0)] * a1 + inv_metric[(1, 1)] * a2,
        ];
        let b11 = d.da[0].dot(&normal);
        let b22 = d.da[1].dot(&normal);
        let b12 = d.da[2].dot(&normal);
        let mut christoffel = [[0.0; 3]; 2];
        for g in 0..2 {
            for k in 0..3 {
                christoffel[g][k] = d.da[k].dot(&a_dual[g]);
            }
        }
        Ok(Self {
            x: d.x,
            a: d.a,
            a_dual,
            da: d.da,
            metric,
            inv_metric,
            curvature: Mat2::new(b11, b12, b12, b22),
            normal,
            christoffel,
            area: det.sqrt(),
        })
    }

    /// Mixed curvature b^a_b as the matrix `a^{ag} b_{gb}`.
    pub fn mixed_curvature(&self) -> Mat2 {
        self.inv_metric * self.curvature
    }

    /// Area change J relative to `reference`.
    pub fn area_change(&self, reference: &SurfaceState) -> f64 {
        self.area / reference.area
    }

    /// Embeds a tensor given by contravariant components into 3D:
    /// `t^{ab} a_a (x) a_b`.
    pub fn embed(&self, t: &Mat2) -> Mat3 {
        let mut out = Mat3::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out += t[(i, j)] * self.a[i] * self.a[j].transpose();
            }
        }
        out
    }

    /// Contravariant components of an embedded tangential tensor.
    pub fn contravariant(&self, t: &Mat3) -> Mat2 {
        let mut out = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = self.a_dual[i].dot(&(t * self.a_dual[j]));
            }
        }
        out
    }

    /// Physical component `e_a . T e_b` of an embedded tensor with respect to
    /// the unit tangents `e_a = a_a / |a_a|`.
    pub fn physical(&self, t: &Mat3, i: usize, j: usize) -> f64 {
        let ei = self.a[i].normalize();
        let ej = self.a[j].normalize();
        ei.dot(&(t * ej))
    }
}

/// Green-Lagrange membrane strain and relative curvature.
pub fn strains_gl(reference: &SurfaceState, current: &SurfaceState) -> StrainState {
    StrainState {
        eps: 0.5 * (current.metric - reference.metric),
        kappa: current.curvature - reference.curvature,
        linear: false,
    }
}

/// Green-Lagrange strains evaluated from the displacement derivatives `du`
/// instead of differences of current and reference quantities:
/// `eps_ab = (A_a . u_,b + A_b . u_,a + u_,a . u_,b) / 2` and
/// `kappa_ab = u_,ab . n + X_,ab . (n - N)`, with `n - N` formed from the
/// increment of `a_1 x a_2`. Equal to [`strains_gl`] up to round-off, but
/// accurate for displacements far below the size of the coordinates.
pub fn strains_gl_displacement(reference: &SurfaceState, current: &SurfaceState, du: &PointDerivatives) -> StrainState {
    let [a1, a2] = reference.a;
    let [u1, u2] = du.a;
    let mut eps = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            eps[(i, j)] = 0.5 * (reference.a[i].dot(&du.a[j]) + reference.a[j].dot(&du.a[i]) + du.a[i].dot(&du.a[j]));
        }
    }
    let c0 = a1.cross(&a2);
    let dc = a1.cross(&u2) + u1.cross(&a2) + u1.cross(&u2);
    let (l0, l1) = (c0.norm(), (c0 + dc).norm());
    let dl = (2.0 * c0.dot(&dc) + dc.norm_squared()) / (l0 + l1);
    let dn = dc / l1 - c0 * (dl / (l0 * l1));
    let mut k = [0.0; 3];
    for (v, kv) in k.iter_mut().enumerate() {
        *kv = du.da[v].dot(&current.normal) + reference.da[v].dot(&dn);
    }
    StrainState {
        eps,
        kappa: Mat2::new(k[0], k[2], k[2], k[1]),
        linear: false,
    }
}

/// Infinitesimal strains for the displacement derivatives `du` at a point of
/// the reference surface.
pub fn strains_linear(reference: &SurfaceState, du: &PointDerivatives) -> StrainState {
    let mut eps = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            eps[(i, j)] = 0.5 * (du.a[i].dot(&reference.a[j]) + du.a[j].dot(&reference.a[i]));
        }
    }
    let mut k = [0.0; 3];
    for (v, kv) in k.iter_mut().enumerate() {
        let g = &reference.christoffel;
        *kv = (du.da[v] - g[0][v] * du.a[0] - g[1][v] * du.a[1]).dot(&reference.normal);
    }
    StrainState {
        eps,
        kappa: Mat2::new(k[0], k[2], k[2], k[1]),
        linear: true,
    }
}
