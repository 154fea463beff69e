//! Stress evaluation on the B2 and M1 surfaces and the recovery procedures.
//!
//! All tensors are stored embedded in 3D (`t^{ab} a_a (x) a_b` in the current
//! configuration, the reference one in linear mode), which makes values from
//! the two surfaces directly comparable.

use super::projection::{project_with_frame, M1Point};
use crate::element::{membrane_derivatives, ElementKind, ElementSet, KinematicMode};
use crate::geometry::{eval_bilinear, PointDerivatives};
use crate::hybrid::HybridMesh;
use crate::kinematics::{strains_gl_displacement, strains_linear, SurfaceState};
use crate::material::{cauchy_membrane, elasticity_tensors, stress_resultants, KoiterMaterial};
use crate::{Error, Execution, Mat3, Result, Vec3};

/// Surface on which the membrane stress of a sample was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Surface {
    B2,
    M1,
}

impl Surface {
    pub fn tag(self) -> &'static str {
        match self {
            Surface::B2 => "B2",
            Surface::M1 => "M1",
        }
    }
}

/// Stress state at one sample point.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSample {
    /// B2 element for procedure samples, M1 element for constant recovery.
    pub element: usize,
    pub xi: [f64; 2],
    /// Reference position.
    pub x: Vec3,
    pub u: Vec3,
    /// Effective membrane stress.
    pub sigma: Mat3,
    /// Bending stress couple.
    pub moment: Mat3,
    /// Cauchy membrane stress.
    pub cauchy: Mat3,
    pub surface: Surface,
    /// Element of `surface` that supplied the membrane stress.
    pub source: usize,
    /// Unit tangents of the B2 surface used for physical components.
    pub frame: [Vec3; 2],
}

/// Tensor selector for scalar output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Sigma,
    Moment,
    Cauchy,
}

impl FieldSample {
    pub fn tensor(&self, q: Quantity) -> &Mat3 {
        match q {
            Quantity::Sigma => &self.sigma,
            Quantity::Moment => &self.moment,
            Quantity::Cauchy => &self.cauchy,
        }
    }

    /// Physical component `e_i . T e_j` along the unit B2 tangents.
    pub fn physical(&self, q: Quantity, i: usize, j: usize) -> f64 {
        self.frame[i].dot(&(self.tensor(q) * self.frame[j]))
    }
}

/// B2 evaluation at one parametric point.
#[derive(Clone, Debug)]
pub struct B2Point {
    pub element: usize,
    pub reference: SurfaceState,
    /// Configuration used for embedding (the reference one in linear mode).
    pub current: SurfaceState,
    pub u: Vec3,
    /// Membrane stress of the B2 element itself (zero for bending-only elements).
    pub sigma: Mat3,
    pub moment: Mat3,
}

impl B2Point {
    fn frame(&self) -> [Vec3; 2] {
        [self.current.a[0].normalize(), self.current.a[1].normalize()]
    }

    /// Cauchy membrane stress for a membrane stress supplied from elsewhere.
    pub fn cauchy(&self, sigma: &Mat3, moment: &Mat3) -> Mat3 {
        let c = &self.current;
        let n = cauchy_membrane(&c.contravariant(sigma), &c.contravariant(moment), &c.mixed_curvature());
        c.embed(&n)
    }
}

/// Stress evaluator for a solved displacement field.
pub struct Evaluator<'a> {
    mesh: &'a HybridMesh,
    material: KoiterMaterial,
    mode: KinematicMode,
    u: Vec<Vec3>,
    x_cur: Vec<Vec3>,
    x_ref_m: Vec<Vec3>,
    x_cur_m: Vec<Vec3>,
    u_m: Vec<Vec3>,
}

impl<'a> Evaluator<'a> {
    pub fn new(mesh: &'a HybridMesh, material: KoiterMaterial, mode: KinematicMode, u: &[Vec3]) -> Result<Self> {
        if u.len() != mesh.n_nodes() {
            return Err(Error::Dimension {
                expected: mesh.n_nodes(),
                got: u.len(),
            });
        }
        let x_cur: Vec<Vec3> = mesh.patch().points().iter().zip(u).map(|(x, d)| x + d).collect();
        let x_ref_m = mesh.membrane_reference();
        let x_cur_m = mesh.w.apply_transpose(&x_cur)?;
        let u_m = x_cur_m.iter().zip(&x_ref_m).map(|(a, b)| a - b).collect();
        Ok(Self {
            mesh,
            material,
            mode,
            u: u.to_vec(),
            x_cur,
            x_ref_m,
            x_cur_m,
            u_m,
        })
    }

    pub fn mesh(&self) -> &HybridMesh {
        self.mesh
    }

    pub fn displacement(&self) -> &[Vec3] {
        &self.u
    }

    /// Reference positions of the M1 nodes.
    pub fn m1_reference(&self) -> &[Vec3] {
        &self.x_ref_m
    }

    fn material_for(&self, kind: ElementKind) -> KoiterMaterial {
        let mut m = self.material;
        m.membrane &= kind.has_membrane();
        m.bending &= kind.has_bending();
        m
    }

    /// Evaluates the B2 element `element` at parameters `xi` (which may lie on
    /// the element boundary).
    pub fn b2_in_element(&self, element: usize, xi: [f64; 2]) -> Result<B2Point> {
        let patch = self.mesh.patch();
        let sf = patch.shape_in_element(element, xi);
        let rd = sf.interpolate(patch.points());
        let rs = SurfaceState::new(&rd)?;
        let mat = self.material_for(self.mesh.bending.kind());
        let tensors = elasticity_tensors(&rs.inv_metric, &mat);
        let (cs, strain) = match self.mode {
            KinematicMode::Linear => {
                let du = sf.interpolate(&self.u);
                (rs, strains_linear(&rs, &du))
            }
            KinematicMode::Nonlinear => {
                let cs = SurfaceState::new(&sf.interpolate(&self.x_cur))?;
                let du = sf.interpolate(&self.u);
                let strain = strains_gl_displacement(&rs, &cs, &du);
                (cs, strain)
            }
        };
        let st = stress_resultants(&strain, &tensors, cs.area_change(&rs))?;
        let u = sf.n.iter().zip(&sf.nodes).map(|(n, &k)| *n * self.u[k]).sum();
        Ok(B2Point {
            element,
            sigma: cs.embed(&st.sigma),
            moment: cs.embed(&st.m),
            reference: rs,
            current: cs,
            u,
        })
    }

    pub fn b2_point(&self, xi: [f64; 2]) -> Result<B2Point> {
        let (e, _) = self.mesh.patch().shape_at(xi)?;
        self.b2_in_element(e, xi)
    }

    fn m1_derivatives(&self, e: usize, s: f64, t: f64, x: &[Vec3]) -> Result<PointDerivatives> {
        let m1 = self.mesh.m1().ok_or_else(|| Error::Construction("mesh has no M1 elements".into()))?;
        let sf = m1.shape_at(e, s, t);
        let local: Vec<Vec3> = sf.nodes.iter().map(|&k| x[k]).collect();
        Ok(membrane_derivatives(&sf, &local))
    }

    /// Effective membrane stress of M1 element `e` at local coordinates.
    pub fn m1_sigma(&self, e: usize, s: f64, t: f64) -> Result<Mat3> {
        let rs = SurfaceState::new(&self.m1_derivatives(e, s, t, &self.x_ref_m)?)?;
        let mat = self.material_for(ElementKind::MembraneOnly);
        let tensors = elasticity_tensors(&rs.inv_metric, &mat);
        let (cs, strain) = match self.mode {
            KinematicMode::Linear => {
                let d = self.m1_derivatives(e, s, t, &self.u_m)?;
                (rs, strains_linear(&rs, &d))
            }
            KinematicMode::Nonlinear => {
                let cs = SurfaceState::new(&self.m1_derivatives(e, s, t, &self.x_cur_m)?)?;
                let du = self.m1_derivatives(e, s, t, &self.u_m)?;
                let strain = strains_gl_displacement(&rs, &cs, &du);
                (cs, strain)
            }
        };
        let st = stress_resultants(&strain, &tensors, cs.area_change(&rs))?;
        Ok(cs.embed(&st.sigma))
    }

    /// Reference area element of M1 element `e` at local coordinates.
    pub fn m1_area(&self, e: usize, s: f64, t: f64) -> Result<f64> {
        Ok(SurfaceState::new(&self.m1_derivatives(e, s, t, &self.x_ref_m)?)?.area)
    }

    /// Projects the reference B2 point onto the M1 surface.
    pub fn project(&self, b2: &B2Point, xi: [f64; 2]) -> Result<M1Point> {
        let m1 = self.mesh.m1().ok_or_else(|| Error::Construction("mesh has no M1 elements".into()))?;
        project_with_frame(m1, &self.x_ref_m, xi, b2.reference.x, b2.reference.a)
    }

    /// Membrane stress at a B2 point: from the M1 surface for hybrid meshes,
    /// from the B2 element otherwise. Also returns the supplying element, or
    /// `None` for the B2 element of the evaluation point.
    pub fn sigma_at(&self, b2: &B2Point, xi: [f64; 2]) -> Result<(Mat3, Surface, Option<usize>)> {
        if self.mesh.m1().is_some() {
            let p = self.project(b2, xi)?;
            Ok((self.m1_sigma(p.element, p.local[0], p.local[1])?, Surface::M1, Some(p.element)))
        } else {
            Ok((b2.sigma, Surface::B2, None))
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn sample(&self, b2: &B2Point, xi: [f64; 2], sigma: Mat3, moment: Mat3, surface: Surface, element: usize, source: usize) -> FieldSample {
        FieldSample {
            element,
            source,
            xi,
            x: b2.reference.x,
            u: b2.u,
            cauchy: b2.cauchy(&sigma, &moment),
            sigma,
            moment,
            surface,
            frame: b2.frame(),
        }
    }

    /// Procedure 1: raw stresses on an `n x n` grid per B2 element that
    /// includes the element boundaries. Ordered by element, then with the
    /// first local coordinate varying slowest.
    pub fn recover_raw(&self, n: usize, exec: Execution) -> Result<Vec<FieldSample>> {
        let grid = local_grid(n);
        let patch = self.mesh.patch();
        let parts = exec.map_range(0..patch.n_elements(), |e| -> Result<Vec<FieldSample>> {
            let mut out = Vec::with_capacity(n * n);
            for &s in &grid {
                for &t in &grid {
                    let (xi, _) = patch.local_to_param(e, s, t);
                    let b2 = self.b2_in_element(e, xi)?;
                    let (sigma, surf, source) = self.sigma_at(&b2, xi)?;
                    out.push(self.sample(&b2, xi, sigma, b2.moment, surf, e, source.unwrap_or(e)));
                }
            }
            Ok(out)
        });
        flatten(parts)
    }

    /// Vertex values used by procedure 2.
    pub fn corner_fields(&self, exec: Execution) -> Result<CornerFields> {
        let patch = self.mesh.patch();
        let [m1, m2] = patch.n_elements_dir();
        let b = [patch.knots(0).breaks(), patch.knots(1).breaks()];
        let nv = (m1 + 1) * (m2 + 1);
        let sigma = exec.map_range(0..nv, |v| -> Result<Mat3> {
            let (i, j) = (v % (m1 + 1), v / (m1 + 1));
            let xi = [b[0][i].0, b[1][j].0];
            let b2 = self.b2_point(xi)?;
            Ok(self.sigma_at(&b2, xi)?.0)
        });
        let sigma = sigma.into_iter().collect::<Result<Vec<_>>>()?;
        let per_element = exec.map_range(0..patch.n_elements(), |e| -> Result<[Mat3; 4]> {
            let mut out = [Mat3::zeros(); 4];
            for (k, (s, t)) in CORNERS.iter().enumerate() {
                let (xi, _) = patch.local_to_param(e, *s, *t);
                out[k] = self.b2_in_element(e, xi)?.moment;
            }
            Ok(out)
        });
        let mut moment = vec![Mat3::zeros(); nv];
        let mut count = vec![0usize; nv];
        for (e, m) in per_element.into_iter().enumerate() {
            let m = m?;
            let (e1, e2) = patch.element_ij(e);
            for (k, (di, dj)) in CORNER_OFFSETS.iter().enumerate() {
                let v = (e1 + di) + (m1 + 1) * (e2 + dj);
                moment[v] += m[k];
                count[v] += 1;
            }
        }
        for (m, c) in moment.iter_mut().zip(&count) {
            *m /= *c as f64;
        }
        Ok(CornerFields {
            n1: m1 + 1,
            sigma,
            moment,
        })
    }

    /// Procedure 2: membrane stress and averaged moments at B2 element corners,
    /// bilinearly interpolated over each element.
    pub fn recover_interpolated(&self, n: usize, exec: Execution) -> Result<Vec<FieldSample>> {
        let corners = self.corner_fields(exec)?;
        let grid = local_grid(n);
        let patch = self.mesh.patch();
        let surface = if self.mesh.m1().is_some() { Surface::M1 } else { Surface::B2 };
        let parts = exec.map_range(0..patch.n_elements(), |e| -> Result<Vec<FieldSample>> {
            let mut out = Vec::with_capacity(n * n);
            for &s in &grid {
                for &t in &grid {
                    let (xi, _) = patch.local_to_param(e, s, t);
                    let b2 = self.b2_in_element(e, xi)?;
                    let (sigma, moment) = corners.interpolate(patch.element_ij(e), s, t);
                    out.push(self.sample(&b2, xi, sigma, moment, surface, e, e));
                }
            }
            Ok(out)
        });
        flatten(parts)
    }

    /// Constant stress of every M1 element, evaluated at its center.
    pub fn recover_constant(&self, exec: Execution) -> Result<Vec<FieldSample>> {
        let m1 = self.mesh.m1().ok_or_else(|| Error::Construction("constant recovery needs M1 elements".into()))?;
        let parts = exec.map_range(0..m1.n_elements(), |e| -> Result<Vec<FieldSample>> {
            let xi = m1.local_to_param(e, 0.0, 0.0);
            let b2 = self.b2_point(xi)?;
            let sigma = self.m1_sigma(e, 0.0, 0.0)?;
            Ok(vec![self.sample(&b2, xi, sigma, b2.moment, Surface::M1, e, e)])
        });
        flatten(parts)
    }
}

/// Local corner coordinates in the order used by [`CornerFields`].
const CORNERS: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];
const CORNER_OFFSETS: [(usize, usize); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];

/// Membrane stress and averaged moments at the vertices of the B2 element grid.
#[derive(Clone, Debug)]
pub struct CornerFields {
    n1: usize,
    pub sigma: Vec<Mat3>,
    pub moment: Vec<Mat3>,
}

impl CornerFields {
    /// Bilinear interpolation inside B2 element `(e1, e2)`.
    pub fn interpolate(&self, (e1, e2): (usize, usize), s: f64, t: f64) -> (Mat3, Mat3) {
        let b = eval_bilinear(s, t);
        let mut sigma = Mat3::zeros();
        let mut moment = Mat3::zeros();
        for (k, (di, dj)) in CORNER_OFFSETS.iter().enumerate() {
            let v = (e1 + di) + self.n1 * (e2 + dj);
            sigma += b.values[k] * self.sigma[v];
            moment += b.values[k] * self.moment[v];
        }
        (sigma, moment)
    }
}

/// `n` equally spaced local coordinates from -1 to 1.
pub fn local_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| -1.0 + 2.0 * k as f64 / (n - 1) as f64).collect(),
    }
}

fn flatten(parts: Vec<Result<Vec<FieldSample>>>) -> Result<Vec<FieldSample>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}
