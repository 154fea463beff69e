//! Relative L2 error norms against a reference field.

use super::recovery::{CornerFields, Evaluator};
use crate::element::ElementSet;
use crate::hybrid::Discretization;
use crate::{Error, Execution, Mat3, Result, Vec3};

/// Reference solution, evaluated at knot parameters `xi` and reference
/// position `x`. Tensors are embedded in 3D like the recovered fields.
/// Quantities without a reference return `None`.
pub trait ReferenceField: Sync {
    fn displacement(&self, xi: [f64; 2], x: &Vec3) -> Option<Vec3>;
    fn sigma(&self, xi: [f64; 2], x: &Vec3) -> Option<Mat3>;
    fn moment(&self, xi: [f64; 2], x: &Vec3) -> Option<Mat3>;
    fn cauchy(&self, xi: [f64; 2], x: &Vec3) -> Option<Mat3>;
}

/// Relative L2 errors; `None` where the reference does not provide the field.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub e_u: Option<f64>,
    pub e_sigma: Option<f64>,
    pub e_moment: Option<f64>,
    /// Cauchy stress from raw recovery.
    pub e_cauchy: Option<f64>,
    /// Cauchy stress from corner interpolation (hybrid meshes only).
    pub e_cauchy_interpolated: Option<f64>,
    pub n_dof: usize,
    pub discretization: Discretization,
}

/// `|computed / reference - 1|`.
pub fn max_value_error(computed: f64, reference: f64) -> f64 {
    (computed / reference - 1.0).abs()
}

#[derive(Default, Clone, Copy)]
struct Acc {
    diff: f64,
    norm: f64,
    present: bool,
}

impl Acc {
    fn add(&mut self, diff: f64, norm: f64) {
        self.diff += diff;
        self.norm += norm;
        self.present = true;
    }

    fn merge(&mut self, o: Acc) {
        self.diff += o.diff;
        self.norm += o.norm;
        self.present |= o.present;
    }

    fn finish(self) -> Option<f64> {
        self.present.then(|| {
            if self.norm == 0.0 {
                self.diff.sqrt()
            } else {
                (self.diff / self.norm).sqrt()
            }
        })
    }
}

fn frob2(m: &Mat3) -> f64 {
    m.iter().map(|v| v * v).sum()
}

/// Integrates errors of `u`, `M` and `N` over the B2 surface with the
/// element quadrature and of `sigma` over the M1 surface with 2 x 2 Gauss
/// points (over B2 for single-set discretizations).
pub fn error_norms(ev: &Evaluator<'_>, reference: &dyn ReferenceField, n_dof: usize, exec: Execution) -> Result<ErrorReport> {
    let mesh = ev.mesh();
    let patch = mesh.patch();
    let hybrid = mesh.m1().is_some();
    let corners: Option<CornerFields> = if hybrid { Some(ev.corner_fields(exec)?) } else { None };
    let rule = mesh.bending.rule().clone();
    let b2_parts = exec.map_range(0..patch.n_elements(), |e| -> Result<[Acc; 5]> {
        let mut acc = [Acc::default(); 5];
        let qps = mesh.bending.quad_points(e);
        for (qp, pt) in qps.iter().zip(&rule.points) {
            let (xi, _) = patch.local_to_param(e, pt[0], pt[1]);
            let b2 = ev.b2_in_element(e, xi)?;
            let da = b2.reference.area * qp.weight;
            let x = b2.reference.x;
            if let Some(r) = reference.displacement(xi, &x) {
                acc[0].add((b2.u - r).norm_squared() * da, r.norm_squared() * da);
            }
            if let Some(r) = reference.moment(xi, &x) {
                acc[2].add(frob2(&(b2.moment - r)) * da, frob2(&r) * da);
            }
            if !hybrid {
                if let Some(r) = reference.sigma(xi, &x) {
                    acc[1].add(frob2(&(b2.sigma - r)) * da, frob2(&r) * da);
                }
            }
            if let Some(r) = reference.cauchy(xi, &x) {
                let (sigma, _, _) = ev.sigma_at(&b2, xi)?;
                let n = b2.cauchy(&sigma, &b2.moment);
                acc[3].add(frob2(&(n - r)) * da, frob2(&r) * da);
                if let Some(c) = &corners {
                    let (s2, m2) = c.interpolate(patch.element_ij(e), pt[0], pt[1]);
                    let n2 = b2.cauchy(&s2, &m2);
                    acc[4].add(frob2(&(n2 - r)) * da, frob2(&r) * da);
                }
            }
        }
        Ok(acc)
    });
    let mut total = [Acc::default(); 5];
    for part in b2_parts {
        for (t, a) in total.iter_mut().zip(part?) {
            t.merge(a);
        }
    }
    if let Some(m1) = mesh.m1() {
        let (g, w) = crate::element::gauss_legendre(2);
        let parts = exec.map_range(0..m1.n_elements(), |e| -> Result<Acc> {
            let mut acc = Acc::default();
            for (gs, ws) in g.iter().zip(&w) {
                for (gt, wt) in g.iter().zip(&w) {
                    let xi = m1.local_to_param(e, *gs, *gt);
                    let x = patch.eval_surface(xi[0], xi[1])?.x;
                    let Some(r) = reference.sigma(xi, &x) else { continue };
                    let da = ev.m1_area(e, *gs, *gt)? * ws * wt;
                    let s = ev.m1_sigma(e, *gs, *gt)?;
                    acc.add(frob2(&(s - r)) * da, frob2(&r) * da);
                }
            }
            Ok(acc)
        });
        for part in parts {
            total[1].merge(part?);
        }
    }
    let report = ErrorReport {
        e_u: total[0].finish(),
        e_sigma: total[1].finish(),
        e_moment: total[2].finish(),
        e_cauchy: total[3].finish(),
        e_cauchy_interpolated: total[4].finish(),
        n_dof,
        discretization: mesh.discretization,
    };
    if report.e_u.is_none() && report.e_sigma.is_none() && report.e_moment.is_none() && report.e_cauchy.is_none() {
        return Err(Error::MissingReference("reference provides no fields".into()));
    }
    Ok(report)
}
