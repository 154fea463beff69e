//! Pointwise integrands of the shell element and their accumulation.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use super::{ElementKind, KinematicMode};
use crate::geometry::ShapeFunctions;
use crate::kinematics::{strains_gl_displacement, strains_linear, SurfaceState};
use crate::material::{elasticity_tensors, energy_density, stress_resultants, KoiterMaterial};
use crate::{Mat3, Result, Vec3};

/// Shape functions at one quadrature point together with the weight that
/// converts the integrand per unit reference area into a contribution
/// (Gauss weight times the parametric Jacobian).
#[derive(Clone, Debug, PartialEq)]
pub struct QuadPoint {
    pub shape: ShapeFunctions,
    pub weight: f64,
}

/// Element internal force, tangent parts and stored energy.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementMatrices {
    pub f_int: DVector<f64>,
    pub k_mat: DMatrix<f64>,
    pub k_geo: DMatrix<f64>,
    pub energy: f64,
}

impl ElementMatrices {
    fn zeros(n: usize) -> Self {
        Self {
            f_int: DVector::zeros(3 * n),
            k_mat: DMatrix::zeros(3 * n, 3 * n),
            k_geo: DMatrix::zeros(3 * n, 3 * n),
            energy: 0.0,
        }
    }

    pub fn tangent(&self) -> DMatrix<f64> {
        &self.k_mat + &self.k_geo
    }
}

/// Covariant second derivatives `N_{;ab} = N_{,ab} - Gamma^g_{ab} N_{,g}` in
/// (11, 22, 12) order.
pub fn covariant_second_derivatives(shape: &ShapeFunctions, christoffel: &[[f64; 3]; 2]) -> Vec<[f64; 3]> {
    shape
        .ddn
        .iter()
        .zip(&shape.dn)
        .map(|(dd, d)| {
            let mut out = [0.0; 3];
            for k in 0..3 {
                out[k] = dd[k] - christoffel[0][k] * d[0] - christoffel[1][k] * d[1];
            }
            out
        })
        .collect()
}

fn add_block(k: &mut DMatrix<f64>, i: usize, j: usize, b: &Mat3) {
    for r in 0..3 {
        for c in 0..3 {
            k[(3 * i + r, 3 * j + c)] += b[(r, c)];
        }
    }
}

/// Integrates one element.
///
/// `x_ref` and `u` hold the reference positions and displacements in local
/// order. In linear mode the element is evaluated on the reference geometry,
/// the internal force equals `k_mat u` and `k_geo` vanishes. With
/// `want_tangent = false` only forces and energy are formed.
pub fn evaluate_element(
    qps: &[QuadPoint],
    x_ref: &[Vec3],
    disp: &[Vec3],
    mat: &KoiterMaterial,
    kind: ElementKind,
    mode: KinematicMode,
    want_tangent: bool,
) -> Result<ElementMatrices> {
    let n = x_ref.len();
    let mut out = ElementMatrices::zeros(n);
    let mut mat = *mat;
    mat.membrane &= kind.has_membrane();
    mat.bending &= kind.has_bending();
    let (memb, bend) = (mat.membrane, mat.bending);
    let linear = mode == KinematicMode::Linear;
    let x_cur: Vec<Vec3> = x_ref.iter().zip(disp).map(|(x, u)| x + u).collect();
    let mut bm: Vec<Matrix3<f64>> = vec![Matrix3::zeros(); n];
    let mut bb: Vec<Matrix3<f64>> = vec![Matrix3::zeros(); n];
    for qp in qps {
        let sf = &qp.shape;
        let rd = if bend { sf.interpolate_local(x_ref) } else { membrane_derivatives(sf, x_ref) };
        let rs = SurfaceState::new(&rd)?;
        let tensors = elasticity_tensors(&rs.inv_metric, &mat);
        let da = rs.area * qp.weight;
        let (cs, strain) = if linear {
            let du = sf.interpolate_local(disp);
            (rs, strains_linear(&rs, &du))
        } else {
            let (cd, du) = if bend {
                (sf.interpolate_local(&x_cur), sf.interpolate_local(disp))
            } else {
                (membrane_derivatives(sf, &x_cur), membrane_derivatives(sf, disp))
            };
            let cs = SurfaceState::new(&cd)?;
            (cs, strains_gl_displacement(&rs, &cs, &du))
        };
        let stress = stress_resultants(&strain, &tensors, cs.area_change(&rs))?;
        out.energy += energy_density(&strain, &tensors) * da;

        if memb {
            let [a1, a2] = cs.a;
            for i in 0..n {
                let [d1, d2] = sf.dn[i];
                let r0 = d1 * a1;
                let r1 = d2 * a2;
                let r2 = d1 * a2 + d2 * a1;
                bm[i] = Matrix3::from_rows(&[r0.transpose(), r1.transpose(), r2.transpose()]);
            }
            let tau = stress.tau;
            let tv = Vector3::new(tau[(0, 0)], tau[(1, 1)], tau[(0, 1)]);
            for i in 0..n {
                let fi = bm[i].transpose() * tv * da;
                for c in 0..3 {
                    out.f_int[3 * i + c] += fi[c];
                }
            }
            if want_tangent {
                let dc = tensors.c_voigt * da;
                for i in 0..n {
                    let bid = bm[i].transpose() * dc;
                    for j in i..n {
                        let blk = bid * bm[j];
                        add_block(&mut out.k_mat, i, j, &blk);
                        if j != i {
                            add_block(&mut out.k_mat, j, i, &blk.transpose());
                        }
                    }
                }
                if !linear {
                    for i in 0..n {
                        let gi = tau * Vector3::new(sf.dn[i][0], sf.dn[i][1], 0.0).xy();
                        for j in i..n {
                            let s = (gi[0] * sf.dn[j][0] + gi[1] * sf.dn[j][1]) * da;
                            for c in 0..3 {
                                out.k_geo[(3 * i + c, 3 * j + c)] += s;
                                if j != i {
                                    out.k_geo[(3 * j + c, 3 * i + c)] += s;
                                }
                            }
                        }
                    }
                }
            }
        }

        if bend {
            let nrm = cs.normal;
            let nsd = covariant_second_derivatives(sf, &cs.christoffel);
            for i in 0..n {
                let [s11, s22, s12] = nsd[i];
                bb[i] = Matrix3::from_rows(&[
                    (s11 * nrm).transpose(),
                    (s22 * nrm).transpose(),
                    (2.0 * s12 * nrm).transpose(),
                ]);
            }
            let m0 = stress.m0;
            let mv = Vector3::new(m0[(0, 0)], m0[(1, 1)], m0[(0, 1)]);
            for i in 0..n {
                let fi = bb[i].transpose() * mv * da;
                for c in 0..3 {
                    out.f_int[3 * i + c] += fi[c];
                }
            }
            if want_tangent {
                let df = tensors.f_voigt * da;
                for i in 0..n {
                    let bid = bb[i].transpose() * df;
                    for j in i..n {
                        let blk = bid * bb[j];
                        add_block(&mut out.k_mat, i, j, &blk);
                        if j != i {
                            add_block(&mut out.k_mat, j, i, &blk.transpose());
                        }
                    }
                }
                if !linear {
                    let b = cs.curvature;
                    let mb = m0[(0, 0)] * b[(0, 0)] + m0[(1, 1)] * b[(1, 1)] + 2.0 * m0[(0, 1)] * b[(0, 1)];
                    let nn = nrm * nrm.transpose();
                    let m: Vec<f64> = nsd
                        .iter()
                        .map(|s| m0[(0, 0)] * s[0] + m0[(1, 1)] * s[1] + 2.0 * m0[(0, 1)] * s[2])
                        .collect();
                    let g: Vec<Vec3> = sf.dn.iter().map(|d| d[0] * cs.a_dual[0] + d[1] * cs.a_dual[1]).collect();
                    let ai = cs.inv_metric;
                    for i in 0..n {
                        for j in 0..n {
                            let (di, dj) = (sf.dn[i], sf.dn[j]);
                            let q = di[0] * (ai[(0, 0)] * dj[0] + ai[(0, 1)] * dj[1])
                                + di[1] * (ai[(1, 0)] * dj[0] + ai[(1, 1)] * dj[1]);
                            let blk = (-mb * q) * nn - m[j] * nrm * g[i].transpose() - m[i] * g[j] * nrm.transpose();
                            add_block(&mut out.k_geo, i, j, &(blk * da));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// First derivatives only; the second derivatives are irrelevant to the
/// membrane part and are set to zero so that no curvature enters.
pub fn membrane_derivatives(sf: &ShapeFunctions, x: &[Vec3]) -> crate::geometry::PointDerivatives {
    let mut d = crate::geometry::PointDerivatives {
        x: Vec3::zeros(),
        a: [Vec3::zeros(); 2],
        da: [Vec3::zeros(); 3],
    };
    for i in 0..x.len() {
        d.x += sf.n[i] * x[i];
        d.a[0] += sf.dn[i][0] * x[i];
        d.a[1] += sf.dn[i][1] * x[i];
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{ElementSet, LagrangeElements, NurbsElements};
    use crate::geometry::{make_hemisphere, M1Mesh};
    use nalgebra::Rotation3;
    use rand::{Rng, SeedableRng};

    struct Case {
        qps: Vec<QuadPoint>,
        x_ref: Vec<Vec3>,
        kind: ElementKind,
    }

    fn cases() -> Vec<Case> {
        let patch = make_hemisphere(3, 2).unwrap();
        let mut out = Vec::new();
        for kind in [ElementKind::Full, ElementKind::BendingOnly] {
            let set = NurbsElements::new(patch.clone(), kind);
            let nodes = set.element_nodes(4);
            out.push(Case {
                qps: set.quad_points(4),
                x_ref: nodes.iter().map(|&n| patch.points()[n]).collect(),
                kind,
            });
        }
        let set = LagrangeElements::new(M1Mesh::from_patch(&patch), ElementKind::MembraneOnly);
        let nodes = set.element_nodes(7);
        out.push(Case {
            qps: set.quad_points(7),
            x_ref: nodes.iter().map(|&n| patch.points()[n]).collect(),
            kind: ElementKind::MembraneOnly,
        });
        let cubic = make_hemisphere(2, 3).unwrap();
        let set = NurbsElements::new(cubic.clone(), ElementKind::Full);
        out.push(Case {
            qps: set.quad_points(3),
            x_ref: set.element_nodes(3).iter().map(|&n| cubic.points()[n]).collect(),
            kind: ElementKind::Full,
        });
        out
    }

    fn material() -> KoiterMaterial {
        KoiterMaterial::new(1000.0, 0.3, 0.2)
    }

    fn perturbed(x: &[Vec3], amp: f64, seed: u64) -> Vec<Vec3> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        x.iter()
            .map(|p| p + amp * Vec3::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect()
    }

    fn disp(c: &Case, x: &[Vec3]) -> Vec<Vec3> {
        x.iter().zip(&c.x_ref).map(|(a, b)| a - b).collect()
    }

    fn eval(c: &Case, x: &[Vec3], mode: KinematicMode) -> ElementMatrices {
        evaluate_element(&c.qps, &c.x_ref, &disp(c, x), &material(), c.kind, mode, true).unwrap()
    }

    fn shifted(x: &[Vec3], k: usize, h: f64) -> Vec<Vec3> {
        let mut y = x.to_vec();
        y[k / 3][k % 3] += h;
        y
    }

    #[test]
    fn reference_state_is_stress_free() {
        for c in cases() {
            for mode in [KinematicMode::Linear, KinematicMode::Nonlinear] {
                let m = eval(&c, &c.x_ref, mode);
                assert!(m.f_int.norm() < 1e-12);
                assert_eq!(m.energy, 0.0);
            }
        }
    }

    #[test]
    fn rigid_motion_gives_zero_force() {
        let rot = Rotation3::new(Vec3::new(0.3, -0.7, 0.5));
        for c in cases() {
            let scale = eval(&c, &perturbed(&c.x_ref, 0.5, 1), KinematicMode::Nonlinear).f_int.norm();
            let moved: Vec<Vec3> = c.x_ref.iter().map(|p| rot * p + Vec3::new(1.0, 2.0, -3.0)).collect();
            let f = eval(&c, &moved, KinematicMode::Nonlinear).f_int;
            assert!(f.norm() <= 1e-12 * scale, "{:?}: {} vs {}", c.kind, f.norm(), scale);
            let t: Vec<Vec3> = c.x_ref.iter().map(|p| p + Vec3::new(0.1, -0.2, 0.3)).collect();
            assert!(eval(&c, &t, KinematicMode::Linear).f_int.norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn force_is_energy_gradient() {
        for c in cases() {
            for mode in [KinematicMode::Linear, KinematicMode::Nonlinear] {
                let x = perturbed(&c.x_ref, 0.3, 2);
                let m = eval(&c, &x, mode);
                let h = 1e-6 * 3.0;
                for k in 0..3 * x.len() {
                    let ep = eval(&c, &shifted(&x, k, h), mode).energy;
                    let em = eval(&c, &shifted(&x, k, -h), mode).energy;
                    let g = (ep - em) / (2.0 * h);
                    assert!((g - m.f_int[k]).abs() <= 1e-6 * m.f_int.norm(), "{:?} {mode:?} dof {k}: {g} vs {}", c.kind, m.f_int[k]);
                }
            }
        }
    }

    #[test]
    fn tangent_matches_finite_differences() {
        for c in cases() {
            for seed in 0..3 {
                let x = perturbed(&c.x_ref, 0.4, 10 + seed);
                let m = eval(&c, &x, KinematicMode::Nonlinear);
                let k = m.tangent();
                let nd = 3 * x.len();
                let mut fd = DMatrix::zeros(nd, nd);
                let h = 1e-6;
                for j in 0..nd {
                    let fp = eval(&c, &shifted(&x, j, h), KinematicMode::Nonlinear).f_int;
                    let fm = eval(&c, &shifted(&x, j, -h), KinematicMode::Nonlinear).f_int;
                    fd.set_column(j, &((fp - fm) / (2.0 * h)));
                }
                let rel = (&fd - &k).norm() / k.norm();
                assert!(rel < 1e-5, "{:?}: relative tangent error {rel}", c.kind);
                let asym = (&k - k.transpose()).norm() / k.norm();
                assert!(asym < 1e-12, "{:?}: asymmetry {asym}", c.kind);
            }
        }
    }

    #[test]
    fn linear_mode_has_no_geometric_stiffness() {
        for c in cases() {
            let x = perturbed(&c.x_ref, 0.3, 5);
            let m = eval(&c, &x, KinematicMode::Linear);
            assert_eq!(m.k_geo.norm(), 0.0);
            let u: Vec<f64> = x.iter().zip(&c.x_ref).flat_map(|(a, b)| { let d = a - b; [d.x, d.y, d.z] }).collect();
            let ku = &m.k_mat * DVector::from_vec(u);
            assert!((ku - &m.f_int).norm() <= 1e-10 * m.f_int.norm());
        }
    }

    #[test]
    fn covariant_derivative_reproduces_curvature() {
        let c = &cases()[0];
        let x = perturbed(&c.x_ref, 0.3, 8);
        for qp in &c.qps {
            let s = SurfaceState::new(&qp.shape.interpolate_local(&x)).unwrap();
            let nsd = covariant_second_derivatives(&qp.shape, &s.christoffel);
            for (k, (a, b)) in crate::kinematics::VOIGT.iter().enumerate() {
                let v: Vec3 = nsd.iter().zip(&x).map(|(d, p)| d[k] * p).sum();
                assert!((v.dot(&s.normal) - s.curvature[(*a, *b)]).abs() < 1e-12);
                // the contraction is purely normal
                assert!(v.dot(&s.a[0]).abs() < 1e-10 && v.dot(&s.a[1]).abs() < 1e-10);
            }
            for k in 0..3 {
                assert!(nsd.iter().map(|d| d[k]).sum::<f64>().abs() < 1e-10);
            }
        }
    }

    #[test]
    fn membrane_element_ignores_bending_tensor() {
        let c = &cases()[2];
        let x = perturbed(&c.x_ref, 0.3, 9);
        let a = evaluate_element(&c.qps, &c.x_ref, &disp(c, &x), &material(), c.kind, KinematicMode::Nonlinear, true).unwrap();
        let mut thick = material();
        thick.thickness *= 3.0;
        thick.young /= 3.0;
        let b = evaluate_element(&c.qps, &c.x_ref, &disp(c, &x), &thick, c.kind, KinematicMode::Nonlinear, true).unwrap();
        assert!((&a.f_int - &b.f_int).norm() <= 1e-12 * a.f_int.norm());
    }
}
