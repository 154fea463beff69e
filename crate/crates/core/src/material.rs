//! Koiter shell constitution.

use nalgebra::{Matrix3, Vector3};

use crate::kinematics::{StrainState, VOIGT};
use crate::{Error, Mat2, Result};

/// Isotropic Koiter material with separately switchable membrane and bending parts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KoiterMaterial {
    pub young: f64,
    pub poisson: f64,
    pub thickness: f64,
    pub membrane: bool,
    pub bending: bool,
}

/// Fourth-order tensor with components `t[a][b][c][d]`.
pub type Tensor4 = [[[[f64; 2]; 2]; 2]; 2];

/// Membrane (`c`) and bending (`f`) elasticity tensors at a point, with their
/// Voigt forms acting on `(e11, e22, 2 e12)` and returning `(s11, s22, s12)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElasticityTensors {
    pub c: Tensor4,
    pub f: Tensor4,
    pub c_voigt: Matrix3<f64>,
    pub f_voigt: Matrix3<f64>,
}

/// Stress resultants at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StressState {
    /// Kirchhoff membrane stress tau^{ab}.
    pub tau: Mat2,
    /// Effective Cauchy membrane stress sigma^{ab} = tau / J.
    pub sigma: Mat2,
    /// Kirchhoff bending couple M0^{ab}.
    pub m0: Mat2,
    /// Cauchy bending couple M^{ab} = M0 / J.
    pub m: Mat2,
    pub j: f64,
}

impl KoiterMaterial {
    pub fn new(young: f64, poisson: f64, thickness: f64) -> Self {
        Self {
            young,
            poisson,
            thickness,
            membrane: true,
            bending: true,
        }
    }

    pub fn membrane_only(mut self) -> Self {
        self.membrane = true;
        self.bending = false;
        self
    }

    pub fn bending_only(mut self) -> Self {
        self.membrane = false;
        self.bending = true;
        self
    }

    /// Surface shear stiffness mu = E T / (2 (1 + nu)).
    pub fn mu(&self) -> f64 {
        self.young * self.thickness / (2.0 * (1.0 + self.poisson))
    }

    /// Surface bulk parameter Lambda = 2 mu nu / (1 - nu).
    pub fn lambda(&self) -> f64 {
        2.0 * self.mu() * self.poisson / (1.0 - self.poisson)
    }
}

fn voigt(t: &Tensor4) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    for (r, &(a, b)) in VOIGT.iter().enumerate() {
        for (s, &(c, d)) in VOIGT.iter().enumerate() {
            m[(r, s)] = t[a][b][c][d];
        }
    }
    m
}

/// Isotropic Koiter tensors for the contravariant reference metric `inv_metric`.
pub fn elasticity_tensors(inv_metric: &Mat2, mat: &KoiterMaterial) -> ElasticityTensors {
    let (lam, mu) = (mat.lambda(), mat.mu());
    let g = inv_metric;
    let mut c = [[[[0.0; 2]; 2]; 2]; 2];
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    c[a][b][cc][d] = lam * g[(a, b)] * g[(cc, d)]
                        + mu * (g[(a, cc)] * g[(b, d)] + g[(a, d)] * g[(b, cc)]);
                }
            }
        }
    }
    let s = mat.thickness * mat.thickness / 12.0;
    let mut f = c;
    for v in f.iter_mut().flatten().flatten().flatten() {
        *v *= s;
    }
    if !mat.membrane {
        c = [[[[0.0; 2]; 2]; 2]; 2];
    }
    if !mat.bending {
        f = [[[[0.0; 2]; 2]; 2]; 2];
    }
    ElasticityTensors {
        c,
        f,
        c_voigt: voigt(&c),
        f_voigt: voigt(&f),
    }
}

/// Applies a Voigt operator to a symmetric covariant tensor.
pub fn contract(d: &Matrix3<f64>, e: &Mat2) -> Mat2 {
    let s = d * Vector3::new(e[(0, 0)], e[(1, 1)], e[(0, 1)] + e[(1, 0)]);
    Mat2::new(s[0], s[2], s[2], s[1])
}

/// Stress resultants from strains. The infinitesimal branch uses J = 1.
pub fn stress_resultants(strain: &StrainState, tensors: &ElasticityTensors, j: f64) -> Result<StressState> {
    let j = if strain.linear { 1.0 } else { j };
    if !(j > 0.0) {
        return Err(Error::InvertedSurface(j));
    }
    let tau = contract(&tensors.c_voigt, &strain.eps);
    let m0 = contract(&tensors.f_voigt, &strain.kappa);
    Ok(StressState {
        tau,
        sigma: tau / j,
        m0,
        m: m0 / j,
        j,
    })
}

/// Physical Cauchy membrane stress `N^{ab} = sigma^{ab} + M^{ag} b^b_g`, where
/// `mixed_curvature` holds `b^b_g` at row `b`, column `g`.
pub fn cauchy_membrane(sigma: &Mat2, m: &Mat2, mixed_curvature: &Mat2) -> Mat2 {
    sigma + m * mixed_curvature.transpose()
}

/// Stored energy density per reference area.
pub fn energy_density(strain: &StrainState, tensors: &ElasticityTensors) -> f64 {
    let tau = contract(&tensors.c_voigt, &strain.eps);
    let m0 = contract(&tensors.f_voigt, &strain.kappa);
    0.5 * (tau.component_mul(&strain.eps).sum() + m0.component_mul(&strain.kappa).sum())
}
