//! Closed-form solution of the linear curved cantilever strip.
//!
//! The strip `X = R e_r(θ)`, `θ ∈ [0, π/2]`, is clamped at `θ = 0` and loaded
//! at the tip by a force `q` along `e_1`, spread uniformly over the width `L`.
//! With `ν = 0` the membrane force, bending moment and Cauchy stress follow
//! from statics and the displacements from integrating the strain-displacement
//! relations.

use klshell::postprocess::ReferenceField;
use klshell::{Mat3, Vec3};

/// Fields at one angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CantileverFields {
    pub u_r: f64,
    pub u_theta: f64,
    pub sigma: f64,
    pub moment: f64,
    pub cauchy: f64,
}

/// Strip data for the closed-form solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cantilever {
    pub q: f64,
    pub radius: f64,
    pub young: f64,
    pub thickness: f64,
    pub width: f64,
}

impl Cantilever {
    /// Tip traction per unit width.
    fn traction(&self) -> f64 {
        self.q / self.width
    }

    /// Horizontal tip displacement.
    pub fn u_a(&self) -> f64 {
        let (r, t) = (self.radius, self.thickness);
        3.0 * std::f64::consts::PI * self.traction() * r.powi(3) / (self.young * t.powi(3)) * (1.0 + t * t / (3.0 * r * r))
    }

    /// Vertical tip displacement.
    pub fn w_a(&self) -> f64 {
        6.0 * self.traction() * self.radius.powi(3) / (self.young * self.thickness.powi(3))
    }

    pub fn at(&self, theta: f64) -> CantileverFields {
        let (s, c) = theta.sin_cos();
        let ua = self.u_a();
        let scale = 2.0 * theta / std::f64::consts::PI;
        CantileverFields {
            u_r: ua * scale * s,
            u_theta: -self.w_a() * s + ua * scale * c,
            sigma: 2.0 * self.traction() * c,
            moment: self.traction() * self.radius * c,
            cauchy: self.traction() * c,
        }
    }

    /// Angle of a point on the strip.
    pub fn angle(x: &Vec3) -> f64 {
        x.x.atan2(x.z)
    }
}

/// Convenience wrapper returning `(u_r, u_θ, σ, M, N)`.
pub fn analytic_cantilever(theta: f64, q: f64, radius: f64, young: f64, thickness: f64, width: f64) -> CantileverFields {
    Cantilever {
        q,
        radius,
        young,
        thickness,
        width,
    }
    .at(theta)
}

fn basis(theta: f64) -> (Vec3, Vec3) {
    let (s, c) = theta.sin_cos();
    (Vec3::new(s, 0.0, c), Vec3::new(c, 0.0, -s))
}

impl ReferenceField for Cantilever {
    fn displacement(&self, _xi: [f64; 2], x: &Vec3) -> Option<Vec3> {
        let th = Self::angle(x);
        let f = self.at(th);
        let (e_r, e_t) = basis(th);
        Some(f.u_r * e_r + f.u_theta * e_t)
    }

    fn sigma(&self, _xi: [f64; 2], x: &Vec3) -> Option<Mat3> {
        let th = Self::angle(x);
        let e_t = basis(th).1;
        Some(self.at(th).sigma * e_t * e_t.transpose())
    }

    fn moment(&self, _xi: [f64; 2], x: &Vec3) -> Option<Mat3> {
        let th = Self::angle(x);
        let e_t = basis(th).1;
        Some(self.at(th).moment * e_t * e_t.transpose())
    }

    fn cauchy(&self, _xi: [f64; 2], x: &Vec3) -> Option<Mat3> {
        let th = Self::angle(x);
        let e_t = basis(th).1;
        Some(self.at(th).cauchy * e_t * e_t.transpose())
    }
}
