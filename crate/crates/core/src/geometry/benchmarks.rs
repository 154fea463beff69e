//! Exact NURBS geometries of the benchmark problems.

use std::f64::consts::PI;

use super::elevate::{degree_elevate, refine_uniform};
use super::knots::KnotVector;
use super::nurbs::NurbsPatch;
use crate::{Error, Result, Vec3};

/// Scordelis-Lo roof radius.
pub const SCORDELIS_RADIUS: f64 = 25.0;
/// Scordelis-Lo roof length.
pub const SCORDELIS_LENGTH: f64 = 50.0;
/// Half opening angle of the Scordelis-Lo roof in degrees.
pub const SCORDELIS_HALF_ANGLE_DEG: f64 = 40.0;
/// Hemisphere radius.
pub const HEMISPHERE_RADIUS: f64 = 10.0;
/// Colatitude of the hemisphere hole edge in degrees.
pub const HEMISPHERE_HOLE_DEG: f64 = 18.0;

/// Rational quadratic arc of opening `angle` starting at angle `start`,
/// returned as (cos, sin) style 2D control points and weights.
fn arc(start: f64, angle: f64) -> ([[f64; 2]; 3], [f64; 3]) {
    let half = 0.5 * angle;
    let mid = start + half;
    let r = 1.0 / half.cos();
    (
        [
            [start.cos(), start.sin()],
            [r * mid.cos(), r * mid.sin()],
            [(start + angle).cos(), (start + angle).sin()],
        ],
        [1.0, half.cos(), 1.0],
    )
}

fn check_degree(p: usize) -> Result<()> {
    if p < 2 {
        return Err(Error::Construction(format!("degree {p} below 2")));
    }
    Ok(())
}

/// Single-element quarter-cylinder strip `X = R (sin t, y, cos t)`,
/// `t in [0, pi/2]`, `y in [0, L]`; quadratic along the arc, linear across.
pub fn quarter_arc_patch(radius: f64, width: f64) -> NurbsPatch {
    let (c, w) = arc(0.0, 0.5 * PI);
    let mut pts = Vec::with_capacity(6);
    let mut wts = Vec::with_capacity(6);
    for y in [0.0, width] {
        for i in 0..3 {
            // arc parameter measured from the z axis towards x
            pts.push(Vec3::new(radius * c[i][1], y, radius * c[i][0]));
            wts.push(w[i]);
        }
    }
    NurbsPatch::new(
        KnotVector::uniform(2, 1).unwrap(),
        KnotVector::uniform(1, 1).unwrap(),
        pts,
        wts,
    )
    .unwrap()
}

/// Curved cantilever strip with `m` elements of degree `p` along the arc and
/// one element of degree `p` across the width.
pub fn make_cantilever(radius: f64, width: f64, m: usize, p: usize) -> Result<NurbsPatch> {
    check_degree(p)?;
    if m == 0 {
        return Err(Error::Construction("at least one axial element required".into()));
    }
    if !(radius > 0.0 && width > 0.0) {
        return Err(Error::Construction("radius and width must be positive".into()));
    }
    let base = degree_elevate(&quarter_arc_patch(radius, width), [p, p])?;
    refine_uniform(&base, [m, 1])
}

/// Scordelis-Lo roof: 80 degree cylinder segment `X = R sin(phi)`,
/// `Z = R cos(phi)`, `Y in [0, L]` with `m` elements along the arc and `1.5 m`
/// along the length.
pub fn make_scordelis(m: usize, p: usize) -> Result<NurbsPatch> {
    check_degree(p)?;
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::Construction(format!(
            "m = {m} gives a non-integral 1.5 m; use an even m >= 2"
        )));
    }
    let phi = SCORDELIS_HALF_ANGLE_DEG.to_radians();
    let (c, w) = arc(-phi, 2.0 * phi);
    let r = SCORDELIS_RADIUS;
    let mut pts = Vec::with_capacity(6);
    let mut wts = Vec::with_capacity(6);
    for y in [0.0, SCORDELIS_LENGTH] {
        for i in 0..3 {
            // c = (cos phi, sin phi)
            pts.push(Vec3::new(r * c[i][1], y, r * c[i][0]));
            wts.push(w[i]);
        }
    }
    let base = NurbsPatch::new(
        KnotVector::uniform(2, 1)?,
        KnotVector::uniform(1, 1)?,
        pts,
        wts,
    )?;
    let base = degree_elevate(&base, [p, p])?;
    refine_uniform(&base, [m, 3 * m / 2])
}

/// Quarter of the hemisphere with an 18 degree hole: azimuth along the first
/// direction (from the x axis to the y axis), meridian along the second (from
/// the equator to the hole). The normal points outwards.
pub fn make_hemisphere(m: usize, p: usize) -> Result<NurbsPatch> {
    check_degree(p)?;
    if m < 1 {
        return Err(Error::Construction("at least one element required".into()));
    }
    let (az, wa) = arc(0.0, 0.5 * PI);
    let lat = (90.0 - HEMISPHERE_HOLE_DEG).to_radians();
    let (mer, wm) = arc(0.0, lat);
    let r = HEMISPHERE_RADIUS;
    let mut pts = Vec::with_capacity(9);
    let mut wts = Vec::with_capacity(9);
    for j in 0..3 {
        let (rr, z) = (r * mer[j][0], r * mer[j][1]);
        for i in 0..3 {
            pts.push(Vec3::new(rr * az[i][0], rr * az[i][1], z));
            wts.push(wa[i] * wm[j]);
        }
    }
    let base = NurbsPatch::new(
        KnotVector::uniform(2, 1)?,
        KnotVector::uniform(2, 1)?,
        pts,
        wts,
    )?;
    let base = degree_elevate(&base, [p, p])?;
    refine_uniform(&base, [m, m])
}

/// Distorts a Scordelis-Lo net by shifting control points along Y:
/// `Y += 5 sin(pi X / (2 X_max)) sin(pi Y / L)` with `X_max = R sin 40 deg`.
pub fn apply_skew(patch: &NurbsPatch) -> NurbsPatch {
    let x_max = SCORDELIS_RADIUS * SCORDELIS_HALF_ANGLE_DEG.to_radians().sin();
    let mut out = patch.clone();
    for p in out.points_mut() {
        p.y += 5.0 * (PI * p.x / (2.0 * x_max)).sin() * (PI * p.y / SCORDELIS_LENGTH).sin();
    }
    out
}
