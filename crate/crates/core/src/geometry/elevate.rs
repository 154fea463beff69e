//! Degree elevation and knot insertion.
//!
//! Both operations act direction by direction on the homogeneous control
//! points (w x, w y, w z, w), so the rational surface is preserved exactly.

use nalgebra::{DMatrix, DVector};

use super::knots::KnotVector;
use super::nurbs::NurbsPatch;
use crate::{Error, Result, Vec3};

type Homog = [f64; 4];

fn to_homog(patch: &NurbsPatch) -> Vec<Homog> {
    patch
        .points()
        .iter()
        .zip(patch.weights())
        .map(|(p, &w)| [w * p.x, w * p.y, w * p.z, w])
        .collect()
}

fn from_homog(k1: KnotVector, k2: KnotVector, h: &[Homog]) -> Result<NurbsPatch> {
    let pts = h
        .iter()
        .map(|q| Vec3::new(q[0] / q[3], q[1] / q[3], q[2] / q[3]))
        .collect();
    let w = h.iter().map(|q| q[3]).collect();
    NurbsPatch::new(k1, k2, pts, w)
}

/// Applies a curve operation to every row (dir 0) or column (dir 1) of the net.
fn map_direction(
    patch: &NurbsPatch,
    dir: usize,
    new_kv: KnotVector,
    op: impl Fn(&[Homog]) -> Vec<Homog>,
) -> Result<NurbsPatch> {
    let [n1, n2] = patch.n_nodes_dir();
    let h = to_homog(patch);
    let (k1, k2) = if dir == 0 {
        (new_kv, patch.knots(1).clone())
    } else {
        (patch.knots(0).clone(), new_kv)
    };
    let (m1, m2) = (k1.n_basis(), k2.n_basis());
    let mut out = vec![[0.0; 4]; m1 * m2];
    if dir == 0 {
        for j in 0..n2 {
            let row = &h[j * n1..(j + 1) * n1];
            for (i, q) in op(row).into_iter().enumerate() {
                out[i + m1 * j] = q;
            }
        }
    } else {
        for i in 0..n1 {
            let col: Vec<Homog> = (0..n2).map(|j| h[i + n1 * j]).collect();
            for (j, q) in op(&col).into_iter().enumerate() {
                out[i + m1 * j] = q;
            }
        }
    }
    from_homog(k1, k2, &out)
}

fn eval_curve(kv: &KnotVector, pts: &[Homog], xi: f64) -> Homog {
    let b = kv.eval_basis(xi).expect("collocation point inside domain");
    let mut q = [0.0; 4];
    for (k, v) in b.values.iter().enumerate() {
        for c in 0..4 {
            q[c] += v * pts[b.first() + k][c];
        }
    }
    q
}

/// Raises the degree of each direction to `target`, keeping the parametric
/// continuity at every knot (multiplicities grow with the degree).
pub fn degree_elevate(patch: &NurbsPatch, target: [usize; 2]) -> Result<NurbsPatch> {
    let mut out = patch.clone();
    for dir in 0..2 {
        let kv = out.knots(dir).clone();
        let p = kv.degree();
        let pt = target[dir];
        if pt < p {
            return Err(Error::Construction(format!(
                "target degree {pt} below current degree {p}"
            )));
        }
        if pt == p {
            continue;
        }
        let mut knots = Vec::new();
        for (v, mult) in kv.breaks() {
            knots.extend(std::iter::repeat_n(v, mult + pt - p));
        }
        let new_kv = KnotVector::new(pt, knots)?;
        let g = new_kv.greville();
        let n = new_kv.n_basis();
        let mut a = DMatrix::<f64>::zeros(n, n);
        for (r, &x) in g.iter().enumerate() {
            let b = new_kv.eval_basis(x)?;
            for (k, v) in b.values.iter().enumerate() {
                a[(r, b.first() + k)] = *v;
            }
        }
        let lu = a.lu();
        let old = kv.clone();
        out = map_direction(&out, dir, new_kv, |pts| {
            let mut res = vec![[0.0; 4]; n];
            for c in 0..4 {
                let rhs = DVector::from_iterator(n, g.iter().map(|&x| eval_curve(&old, pts, x)[c]));
                let sol = lu.solve(&rhs).expect("Greville collocation is nonsingular");
                for k in 0..n {
                    res[k][c] = sol[k];
                }
            }
            res
        })?;
    }
    Ok(out)
}

/// Inserts the given knots (each once) into direction `dir`.
pub fn insert_knots(patch: &NurbsPatch, dir: usize, new_knots: &[f64]) -> Result<NurbsPatch> {
    let mut out = patch.clone();
    for &u in new_knots {
        let kv = out.knots(dir).clone();
        let p = kv.degree();
        let (lo, hi) = kv.domain();
        if !(u > lo && u < hi) {
            return Err(Error::Domain { xi: u, lo, hi });
        }
        let k = kv.find_span(u)?;
        let old = kv.knots().to_vec();
        let mut knots = old.clone();
        knots.insert(k + 1, u);
        let new_kv = KnotVector::new(p, knots)?;
        out = map_direction(&out, dir, new_kv, |pts| {
            let n = pts.len();
            let mut res = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let q = if i + p <= k {
                    pts[i]
                } else if i > k {
                    pts[i - 1]
                } else {
                    let alpha = (u - old[i]) / (old[i + p] - old[i]);
                    let mut q = [0.0; 4];
                    for c in 0..4 {
                        q[c] = alpha * pts[i][c] + (1.0 - alpha) * pts[i - 1][c];
                    }
                    q
                };
                res.push(q);
            }
            res
        })?;
    }
    Ok(out)
}

/// Inserts uniformly spaced knots so that direction `d` has `elements[d]`
/// equal spans. Knots already present are skipped.
pub fn refine_uniform(patch: &NurbsPatch, elements: [usize; 2]) -> Result<NurbsPatch> {
    let mut out = patch.clone();
    for dir in 0..2 {
        let m = elements[dir];
        if m == 0 {
            return Err(Error::Construction("element count must be positive".into()));
        }
        let (lo, hi) = out.knots(dir).domain();
        let existing = out.knots(dir).knots().to_vec();
        let new: Vec<f64> = (1..m)
            .map(|i| lo + (hi - lo) * i as f64 / m as f64)
            .filter(|u| !existing.iter().any(|k| (k - u).abs() < 1e-14))
            .collect();
        out = insert_knots(&out, dir, &new)?;
    }
    Ok(out)
}
