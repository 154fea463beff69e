//! Tensor-product NURBS surface patches.

use super::knots::{BasisEval, KnotVector};
use super::shape::{PointDerivatives, ShapeFunctions};
use crate::{Error, Result, Vec3};

/// Rational B-spline surface. Control points are stored with the first
/// parametric direction running fastest: node `(i, j)` has index `i + n1 * j`.
#[derive(Clone, Debug, PartialEq)]
pub struct NurbsPatch {
    knots: [KnotVector; 2],
    points: Vec<Vec3>,
    weights: Vec<f64>,
}

impl NurbsPatch {
    pub fn new(
        knots1: KnotVector,
        knots2: KnotVector,
        points: Vec<Vec3>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let n = knots1.n_basis() * knots2.n_basis();
        if points.len() != n || weights.len() != n {
            return Err(Error::Construction(format!(
                "control net needs {n} points and weights, got {} and {}",
                points.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::Construction("weights must be positive".into()));
        }
        Ok(Self {
            knots: [knots1, knots2],
            points,
            weights,
        })
    }

    pub fn knots(&self, dir: usize) -> &KnotVector {
        &self.knots[dir]
    }

    pub fn degrees(&self) -> [usize; 2] {
        [self.knots[0].degree(), self.knots[1].degree()]
    }

    /// Control points per direction.
    pub fn n_nodes_dir(&self) -> [usize; 2] {
        [self.knots[0].n_basis(), self.knots[1].n_basis()]
    }

    pub fn n_nodes(&self) -> usize {
        self.points.len()
    }

    pub fn node_index(&self, i: usize, j: usize) -> usize {
        i + self.knots[0].n_basis() * j
    }

    /// Elements per direction.
    pub fn n_elements_dir(&self) -> [usize; 2] {
        [self.knots[0].n_elements(), self.knots[1].n_elements()]
    }

    pub fn n_elements(&self) -> usize {
        self.knots[0].n_elements() * self.knots[1].n_elements()
    }

    /// Splits a flat element index into per-direction element indices.
    pub fn element_ij(&self, e: usize) -> (usize, usize) {
        let m1 = self.knots[0].n_elements();
        (e % m1, e / m1)
    }

    pub fn points(&self) -> &[Vec3] {
        &self.points
    }

    pub fn points_mut(&mut self) -> &mut [Vec3] {
        &mut self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Global node ids of element `e` in tensor-product order.
    pub fn element_nodes(&self, e: usize) -> Vec<usize> {
        let (e1, e2) = self.element_ij(e);
        let [p1, p2] = self.degrees();
        let f1 = self.knots[0].span_of_element(e1) - p1;
        let f2 = self.knots[1].span_of_element(e2) - p2;
        let mut nodes = Vec::with_capacity((p1 + 1) * (p2 + 1));
        for j in 0..=p2 {
            for i in 0..=p1 {
                nodes.push(self.node_index(f1 + i, f2 + j));
            }
        }
        nodes
    }

    /// Maps local coordinates in [-1, 1]^2 of element `e` to knot parameters.
    /// Also returns the parametric half-widths d(xi)/d(local).
    pub fn local_to_param(&self, e: usize, s: f64, t: f64) -> ([f64; 2], [f64; 2]) {
        let (e1, e2) = self.element_ij(e);
        let (a1, b1) = self.knots[0].element_bounds(e1);
        let (a2, b2) = self.knots[1].element_bounds(e2);
        let h = [0.5 * (b1 - a1), 0.5 * (b2 - a2)];
        ([a1 + h[0] * (1.0 + s), a2 + h[1] * (1.0 + t)], h)
    }

    /// Rational shape functions of element `e` at knot parameters `xi`.
    pub fn shape_in_element(&self, e: usize, xi: [f64; 2]) -> ShapeFunctions {
        let (e1, e2) = self.element_ij(e);
        let b1 = self.knots[0].eval_in_span(self.knots[0].span_of_element(e1), xi[0]);
        let b2 = self.knots[1].eval_in_span(self.knots[1].span_of_element(e2), xi[1]);
        self.rational_shape(&b1, &b2)
    }

    /// Combines two univariate evaluations into rational surface shape functions.
    pub fn rational_shape(&self, b1: &BasisEval, b2: &BasisEval) -> ShapeFunctions {
        let (n1, n2) = (b1.values.len(), b2.values.len());
        let (f1, f2) = (b1.first(), b2.first());
        let ne = n1 * n2;
        let mut sf = ShapeFunctions {
            nodes: Vec::with_capacity(ne),
            n: Vec::with_capacity(ne),
            dn: Vec::with_capacity(ne),
            ddn: Vec::with_capacity(ne),
        };
        let (mut w, mut w1, mut w2) = (0.0, 0.0, 0.0);
        let (mut w11, mut w22, mut w12) = (0.0, 0.0, 0.0);
        for j in 0..n2 {
            for i in 0..n1 {
                let node = self.node_index(f1 + i, f2 + j);
                let wt = self.weights[node];
                let v = b1.values[i] * b2.values[j] * wt;
                let d = [b1.d1[i] * b2.values[j] * wt, b1.values[i] * b2.d1[j] * wt];
                let dd = [
                    b1.d2[i] * b2.values[j] * wt,
                    b1.values[i] * b2.d2[j] * wt,
                    b1.d1[i] * b2.d1[j] * wt,
                ];
                w += v;
                w1 += d[0];
                w2 += d[1];
                w11 += dd[0];
                w22 += dd[1];
                w12 += dd[2];
                sf.nodes.push(node);
                sf.n.push(v);
                sf.dn.push(d);
                sf.ddn.push(dd);
            }
        }
        let inv = 1.0 / w;
        for k in 0..ne {
            let r = sf.n[k] * inv;
            let r1 = (sf.dn[k][0] - r * w1) * inv;
            let r2 = (sf.dn[k][1] - r * w2) * inv;
            let r11 = (sf.ddn[k][0] - 2.0 * r1 * w1 - r * w11) * inv;
            let r22 = (sf.ddn[k][1] - 2.0 * r2 * w2 - r * w22) * inv;
            let r12 = (sf.ddn[k][2] - r1 * w2 - r2 * w1 - r * w12) * inv;
            sf.n[k] = r;
            sf.dn[k] = [r1, r2];
            sf.ddn[k] = [r11, r22, r12];
        }
        sf
    }

    /// Shape functions at knot parameters `xi` (element located automatically).
    pub fn shape_at(&self, xi: [f64; 2]) -> Result<(usize, ShapeFunctions)> {
        let e1 = self.knots[0].find_element(xi[0])?;
        let e2 = self.knots[1].find_element(xi[1])?;
        let e = e1 + self.knots[0].n_elements() * e2;
        Ok((e, self.shape_in_element(e, xi)))
    }

    /// Reference surface point and derivatives.
    pub fn eval_surface(&self, xi1: f64, xi2: f64) -> Result<PointDerivatives> {
        self.eval_surface_with(xi1, xi2, &self.points)
    }

    /// Surface point and derivatives for an alternative set of nodal
    /// positions (for example the current configuration).
    pub fn eval_surface_with(&self, xi1: f64, xi2: f64, nodes: &[Vec3]) -> Result<PointDerivatives> {
        if nodes.len() != self.points.len() {
            return Err(Error::Dimension {
                expected: self.points.len(),
                got: nodes.len(),
            });
        }
        let (_, sf) = self.shape_at([xi1, xi2])?;
        Ok(sf.interpolate(nodes))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn flat_square() -> NurbsPatch {
        let k = KnotVector::uniform(1, 1).unwrap();
        let pts = vec![
            Vec3::new(0., 0., 0.),
            Vec3::new(1., 0., 0.),
            Vec3::new(0., 1., 0.),
            Vec3::new(1., 1., 0.),
        ];
        NurbsPatch::new(k.clone(), k, pts, vec![1.0; 4]).unwrap()
    }

    #[test]
    fn identity_mapping() {
        let p = flat_square();
        let d = p.eval_surface(0.5, 0.5).unwrap();
        assert_relative_eq!(d.x, Vec3::new(0.5, 0.5, 0.0));
        assert_relative_eq!(d.a[0], Vec3::new(1.0, 0.0, 0.0));
        assert_relative_eq!(d.a[1], Vec3::new(0.0, 1.0, 0.0));
    }

    #[test]
    fn rejects_bad_weights() {
        let k = KnotVector::uniform(1, 1).unwrap();
        let pts = vec![Vec3::zeros(); 4];
        assert!(NurbsPatch::new(k.clone(), k.clone(), pts.clone(), vec![1., 1., 0., 1.]).is_err());
        assert!(NurbsPatch::new(k.clone(), k, pts, vec![1.; 3]).is_err());
    }

    #[test]
    fn element_nodes_follow_tensor_order() {
        let k1 = KnotVector::uniform(2, 3).unwrap();
        let k2 = KnotVector::uniform(2, 2).unwrap();
        let n = k1.n_basis() * k2.n_basis();
        let p = NurbsPatch::new(k1, k2, vec![Vec3::zeros(); n], vec![1.0; n]).unwrap();
        assert_eq!(p.n_nodes_dir(), [5, 4]);
        // element (1, 1): first nodes (1, 1)
        assert_eq!(p.element_nodes(4), vec![6, 7, 8, 11, 12, 13, 16, 17, 18]);
    }
}
