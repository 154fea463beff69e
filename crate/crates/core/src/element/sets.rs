//! Element sets over NURBS patches and bilinear meshes.

use super::kernel::QuadPoint;
use super::quadrature::QuadratureRule;
use super::ElementKind;
use crate::geometry::{BasisEval, M1Mesh, NurbsPatch, ShapeFunctions};

/// A homogeneous collection of elements sharing one quadrature rule.
pub trait ElementSet: Sync {
    fn n_elements(&self) -> usize;
    fn kind(&self) -> ElementKind;
    fn element_nodes(&self, e: usize) -> Vec<usize>;
    fn quad_points(&self, e: usize) -> Vec<QuadPoint>;
    /// Shape functions at local coordinates in [-1, 1]^2.
    fn shape_local(&self, e: usize, s: f64, t: f64) -> ShapeFunctions;
}

/// Elements of a NURBS patch. Univariate bases at the Gauss points are
/// cached per element and direction.
#[derive(Clone, Debug)]
pub struct NurbsElements {
    patch: NurbsPatch,
    rule: QuadratureRule,
    kind: ElementKind,
    basis: [Vec<Vec<BasisEval>>; 2],
}

impl NurbsElements {
    /// Uses `(p + 1) x (p + 1)` Gauss points.
    pub fn new(patch: NurbsPatch, kind: ElementKind) -> Self {
        let rule = QuadratureRule::for_degree(patch.degrees());
        Self::with_rule(patch, kind, rule)
    }

    pub fn with_rule(patch: NurbsPatch, kind: ElementKind, rule: QuadratureRule) -> Self {
        let (x1, _) = super::gauss_legendre(rule.order[0]);
        let (x2, _) = super::gauss_legendre(rule.order[1]);
        let cache = |dir: usize, xs: &[f64]| -> Vec<Vec<BasisEval>> {
            let kv = patch.knots(dir);
            (0..kv.n_elements())
                .map(|e| {
                    let (a, b) = kv.element_bounds(e);
                    let span = kv.span_of_element(e);
                    xs.iter()
                        .map(|&s| kv.eval_in_span(span, a + 0.5 * (b - a) * (1.0 + s)))
                        .collect()
                })
                .collect()
        };
        let basis = [cache(0, &x1), cache(1, &x2)];
        Self {
            patch,
            rule,
            kind,
            basis,
        }
    }

    pub fn patch(&self) -> &NurbsPatch {
        &self.patch
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }
}

impl ElementSet for NurbsElements {
    fn n_elements(&self) -> usize {
        self.patch.n_elements()
    }

    fn kind(&self) -> ElementKind {
        self.kind
    }

    fn element_nodes(&self, e: usize) -> Vec<usize> {
        self.patch.element_nodes(e)
    }

    fn quad_points(&self, e: usize) -> Vec<QuadPoint> {
        let (e1, e2) = self.patch.element_ij(e);
        let (a1, b1) = self.patch.knots(0).element_bounds(e1);
        let (a2, b2) = self.patch.knots(1).element_bounds(e2);
        let jac = 0.25 * (b1 - a1) * (b2 - a2);
        let [n1, _] = self.rule.order;
        self.rule
            .weights
            .iter()
            .enumerate()
            .map(|(g, &w)| QuadPoint {
                shape: self
                    .patch
                    .rational_shape(&self.basis[0][e1][g % n1], &self.basis[1][e2][g / n1]),
                weight: w * jac,
            })
            .collect()
    }

    fn shape_local(&self, e: usize, s: f64, t: f64) -> ShapeFunctions {
        let (xi, _) = self.patch.local_to_param(e, s, t);
        self.patch.shape_in_element(e, xi)
    }
}

/// Bilinear elements on a control net.
#[derive(Clone, Debug)]
pub struct LagrangeElements {
    mesh: M1Mesh,
    rule: QuadratureRule,
    kind: ElementKind,
}

impl LagrangeElements {
    /// Uses 2 x 2 Gauss points.
    pub fn new(mesh: M1Mesh, kind: ElementKind) -> Self {
        Self {
            mesh,
            rule: QuadratureRule::tensor(2, 2),
            kind,
        }
    }

    pub fn mesh(&self) -> &M1Mesh {
        &self.mesh
    }
}

impl ElementSet for LagrangeElements {
    fn n_elements(&self) -> usize {
        self.mesh.n_elements()
    }

    fn kind(&self) -> ElementKind {
        self.kind
    }

    fn element_nodes(&self, e: usize) -> Vec<usize> {
        self.mesh.elements()[e].to_vec()
    }

    fn quad_points(&self, e: usize) -> Vec<QuadPoint> {
        self.rule
            .points
            .iter()
            .zip(&self.rule.weights)
            .map(|(p, &w)| QuadPoint {
                shape: self.mesh.shape_at(e, p[0], p[1]),
                weight: w,
            })
            .collect()
    }

    fn shape_local(&self, e: usize, s: f64, t: f64) -> ShapeFunctions {
        self.mesh.shape_at(e, s, t)
    }
}
