//! Bilinear Lagrange mesh on a structured control net.

use super::lagrange::eval_bilinear;
use super::nurbs::NurbsPatch;
use super::shape::ShapeFunctions;

/// Bilinear quadrilaterals connecting neighbouring control points. Element
/// `(i, j)` has index `i + (n1 - 1) * j` and nodes `(i, j), (i+1, j),
/// (i+1, j+1), (i, j+1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct M1Mesh {
    n_nodes: [usize; 2],
    elements: Vec<[usize; 4]>,
    greville: [Vec<f64>; 2],
}

impl M1Mesh {
    /// Builds the mesh on an `n1 x n2` node grid with uniformly spaced node
    /// parameters.
    pub fn grid(n1: usize, n2: usize) -> Self {
        let uniform = |n: usize| (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        Self::with_params(n1, n2, [uniform(n1), uniform(n2)])
    }

    /// Builds the mesh on the control net of `patch`; node parameters are the
    /// Greville abscissae of the patch.
    pub fn from_patch(patch: &NurbsPatch) -> Self {
        let [n1, n2] = patch.n_nodes_dir();
        Self::with_params(
            n1,
            n2,
            [patch.knots(0).greville(), patch.knots(1).greville()],
        )
    }

    fn with_params(n1: usize, n2: usize, greville: [Vec<f64>; 2]) -> Self {
        assert!(n1 >= 2 && n2 >= 2, "bilinear mesh needs at least 2x2 nodes");
        let mut elements = Vec::with_capacity((n1 - 1) * (n2 - 1));
        for j in 0..n2 - 1 {
            for i in 0..n1 - 1 {
                let a = i + n1 * j;
                elements.push([a, a + 1, a + 1 + n1, a + n1]);
            }
        }
        Self {
            n_nodes: [n1, n2],
            elements,
            greville,
        }
    }

    pub fn n_nodes_dir(&self) -> [usize; 2] {
        self.n_nodes
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes[0] * self.n_nodes[1]
    }

    pub fn n_elements_dir(&self) -> [usize; 2] {
        [self.n_nodes[0] - 1, self.n_nodes[1] - 1]
    }

    pub fn n_elements(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[[usize; 4]] {
        &self.elements
    }

    pub fn element_ij(&self, e: usize) -> (usize, usize) {
        (e % (self.n_nodes[0] - 1), e / (self.n_nodes[0] - 1))
    }

    pub fn element_index(&self, i: usize, j: usize) -> usize {
        i + (self.n_nodes[0] - 1) * j
    }

    /// Node parameters (Greville abscissae) per direction.
    pub fn node_params(&self, dir: usize) -> &[f64] {
        &self.greville[dir]
    }

    /// Shape functions of element `e` at local coordinates; derivatives are
    /// taken with respect to the local coordinates.
    pub fn shape_at(&self, e: usize, s: f64, t: f64) -> ShapeFunctions {
        let b = eval_bilinear(s, t);
        ShapeFunctions {
            nodes: self.elements[e].to_vec(),
            n: b.values.to_vec(),
            dn: b.d1.to_vec(),
            ddn: b.d12.iter().map(|&d| [0.0, 0.0, d]).collect(),
        }
    }

    /// Patch parameters associated with a local point through bilinear
    /// interpolation of the node parameters.
    pub fn local_to_param(&self, e: usize, s: f64, t: f64) -> [f64; 2] {
        let (i, j) = self.element_ij(e);
        let lerp = |g: &[f64], k: usize, u: f64| g[k] + 0.5 * (1.0 + u) * (g[k + 1] - g[k]);
        [lerp(&self.greville[0], i, s), lerp(&self.greville[1], j, t)]
    }
}
