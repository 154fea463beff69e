//! Hybrid bending / membrane discretization and membrane force redistribution.
//!
//! In the B2M1 discretization quadratic NURBS elements carry only bending
//! stiffness while bilinear elements spanned by the same control points carry
//! only membrane stiffness. Near patch boundaries the nodal membrane forces of
//! the bilinear mesh are redistributed with an operator `W`, giving
//! `f_rm = W f_m` evaluated at `x_r = W^T x`, and `K_rm = W K_m W^T`.

use nalgebra::DMatrix;

use crate::element::{ElementKind, LagrangeElements, NurbsElements};
use crate::geometry::{M1Mesh, NurbsPatch};
use crate::{Error, Result, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Discretization {
    /// Quadratic NURBS bending with bilinear membrane.
    B2M1,
    /// Classical isogeometric elements carrying both parts.
    BpMp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RedistributionMode {
    None,
    /// Only along the second parametric direction.
    Lateral,
    #[default]
    Full,
}

/// Canonical local redistribution configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalCase {
    Center,
    Edge,
    DoubleEdge,
    Corner,
    DoubleCorner,
}

/// Local redistribution matrix of a canonical configuration.
pub fn local_redistribution(case: LocalCase) -> DMatrix<f64> {
    let (scale, rows): (f64, Vec<Vec<f64>>) = match case {
        LocalCase::Center => (1.0, vec![vec![1.0]]),
        LocalCase::Edge => (9.0, vec![vec![9., 1.], vec![0., 8.]]),
        LocalCase::DoubleEdge => (6.0, vec![vec![6., 1., 0.], vec![0., 4., 0.], vec![0., 1., 6.]]),
        LocalCase::Corner => (
            81.0,
            vec![
                vec![81., 9., 9., 1.],
                vec![0., 72., 0., 8.],
                vec![0., 0., 72., 8.],
                vec![0., 0., 0., 64.],
            ],
        ),
        LocalCase::DoubleCorner => (
            54.0,
            vec![
                vec![54., 6., 9., 1., 0., 0.],
                vec![0., 48., 0., 8., 0., 0.],
                vec![0., 0., 36., 4., 0., 0.],
                vec![0., 0., 0., 32., 0., 0.],
                vec![0., 0., 9., 1., 54., 6.],
                vec![0., 0., 0., 8., 0., 48.],
            ],
        ),
    };
    let n = rows.len();
    DMatrix::from_fn(n, n, |i, j| rows[i][j] / scale)
}

/// One-dimensional redistribution operator stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Redistribution1d {
    cols: Vec<Vec<(usize, f64)>>,
}

impl Redistribution1d {
    pub fn identity(n: usize) -> Self {
        Self {
            cols: (0..n).map(|k| vec![(k, 1.0)]).collect(),
        }
    }

    /// Boundary operator for a quadratic direction with `n` control points
    /// (`n - 2` elements).
    pub fn boundary(n: usize) -> Self {
        let mut op = Self::identity(n);
        if n == 3 {
            op.cols[1] = vec![(0, 1.0 / 6.0), (1, 4.0 / 6.0), (2, 1.0 / 6.0)];
        } else if n >= 4 {
            op.cols[1] = vec![(0, 1.0 / 9.0), (1, 8.0 / 9.0)];
            op.cols[n - 2] = vec![(n - 2, 8.0 / 9.0), (n - 1, 1.0 / 9.0)];
        }
        op
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, k: usize) -> &[(usize, f64)] {
        &self.cols[k]
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        let mut m = DMatrix::zeros(n, n);
        for (k, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, k)] = v;
            }
        }
        m
    }
}

/// Global scalar redistribution operator on an `n1 x n2` control net, the
/// tensor product of two one-dimensional operators.
#[derive(Clone, Debug, PartialEq)]
pub struct RedistributionOperator {
    dirs: [Redistribution1d; 2],
}

impl RedistributionOperator {
    pub fn identity(n1: usize, n2: usize) -> Self {
        Self {
            dirs: [Redistribution1d::identity(n1), Redistribution1d::identity(n2)],
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.dirs[0].len() * self.dirs[1].len()
    }

    pub fn direction(&self, d: usize) -> &Redistribution1d {
        &self.dirs[d]
    }

    /// Nonzero entries `(i, W[i][k])` of column `k`.
    pub fn column(&self, k: usize) -> Vec<(usize, f64)> {
        let n1 = self.dirs[0].len();
        let (k1, k2) = (k % n1, k / n1);
        let mut out = Vec::with_capacity(4);
        for &(j, b) in self.dirs[1].column(k2) {
            for &(i, a) in self.dirs[0].column(k1) {
                out.push((i + n1 * j, a * b));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.dirs
            .iter()
            .all(|d| (0..d.len()).all(|k| d.column(k) == [(k, 1.0)]))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.n_nodes();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            for (i, v) in self.column(k) {
                m[(i, k)] = v;
            }
        }
        m
    }

    /// `W f` for nodal vectors.
    pub fn apply(&self, f: &[Vec3]) -> Result<Vec<Vec3>> {
        self.check(f.len())?;
        let mut out = vec![Vec3::zeros(); f.len()];
        for (k, fk) in f.iter().enumerate() {
            for (i, v) in self.column(k) {
                out[i] += v * fk;
            }
        }
        Ok(out)
    }

    /// `W^T x` for nodal vectors.
    pub fn apply_transpose(&self, x: &[Vec3]) -> Result<Vec<Vec3>> {
        self.check(x.len())?;
        Ok((0..x.len())
            .map(|k| self.column(k).into_iter().map(|(i, v)| v * x[i]).sum())
            .collect())
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.n_nodes() {
            return Err(Error::Dimension {
                expected: self.n_nodes(),
                got: n,
            });
        }
        Ok(())
    }
}

/// Assembles the redistribution operator for a quadratic control net.
pub fn assemble_w(n_nodes: [usize; 2], mode: RedistributionMode) -> RedistributionOperator {
    let [n1, n2] = n_nodes;
    match mode {
        RedistributionMode::None => RedistributionOperator::identity(n1, n2),
        RedistributionMode::Lateral => RedistributionOperator {
            dirs: [Redistribution1d::identity(n1), Redistribution1d::boundary(n2)],
        },
        RedistributionMode::Full => RedistributionOperator {
            dirs: [Redistribution1d::boundary(n1), Redistribution1d::boundary(n2)],
        },
    }
}

/// Redistributed membrane quantities.
#[derive(Clone, Debug, PartialEq)]
pub struct Redistributed {
    pub f_rm: Vec<Vec3>,
    pub k_rm: DMatrix<f64>,
    pub u_r: Vec<Vec3>,
    pub x_ref_r: Vec<Vec3>,
    pub x_r: Vec<Vec3>,
}

/// Dense application of `W` to membrane forces, stiffness, displacements and
/// positions. `k_m` is the `3n x 3n` nodal stiffness.
pub fn apply_redistribution(
    w: &RedistributionOperator,
    f_m: &[Vec3],
    k_m: &DMatrix<f64>,
    u: &[Vec3],
    x_ref: &[Vec3],
    x: &[Vec3],
) -> Result<Redistributed> {
    let n = w.n_nodes();
    if k_m.nrows() != 3 * n || k_m.ncols() != 3 * n {
        return Err(Error::Dimension {
            expected: 3 * n,
            got: k_m.nrows(),
        });
    }
    let wd = w.to_dense().kronecker(&DMatrix::identity(3, 3));
    Ok(Redistributed {
        f_rm: w.apply(f_m)?,
        k_rm: &wd * k_m * wd.transpose(),
        u_r: w.apply_transpose(u)?,
        x_ref_r: w.apply_transpose(x_ref)?,
        x_r: w.apply_transpose(x)?,
    })
}

/// Bending and membrane element sets on one control net.
#[derive(Clone, Debug)]
pub struct HybridMesh {
    pub discretization: Discretization,
    pub mode: RedistributionMode,
    pub bending: NurbsElements,
    pub membrane: Option<LagrangeElements>,
    pub w: RedistributionOperator,
}

impl HybridMesh {
    pub fn patch(&self) -> &NurbsPatch {
        self.bending.patch()
    }

    pub fn m1(&self) -> Option<&M1Mesh> {
        self.membrane.as_ref().map(|m| m.mesh())
    }

    pub fn n_nodes(&self) -> usize {
        self.patch().n_nodes()
    }

    pub fn n_dofs(&self) -> usize {
        3 * self.n_nodes()
    }

    /// Reference positions used by the membrane elements (`W^T X`).
    pub fn membrane_reference(&self) -> Vec<Vec3> {
        self.w
            .apply_transpose(self.patch().points())
            .expect("operator matches the control net")
    }
}

/// Pairs a patch with its bilinear membrane mesh (B2M1) or wraps it as a
/// classical single element set (BpMp).
pub fn build_hybrid(patch: NurbsPatch, disc: Discretization, mode: RedistributionMode) -> Result<HybridMesh> {
    let [n1, n2] = patch.n_nodes_dir();
    match disc {
        Discretization::B2M1 => {
            let p = patch.degrees();
            if p != [2, 2] {
                return Err(Error::UnsupportedDegree(p[0].max(p[1])));
            }
            let m1 = M1Mesh::from_patch(&patch);
            Ok(HybridMesh {
                discretization: disc,
                mode,
                bending: NurbsElements::new(patch, ElementKind::BendingOnly),
                membrane: Some(LagrangeElements::new(m1, ElementKind::MembraneOnly)),
                w: assemble_w([n1, n2], mode),
            })
        }
        Discretization::BpMp => Ok(HybridMesh {
            discretization: disc,
            mode: RedistributionMode::None,
            bending: NurbsElements::new(patch, ElementKind::Full),
            membrane: None,
            w: RedistributionOperator::identity(n1, n2),
        }),
    }
}
