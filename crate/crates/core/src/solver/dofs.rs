//! Degree-of-freedom bookkeeping with fixed and tied components.

use std::sync::OnceLock;

use crate::{Error, Result, Vec3};

/// Status of one nodal displacement component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DofKind {
    Free,
    /// Prescribed displacement value.
    Fixed(f64),
    /// Equal to the displacement of another (global) dof.
    Tied(usize),
}

/// Map from global dofs `3 * node + component` to the reduced unknowns.
#[derive(Clone, Debug, PartialEq)]
pub struct DofMap {
    kinds: Vec<DofKind>,
    numbering: OnceLock<(Vec<Option<usize>>, usize)>,
}

impl DofMap {
    pub fn new(n_nodes: usize) -> Self {
        Self {
            kinds: vec![DofKind::Free; 3 * n_nodes],
            numbering: OnceLock::new(),
        }
    }

    pub fn dof(node: usize, comp: usize) -> usize {
        3 * node + comp
    }

    pub fn n_dofs(&self) -> usize {
        self.kinds.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.kinds.len() / 3
    }

    pub fn n_free(&self) -> usize {
        self.numbering().1
    }

    pub fn kind(&self, dof: usize) -> DofKind {
        self.kinds[dof]
    }

    pub fn fix(&mut self, node: usize, comp: usize, value: f64) {
        self.kinds[Self::dof(node, comp)] = DofKind::Fixed(value);
        self.numbering = OnceLock::new();
    }

    /// Ties `(node, comp)` to `(master, master_comp)`.
    pub fn tie(&mut self, node: usize, comp: usize, master: usize, master_comp: usize) -> Result<()> {
        let (d, m) = (Self::dof(node, comp), Self::dof(master, master_comp));
        if d == m {
            return Err(Error::Construction(format!("dof {d} tied to itself")));
        }
        self.kinds[d] = DofKind::Tied(m);
        self.numbering = OnceLock::new();
        Ok(())
    }

    /// Follows tie chains to the controlling dof.
    fn root(&self, mut d: usize) -> usize {
        for _ in 0..self.kinds.len() {
            match self.kinds[d] {
                DofKind::Tied(m) => d = m,
                _ => return d,
            }
        }
        panic!("cyclic dof ties at dof {d}");
    }

    fn numbering(&self) -> &(Vec<Option<usize>>, usize) {
        self.numbering.get_or_init(|| self.number())
    }

    fn number(&self) -> (Vec<Option<usize>>, usize) {
        let mut reduced = vec![None; self.kinds.len()];
        let mut n = 0;
        for (d, k) in self.kinds.iter().enumerate() {
            if *k == DofKind::Free {
                reduced[d] = Some(n);
                n += 1;
            }
        }
        for d in 0..self.kinds.len() {
            if let DofKind::Tied(_) = self.kinds[d] {
                reduced[d] = reduced[self.root(d)];
            }
        }
        (reduced, n)
    }

    /// Reduced index of a dof (free or tied to a free dof).
    pub fn reduced(&self, dof: usize) -> Option<usize> {
        self.numbering().0[dof]
    }

    /// Displacement of every dof implied by the prescribed values, scaled by `lambda`.
    pub fn prescribed(&self, lambda: f64) -> Vec<Vec3> {
        let mut u = vec![Vec3::zeros(); self.n_nodes()];
        for d in 0..self.kinds.len() {
            if let DofKind::Fixed(v) = self.kinds[self.root(d)] {
                u[d / 3][d % 3] = lambda * v;
            }
        }
        u
    }

    /// Sums a full nodal vector into the reduced unknowns (`T^T f`).
    pub fn restrict(&self, f: &[Vec3]) -> Vec<f64> {
        let (reduced, n) = self.numbering();
        let mut r = vec![0.0; *n];
        for (d, red) in reduced.iter().enumerate() {
            if let Some(i) = red {
                r[*i] += f[d / 3][d % 3];
            }
        }
        r
    }

    /// Reads the reduced unknowns back out of a full nodal vector.
    pub fn gather(&self, u: &[Vec3]) -> Vec<f64> {
        let (reduced, n) = self.numbering();
        let mut v = vec![0.0; *n];
        for (d, red) in reduced.iter().enumerate().rev() {
            if let Some(i) = red {
                v[*i] = u[d / 3][d % 3];
            }
        }
        v
    }

    /// Full displacement with reduced values `v` and prescribed values scaled by `lambda`.
    pub fn compose(&self, v: &[f64], lambda: f64) -> Vec<Vec3> {
        let mut u = self.expand(v);
        for (ui, pi) in u.iter_mut().zip(self.prescribed(lambda)) {
            *ui += pi;
        }
        u
    }

    /// Spreads reduced values to a full nodal vector (`T v`); constrained
    /// components without a master receive zero.
    pub fn expand(&self, v: &[f64]) -> Vec<Vec3> {
        let mut u = vec![Vec3::zeros(); self.n_nodes()];
        for (d, red) in self.numbering().0.iter().enumerate() {
            if let Some(i) = red {
                u[d / 3][d % 3] = v[*i];
            }
        }
        u
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbering_with_ties_and_fixes() {
        let mut m = DofMap::new(3);
        m.fix(0, 0, 0.5);
        m.tie(1, 2, 0, 2).unwrap();
        m.tie(2, 2, 1, 2).unwrap();
        assert_eq!(m.n_free(), 6);
        assert_eq!(m.reduced(0), None);
        assert_eq!(m.reduced(5), m.reduced(2));
        assert_eq!(m.reduced(8), m.reduced(2));
        let f = vec![Vec3::new(1., 2., 3.), Vec3::new(4., 5., 6.), Vec3::new(7., 8., 9.)];
        let r = m.restrict(&f);
        assert_eq!(r[m.reduced(2).unwrap()], 18.0);
        let e = m.expand(&r);
        assert_eq!(e[2].z, 18.0);
        assert_eq!(e[0].x, 0.0);
        assert_eq!(m.prescribed(2.0)[0].x, 1.0);
        assert!(m.tie(1, 1, 1, 1).is_err());
    }
}
