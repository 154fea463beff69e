//! Lower-triangular CSC storage of the symmetric tangent and its factorization.

use std::sync::Arc;

use faer::prelude::*;
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::sparse::{SparseColMat, SymbolicSparseColMat, Triplet};
use faer::{Mat, Side};

use crate::{Error, Result};

/// Fixed sparsity pattern of the lower triangle (row >= column).
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePattern {
    n: usize,
    colptr: Vec<usize>,
    rows: Vec<usize>,
}

impl SparsePattern {
    /// Builds the pattern from per-column row lists (entries above the
    /// diagonal are ignored, duplicates removed).
    pub fn from_columns(n: usize, mut cols: Vec<Vec<usize>>) -> Self {
        assert_eq!(cols.len(), n);
        let mut colptr = Vec::with_capacity(n + 1);
        let mut rows = Vec::new();
        colptr.push(0);
        for (c, col) in cols.iter_mut().enumerate() {
            col.retain(|&r| r >= c);
            col.push(c);
            col.sort_unstable();
            col.dedup();
            rows.extend_from_slice(col);
            colptr.push(rows.len());
        }
        Self { n, colptr, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.rows.len()
    }

    /// Position of entry `(row, col)` with `row >= col`.
    pub fn find(&self, row: usize, col: usize) -> Option<usize> {
        let (a, b) = (self.colptr[col], self.colptr[col + 1]);
        self.rows[a..b].binary_search(&row).ok().map(|k| a + k)
    }

    /// Largest |row - col| over stored entries.
    pub fn bandwidth(&self) -> usize {
        (0..self.n)
            .map(|c| self.rows[self.colptr[c + 1] - 1] - c)
            .max()
            .unwrap_or(0)
    }

    pub fn column(&self, c: usize) -> &[usize] {
        &self.rows[self.colptr[c]..self.colptr[c + 1]]
    }
}

/// Symmetric matrix with values on a shared lower-triangular pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    pattern: Arc<SparsePattern>,
    values: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(pattern: Arc<SparsePattern>) -> Self {
        let values = vec![0.0; pattern.nnz()];
        Self { pattern, values }
    }

    pub fn pattern(&self) -> &Arc<SparsePattern> {
        &self.pattern
    }

    pub fn n(&self) -> usize {
        self.pattern.n
    }

    /// Adds `v` to entry `(r, c)` of the lower triangle. Entries above the
    /// diagonal are skipped; symmetric assembly visits both orders.
    #[inline]
    pub fn add_lower(&mut self, r: usize, c: usize, v: f64) {
        if r >= c {
            let k = self.pattern.find(r, c).expect("entry inside the assembled pattern");
            self.values[k] += v;
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let (r, c) = if r >= c { (r, c) } else { (c, r) };
        self.pattern.find(r, c).map_or(0.0, |k| self.values[k])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n()];
        for c in 0..self.n() {
            for k in self.pattern.colptr[c]..self.pattern.colptr[c + 1] {
                let r = self.pattern.rows[k];
                let v = self.values[k];
                y[r] += v * x[c];
                if r != c {
                    y[c] += v * x[r];
                }
            }
        }
        y
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.n(), self.n(), |r, c| self.get(r, c))
    }

    fn to_faer_lower(&self) -> SparseColMat<usize, f64> {
        let sym = SymbolicSparseColMat::new_checked(
            self.n(),
            self.n(),
            self.pattern.colptr.clone(),
            None,
            self.pattern.rows.clone(),
        );
        SparseColMat::new(sym, self.values.clone())
    }

    fn to_faer_full(&self) -> Result<SparseColMat<usize, f64>> {
        let mut t = Vec::with_capacity(2 * self.values.len());
        for c in 0..self.n() {
            for k in self.pattern.colptr[c]..self.pattern.colptr[c + 1] {
                let r = self.pattern.rows[k];
                t.push(Triplet::new(r, c, self.values[k]));
                if r != c {
                    t.push(Triplet::new(c, r, self.values[k]));
                }
            }
        }
        SparseColMat::try_new_from_triplets(self.n(), self.n(), &t)
            .map_err(|e| Error::Factorization(format!("{e:?}")))
    }
}

/// Sparse direct solver that keeps the symbolic Cholesky analysis across
/// solves on the same pattern and falls back to LU for indefinite matrices.
pub struct LinearSolver {
    symbolic: Option<(Arc<SparsePattern>, SymbolicLlt<usize>)>,
    /// Number of solves that required the LU fallback.
    pub lu_fallbacks: usize,
    /// Maximum iterative refinement sweeps after each direct solve.
    pub refinement_steps: usize,
}

enum Factor {
    Llt(Llt<usize, f64>),
    Lu(faer::sparse::linalg::solvers::Lu<usize, f64>),
}

impl Factor {
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut rhs = Mat::<f64>::from_fn(b.len(), 1, |i, _| b[i]);
        match self {
            Factor::Llt(f) => f.solve_in_place(rhs.as_mut()),
            Factor::Lu(f) => f.solve_in_place(rhs.as_mut()),
        }
        (0..b.len()).map(|i| rhs[(i, 0)]).collect()
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn residual(a: &SymMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    a.mul_vec(x).iter().zip(b).map(|(ax, bi)| bi - ax).collect()
}

impl Default for LinearSolver {
    fn default() -> Self {
        Self {
            symbolic: None,
            lu_fallbacks: 0,
            refinement_steps: 3,
        }
    }
}

impl LinearSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn solve(&mut self, a: &SymMatrix, b: &[f64]) -> Result<Vec<f64>> {
        if b.len() != a.n() {
            return Err(Error::Dimension {
                expected: a.n(),
                got: b.len(),
            });
        }
        if a.n() == 0 {
            return Ok(Vec::new());
        }
        let lower = a.to_faer_lower();
        let reuse = matches!(&self.symbolic, Some((p, _)) if Arc::ptr_eq(p, a.pattern()) || **p == **a.pattern());
        if !reuse {
            let sym = SymbolicLlt::try_new(lower.symbolic(), Side::Lower)
                .map_err(|e| Error::Factorization(format!("symbolic analysis: {e:?}")))?;
            self.symbolic = Some((a.pattern().clone(), sym));
        }
        let sym = self.symbolic.as_ref().unwrap().1.clone();
        let factor = match Llt::try_new_with_symbolic(sym, lower.as_ref(), Side::Lower) {
            Ok(llt) => Factor::Llt(llt),
            Err(_) => {
                self.lu_fallbacks += 1;
                Factor::Lu(
                    a.to_faer_full()?
                        .sp_lu()
                        .map_err(|e| Error::Factorization(format!("matrix is singular or indefinite ({e:?})")))?,
                )
            }
        };
        let mut x = factor.solve(b);
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Factorization("non-finite solution (singular system)".into()));
        }
        let mut res = residual(a, &x, b);
        for _ in 0..self.refinement_steps {
            let before = norm(&res);
            if before == 0.0 {
                break;
            }
            let dx = factor.solve(&res);
            let trial: Vec<f64> = x.iter().zip(&dx).map(|(p, q)| p + q).collect();
            let r_trial = residual(a, &trial, b);
            if norm(&r_trial) >= before {
                break;
            }
            x = trial;
            res = r_trial;
        }
        Ok(x)
    }
}
