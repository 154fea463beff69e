//! Linear solves and incremental Newton iteration.

use super::assemble::Assembler;
use super::sparse::LinearSolver;
use crate::element::KinematicMode;
use crate::{Error, Result, Vec3};

/// Load stepping and convergence controls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NewtonOptions {
    pub load_steps: usize,
    /// Relative tolerance on the reduced residual norm. A step also counts
    /// as converged once a correction (after the first) falls below this
    /// fraction of the displacement norm, which covers residuals stuck at the
    /// round-off level of the internal forces.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            load_steps: 10,
            tolerance: 1e-10,
            max_iterations: 30,
        }
    }
}

/// Convergence record of one load step.
#[derive(Clone, Debug, PartialEq)]
pub struct StepReport {
    pub lambda: f64,
    /// Residual norms, starting with the one before the predictor.
    pub residuals: Vec<f64>,
    /// Norms of the solved displacement corrections; the first is the predictor.
    pub corrections: Vec<f64>,
}

impl StepReport {
    /// Corrections after the predictor.
    pub fn iterations(&self) -> usize {
        self.corrections.len().saturating_sub(1)
    }

    /// Ratio of the last two correction norms, if there are two.
    pub fn tail_contraction(&self) -> Option<f64> {
        match self.corrections.as_slice() {
            [.., a, b] if *a > 0.0 => Some(b / a),
            _ => None,
        }
    }
}

/// Equilibrium state.
#[derive(Clone, Debug)]
pub struct Solution {
    /// Nodal displacements.
    pub u: Vec<Vec3>,
    pub energy: f64,
    pub steps: Vec<StepReport>,
    /// Residual norm at the returned state.
    pub residual: f64,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solves `K u = f` once; in nonlinear mode this is the first Newton
/// correction from the undeformed state.
pub fn solve_linear(asm: &Assembler<'_>, f_ext: &[Vec3]) -> Result<Solution> {
    let dofs = asm.dofs();
    let u0 = dofs.compose(&vec![0.0; dofs.n_free()], 1.0);
    let sys = asm.assemble(&u0, true)?;
    let r = asm.residual(f_ext, &sys.f_int);
    let r0 = norm(&r);
    let du = LinearSolver::new().solve(sys.k.as_ref().expect("tangent requested"), &r)?;
    let u = dofs.compose(&du, 1.0);
    let after = if asm.mode() == KinematicMode::Linear {
        let s = asm.assemble(&u, false)?;
        (norm(&asm.residual(f_ext, &s.f_int)), s.energy)
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(Solution {
        u,
        energy: after.1,
        steps: vec![StepReport {
            lambda: 1.0,
            residuals: vec![r0, after.0],
            corrections: vec![norm(&du)],
        }],
        residual: after.0,
    })
}

/// Incremental Newton iteration with equal load steps. External forces and
/// prescribed displacements are both scaled by the load factor.
pub fn solve_newton(asm: &Assembler<'_>, f_ext: &[Vec3], opts: &NewtonOptions) -> Result<Solution> {
    if asm.mode() == KinematicMode::Linear {
        return solve_linear(asm, f_ext);
    }
    let dofs = asm.dofs();
    let mut v = vec![0.0; dofs.n_free()];
    let mut solver = LinearSolver::new();
    let mut steps = Vec::with_capacity(opts.load_steps);
    let mut last = (f64::NAN, f64::NAN);
    let n_steps = opts.load_steps.max(1);
    for step in 1..=n_steps {
        let lambda = step as f64 / n_steps as f64;
        let f_step: Vec<Vec3> = f_ext.iter().map(|f| lambda * f).collect();
        let f_ref = norm(&dofs.restrict(&f_step));
        let mut history = Vec::new();
        let mut corrections = Vec::new();
        let mut reference = f_ref;
        let mut converged = false;
        let mut negligible_step = false;
        for it in 0..=opts.max_iterations {
            let u = dofs.compose(&v, lambda);
            let sys = asm.assemble(&u, true)?;
            let r = asm.residual(&f_step, &sys.f_int);
            let rn = norm(&r);
            history.push(rn);
            if it == 0 {
                reference = reference.max(rn);
            }
            if rn <= opts.tolerance * reference || negligible_step || (reference == 0.0 && rn == 0.0) {
                converged = true;
                last = (rn, sys.energy);
                break;
            }
            if it == opts.max_iterations || !rn.is_finite() {
                break;
            }
            let du = solver.solve(sys.k.as_ref().expect("tangent requested"), &r)?;
            for (a, b) in v.iter_mut().zip(&du) {
                *a += b;
            }
            let dn = norm(&du);
            corrections.push(dn);
            negligible_step = it > 0 && dn <= opts.tolerance * norm(&v);
        }
        if !converged {
            return Err(Error::NotConverged {
                step,
                iterations: corrections.len().saturating_sub(1),
                history,
            });
        }
        steps.push(StepReport {
            lambda,
            residuals: history,
            corrections,
        });
    }
    Ok(Solution {
        u: dofs.compose(&v, 1.0),
        energy: last.1,
        steps,
        residual: last.0,
    })
}
