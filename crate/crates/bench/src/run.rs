//! Single benchmark runs: solve, recover stresses, measure and export.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use klshell::element::KinematicMode;
use klshell::postprocess::{error_norms, export, max_value_error, Evaluator, ExportOptions, FieldSample, Format, Quantity};
use klshell::solver::{solve_linear, solve_newton, Assembler, NewtonOptions, Solution};
use klshell::Execution;
use serde::Serialize;

use crate::cases::{setup, Probe, Setup};
use crate::config::{redistribution_name, CaseConfig, Regime};
use crate::references::Reference;

/// Smallest and largest value of a sampled scalar.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extrema {
    pub min: f64,
    pub max: f64,
}

impl Extrema {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        values.into_iter().fold(None, |acc, v| {
            Some(match acc {
                None => Extrema { min: v, max: v },
                Some(e) => Extrema {
                    min: e.min.min(v),
                    max: e.max.max(v),
                },
            })
        })
    }

    pub fn range(&self) -> f64 {
        self.max - self.min
    }
}

/// Relative L2 errors against the closed-form solution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorSummary {
    pub u: Option<f64>,
    pub sigma: Option<f64>,
    pub moment: Option<f64>,
    pub cauchy: Option<f64>,
    pub cauchy_interpolated: Option<f64>,
}

/// Measurements of one run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub case: String,
    pub discretization: String,
    pub redistribution: String,
    pub regime: Regime,
    pub m: usize,
    pub slenderness: f64,
    pub skew: bool,
    pub n_dof: usize,
    pub u_a: f64,
    pub u_b: Option<f64>,
    /// `|u_A / u_A,ref - 1|` against the closed form or a published value.
    pub u_a_error: Option<f64>,
    pub u_b_error: Option<f64>,
    /// Raw physical components on the recovery grid.
    pub sigma11: Extrema,
    pub sigma22: Extrema,
    pub moment11: Extrema,
    pub cauchy11: Extrema,
    /// Constant M1 stresses (hybrid meshes only).
    pub sigma11_constant: Option<Extrema>,
    pub sigma22_constant: Option<Extrema>,
    /// Cauchy stress `N11` on the clamped cantilever edge.
    pub n_support: Option<Extrema>,
    /// Largest deviation of raw `σ11` from its mean over the stress-supplying element.
    pub sigma_oscillation: f64,
    pub errors: Option<ErrorSummary>,
    /// Newton corrections after the predictor, per load step.
    pub newton_iterations: Vec<usize>,
    /// Largest ratio of the last two correction norms over all load steps.
    pub newton_tail: Option<f64>,
    pub residual: f64,
    pub solve_seconds: f64,
    pub wall_seconds: f64,
}

/// Record plus the raw field samples.
pub struct RunOutput {
    pub record: ResultRecord,
    pub samples: Vec<FieldSample>,
    pub references: Vec<Reference>,
}

fn probe(ev: &Evaluator<'_>, p: &Probe) -> Result<f64> {
    Ok(ev.b2_point(p.xi)?.u.dot(&p.direction))
}

fn solve(s: &Setup, cfg: &CaseConfig, exec: Execution) -> Result<Solution> {
    let mode = match cfg.regime {
        Regime::Linear => KinematicMode::Linear,
        Regime::Nonlinear => KinematicMode::Nonlinear,
    };
    let asm = Assembler::new(&s.mesh, s.dofs.clone(), s.material, mode, exec)?;
    let sol = match cfg.regime {
        Regime::Linear => solve_linear(&asm, &s.f_ext)?,
        Regime::Nonlinear => solve_newton(
            &asm,
            &s.f_ext,
            &NewtonOptions {
                load_steps: cfg.load_steps,
                ..Default::default()
            },
        )?,
    };
    Ok(sol)
}

/// Runs one configuration with parallel element loops.
pub fn run_case(cfg: &CaseConfig) -> Result<RunOutput> {
    run_case_with(cfg, Execution::Parallel)
}

pub fn run_case_with(cfg: &CaseConfig, exec: Execution) -> Result<RunOutput> {
    let context = || format!("{} {} m = {} R/T = {}", cfg.case, cfg.label(), cfg.m, cfg.slenderness);
    let start = Instant::now();
    let s = setup(cfg)?;
    let t_solve = Instant::now();
    let sol = solve(&s, cfg, exec).with_context(context)?;
    let solve_seconds = t_solve.elapsed().as_secs_f64();
    let mode = match cfg.regime {
        Regime::Linear => KinematicMode::Linear,
        Regime::Nonlinear => KinematicMode::Nonlinear,
    };
    let ev = Evaluator::new(&s.mesh, s.material, mode, &sol.u).with_context(context)?;
    let samples = ev.recover_raw(cfg.grid, exec).with_context(context)?;
    let comp = |q: Quantity, i: usize| Extrema::of(samples.iter().map(|x| x.physical(q, i, i))).expect("samples");
    let (sigma11_constant, sigma22_constant) = if s.mesh.m1().is_some() {
        let c = ev.recover_constant(exec).with_context(context)?;
        (
            Extrema::of(c.iter().map(|x| x.physical(Quantity::Sigma, 0, 0))),
            Extrema::of(c.iter().map(|x| x.physical(Quantity::Sigma, 1, 1))),
        )
    } else {
        (None, None)
    };
    let n_support = s
        .tip_load
        .and_then(|_| Extrema::of(samples.iter().filter(|x| x.xi[0] == 0.0).map(|x| x.physical(Quantity::Cauchy, 0, 0))));
    let errors = match &s.analytic {
        Some(a) => {
            let r = error_norms(&ev, a, s.n_dof, exec).with_context(context)?;
            Some(ErrorSummary {
                u: r.e_u,
                sigma: r.e_sigma,
                moment: r.e_moment,
                cauchy: r.e_cauchy,
                cauchy_interpolated: r.e_cauchy_interpolated,
            })
        }
        None => None,
    };
    let u_a = probe(&ev, &s.point_a)?;
    let u_b = s.point_b.as_ref().map(|p| probe(&ev, p)).transpose()?;
    let u_a_ref = s.analytic.map(|a| a.u_a()).or(s.reference_a.map(|r| r.value));
    let record = ResultRecord {
        case: cfg.case.to_string(),
        discretization: cfg.label(),
        redistribution: redistribution_name(s.mesh.mode).into(),
        regime: cfg.regime,
        m: cfg.m,
        slenderness: cfg.slenderness,
        skew: cfg.skew,
        n_dof: s.n_dof,
        u_a,
        u_b,
        u_a_error: u_a_ref.map(|r| max_value_error(u_a, r)),
        u_b_error: match (u_b, s.reference_b) {
            (Some(v), Some(r)) => Some(max_value_error(v, r.value)),
            _ => None,
        },
        sigma11: comp(Quantity::Sigma, 0),
        sigma22: comp(Quantity::Sigma, 1),
        moment11: comp(Quantity::Moment, 0),
        cauchy11: comp(Quantity::Cauchy, 0),
        sigma11_constant,
        sigma22_constant,
        n_support,
        sigma_oscillation: oscillation(&samples),
        errors,
        newton_iterations: sol.steps.iter().map(|r| r.iterations()).collect(),
        newton_tail: sol.steps.iter().filter_map(|r| r.tail_contraction()).reduce(f64::max),
        residual: sol.residual,
        solve_seconds,
        wall_seconds: start.elapsed().as_secs_f64(),
    };
    let references = [s.reference_a, s.reference_b].into_iter().flatten().collect();
    Ok(RunOutput {
        record,
        samples,
        references,
    })
}

/// Largest deviation of raw `σ11` from the mean over the samples that share
/// the element supplying the membrane stress.
pub fn oscillation(samples: &[FieldSample]) -> f64 {
    let mut groups: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for x in samples {
        groups.entry(x.source).or_default().push(x.physical(Quantity::Sigma, 0, 0));
    }
    groups.values().fold(0.0f64, |worst, v| {
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        v.iter().fold(worst, |w, x| w.max((x - mean).abs()))
    })
}

#[derive(Serialize)]
struct RunMetadata<'a> {
    config: &'a str,
    record: &'a ResultRecord,
    references: &'a [Reference],
}

/// Writes `fields.csv`, `fields.vtk` and `run.json` into `dir`.
pub fn write_outputs(cfg: &CaseConfig, out: &RunOutput, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let opts = ExportOptions::default();
    export(&out.samples, &dir.join("fields.csv"), Format::Csv, &opts)?;
    export(&out.samples, &dir.join("fields.vtk"), Format::Vtk, &opts)?;
    let meta = RunMetadata {
        config: &cfg.to_text(),
        record: &out.record,
        references: &out.references,
    };
    let path = dir.join("run.json");
    std::fs::write(&path, serde_json::to_string_pretty(&meta)?).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
