//! Mesh convergence sweeps and dof-efficiency scans.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use klshell::hybrid::Discretization;
use serde::Serialize;

use crate::config::CaseConfig;
use crate::run::{run_case, ResultRecord};

/// Error measure tracked along a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Measure {
    U,
    Sigma,
    Moment,
    Cauchy,
    /// Max-value error of `u_A`.
    UA,
}

impl Measure {
    pub const ALL: [Measure; 5] = [Measure::U, Measure::Sigma, Measure::Moment, Measure::Cauchy, Measure::UA];

    pub fn name(self) -> &'static str {
        match self {
            Measure::U => "e_u",
            Measure::Sigma => "e_sigma",
            Measure::Moment => "e_M",
            Measure::Cauchy => "e_N",
            Measure::UA => "e_uA",
        }
    }

    pub fn of(self, r: &ResultRecord) -> Option<f64> {
        let e = r.errors.as_ref();
        match self {
            Measure::U => e.and_then(|e| e.u),
            Measure::Sigma => e.and_then(|e| e.sigma),
            Measure::Moment => e.and_then(|e| e.moment),
            Measure::Cauchy => e.and_then(|e| e.cauchy),
            Measure::UA => r.u_a_error,
        }
    }
}

/// One mesh of a sweep; failures are kept as messages.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub m: usize,
    pub result: std::result::Result<ResultRecord, String>,
}

#[derive(Clone, Debug)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn records(&self) -> impl Iterator<Item = &ResultRecord> {
        self.rows.iter().filter_map(|r| r.result.as_ref().ok())
    }

    /// `(n_dof, error)` of the successful rows that provide `measure`.
    pub fn series(&self, measure: Measure) -> Vec<(usize, f64)> {
        self.records().filter_map(|r| measure.of(r).map(|e| (r.n_dof, e))).collect()
    }

    /// Observed convergence rates `-Δ ln e / Δ ln n_dof` between successive
    /// entries of the series; empty for fewer than two entries.
    pub fn rates(&self, measure: Measure) -> Vec<f64> {
        rates(&self.series(measure))
    }

    /// Sweep table with one line per mesh and rates relative to the
    /// previous successful row. Contains no timings, so reruns are
    /// byte-identical.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,n_dof,u_a,u_b,sigma11_min,sigma11_max,M11_min,M11_max,N11_min,N11_max");
        for q in Measure::ALL {
            let _ = write!(out, ",{0},rate_{0}", q.name());
        }
        out.push_str(",newton_max_iterations,status\n");
        let mut prev: Option<&ResultRecord> = None;
        for row in &self.rows {
            match &row.result {
                Ok(r) => {
                    let _ = write!(
                        out,
                        "{},{},{:.16e},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                        row.m,
                        r.n_dof,
                        r.u_a,
                        opt(r.u_b),
                        r.sigma11.min,
                        r.sigma11.max,
                        r.moment11.min,
                        r.moment11.max,
                        r.cauchy11.min,
                        r.cauchy11.max
                    );
                    for q in Measure::ALL {
                        let rate = match (prev, q.of(r)) {
                            (Some(p), Some(e)) => q.of(p).map(|e0| rate(p.n_dof, e0, r.n_dof, e)),
                            _ => None,
                        };
                        let _ = write!(out, ",{},{}", opt(q.of(r)), opt(rate));
                    }
                    let iters = r.newton_iterations.iter().max().copied().unwrap_or(0);
                    let _ = writeln!(out, ",{iters},ok");
                    prev = Some(r);
                }
                Err(msg) => {
                    let _ = write!(out, "{},,,,,,,,,", row.m);
                    for _ in Measure::ALL {
                        out.push_str(",,");
                    }
                    let _ = writeln!(out, ",,\"failed: {}\"", msg.replace('"', "'"));
                }
            }
        }
        out
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

fn rate(n0: usize, e0: f64, n1: usize, e1: f64) -> f64 {
    -(e1 / e0).ln() / (n1 as f64 / n0 as f64).ln()
}

pub fn rates(series: &[(usize, f64)]) -> Vec<f64> {
    series.windows(2).map(|w| rate(w[0].0, w[0].1, w[1].0, w[1].1)).collect()
}

/// Least-squares slope of `ln e` over `ln x`.
pub fn fitted_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Number of leading steps in which the error does not decrease.
pub fn nonmonotone_prefix(errors: &[f64]) -> usize {
    errors.windows(2).take_while(|w| w[1] >= w[0]).count()
}

/// True when every step strictly decreases the error.
pub fn strictly_decreasing(errors: &[f64]) -> bool {
    errors.windows(2).all(|w| w[1] < w[0])
}

/// Runs `template` for every `m` in ascending order. Row failures are
/// recorded and the sweep continues.
pub fn convergence_sweep(template: &CaseConfig, ms: &[usize]) -> Result<SweepTable> {
    if ms.windows(2).any(|w| w[1] <= w[0]) {
        bail!("mesh sizes must be strictly ascending, got {ms:?}");
    }
    let rows = ms
        .iter()
        .map(|&m| SweepRow {
            m,
            result: run_case(&template.with_m(m)).map(|o| o.record).map_err(|e| format!("{e:#}")),
        })
        .collect();
    Ok(SweepTable { rows })
}

/// Required dofs for one slenderness, discretization and target.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EfficiencyPoint {
    pub slenderness: f64,
    pub discretization: String,
    pub measure: Measure,
    pub target: f64,
    /// Smallest swept `n_dof` whose error is below the target; `None` if no
    /// mesh of the sweep reaches it.
    pub n_dof: Option<usize>,
}

/// For each slenderness and discretization, sweeps `ms` and reports the
/// smallest dof count meeting each target.
pub fn efficiency_scan(
    template: &CaseConfig,
    discretizations: &[(Discretization, usize)],
    targets: &[(Measure, f64)],
    slenderness: &[f64],
    ms: &[usize],
) -> Result<Vec<EfficiencyPoint>> {
    let mut out = Vec::new();
    for &rt in slenderness {
        for &(disc, p) in discretizations {
            let cfg = CaseConfig {
                discretization: disc,
                degree: p,
                slenderness: rt,
                ..template.clone()
            };
            let table = convergence_sweep(&cfg, ms)?;
            for &(measure, target) in targets {
                let n_dof = table.series(measure).into_iter().find(|&(_, e)| e < target).map(|(n, _)| n);
                out.push(EfficiencyPoint {
                    slenderness: rt,
                    discretization: cfg.label(),
                    measure,
                    target,
                    n_dof,
                });
            }
        }
    }
    Ok(out)
}

/// Efficiency diagram data as CSV.
pub fn efficiency_csv(points: &[EfficiencyPoint]) -> String {
    let mut out = String::from("rt,discretization,measure,target,n_dof\n");
    for p in points {
        let n = p.n_dof.map(|n| n.to_string()).unwrap_or_else(|| "unreached".into());
        let _ = writeln!(out, "{},{},{},{},{}", p.slenderness, p.discretization, p.measure.name(), p.target, n);
    }
    out
}
