//! Command line front end: single runs, mesh sweeps and efficiency scans.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;
use klshell::hybrid::Discretization;
use klshell_bench::{convergence_sweep, efficiency_csv, efficiency_scan, parse_m_list, run_case, write_outputs, CaseConfig, Measure};

#[derive(Parser, Debug)]
#[command(name = "klshell-bench", version, about = "Kirchhoff-Love shell benchmarks")]
struct Cli {
    /// Configuration file with `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// cantilever, scordelis or hemisphere.
    #[arg(long)]
    case: Option<String>,
    /// b2m1, bpmp or bNmN (e.g. b3m3).
    #[arg(long)]
    disc: Option<String>,
    /// Spline degree for bpmp.
    #[arg(long)]
    p: Option<usize>,
    /// Elements per direction.
    #[arg(long)]
    m: Option<usize>,
    /// Slenderness R/T.
    #[arg(long)]
    rt: Option<f64>,
    #[arg(long)]
    nonlinear: bool,
    /// Skewed control net (Scordelis-Lo only).
    #[arg(long)]
    skew: bool,
    /// none, lateral or full.
    #[arg(long)]
    redistribute: Option<String>,
    #[arg(long)]
    load_steps: Option<usize>,
    /// Comma separated mesh sizes; runs a convergence sweep.
    #[arg(long)]
    sweep: Option<String>,
    /// Comma separated slenderness values; with `--sweep`, runs the dof
    /// efficiency scan for B2M1 and B2M2 through B5M5.
    #[arg(long)]
    efficiency: Option<String>,
    /// Relative error target of the efficiency scan.
    #[arg(long, default_value_t = 1e-3)]
    target: f64,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn config(&self) -> Result<CaseConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                CaseConfig::from_text(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => CaseConfig::new(klshell_bench::Case::Cantilever),
        };
        let mut flags: Vec<(&str, String)> = Vec::new();
        if let Some(v) = &self.case {
            flags.push(("case", v.clone()));
        }
        if let Some(v) = &self.disc {
            flags.push(("disc", v.clone()));
        }
        if let Some(v) = self.p {
            flags.push(("p", v.to_string()));
        }
        if let Some(v) = self.m {
            flags.push(("m", v.to_string()));
        }
        if let Some(v) = self.rt {
            flags.push(("rt", v.to_string()));
        }
        if self.nonlinear {
            flags.push(("nonlinear", "true".into()));
        }
        if self.skew {
            flags.push(("skew", "true".into()));
        }
        if let Some(v) = &self.redistribute {
            flags.push(("redistribute", v.clone()));
        }
        if let Some(v) = self.load_steps {
            flags.push(("load_steps", v.to_string()));
        }
        for (key, value) in &flags {
            cfg.set(key, value).with_context(|| format!("--{key}"))?;
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let cfg = cli.config()?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("results"));
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;

    match (&cli.sweep, &cli.efficiency) {
        (Some(ms), Some(rts)) => {
            let ms = parse_m_list(ms)?;
            let rts: Vec<f64> = rts
                .split(',')
                .map(|t| t.trim().parse().with_context(|| format!("invalid slenderness `{t}`")))
                .collect::<Result<_>>()?;
            let mut discs = vec![(Discretization::B2M1, 2)];
            discs.extend((2..=5).map(|p| (Discretization::BpMp, p)));
            let measures: Vec<(Measure, f64)> = [Measure::U, Measure::Sigma, Measure::Moment, Measure::Cauchy]
                .into_iter()
                .map(|q| (q, cli.target))
                .collect();
            let points = efficiency_scan(&cfg, &discs, &measures, &rts, &ms)?;
            let path = dir.join("efficiency.csv");
            std::fs::write(&path, efficiency_csv(&points))?;
            println!("wrote {}", path.display());
        }
        (Some(ms), None) => {
            let ms = parse_m_list(ms)?;
            let table = convergence_sweep(&cfg, &ms)?;
            for row in &table.rows {
                match &row.result {
                    Ok(r) => println!(
                        "m = {:4}  n_dof = {:7}  u_A = {:.10e}  ({:.2} s)",
                        row.m, r.n_dof, r.u_a, r.wall_seconds
                    ),
                    Err(e) => println!("m = {:4}  failed: {e}", row.m),
                }
            }
            let path = dir.join("results.csv");
            std::fs::write(&path, table.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        (None, Some(_)) => anyhow::bail!("--efficiency needs a mesh list given with --sweep"),
        (None, None) => {
            let out = run_case(&cfg)?;
            let r = &out.record;
            println!("{} {} m = {} R/T = {}  n_dof = {}", r.case, r.discretization, r.m, r.slenderness, r.n_dof);
            println!("u_A = {:.10e}", r.u_a);
            if let Some(u_b) = r.u_b {
                println!("u_B = {u_b:.10e}");
            }
            if let Some(e) = r.u_a_error {
                println!("u_A error = {e:.3e}");
            }
            println!("sigma11 in [{:.6e}, {:.6e}]", r.sigma11.min, r.sigma11.max);
            println!("sigma22 in [{:.6e}, {:.6e}]", r.sigma22.min, r.sigma22.max);
            if let Some(e) = &r.errors {
                println!("e_u = {:?}  e_sigma = {:?}  e_M = {:?}  e_N = {:?}", e.u, e.sigma, e.moment, e.cauchy);
            }
            write_outputs(&cfg, &out, &dir)?;
            println!("wrote {}", dir.display());
        }
    }
    Ok(())
}
