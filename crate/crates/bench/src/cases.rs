//! Geometry, material, constraints and loads of the three benchmark problems.

use anyhow::{Context, Result};
use klshell::element::Edge;
use klshell::geometry::benchmarks::{HEMISPHERE_RADIUS, SCORDELIS_RADIUS};
use klshell::geometry::{apply_skew, make_cantilever, make_hemisphere, make_scordelis};
use klshell::hybrid::{build_hybrid, HybridMesh};
use klshell::material::KoiterMaterial;
use klshell::solver::{bc, external_force, DofMap, Loads};
use klshell::{Execution, Vec3};

use crate::analytic::Cantilever;
use crate::config::{Case, CaseConfig, Regime};
use crate::references::{self, Reference};

/// Cantilever radius.
pub const CANTILEVER_RADIUS: f64 = 10.0;
/// Cantilever width.
pub const CANTILEVER_WIDTH: f64 = 1.0;
/// Stress unit of the roof problem.
pub const SCORDELIS_E0: f64 = 1e8;
/// Stress unit of the hemisphere problem.
pub const HEMISPHERE_E0: f64 = 1e7;

/// Displacement probe: the component along `direction` of the displacement
/// at knot parameters `xi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Probe {
    pub xi: [f64; 2],
    pub direction: Vec3,
}

/// Fully specified discrete problem.
#[derive(Clone, Debug)]
pub struct Setup {
    pub mesh: HybridMesh,
    pub dofs: DofMap,
    pub material: KoiterMaterial,
    pub f_ext: Vec<Vec3>,
    pub point_a: Probe,
    pub point_b: Option<Probe>,
    /// Tip force of the cantilever (the exact Cauchy stress at the support).
    pub tip_load: Option<f64>,
    /// Closed-form solution, where one exists for the configuration.
    pub analytic: Option<Cantilever>,
    /// Published values for u_A and u_B.
    pub reference_a: Option<Reference>,
    pub reference_b: Option<Reference>,
    /// Number of dofs by the benchmark convention.
    pub n_dof: usize,
}

pub fn setup(cfg: &CaseConfig) -> Result<Setup> {
    cfg.validate()?;
    let built = match cfg.case {
        Case::Cantilever => cantilever(cfg),
        Case::Scordelis => scordelis(cfg),
        Case::Hemisphere => hemisphere(cfg),
    };
    built.with_context(|| format!("setting up {} {} m = {}", cfg.case, cfg.label(), cfg.m))
}

fn mesh(cfg: &CaseConfig, patch: klshell::geometry::NurbsPatch) -> Result<HybridMesh> {
    Ok(build_hybrid(patch, cfg.discretization, cfg.redistribution)?)
}

fn cantilever(cfg: &CaseConfig) -> Result<Setup> {
    let r = CANTILEVER_RADIUS;
    let t = r / cfg.slenderness;
    let q = -cfg.load_scale;
    // qR³/(ELT³) = -0.1 (linear) or -1 (nonlinear) at q = -1
    let ratio = match cfg.regime {
        Regime::Linear => 0.1,
        Regime::Nonlinear => 1.0,
    };
    let young = r.powi(3) / (ratio * CANTILEVER_WIDTH * t.powi(3));
    let patch = make_cantilever(r, CANTILEVER_WIDTH, cfg.m, cfg.degree)?;
    let dims = patch.n_nodes_dir();
    let mesh = mesh(cfg, patch)?;
    let mut dofs = DofMap::new(mesh.n_nodes());
    bc::clamp_edge(&mut dofs, dims, Edge::WEST, 2)?;
    let loads = Loads {
        edges: vec![(Edge::EAST, Vec3::new(q / CANTILEVER_WIDTH, 0.0, 0.0))],
        ..Default::default()
    };
    let f_ext = external_force(&mesh, &loads, Execution::Parallel)?;
    let linear = cfg.regime == Regime::Linear;
    Ok(Setup {
        mesh,
        dofs,
        material: KoiterMaterial::new(young, 0.0, t),
        f_ext,
        point_a: Probe {
            xi: [1.0, 0.5],
            direction: Vec3::x(),
        },
        point_b: None,
        tip_load: Some(q / CANTILEVER_WIDTH),
        analytic: linear.then_some(Cantilever {
            q,
            radius: r,
            young,
            thickness: t,
            width: CANTILEVER_WIDTH,
        }),
        reference_a: (!linear && cfg.slenderness == 1000.0 && cfg.load_scale == 1.0).then_some(references::CANTILEVER_NL_U_A),
        reference_b: None,
        n_dof: 3 * dims[0],
    })
}

fn scordelis(cfg: &CaseConfig) -> Result<Setup> {
    let t = SCORDELIS_RADIUS / cfg.slenderness;
    let mut young = 4.32 * SCORDELIS_E0;
    if cfg.regime == Regime::Nonlinear {
        young /= 15.0;
    }
    let q = -1.44e-5 * SCORDELIS_E0 * t * t * cfg.load_scale;
    let mut patch = make_scordelis(cfg.m, cfg.degree)?;
    if cfg.skew {
        patch = apply_skew(&patch);
    }
    let dims = patch.n_nodes_dir();
    let mesh = mesh(cfg, patch)?;
    let mut dofs = DofMap::new(mesh.n_nodes());
    bc::diaphragm(&mut dofs, dims, Edge::SOUTH, &[0, 2])?;
    bc::diaphragm(&mut dofs, dims, Edge::NORTH, &[0, 2])?;
    let loads = Loads {
        surface: Some(Vec3::new(0.0, 0.0, q)),
        ..Default::default()
    };
    let f_ext = external_force(&mesh, &loads, Execution::Parallel)?;
    let published = cfg.regime == Regime::Linear && cfg.load_scale == 1.0;
    let reference_a = match cfg.slenderness {
        rt if published && rt == 100.0 => Some(references::SCORDELIS_U_A_100),
        rt if published && rt == 1e4 => Some(references::SCORDELIS_U_A_10K),
        _ => None,
    };
    Ok(Setup {
        mesh,
        dofs,
        material: KoiterMaterial::new(young, 0.0, t),
        f_ext,
        point_a: Probe {
            xi: [0.0, 0.5],
            direction: -Vec3::z(),
        },
        point_b: None,
        tip_load: None,
        analytic: None,
        reference_a,
        reference_b: None,
        n_dof: 3 * dims[0] * dims[1],
    })
}

fn hemisphere(cfg: &CaseConfig) -> Result<Setup> {
    let t = HEMISPHERE_RADIUS / cfg.slenderness;
    let mut p = 2e-7 * HEMISPHERE_E0 * (25.0 * t).powi(3) * cfg.load_scale;
    if cfg.regime == Regime::Nonlinear {
        p *= 100.0;
    }
    let patch = make_hemisphere(cfg.m, cfg.degree)?;
    let dims = patch.n_nodes_dir();
    let mesh = mesh(cfg, patch)?;
    let mut dofs = DofMap::new(mesh.n_nodes());
    bc::symmetry_plane(&mut dofs, dims, Edge::WEST, 1)?;
    bc::symmetry_plane(&mut dofs, dims, Edge::EAST, 0)?;
    let (a, b) = (0, dims[0] - 1);
    dofs.fix(a, 2, 0.0);
    // half loads: both load points lie on symmetry planes
    let loads = Loads {
        point: vec![(a, Vec3::new(0.5 * p, 0.0, 0.0)), (b, Vec3::new(0.0, -0.5 * p, 0.0))],
        ..Default::default()
    };
    let f_ext = external_force(&mesh, &loads, Execution::Parallel)?;
    let published = cfg.slenderness == 250.0 && cfg.load_scale == 1.0;
    let (reference_a, reference_b) = match cfg.regime {
        Regime::Linear if published => (Some(references::HEMISPHERE_U_A), None),
        Regime::Nonlinear if published => (Some(references::HEMISPHERE_NL_U_A), Some(references::HEMISPHERE_NL_U_B)),
        _ => (None, None),
    };
    Ok(Setup {
        mesh,
        dofs,
        material: KoiterMaterial::new(6.825 * HEMISPHERE_E0, 0.3, t),
        f_ext,
        point_a: Probe {
            xi: [0.0, 0.0],
            direction: Vec3::x(),
        },
        point_b: Some(Probe {
            xi: [1.0, 0.0],
            direction: Vec3::y(),
        }),
        tip_load: None,
        analytic: None,
        reference_a,
        reference_b,
        n_dof: 3 * dims[0] * dims[1],
    })
}
