#![allow(dead_code)]

use klshell::element::{Edge, KinematicMode};
use klshell::geometry::{make_cantilever, KnotVector, NurbsPatch};
use klshell::hybrid::{build_hybrid, Discretization, HybridMesh, RedistributionMode};
use klshell::material::KoiterMaterial;
use klshell::solver::{bc, external_force, solve_linear, Assembler, DofMap, Loads, Solution};
use klshell::{Execution, Vec3};

/// Flat `lx x ly` plate in the xy plane with `m x m` elements of degree `p`.
/// Control points at the Greville abscissae reproduce the affine map exactly.
pub fn flat_plate(lx: f64, ly: f64, m: usize, p: usize) -> NurbsPatch {
    let k1 = KnotVector::uniform(p, m).unwrap();
    let k2 = KnotVector::uniform(p, m).unwrap();
    let (g1, g2) = (k1.greville(), k2.greville());
    let mut pts = Vec::new();
    for &b in &g2 {
        for &a in &g1 {
            pts.push(Vec3::new(lx * a, ly * b, 0.0));
        }
    }
    let n = pts.len();
    NurbsPatch::new(k1, k2, pts, vec![1.0; n]).unwrap()
}

pub struct Cantilever {
    pub mesh: HybridMesh,
    pub dofs: DofMap,
    pub material: KoiterMaterial,
    pub f: Vec<Vec3>,
    pub dims: [usize; 2],
}

pub const R: f64 = 10.0;

/// Linear cantilever strip with `q R^3 / (E L T^3) = -0.1`, `q = -1`.
pub fn cantilever(disc: Discretization, p: usize, m: usize, rt: f64, mode: RedistributionMode) -> Cantilever {
    let t = R / rt;
    let young = R.powi(3) / (0.1 * t.powi(3));
    let patch = make_cantilever(R, 1.0, m, p).unwrap();
    let dims = patch.n_nodes_dir();
    let mesh = build_hybrid(patch, disc, mode).unwrap();
    let mut dofs = DofMap::new(mesh.n_nodes());
    bc::clamp_edge(&mut dofs, dims, Edge::WEST, 2).unwrap();
    let loads = Loads {
        edges: vec![(Edge::EAST, Vec3::new(-1.0, 0.0, 0.0))],
        ..Default::default()
    };
    let f = external_force(&mesh, &loads, Execution::Sequential).unwrap();
    Cantilever {
        mesh,
        dofs,
        material: KoiterMaterial::new(young, 0.0, t),
        f,
        dims,
    }
}

impl Cantilever {
    pub fn solve(&self, mode: KinematicMode) -> Solution {
        let asm = Assembler::new(&self.mesh, self.dofs.clone(), self.material, mode, Execution::Parallel).unwrap();
        solve_linear(&asm, &self.f).unwrap()
    }

    pub fn tip(&self, s: &Solution) -> f64 {
        s.u[self.dims[0] - 1].x
    }
}

/// Deterministic pseudo-random numbers in [-1, 1].
pub fn noise(n: usize, seed: u64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
}
