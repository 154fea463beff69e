//! Global assembly of internal forces and the reduced tangent.
//!
//! Membrane elements of the hybrid discretization act on the redistributed
//! positions `W^T x`; their local node `k` therefore couples to every global
//! node in column `k` of `W`. Each element is expanded to that set of global
//! nodes before scattering, which is the per-element form of
//! `f += W f_m` and `K += W K_m W^T`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use super::dofs::DofMap;
use super::sparse::{SparsePattern, SymMatrix};
use crate::element::{edge_traction, evaluate_element, surface_load, Edge, ElementSet, KinematicMode};
use crate::hybrid::HybridMesh;
use crate::material::KoiterMaterial;
use crate::{Execution, Result, Vec3};

/// Elements evaluated in parallel before their contributions are scattered.
const BATCH: usize = 2048;

/// Dead loads on the patch.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Loads {
    /// Nodal point forces.
    pub point: Vec<(usize, Vec3)>,
    /// Constant force per unit reference area.
    pub surface: Option<Vec3>,
    /// Constant tractions per unit reference length along patch edges.
    pub edges: Vec<(Edge, Vec3)>,
}

/// Full nodal external force vector.
pub fn external_force(mesh: &HybridMesh, loads: &Loads, exec: Execution) -> Result<Vec<Vec3>> {
    let n = mesh.n_nodes();
    let mut f = vec![Vec3::zeros(); n];
    for &(node, p) in &loads.point {
        f[node] += p;
    }
    if let Some(q) = loads.surface {
        let set = &mesh.bending;
        let points = mesh.patch().points();
        let parts = exec.map_range(0..set.n_elements(), |e| -> Result<(Vec<usize>, DVector<f64>)> {
            let nodes = set.element_nodes(e);
            let x: Vec<Vec3> = nodes.iter().map(|&k| points[k]).collect();
            Ok((nodes, surface_load(&set.quad_points(e), &x, q)?))
        });
        for part in parts {
            let (nodes, fe) = part?;
            for (i, &k) in nodes.iter().enumerate() {
                f[k] += Vec3::new(fe[3 * i], fe[3 * i + 1], fe[3 * i + 2]);
            }
        }
    }
    for &(edge, t) in &loads.edges {
        for (node, v) in edge_traction(mesh.patch(), edge, t)? {
            f[node] += v;
        }
    }
    Ok(f)
}

/// Result of one assembly pass.
#[derive(Clone, Debug)]
pub struct GlobalSystem {
    /// Internal forces at every node.
    pub f_int: Vec<Vec3>,
    /// Reduced tangent `T^T K T`, when requested.
    pub k: Option<SymMatrix>,
    /// Total strain energy.
    pub energy: f64,
}

/// Element expanded to global nodes: `weights[(g, k)]` is the share of local
/// node `k` carried by global node `nodes[g]`.
struct Expansion {
    nodes: Vec<usize>,
    weights: Option<DMatrix<f64>>,
}

struct Contribution {
    nodes: Vec<usize>,
    f: DVector<f64>,
    k: Option<DMatrix<f64>>,
    energy: f64,
}

/// Assembles the global system of a hybrid mesh under fixed constraints.
pub struct Assembler<'a> {
    mesh: &'a HybridMesh,
    dofs: DofMap,
    material: KoiterMaterial,
    mode: KinematicMode,
    exec: Execution,
    x_ref: Vec<Vec3>,
    x_ref_m: Vec<Vec3>,
    pattern: Arc<SparsePattern>,
}

impl<'a> Assembler<'a> {
    pub fn new(
        mesh: &'a HybridMesh,
        dofs: DofMap,
        material: KoiterMaterial,
        mode: KinematicMode,
        exec: Execution,
    ) -> Result<Self> {
        if dofs.n_nodes() != mesh.n_nodes() {
            return Err(crate::Error::Dimension {
                expected: mesh.n_nodes(),
                got: dofs.n_nodes(),
            });
        }
        let x_ref = mesh.patch().points().to_vec();
        let x_ref_m = mesh.membrane_reference();
        let mut a = Self {
            mesh,
            dofs,
            material,
            mode,
            exec,
            x_ref,
            x_ref_m,
            pattern: Arc::new(SparsePattern::from_columns(0, Vec::new())),
        };
        a.pattern = Arc::new(a.build_pattern());
        Ok(a)
    }

    pub fn dofs(&self) -> &DofMap {
        &self.dofs
    }

    pub fn mesh(&self) -> &HybridMesh {
        self.mesh
    }

    pub fn material(&self) -> &KoiterMaterial {
        &self.material
    }

    pub fn mode(&self) -> KinematicMode {
        self.mode
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn pattern(&self) -> &Arc<SparsePattern> {
        &self.pattern
    }

    fn sets(&self) -> Vec<(&dyn ElementSet, bool)> {
        let mut v: Vec<(&dyn ElementSet, bool)> = vec![(&self.mesh.bending, false)];
        if let Some(m) = &self.mesh.membrane {
            v.push((m, !self.mesh.w.is_identity()));
        }
        v
    }

    fn expansion(&self, set: &dyn ElementSet, redistributed: bool, e: usize) -> Expansion {
        let local = set.element_nodes(e);
        if !redistributed {
            return Expansion {
                nodes: local,
                weights: None,
            };
        }
        let cols: Vec<Vec<(usize, f64)>> = local.iter().map(|&k| self.mesh.w.column(k)).collect();
        let mut nodes: Vec<usize> = cols.iter().flatten().map(|&(i, _)| i).collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut w = DMatrix::zeros(nodes.len(), local.len());
        for (k, col) in cols.iter().enumerate() {
            for &(i, v) in col {
                let g = nodes.binary_search(&i).expect("node collected above");
                w[(g, k)] += v;
            }
        }
        Expansion {
            nodes,
            weights: Some(w),
        }
    }

    fn build_pattern(&self) -> SparsePattern {
        let n_nodes = self.mesh.n_nodes();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
        for (set, red) in self.sets() {
            for e in 0..set.n_elements() {
                let ex = self.expansion(set, red, e);
                for &a in &ex.nodes {
                    adj[a].extend(ex.nodes.iter().copied().filter(|&b| b >= a));
                }
            }
        }
        let n = self.dofs.n_free();
        let mut cols: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            for &b in list.iter() {
                for ca in 0..3 {
                    let Some(ra) = self.dofs.reduced(DofMap::dof(a, ca)) else { continue };
                    for cb in 0..3 {
                        let Some(rb) = self.dofs.reduced(DofMap::dof(b, cb)) else { continue };
                        let (r, c) = if ra >= rb { (ra, rb) } else { (rb, ra) };
                        cols[c].push(r);
                    }
                }
            }
        }
        SparsePattern::from_columns(n, cols)
    }

    fn element(
        &self,
        set: &dyn ElementSet,
        redistributed: bool,
        e: usize,
        u: &[Vec3],
        u_m: &[Vec3],
        want_k: bool,
    ) -> Result<Contribution> {
        let local = set.element_nodes(e);
        let (xr, ul) = if redistributed { (self.x_ref_m.as_slice(), u_m) } else { (self.x_ref.as_slice(), u) };
        let xr: Vec<Vec3> = local.iter().map(|&k| xr[k]).collect();
        let ul: Vec<Vec3> = local.iter().map(|&k| ul[k]).collect();
        let m = evaluate_element(&set.quad_points(e), &xr, &ul, &self.material, set.kind(), self.mode, want_k)?;
        let k = want_k.then(|| m.tangent());
        let ex = self.expansion(set, redistributed, e);
        match ex.weights {
            None => Ok(Contribution {
                nodes: ex.nodes,
                f: m.f_int,
                k,
                energy: m.energy,
            }),
            Some(w) => {
                let t = w.kronecker(&DMatrix::<f64>::identity(3, 3));
                Ok(Contribution {
                    nodes: ex.nodes,
                    f: &t * m.f_int,
                    k: k.map(|k| &t * k * t.transpose()),
                    energy: m.energy,
                })
            }
        }
    }

    /// Assembles internal forces (and optionally the reduced tangent) at the
    /// full nodal displacement `u`.
    pub fn assemble(&self, u: &[Vec3], want_k: bool) -> Result<GlobalSystem> {
        let n_nodes = self.mesh.n_nodes();
        if u.len() != n_nodes {
            return Err(crate::Error::Dimension {
                expected: n_nodes,
                got: u.len(),
            });
        }
        let u_m = match &self.mesh.membrane {
            Some(_) if !self.mesh.w.is_identity() => self.mesh.w.apply_transpose(u)?,
            _ => Vec::new(),
        };
        let mut f_int = vec![Vec3::zeros(); n_nodes];
        let mut k = want_k.then(|| SymMatrix::zeros(self.pattern.clone()));
        let mut energy = 0.0;
        let mut red = Vec::new();
        for (set, redistributed) in self.sets() {
            let ne = set.n_elements();
            let mut start = 0;
            while start < ne {
                let end = (start + BATCH).min(ne);
                let parts = self.exec.map_range(start..end, |e| {
                    self.element(set, redistributed, e, u, &u_m, want_k)
                });
                for part in parts {
                    let c = part?;
                    energy += c.energy;
                    for (i, &node) in c.nodes.iter().enumerate() {
                        f_int[node] += Vec3::new(c.f[3 * i], c.f[3 * i + 1], c.f[3 * i + 2]);
                    }
                    if let (Some(kg), Some(ke)) = (k.as_mut(), c.k.as_ref()) {
                        red.clear();
                        red.extend(
                            c.nodes
                                .iter()
                                .flat_map(|&nd| (0..3).map(move |cc| DofMap::dof(nd, cc)))
                                .map(|d| self.dofs.reduced(d)),
                        );
                        for (j, rj) in red.iter().enumerate() {
                            let Some(rj) = *rj else { continue };
                            for (i, ri) in red.iter().enumerate() {
                                let Some(ri) = *ri else { continue };
                                if ri >= rj {
                                    kg.add_lower(ri, rj, ke[(i, j)]);
                                }
                            }
                        }
                    }
                }
                start = end;
            }
        }
        Ok(GlobalSystem { f_int, k, energy })
    }

    /// Reduced residual `T^T (f_ext - f_int)`.
    pub fn residual(&self, f_ext: &[Vec3], f_int: &[Vec3]) -> Vec<f64> {
        let diff: Vec<Vec3> = f_ext.iter().zip(f_int).map(|(a, b)| a - b).collect();
        self.dofs.restrict(&diff)
    }
}
