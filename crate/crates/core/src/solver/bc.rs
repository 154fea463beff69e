//! Boundary condition presets for structured control nets.

use super::dofs::DofMap;
use crate::element::Edge;
use crate::{Error, Result};

/// Nodes of the control row at distance `row` from `edge` on an `n1 x n2` net,
/// ordered along the edge.
pub fn edge_row(dims: [usize; 2], edge: Edge, row: usize) -> Result<Vec<usize>> {
    let [n1, n2] = dims;
    let idx = |i: usize, j: usize| i + n1 * j;
    Ok(match edge.0 {
        0 => (0..n1).map(|i| idx(i, row)).collect(),
        1 => (0..n2).map(|j| idx(n1 - 1 - row, j)).collect(),
        2 => (0..n1).map(|i| idx(i, n2 - 1 - row)).collect(),
        3 => (0..n2).map(|j| idx(row, j)).collect(),
        e => return Err(Error::InvalidEdge(e)),
    })
}

/// Fixes the listed components of the first `rows` control rows along `edge`.
pub fn fix_rows(dofs: &mut DofMap, dims: [usize; 2], edge: Edge, rows: usize, comps: &[usize]) -> Result<()> {
    for r in 0..rows {
        for n in edge_row(dims, edge, r)? {
            for &c in comps {
                dofs.fix(n, c, 0.0);
            }
        }
    }
    Ok(())
}

/// Fully clamped edge: all components of the first two control rows.
pub fn clamp_two_rows(dofs: &mut DofMap, dims: [usize; 2], edge: Edge) -> Result<()> {
    fix_rows(dofs, dims, edge, 2, &[0, 1, 2])
}

/// Clamped edge that keeps the boundary tangent free to stretch: all
/// components of the first row and the `normal` component of the second row.
pub fn clamp_edge(dofs: &mut DofMap, dims: [usize; 2], edge: Edge, normal: usize) -> Result<()> {
    fix_rows(dofs, dims, edge, 1, &[0, 1, 2])?;
    for n in edge_row(dims, edge, 1)? {
        dofs.fix(n, normal, 0.0);
    }
    Ok(())
}

/// Rigid diaphragm: listed components of the boundary row.
pub fn diaphragm(dofs: &mut DofMap, dims: [usize; 2], edge: Edge, comps: &[usize]) -> Result<()> {
    fix_rows(dofs, dims, edge, 1, comps)
}

/// Symmetry plane with global normal component `normal`: that component of
/// the boundary row is fixed, and the in-plane components of the second row
/// are tied to the boundary row so that the surface meets the plane at a right
/// angle.
pub fn symmetry_plane(dofs: &mut DofMap, dims: [usize; 2], edge: Edge, normal: usize) -> Result<()> {
    let r0 = edge_row(dims, edge, 0)?;
    let r1 = edge_row(dims, edge, 1)?;
    for (&a, &b) in r0.iter().zip(&r1) {
        dofs.fix(a, normal, 0.0);
        for c in (0..3).filter(|&c| c != normal) {
            dofs.tie(b, c, a, c)?;
        }
    }
    Ok(())
}
