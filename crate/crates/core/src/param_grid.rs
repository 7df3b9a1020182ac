//! Simplicial interpolation in low-dimensional parameter space.
//!
//! The parameter box `[0,1]^{N_t}` carries a uniform tensor grid. Each grid
//! cell is split into `N_t!` Kuhn simplices by sorting the fractional
//! coordinates, which yields a continuous piecewise-linear interpolant that
//! is consistent across shared cell faces and reproduces affine functions.

use nalgebra::{DMatrix, DVector};

use crate::error::{CoreError, Result};

/// Largest parameter dimension handled by simplicial interpolation.
pub const MAX_SIMPLICIAL_DIM: usize = 4;

/// Tolerance for clamping points that sit marginally outside the box.
const BOX_TOLERANCE: f64 = 1e-12;

/// Uniform tensor grid over `[0,1]^{n_t}` with lexicographic node ordering
/// (first coordinate slowest).
#[derive(Debug, Clone)]
pub struct ParamGrid {
    pub n_t: usize,
    pub points_per_side: usize,
    /// Grid nodes, row j = coordinates of node j.
    pub nodes: Vec<Vec<f64>>,
    /// Grid spacing 1/(points_per_side - 1).
    pub h_t: f64,
}

/// Builds the uniform parameter grid.
pub fn build_param_grid(n_t: usize, points_per_side: usize) -> Result<ParamGrid> {
    if n_t == 0 || n_t > MAX_SIMPLICIAL_DIM {
        return Err(CoreError::UnsupportedDimension {
            n_t,
            max: MAX_SIMPLICIAL_DIM,
        });
    }
    if points_per_side < 2 {
        return Err(CoreError::InvalidArgument(format!(
            "parameter grid needs at least 2 points per side, got {points_per_side}"
        )));
    }
    let h_t = 1.0 / (points_per_side - 1) as f64;
    let count = points_per_side.pow(n_t as u32);
    let mut nodes = Vec::with_capacity(count);
    let mut idx = vec![0usize; n_t];
    for _ in 0..count {
        nodes.push(idx.iter().map(|&i| i as f64 * h_t).collect());
        // lexicographic increment, last coordinate fastest
        for d in (0..n_t).rev() {
            idx[d] += 1;
            if idx[d] < points_per_side {
                break;
            }
            idx[d] = 0;
        }
    }
    Ok(ParamGrid {
        n_t,
        points_per_side,
        nodes,
        h_t,
    })
}

impl ParamGrid {
    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Flat index of the node with the given per-axis indices.
    pub fn node_index(&self, idx: &[usize]) -> usize {
        idx.iter()
            .fold(0, |acc, &i| acc * self.points_per_side + i)
    }

    /// Locates the Kuhn simplex containing `t` and returns the vertex node
    /// indices (`n_t + 1` of them) with their barycentric weights.
    ///
    /// Points within `1e-12` of the box are clamped onto it; anything
    /// farther out is rejected.
    pub fn locate_and_barycentric(&self, t: &[f64]) -> Result<(Vec<usize>, Vec<f64>)> {
        if t.len() != self.n_t {
            return Err(CoreError::InvalidArgument(format!(
                "point has dimension {}, grid has {}",
                t.len(),
                self.n_t
            )));
        }
        let mut cell = vec![0usize; self.n_t];
        let mut frac = vec![0.0f64; self.n_t];
        for d in 0..self.n_t {
            let td = t[d];
            if !(-BOX_TOLERANCE..=1.0 + BOX_TOLERANCE).contains(&td) {
                return Err(CoreError::OutOfDomain(format!(
                    "coordinate {d} = {td} outside [0,1]"
                )));
            }
            let clamped = td.clamp(0.0, 1.0);
            let scaled = clamped / self.h_t;
            let c = (scaled as usize).min(self.points_per_side - 2);
            cell[d] = c;
            frac[d] = scaled - c as f64;
        }
        // Kuhn simplex: order fractional coordinates descending (stable on
        // ties, so shared faces resolve consistently).
        let mut order: Vec<usize> = (0..self.n_t).collect();
        order.sort_by(|&a, &b| frac[b].partial_cmp(&frac[a]).unwrap());

        let mut vertices = Vec::with_capacity(self.n_t + 1);
        let mut weights = Vec::with_capacity(self.n_t + 1);
        let mut v = cell.clone();
        vertices.push(self.node_index(&v));
        weights.push(1.0 - frac[order[0]]);
        for k in 0..self.n_t {
            v[order[k]] += 1;
            vertices.push(self.node_index(&v));
            let next = if k + 1 < self.n_t {
                frac[order[k + 1]]
            } else {
                0.0
            };
            weights.push(frac[order[k]] - next);
        }
        Ok((vertices, weights))
    }
}

/// Piecewise-linear interpolant of FEM coefficient vectors over a ParamGrid.
///
/// `snapshots` holds one coefficient vector per grid node, row j belonging
/// to node j of the grid ordering.
#[derive(Debug, Clone)]
pub struct SimplicialInterpolant {
    pub grid: ParamGrid,
    pub snapshots: DMatrix<f64>,
}

impl SimplicialInterpolant {
    pub fn new(grid: ParamGrid, snapshots: DMatrix<f64>) -> Result<Self> {
        if snapshots.nrows() != grid.num_nodes() {
            return Err(CoreError::InvalidArgument(format!(
                "snapshot matrix has {} rows, grid has {} nodes",
                snapshots.nrows(),
                grid.num_nodes()
            )));
        }
        Ok(Self { grid, snapshots })
    }

    /// Barycentric combination of the snapshot rows of the simplex containing `t`.
    pub fn interpolate(&self, t: &[f64]) -> Result<DVector<f64>> {
        let (vertices, weights) = self.grid.locate_and_barycentric(t)?;
        let mut out = DVector::zeros(self.snapshots.ncols());
        for (&v, &w) in vertices.iter().zip(&weights) {
            if w != 0.0 {
                out.axpy(w, &self.snapshots.row(v).transpose(), 1.0);
            }
        }
        Ok(out)
    }
}
