//! Uniform P1 triangulation of a square domain.
//!
//! The square `[a,b]^2` is covered by an `n x n` grid of points
//! (`h = (b-a)/(n-1)`), and each of the `(n-1)^2` grid cells is split into two
//! right triangles along the diagonal from its lower-left to its upper-right
//! corner. Node `(i, j)` (x-index `i`, y-index `j`) has the flat index
//! `i * n + j`.

use crate::error::{CoreError, Result};
use crate::quadrature::{triangle_rule, TriangleRule};

/// Structured triangulation of `[a,b]^2` with P1 nodal bookkeeping.
#[derive(Debug, Clone)]
pub struct StructuredMesh {
    pub n_points_per_side: usize,
    /// Lower and upper bound of the square domain.
    pub bounds: (f64, f64),
    /// Node coordinates, indexed by `i * n + j`.
    pub vertices: Vec<[f64; 2]>,
    /// Vertex index triples, counterclockwise.
    pub triangles: Vec<[usize; 3]>,
    pub boundary_nodes: Vec<usize>,
    pub interior_nodes: Vec<usize>,
    /// Grid spacing `(b-a)/(n-1)`.
    pub h_x: f64,
}

/// Builds the uniform triangulation with `n` points per side on `bounds`.
pub fn build_mesh(n: usize, bounds: (f64, f64)) -> Result<StructuredMesh> {
    if n < 2 {
        return Err(CoreError::InvalidArgument(format!(
            "mesh needs at least 2 points per side, got {n}"
        )));
    }
    let (a, b) = bounds;
    if !(b > a) {
        return Err(CoreError::InvalidArgument(format!(
            "invalid domain bounds [{a}, {b}]"
        )));
    }
    let h = (b - a) / (n - 1) as f64;
    let mut vertices = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = a + i as f64 * h;
        for j in 0..n {
            let y = a + j as f64 * h;
            vertices.push([x, y]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * (n - 1) * (n - 1));
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let v00 = i * n + j;
            let v10 = (i + 1) * n + j;
            let v01 = i * n + j + 1;
            let v11 = (i + 1) * n + j + 1;
            // diagonal from lower-left to upper-right
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
        }
    }
    let mut boundary_nodes = Vec::new();
    let mut interior_nodes = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let idx = i * n + j;
            if i == 0 || i == n - 1 || j == 0 || j == n - 1 {
                boundary_nodes.push(idx);
            } else {
                interior_nodes.push(idx);
            }
        }
    }
    Ok(StructuredMesh {
        n_points_per_side: n,
        bounds,
        vertices,
        triangles,
        boundary_nodes,
        interior_nodes,
        h_x: h,
    })
}

impl StructuredMesh {
    /// Total number of nodes (the coefficient-vector length K).
    pub fn num_nodes(&self) -> usize {
        self.vertices.len()
    }

    /// Area of each triangle (all are congruent).
    pub fn triangle_area(&self) -> f64 {
        0.5 * self.h_x * self.h_x
    }

    /// Constant gradients of the three barycentric basis functions on a triangle.
    pub fn basis_gradients(&self, tri: &[usize; 3]) -> [[f64; 2]; 3] {
        let p0 = self.vertices[tri[0]];
        let p1 = self.vertices[tri[1]];
        let p2 = self.vertices[tri[2]];
        let d1 = [p1[0] - p0[0], p1[1] - p0[1]];
        let d2 = [p2[0] - p0[0], p2[1] - p0[1]];
        let det = d1[0] * d2[1] - d1[1] * d2[0];
        let g1 = [d2[1] / det, -d2[0] / det];
        let g2 = [-d1[1] / det, d1[0] / det];
        let g0 = [-g1[0] - g2[0], -g1[1] - g2[1]];
        [g0, g1, g2]
    }

    /// Physical coordinates of a barycentric point inside a triangle.
    pub fn barycentric_to_physical(&self, tri: &[usize; 3], lambda: &[f64; 3]) -> [f64; 2] {
        let mut x = [0.0; 2];
        for (l, &v) in lambda.iter().zip(tri.iter()) {
            x[0] += l * self.vertices[v][0];
            x[1] += l * self.vertices[v][1];
        }
        x
    }

    /// Evaluates a P1 coefficient field at an arbitrary point of the domain.
    ///
    /// The containing cell is located directly from the grid structure;
    /// points outside the domain are clamped to it.
    pub fn eval_p1(&self, coefficients: &[f64], x: f64, y: f64) -> f64 {
        let n = self.n_points_per_side;
        let (a, _) = self.bounds;
        let fx = ((x - a) / self.h_x).clamp(0.0, (n - 1) as f64);
        let fy = ((y - a) / self.h_x).clamp(0.0, (n - 1) as f64);
        let ci = (fx as usize).min(n - 2);
        let cj = (fy as usize).min(n - 2);
        let lx = fx - ci as f64;
        let ly = fy - cj as f64;
        let v00 = coefficients[ci * n + cj];
        let v10 = coefficients[(ci + 1) * n + cj];
        let v01 = coefficients[ci * n + cj + 1];
        let v11 = coefficients[(ci + 1) * n + cj + 1];
        if lx >= ly {
            // lower triangle (v00, v10, v11)
            v00 * (1.0 - lx) + v10 * (lx - ly) + v11 * ly
        } else {
            // upper triangle (v00, v11, v01)
            v00 * (1.0 - ly) + v11 * lx + v01 * (ly - lx)
        }
    }

    /// Quadrature points of `rule` on every triangle, flattened as
    /// `(triangle, point)` pairs in physical coordinates.
    pub fn quadrature_points(&self, rule: &TriangleRule) -> Vec<[f64; 2]> {
        let mut out = Vec::with_capacity(self.triangles.len() * rule.points.len());
        for tri in &self.triangles {
            for lambda in &rule.points {
                out.push(self.barycentric_to_physical(tri, lambda));
            }
        }
        out
    }
}

/// Convenience wrapper selecting the rule by polynomial degree.
pub fn mesh_rule(quad_order: usize) -> TriangleRule {
    triangle_rule(quad_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_sizes_match_reported_grids() {
        // 30x30 grid on [-1,1]^2
        let mesh = build_mesh(30, (-1.0, 1.0)).unwrap();
        assert!((mesh.h_x - 2.0 / 29.0).abs() < 1e-15);
        assert!((mesh.h_x - 0.069).abs() < 5e-4);
        // 20x20 grid
        let mesh = build_mesh(20, (-1.0, 1.0)).unwrap();
        assert!((mesh.h_x - 2.0 / 19.0).abs() < 1e-15);
        assert!((mesh.h_x - 0.11).abs() < 5e-3);
    }

    #[test]
    fn smallest_mesh() {
        let mesh = build_mesh(2, (0.0, 1.0)).unwrap();
        assert_eq!(mesh.vertices.len(), 4);
        assert_eq!(mesh.triangles.len(), 2);
        assert_eq!(mesh.boundary_nodes.len(), 4);
        assert!(mesh.interior_nodes.is_empty());
    }

    #[test]
    fn rejects_degenerate_grid() {
        assert!(build_mesh(1, (0.0, 1.0)).is_err());
        assert!(build_mesh(0, (0.0, 1.0)).is_err());
    }

    #[test]
    fn triangles_partition_domain_exactly() {
        for n in [2, 5, 17] {
            let mesh = build_mesh(n, (-1.0, 1.0)).unwrap();
            let total: f64 = mesh.triangle_area() * mesh.triangles.len() as f64;
            assert!((total - 4.0).abs() < 1e-12, "n={n}: area {total}");
        }
    }

    #[test]
    fn boundary_classification() {
        let mesh = build_mesh(7, (-1.0, 1.0)).unwrap();
        for &b in &mesh.boundary_nodes {
            let [x, y] = mesh.vertices[b];
            assert!(
                x.abs() > 1.0 - 1e-12 || y.abs() > 1.0 - 1e-12,
                "node {b} at ({x},{y}) marked boundary"
            );
        }
        for &i in &mesh.interior_nodes {
            let [x, y] = mesh.vertices[i];
            assert!(x.abs() < 1.0 - 1e-12 && y.abs() < 1.0 - 1e-12);
        }
        assert_eq!(
            mesh.boundary_nodes.len() + mesh.interior_nodes.len(),
            mesh.num_nodes()
        );
    }

    #[test]
    fn triangles_counterclockwise_and_congruent() {
        let mesh = build_mesh(6, (-1.0, 1.0)).unwrap();
        for tri in &mesh.triangles {
            let p0 = mesh.vertices[tri[0]];
            let p1 = mesh.vertices[tri[1]];
            let p2 = mesh.vertices[tri[2]];
            let cross = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
            assert!(cross > 0.0, "triangle {tri:?} not counterclockwise");
            assert!((0.5 * cross - mesh.triangle_area()).abs() < 1e-14);
        }
    }

    #[test]
    fn p1_evaluation_reproduces_nodal_values_and_linears() {
        let mesh = build_mesh(9, (-1.0, 1.0)).unwrap();
        // linear field is reproduced exactly everywhere
        let coef: Vec<f64> = mesh.vertices.iter().map(|v| 2.0 * v[0] - 3.0 * v[1] + 0.5).collect();
        for &(x, y) in &[(-0.93, 0.2), (0.0, 0.0), (0.41, -0.77), (1.0, 1.0), (-1.0, 0.3)] {
            let expect = 2.0 * x - 3.0 * y + 0.5;
            assert!((mesh.eval_p1(&coef, x, y) - expect).abs() < 1e-12);
        }
    }
}
