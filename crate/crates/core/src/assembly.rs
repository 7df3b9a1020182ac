//! P1 finite element assembly on a structured mesh.
//!
//! All matrices assembled from the same mesh share an identical sparsity
//! pattern (node adjacency), which lets the affine combination
//! `A(t) = K + M0 + sum_i t_i M_i` be formed by adding value vectors.

use nalgebra::DVector;
use nalgebra_sparse::{CooMatrix, CscMatrix};

use crate::mesh::StructuredMesh;
use crate::quadrature::triangle_rule;

/// Stiffness matrix: entry (j,k) = ∫ ∇φ_j · ∇φ_k dx, exact for P1.
pub fn assemble_stiffness(mesh: &StructuredMesh) -> CscMatrix<f64> {
    let n = mesh.num_nodes();
    let mut coo = CooMatrix::new(n, n);
    for tri in &mesh.triangles {
        let g = mesh.basis_gradients(tri);
        let area = mesh.triangle_area();
        for a in 0..3 {
            for b in 0..3 {
                let v = area * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
                coo.push(tri[a], tri[b], v);
            }
        }
    }
    CscMatrix::from(&coo)
}

/// Weighted mass matrix: entry (j,k) ≈ ∫ w φ_j φ_k dx by per-triangle
/// Gaussian quadrature of the given order.
pub fn assemble_weighted_mass(
    mesh: &StructuredMesh,
    weight: impl Fn(f64, f64) -> f64,
    quad_order: usize,
) -> CscMatrix<f64> {
    let rule = triangle_rule(quad_order);
    let n = mesh.num_nodes();
    let mut coo = CooMatrix::new(n, n);
    let area = mesh.triangle_area();
    let mut local = [[0.0f64; 3]; 3];
    for tri in &mesh.triangles {
        for row in local.iter_mut() {
            row.fill(0.0);
        }
        for (lambda, &w) in rule.points.iter().zip(&rule.weights) {
            let x = mesh.barycentric_to_physical(tri, lambda);
            let wv = w * weight(x[0], x[1]) * area;
            for a in 0..3 {
                for b in 0..3 {
                    local[a][b] += wv * lambda[a] * lambda[b];
                }
            }
        }
        for a in 0..3 {
            for b in 0..3 {
                coo.push(tri[a], tri[b], local[a][b]);
            }
        }
    }
    CscMatrix::from(&coo)
}

/// Load vector: entry k ≈ ∫ f φ_k dx by the same per-triangle quadrature.
pub fn assemble_load(
    mesh: &StructuredMesh,
    f: impl Fn(f64, f64) -> f64,
    quad_order: usize,
) -> DVector<f64> {
    let rule = triangle_rule(quad_order);
    let mut load = DVector::zeros(mesh.num_nodes());
    let area = mesh.triangle_area();
    for tri in &mesh.triangles {
        for (lambda, &w) in rule.points.iter().zip(&rule.weights) {
            let x = mesh.barycentric_to_physical(tri, lambda);
            let fv = w * f(x[0], x[1]) * area;
            for a in 0..3 {
                load[tri[a]] += fv * lambda[a];
            }
        }
    }
    load
}

/// Multiplies a CSC matrix by a vector.
pub(crate) fn csc_matvec(m: &CscMatrix<f64>, x: &DVector<f64>) -> DVector<f64> {
    let mut y = DVector::zeros(m.nrows());
    for (col, lane) in m.col_iter().enumerate() {
        let xc = x[col];
        for (&row, &v) in lane.row_indices().iter().zip(lane.values()) {
            y[row] += v * xc;
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh;

    #[test]
    fn stiffness_annihilates_constants() {
        let mesh = build_mesh(8, (-1.0, 1.0)).unwrap();
        let k = assemble_stiffness(&mesh);
        let ones = DVector::from_element(mesh.num_nodes(), 1.0);
        let r = csc_matvec(&k, &ones);
        assert!(r.amax() < 1e-13, "K*1 = {}", r.amax());
    }

    #[test]
    fn stiffness_single_reference_triangle() {
        // Unit right triangle (0,0)-(1,0)-(0,1) taken from the 2x2 mesh on [0,1]^2.
        // Hand integration: for the right-angle vertex, |∇φ|^2 = 2 over area 1/2,
        // so the diagonal entry is 1.
        let mesh = build_mesh(2, (0.0, 1.0)).unwrap();
        let tri = mesh.triangles[1]; // (v00, v11, v01): right angle at v01
        let g = mesh.basis_gradients(&tri);
        let area = mesh.triangle_area();
        let diag_right_angle = area * (g[2][0] * g[2][0] + g[2][1] * g[2][1]);
        assert!((diag_right_angle - 1.0).abs() < 1e-14);
        // the two acute vertices contribute 1/2 each
        let diag_acute = area * (g[0][0] * g[0][0] + g[0][1] * g[0][1]);
        assert!((diag_acute - 0.5).abs() < 1e-14);
    }

    #[test]
    fn stiffness_symmetric() {
        let mesh = build_mesh(6, (-1.0, 1.0)).unwrap();
        let k = assemble_stiffness(&mesh);
        let kt = k.transpose();
        let max_asym = k
            .values()
            .iter()
            .zip(kt.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert_eq!(max_asym, 0.0);
    }

    #[test]
    fn unit_mass_rows_sum_to_area() {
        // partition of unity: sum_jk M_jk = |domain|
        let mesh = build_mesh(7, (-1.0, 1.0)).unwrap();
        let m = assemble_weighted_mass(&mesh, |_, _| 1.0, 4);
        let total: f64 = m.values().iter().sum();
        assert!((total - 4.0).abs() < 1e-12);
    }

    #[test]
    fn constant_weight_scales_linearly() {
        let mesh = build_mesh(5, (-1.0, 1.0)).unwrap();
        let m1 = assemble_weighted_mass(&mesh, |_, _| 1.0, 4);
        let mc = assemble_weighted_mass(&mesh, |_, _| 3.25, 4);
        for (a, b) in m1.values().iter().zip(mc.values()) {
            assert!((3.25 * a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn gaussian_weight_converges_with_quadrature_order() {
        let mesh = build_mesh(6, (-1.0, 1.0)).unwrap();
        let w = |x: f64, y: f64| (-2.0 * ((x - 0.5).powi(2) + (y - 0.5).powi(2))).exp();
        let reference = assemble_weighted_mass(&mesh, w, 10);
        let mut prev_err = f64::INFINITY;
        for order in [2, 4, 6, 8] {
            let m = assemble_weighted_mass(&mesh, w, order);
            let err = m
                .values()
                .iter()
                .zip(reference.values())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(err < prev_err || err < 1e-14, "order {order}: {err} !< {prev_err}");
            prev_err = err;
        }
        assert!(prev_err < 1e-7, "order-8 rule off the order-10 reference by {prev_err}");
    }

    #[test]
    fn load_of_zero_and_one() {
        let mesh = build_mesh(9, (-1.0, 1.0)).unwrap();
        let zero = assemble_load(&mesh, |_, _| 0.0, 4);
        assert_eq!(zero.amax(), 0.0);
        let one = assemble_load(&mesh, |_, _| 1.0, 4);
        assert!((one.sum() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn matrices_from_same_mesh_share_pattern() {
        let mesh = build_mesh(6, (-1.0, 1.0)).unwrap();
        let k = assemble_stiffness(&mesh);
        let m = assemble_weighted_mass(&mesh, |x, y| 1.0 + x * x + y, 4);
        assert_eq!(k.pattern(), m.pattern());
    }
}
