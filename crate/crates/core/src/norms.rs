//! L2 error functionals on the FEM mesh.

use crate::mesh::StructuredMesh;
use crate::quadrature::triangle_rule;

/// ||u_h - u_exact||_{L2} by per-triangle Gaussian quadrature.
///
/// `coefficients` is the full P1 coefficient vector of u_h.
pub fn l2_error(
    mesh: &StructuredMesh,
    coefficients: &[f64],
    u_exact: impl Fn(f64, f64) -> f64,
    quad_order: usize,
) -> f64 {
    let (num, _) = error_and_norm(mesh, coefficients, u_exact, quad_order);
    num
}

/// ||u_h - u_exact|| / ||u_exact||, both by the same quadrature.
pub fn relative_l2_error(
    mesh: &StructuredMesh,
    coefficients: &[f64],
    u_exact: impl Fn(f64, f64) -> f64,
    quad_order: usize,
) -> f64 {
    let (num, den) = error_and_norm(mesh, coefficients, u_exact, quad_order);
    num / den
}

/// Returns (||u_h - u_exact||, ||u_exact||) in one sweep.
pub fn error_and_norm(
    mesh: &StructuredMesh,
    coefficients: &[f64],
    u_exact: impl Fn(f64, f64) -> f64,
    quad_order: usize,
) -> (f64, f64) {
    let rule = triangle_rule(quad_order);
    let area = mesh.triangle_area();
    let mut num = 0.0;
    let mut den = 0.0;
    for tri in &mesh.triangles {
        let c = [
            coefficients[tri[0]],
            coefficients[tri[1]],
            coefficients[tri[2]],
        ];
        for (lambda, &w) in rule.points.iter().zip(&rule.weights) {
            let x = mesh.barycentric_to_physical(tri, lambda);
            let uh = c[0] * lambda[0] + c[1] * lambda[1] + c[2] * lambda[2];
            let ue = u_exact(x[0], x[1]);
            num += w * area * (uh - ue) * (uh - ue);
            den += w * area * ue * ue;
        }
    }
    (num.sqrt(), den.sqrt())
}

/// ||field||_{L2} over the mesh domain by quadrature, for arbitrary fields.
pub fn field_l2_norm(
    mesh: &StructuredMesh,
    field: impl Fn(f64, f64) -> f64,
    quad_order: usize,
) -> f64 {
    let rule = triangle_rule(quad_order);
    let area = mesh.triangle_area();
    let mut acc = 0.0;
    for tri in &mesh.triangles {
        for (lambda, &w) in rule.points.iter().zip(&rule.weights) {
            let x = mesh.barycentric_to_physical(tri, lambda);
            let v = field(x[0], x[1]);
            acc += w * area * v * v;
        }
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh;

    #[test]
    fn error_against_own_interpolant_is_zero() {
        let mesh = build_mesh(11, (-1.0, 1.0)).unwrap();
        let f = |x: f64, y: f64| 0.3 * x - 1.7 * y + 2.0;
        let coef: Vec<f64> = mesh.vertices.iter().map(|v| f(v[0], v[1])).collect();
        assert!(l2_error(&mesh, &coef, f, 4) < 1e-13);
    }

    #[test]
    fn norm_of_one_on_unit_square_of_side_two() {
        // ||1|| = sqrt(area) = 2 on [-1,1]^2
        let mesh = build_mesh(5, (-1.0, 1.0)).unwrap();
        let coef = vec![0.0; mesh.num_nodes()];
        let err = l2_error(&mesh, &coef, |_, _| 1.0, 4);
        assert!((err - 2.0).abs() < 1e-13);
    }
}
