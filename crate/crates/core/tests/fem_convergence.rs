//! Spatial convergence of the P1 solver on a fixed manufactured problem.

use paramrom::assembly::{assemble_load, assemble_stiffness, assemble_weighted_mass};
use paramrom::mesh::build_mesh;
use paramrom::norms::relative_l2_error;
use paramrom::solve::AffineSystem;
use std::f64::consts::PI;

fn solve_case(n: usize) -> f64 {
    // -Δu + u = f with u = sin(πx) sin(πy) on [-1,1]^2, zero on the boundary
    let u_exact = |x: f64, y: f64| (PI * x).sin() * (PI * y).sin();
    let f = move |x: f64, y: f64| (2.0 * PI * PI + 1.0) * u_exact(x, y);
    let mesh = build_mesh(n, (-1.0, 1.0)).unwrap();
    let k = assemble_stiffness(&mesh);
    let m0 = assemble_weighted_mass(&mesh, |_, _| 1.0, 4);
    let load_mesh = mesh.clone();
    let system = AffineSystem::new(
        mesh,
        k,
        vec![m0],
        Box::new(move |_| assemble_load(&load_mesh, f, 4)),
    )
    .unwrap();
    let sol = system.solve(&[], |_, _| 0.0).unwrap();
    relative_l2_error(&system.mesh, sol.coefficients.as_slice(), u_exact, 6)
}

#[test]
fn quadratic_l2_convergence() {
    let grids = [10usize, 20, 40, 80];
    let errors: Vec<f64> = grids.iter().map(|&n| solve_case(n)).collect();
    let xs: Vec<f64> = grids.iter().map(|&n| (2.0 / (n - 1) as f64).ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let count = xs.len() as f64;
    let xm = xs.iter().sum::<f64>() / count;
    let ym = ys.iter().sum::<f64>() / count;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xm) * (y - ym))
        .sum::<f64>()
        / xs.iter().map(|x| (x - xm) * (x - xm)).sum::<f64>();
    assert!(
        (1.8..=2.1).contains(&slope),
        "observed L2 rate {slope}, errors {errors:?}"
    );
}
