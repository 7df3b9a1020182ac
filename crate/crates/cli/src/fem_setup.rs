//! Assembly of affine FEM systems for the experiment problems.

use paramrom::assembly::{assemble_load, assemble_stiffness, assemble_weighted_mass};
use paramrom::mesh::{build_mesh, StructuredMesh};
use paramrom::potentials::AffinePotential;
use paramrom::solve::AffineSystem;
use paramrom::Result;

use crate::manufactured::ManufacturedCase;

pub const DOMAIN: (f64, f64) = (-1.0, 1.0);

fn assemble_affine(
    mesh: StructuredMesh,
    potential: &AffinePotential,
    quad_order: usize,
    load: Box<dyn Fn(&[f64]) -> nalgebra::DVector<f64> + Send + Sync>,
) -> Result<AffineSystem> {
    let stiffness = assemble_stiffness(&mesh);
    let mut masses = Vec::with_capacity(potential.n_t() + 1);
    for i in 0..=potential.n_t() {
        let pot = potential.clone();
        masses.push(assemble_weighted_mass(
            &mesh,
            move |x, y| pot.component(i, x, y),
            quad_order,
        ));
    }
    AffineSystem::new(mesh, stiffness, masses, load)
}

/// System for a manufactured case: the load re-assembles f(·,t) = -Δu + μu
/// at each parameter value.
pub fn manufactured_system(
    case: &ManufacturedCase,
    n: usize,
    quad_order: usize,
) -> Result<AffineSystem> {
    let mesh = build_mesh(n, DOMAIN)?;
    let load_mesh = mesh.clone();
    let load_case = case.clone();
    let load = Box::new(move |t: &[f64]| {
        assemble_load(&load_mesh, |x, y| load_case.source(x, y, t), quad_order)
    });
    assemble_affine(mesh, &case.potential, quad_order, load)
}

/// System for the reconstruction problem: zero source, so the load vanishes
/// and only the Dirichlet lift drives the solution.
pub fn qpat_system(
    potential: &AffinePotential,
    n: usize,
    quad_order: usize,
) -> Result<AffineSystem> {
    let mesh = build_mesh(n, DOMAIN)?;
    let num_nodes = mesh.num_nodes();
    let load = Box::new(move |_t: &[f64]| nalgebra::DVector::zeros(num_nodes));
    assemble_affine(mesh, potential, quad_order, load)
}

/// Fixed boundary data of the reconstruction experiments.
pub fn qpat_boundary(x: f64, y: f64) -> f64 {
    x * x * y * y / 16.0 + 1.0
}
