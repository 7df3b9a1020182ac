//! Affine-in-parameter FEM system and Dirichlet solves.
//!
//! The operator decomposes as `A(t) = K + M0 + sum_i t_i M_i`. Dirichlet
//! conditions are imposed algebraically: the system is reduced to the
//! interior nodes with the boundary data moved to the right-hand side, and
//! the returned coefficient vector keeps its boundary entries pinned to the
//! prescribed values.

use nalgebra::DVector;
use nalgebra_sparse::factorization::CscCholesky;
use nalgebra_sparse::pattern::SparsityPattern;
use nalgebra_sparse::CscMatrix;

use crate::assembly::csc_matvec;
use crate::error::{CoreError, Result};
use crate::mesh::StructuredMesh;

/// Grid sizes up to this many points per side use a direct sparse Cholesky;
/// larger ones fall back to Jacobi-preconditioned CG.
const DIRECT_SOLVER_MAX_POINTS_PER_SIDE: usize = 100;
/// Relative residual tolerance for the iterative path.
const CG_TOLERANCE: f64 = 1e-10;

/// FEM solution at one parameter value: full-length coefficient vector with
/// boundary entries equal to the Dirichlet data.
#[derive(Debug, Clone)]
pub struct FemSolution {
    pub coefficients: DVector<f64>,
    pub parameter: Vec<f64>,
}

/// The affine operator family together with the index machinery for fast
/// interior solves.
pub struct AffineSystem {
    pub mesh: StructuredMesh,
    stiffness: CscMatrix<f64>,
    /// Weighted mass matrices for mu_0 .. mu_{N_t}, sharing the stiffness pattern.
    masses: Vec<CscMatrix<f64>>,
    load: Box<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>,
    n_t: usize,
    /// Sparsity pattern of the interior-interior block.
    reduced_pattern: SparsityPattern,
    /// For each reduced nonzero, the source slot in the full value array.
    reduced_gather: Vec<usize>,
    /// (reduced interior row, full value slot, boundary node) triples for the
    /// right-hand-side lift of boundary data.
    boundary_coupling: Vec<(usize, usize, usize)>,
    /// Global node index -> interior index, or usize::MAX for boundary nodes.
    interior_index: Vec<usize>,
}

impl AffineSystem {
    /// Wires up the operator family. All matrices must come from the same
    /// mesh so they share one sparsity pattern.
    pub fn new(
        mesh: StructuredMesh,
        stiffness: CscMatrix<f64>,
        masses: Vec<CscMatrix<f64>>,
        load: Box<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>,
    ) -> Result<Self> {
        if masses.is_empty() {
            return Err(CoreError::InvalidArgument(
                "need at least the mu_0 mass matrix".into(),
            ));
        }
        for m in &masses {
            if m.pattern() != stiffness.pattern() {
                return Err(CoreError::InvalidArgument(
                    "stiffness and mass matrices do not share a sparsity pattern".into(),
                ));
            }
        }
        let n_t = masses.len() - 1;
        let n_nodes = mesh.num_nodes();
        let mut interior_index = vec![usize::MAX; n_nodes];
        for (r, &g) in mesh.interior_nodes.iter().enumerate() {
            interior_index[g] = r;
        }

        // Walk the full CSC pattern once, splitting entries into the reduced
        // interior block and the interior-boundary coupling.
        let pattern = stiffness.pattern();
        let offsets = pattern.major_offsets();
        let minors = pattern.minor_indices();
        let n_interior = mesh.interior_nodes.len();
        let mut red_offsets = Vec::with_capacity(n_interior + 1);
        let mut red_minors = Vec::new();
        let mut reduced_gather = Vec::new();
        let mut boundary_coupling = Vec::new();
        red_offsets.push(0);
        for &col in &mesh.interior_nodes {
            for slot in offsets[col]..offsets[col + 1] {
                let row = minors[slot];
                let ri = interior_index[row];
                if ri != usize::MAX {
                    red_minors.push(ri);
                    reduced_gather.push(slot);
                }
            }
            red_offsets.push(red_minors.len());
        }
        // Boundary columns against interior rows give the lift contributions.
        for &col in &mesh.boundary_nodes {
            for slot in offsets[col]..offsets[col + 1] {
                let row = minors[slot];
                let ri = interior_index[row];
                if ri != usize::MAX {
                    boundary_coupling.push((ri, slot, col));
                }
            }
        }
        let reduced_pattern = SparsityPattern::try_from_offsets_and_indices(
            n_interior,
            n_interior,
            red_offsets,
            red_minors,
        )
        .map_err(|e| CoreError::InvalidArgument(format!("reduced pattern: {e:?}")))?;

        Ok(Self {
            mesh,
            stiffness,
            masses,
            load,
            n_t,
            reduced_pattern,
            reduced_gather,
            boundary_coupling,
            interior_index,
        })
    }

    pub fn n_t(&self) -> usize {
        self.n_t
    }

    /// Values of `A(t) = K + M0 + sum_i t_i M_i` in the shared pattern.
    fn combined_values(&self, t: &[f64]) -> Vec<f64> {
        let mut vals = self.stiffness.values().to_vec();
        for (v, m) in vals.iter_mut().zip(self.masses[0].values()) {
            *v += m;
        }
        for (i, &ti) in t.iter().enumerate() {
            if ti != 0.0 {
                for (v, m) in vals.iter_mut().zip(self.masses[i + 1].values()) {
                    *v += ti * m;
                }
            }
        }
        vals
    }

    /// Load vector for the given parameter.
    pub fn load_vector(&self, t: &[f64]) -> DVector<f64> {
        (self.load)(t)
    }

    /// Solves the Dirichlet problem at `t` with boundary data `g`.
    pub fn solve(&self, t: &[f64], g: impl Fn(f64, f64) -> f64) -> Result<FemSolution> {
        if t.len() != self.n_t {
            return Err(CoreError::InvalidArgument(format!(
                "parameter has length {}, system has N_t = {}",
                t.len(),
                self.n_t
            )));
        }
        let vals = self.combined_values(t);
        let n_interior = self.mesh.interior_nodes.len();
        let mut full = DVector::zeros(self.mesh.num_nodes());
        let mut g_boundary = vec![0.0; self.mesh.num_nodes()];
        for &b in &self.mesh.boundary_nodes {
            let [x, y] = self.mesh.vertices[b];
            let gv = g(x, y);
            g_boundary[b] = gv;
            full[b] = gv;
        }
        if n_interior == 0 {
            return Ok(FemSolution {
                coefficients: full,
                parameter: t.to_vec(),
            });
        }

        let load = self.load_vector(t);
        let mut rhs = DVector::zeros(n_interior);
        for (r, &gnode) in self.mesh.interior_nodes.iter().enumerate() {
            rhs[r] = load[gnode];
        }
        for &(ri, slot, bnode) in &self.boundary_coupling {
            rhs[ri] -= vals[slot] * g_boundary[bnode];
        }

        let red_vals: Vec<f64> = self.reduced_gather.iter().map(|&s| vals[s]).collect();
        let reduced =
            CscMatrix::try_from_pattern_and_values(self.reduced_pattern.clone(), red_vals)
                .expect("reduced pattern and values are consistent by construction");

        let interior = if self.mesh.n_points_per_side <= DIRECT_SOLVER_MAX_POINTS_PER_SIDE {
            let chol = CscCholesky::factor(&reduced).map_err(|e| CoreError::NumericalFailure {
                parameter: t.to_vec(),
                reason: format!("sparse Cholesky failed: {e}"),
            })?;
            DVector::from(chol.solve(&rhs).column(0))
        } else {
            jacobi_cg(&reduced, &rhs, CG_TOLERANCE).map_err(|reason| {
                CoreError::NumericalFailure {
                    parameter: t.to_vec(),
                    reason,
                }
            })?
        };

        for (r, &gnode) in self.mesh.interior_nodes.iter().enumerate() {
            full[gnode] = interior[r];
        }
        Ok(FemSolution {
            coefficients: full,
            parameter: t.to_vec(),
        })
    }

    /// Relative residual of the discrete weak form at the interior test
    /// functions: ||(A(t) u - F)_interior|| / ||F_interior||.
    pub fn interior_residual(&self, t: &[f64], solution: &FemSolution) -> f64 {
        let vals = self.combined_values(t);
        let full = CscMatrix::try_from_pattern_and_values(self.stiffness.pattern().clone(), vals)
            .expect("pattern/values consistent");
        let au = csc_matvec(&full, &solution.coefficients);
        let load = self.load_vector(t);
        let mut num = 0.0;
        let mut den = 0.0;
        for &i in &self.mesh.interior_nodes {
            num += (au[i] - load[i]) * (au[i] - load[i]);
            den += load[i] * load[i];
        }
        if den == 0.0 {
            num.sqrt()
        } else {
            (num / den).sqrt()
        }
    }

    /// True when `node` is interior.
    pub fn is_interior(&self, node: usize) -> bool {
        self.interior_index[node] != usize::MAX
    }
}

/// Conjugate gradients with Jacobi preconditioning on a CSC SPD matrix.
fn jacobi_cg(
    a: &CscMatrix<f64>,
    b: &DVector<f64>,
    tol: f64,
) -> std::result::Result<DVector<f64>, String> {
    let n = b.len();
    let mut diag_inv = DVector::zeros(n);
    for (col, lane) in a.col_iter().enumerate() {
        for (&row, &v) in lane.row_indices().iter().zip(lane.values()) {
            if row == col {
                if v <= 0.0 {
                    return Err(format!("non-positive diagonal entry {v} at {row}"));
                }
                diag_inv[row] = 1.0 / v;
            }
        }
    }
    let b_norm = b.norm();
    if b_norm == 0.0 {
        return Ok(DVector::zeros(n));
    }
    let mut x = DVector::zeros(n);
    let mut r = b.clone();
    let mut z = r.component_mul(&diag_inv);
    let mut p = z.clone();
    let mut rz = r.dot(&z);
    let max_iter = 20 * n;
    for _ in 0..max_iter {
        let ap = csc_matvec(a, &p);
        let pap = p.dot(&ap);
        if pap <= 0.0 {
            return Err("matrix is not positive definite".into());
        }
        let alpha = rz / pap;
        x.axpy(alpha, &p, 1.0);
        r.axpy(-alpha, &ap, 1.0);
        if r.norm() <= tol * b_norm {
            return Ok(x);
        }
        z = r.component_mul(&diag_inv);
        let rz_new = r.dot(&z);
        let beta = rz_new / rz;
        rz = rz_new;
        p = &z + beta * &p;
    }
    Err(format!(
        "CG did not reach relative residual {tol} in {max_iter} iterations"
    ))
}
