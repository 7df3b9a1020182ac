//! Pixel-mean measurement operator and precomputed projection tensors.
//!
//! The measurement space is spanned by indicators of axis-aligned pixels
//! tiling the domain; Q is the L2 projection, i.e. the per-pixel mean of the
//! absorbed energy μu. Integrals over pixels use a subdivided-centroid
//! quadrature: every mesh triangle is split into s² congruent subtriangles,
//! each contributing one centroid sample binned to its containing pixel.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{CoreError, Result};
use crate::mesh::StructuredMesh;
use crate::potentials::AffinePotential;

/// Default triangle subdivision factor for pixel quadrature.
pub const DEFAULT_SUBDIVISION: usize = 4;

/// Uniform pixel partition of the square domain with a coverage mask.
#[derive(Debug, Clone)]
pub struct PixelPartition {
    pub nx: usize,
    pub ny: usize,
    pub bounds: (f64, f64),
    pub pixel_area: f64,
    /// True for observed pixels.
    pub mask: Vec<bool>,
}

/// Builds the partition; `mask = None` observes every pixel.
pub fn build_pixels(
    nx: usize,
    ny: usize,
    bounds: (f64, f64),
    mask: Option<Vec<bool>>,
) -> Result<PixelPartition> {
    if nx == 0 || ny == 0 {
        return Err(CoreError::InvalidArgument(format!(
            "pixel grid needs nx, ny >= 1, got {nx} x {ny}"
        )));
    }
    let (a, b) = bounds;
    if !(b > a) {
        return Err(CoreError::InvalidArgument(format!(
            "invalid domain bounds [{a}, {b}]"
        )));
    }
    let mask = mask.unwrap_or_else(|| vec![true; nx * ny]);
    if mask.len() != nx * ny {
        return Err(CoreError::InvalidArgument(format!(
            "mask has {} entries for {} pixels",
            mask.len(),
            nx * ny
        )));
    }
    if !mask.iter().any(|&m| m) {
        return Err(CoreError::InvalidArgument(
            "coverage mask excludes every pixel".into(),
        ));
    }
    let width = (b - a) / nx as f64;
    let height = (b - a) / ny as f64;
    Ok(PixelPartition {
        nx,
        ny,
        bounds,
        pixel_area: width * height,
        mask,
    })
}

impl PixelPartition {
    pub fn num_pixels(&self) -> usize {
        self.nx * self.ny
    }

    /// Pixel containing (x, y): half-open pixels, closed on the domain's
    /// top/right edges.
    pub fn pixel_of(&self, x: f64, y: f64) -> usize {
        let (a, b) = self.bounds;
        let fx = (x - a) / (b - a) * self.nx as f64;
        let fy = (y - a) / (b - a) * self.ny as f64;
        let ix = (fx.floor() as usize).min(self.nx - 1);
        let iy = (fy.floor() as usize).min(self.ny - 1);
        ix * self.ny + iy
    }

    /// Center coordinates of pixel p.
    pub fn pixel_center(&self, p: usize) -> (f64, f64) {
        let (a, b) = self.bounds;
        let ix = p / self.ny;
        let iy = p % self.ny;
        let w = (b - a) / self.nx as f64;
        let h = (b - a) / self.ny as f64;
        (a + (ix as f64 + 0.5) * w, a + (iy as f64 + 0.5) * h)
    }

    /// Mask observing only a centered square block of `side x side` pixels.
    /// Requires a square partition.
    pub fn centered_square_mask(nx: usize, ny: usize, side: usize) -> Result<Vec<bool>> {
        if side == 0 || side > nx || side > ny {
            return Err(CoreError::InvalidArgument(format!(
                "centered block of side {side} does not fit in {nx} x {ny}"
            )));
        }
        let ox = (nx - side) / 2;
        let oy = (ny - side) / 2;
        let mut mask = vec![false; nx * ny];
        for ix in ox..ox + side {
            for iy in oy..oy + side {
                mask[ix * ny + iy] = true;
            }
        }
        Ok(mask)
    }

    /// Fraction of pixels observed.
    pub fn coverage_fraction(&self) -> f64 {
        self.mask.iter().filter(|&&m| m).count() as f64 / self.num_pixels() as f64
    }
}

/// Centroid sample points and the common weight for the subdivided-centroid
/// rule on one triangle.
fn subdivision_centroids(
    mesh: &StructuredMesh,
    tri: &[usize; 3],
    s: usize,
    out: &mut Vec<[f64; 2]>,
) {
    out.clear();
    let p0 = mesh.vertices[tri[0]];
    let p1 = mesh.vertices[tri[1]];
    let p2 = mesh.vertices[tri[2]];
    let sf = s as f64;
    let mut push = |l1: f64, l2: f64| {
        let l0 = 1.0 - l1 - l2;
        out.push([
            l0 * p0[0] + l1 * p1[0] + l2 * p2[0],
            l0 * p0[1] + l1 * p1[1] + l2 * p2[1],
        ]);
    };
    for i in 0..s {
        for j in 0..s - i {
            // upward subtriangle centroid
            push((i as f64 + 1.0 / 3.0) / sf, (j as f64 + 1.0 / 3.0) / sf);
            // downward companion where it exists
            if i + j + 2 <= s {
                push((i as f64 + 2.0 / 3.0) / sf, (j as f64 + 2.0 / 3.0) / sf);
            }
        }
    }
}

/// Per-pixel mean of an arbitrary field by binned subdivided-centroid
/// quadrature with the default subdivision.
pub fn project(
    mesh: &StructuredMesh,
    pixels: &PixelPartition,
    field: impl Fn(f64, f64) -> f64,
) -> DVector<f64> {
    project_with_subdivision(mesh, pixels, field, DEFAULT_SUBDIVISION)
}

/// As [`project`] with an explicit subdivision factor.
///
/// Each pixel mean is normalized by the quadrature weight actually binned
/// to it (the sampled pixel area), so constants project exactly; the binned
/// area converges to |P| under subdivision and equals it whenever mesh
/// cells align with pixel boundaries.
pub fn project_with_subdivision(
    mesh: &StructuredMesh,
    pixels: &PixelPartition,
    field: impl Fn(f64, f64) -> f64,
    s: usize,
) -> DVector<f64> {
    let s = s.max(1);
    let w = mesh.triangle_area() / (s * s) as f64;
    let mut acc = DVector::zeros(pixels.num_pixels());
    let mut binned = vec![0.0f64; pixels.num_pixels()];
    let mut pts = Vec::with_capacity(s * s);
    for tri in &mesh.triangles {
        subdivision_centroids(mesh, tri, s, &mut pts);
        for &[x, y] in &pts {
            let p = pixels.pixel_of(x, y);
            acc[p] += w * field(x, y);
            binned[p] += w;
        }
    }
    for p in 0..pixels.num_pixels() {
        acc[p] = if binned[p] > 0.0 { acc[p] / binned[p] } else { 0.0 };
    }
    acc
}

/// Precomputed projections Q_{i,k} = Q[μ_i φ_k], shape (N_t+1) x K x N_m.
#[derive(Debug, Clone)]
pub struct MeasurementTensor {
    pub(crate) data: Vec<f64>,
    /// N_t + 1 potential components.
    pub n_components: usize,
    /// Number of FEM basis functions K.
    pub k: usize,
    /// Number of pixels N_m.
    pub n_m: usize,
    pub pixel_area: f64,
    /// Coverage mask copied from the partition.
    pub mask: Vec<bool>,
}

/// Precomputes the tensor with the default subdivision.
pub fn precompute_tensor(
    mesh: &StructuredMesh,
    pixels: &PixelPartition,
    potential: &AffinePotential,
) -> MeasurementTensor {
    precompute_tensor_with_subdivision(mesh, pixels, potential, DEFAULT_SUBDIVISION)
}

/// As [`precompute_tensor`] with an explicit subdivision factor; uses the
/// same sample points and binning as [`project`], so the tensor path and the
/// direct projection agree to rounding.
pub fn precompute_tensor_with_subdivision(
    mesh: &StructuredMesh,
    pixels: &PixelPartition,
    potential: &AffinePotential,
    s: usize,
) -> MeasurementTensor {
    let s = s.max(1);
    let n_components = potential.n_t() + 1;
    let k = mesh.num_nodes();
    let n_m = pixels.num_pixels();
    let mut data = vec![0.0; n_components * k * n_m];
    let mut binned = vec![0.0f64; n_m];
    let w = mesh.triangle_area() / (s * s) as f64;
    let mut pts = Vec::with_capacity(s * s);
    let mut mu = vec![0.0; n_components];
    for tri in &mesh.triangles {
        let p0 = mesh.vertices[tri[0]];
        let p1 = mesh.vertices[tri[1]];
        let p2 = mesh.vertices[tri[2]];
        let det =
            (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]);
        subdivision_centroids(mesh, tri, s, &mut pts);
        for &[x, y] in &pts {
            let p = pixels.pixel_of(x, y);
            binned[p] += w;
            for (i, m) in mu.iter_mut().enumerate() {
                *m = potential.component(i, x, y);
            }
            // barycentric coordinates of the sample point in this triangle
            let l1 = ((x - p0[0]) * (p2[1] - p0[1]) - (y - p0[1]) * (p2[0] - p0[0])) / det;
            let l2 = ((p1[0] - p0[0]) * (y - p0[1]) - (p1[1] - p0[1]) * (x - p0[0])) / det;
            let lambda = [1.0 - l1 - l2, l1, l2];
            for (a, &node) in tri.iter().enumerate() {
                let phi = lambda[a];
                if phi == 0.0 {
                    continue;
                }
                for (i, &m) in mu.iter().enumerate() {
                    data[(i * k + node) * n_m + p] += w * m * phi;
                }
            }
        }
    }
    let inv_binned: Vec<f64> = binned
        .iter()
        .map(|&b| if b > 0.0 { 1.0 / b } else { 0.0 })
        .collect();
    for ik in 0..n_components * k {
        let start = ik * n_m;
        for (p, inv) in inv_binned.iter().enumerate() {
            data[start + p] *= inv;
        }
    }
    MeasurementTensor {
        data,
        n_components,
        k,
        n_m,
        pixel_area: pixels.pixel_area,
        mask: pixels.mask.clone(),
    }
}

impl MeasurementTensor {
    /// Slice Q_{i,·,·} for basis function `k`: the per-pixel projections.
    pub fn slice(&self, i: usize, k: usize) -> &[f64] {
        let start = (i * self.k + k) * self.n_m;
        &self.data[start..start + self.n_m]
    }

    /// q(t) = Σ_k û_k (Q_{0,k} + Σ_i t_i Q_{i,k}) over all pixels.
    pub fn measure(&self, t: &[f64], u_hat: &DVector<f64>) -> Result<DVector<f64>> {
        if t.len() + 1 != self.n_components {
            return Err(CoreError::InvalidArgument(format!(
                "parameter has length {}, tensor expects {}",
                t.len(),
                self.n_components - 1
            )));
        }
        if u_hat.len() != self.k {
            return Err(CoreError::InvalidArgument(format!(
                "coefficient vector has length {}, tensor expects {}",
                u_hat.len(),
                self.k
            )));
        }
        let mut q = DVector::zeros(self.n_m);
        for i in 0..self.n_components {
            let weight = if i == 0 { 1.0 } else { t[i - 1] };
            if weight == 0.0 {
                continue;
            }
            for k_idx in 0..self.k {
                let c = weight * u_hat[k_idx];
                if c == 0.0 {
                    continue;
                }
                let s = self.slice(i, k_idx);
                for (qp, &sp) in q.iter_mut().zip(s) {
                    *qp += c * sp;
                }
            }
        }
        Ok(q)
    }

    /// Contracts a pixel vector r against every slice:
    /// out[(i,k)] = Σ_p r_p Q_{i,k,p}. Masked pixels must already be zeroed
    /// in `r`.
    pub fn contract_pixels(&self, r: &DVector<f64>) -> nalgebra::DMatrix<f64> {
        let mut out = nalgebra::DMatrix::zeros(self.n_components, self.k);
        for i in 0..self.n_components {
            for k_idx in 0..self.k {
                let s = self.slice(i, k_idx);
                let mut acc = 0.0;
                for (&rp, &sp) in r.iter().zip(s) {
                    acc += rp * sp;
                }
                out[(i, k_idx)] = acc;
            }
        }
        out
    }
}

/// Pixel observation, possibly noisy, with the diagonal noise covariance
/// when the noise amplitude is positive.
#[derive(Debug, Clone)]
pub struct Observation {
    /// Observed (noisy) pixel values.
    pub values: DVector<f64>,
    pub rho_noise: f64,
    /// [Σ]_{ii} = (ρ q_clean,i)², present only for ρ > 0.
    pub covariance_diag: Option<DVector<f64>>,
}

/// Applies multiplicative Gaussian noise q̃_i = q_i (1 + ρ ε_i).
pub fn add_noise(q: &DVector<f64>, rho_noise: f64, seed: u64) -> Result<Observation> {
    if rho_noise < 0.0 {
        return Err(CoreError::InvalidArgument(format!(
            "noise amplitude must be nonnegative, got {rho_noise}"
        )));
    }
    if rho_noise == 0.0 {
        return Ok(Observation {
            values: q.clone(),
            rho_noise,
            covariance_diag: None,
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut values = q.clone();
    let mut cov = DVector::zeros(q.len());
    for i in 0..q.len() {
        let eps: f64 = rng.sample(StandardNormal);
        values[i] = q[i] * (1.0 + rho_noise * eps);
        cov[i] = (rho_noise * q[i]).powi(2);
    }
    Ok(Observation {
        values,
        rho_noise,
        covariance_diag: Some(cov),
    })
}

impl Observation {
    /// Noise-free observation.
    pub fn exact(q: DVector<f64>) -> Self {
        Self {
            values: q,
            rho_noise: 0.0,
            covariance_diag: None,
        }
    }

    /// CSV rows `pixel_index,x_center,y_center,value,variance,observed_flag`.
    pub fn to_csv(&self, partition: &PixelPartition) -> String {
        let mut out = String::from("pixel_index,x_center,y_center,value,variance,observed_flag\n");
        for p in 0..partition.num_pixels() {
            let (x, y) = partition.pixel_center(p);
            let var = self
                .covariance_diag
                .as_ref()
                .map(|c| c[p])
                .unwrap_or(0.0);
            out.push_str(&format!(
                "{p},{x:.12e},{y:.12e},{:.12e},{var:.12e},{}\n",
                self.values[p],
                u8::from(partition.mask[p])
            ));
        }
        out
    }
}
