//! Random-feature (ELM) surrogate for high-dimensional parameter spaces.
//!
//! A fixed bank of ReLU ridge features ψ_m(t) = max(0, b_m·t + c_m) is drawn
//! once; the outer weights W are the minimal-norm interpolant of the
//! coefficient snapshots, computed from the dual normal equations
//! w_k = Ψᵀ(ΨΨᵀ + λI)⁻¹ u_{·,k} with a tiny relative ridge λ. Evaluation is
//! û(t) = W σ(Bt + c), and the t-gradient of component k is Bᵀ D(t) w_k with
//! D(t) = diag(1[b_m·t + c_m > 0]).

use nalgebra::{Cholesky, DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{CoreError, Result};
use crate::sobol_design::SobolDesign;

/// Interpolation gate: max residual ≤ 1e-8 · (1 + ||U||_max).
const RESIDUAL_GATE: f64 = 1e-8;

/// Fixed random ReLU feature bank.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureBank {
    /// M x N_t matrix with unit-norm rows b_m.
    pub b: DMatrix<f64>,
    /// Offsets c_m, uniform on [-√N_t, √N_t].
    pub c: DVector<f64>,
    pub seed: u64,
}

/// Samples the bank: b_m = g/||g|| with g standard normal, c_m uniform on
/// [-√n_t, √n_t]. Deterministic for a given seed.
pub fn sample_features(m: usize, n_t: usize, seed: u64) -> Result<FeatureBank> {
    if m == 0 || n_t == 0 {
        return Err(CoreError::InvalidArgument(format!(
            "feature bank needs m >= 1 and n_t >= 1, got m={m}, n_t={n_t}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut b = DMatrix::zeros(m, n_t);
    let mut c = DVector::zeros(m);
    let c_range = (n_t as f64).sqrt();
    for row in 0..m {
        loop {
            let mut norm_sq = 0.0;
            for col in 0..n_t {
                let g: f64 = rng.sample(StandardNormal);
                b[(row, col)] = g;
                norm_sq += g * g;
            }
            if norm_sq > 1e-24 {
                let inv = 1.0 / norm_sq.sqrt();
                for col in 0..n_t {
                    b[(row, col)] *= inv;
                }
                break;
            }
        }
        c[row] = rng.gen_range(-c_range..=c_range);
    }
    Ok(FeatureBank { b, c, seed })
}

impl FeatureBank {
    pub fn num_features(&self) -> usize {
        self.b.nrows()
    }

    pub fn n_t(&self) -> usize {
        self.b.ncols()
    }

    /// Feature vector σ(Bt + c).
    pub fn features(&self, t: &[f64]) -> DVector<f64> {
        let m = self.num_features();
        let mut phi = DVector::zeros(m);
        for row in 0..m {
            let mut a = self.c[row];
            for (col, &tv) in t.iter().enumerate() {
                a += self.b[(row, col)] * tv;
            }
            phi[row] = a.max(0.0);
        }
        phi
    }

    /// Active-unit mask 1[b_m·t + c_m > 0] (the ReLU subgradient at a kink is 0).
    pub fn active_mask(&self, t: &[f64]) -> Vec<bool> {
        let m = self.num_features();
        let mut mask = vec![false; m];
        for row in 0..m {
            let mut a = self.c[row];
            for (col, &tv) in t.iter().enumerate() {
                a += self.b[(row, col)] * tv;
            }
            mask[row] = a > 0.0;
        }
        mask
    }
}

/// Feature matrix Ψ with Ψ_{j,m} = ψ_m(t_j*).
pub fn feature_matrix(bank: &FeatureBank, design: &SobolDesign) -> DMatrix<f64> {
    feature_matrix_at(bank, &design.points)
}

/// As [`feature_matrix`] for an arbitrary point set (row per point).
pub fn feature_matrix_at(bank: &FeatureBank, points: &DMatrix<f64>) -> DMatrix<f64> {
    // Ψ = σ(T Bᵀ + 1 cᵀ)
    let mut psi = points * bank.b.transpose();
    for row in 0..psi.nrows() {
        for col in 0..psi.ncols() {
            psi[(row, col)] = (psi[(row, col)] + bank.c[col]).max(0.0);
        }
    }
    psi
}

/// Diagnostics of a minimal-norm fit.
#[derive(Debug, Clone)]
pub struct FitReport {
    /// max |Ψ Wᵀ - U| over all fit points and components.
    pub max_residual: f64,
    /// Ridge value λ actually used.
    pub ridge: f64,
}

/// Minimal-norm interpolation of the snapshot matrix U (J x K): returns the
/// outer weights W (K x M) and a fit report.
///
/// The constrained problem min ||w|| s.t. Ψw = u is solved through an
/// orthonormal basis of the feature span: Ψᵀ = QR via CholeskyQR2, which
/// runs at matrix-multiply speed, then w_k = Q R^{-T} u_k. Feature banks
/// whose Gram matrix is too ill-conditioned for that route fall back to an
/// SVD pseudoinverse. Either way the result must pass the interpolation
/// residual gate.
pub fn fit_min_norm(psi: &DMatrix<f64>, u: &DMatrix<f64>) -> Result<(DMatrix<f64>, FitReport)> {
    let j = psi.nrows();
    let m = psi.ncols();
    if u.nrows() != j {
        return Err(CoreError::InvalidArgument(format!(
            "snapshot matrix has {} rows, feature matrix has {j}",
            u.nrows()
        )));
    }
    if m < j {
        return Err(CoreError::InvalidArgument(format!(
            "overparameterized regime requires M >= J, got M={m}, J={j}"
        )));
    }
    let u_max = u.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    let gate = RESIDUAL_GATE * (1.0 + u_max);

    if let Some((w, report)) = cholesky_qr2_min_norm(psi, u) {
        if report.max_residual <= gate {
            return Ok((w, report));
        }
    }
    let (w, report) = svd_min_norm(psi, u)?;
    if report.max_residual > gate {
        return Err(CoreError::FitFailure(format!(
            "interpolation residual {:.3e} exceeds the gate {gate:.3e}",
            report.max_residual
        )));
    }
    Ok((w, report))
}

/// Fast path: two rounds of Cholesky-based orthogonalization of Ψᵀ.
fn cholesky_qr2_min_norm(
    psi: &DMatrix<f64>,
    u: &DMatrix<f64>,
) -> Option<(DMatrix<f64>, FitReport)> {
    let j = psi.nrows();
    let gram = psi * psi.transpose();
    let trace = gram.trace();
    let mut shift = 0.0;
    let (l1, shift_used) = loop {
        let mut g = gram.clone();
        if shift > 0.0 {
            for d in 0..j {
                g[(d, d)] += shift;
            }
        }
        match Cholesky::new(g) {
            Some(chol) => break (chol.unpack(), shift),
            None => {
                shift = if shift == 0.0 {
                    f64::EPSILON * trace
                } else {
                    shift * 100.0
                };
                if shift > 1e-4 * trace {
                    return None;
                }
            }
        }
    };
    // X1 = L1^{-1} Ψ, then a second pass repairs orthonormality
    let x1 = l1.solve_lower_triangular(psi)?;
    let gram2 = &x1 * x1.transpose();
    let l2 = Cholesky::new(gram2)?.unpack();
    let x2 = l2.solve_lower_triangular(&x1)?;
    // with Ψᵀ = Q R, Q = X2ᵀ and Rᵀ = L1 L2: min-norm weights are Q R^{-T} u
    let y1 = l1.solve_lower_triangular(u)?;
    let y = l2.solve_lower_triangular(&y1)?;
    let w = y.transpose() * &x2; // K x M
    let max_residual = interpolation_residual(psi, &w, u);
    Some((
        w,
        FitReport {
            max_residual,
            ridge: shift_used,
        },
    ))
}

/// Stable fallback: truncated-SVD pseudoinverse of Ψ.
fn svd_min_norm(psi: &DMatrix<f64>, u: &DMatrix<f64>) -> Result<(DMatrix<f64>, FitReport)> {
    let j = psi.nrows();
    let svd = psi.clone().svd(true, true);
    let u_left = svd.u.as_ref().ok_or_else(|| {
        CoreError::FitFailure("SVD did not produce singular vectors".into())
    })?;
    let v_t = svd.v_t.as_ref().ok_or_else(|| {
        CoreError::FitFailure("SVD did not produce singular vectors".into())
    })?;
    let sigma_max = svd.singular_values.max();
    let cutoff = sigma_max * j as f64 * f64::EPSILON;
    // w = V Σ⁺ Uᵀ u, truncating singular values below the cutoff
    let mut ut_u = u_left.transpose() * u; // J x K
    for (row, &s) in svd.singular_values.iter().enumerate() {
        let f = if s > cutoff { 1.0 / s } else { 0.0 };
        for col in 0..ut_u.ncols() {
            ut_u[(row, col)] *= f;
        }
    }
    let w = (v_t.transpose() * ut_u).transpose(); // K x M
    let max_residual = interpolation_residual(psi, &w, u);
    Ok((
        w,
        FitReport {
            max_residual,
            ridge: 0.0,
        },
    ))
}

fn interpolation_residual(psi: &DMatrix<f64>, w: &DMatrix<f64>, u: &DMatrix<f64>) -> f64 {
    let reconstructed = psi * w.transpose(); // J x K
    let mut max_residual = 0.0f64;
    for (r, u_v) in reconstructed.iter().zip(u.iter()) {
        max_residual = max_residual.max((r - u_v).abs());
    }
    max_residual
}

/// Fitted ELM surrogate for the coefficient map t ↦ û(t).
#[derive(Debug, Clone)]
pub struct ElmModel {
    pub bank: FeatureBank,
    /// Outer weights, K x M.
    pub w: DMatrix<f64>,
    pub fit_report: FitReport,
}

impl ElmModel {
    /// Samples nothing: fits outer weights to snapshots at the design points.
    pub fn fit(bank: FeatureBank, design: &SobolDesign, snapshots: &DMatrix<f64>) -> Result<Self> {
        if design.dim() != bank.n_t() {
            return Err(CoreError::InvalidArgument(format!(
                "design dimension {} does not match bank dimension {}",
                design.dim(),
                bank.n_t()
            )));
        }
        let psi = feature_matrix(&bank, design);
        let (w, fit_report) = fit_min_norm(&psi, snapshots)?;
        Ok(Self {
            bank,
            w,
            fit_report,
        })
    }

    pub fn n_t(&self) -> usize {
        self.bank.n_t()
    }

    /// Number of interpolated components K.
    pub fn output_dim(&self) -> usize {
        self.w.nrows()
    }

    /// û(t) = W σ(Bt + c). Points outside [0,1]^{N_t} extrapolate.
    pub fn evaluate(&self, t: &[f64]) -> DVector<f64> {
        let phi = self.bank.features(t);
        &self.w * phi
    }

    /// ∇_t û as a K x N_t matrix; row k is Bᵀ D(t) w_k.
    pub fn gradient(&self, t: &[f64]) -> DMatrix<f64> {
        let mask = self.bank.active_mask(t);
        let k = self.output_dim();
        let n_t = self.n_t();
        let mut grad = DMatrix::zeros(k, n_t);
        for (m_idx, &active) in mask.iter().enumerate() {
            if !active {
                continue;
            }
            for row in 0..k {
                let wk = self.w[(row, m_idx)];
                if wk == 0.0 {
                    continue;
                }
                for col in 0..n_t {
                    grad[(row, col)] += wk * self.bank.b[(m_idx, col)];
                }
            }
        }
        grad
    }

    /// Applies diag(active) then Bᵀ to a length-M vector: Bᵀ D(t) y.
    pub fn masked_feature_pullback(&self, t: &[f64], y: &DVector<f64>) -> DVector<f64> {
        let mask = self.bank.active_mask(t);
        let n_t = self.n_t();
        let mut out = DVector::zeros(n_t);
        for (m_idx, &active) in mask.iter().enumerate() {
            if active && y[m_idx] != 0.0 {
                for col in 0..n_t {
                    out[col] += y[m_idx] * self.bank.b[(m_idx, col)];
                }
            }
        }
        out
    }

    /// Writes the model (seed, dims, provenance hash, B, c, W) as a single
    /// binary file with exact round-trip.
    pub fn save(&self, path: &Path, provenance: &[u8; 32]) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        f.write_all(MODEL_MAGIC)?;
        for v in [
            self.bank.seed,
            self.bank.n_t() as u64,
            self.bank.num_features() as u64,
            self.output_dim() as u64,
        ] {
            f.write_all(&v.to_le_bytes())?;
        }
        f.write_all(provenance)?;
        f.write_all(&self.fit_report.max_residual.to_le_bytes())?;
        f.write_all(&self.fit_report.ridge.to_le_bytes())?;
        write_matrix(&mut f, &self.bank.b)?;
        for v in self.bank.c.iter() {
            f.write_all(&v.to_le_bytes())?;
        }
        write_matrix(&mut f, &self.w)?;
        Ok(())
    }

    /// Reads a model written by [`ElmModel::save`], returning it with the
    /// stored provenance hash.
    pub fn load(path: &Path) -> Result<(Self, [u8; 32])> {
        let mut f = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut magic = [0u8; 8];
        f.read_exact(&mut magic)?;
        if &magic != MODEL_MAGIC {
            return Err(CoreError::Format("bad magic bytes".into()));
        }
        let seed = read_u64(&mut f)?;
        let n_t = read_u64(&mut f)? as usize;
        let m = read_u64(&mut f)? as usize;
        let k = read_u64(&mut f)? as usize;
        let mut provenance = [0u8; 32];
        f.read_exact(&mut provenance)?;
        let max_residual = read_f64(&mut f)?;
        let ridge = read_f64(&mut f)?;
        let b = read_matrix(&mut f, m, n_t)?;
        let mut c = DVector::zeros(m);
        for row in 0..m {
            c[row] = read_f64(&mut f)?;
        }
        let w = read_matrix(&mut f, k, m)?;
        Ok((
            Self {
                bank: FeatureBank { b, c, seed },
                w,
                fit_report: FitReport { max_residual, ridge },
            },
            provenance,
        ))
    }
}

const MODEL_MAGIC: &[u8; 8] = b"ELMMODL1";

fn write_matrix(f: &mut impl Write, m: &DMatrix<f64>) -> Result<()> {
    for row in 0..m.nrows() {
        for col in 0..m.ncols() {
            f.write_all(&m[(row, col)].to_le_bytes())?;
        }
    }
    Ok(())
}

fn read_matrix(f: &mut impl Read, rows: usize, cols: usize) -> Result<DMatrix<f64>> {
    let mut m = DMatrix::zeros(rows, cols);
    for row in 0..rows {
        for col in 0..cols {
            m[(row, col)] = read_f64(f)?;
        }
    }
    Ok(m)
}

fn read_u64(f: &mut impl Read) -> Result<u64> {
    let mut buf = [0u8; 8];
    f.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64(f: &mut impl Read) -> Result<f64> {
    let mut buf = [0u8; 8];
    f.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sobol_design::sobol_points;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn bank_rows_unit_norm_and_offsets_bounded() {
        let bank = sample_features(400, 10, 99).unwrap();
        let bound = 10.0f64.sqrt();
        for row in 0..400 {
            let norm: f64 = (0..10).map(|c| bank.b[(row, c)].powi(2)).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        for v in bank.c.iter() {
            assert!(v.abs() <= bound);
        }
    }

    #[test]
    fn bank_sampling_deterministic() {
        let a = sample_features(64, 5, 7).unwrap();
        let b = sample_features(64, 5, 7).unwrap();
        let c = sample_features(64, 5, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn feature_matrix_special_cases() {
        // all offsets at +sqrt(n_t): every entry positive on the box
        let mut bank = sample_features(50, 3, 1).unwrap();
        let bound = 3.0f64.sqrt();
        bank.c.fill(bound);
        let design = sobol_points(40, 3).unwrap();
        let psi = feature_matrix(&bank, &design);
        assert!(psi.iter().all(|&v| v > 0.0));

        // single feature b = e1, c = 0: ψ(t) = t_1
        let bank = FeatureBank {
            b: DMatrix::from_row_slice(1, 3, &[1.0, 0.0, 0.0]),
            c: DVector::zeros(1),
            seed: 0,
        };
        let psi = feature_matrix(&bank, &design);
        for j in 0..design.len() {
            assert!((psi[(j, 0)] - design.points[(j, 0)]).abs() < 1e-15);
        }

        // row at t = 0 equals max(0, c)
        let bank = sample_features(20, 3, 5).unwrap();
        let zero = DMatrix::zeros(1, 3);
        let psi = feature_matrix_at(&bank, &zero);
        for m in 0..20 {
            assert_eq!(psi[(0, m)], bank.c[m].max(0.0));
        }
    }

    #[test]
    fn positive_homogeneity_with_zero_offsets() {
        let mut bank = sample_features(30, 4, 2).unwrap();
        bank.c.fill(0.0);
        let design = sobol_points(25, 4).unwrap();
        let psi1 = feature_matrix(&bank, &design);
        let scaled = &design.points * 0.37;
        let psi_s = feature_matrix_at(&bank, &scaled);
        for (a, b) in psi_s.iter().zip(psi1.iter()) {
            assert!((a - 0.37 * b).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_feature_matrix_recovers_snapshots() {
        // Ψ = I: W = Uᵀ up to the λ perturbation.
        let j = 12;
        let psi = DMatrix::identity(j, j);
        let mut rng = ChaCha20Rng::seed_from_u64(13);
        let u = DMatrix::from_fn(j, 4, |_, _| rng.gen::<f64>());
        let (w, report) = fit_min_norm(&psi, &u).unwrap();
        assert!(((&w.transpose() - &u).amax()) < 1e-9);
        assert!(report.max_residual < 1e-9);
    }

    #[test]
    fn min_norm_property_on_constructed_targets() {
        // U = Ψ V: the fit interpolates exactly and the recovered weights
        // have norm no larger than the generators.
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let bank = sample_features(160, 6, 17).unwrap();
        let design = sobol_points(40, 6).unwrap();
        let psi = feature_matrix(&bank, &design);
        let v = DMatrix::from_fn(160, 3, |_, _| rng.gen::<f64>() - 0.5);
        let u = &psi * &v;
        let (w, report) = fit_min_norm(&psi, &u).unwrap();
        assert!(report.max_residual <= 1e-8 * (1.0 + u.amax()));
        for k in 0..3 {
            let wk = w.row(k).transpose();
            let vk = v.column(k);
            // interpolation: Ψ w_k = Ψ v_k
            let diff = (&psi * &wk - &psi * &vk).amax();
            assert!(diff < 1e-8 * (1.0 + u.amax()));
            assert!(
                wk.norm() <= vk.norm() * (1.0 + 1e-8),
                "min-norm violated: ||w|| = {}, ||v|| = {}",
                wk.norm(),
                vk.norm()
            );
        }
    }

    #[test]
    fn underparameterized_fit_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(6);
        let psi = DMatrix::from_fn(10, 5, |_, _| rng.gen::<f64>());
        let u = DMatrix::from_fn(10, 2, |_, _| rng.gen::<f64>());
        assert!(matches!(
            fit_min_norm(&psi, &u),
            Err(CoreError::InvalidArgument(_))
        ));
    }

    fn toy_model(seed: u64) -> (ElmModel, SobolDesign) {
        let bank = sample_features(200, 5, seed).unwrap();
        let design = sobol_points(50, 5).unwrap();
        let target = |t: &[f64]| -> [f64; 3] {
            let s: f64 = t.iter().sum();
            [(1.3 * s).sin(), s * s, 1.0 / (1.0 + s)]
        };
        let mut u = DMatrix::zeros(50, 3);
        for j in 0..50 {
            let p = design.point(j);
            let v = target(&p);
            for k in 0..3 {
                u[(j, k)] = v[k];
            }
        }
        (ElmModel::fit(bank, &design, &u).unwrap(), design)
    }

    #[test]
    fn evaluation_interpolates_fit_points() {
        let (model, design) = toy_model(23);
        for j in 0..design.len() {
            let t = design.point(j);
            let _ = model.evaluate(&t);
        }
        assert!(model.fit_report.max_residual <= 1e-8 * 2.0);
    }

    #[test]
    fn zero_weights_evaluate_to_zero() {
        let (mut model, _) = toy_model(29);
        model.w.fill(0.0);
        let t = vec![0.3; 5];
        assert_eq!(model.evaluate(&t).amax(), 0.0);
        assert_eq!(model.gradient(&t).amax(), 0.0);
    }

    #[test]
    fn single_feature_gradient_is_relu_derivative() {
        let bank = FeatureBank {
            b: DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
            c: DVector::from_element(1, -0.5),
            seed: 0,
        };
        let model = ElmModel {
            bank,
            w: DMatrix::from_element(1, 1, 1.0),
            fit_report: FitReport {
                max_residual: 0.0,
                ridge: 0.0,
            },
        };
        let g_above = model.gradient(&[0.8, 0.0]);
        assert!((g_above[(0, 0)] - 1.0).abs() < 1e-15);
        let g_below = model.gradient(&[0.2, 0.0]);
        assert_eq!(g_below[(0, 0)], 0.0);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let (model, _) = toy_model(31);
        let mut rng = ChaCha20Rng::seed_from_u64(77);
        let h = 1e-6;
        let mut checked = 0;
        'outer: while checked < 20 {
            let t: Vec<f64> = (0..5).map(|_| 0.05 + 0.9 * rng.gen::<f64>()).collect();
            // stay away from kink hyperplanes
            for m in 0..model.bank.num_features() {
                let mut a = model.bank.c[m];
                for (col, &tv) in t.iter().enumerate() {
                    a += model.bank.b[(m, col)] * tv;
                }
                if a.abs() < 1e-4 {
                    continue 'outer;
                }
            }
            let grad = model.gradient(&t);
            for d in 0..5 {
                let mut tp = t.clone();
                let mut tm = t.clone();
                tp[d] += h;
                tm[d] -= h;
                let fd = (model.evaluate(&tp) - model.evaluate(&tm)) / (2.0 * h);
                for k in 0..3 {
                    let g = grad[(k, d)];
                    let scale = 1.0 + g.abs();
                    assert!(
                        (fd[k] - g).abs() / scale < 1e-5,
                        "component ({k},{d}): fd {} vs analytic {g}",
                        fd[k]
                    );
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn degenerate_bank_reports_fit_failure() {
        // this particular draw yields an exactly rank-deficient feature
        // matrix on the Sobol design; the fit must fail with resampling
        // advice instead of returning a bad interpolant
        let bank = sample_features(200, 5, 41).unwrap();
        let design = sobol_points(50, 5).unwrap();
        let psi = feature_matrix(&bank, &design);
        let svd = psi.clone().svd(false, false);
        assert!(svd.singular_values.min() < 1e-12 * svd.singular_values.max());
        let mut u = DMatrix::zeros(50, 2);
        for j in 0..50 {
            let s: f64 = design.point(j).iter().sum();
            u[(j, 0)] = (1.3 * s).sin();
            u[(j, 1)] = 1.0 / (1.0 + s);
        }
        assert!(matches!(
            fit_min_norm(&psi, &u),
            Err(CoreError::FitFailure(_))
        ));
    }

    #[test]
    fn model_round_trips_through_file() {
        let (model, _) = toy_model(42);
        let dir = std::env::temp_dir().join("paramrom_elm_roundtrip");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("model.bin");
        let provenance = [7u8; 32];
        model.save(&path, &provenance).unwrap();
        let (loaded, prov) = ElmModel::load(&path).unwrap();
        assert_eq!(prov, provenance);
        assert_eq!(loaded.bank.b, model.bank.b);
        assert_eq!(loaded.bank.c, model.bank.c);
        assert_eq!(loaded.w, model.w);
        assert_eq!(loaded.bank.seed, model.bank.seed);
        std::fs::remove_file(&path).ok();
    }
}
