//! Parameter reconstruction from pixel observations.
//!
//! The loss is the (optionally covariance-weighted) pixel least-squares
//! residual between the observation and the surrogate measurement
//! q(t) = Σ_k û_k(t)(Q_{0,k} + Σ_i t_i Q_{i,k}). Its gradient has the closed
//! form -Bᵀ D(t) Wᵀ z(t) - Z(t) û(t), evaluated with one forward ELM pass
//! plus contractions against the precomputed tensor. Minimization is
//! projected gradient descent with Armijo backtracking on the parameter box.

use nalgebra::DVector;

use crate::elm::ElmModel;
use crate::error::{CoreError, Result};
use crate::measurement::{MeasurementTensor, Observation};
use crate::potentials::PotentialErrorGrid;

/// Projected-gradient stopping threshold.
const GRADIENT_TOLERANCE: f64 = 1e-12;

/// Backtracking line-search constants.
#[derive(Debug, Clone)]
pub struct LineSearchConfig {
    pub initial_step: f64,
    /// Step shrink factor β in (0,1).
    pub shrink: f64,
    /// Armijo constant c1 in (0,1).
    pub armijo_c1: f64,
    pub max_backtracks: usize,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        Self {
            initial_step: 1.0,
            shrink: 0.5,
            armijo_c1: 1e-4,
            max_backtracks: 40,
        }
    }
}

/// Inverse problem bundling the surrogate, measurement tensor, and data.
pub struct InverseProblem<'a> {
    pub model: &'a ElmModel,
    pub tensor: &'a MeasurementTensor,
    pub observation: &'a Observation,
    pub weighted: bool,
}

impl<'a> InverseProblem<'a> {
    pub fn new(
        model: &'a ElmModel,
        tensor: &'a MeasurementTensor,
        observation: &'a Observation,
        weighted: bool,
    ) -> Result<Self> {
        if model.output_dim() != tensor.k {
            return Err(CoreError::InvalidArgument(format!(
                "model interpolates {} coefficients, tensor expects {}",
                model.output_dim(),
                tensor.k
            )));
        }
        if model.n_t() + 1 != tensor.n_components {
            return Err(CoreError::InvalidArgument(format!(
                "model has N_t = {}, tensor has {} potential components",
                model.n_t(),
                tensor.n_components
            )));
        }
        if observation.values.len() != tensor.n_m {
            return Err(CoreError::InvalidArgument(format!(
                "observation has {} pixels, tensor has {}",
                observation.values.len(),
                tensor.n_m
            )));
        }
        if weighted && observation.covariance_diag.is_none() {
            return Err(CoreError::Configuration(
                "weighted loss requested but the observation has no noise covariance".into(),
            ));
        }
        Ok(Self {
            model,
            tensor,
            observation,
            weighted,
        })
    }

    pub fn n_t(&self) -> usize {
        self.model.n_t()
    }

    /// Loss L(t) = (|P|/2) Σ_observed r_p² (each term divided by [Σ]_pp in
    /// the weighted form), with r = q̃_obs - q(t).
    pub fn loss(&self, t: &[f64]) -> Result<f64> {
        let u_hat = self.model.evaluate(t);
        let q = self.tensor.measure(t, &u_hat)?;
        let mut acc = 0.0;
        for p in 0..self.tensor.n_m {
            if !self.tensor.mask[p] {
                continue;
            }
            let r = self.observation.values[p] - q[p];
            let term = r * r;
            acc += match (self.weighted, &self.observation.covariance_diag) {
                (true, Some(cov)) => term / cov[p],
                (true, None) => unreachable!("validated at construction"),
                (false, _) => term,
            };
        }
        Ok(0.5 * self.tensor.pixel_area * acc)
    }

    /// Analytic gradient -Bᵀ D(t) Wᵀ z(t) - Z(t) û(t).
    pub fn grad_loss(&self, t: &[f64]) -> Result<DVector<f64>> {
        let u_hat = self.model.evaluate(t);
        let q = self.tensor.measure(t, &u_hat)?;
        // masked, optionally covariance-normalized residual
        let mut r = DVector::zeros(self.tensor.n_m);
        for p in 0..self.tensor.n_m {
            if !self.tensor.mask[p] {
                continue;
            }
            let raw = self.observation.values[p] - q[p];
            r[p] = match (self.weighted, &self.observation.covariance_diag) {
                (true, Some(cov)) => raw / cov[p],
                (true, None) => unreachable!("validated at construction"),
                (false, _) => raw,
            };
        }
        // c[(i,k)] = <r, Q_{i,k}>_pixels / |P|
        let c = self.tensor.contract_pixels(&r);
        let area = self.tensor.pixel_area;
        let n_t = self.n_t();
        let k = self.tensor.k;
        // z_k = |P| (c_0k + Σ_i t_i c_ik)
        let mut z = DVector::zeros(k);
        for k_idx in 0..k {
            let mut v = c[(0, k_idx)];
            for (i, &ti) in t.iter().enumerate() {
                v += ti * c[(i + 1, k_idx)];
            }
            z[k_idx] = area * v;
        }
        let y = self.model.w.transpose() * &z; // M
        let first = self.model.masked_feature_pullback(t, &y); // Bᵀ D y
        let mut grad = -first;
        // minus Z û with Z_{i,k} = |P| c_{i+1,k}
        for i in 0..n_t {
            let mut v = 0.0;
            for k_idx in 0..k {
                v += c[(i + 1, k_idx)] * u_hat[k_idx];
            }
            grad[i] -= area * v;
        }
        Ok(grad)
    }
}

/// One accepted iterate of a reconstruction run.
#[derive(Debug, Clone)]
pub struct TraceRecord {
    pub iteration: usize,
    pub loss: f64,
    pub t: Vec<f64>,
    /// ||t - t_true||2 when the truth is known.
    pub param_error: Option<f64>,
    /// Grid sup-norm estimate of the potential error when probes are given.
    pub potential_error: Option<f64>,
    /// Step size of the accepted step (initial step for iteration 0).
    pub step_size: f64,
    pub backtracks: usize,
}

/// Full history of a reconstruction run.
#[derive(Debug, Clone)]
pub struct ReconstructionTrace {
    pub records: Vec<TraceRecord>,
    pub final_t: Vec<f64>,
    /// True when the line search exhausted its backtracks.
    pub stalled: bool,
}

impl ReconstructionTrace {
    pub fn final_loss(&self) -> f64 {
        self.records.last().map(|r| r.loss).unwrap_or(f64::NAN)
    }

    pub fn final_param_error(&self) -> Option<f64> {
        self.records.last().and_then(|r| r.param_error)
    }
}

/// Optional per-iteration error probes against a known truth.
pub struct TraceProbes<'a> {
    pub t_true: Option<&'a [f64]>,
    pub potential_grid: Option<&'a PotentialErrorGrid>,
}

impl TraceProbes<'_> {
    fn record(&self, iteration: usize, loss: f64, t: &[f64], step: f64, backtracks: usize) -> TraceRecord {
        let param_error = self.t_true.map(|tt| parameter_error(t, tt));
        let potential_error = match (self.potential_grid, self.t_true) {
            (Some(grid), Some(tt)) => {
                let dt: Vec<f64> = t.iter().zip(tt).map(|(a, b)| a - b).collect();
                Some(grid.linf_error(&dt))
            }
            _ => None,
        };
        TraceRecord {
            iteration,
            loss,
            t: t.to_vec(),
            param_error,
            potential_error,
            step_size: step,
            backtracks,
        }
    }
}

/// Euclidean parameter reconstruction error.
pub fn parameter_error(t_hat: &[f64], t_true: &[f64]) -> f64 {
    t_hat
        .iter()
        .zip(t_true)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

fn clip_box(t: &mut [f64]) {
    for v in t.iter_mut() {
        *v = v.clamp(0.0, 1.0);
    }
}

/// Projected gradient descent with Armijo backtracking.
///
/// Candidates are t' = clip(t - ρ ∇L); a step is accepted when
/// L(t') ≤ L(t) - c1 ρ ||∇L||², and ρ resets to the initial step after each
/// accepted iteration. Terminates at `max_iter` accepted steps, when the
/// projected gradient vanishes, or with a recorded stall when the line
/// search runs out of backtracks.
pub fn reconstruct(
    problem: &InverseProblem,
    t0: &[f64],
    max_iter: usize,
    ls: &LineSearchConfig,
    probes: &TraceProbes,
) -> Result<ReconstructionTrace> {
    let mut t = t0.to_vec();
    clip_box(&mut t);
    let mut loss = problem.loss(&t)?;
    let mut records = vec![probes.record(0, loss, &t, ls.initial_step, 0)];
    let mut stalled = false;

    for iteration in 1..=max_iter {
        let grad = problem.grad_loss(&t)?;
        let grad_norm_sq = grad.norm_squared();
        // projected-gradient stopping test: a vanishing box-projected step
        // means t is stationary even when plain ||∇L|| is nonzero at a bound
        let mut probe = t.clone();
        for (pv, g) in probe.iter_mut().zip(grad.iter()) {
            *pv = (*pv - g).clamp(0.0, 1.0);
        }
        let projected_norm = probe
            .iter()
            .zip(&t)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        if projected_norm <= GRADIENT_TOLERANCE {
            break;
        }

        let mut step = ls.initial_step;
        let mut backtracks = 0;
        let accepted = loop {
            let mut candidate = t.clone();
            for (cv, g) in candidate.iter_mut().zip(grad.iter()) {
                *cv -= step * g;
            }
            clip_box(&mut candidate);
            let candidate_loss = problem.loss(&candidate)?;
            if candidate_loss <= loss - ls.armijo_c1 * step * grad_norm_sq {
                break Some((candidate, candidate_loss));
            }
            if backtracks >= ls.max_backtracks {
                break None;
            }
            step *= ls.shrink;
            backtracks += 1;
        };

        match accepted {
            Some((new_t, new_loss)) => {
                t = new_t;
                loss = new_loss;
                records.push(probes.record(iteration, loss, &t, step, backtracks));
            }
            None => {
                stalled = true;
                break;
            }
        }
    }

    Ok(ReconstructionTrace {
        final_t: t,
        records,
        stalled,
    })
}
