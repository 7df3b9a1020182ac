//! Affine potential families μ(x,t) = μ0(x) + Σ t_i μ_i(x).
//!
//! All experiments use a constant base potential and Gaussian bumps
//! r · exp(-||x - p||² / σ²), so the family is stored concretely; component
//! 0 is the base and component i ≥ 1 is the i-th bump.

use serde::{Deserialize, Serialize};

/// One Gaussian component r · exp(-||x - p||² / σ²).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GaussianBump {
    pub amplitude: f64,
    /// σ² in the exponent denominator.
    pub sigma_sq: f64,
    pub center: [f64; 2],
}

impl GaussianBump {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        let dx = x - self.center[0];
        let dy = y - self.center[1];
        self.amplitude * (-(dx * dx + dy * dy) / self.sigma_sq).exp()
    }
}

/// Affine potential with constant base μ0 and one Gaussian bump per
/// parameter component.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AffinePotential {
    pub base: f64,
    pub bumps: Vec<GaussianBump>,
}

impl AffinePotential {
    pub fn n_t(&self) -> usize {
        self.bumps.len()
    }

    /// Component i of the affine expansion (0 = base).
    pub fn component(&self, i: usize, x: f64, y: f64) -> f64 {
        if i == 0 {
            self.base
        } else {
            self.bumps[i - 1].eval(x, y)
        }
    }

    /// μ(x, t).
    pub fn eval(&self, x: f64, y: f64, t: &[f64]) -> f64 {
        let mut v = self.base;
        for (bump, &ti) in self.bumps.iter().zip(t) {
            v += ti * bump.eval(x, y);
        }
        v
    }
}

/// Dense samples of the bump components on a uniform grid, for fast
/// sup-norm potential-error estimates during reconstruction traces.
pub struct PotentialErrorGrid {
    /// bump_values[i][g] = μ_{i+1}(x_g).
    bump_values: Vec<Vec<f64>>,
}

impl PotentialErrorGrid {
    /// Samples all bumps on an `n x n` uniform grid over `bounds`.
    pub fn new(potential: &AffinePotential, bounds: (f64, f64), n: usize) -> Self {
        let (a, b) = bounds;
        let step = (b - a) / (n - 1) as f64;
        let mut bump_values = Vec::with_capacity(potential.bumps.len());
        for bump in &potential.bumps {
            let mut vals = Vec::with_capacity(n * n);
            for i in 0..n {
                let x = a + i as f64 * step;
                for j in 0..n {
                    let y = a + j as f64 * step;
                    vals.push(bump.eval(x, y));
                }
            }
            bump_values.push(vals);
        }
        Self { bump_values }
    }

    /// max_g |Σ_i dt_i μ_i(x_g)| for dt = t_hat - t_true.
    pub fn linf_error(&self, dt: &[f64]) -> f64 {
        if self.bump_values.is_empty() {
            return 0.0;
        }
        let n_pts = self.bump_values[0].len();
        let mut max = 0.0f64;
        for g in 0..n_pts {
            let mut v = 0.0;
            for (i, &d) in dt.iter().enumerate() {
                v += d * self.bump_values[i][g];
            }
            max = max.max(v.abs());
        }
        max
    }
}

/// Grid estimate of ||μ(·,t_hat) - μ(·,t_true)||_∞ on a `grid_n x grid_n`
/// sample of the domain (default 200).
pub fn potential_error(
    potential: &AffinePotential,
    t_hat: &[f64],
    t_true: &[f64],
    bounds: (f64, f64),
    grid_n: usize,
) -> f64 {
    let dt: Vec<f64> = t_hat.iter().zip(t_true).map(|(a, b)| a - b).collect();
    PotentialErrorGrid::new(potential, bounds, grid_n).linf_error(&dt)
}
