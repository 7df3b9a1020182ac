//! Manufactured solutions for the convergence studies.
//!
//! Each case prescribes a closed-form u(x,t) with its analytic Laplacian;
//! the source f = -Δu + μu and the boundary data g = u then make u solve the
//! parametric problem exactly.

use paramrom::potentials::{AffinePotential, GaussianBump};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;
use std::sync::Arc;

type Field = Arc<dyn Fn(f64, f64, &[f64]) -> f64 + Send + Sync>;

/// Closed-form solution with the machinery needed to drive a FEM solve.
#[derive(Clone)]
pub struct ManufacturedCase {
    pub n_t: usize,
    pub potential: AffinePotential,
    exact: Field,
    laplacian: Field,
}

impl ManufacturedCase {
    pub fn exact(&self, x: f64, y: f64, t: &[f64]) -> f64 {
        (self.exact)(x, y, t)
    }

    pub fn laplacian(&self, x: f64, y: f64, t: &[f64]) -> f64 {
        (self.laplacian)(x, y, t)
    }

    /// f = -Δu + μ(x,t) u.
    pub fn source(&self, x: f64, y: f64, t: &[f64]) -> f64 {
        -self.laplacian(x, y, t) + self.potential.eval(x, y, t) * self.exact(x, y, t)
    }

    /// Largest relative mismatch between the analytic Laplacian and a
    /// central-difference estimate, over random interior (x, t).
    pub fn fd_laplacian_error(&self, samples: usize, step: f64, seed: u64) -> f64 {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut worst: f64 = 0.0;
        for _ in 0..samples {
            let x = -0.9 + 1.8 * rng.gen::<f64>();
            let y = -0.9 + 1.8 * rng.gen::<f64>();
            let t: Vec<f64> = (0..self.n_t).map(|_| rng.gen::<f64>()).collect();
            let u0 = self.exact(x, y, &t);
            let fd = (self.exact(x + step, y, &t) + self.exact(x - step, y, &t)
                + self.exact(x, y + step, &t)
                + self.exact(x, y - step, &t)
                - 4.0 * u0)
                / (step * step);
            let exact = self.laplacian(x, y, &t);
            worst = worst.max((fd - exact).abs() / (1.0 + exact.abs()));
        }
        worst
    }
}

/// Low-dimensional case (N_t = 2):
/// u = sin(2π t·x) + 2(exp(-5|x-t|²) + exp(-5|x+t|²)) + 1 with Gaussian
/// potentials centered at ±(0.5, 0.5) over the base 0.1.
pub fn manufactured_low_dim() -> ManufacturedCase {
    let potential = AffinePotential {
        base: 0.1,
        bumps: vec![
            GaussianBump {
                amplitude: 1.0,
                sigma_sq: 0.5,
                center: [0.5, 0.5],
            },
            GaussianBump {
                amplitude: 1.0,
                sigma_sq: 0.5,
                center: [-0.5, -0.5],
            },
        ],
    };
    let exact: Field = Arc::new(|x, y, t: &[f64]| {
        let tx = t[0] * x + t[1] * y;
        let rm = (x - t[0]).powi(2) + (y - t[1]).powi(2);
        let rp = (x + t[0]).powi(2) + (y + t[1]).powi(2);
        (2.0 * PI * tx).sin() + 2.0 * ((-5.0 * rm).exp() + (-5.0 * rp).exp()) + 1.0
    });
    let laplacian: Field = Arc::new(|x, y, t: &[f64]| {
        let tx = t[0] * x + t[1] * y;
        let t_sq = t[0] * t[0] + t[1] * t[1];
        let rm = (x - t[0]).powi(2) + (y - t[1]).powi(2);
        let rp = (x + t[0]).powi(2) + (y + t[1]).powi(2);
        -4.0 * PI * PI * t_sq * (2.0 * PI * tx).sin()
            + 2.0 * ((100.0 * rm - 20.0) * (-5.0 * rm).exp()
                + (100.0 * rp - 20.0) * (-5.0 * rp).exp())
    });
    ManufacturedCase {
        n_t: 2,
        potential,
        exact,
        laplacian,
    }
}

/// High-dimensional case (N_t = 10):
/// u = sin((t·v1) π x1) cos((t·v2) π x2) + 10 x1² x2 / (1 + 6|t|)
///   + |t| exp(-4(x1²+x2²)/3), with seeded random unit vectors v1, v2 and
/// ten sharp Gaussian potentials at seeded random centers.
pub fn manufactured_high_dim(seed: u64) -> ManufacturedCase {
    let n_t = 10;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut unit = |rng: &mut ChaCha20Rng| -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..n_t).map(|_| rng.sample(StandardNormal)).collect();
            let norm: f64 = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm > 1e-12 {
                return v.iter().map(|a| a / norm).collect();
            }
        }
    };
    let v1 = unit(&mut rng);
    let v2 = unit(&mut rng);
    let bumps: Vec<GaussianBump> = (0..n_t)
        .map(|_| GaussianBump {
            amplitude: 500.0,
            sigma_sq: 1.0 / 50.0,
            center: [2.0 * rng.gen::<f64>() - 1.0, 2.0 * rng.gen::<f64>() - 1.0],
        })
        .collect();
    let potential = AffinePotential { base: 0.1, bumps };

    let dot = |v: &[f64], t: &[f64]| -> f64 { v.iter().zip(t).map(|(a, b)| a * b).sum() };
    let v1c = v1.clone();
    let v2c = v2.clone();
    let exact: Field = Arc::new(move |x, y, t: &[f64]| {
        let a = dot(&v1c, t) * PI;
        let b = dot(&v2c, t) * PI;
        let t_norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
        let r_sq = x * x + y * y;
        (a * x).sin() * (b * y).cos() + 10.0 * x * x * y / (1.0 + 6.0 * t_norm)
            + t_norm * (-4.0 * r_sq / 3.0).exp()
    });
    let laplacian: Field = Arc::new(move |x, y, t: &[f64]| {
        let a = dot(&v1, t) * PI;
        let b = dot(&v2, t) * PI;
        let t_norm = t.iter().map(|v| v * v).sum::<f64>().sqrt();
        let r_sq = x * x + y * y;
        let c = 4.0 / 3.0;
        -(a * a + b * b) * (a * x).sin() * (b * y).cos()
            + 20.0 * y / (1.0 + 6.0 * t_norm)
            + t_norm * (4.0 * c * c * r_sq - 4.0 * c) * (-c * r_sq).exp()
    });
    ManufacturedCase {
        n_t,
        potential,
        exact,
        laplacian,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_dim_laplacian_matches_finite_differences() {
        let case = manufactured_low_dim();
        let worst = case.fd_laplacian_error(100, 1e-4, 12);
        assert!(worst <= 1e-6, "FD mismatch {worst}");
    }

    #[test]
    fn high_dim_laplacian_matches_finite_differences() {
        let case = manufactured_high_dim(5);
        let worst = case.fd_laplacian_error(100, 1e-4, 13);
        assert!(worst <= 1e-6, "FD mismatch {worst}");
    }

    #[test]
    fn low_dim_values_by_independent_path() {
        let case = manufactured_low_dim();
        // at x = 0 the sine vanishes and both bumps coincide
        for t in [[0.3, 0.4], [0.9, 0.1]] {
            let t_sq = t[0] * t[0] + t[1] * t[1];
            let expect = 4.0 * (-5.0 * t_sq).exp() + 1.0;
            assert!((case.exact(0.0, 0.0, &t) - expect).abs() < 1e-14);
        }
        // symmetry in x -> -x at t = 0 columns of the formula
        let u1 = case.exact(0.3, -0.2, &[0.0, 0.0]);
        let u2 = case.exact(-0.3, 0.2, &[0.0, 0.0]);
        assert!((u1 - u2).abs() < 1e-14);
    }

    #[test]
    fn high_dim_value_at_zero_parameter() {
        let case = manufactured_high_dim(7);
        // at t = 0: sine term vanishes, |t| term vanishes, leaving 10 x1² x2
        for (x, y) in [(0.5, -0.3), (-0.8, 0.9)] {
            let expect = 10.0 * x * x * y;
            assert!((case.exact(x, y, &[0.0; 10]) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn high_dim_deterministic_in_seed() {
        let a = manufactured_high_dim(3);
        let b = manufactured_high_dim(3);
        let c = manufactured_high_dim(4);
        assert_eq!(a.potential, b.potential);
        assert_ne!(a.potential, c.potential);
        let t: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
        assert_eq!(a.exact(0.3, 0.4, &t), b.exact(0.3, 0.4, &t));
    }
}
