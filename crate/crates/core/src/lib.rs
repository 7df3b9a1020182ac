//! Reduced-order surrogates for the parametric elliptic problem
//! `-Δu + μ(x,t) u = f` on a square domain, and a measurement-driven
//! parameter reconstruction built on top of them.
//!
//! The pieces:
//! - [`mesh`], [`assembly`], [`solve`], [`norms`]: P1 finite elements on a
//!   structured triangulation with the affine-in-parameter operator
//!   `A(t) = K + M0 + Σ t_i M_i`.
//! - [`param_grid`]: piecewise-linear (Kuhn simplex) interpolation of
//!   coefficient snapshots for parameter dimensions up to 4.
//! - [`elm`]: random-feature (ELM) surrogate with minimal-norm interpolation
//!   for higher-dimensional parameter spaces, with analytic t-gradients.
//! - [`measurement`]: pixel-mean measurement operator, precomputed
//!   projection tensors, and the multiplicative noise model.
//! - [`inversion`]: loss, analytic gradient, and projected gradient descent
//!   with backtracking line search for parameter reconstruction.

pub mod assembly;
pub mod elm;
pub mod error;
pub mod inversion;
pub mod measurement;
pub mod mesh;
pub mod norms;
pub mod param_grid;
pub mod potentials;
pub mod quadrature;
pub mod snapshot;
pub mod sobol_design;
pub mod solve;

pub use error::{CoreError, Result};
