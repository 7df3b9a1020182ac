//! Sobol interpolation designs for the high-dimensional parameter box.

use nalgebra::DMatrix;
use sobol::params::JoeKuoD6;
use sobol::Sobol;

use crate::error::{CoreError, Result};

/// The first J points of the (unscrambled, unskipped) Sobol sequence in
/// `[0,1]^{n_t}`, row j = point j.
#[derive(Debug, Clone)]
pub struct SobolDesign {
    pub points: DMatrix<f64>,
}

/// Generates the design. Dimensions up to 1000 are supported by the bundled
/// direction numbers.
pub fn sobol_points(j: usize, n_t: usize) -> Result<SobolDesign> {
    if j == 0 {
        return Err(CoreError::InvalidArgument(
            "need at least one interpolation point".into(),
        ));
    }
    if n_t == 0 || n_t > 1000 {
        return Err(CoreError::InvalidArgument(format!(
            "sobol design supports 1..=1000 dimensions, got {n_t}"
        )));
    }
    let params = JoeKuoD6::standard();
    let seq = Sobol::<f64>::new(n_t, &params);
    let mut points = DMatrix::zeros(j, n_t);
    for (row, point) in seq.take(j).enumerate() {
        for (col, &v) in point.iter().enumerate() {
            points[(row, col)] = v;
        }
    }
    Ok(SobolDesign { points })
}

impl SobolDesign {
    pub fn len(&self) -> usize {
        self.points.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.points.nrows() == 0
    }

    pub fn dim(&self) -> usize {
        self.points.ncols()
    }

    /// Point j as a slice-backed vector.
    pub fn point(&self, j: usize) -> Vec<f64> {
        self.points.row(j).iter().cloned().collect()
    }
}
