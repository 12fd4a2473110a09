use nalgebra::DVector;
use num_complex::Complex64;
use rand::RngCore;

use super::rng::{GaussianSource, RngStream};
use super::ComplexMatrix;
use crate::{Error, Result};

/// Draws Haar-random unitaries and states from one random stream.
///
/// A Ginibre matrix `G` is factored as `G = QR`; `Q diag(rᵢᵢ/|rᵢᵢ|)` is then
/// Haar distributed. Without the phase correction the law of `Q` depends on
/// the sign convention of the QR routine and is not Haar.
#[derive(Debug, Clone)]
pub struct HaarSampler<R> {
    gauss: GaussianSource<R>,
}

impl<R: RngCore> HaarSampler<R> {
    pub fn new(rng: R) -> Self {
        HaarSampler {
            gauss: GaussianSource::new(rng),
        }
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        // column-major fill, fixed order for reproducibility
        ComplexMatrix::from_fn(rows, cols, |_, _| self.gauss.complex_normal())
    }

    /// A Haar-random element of `U(d)`.
    pub fn unitary(&mut self, d: usize) -> ComplexMatrix {
        let qr = self.ginibre(d, d).qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..d {
            let rjj = r[(j, j)];
            let norm = rjj.norm();
            if norm > 0.0 {
                let phase = rjj / norm;
                for i in 0..d {
                    q[(i, j)] *= phase;
                }
            }
        }
        q
    }

    /// A uniformly random unit vector in `ℂ^dim`.
    pub fn state(&mut self, dim: usize) -> DVector<Complex64> {
        let v = DVector::from_fn(dim, |_, _| self.gauss.complex_normal());
        let norm = v.norm();
        v / Complex64::new(norm, 0.0)
    }
}

/// One Haar unitary from the start of `stream`.
pub fn haar_sample(d: usize, stream: &RngStream) -> Result<ComplexMatrix> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    Ok(HaarSampler::new(stream.generator()).unitary(d))
}

/// One Haar-random unit vector from the start of `stream`.
pub fn haar_state(dim: usize, stream: &RngStream) -> Result<DVector<Complex64>> {
    if dim == 0 {
        return Err(Error::invalid("dimension must be at least 1"));
    }
    Ok(HaarSampler::new(stream.generator()).state(dim))
}

/// `max |(U†U − 1)ᵢⱼ|`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.ncols();
    let prod = u.adjoint() * u;
    let id = ComplexMatrix::identity(n, n);
    super::max_abs_diff(&prod, &id)
}
