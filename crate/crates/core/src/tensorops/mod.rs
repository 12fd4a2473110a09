//! Floating-point cross-checks: dense complex matrices, Haar sampling,
//! Monte Carlo estimation and Weyl torus quadrature.

mod haar;
mod montecarlo;
mod quadrature;
mod report;
mod rng;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::combinatorics::Permutation;
use crate::weingarten::{permutation_action, tensor_dim, ExactOperator};
use crate::Result;

pub use haar::{haar_sample, haar_state, unitarity_residual, HaarSampler};
pub use montecarlo::{
    mc_matrix_moment, mc_moment, mc_state_moment, McEstimate, McMatrixEstimate, CHUNK_SIZE,
};
pub use quadrature::{
    exact_grid_for, torus_average, trace_power_integrand, vandermonde_jacobian, weyl_quadrature, MAX_QUAD_DIM,
    MAX_QUAD_POINTS,
};
pub use report::{exact_vs_mc_report, McParams, McReport, MC_IDENTITIES};
pub use rng::{GaussianSource, RngStream};

/// Dense double-precision complex matrix.
pub type ComplexMatrix = DMatrix<Complex64>;

/// `P(π)` on `(ℂ^d)^{⊗k}` in floating point; the same basis map as
/// [`ExactOperator::permutation`].
pub fn permutation_matrix(pi: &Permutation, d: usize) -> Result<ComplexMatrix> {
    let dim = tensor_dim(d, pi.degree())?;
    let action = permutation_action(pi, d)?;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for (x, &y) in action.iter().enumerate() {
        m[(y, x)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// Converts an exact operator to double precision.
pub fn to_complex_matrix(op: &ExactOperator) -> ComplexMatrix {
    let n = op.dim();
    let vals = op.to_f64_entries();
    ComplexMatrix::from_fn(n, n, |r, c| {
        let (re, im) = vals[r * n + c];
        Complex64::new(re, im)
    })
}

/// `U^{⊗k}`.
pub fn tensor_power(u: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::identity(1, 1);
    for _ in 0..k {
        out = out.kronecker(u);
    }
    out
}

/// `max |aᵢⱼ − bᵢⱼ|`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "matrix shapes differ");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::all_permutations;

    #[test]
    fn permutation_matrix_is_the_exact_twin() {
        for pi in all_permutations(3) {
            let exact = to_complex_matrix(&ExactOperator::permutation(&pi, 2).unwrap());
            let float = permutation_matrix(&pi, 2).unwrap();
            assert_eq!(max_abs_diff(&exact, &float), 0.0);
            let trace = float.trace().re;
            assert_eq!(trace, (1u32 << pi.num_cycles()) as f64);
        }
    }

    #[test]
    fn permutation_matrices_multiply() {
        let perms = all_permutations(3);
        for s in &perms {
            for t in &perms {
                let lhs = permutation_matrix(s, 2).unwrap() * permutation_matrix(t, 2).unwrap();
                assert_eq!(lhs, permutation_matrix(&s.compose(t), 2).unwrap());
            }
            assert_eq!(
                permutation_matrix(s, 3).unwrap().adjoint(),
                permutation_matrix(&s.inverse(), 3).unwrap()
            );
        }
    }
}
