use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::{factorial, Error, Result};

/// Largest number of eigenangles `n` accepted by [`weyl_quadrature`].
pub const MAX_QUAD_DIM: usize = 6;
/// Largest total number of grid points `grid^n`.
pub const MAX_QUAD_POINTS: usize = 1 << 27;

/// `J(θ) = ∏_{i<j} |e^{iθᵢ} − e^{iθⱼ}|² = ∏_{i<j} 4 sin²((θᵢ − θⱼ)/2)`.
pub fn vandermonde_jacobian(theta: &[f64]) -> f64 {
    let mut j = 1.0;
    for a in 0..theta.len() {
        for b in a + 1..theta.len() {
            let s = ((theta[a] - theta[b]) / 2.0).sin();
            j *= 4.0 * s * s;
        }
    }
    j
}

/// `∫_{U(n)} f dU = (1/((2π)ⁿ n!)) ∫_{Tⁿ} f(θ) J(θ) dθ` for a class function
/// `f` given on eigenangles, by the uniform `gridⁿ` rule.
///
/// The rule is exact for trigonometric polynomials whose per-axis frequency
/// (of `f·J`) stays below `grid`.
pub fn weyl_quadrature<F>(class_fn: F, n: usize, grid: usize) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    let n_fact = factorial(n).to_f64().expect("n! is small");
    Ok(torus_average(class_fn, n, grid)? / n_fact)
}

/// `(1/(2π)ⁿ) ∫_{Tⁿ} f(θ) J(θ) dθ` on the uniform `gridⁿ` rule, without the
/// `1/n!` of the Weyl formula.
pub fn torus_average<F>(class_fn: F, n: usize, grid: usize) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Complex64 + Sync,
{
    if n == 0 || grid == 0 {
        return Err(Error::invalid("quadrature needs n >= 1 and at least one grid point"));
    }
    if n > MAX_QUAD_DIM {
        return Err(Error::ResourceLimit {
            what: "quadrature dimension n",
            size: n,
            cap: MAX_QUAD_DIM,
        });
    }
    let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(grid));
    let total = match total {
        Some(t) if t <= MAX_QUAD_POINTS => t,
        _ => {
            return Err(Error::ResourceLimit {
                what: "quadrature grid points",
                size: total.unwrap_or(usize::MAX),
                cap: MAX_QUAD_POINTS,
            })
        }
    };
    let step = std::f64::consts::TAU / grid as f64;
    // 4 sin²(π m / grid) for every index difference m
    let jac: Vec<f64> = (0..grid)
        .map(|m| {
            let s = (std::f64::consts::PI * m as f64 / grid as f64).sin();
            4.0 * s * s
        })
        .collect();
    let rows: Vec<Complex64> = (0..grid)
        .into_par_iter()
        .map(|first| {
            let mut idx = vec![0usize; n];
            idx[0] = first;
            let mut theta = vec![0.0; n];
            let mut acc = Complex64::new(0.0, 0.0);
            let inner = total / grid;
            for _ in 0..inner {
                let mut j = 1.0;
                for a in 0..n {
                    theta[a] = step * idx[a] as f64;
                    for b in a + 1..n {
                        j *= jac[(idx[a] + grid - idx[b]) % grid];
                    }
                }
                if j != 0.0 {
                    acc += class_fn(&theta) * j;
                }
                // odometer over axes 1..n
                for a in (1..n).rev() {
                    idx[a] += 1;
                    if idx[a] < grid {
                        break;
                    }
                    idx[a] = 0;
                }
            }
            acc
        })
        .collect();
    let sum: Complex64 = rows.iter().sum();
    Ok(sum / total as f64)
}

/// `θ ↦ |Σⱼ e^{ikθⱼ}|^{2m}`, the eigenangle form of `|Tr U^k|^{2m}`.
pub fn trace_power_integrand(k: i64, m: u32) -> impl Fn(&[f64]) -> Complex64 + Sync {
    move |theta: &[f64]| {
        let s: Complex64 = theta
            .iter()
            .map(|&t| Complex64::from_polar(1.0, k as f64 * t))
            .sum();
        Complex64::new(s.norm_sqr().powi(m as i32), 0.0)
    }
}

/// A grid size `2D + 1` for an integrand `f` of per-axis frequency at most
/// `f_degree`, with `D = f_degree + n − 1` accounting for `J`.
pub fn exact_grid_for(f_degree: usize, n: usize) -> usize {
    2 * (f_degree + n.saturating_sub(1)) + 1
}
