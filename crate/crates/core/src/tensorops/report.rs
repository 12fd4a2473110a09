use nalgebra::DVector;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::montecarlo::{mc_matrix_moment, mc_moment, mc_state_moment, McEstimate};
use super::rng::RngStream;
use super::{to_complex_matrix, ComplexMatrix};
use crate::combinatorics::Permutation;
use crate::weingarten::{
    average_purity, closed_moment_tr2, closed_moment_tr4, format_gaussian, format_rational, from_int,
    from_real, rational, sphere_moment2, trace_power_moment, uk_twirl, visibility_moment, ExactOperator,
};
use crate::{Error, Result};

/// Identities with a Monte Carlo check, in registration order.
pub const MC_IDENTITIES: &[&str] = &[
    "tr2",
    "tr4",
    "trpow",
    "visibility",
    "swap",
    "uu_bar",
    "uk_twirl",
    "purity",
    "sphere2",
];

/// Parameters shared by the Monte Carlo identities; each uses what it needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McParams {
    /// Power `k` in `Tr U^k` or `U^k`.
    pub k: usize,
    /// Dimension `d` (for `purity`, the dimension of subsystem A).
    pub d: usize,
    /// Exponent `n` in `|Tr U^k|^{2n}` for `trpow`.
    pub power: usize,
    /// Dimension of subsystem B for `purity`.
    pub d_b: usize,
}

impl Default for McParams {
    fn default() -> Self {
        McParams {
            k: 2,
            d: 3,
            power: 2,
            d_b: 2,
        }
    }
}

/// Exact value against a Monte Carlo estimate. For matrix identities the
/// fields describe the entry with the largest z-score.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub identity: String,
    pub exact: String,
    pub exact_value: Complex64,
    pub estimate: Complex64,
    pub stderr: f64,
    pub z: f64,
    pub pass: bool,
    pub entry: Option<(usize, usize)>,
    pub samples: usize,
}

const Z_THRESHOLD: f64 = 5.0;

fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn scalar_report(identity: &str, exact: &BigRational, est: McEstimate) -> McReport {
    let exact_value = Complex64::new(to_f64(exact), 0.0);
    let z = est.z_score(exact_value);
    McReport {
        identity: identity.to_string(),
        exact: format_rational(exact),
        exact_value,
        estimate: est.mean,
        stderr: est.stderr,
        z,
        pass: z <= Z_THRESHOLD,
        entry: None,
        samples: est.samples,
    }
}

fn matrix_report<F>(
    identity: &str,
    exact: &ExactOperator,
    observable: F,
    d: usize,
    n: usize,
    stream: &RngStream,
) -> Result<McReport>
where
    F: Fn(&ComplexMatrix) -> ComplexMatrix + Sync,
{
    let target = to_complex_matrix(exact);
    let shape = target.shape();
    let est = mc_matrix_moment(observable, d, shape, n, stream)?;
    let (r, c, z) = est.worst_entry(&target);
    Ok(McReport {
        identity: identity.to_string(),
        exact: format_gaussian(exact.get(r, c)),
        exact_value: target[(r, c)],
        estimate: est.mean[(r, c)],
        stderr: est.stderr[(r, c)],
        z,
        pass: z <= Z_THRESHOLD,
        entry: Some((r, c)),
        samples: n,
    })
}

fn diag_one_to_d(d: usize) -> Result<ExactOperator> {
    ExactOperator::from_fn(d, 1, |r, c| if r == c { from_int(r as i64 + 1) } else { from_int(0) })
}

/// Reduced purity `Tr(ρ_A²)` of a pure state on `ℂ^{d_A} ⊗ ℂ^{d_B}`.
fn reduced_purity(psi: &DVector<Complex64>, da: usize, db: usize) -> f64 {
    // ψ as a d_A × d_B matrix M; ρ_A = M M†
    let m = ComplexMatrix::from_fn(da, db, |a, b| psi[a * db + b]);
    let rho = &m * m.adjoint();
    (&rho * &rho).trace().re
}

/// Compares the exact value of a registered identity with a Monte Carlo
/// estimate from `n` samples; passes when `|z| ≤ 5`.
pub fn exact_vs_mc_report(identity: &str, params: &McParams, n: usize, stream: &RngStream) -> Result<McReport> {
    let McParams { k, d, power, d_b } = *params;
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    match identity {
        "tr2" => {
            let exact = BigRational::from_integer(closed_moment_tr2(k, d)?.into());
            let est = mc_moment(|u| Complex64::new(power_trace(u, k).norm_sqr(), 0.0), d, n, stream)?;
            Ok(scalar_report(identity, &exact, est))
        }
        "tr4" => {
            let exact = BigRational::from_integer(closed_moment_tr4(k, d)?.into());
            let est = mc_moment(|u| Complex64::new(power_trace(u, k).norm_sqr().powi(2), 0.0), d, n, stream)?;
            Ok(scalar_report(identity, &exact, est))
        }
        "trpow" => {
            let exact = trace_power_moment(k, power, d)?;
            let est = mc_moment(
                |u| Complex64::new(power_trace(u, k).norm_sqr().powi(power as i32), 0.0),
                d,
                n,
                stream,
            )?;
            Ok(scalar_report(identity, &exact, est))
        }
        "visibility" => {
            let a = diag_one_to_d(d)?;
            let exact = visibility_moment(&a, 4)?;
            let af = to_complex_matrix(&a);
            let est = mc_moment(|u| Complex64::new((&af * u).trace().norm_sqr().powi(2), 0.0), d, n, stream)?;
            Ok(scalar_report(identity, &exact, est))
        }
        "swap" => {
            let swap = ExactOperator::permutation(&Permutation::new(vec![1, 0])?, d)?;
            let exact = swap.scale(&from_real(rational(1, d as i64)));
            matrix_report(identity, &exact, |u| u.kronecker(&u.adjoint()), d, n, stream)
        }
        "uu_bar" => {
            // (1/d)|vec 1⟩⟨vec 1| with |vec 1⟩ = Σᵢ |ii⟩
            let exact = ExactOperator::from_fn(d, 2, |r, c| {
                if r % (d + 1) == 0 && c % (d + 1) == 0 {
                    from_real(rational(1, d as i64))
                } else {
                    from_int(0)
                }
            })?;
            matrix_report(identity, &exact, |u| u.kronecker(&u.conjugate()), d, n, stream)
        }
        "uk_twirl" => {
            let a = ExactOperator::matrix_unit(d, 1, 0, 0)?;
            let exact = uk_twirl(&a, k)?;
            let af = to_complex_matrix(&a);
            matrix_report(
                identity,
                &exact,
                |u| {
                    let uk = matrix_power(u, k);
                    &uk * &af * uk.adjoint()
                },
                d,
                n,
                stream,
            )
        }
        "purity" => {
            if d_b == 0 {
                return Err(Error::invalid("subsystem dimension must be at least 1"));
            }
            let exact = average_purity(d, d_b)?;
            let est = mc_state_moment(|psi| Complex64::new(reduced_purity(psi, d, d_b), 0.0), d * d_b, n, stream)?;
            Ok(scalar_report(identity, &exact, est))
        }
        "sphere2" => {
            let x = ExactOperator::matrix_unit(d, 1, 0, 0)?;
            let exact = sphere_moment2(&x, &x)?;
            let exact = crate::weingarten::expect_real(&exact, "sphere moment");
            let est = mc_state_moment(|psi| Complex64::new(psi[0].norm_sqr().powi(2), 0.0), d, n, stream)?;
            Ok(scalar_report(identity, &exact, est))
        }
        other => Err(Error::UnknownIdentity {
            name: other.to_string(),
            registered: MC_IDENTITIES.join(", "),
        }),
    }
}

/// `Tr U^k`.
fn power_trace(u: &ComplexMatrix, k: usize) -> Complex64 {
    matrix_power(u, k).trace()
}

/// `U^k`.
fn matrix_power(u: &ComplexMatrix, k: usize) -> ComplexMatrix {
    let n = u.nrows();
    let mut out = ComplexMatrix::identity(n, n);
    for _ in 0..k {
        out = &out * u;
    }
    out
}
