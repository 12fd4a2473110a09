//! Closed-form moments and their exact Weingarten counterparts.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::operator::ExactOperator;
use super::scalar::{expect_real, from_int, from_real, GaussianRational};
use super::weingarten_shared;
use crate::combinatorics::{all_permutations, cycle_type, Partition, Permutation};
use crate::{Error, Result};

/// Largest total degree `Σ aᵢ` accepted by [`trace_product_moment`]; the
/// summation visits `(Σ aᵢ)!²` permutation pairs.
pub const MAX_TRACE_MOMENT_WEIGHT: usize = 7;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The permutation whose cycles are consecutive blocks of the given lengths.
fn block_cycles(lengths: &[usize]) -> Vec<usize> {
    let mut images = Vec::new();
    let mut start = 0;
    for &len in lengths {
        for a in 0..len {
            images.push(start + (a + 1) % len);
        }
        start += len;
    }
    images
}

fn count_cycles(perm: &[usize], seen: &mut [bool]) -> usize {
    seen.iter_mut().for_each(|s| *s = false);
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut a = start;
        while !seen[a] {
            seen[a] = true;
            a = perm[a];
        }
    }
    cycles
}

/// `∫ ∏ₜ Tr(U^{aₜ}) ∏ₛ conj Tr(U^{bₛ}) dU` by exact Weingarten summation.
///
/// Writing the traces as one monomial with index cycles `c` (from `a`) and
/// `c'` (from `b`), the value is `Σ_{σ,τ} Wg(στ⁻¹) d^{#cycles(c' τ c⁻¹ σ⁻¹)}`.
pub fn trace_product_moment(powers: &[usize], conj_powers: &[usize], d: usize) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    if powers.contains(&0) || conj_powers.contains(&0) {
        return Err(Error::invalid("trace powers must be positive"));
    }
    let n: usize = powers.iter().sum();
    if n != conj_powers.iter().sum::<usize>() {
        return Ok(BigRational::zero());
    }
    if n == 0 {
        return Ok(BigRational::one());
    }
    if n > MAX_TRACE_MOMENT_WEIGHT {
        return Err(Error::ResourceLimit {
            what: "trace moment total degree",
            size: n,
            cap: MAX_TRACE_MOMENT_WEIGHT,
        });
    }
    let c = Permutation::new(block_cycles(powers))?;
    let c_prime = Permutation::new(block_cycles(conj_powers))?;
    let perms = all_permutations(n);
    let c_inv = c.inverse();
    // w_τ = c' τ c⁻¹ τ⁻¹; substituting σ = ρτ leaves d^{#cycles(w_τ ρ⁻¹)}
    let ws: Vec<Vec<usize>> = perms
        .iter()
        .map(|t| c_prime.compose(t).compose(&c_inv).compose(&t.inverse()).images().to_vec())
        .collect();
    let powers_of_d: Vec<u128> = (0..=n).map(|e| (d as u128).pow(e as u32)).collect();
    let per_class: Vec<(Partition, u128)> = perms
        .par_iter()
        .map(|rho| {
            let rho_inv = rho.inverse();
            let ri = rho_inv.images();
            let mut seen = vec![false; n];
            let mut buf = vec![0; n];
            let mut total: u128 = 0;
            for w in &ws {
                for (a, slot) in buf.iter_mut().enumerate() {
                    *slot = w[ri[a]];
                }
                total += powers_of_d[count_cycles(&buf, &mut seen)];
            }
            (cycle_type(rho), total)
        })
        .collect();
    let mut sums: HashMap<Partition, u128> = HashMap::new();
    for (gamma, v) in per_class {
        *sums.entry(gamma).or_insert(0) += v;
    }
    let wg = weingarten_shared(n, d)?;
    Ok(sums
        .into_iter()
        .map(|(gamma, v)| wg.value(&gamma) * BigRational::from_integer(BigInt::from(v)))
        .sum())
}

/// `∫ |Tr U^k|^{2n} dU` by exact Weingarten summation.
pub fn trace_power_moment(k: usize, n: usize, d: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::invalid("trace power k must be at least 1"));
    }
    trace_product_moment(&vec![k; n], &vec![k; n], d)
}

/// `∫ |Tr U^k|² dU = min(k, d)`.
pub fn closed_moment_tr2(k: usize, d: usize) -> Result<u64> {
    if k == 0 || d == 0 {
        return Err(Error::invalid("closed_moment_tr2 needs k >= 1 and d >= 1"));
    }
    Ok(k.min(d) as u64)
}

/// `∫ |Tr U^k|⁴ dU`: `2k²` for `2k < d`, `2k² − 2k + d` for `d ≤ 2k < 2d`,
/// and `d(2d − 1)` for `k ≥ d`.
///
/// The middle branch is `2k² − 2k + d`; the expression `2k² + 2k − d` that
/// appears in print disagrees with exact summation whenever `2k ≠ d`.
pub fn closed_moment_tr4(k: usize, d: usize) -> Result<u64> {
    if k == 0 || d == 0 {
        return Err(Error::invalid("closed_moment_tr4 needs k >= 1 and d >= 1"));
    }
    let (k, d) = (k as u64, d as u64);
    Ok(if k >= d {
        d * (2 * d - 1)
    } else if 2 * k >= d {
        2 * k * k - 2 * k + d
    } else {
        2 * k * k
    })
}

/// `∫ U^k A U^{k†} dU = [(m−1)/(d²−1)] A + [(d²−m)/(d(d²−1))] Tr A · 1`
/// with `m = min(k, d)`. For `d = 1` or `k = 0` the integrand is `A` itself.
pub fn uk_twirl(a: &ExactOperator, k: usize) -> Result<ExactOperator> {
    a.expect_shape(1)?;
    let d = a.d() as i64;
    if d == 1 || k == 0 {
        return Ok(a.clone());
    }
    let m = (k as i64).min(d);
    let c_a = from_real(q(m - 1, d * d - 1));
    let c_tr = from_real(q(d * d - m, d * (d * d - 1))) * a.trace();
    let mut out = a.scale(&c_a);
    out.add_scaled(&c_tr, &ExactOperator::identity(a.d(), 1)?)?;
    Ok(out)
}

/// `∫ |Tr(AU)|^order dU` for `order ∈ {2, 4}`:
/// `Tr(A†A)/d`, and `2[Tr A†A]²/(d²−1) − 2 Tr((A†A)²)/(d(d²−1))`.
pub fn visibility_moment(a: &ExactOperator, order: u32) -> Result<BigRational> {
    a.expect_shape(1)?;
    let d = a.d() as i64;
    let ada = a.adjoint().matmul(a)?;
    let t1 = expect_real(&ada.trace(), "Tr(A†A)");
    match order {
        2 => Ok(t1 / int(d)),
        4 if d == 1 => Ok(&t1 * &t1),
        4 => {
            let t2 = expect_real(&ada.matmul(&ada)?.trace(), "Tr((A†A)²)");
            Ok(q(2, d * d - 1) * &t1 * &t1 - q(2, d * (d * d - 1)) * t2)
        }
        other => Err(Error::invalid(format!(
            "visibility moments are available for order 2 and 4, not {other}"
        ))),
    }
}

/// `∫⋯∫ |Tr(A (U₁ ⊗ ⋯ ⊗ U_n))|² = Tr(A†A) / (d₁⋯d_n)` with independent `Uᵢ ∈ U(dᵢ)`.
pub fn visibility_moment_multipartite(a: &ExactOperator, dims: &[usize]) -> Result<BigRational> {
    let total: usize = dims.iter().product();
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::invalid("local dimensions must be positive"));
    }
    if total != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: total,
        });
    }
    let t1 = expect_real(&a.adjoint().matmul(a)?.trace(), "Tr(A†A)");
    Ok(t1 / int(total as i64))
}

/// The coefficients `(c_tr, c_id)` of a unitarily invariant superoperator
/// `Φ(X) = c_tr Tr(X) 1 + c_id X`, from `Tr Φ` (its trace as a map) and
/// `Tr Φ(1)`.
pub fn superop_twirl_coeffs(
    trace_phi: &BigRational,
    trace_phi_of_identity: &BigRational,
    d: usize,
) -> Result<(BigRational, BigRational)> {
    if d < 2 {
        return Err(Error::invalid("unitarily invariant superoperators need d >= 2"));
    }
    let d = int(d as i64);
    let denom = &d * (&d * &d - int(1));
    let c_tr = (&d * trace_phi_of_identity - trace_phi) / &denom;
    let c_id = (&d * trace_phi - trace_phi_of_identity) / &denom;
    Ok((c_tr, c_id))
}

/// Average purity `(d_A + d_B)/(d_A d_B + 1)` of the reduced state of a Haar
/// random pure state on `ℂ^{d_A} ⊗ ℂ^{d_B}`.
pub fn average_purity(da: usize, db: usize) -> Result<BigRational> {
    average_purity_mixed(da, db, &int(1))
}

/// Average of `Tr(ρ_A'²)` for `ρ' = U ρ U†` with `U` Haar on `U(d_A d_B)`, given `Tr(ρ²)`.
pub fn average_purity_mixed(da: usize, db: usize, purity: &BigRational) -> Result<BigRational> {
    if da == 0 || db == 0 {
        return Err(Error::invalid("local dimensions must be at least 1"));
    }
    let (a, b) = (da as i64, db as i64);
    let d = a * b;
    if d == 1 {
        return Ok(purity.clone());
    }
    Ok(q(d * b - a, d * d - 1) + q(d * a - b, d * d - 1) * purity)
}

fn expect_same_square(x: &ExactOperator, y: &ExactOperator) -> Result<()> {
    x.expect_shape(1)?;
    y.expect_shape(1)?;
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            actual: y.dim(),
        });
    }
    Ok(())
}

/// `∫ ⟨ψ|X|ψ⟩⟨ψ|Y|ψ⟩ dψ = (Tr XY + Tr X Tr Y) / (d(d+1))`.
pub fn sphere_moment2(x: &ExactOperator, y: &ExactOperator) -> Result<GaussianRational> {
    expect_same_square(x, y)?;
    let d = x.d() as i64;
    let numer = x.matmul(y)?.trace() + x.trace() * y.trace();
    Ok(numer * from_real(q(1, d * (d + 1))))
}

/// `∫ ⟨ψ|Φ(|ψ⟩⟨ψ|)|ψ⟩ dψ = (Tr Φ(1) + Tr Φ) / (d(d+1))`.
pub fn sphere_moment2_superop(
    trace_phi_of_identity: &BigRational,
    trace_phi: &BigRational,
    d: usize,
) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    let d = d as i64;
    Ok((trace_phi_of_identity + trace_phi) * q(1, d * (d + 1)))
}

/// `M_k = ∫ U^k ⊗ U^{−k} dU`: `1⊗1` for `k = 0`, otherwise
/// `[(m−1)/(d²−1)] 1 + [(d²−m)/(d(d²−1))] F` with `m = min(|k|, d)`.
pub fn power_pair_moment(k: i64, d: usize) -> Result<ExactOperator> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    let id = ExactOperator::identity(d, 2)?;
    if k == 0 || d == 1 {
        return Ok(id);
    }
    let di = d as i64;
    let m = (k.unsigned_abs() as i64).min(di);
    let swap = ExactOperator::permutation(&Permutation::new(vec![1, 0])?, d)?;
    let mut out = id.scale(&from_real(q(m - 1, di * di - 1)));
    out.add_scaled(&from_real(q(di * di - m, di * (di * di - 1))), &swap)?;
    Ok(out)
}

/// `∫ f(U) ⊗ g(U) dU = Σ_k f̂(k) ĝ(−k) M_k` for class functions with finitely
/// many Fourier modes `f(U) = Σ_k f̂(k) U^k`.
pub fn fourier_pair_integral(
    fhat: &BTreeMap<i64, GaussianRational>,
    ghat: &BTreeMap<i64, GaussianRational>,
    d: usize,
) -> Result<ExactOperator> {
    let mut out = ExactOperator::zeros(d, 2)?;
    for (&k, fk) in fhat {
        if let Some(gk) = ghat.get(&-k) {
            let c = fk * gk;
            if !c.is_zero() {
                out.add_scaled(&c, &power_pair_moment(k, d)?)?;
            }
        }
    }
    Ok(out)
}

/// The trace of [`fourier_pair_integral`]: `Σ_{k≠0} f̂(k) ĝ(−k) min(|k|, d) + d² f̂(0) ĝ(0)`.
pub fn fourier_pair_trace(
    fhat: &BTreeMap<i64, GaussianRational>,
    ghat: &BTreeMap<i64, GaussianRational>,
    d: usize,
) -> GaussianRational {
    let mut total = GaussianRational::zero();
    for (&k, fk) in fhat {
        if let Some(gk) = ghat.get(&-k) {
            let weight = if k == 0 { d * d } else { (k.unsigned_abs() as usize).min(d) };
            total += fk * gk * from_int(weight as i64);
        }
    }
    total
}
