//! Weingarten calculus for `U(d)`.
//!
//! The Weingarten function is the class function
//! `Wg = (1/k!²) Σ_{λ ⊢ (k,d)} (f^λ)²/s_λ(1^d) · χ_λ`, the (pseudo-)inverse of
//! `Δ(1) = Σ_π d^{#cycles(π)} π` in the group algebra. Restricting the sum to
//! `ℓ(λ) ≤ d` makes it the inverse on the support of `Δ(1)` when `d < k`.

mod group_algebra;
mod moments;
mod operator;
mod scalar;
mod twirl;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::characters::{character, ClassFunction};
use crate::combinatorics::{cycle_type, f_lambda, partitions_of, schur_dim, Permutation};
use crate::{factorial, Error, Result};

pub use group_algebra::{delta, gram_element, GroupAlgebraElement};
pub use moments::{
    average_purity, average_purity_mixed, closed_moment_tr2, closed_moment_tr4,
    fourier_pair_integral, fourier_pair_trace, power_pair_moment, sphere_moment2,
    sphere_moment2_superop, superop_twirl_coeffs, trace_power_moment, trace_product_moment,
    uk_twirl, visibility_moment, visibility_moment_multipartite, MAX_TRACE_MOMENT_WEIGHT,
};
pub use operator::{
    dense_cap, digits_index, index_digits, permutation_action, set_dense_cap, tensor_dim,
    ExactOperator, DEFAULT_DENSE_CAP, MIN_DENSE_CAP,
};
pub use scalar::{
    expect_real, format_gaussian, format_rational, from_int, from_parts, from_real, parse_rational,
    rational, GaussianRational,
};
pub use twirl::{
    bipartite_central_projector, central_projector, conditional_expectation, partial_trace_projector,
    partial_trace_symmetric_coefficients, permutation_coefficients, projector_triple_trace,
    sphere_projector_average, twirl_power, twirl_power_coefficients, vec_moment, weingarten_operator,
    TwirlPower,
};

type WgCache = RwLock<HashMap<(usize, usize), Arc<ClassFunction>>>;

fn wg_cache() -> &'static WgCache {
    static CACHE: OnceLock<WgCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn compute_weingarten(k: usize, d: usize) -> ClassFunction {
    let k_fact_sq = {
        let f = BigInt::from(factorial(k));
        &f * &f
    };
    let weights: Vec<_> = partitions_of(k, Some(d))
        .into_iter()
        .map(|l| {
            let f = BigInt::from(f_lambda(&l));
            let s = BigInt::from(schur_dim(&l, d));
            let w = BigRational::new(&f * &f, s * &k_fact_sq);
            (l, w)
        })
        .collect();
    ClassFunction::from_fn(k, |gamma| {
        weights
            .iter()
            .map(|(l, w)| {
                let chi = character(l, gamma).expect("weights agree by construction");
                w * BigRational::from_integer(chi)
            })
            .sum()
    })
}

pub(crate) fn weingarten_shared(k: usize, d: usize) -> Result<Arc<ClassFunction>> {
    if k == 0 || d == 0 {
        return Err(Error::invalid(format!(
            "the Weingarten function needs k >= 1 and d >= 1, got k = {k}, d = {d}"
        )));
    }
    if let Some(wg) = wg_cache().read().unwrap().get(&(k, d)) {
        return Ok(Arc::clone(wg));
    }
    let wg = Arc::new(compute_weingarten(k, d));
    let mut cache = wg_cache().write().unwrap();
    Ok(Arc::clone(cache.entry((k, d)).or_insert(wg)))
}

/// The Weingarten class function on `S_k` for `U(d)`.
pub fn weingarten_fn(k: usize, d: usize) -> Result<ClassFunction> {
    weingarten_shared(k, d).map(|wg| (*wg).clone())
}

/// `Wg(π)` for a single permutation.
pub fn weingarten_value(pi: &Permutation, d: usize) -> Result<BigRational> {
    Ok(weingarten_shared(pi.degree(), d)?.value(&cycle_type(pi)))
}

fn check_indices(tuple: &[usize], d: usize) -> Result<()> {
    for &i in tuple {
        if i == 0 || i > d {
            return Err(Error::IndexOutOfRange { index: i, dim: d });
        }
    }
    Ok(())
}

/// All permutations `σ` with `left[a] = right[σ(a)]` for every slot `a`.
fn matching_permutations(left: &[usize], right: &[usize]) -> Vec<Permutation> {
    fn extend(
        left: &[usize],
        right: &[usize],
        used: &mut [bool],
        images: &mut Vec<usize>,
        out: &mut Vec<Permutation>,
    ) {
        let a = images.len();
        if a == left.len() {
            out.push(Permutation::new(images.clone()).expect("a bijection by construction"));
            return;
        }
        for b in 0..right.len() {
            if !used[b] && right[b] == left[a] {
                used[b] = true;
                images.push(b);
                extend(left, right, used, images, out);
                images.pop();
                used[b] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(left, right, &mut vec![false; right.len()], &mut Vec::new(), &mut out);
    out
}

/// `∫ U_{i₁j₁} ⋯ U_{i_k j_k} Ū_{i'₁j'₁} ⋯ Ū_{i'_l j'_l} dU` with 1-based indices.
///
/// Equals `Σ_{σ,τ} Wg(στ⁻¹) ∏_a δ(i_a, i'_{σ(a)}) δ(j_a, j'_{τ(a)})` when
/// `k = l` and zero otherwise.
pub fn monomial_integral(
    rows: &[usize],
    cols: &[usize],
    rows_conj: &[usize],
    cols_conj: &[usize],
    d: usize,
) -> Result<BigRational> {
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            actual: cols.len(),
        });
    }
    if rows_conj.len() != cols_conj.len() {
        return Err(Error::DimensionMismatch {
            expected: rows_conj.len(),
            actual: cols_conj.len(),
        });
    }
    for t in [rows, cols, rows_conj, cols_conj] {
        check_indices(t, d)?;
    }
    let k = rows.len();
    if k != rows_conj.len() {
        return Ok(BigRational::zero());
    }
    if k == 0 {
        return Ok(BigRational::from_integer(1.into()));
    }
    let sigmas = matching_permutations(rows, rows_conj);
    if sigmas.is_empty() {
        return Ok(BigRational::zero());
    }
    let taus = matching_permutations(cols, cols_conj);
    let wg = weingarten_shared(k, d)?;
    let mut total = BigRational::zero();
    for s in &sigmas {
        for t in &taus {
            total += wg.value(&cycle_type(&s.compose(&t.inverse())));
        }
    }
    Ok(total)
}
