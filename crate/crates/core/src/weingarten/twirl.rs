//! The twirl `E_k(A) = ∫ U^{⊗k} A U^{⊗k†} dU`, isotypic projectors and
//! the identities built from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::group_algebra::{delta, GroupAlgebraElement};
use super::operator::{permutation_action, tensor_dim, ExactOperator};
use super::scalar::{from_real, GaussianRational};
use super::weingarten_shared;
use crate::characters::character;
use crate::combinatorics::{
    all_permutations, cycle_type, f_lambda, partitions_of, schur_dim, Partition, Permutation,
};
use crate::symfunc::{frobenius_coefficients, kronecker};
use crate::{binomial, factorial, Error, Result};

fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `Σ_π Wg(π) P(π)`, the image of `Δ(1)⁻¹`.
pub fn weingarten_operator(k: usize, d: usize) -> Result<ExactOperator> {
    let wg = weingarten_shared(k, d)?;
    GroupAlgebraElement::from_class_function(&wg).to_operator(d)
}

/// Coefficients `c_π` with `E_k(A) = Σ_π c_π P(π)`, from `E_k(A) = Δ(A)·Δ(1)⁻¹`.
pub fn permutation_coefficients(a: &ExactOperator) -> Result<GroupAlgebraElement> {
    let k = a.k();
    a.expect_shape(k)?;
    if k == 0 {
        return Err(Error::invalid("the twirl needs at least one tensor factor"));
    }
    let wg = weingarten_shared(k, a.d())?;
    delta(a)?.convolve(&GroupAlgebraElement::from_class_function(&wg))
}

/// `E_k(A)` for `A` on `(ℂ^d)^{⊗k}`.
pub fn conditional_expectation(a: &ExactOperator) -> Result<ExactOperator> {
    permutation_coefficients(a)?.to_operator(a.d())
}

/// `C_λ = (f^λ/k!) Σ_π χ_λ(π) P(π)`, the projector onto the `λ`-isotypic
/// block of `(ℂ^d)^{⊗k}`; zero when `ℓ(λ) > d`.
pub fn central_projector(lambda: &Partition, d: usize) -> Result<ExactOperator> {
    let k = lambda.weight();
    if d == 0 {
        return Err(Error::invalid("dimension d must be at least 1"));
    }
    if k == 0 {
        return ExactOperator::identity(d, 0);
    }
    let scale = BigRational::new(BigInt::from(f_lambda(lambda)), BigInt::from(factorial(k)));
    let mut element = GroupAlgebraElement::zero(k);
    for pi in all_permutations(k) {
        let chi = character(lambda, &cycle_type(&pi))?;
        element.add_term(pi, from_real(&scale * big(chi)));
    }
    element.to_operator(d)
}

/// Output of [`twirl_power`]: one coefficient per `λ ⊢ (k, d)` and the
/// assembled operator `Σ_λ Δ_λ C_λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwirlPower {
    pub coefficients: Vec<(Partition, GaussianRational)>,
    pub operator: ExactOperator,
}

/// `Δ_λ = Tr(C_λ X^{⊗k}) / Tr(C_λ) = s_λ(X) / s_λ(1^d)` for every `λ ⊢ (k, d)`,
/// with `s_λ(X)` expanded in the power traces `Tr(X^r)`.
pub fn twirl_power_coefficients(x: &ExactOperator, k: usize) -> Result<Vec<(Partition, GaussianRational)>> {
    x.expect_shape(1)?;
    let d = x.d();
    let mut traces = vec![GaussianRational::zero(); k + 1];
    let mut power = ExactOperator::identity(d, 1)?;
    traces[0] = power.trace();
    for t in traces.iter_mut().skip(1) {
        power = power.matmul(x)?;
        *t = power.trace();
    }
    let mut out = Vec::new();
    for lambda in partitions_of(k, Some(d)) {
        let s_x: GaussianRational = frobenius_coefficients(&lambda)
            .into_iter()
            .map(|(gamma, c)| {
                let p: GaussianRational = gamma.parts().iter().map(|&r| traces[r].clone()).product();
                p * from_real(c)
            })
            .sum();
        let dim = big(BigInt::from(schur_dim(&lambda, d)));
        out.push((lambda, s_x / from_real(dim)));
    }
    Ok(out)
}

/// `∫ (U X U†)^{⊗k} dU = Σ_λ Δ_λ C_λ`.
pub fn twirl_power(x: &ExactOperator, k: usize) -> Result<TwirlPower> {
    let coefficients = twirl_power_coefficients(x, k)?;
    let d = x.d();
    let mut operator = ExactOperator::zeros(d, k)?;
    for (lambda, c) in &coefficients {
        operator.add_scaled(c, &central_projector(lambda, d)?)?;
    }
    Ok(TwirlPower {
        coefficients,
        operator,
    })
}

/// `∫ |ψ⟩⟨ψ|^{⊗k} dψ = C_(k) / C(k+d−1, k)` over unit vectors in `ℂ^d`.
pub fn sphere_projector_average(k: usize, d: usize) -> Result<ExactOperator> {
    if k == 0 || d == 0 {
        return Err(Error::invalid("the sphere average needs k >= 1 and d >= 1"));
    }
    let norm = big(BigInt::from(binomial(k + d - 1, k)));
    let sym = central_projector(&Partition::row(k), d)?;
    Ok(sym.scale(&from_real(BigRational::from_integer(1.into()) / norm)))
}

/// `∫ |U^{⊗k}⟩⟨U^{⊗k}| dU` on `out ⊗ in`, each `(ℂ^d)^{⊗k}`, with
/// `|X⟩ = Σ X_{IJ} |I⟩_out |J⟩_in`.
///
/// Built as `C∨ [(Tr_in C∨)⁺ ⊗ 1_in]` where `C∨ = (1/k!) Σ_π P_out(π) ⊗ P_in(π)`.
/// `Tr_in C∨ = Δ(1)/k!`, whose pseudo-inverse is `k! Σ_π Wg(π) P(π)`.
pub fn vec_moment(k: usize, d: usize) -> Result<ExactOperator> {
    if k == 0 || d == 0 {
        return Err(Error::invalid("vec_moment needs k >= 1 and d >= 1"));
    }
    let half = tensor_dim(d, k)?;
    let mut sym = ExactOperator::zeros(d, 2 * k)?;
    let weight = from_real(BigRational::new(1.into(), BigInt::from(factorial(k))));
    for pi in all_permutations(k) {
        // π acting on the out slots and, in parallel, on the in slots
        let doubled: Vec<usize> = (0..2 * k)
            .map(|a| if a < k { pi.apply(a) } else { k + pi.apply(a - k) })
            .collect();
        let action = permutation_action(&Permutation::new(doubled)?, d)?;
        for (x, &y) in action.iter().enumerate() {
            let cur = sym.get(y, x).clone();
            sym.set(y, x, cur + &weight);
        }
    }
    let reduced = sym.partial_trace_last(half)?;
    let inverse = weingarten_operator(k, d)?.scale(&from_real(big(BigInt::from(factorial(k)))));
    debug_assert_eq!(
        reduced.matmul(&inverse)?.matmul(&reduced)?,
        reduced,
        "pseudo-inverse of the reduced symmetrizer"
    );
    sym.matmul(&inverse.kron(&ExactOperator::identity(d, k)?)?)
}

/// `C^{AB}_λ` on `(ℂ^{d_A})^{⊗k} ⊗ (ℂ^{d_B})^{⊗k}`, i.e. `C_λ` for
/// `(ℂ^{d_A} ⊗ ℂ^{d_B})^{⊗k}` with the A factors grouped first, so that
/// `P^{AB}(π) = P^A(π) ⊗ P^B(π)`.
pub fn bipartite_central_projector(lambda: &Partition, da: usize, db: usize) -> Result<ExactOperator> {
    let k = lambda.weight();
    let dim_a = tensor_dim(da, k)?;
    let dim_b = tensor_dim(db, k)?;
    let mut op = if da == db {
        ExactOperator::zeros(da, 2 * k)?
    } else {
        let dim = dim_a.checked_mul(dim_b).ok_or(Error::ResourceLimit {
            what: "dense operator dimension",
            size: usize::MAX,
            cap: super::dense_cap(),
        })?;
        ExactOperator::zeros(dim, 1)?
    };
    let scale = BigRational::new(BigInt::from(f_lambda(lambda)), BigInt::from(factorial(k)));
    for pi in all_permutations(k) {
        let chi = character(lambda, &cycle_type(&pi))?;
        if chi.is_zero() {
            continue;
        }
        let c = from_real(&scale * big(chi));
        let act_a = permutation_action(&pi, da)?;
        let act_b = permutation_action(&pi, db)?;
        for (xa, &ya) in act_a.iter().enumerate() {
            for (xb, &yb) in act_b.iter().enumerate() {
                let (r, col) = (ya * dim_b + yb, xa * dim_b + xb);
                let cur = op.get(r, col).clone();
                op.set(r, col, cur + &c);
            }
        }
    }
    Ok(op)
}

fn same_weight(ps: &[&Partition]) -> Result<usize> {
    let k = ps[0].weight();
    for p in &ps[1..] {
        if p.weight() != k {
            return Err(Error::WeightMismatch {
                left: k,
                right: p.weight(),
            });
        }
    }
    Ok(k)
}

/// The scalar `f^λ s_ν(1^{d_B}) g_{λμν} / f^μ` in
/// `Tr_B[C^{AB}_λ (C^A_μ ⊗ C^B_ν)] = (scalar) · C^A_μ`.
pub fn partial_trace_projector(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    da: usize,
    db: usize,
) -> Result<BigRational> {
    same_weight(&[lambda, mu, nu])?;
    if da == 0 || db == 0 {
        return Err(Error::invalid("local dimensions must be at least 1"));
    }
    let g = kronecker(lambda, mu, nu)?;
    let numer = BigInt::from(f_lambda(lambda)) * BigInt::from(schur_dim(nu, db)) * BigInt::from(g);
    Ok(BigRational::new(numer, BigInt::from(f_lambda(mu))))
}

/// `Tr[C^{AB}_λ (C^A_μ ⊗ C^B_ν)] = f^λ g_{λμν} s_μ(1^{d_A}) s_ν(1^{d_B})`.
pub fn projector_triple_trace(
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    da: usize,
    db: usize,
) -> Result<BigRational> {
    same_weight(&[lambda, mu, nu])?;
    let g = kronecker(lambda, mu, nu)?;
    Ok(big(BigInt::from(
        f_lambda(lambda) * g * schur_dim(mu, da) * schur_dim(nu, db),
    )))
}

/// `Tr_B C^{AB}_(k) = Σ_μ [s_μ(1^{d_B}) / f^μ] C^A_μ`: the coefficient of
/// each `C^A_μ`, `μ ⊢ k`.
pub fn partial_trace_symmetric_coefficients(k: usize, db: usize) -> Result<Vec<(Partition, BigRational)>> {
    if db == 0 {
        return Err(Error::invalid("local dimension must be at least 1"));
    }
    Ok(partitions_of(k, None)
        .into_iter()
        .map(|mu| {
            let c = BigRational::new(BigInt::from(schur_dim(&mu, db)), BigInt::from(f_lambda(&mu)));
            (mu, c)
        })
        .collect())
}
