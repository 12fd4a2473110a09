//! Power sums, Schur polynomials and Kronecker coefficients over the rationals.
//!
//! Schur polynomials are evaluated through the character expansion
//! `s_λ = Σ_γ χ_λ(γ) p_γ / z_γ`, which never divides by differences of the
//! variables, so repeated entries such as `1^d` need no limit.

use std::ops::Index;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::characters::character;
use crate::combinatorics::{partitions_of, z_gamma, Partition};
use crate::{Error, Result};

/// The variables `x₁, …, x_d` of a symmetric polynomial, `d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("a variable vector needs at least one entry"));
        }
        Ok(RationalVector(entries))
    }

    pub fn from_integers(entries: &[i64]) -> Result<Self> {
        RationalVector::new(entries.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// `1^d`, the point at which Schur polynomials give `U(d)` dimensions.
    pub fn ones(d: usize) -> Result<Self> {
        RationalVector::new(vec![BigRational::one(); d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    /// All products `xᵢ yⱼ`, the variables of `x ⊗ y`.
    pub fn tensor(&self, other: &RationalVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .flat_map(|a| other.0.iter().map(move |b| a * b))
                .collect(),
        )
    }

    /// `p_r(x) = Σ xᵢ^r`.
    pub fn power(&self, r: usize) -> BigRational {
        self.0.iter().map(|x| pow(x, r)).sum()
    }
}

impl Index<usize> for RationalVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

fn pow(x: &BigRational, r: usize) -> BigRational {
    num_traits::pow(x.clone(), r)
}

/// `p_γ(x) = ∏ⱼ p_{γⱼ}(x)`; `p_∅ = 1`.
pub fn power_sum(gamma: &Partition, x: &RationalVector) -> BigRational {
    gamma.parts().iter().map(|&r| x.power(r)).product()
}

/// The coefficients `χ_λ(γ)/z_γ` of the expansion `s_λ = Σ_γ c_γ p_γ`, for
/// every `γ ⊢ |λ|` in decreasing lexicographic order.
pub fn frobenius_coefficients(lambda: &Partition) -> Vec<(Partition, BigRational)> {
    partitions_of(lambda.weight(), None)
        .into_iter()
        .map(|gamma| {
            let chi = character(lambda, &gamma).expect("weights agree by construction");
            let z = BigInt::from(z_gamma(&gamma));
            (gamma, BigRational::new(chi, z))
        })
        .collect()
}

/// `s_λ(x)` by the Frobenius formula; zero when `ℓ(λ) > d`.
pub fn schur_poly(lambda: &Partition, x: &RationalVector) -> BigRational {
    if lambda.len() > x.dim() {
        return BigRational::zero();
    }
    let powers: Vec<BigRational> = (0..=lambda.weight()).map(|r| x.power(r)).collect();
    frobenius_coefficients(lambda)
        .into_iter()
        .map(|(gamma, c)| {
            let p: BigRational = gamma.parts().iter().map(|&r| powers[r].clone()).product();
            c * p
        })
        .sum()
}

fn check_weights(ps: &[&Partition]) -> Result<usize> {
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

/// Kronecker coefficient `g_{λμν} = Σ_γ χ_λ(γ) χ_μ(γ) χ_ν(γ) / z_γ`.
pub fn kronecker(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BigUint> {
    let k = check_weights(&[lambda, mu, nu])?;
    let mut total = BigRational::zero();
    for gamma in partitions_of(k, None) {
        let prod = character(lambda, &gamma)? * character(mu, &gamma)? * character(nu, &gamma)?;
        total += BigRational::new(prod, BigInt::from(z_gamma(&gamma)));
    }
    assert!(
        total.is_integer() && !total.is_negative(),
        "Kronecker coefficient {total} is not a non-negative integer"
    );
    Ok(total.to_integer().to_biguint().expect("non-negative"))
}

/// `Σ_{μ,ν ⊢ k} g_{λμν} s_μ(x) s_ν(y)`, which equals `s_λ(x ⊗ y)`.
///
/// The direct evaluation on the product variables is computed as well and a
/// disagreement panics.
pub fn schur_tensor_expand(lambda: &Partition, x: &RationalVector, y: &RationalVector) -> BigRational {
    let k = lambda.weight();
    let shapes = partitions_of(k, None);
    let sx: Vec<BigRational> = shapes.iter().map(|m| schur_poly(m, x)).collect();
    let sy: Vec<BigRational> = shapes.iter().map(|n| schur_poly(n, y)).collect();
    let mut total = BigRational::zero();
    for (i, mu) in shapes.iter().enumerate() {
        if sx[i].is_zero() {
            continue;
        }
        for (j, nu) in shapes.iter().enumerate() {
            if sy[j].is_zero() {
                continue;
            }
            let g = kronecker(lambda, mu, nu).expect("weights agree by construction");
            if !g.is_zero() {
                total += BigRational::from_integer(BigInt::from(g)) * &sx[i] * &sy[j];
            }
        }
    }
    let direct = schur_poly(lambda, &x.tensor(y));
    assert_eq!(total, direct, "tensor expansion of s_{lambda} disagrees with direct evaluation");
    total
}
