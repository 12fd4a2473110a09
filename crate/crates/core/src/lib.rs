//! Exact Haar-measure integrals over the unitary group `U(d)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`]: integer partitions, permutations, cycle types and the
//!   dimension formulas `f^λ` (standard tableaux) and `s_λ(1^d)`
//!   (semistandard tableaux).
//! * [`characters`]: irreducible characters of the symmetric group `S_k`
//!   via the Murnaghan–Nakayama rule, and class functions.
//! * [`symfunc`]: power sums, Schur polynomials through the Frobenius
//!   formula, and Kronecker coefficients.
//! * [`weingarten`]: the Weingarten function, monomial Haar integrals,
//!   the twirl `E_k`, the isotypic projectors `C_λ` and closed-form moments.
//! * [`tensorops`]: floating-point cross-checks: Haar sampling, Monte
//!   Carlo estimation and Weyl torus quadrature.
//!
//! All symbolic results are exact (`BigRational`, or pairs of them for
//! complex values). Floating point only appears in [`tensorops`].

pub mod characters;
pub mod combinatorics;
mod error;
pub mod symfunc;
pub mod tensorops;
pub mod weingarten;

pub use error::{Error, Result};

use num_bigint::BigUint;
use num_traits::One;

/// `n!` as an arbitrary-precision integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Binomial coefficient `C(n, r)`; zero when `r > n`.
pub fn binomial(n: usize, r: usize) -> BigUint {
    if r > n {
        return BigUint::default();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials_and_binomials() {
        assert_eq!(factorial(0), BigUint::from(1u32));
        assert_eq!(factorial(10), BigUint::from(3_628_800u32));
        assert_eq!(binomial(6, 2), BigUint::from(15u32));
        assert_eq!(binomial(3, 5), BigUint::from(0u32));
        // 25! overflows u64; the big-integer path must not.
        assert_eq!(factorial(25).to_string(), "15511210043330985984000000");
    }
}
