//! Elements of the group algebra `ℂ[S_k]` and their images `Σ c_π P(π)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::operator::ExactOperator;
use super::scalar::{from_int, from_real, GaussianRational};
use crate::characters::ClassFunction;
use crate::combinatorics::{all_permutations, cycle_type, Partition, Permutation};
use crate::{Error, Result};

/// A finitely supported map `S_k → ℚ[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    k: usize,
    coeffs: BTreeMap<Permutation, GaussianRational>,
}

impl GroupAlgebraElement {
    pub fn zero(k: usize) -> Self {
        GroupAlgebraElement {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element `π`.
    pub fn basis(pi: &Permutation) -> Self {
        let mut e = GroupAlgebraElement::zero(pi.degree());
        e.add_term(pi.clone(), from_int(1));
        e
    }

    /// `Σ_π f(π) π` for a class function `f`.
    pub fn from_class_function(f: &ClassFunction) -> Self {
        let mut e = GroupAlgebraElement::zero(f.k());
        for pi in all_permutations(f.k()) {
            let v = f.at(&pi);
            if !v.is_zero() {
                e.coeffs.insert(pi, from_real(v));
            }
        }
        e
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn coefficient(&self, pi: &Permutation) -> GaussianRational {
        self.coeffs.get(pi).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &GaussianRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, pi: Permutation, c: GaussianRational) {
        assert_eq!(pi.degree(), self.k, "permutation degree differs from k");
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(&pi) + c;
        if sum.is_zero() {
            self.coeffs.remove(&pi);
        } else {
            self.coeffs.insert(pi, sum);
        }
    }

    /// Convolution `(ab)(π) = Σ_{στ = π} a(σ) b(τ)`.
    pub fn convolve(&self, other: &GroupAlgebraElement) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::WeightMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut acc: BTreeMap<Permutation, GaussianRational> = BTreeMap::new();
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                *acc.entry(s.compose(t)).or_insert_with(GaussianRational::zero) += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(GroupAlgebraElement { k: self.k, coeffs: acc })
    }

    /// If the coefficients are constant on conjugacy classes, the class view.
    pub fn class_values(&self) -> Option<BTreeMap<Partition, GaussianRational>> {
        let mut out: BTreeMap<Partition, GaussianRational> = BTreeMap::new();
        for pi in all_permutations(self.k) {
            let v = self.coefficient(&pi);
            match out.get(&cycle_type(&pi)) {
                Some(seen) if *seen != v => return None,
                Some(_) => {}
                None => {
                    out.insert(cycle_type(&pi), v);
                }
            }
        }
        Some(out)
    }

    /// The operator `Σ_π c_π P(π)` on `(ℂ^d)^{⊗k}`.
    pub fn to_operator(&self, d: usize) -> Result<ExactOperator> {
        let mut op = ExactOperator::zeros(d, self.k)?;
        for (pi, c) in &self.coeffs {
            let action = super::operator::permutation_action(pi, d)?;
            for (x, &y) in action.iter().enumerate() {
                let cur = op.get(y, x).clone();
                op.set(y, x, cur + c);
            }
        }
        Ok(op)
    }
}

/// `Δ(A) = Σ_π Tr(A P(π⁻¹)) π`.
pub fn delta(a: &ExactOperator) -> Result<GroupAlgebraElement> {
    let k = a.k();
    let mut out = GroupAlgebraElement::zero(k);
    for pi in all_permutations(k) {
        let t = a.trace_with_permutation(&pi.inverse())?;
        out.add_term(pi, t);
    }
    Ok(out)
}

/// `Δ(1) = Σ_π d^{#cycles(π)} π`, computed without building the identity.
pub fn gram_element(k: usize, d: usize) -> GroupAlgebraElement {
    let mut out = GroupAlgebraElement::zero(k);
    for pi in all_permutations(k) {
        let c = num_traits::pow(from_int(d as i64), pi.num_cycles());
        out.add_term(pi, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weingarten::scalar::rational;

    #[test]
    fn convolution_matches_operator_product() {
        let perms = all_permutations(3);
        let mut a = GroupAlgebraElement::zero(3);
        let mut b = GroupAlgebraElement::zero(3);
        for (i, p) in perms.iter().enumerate() {
            a.add_term(p.clone(), from_real(rational(i as i64 - 2, 3)));
            b.add_term(p.clone(), from_real(rational(1, i as i64 + 1)));
        }
        let ab = a.convolve(&b).unwrap();
        let lhs = ab.to_operator(2).unwrap();
        let rhs = &a.to_operator(2).unwrap() * &b.to_operator(2).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn delta_of_identity_is_gram_element() {
        for d in 1..=3 {
            let id = ExactOperator::identity(d, 3).unwrap();
            assert_eq!(delta(&id).unwrap(), gram_element(3, d));
        }
        assert!(gram_element(3, 2).class_values().is_some());
    }

    #[test]
    fn add_term_drops_cancellations() {
        let pi = Permutation::identity(2);
        let mut e = GroupAlgebraElement::basis(&pi);
        e.add_term(pi, from_int(-1));
        assert_eq!(e, GroupAlgebraElement::zero(2));
    }
}
