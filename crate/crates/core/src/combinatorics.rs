//! Partitions, permutations and tableau-counting formulas for `S_k`.
//!
//! Partitions label both irreducible representations (`λ`) and conjugacy
//! classes (`γ`, the cycle type). They are kept in canonical form: parts
//! strictly positive and weakly decreasing, with no trailing zeros. The
//! derived `Ord` is the lexicographic order on parts, and enumeration returns
//! partitions in decreasing lexicographic order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::{factorial, Error, Result};

/// An integer partition `λ = (λ₁ ≥ λ₂ ≥ … ≥ λ_ℓ > 0)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition from parts that must already be weakly decreasing.
    /// Trailing zeros are dropped; interior zeros or increases are rejected.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(Error::invalid(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Canonicalizes an arbitrary list of part sizes (e.g. cycle lengths in
    /// any order): zeros are removed and the rest sorted non-increasingly.
    pub fn from_unsorted(parts: impl IntoIterator<Item = usize>) -> Self {
        let mut parts: Vec<usize> = parts.into_iter().filter(|&p| p > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(k)`.
    pub fn row(k: usize) -> Self {
        Partition::from_unsorted([k])
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    /// The hook `(k − r, 1^r)`. Requires `r < k`.
    pub fn hook(k: usize, r: usize) -> Self {
        assert!(r < k, "hook (k - r, 1^r) needs r < k");
        let mut parts = vec![k - r];
        parts.extend(std::iter::repeat_n(1, r));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `|λ| = Σ λᵢ`.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// `ℓ(λ)`, the number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λⱼ` with 1-based `j`; zero past the last part.
    pub fn part(&self, j: usize) -> usize {
        assert!(j >= 1, "parts are 1-indexed");
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    /// Multiplicities `mⱼ(λ)` keyed by part size `j`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// The conjugate (transposed) partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count())
                .collect(),
        )
    }

    /// True for shapes `(k − r, 1^r)`.
    pub fn is_hook(&self) -> bool {
        self.0.iter().skip(1).all(|&p| p == 1)
    }

    /// Hook length of the cell in row `i`, column `j` (both 0-based).
    pub fn hook_length(&self, i: usize, j: usize) -> usize {
        let arm = self.0[i] - j - 1;
        let leg = self.0[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Formats as `(3,1,1)`; the empty partition is `()`.
    pub fn paren(&self) -> String {
        format!("({self})")
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts, e.g. `3,1,1`; empty string for `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `3,1,1`, also accepting surrounding parentheses and blanks.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(trimmed)
            .trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad partition part `{t}` in `{s}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `k` with at most `max_length` parts, in strictly
/// decreasing lexicographic order.
pub fn partitions_of(k: usize, max_length: Option<usize>) -> Vec<Partition> {
    fn fill(
        remaining: usize,
        max_part: usize,
        slots: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(current.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            // the rest must fit into `slots - 1` parts no larger than `p`
            if p * slots < remaining {
                break;
            }
            current.push(p);
            fill(remaining - p, p, slots - 1, current, out);
            current.pop();
        }
    }

    let mut out = Vec::new();
    fill(k, k, max_length.unwrap_or(k), &mut Vec::new(), &mut out);
    out
}

/// `z_γ = ∏ⱼ j^{mⱼ} mⱼ!`, the order of the centralizer of a permutation of
/// cycle type `γ`.
pub fn z_gamma(gamma: &Partition) -> BigUint {
    gamma
        .multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (j, m)| {
            acc * BigUint::from(j).pow(m as u32) * factorial(m)
        })
}

/// `h_γ = k!/z_γ`, the size of the conjugacy class of cycle type `γ`.
pub fn class_size(gamma: &Partition) -> BigUint {
    factorial(gamma.weight()) / z_gamma(gamma)
}

/// Number of standard Young tableaux by the hook-length formula.
pub fn hook_length_count(lambda: &Partition) -> BigUint {
    let mut hooks = BigUint::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            hooks *= BigUint::from(lambda.hook_length(i, j));
        }
    }
    factorial(lambda.weight()) / hooks
}

/// Number of standard Young tableaux by the difference product
/// `f^λ = k! Δ(μ) / ∏ μⱼ!` with `μⱼ = λⱼ + ℓ − j`.
pub fn difference_product_count(lambda: &Partition) -> BigUint {
    let l = lambda.len();
    let mu: Vec<usize> = (1..=l).map(|j| lambda.part(j) + l - j).collect();
    let mut numer = factorial(lambda.weight());
    for i in 0..l {
        for j in i + 1..l {
            numer *= BigUint::from(mu[i] - mu[j]);
        }
    }
    let denom = mu.iter().fold(BigUint::one(), |acc, &m| acc * factorial(m));
    numer / denom
}

/// `f^λ`, the dimension of the `S_k` irrep labelled by `λ`.
///
/// Both counting formulas are evaluated; a disagreement is a bug and panics.
pub fn f_lambda(lambda: &Partition) -> BigUint {
    let hook = hook_length_count(lambda);
    let diff = difference_product_count(lambda);
    assert_eq!(hook, diff, "f^λ formulas disagree for {lambda:?}");
    hook
}

/// `s_λ(1^d) = Δ(λ₁+d−1, …, λ_d) / Δ(d−1, …, 0)`, the dimension of the
/// `U(d)` irrep labelled by `λ`. Zero when `ℓ(λ) > d`.
pub fn schur_dim(lambda: &Partition, d: usize) -> BigUint {
    if lambda.len() > d {
        return BigUint::zero();
    }
    let shifted: Vec<BigInt> = (1..=d)
        .map(|j| BigInt::from(lambda.part(j) + d - j))
        .collect();
    let mut numer = BigInt::one();
    let mut denom = BigInt::one();
    for i in 0..d {
        for j in i + 1..d {
            numer *= &shifted[i] - &shifted[j];
            denom *= BigInt::from(j - i);
        }
    }
    let q = numer / denom;
    debug_assert!(!q.is_negative());
    q.to_biguint().expect("dimension is non-negative")
}

/// A permutation of `{0, …, k−1}` in one-line notation: `images[a] = π(a)`.
///
/// Composition follows function composition, `(στ)(a) = σ(τ(a))`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    /// Builds a permutation of `{1..k}` from disjoint cycles written with
    /// 1-based points, e.g. `from_cycles(4, &[&[1, 2], &[3, 4]])` is `(12)(34)`.
    pub fn from_cycles(k: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..k).collect();
        let mut touched = vec![false; k];
        for cycle in cycles {
            for (pos, &p) in cycle.iter().enumerate() {
                if p == 0 || p > k || touched[p - 1] {
                    return Err(Error::invalid(format!("bad cycle {cycle:?} in S_{k}")));
                }
                touched[p - 1] = true;
                let next = cycle[(pos + 1) % cycle.len()];
                images[p - 1] = next - 1;
            }
        }
        Permutation::new(images)
    }

    /// The number of points `k`.
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation(other.0.iter().map(|&a| self.0[a]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            inv[b] = a;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(a, &b)| a == b)
    }

    /// Disjoint cycles (0-based points), each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut a = self.0[start];
            while a != start {
                seen[a] = true;
                cycle.push(a);
                a = self.0[a];
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// `(−1)^{k − #cycles}`.
    pub fn sign(&self) -> i32 {
        if (self.degree() - self.num_cycles()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// The cycle type of `π`: its cycle lengths sorted non-increasingly.
pub fn cycle_type(pi: &Permutation) -> Partition {
    Partition::from_unsorted(pi.cycles().iter().map(Vec::len))
}

/// All `k!` permutations of `S_k` in lexicographic order of one-line notation.
pub fn all_permutations(k: usize) -> Vec<Permutation> {
    let mut current: Vec<usize> = (0..k).collect();
    let mut out = vec![Permutation(current.clone())];
    // standard next-permutation
    while let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) {
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(Permutation(current.clone()));
    }
    out
}

/// A representative permutation with the given cycle type: consecutive
/// blocks `(1 … γ₁)(γ₁+1 … γ₁+γ₂)…`.
pub fn representative(gamma: &Partition) -> Permutation {
    let k = gamma.weight();
    let mut images = vec![0; k];
    let mut start = 0;
    for &len in gamma.parts() {
        for a in 0..len {
            images[start + a] = start + (a + 1) % len;
        }
        start += len;
    }
    Permutation(images)
}
