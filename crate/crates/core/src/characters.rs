//! Irreducible characters of `S_k` and class functions.
//!
//! Characters are computed with the Murnaghan–Nakayama rule on beta-sets
//! (abacus positions): removing a rim hook of length `r` moves one bead down
//! by `r` places, with sign `(−1)` to the number of beads jumped over.
//! Full tables are memoized per `k` for `k ≤ TABLE_CAP`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{cycle_type, partitions_of, z_gamma, Partition, Permutation};
use crate::{Error, Result};

/// Largest `k` for which a full character table is built and cached.
pub const TABLE_CAP: usize = 10;

/// Beta-set of `λ` with `ℓ(λ)` beads: `βᵢ = λᵢ + ℓ − i`, strictly decreasing.
fn beta_set(lambda: &Partition) -> Vec<usize> {
    let l = lambda.len();
    (1..=l).map(|i| lambda.part(i) + l - i).collect()
}

fn from_beta_set(mut beta: Vec<usize>) -> Partition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len();
    Partition::from_unsorted(beta.iter().enumerate().map(|(i, &b)| b - (l - 1 - i)))
}

/// All shapes reachable by removing one rim hook of length `r`, with the
/// hook's sign `(−1)^{height}`.
pub fn remove_rim_hooks(lambda: &Partition, r: usize) -> Vec<(Partition, i32)> {
    let beta = beta_set(lambda);
    let mut out = Vec::new();
    for (pos, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let jumped = beta.iter().filter(|&&c| target < c && c < b).count();
        let mut moved = beta.clone();
        moved[pos] = target;
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((from_beta_set(moved), sign));
    }
    out
}

type Memo = HashMap<(Partition, usize), BigInt>;

fn mn(lambda: &Partition, cycles: &[usize], start: usize, memo: &mut Memo) -> BigInt {
    if start == cycles.len() {
        return if lambda.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    let key = (lambda.clone(), start);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    for (smaller, sign) in remove_rim_hooks(lambda, cycles[start]) {
        let v = mn(&smaller, cycles, start + 1, memo);
        if sign > 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// `χ_λ` on a permutation whose cycle lengths are given in any order.
///
/// The rule may strip the cycles in any order; this entry point uses the
/// order given, which makes it a convenient self-check.
pub fn character_for_cycle_lengths(lambda: &Partition, cycles: &[usize]) -> Result<BigInt> {
    let weight: usize = cycles.iter().sum();
    if weight != lambda.weight() {
        return Err(Error::WeightMismatch {
            left: lambda.weight(),
            right: weight,
        });
    }
    if cycles.contains(&0) {
        return Err(Error::invalid("cycle lengths must be positive"));
    }
    Ok(mn(lambda, cycles, 0, &mut Memo::new()))
}

/// `χ_λ(γ)`, the irreducible character of `λ ⊢ k` on the class of cycle type `γ ⊢ k`.
pub fn character(lambda: &Partition, gamma: &Partition) -> Result<BigInt> {
    if lambda.weight() != gamma.weight() {
        return Err(Error::WeightMismatch {
            left: lambda.weight(),
            right: gamma.weight(),
        });
    }
    let k = lambda.weight();
    if (1..=TABLE_CAP).contains(&k) {
        let table = character_table(k)?;
        return Ok(table.value(lambda, gamma).clone());
    }
    character_for_cycle_lengths(lambda, gamma.parts())
}

/// The character table of `S_k`: rows are irreps `λ`, columns are classes
/// `γ`, both in decreasing lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    k: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<BigInt>>,
}

impl CharacterTable {
    fn compute(k: usize) -> Self {
        let partitions = partitions_of(k, None);
        let index = partitions
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut values = vec![vec![BigInt::zero(); partitions.len()]; partitions.len()];
        for (c, gamma) in partitions.iter().enumerate() {
            // one memo per column: the rim-hook sequence is fixed by γ
            let mut memo = Memo::new();
            for (r, lambda) in partitions.iter().enumerate() {
                values[r][c] = mn(lambda, gamma.parts(), 0, &mut memo);
            }
        }
        CharacterTable {
            k,
            partitions,
            index,
            values,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Row and column labels (the same list).
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn value(&self, lambda: &Partition, gamma: &Partition) -> &BigInt {
        &self.values[self.index[lambda]][self.index[gamma]]
    }

    /// Position of a partition of `k` in the row/column ordering.
    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }
}

fn table_cache() -> &'static RwLock<HashMap<usize, Arc<CharacterTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The character table of `S_k` for `1 ≤ k ≤ TABLE_CAP`, computed once per
/// `k` and shared afterwards.
pub fn character_table(k: usize) -> Result<Arc<CharacterTable>> {
    if k == 0 {
        return Err(Error::invalid("character tables need k >= 1"));
    }
    if k > TABLE_CAP {
        return Err(Error::ResourceLimit {
            what: "character table order k",
            size: k,
            cap: TABLE_CAP,
        });
    }
    if let Some(t) = table_cache().read().unwrap().get(&k) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(CharacterTable::compute(k));
    let mut cache = table_cache().write().unwrap();
    Ok(Arc::clone(cache.entry(k).or_insert(table)))
}

/// A rational-valued class function on `S_k`, stored per cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    k: usize,
    values: BTreeMap<Partition, BigRational>,
}

impl ClassFunction {
    /// Evaluates `f` on every cycle type of `S_k`.
    pub fn from_fn(k: usize, mut f: impl FnMut(&Partition) -> BigRational) -> Self {
        let values = partitions_of(k, None)
            .into_iter()
            .map(|g| {
                let v = f(&g);
                (g, v)
            })
            .collect();
        ClassFunction { k, values }
    }

    /// The irreducible character `χ_λ` as a class function.
    pub fn character(lambda: &Partition) -> Result<Self> {
        let k = lambda.weight();
        let mut err = None;
        let f = ClassFunction::from_fn(k, |g| match character(lambda, g) {
            Ok(v) => BigRational::from_integer(v),
            Err(e) => {
                err = Some(e);
                BigRational::zero()
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(f),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Value on the class `γ`; zero for partitions of the wrong weight.
    pub fn value(&self, gamma: &Partition) -> BigRational {
        self.values.get(gamma).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn value_ref(&self, gamma: &Partition) -> Option<&BigRational> {
        self.values.get(gamma)
    }

    /// Value at a permutation, through its cycle type.
    pub fn at(&self, pi: &Permutation) -> BigRational {
        self.value(&cycle_type(pi))
    }

    /// `(γ, f(γ))` in decreasing lexicographic order of `γ`.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigRational)> {
        self.values.iter().rev()
    }

    /// `⟨f, g⟩ = (1/k!) Σ_π f(π) g(π) = Σ_γ f(γ) g(γ) / z_γ` (real-valued
    /// class functions, so no conjugation is needed).
    pub fn inner_product(&self, other: &ClassFunction) -> Result<BigRational> {
        if self.k != other.k {
            return Err(Error::WeightMismatch {
                left: self.k,
                right: other.k,
            });
        }
        Ok(self
            .values
            .iter()
            .map(|(g, v)| {
                v * other.value(g) / BigRational::from_integer(BigInt::from(z_gamma(g)))
            })
            .sum())
    }
}
