//! Dense exact operators on `(ℂ^d)^{⊗k}` and the permutation action.
//!
//! Basis vectors `|i₁ … i_k⟩` are indexed in base `d` with `i₁` most
//! significant. `P(π)|i₁ … i_k⟩ = |i_{π⁻¹(1)} … i_{π⁻¹(k)}⟩`, so the tensor
//! slot `a` moves to slot `π(a)` and `P(σ)P(τ) = P(στ)`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering};

use num_traits::Zero;

use super::scalar::{format_gaussian, from_int, GaussianRational};
use crate::combinatorics::Permutation;
use crate::{Error, Result};

/// Default largest dense dimension `d^k`.
pub const DEFAULT_DENSE_CAP: usize = 4096;
/// Smallest cap that may be configured.
pub const MIN_DENSE_CAP: usize = 16;

static DENSE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DENSE_CAP);

/// The current cap on the dimension of dense operators.
pub fn dense_cap() -> usize {
    DENSE_CAP.load(Ordering::Relaxed)
}

/// Changes the process-wide dense-dimension cap.
pub fn set_dense_cap(cap: usize) -> Result<()> {
    if cap < MIN_DENSE_CAP {
        return Err(Error::invalid(format!(
            "dense cap {cap} is below the minimum {MIN_DENSE_CAP}"
        )));
    }
    DENSE_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

/// `d^k` with overflow reported as a resource error.
pub fn tensor_dim(d: usize, k: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..k {
        dim = dim.checked_mul(d).ok_or(Error::ResourceLimit {
            what: "tensor dimension",
            size: usize::MAX,
            cap: dense_cap(),
        })?;
    }
    Ok(dim)
}

fn check_cap(dim: usize) -> Result<()> {
    let cap = dense_cap();
    if dim > cap {
        return Err(Error::ResourceLimit {
            what: "dense operator dimension",
            size: dim,
            cap,
        });
    }
    Ok(())
}

/// Digits `(i₁, …, i_k)` of a basis index, most significant first.
pub fn index_digits(mut index: usize, d: usize, k: usize) -> Vec<usize> {
    let mut digits = vec![0; k];
    for slot in (0..k).rev() {
        digits[slot] = index % d;
        index /= d;
    }
    digits
}

pub fn digits_index(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &i| acc * d + i)
}

/// The basis map `x ↦ π·x`, i.e. `P(π)|x⟩ = |π·x⟩`.
pub fn permutation_action(pi: &Permutation, d: usize) -> Result<Vec<usize>> {
    let k = pi.degree();
    let dim = tensor_dim(d, k)?;
    check_cap(dim)?;
    let mut image = vec![0; dim];
    let mut moved = vec![0; k];
    for (x, slot) in image.iter_mut().enumerate() {
        let digits = index_digits(x, d, k);
        for (a, &i) in digits.iter().enumerate() {
            moved[pi.apply(a)] = i;
        }
        *slot = digits_index(&moved, d);
    }
    Ok(image)
}

/// A dense square matrix of exact complex scalars, row-major.
///
/// `d` and `k` record the tensor structure `(ℂ^d)^{⊗k}`; operators without
/// that structure use `k = 1` and `d` equal to the full dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOperator {
    d: usize,
    k: usize,
    dim: usize,
    entries: Vec<GaussianRational>,
}

impl ExactOperator {
    pub fn zeros(d: usize, k: usize) -> Result<Self> {
        let dim = tensor_dim(d, k)?;
        check_cap(dim)?;
        Ok(ExactOperator {
            d,
            k,
            dim,
            entries: vec![GaussianRational::zero(); dim * dim],
        })
    }

    pub fn identity(d: usize, k: usize) -> Result<Self> {
        let mut op = ExactOperator::zeros(d, k)?;
        for i in 0..op.dim {
            op.entries[i * op.dim + i] = from_int(1);
        }
        Ok(op)
    }

    pub fn from_fn(d: usize, k: usize, mut f: impl FnMut(usize, usize) -> GaussianRational) -> Result<Self> {
        let mut op = ExactOperator::zeros(d, k)?;
        for r in 0..op.dim {
            for c in 0..op.dim {
                op.entries[r * op.dim + c] = f(r, c);
            }
        }
        Ok(op)
    }

    /// A `d × d` operator (one tensor factor) from its rows.
    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::invalid("matrix has no rows"));
        }
        for row in &rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: row.len(),
                });
            }
        }
        check_cap(d)?;
        Ok(ExactOperator {
            d,
            k: 1,
            dim: d,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The permutation operator `P(π)` on `(ℂ^d)^{⊗k}`, `k = deg π`.
    pub fn permutation(pi: &Permutation, d: usize) -> Result<Self> {
        let action = permutation_action(pi, d)?;
        let mut op = ExactOperator::zeros(d, pi.degree())?;
        for (x, &y) in action.iter().enumerate() {
            op.entries[y * op.dim + x] = from_int(1);
        }
        Ok(op)
    }

    /// Rank-one `|e_r⟩⟨e_c|` on `(ℂ^d)^{⊗k}`.
    pub fn matrix_unit(d: usize, k: usize, r: usize, c: usize) -> Result<Self> {
        let mut op = ExactOperator::zeros(d, k)?;
        op.set(r, c, from_int(1));
        Ok(op)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussianRational {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussianRational) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<GaussianRational>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    /// Reinterprets the tensor structure without touching the entries.
    pub fn reshaped(mut self, d: usize, k: usize) -> Result<Self> {
        let dim = tensor_dim(d, k)?;
        if dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: dim,
            });
        }
        self.d = d;
        self.k = k;
        Ok(self)
    }

    pub fn trace(&self) -> GaussianRational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    /// `Tr(A P(π))`, read directly off the entries: `Σ_x A[x, π·x]`.
    pub fn trace_with_permutation(&self, pi: &Permutation) -> Result<GaussianRational> {
        self.expect_shape(pi.degree())?;
        let action = permutation_action(pi, self.d)?;
        Ok(action
            .iter()
            .enumerate()
            .map(|(x, &y)| self.get(x, y).clone())
            .sum())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[c * self.dim + r] = self.get(r, c).conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = self.clone();
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[c * self.dim + r] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn scale(&self, s: &GaussianRational) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            if !e.is_zero() {
                *e = &*e * s;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    fn same_dim(&self, other: &ExactOperator) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: other.dim,
            });
        }
        Ok(())
    }

    /// Fails unless the operator acts on `(ℂ^d)^{⊗k}` for this `k`.
    pub fn expect_shape(&self, k: usize) -> Result<()> {
        let expected = tensor_dim(self.d, k)?;
        if self.k != k || expected != self.dim {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.dim,
            });
        }
        Ok(())
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn matmul(&self, other: &ExactOperator) -> Result<Self> {
        self.same_dim(other)?;
        let n = self.dim;
        let mut out = vec![GaussianRational::zero(); n * n];
        for r in 0..n {
            for m in 0..n {
                let a = self.get(r, m);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.get(m, c);
                    if !b.is_zero() {
                        out[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(ExactOperator {
            d: self.d,
            k: self.k,
            dim: n,
            entries: out,
        })
    }

    pub fn try_add(&self, other: &ExactOperator) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            if !o.is_zero() {
                *e += o;
            }
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &ExactOperator) -> Result<Self> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            if !o.is_zero() {
                *e -= o;
            }
        }
        Ok(out)
    }

    /// `self += s · other`.
    pub fn add_scaled(&mut self, s: &GaussianRational, other: &ExactOperator) -> Result<()> {
        self.same_dim(other)?;
        for (e, o) in self.entries.iter_mut().zip(&other.entries) {
            if !o.is_zero() {
                *e += s * o;
            }
        }
        Ok(())
    }

    /// Tensor product `self ⊗ other`. Factors of equal local dimension keep
    /// the tensor structure; otherwise the result is flattened to `k = 1`.
    pub fn kron(&self, other: &ExactOperator) -> Result<Self> {
        let n = self.dim;
        let m = other.dim;
        let dim = n.checked_mul(m).ok_or(Error::ResourceLimit {
            what: "dense operator dimension",
            size: usize::MAX,
            cap: dense_cap(),
        })?;
        check_cap(dim)?;
        let mut entries = vec![GaussianRational::zero(); dim * dim];
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..m {
                    for c2 in 0..m {
                        let b = other.get(r2, c2);
                        if !b.is_zero() {
                            entries[(r1 * m + r2) * dim + c1 * m + c2] = a * b;
                        }
                    }
                }
            }
        }
        let (d, k) = if self.d == other.d {
            (self.d, self.k + other.k)
        } else {
            (dim, 1)
        };
        Ok(ExactOperator { d, k, dim, entries })
    }

    /// `X^{⊗k}` for a single-factor operator `X`.
    pub fn tensor_power(&self, k: usize) -> Result<Self> {
        let mut out = ExactOperator::identity(self.dim, 0)?.reshaped(self.d, 0)?;
        for _ in 0..k {
            out = out.kron(self)?;
        }
        Ok(out)
    }

    /// Traces out a trailing tensor factor of dimension `dim_b`, leaving an
    /// operator of dimension `dim / dim_b`.
    pub fn partial_trace_last(&self, dim_b: usize) -> Result<Self> {
        if dim_b == 0 || !self.dim.is_multiple_of(dim_b) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: dim_b,
            });
        }
        let dim_a = self.dim / dim_b;
        let mut entries = vec![GaussianRational::zero(); dim_a * dim_a];
        for r in 0..dim_a {
            for c in 0..dim_a {
                let mut acc = GaussianRational::zero();
                for b in 0..dim_b {
                    let v = self.get(r * dim_b + b, c * dim_b + b);
                    if !v.is_zero() {
                        acc += v;
                    }
                }
                entries[r * dim_a + c] = acc;
            }
        }
        // keep the tensor structure when the traced part is whole factors
        let mut k = 0;
        let mut rest = dim_a;
        while rest > 1 && rest.is_multiple_of(self.d) {
            rest /= self.d;
            k += 1;
        }
        let (d, k) = if rest == 1 && self.d > 1 { (self.d, k) } else { (dim_a, 1) };
        Ok(ExactOperator {
            d,
            k,
            dim: dim_a,
            entries,
        })
    }

    /// Hilbert–Schmidt inner product `Tr(A† B)`.
    pub fn hs_inner(&self, other: &ExactOperator) -> Result<GaussianRational> {
        self.same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Entries converted to double precision, row-major.
    pub fn to_f64_entries(&self) -> Vec<(f64, f64)> {
        use num_traits::ToPrimitive;
        self.entries
            .iter()
            .map(|z| (z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }

    /// Human-readable rows of exact entries.
    pub fn to_text(&self) -> String {
        self.entries
            .chunks(self.dim)
            .map(|row| row.iter().map(format_gaussian).collect::<Vec<_>>().join("  "))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl Add for &ExactOperator {
    type Output = ExactOperator;
    /// Panics on a dimension mismatch; use [`ExactOperator::try_add`] for input from outside.
    fn add(self, rhs: &ExactOperator) -> ExactOperator {
        self.try_add(rhs).expect("operator dimensions agree")
    }
}

impl Sub for &ExactOperator {
    type Output = ExactOperator;
    fn sub(self, rhs: &ExactOperator) -> ExactOperator {
        self.try_sub(rhs).expect("operator dimensions agree")
    }
}

impl Mul for &ExactOperator {
    type Output = ExactOperator;
    fn mul(self, rhs: &ExactOperator) -> ExactOperator {
        self.matmul(rhs).expect("operator dimensions agree")
    }
}

impl Neg for &ExactOperator {
    type Output = ExactOperator;
    fn neg(self) -> ExactOperator {
        self.scale(&from_int(-1))
    }
}
