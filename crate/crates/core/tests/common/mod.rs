//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's algorithms beyond basic types, so
//! agreement with the library is a genuine cross-check.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::HashMap;

use haarmoments::combinatorics::{all_permutations, Partition, Permutation};
use haarmoments::weingarten::{from_parts, ExactOperator, GaussianRational};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    q(rng.random_range(-9..=9), rng.random_range(1..=7))
}

pub fn random_gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    from_parts(random_rational(rng), random_rational(rng))
}

pub fn random_operator(rng: &mut ChaCha8Rng, d: usize, k: usize) -> ExactOperator {
    ExactOperator::from_fn(d, k, |_, _| random_gaussian(rng)).unwrap()
}

/// Number of cycles, counted directly from the one-line form.
pub fn cycles(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for s in 0..images.len() {
        if !seen[s] {
            count += 1;
            let mut a = s;
            while !seen[a] {
                seen[a] = true;
                a = images[a];
            }
        }
    }
    count
}

/// `P(π)` built slot by slot: output digit at slot `π(b)` is input digit at `b`.
pub fn permutation_operator(pi: &Permutation, d: usize) -> ExactOperator {
    let k = pi.degree();
    let dim = d.pow(k as u32);
    let mut op = ExactOperator::zeros(d, k).unwrap();
    for x in 0..dim {
        let mut digits = vec![0; k];
        let mut rest = x;
        for slot in (0..k).rev() {
            digits[slot] = rest % d;
            rest /= d;
        }
        let mut out = vec![0; k];
        for b in 0..k {
            out[pi.images()[b]] = digits[b];
        }
        let y = out.iter().fold(0, |acc, &v| acc * d + v);
        op.set(y, x, GaussianRational::one());
    }
    op
}

/// Plain group-algebra product on `S_k` with coefficients keyed by one-line form.
pub fn convolve(a: &HashMap<Vec<usize>, BigRational>, b: &HashMap<Vec<usize>, BigRational>) -> HashMap<Vec<usize>, BigRational> {
    let mut out: HashMap<Vec<usize>, BigRational> = HashMap::new();
    for (s, cs) in a {
        for (t, ct) in b {
            let st: Vec<usize> = (0..s.len()).map(|i| s[t[i]]).collect();
            *out.entry(st).or_insert_with(BigRational::zero) += cs * ct;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `Σ_π d^{#cycles(π)} π`.
pub fn gram(k: usize, d: usize) -> HashMap<Vec<usize>, BigRational> {
    all_permutations(k)
        .into_iter()
        .map(|pi| {
            let c = cycles(pi.images());
            (pi.images().to_vec(), int(d.pow(c as u32) as i64))
        })
        .collect()
}

/// Determinant over the rationals by fraction-exact elimination.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col].clone();
        for r in col + 1..n {
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Schur polynomial as a ratio of alternants, `det(x_i^{λ_j+n−j}) / det(x_i^{n−j})`.
/// Needs distinct points.
pub fn schur_bialternant(lambda: &Partition, x: &[BigRational]) -> BigRational {
    let n = x.len();
    if lambda.len() > n {
        return BigRational::zero();
    }
    let pow = |v: &BigRational, e: usize| num_traits::pow(v.clone(), e);
    let num: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| pow(&x[i], lambda.part(j + 1) + n - 1 - j)).collect())
        .collect();
    let den: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| pow(&x[i], n - 1 - j)).collect())
        .collect();
    determinant(num) / determinant(den)
}

/// Standard Young tableaux of shape `λ`, counted by removing corners.
pub fn count_syt(lambda: &[usize]) -> u64 {
    if lambda.iter().all(|&r| r == 0) {
        return 1;
    }
    let mut total = 0;
    for i in 0..lambda.len() {
        let is_corner = lambda[i] > 0 && (i + 1 == lambda.len() || lambda[i + 1] < lambda[i]);
        if is_corner {
            let mut smaller = lambda.to_vec();
            smaller[i] -= 1;
            total += count_syt(&smaller);
        }
    }
    total
}

/// Semistandard tableaux of shape `λ` with entries `≤ d`, by filling rows.
pub fn count_ssyt(lambda: &[usize], d: usize) -> u64 {
    fn rows(lambda: &[usize], d: usize, row: usize, above: &[usize]) -> u64 {
        if row == lambda.len() {
            return 1;
        }
        let mut total = 0;
        let mut cur = vec![0; lambda[row]];
        fill(lambda, d, row, above, 0, &mut cur, &mut total);
        total
    }
    fn fill(lambda: &[usize], d: usize, row: usize, above: &[usize], col: usize, cur: &mut Vec<usize>, total: &mut u64) {
        if col == cur.len() {
            *total += rows(lambda, d, row + 1, cur);
            return;
        }
        let lo_row = if col == 0 { 1 } else { cur[col - 1] };
        let lo_col = if row == 0 { 1 } else { above[col] + 1 };
        for v in lo_row.max(lo_col)..=d {
            cur[col] = v;
            fill(lambda, d, row, above, col + 1, cur, total);
        }
    }
    rows(lambda, d, 0, &[])
}

/// `∫ ∏ Tr(U^{aₜ}) ∏ conj Tr(U^{bₛ}) dU` expanded over all matrix indices and
/// fed through `monomial_integral`; exponential in the total degree.
pub fn trace_moment_by_indices(powers: &[usize], conj_powers: &[usize], d: usize) -> BigRational {
    let n: usize = powers.iter().sum();
    let m: usize = conj_powers.iter().sum();
    if n != m {
        return BigRational::zero();
    }
    // Tr(U^a) = Σ U_{i1 i2} U_{i2 i3} ⋯ U_{ia i1}
    let next_in_block = |lengths: &[usize]| {
        let mut nxt = Vec::new();
        let mut start = 0;
        for &len in lengths {
            for a in 0..len {
                nxt.push(start + (a + 1) % len);
            }
            start += len;
        }
        nxt
    };
    let nxt = next_in_block(powers);
    let nxt_c = next_in_block(conj_powers);
    let mut total = BigRational::zero();
    let mut idx = vec![0usize; n];
    let mut idx_c = vec![0usize; n];
    let count = d.pow(n as u32);
    for a in 0..count {
        let mut r = a;
        for v in idx.iter_mut() {
            *v = r % d + 1;
            r /= d;
        }
        let cols: Vec<usize> = (0..n).map(|t| idx[nxt[t]]).collect();
        for b in 0..count {
            let mut r = b;
            for v in idx_c.iter_mut() {
                *v = r % d + 1;
                r /= d;
            }
            let cols_c: Vec<usize> = (0..n).map(|t| idx_c[nxt_c[t]]).collect();
            // cheap multiset pre-check before the Weingarten sum
            let mut l1 = idx.clone();
            let mut l2 = idx_c.clone();
            l1.sort_unstable();
            l2.sort_unstable();
            if l1 != l2 {
                continue;
            }
            total += haarmoments::weingarten::monomial_integral(&idx, &cols, &idx_c, &cols_c, d).unwrap();
        }
    }
    total
}

/// Solves `A x = b` over the rationals, setting free variables to zero.
/// Returns `None` if the system is inconsistent.
pub fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(pr, r);
        b.swap(pr, r);
        let inv = BigRational::one() / &a[r][c];
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
                let delta = &f * &b[r];
                b[i] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

/// Builds `Σ_π c(π) P(π)` from coefficients given per permutation.
pub fn operator_from_coefficients(k: usize, d: usize, coeff: impl Fn(&Permutation) -> BigRational) -> ExactOperator {
    let mut op = ExactOperator::zeros(d, k).unwrap();
    for pi in all_permutations(k) {
        let c = coeff(&pi);
        if !c.is_zero() {
            op.add_scaled(&GaussianRational::new(c, BigRational::zero()), &permutation_operator(&pi, d))
                .unwrap();
        }
    }
    op
}

pub fn real(r: BigRational) -> GaussianRational {
    GaussianRational::new(r, BigRational::zero())
}

/// `s_λ(x) = Σ_T x^T` over semistandard tableaux, filled row by row.
/// Division-free, so repeated points are fine.
pub fn schur_by_tableaux(lambda: &[usize], x: &[BigRational]) -> BigRational {
    fn rows(lambda: &[usize], x: &[BigRational], row: usize, above: &[usize], weight: &BigRational) -> BigRational {
        if row == lambda.len() {
            return weight.clone();
        }
        let mut cur = vec![0; lambda[row]];
        fill(lambda, x, row, above, 0, &mut cur, weight)
    }
    fn fill(
        lambda: &[usize],
        x: &[BigRational],
        row: usize,
        above: &[usize],
        col: usize,
        cur: &mut Vec<usize>,
        weight: &BigRational,
    ) -> BigRational {
        if col == cur.len() {
            let snapshot = cur.clone();
            return rows(lambda, x, row + 1, &snapshot, weight);
        }
        let lo_row = if col == 0 { 0 } else { cur[col - 1] };
        let lo_col = if row == 0 { 0 } else { above[col] + 1 };
        let mut total = BigRational::zero();
        for v in lo_row.max(lo_col)..x.len() {
            cur[col] = v;
            total += fill(lambda, x, row, above, col + 1, cur, &(weight * &x[v]));
        }
        total
    }
    rows(lambda, x, 0, &[], &BigRational::one())
}
