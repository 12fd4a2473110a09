//! Self-checks behind `verify`, one per acceptance criterion, parametrised
//! by `k` and `d` where the criterion allows it.

use haarmoments::characters::{character_table, ClassFunction};
use haarmoments::combinatorics::{f_lambda, partitions_of, schur_dim, z_gamma, Partition, Permutation};
use haarmoments::symfunc::{kronecker, schur_poly, schur_tensor_expand, RationalVector};
use haarmoments::tensorops::{
    exact_grid_for, exact_vs_mc_report, to_complex_matrix, torus_average, trace_power_integrand, weyl_quadrature,
    McParams, RngStream, MAX_QUAD_DIM,
};
use haarmoments::weingarten::{
    average_purity, bipartite_central_projector, central_projector, closed_moment_tr4, conditional_expectation,
    from_int, from_parts, from_real, gram_element, partial_trace_projector, rational, sphere_projector_average,
    trace_power_moment, twirl_power, weingarten_fn, ExactOperator, GroupAlgebraElement, MAX_TRACE_MOMENT_WEIGHT,
};
use haarmoments::{binomial, factorial, Result};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy)]
pub struct VerifyParams {
    pub k: usize,
    pub d: usize,
    pub seed: u64,
    pub samples: usize,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn from_failures(checked: usize, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            Check {
                pass: true,
                detail: format!("{checked} checks"),
            }
        } else {
            let shown: Vec<_> = failures.iter().take(4).cloned().collect();
            Check {
                pass: false,
                detail: format!("{} of {checked} checks failed: {}", failures.len(), shown.join("; ")),
            }
        }
    }
}

type Routine = fn(&VerifyParams) -> Result<Check>;

/// Registered identities in reporting order: (name, criterion, routine).
pub const IDENTITIES: &[(&str, usize, Routine)] = &[
    ("depolarizing", 1, depolarizing),
    ("two_copy_twirl", 2, two_copy_twirl),
    ("weingarten", 3, weingarten),
    ("trace_moment2", 4, trace_moment2),
    ("trace_moment4", 5, trace_moment4),
    ("diaconis", 6, diaconis),
    ("projectors", 7, projectors),
    ("twirl_power", 8, twirl_power_check),
    ("character_table", 9, character_table_check),
    ("kronecker", 10, kronecker_check),
    ("purity", 11, purity),
    ("sphere_average", 12, sphere_average),
    ("partial_trace", 13, partial_trace),
    ("mc_operators", 14, mc_operators),
    ("weyl_normalization", 15, weyl_normalization),
];

pub fn names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|(name, _, _)| *name).collect()
}

/// Small rationals `a/b` drawn from the seeded Gaussian stream.
fn random_rationals(seed: u64, stream: u64, n: usize) -> Vec<BigRational> {
    let mut g = RngStream::new(seed, stream).gaussian();
    (0..n)
        .map(|_| {
            let num = (g.normal() * 4.0).round() as i64;
            let den = 1 + (g.normal().abs() * 3.0).round() as i64;
            rational(num, den)
        })
        .collect()
}

fn random_operator(d: usize, k: usize, seed: u64, stream: u64) -> Result<ExactOperator> {
    let dim = d.pow(k as u32);
    let parts = random_rationals(seed, stream, 2 * dim * dim);
    ExactOperator::from_fn(d, k, |r, c| {
        let i = 2 * (r * dim + c);
        from_parts(parts[i].clone(), parts[i + 1].clone())
    })
}

fn real(r: BigRational) -> haarmoments::weingarten::GaussianRational {
    from_real(r)
}

fn big(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn depolarizing(p: &VerifyParams) -> Result<Check> {
    let d = p.d;
    let mut failures = Vec::new();
    for s in 0..5u64 {
        let a = random_operator(d, 1, p.seed, 100 + s)?;
        let expected = ExactOperator::identity(d, 1)?.scale(&(a.trace() / from_int(d as i64)));
        if conditional_expectation(&a)? != expected {
            failures.push(format!("sample {s}"));
        }
    }
    Ok(Check::from_failures(5, failures))
}

fn two_copy_twirl(p: &VerifyParams) -> Result<Check> {
    let d = p.d;
    let id = ExactOperator::identity(d, 2)?;
    let swap = ExactOperator::permutation(&Permutation::new(vec![1, 0])?, d)?;
    let half = real(rational(1, 2));
    let sym = (&id + &swap).scale(&half);
    let anti = (&id - &swap).scale(&half);
    let dd = d as i64;
    let mut failures = Vec::new();
    for s in 0..3u64 {
        let a = random_operator(d, 2, p.seed, 200 + s)?;
        let tr = a.trace();
        let tr_swap = swap.matmul(&a)?.trace();
        // coefficients of the symmetric and antisymmetric projectors
        let mut expected = sym.scale(&((&tr + &tr_swap) / from_int(dd * (dd + 1))));
        if d > 1 {
            expected = &expected + &anti.scale(&((&tr - &tr_swap) / from_int(dd * (dd - 1))));
        }
        if conditional_expectation(&a)? != expected {
            failures.push(format!("sample {s}"));
        }
    }
    Ok(Check::from_failures(3, failures))
}

fn weingarten(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let mut failures = Vec::new();
    let mut checked = 0;
    if d >= 2 {
        let wg2 = weingarten_fn(2, d)?;
        let dd = d as i64;
        checked += 2;
        if wg2.value(&Partition::column(2)) != rational(1, dd * dd - 1) {
            failures.push("Wg(e) at k=2".to_string());
        }
        if wg2.value(&Partition::row(2)) != rational(-1, dd * (dd * dd - 1)) {
            failures.push("Wg(swap) at k=2".to_string());
        }
    }
    let g = gram_element(k, d);
    let wg = GroupAlgebraElement::from_class_function(&weingarten_fn(k, d)?);
    let gwg = g.convolve(&wg)?;
    checked += 2;
    if gwg.convolve(&g)? != g {
        failures.push("G Wg G = G".to_string());
    }
    if wg.convolve(&g)?.convolve(&wg)? != wg {
        failures.push("Wg G Wg = Wg".to_string());
    }
    if d >= k {
        checked += 1;
        if gwg != GroupAlgebraElement::basis(&Permutation::identity(k)) {
            failures.push("G Wg = e".to_string());
        }
    }
    Ok(Check::from_failures(checked, failures))
}

fn mc_failure(name: &str, p: &VerifyParams, params: McParams, stream: u64, failures: &mut Vec<String>) -> Result<f64> {
    let r = exact_vs_mc_report(name, &params, p.samples, &RngStream::new(p.seed, stream))?;
    if !r.pass {
        failures.push(format!("{name} Monte Carlo z = {:.2}", r.z));
    }
    Ok(r.z)
}

fn trace_moment2(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let expected = k.min(d);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    if k <= MAX_TRACE_MOMENT_WEIGHT {
        if trace_power_moment(k, 1, d)? != big(expected as i64) {
            failures.push("exact summation".to_string());
        }
    } else {
        notes.push("exact summation skipped".to_string());
    }
    if d <= MAX_QUAD_DIM {
        let v = weyl_quadrature(trace_power_integrand(k as i64, 1), d, exact_grid_for(k, d))?;
        if (v - Complex64::new(expected as f64, 0.0)).norm() >= 1e-10 {
            failures.push(format!("quadrature gives {v}"));
        }
    } else {
        notes.push("quadrature skipped".to_string());
    }
    let z = mc_failure("tr2", p, McParams { k, d, ..McParams::default() }, 4, &mut failures)?;
    let mut check = Check::from_failures(3 - notes.len(), failures);
    check.detail = format!("min(k,d) = {expected}, {}, z = {z:.2}", check.detail);
    for n in notes {
        check.detail += &format!(", {n}");
    }
    Ok(check)
}

/// The fourth moment with the middle branch exactly as printed.
fn printed_tr4(k: i64, d: i64) -> i64 {
    if k >= d {
        d * (2 * d - 1)
    } else if 2 * k >= d {
        2 * k * k + 2 * k - d
    } else {
        2 * k * k
    }
}

fn trace_moment4(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let closed = closed_moment_tr4(k, d)?;
    let mut failures = Vec::new();
    let mut checked = 0;
    if 2 * k <= MAX_TRACE_MOMENT_WEIGHT {
        checked += 1;
        let exact = trace_power_moment(k, 2, d)?;
        if exact != big(closed) {
            failures.push(format!("exact summation gives {exact}"));
        }
    }
    if d <= MAX_QUAD_DIM {
        checked += 1;
        let v = weyl_quadrature(trace_power_integrand(k as i64, 2), d, exact_grid_for(2 * k, d))?;
        if (v - Complex64::new(closed as f64, 0.0)).norm() >= 1e-8 {
            failures.push(format!("quadrature gives {v}"));
        }
    }
    let mut check = Check::from_failures(checked, failures);
    check.detail = format!("closed form {closed}, {}", check.detail);
    let printed = printed_tr4(k as i64, d as i64);
    if printed != closed as i64 {
        check.detail += &format!(", printed middle branch gives {printed}");
    }
    Ok(check)
}

fn diaconis(p: &VerifyParams) -> Result<Check> {
    // higher dimensions make the grid too large for a quick check
    let m = p.d.min(4);
    let mut failures = Vec::new();
    for n in 1..=m {
        let v = weyl_quadrature(trace_power_integrand(1, n as u32), m, exact_grid_for(n, m))?;
        let expected = factorial(n).to_f64().unwrap_or(f64::NAN);
        if (v - Complex64::new(expected, 0.0)).norm() >= 1e-8 {
            failures.push(format!("n={n}: {v}"));
        }
    }
    let mut check = Check::from_failures(m, failures);
    check.detail = format!("U({m}), {}", check.detail);
    Ok(check)
}

fn projectors(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let lambdas = partitions_of(k, None);
    let cs: Vec<ExactOperator> = lambdas.iter().map(|l| central_projector(l, d)).collect::<Result<_>>()?;
    let mut failures = Vec::new();
    let mut checked = 1;
    let mut sum = ExactOperator::zeros(d, k)?;
    let generators: Vec<ExactOperator> = (0..k.saturating_sub(1))
        .map(|a| {
            let mut images: Vec<usize> = (0..k).collect();
            images.swap(a, a + 1);
            ExactOperator::permutation(&Permutation::new(images)?, d)
        })
        .collect::<Result<_>>()?;
    for (i, (l, c)) in lambdas.iter().zip(&cs).enumerate() {
        sum = &sum + c;
        checked += 1;
        if c.trace() != real(big(BigInt::from(f_lambda(l) * schur_dim(l, d)))) {
            failures.push(format!("Tr C_{}", l.paren()));
        }
        for (j, other) in cs.iter().enumerate().skip(i) {
            checked += 1;
            let prod = c.matmul(other)?;
            if !(if i == j { &prod == c } else { prod.is_zero() }) {
                failures.push(format!("C_{} C_{}", l.paren(), lambdas[j].paren()));
            }
        }
        for g in &generators {
            checked += 1;
            if c.matmul(g)? != g.matmul(c)? {
                failures.push(format!("C_{} is not central", l.paren()));
            }
        }
    }
    if sum != ExactOperator::identity(d, k)? {
        failures.push("completeness".to_string());
    }
    Ok(Check::from_failures(checked, failures))
}

fn twirl_power_check(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let mut failures = Vec::new();
    let mut checked = 0;
    for s in 0..3u64 {
        let eig = random_rationals(p.seed, 800 + s, d);
        let x = ExactOperator::from_fn(d, 1, |r, c| if r == c { real(eig[r].clone()) } else { from_int(0) })?;
        let tp = twirl_power(&x, k)?;
        checked += 1;
        if tp.operator != conditional_expectation(&x.tensor_power(k)?)? {
            failures.push(format!("operator, sample {s}"));
        }
        // Δ_λ = s_λ(eigenvalues) / s_λ(1^d)
        let ev = RationalVector::new(eig.clone())?;
        for (lambda, coeff) in &tp.coefficients {
            checked += 1;
            let expected = schur_poly(lambda, &ev) / big(BigInt::from(schur_dim(lambda, d)));
            if *coeff != real(expected) {
                failures.push(format!("Δ_{} sample {s}", lambda.paren()));
            }
        }
    }
    Ok(Check::from_failures(checked, failures))
}

fn character_table_check(p: &VerifyParams) -> Result<Check> {
    let k = p.k;
    let table = character_table(k)?;
    let parts = table.partitions().to_vec();
    let mut failures = Vec::new();
    let mut checked = 0;
    let chars: Vec<ClassFunction> = parts.iter().map(ClassFunction::character).collect::<Result<_>>()?;
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            checked += 1;
            let ip = a.inner_product(b)?;
            if ip != if i == j { BigRational::one() } else { BigRational::zero() } {
                failures.push(format!("rows {} {}", parts[i].paren(), parts[j].paren()));
            }
        }
    }
    for gamma in &parts {
        for delta in &parts {
            checked += 1;
            let col: BigInt = parts
                .iter()
                .map(|l| table.value(l, gamma) * table.value(l, delta))
                .sum();
            let expected = if gamma == delta { BigInt::from(z_gamma(gamma)) } else { BigInt::zero() };
            if col != expected {
                failures.push(format!("columns {} {}", gamma.paren(), delta.paren()));
            }
        }
        checked += 1;
        if !table.value(&Partition::row(k), gamma).is_one() {
            failures.push(format!("trivial at {}", gamma.paren()));
        }
    }
    let long_cycle = Partition::row(k);
    let identity = Partition::column(k);
    for lambda in &parts {
        checked += 2;
        let hook_value = if lambda.is_hook() {
            BigInt::from(if (lambda.len() - 1) % 2 == 0 { 1 } else { -1 })
        } else {
            BigInt::zero()
        };
        if *table.value(lambda, &long_cycle) != hook_value {
            failures.push(format!("hook rule at {}", lambda.paren()));
        }
        if *table.value(lambda, &identity) != BigInt::from(f_lambda(lambda)) {
            failures.push(format!("dimension of {}", lambda.paren()));
        }
    }
    Ok(Check::from_failures(checked, failures))
}

fn kronecker_check(p: &VerifyParams) -> Result<Check> {
    let k = p.k;
    let parts = partitions_of(k, None);
    let mut failures = Vec::new();
    let mut checked = 0;
    for mu in &parts {
        for nu in &parts {
            checked += 2;
            let trivial = kronecker(&Partition::row(k), mu, nu)?;
            if trivial != BigUint::from(u32::from(mu == nu)) {
                failures.push(format!("g_(k) {} {}", mu.paren(), nu.paren()));
            }
            let total: BigUint = parts
                .iter()
                .map(|l| Ok(f_lambda(l) * kronecker(l, mu, nu)?))
                .sum::<Result<_>>()?;
            if total != f_lambda(mu) * f_lambda(nu) {
                failures.push(format!("dimension sum {} {}", mu.paren(), nu.paren()));
            }
        }
    }
    let values = random_rationals(p.seed, 1000, 4);
    let x = RationalVector::new(values[..2].to_vec())?;
    let y = RationalVector::new(values[2..].to_vec())?;
    for lambda in &parts {
        checked += 1;
        if schur_tensor_expand(lambda, &x, &y) != schur_poly(lambda, &x.tensor(&y)) {
            failures.push(format!("tensor expansion {}", lambda.paren()));
        }
    }
    Ok(Check::from_failures(checked, failures))
}

fn purity(p: &VerifyParams) -> Result<Check> {
    let (da, db) = (p.d, 2usize);
    let mut failures = Vec::new();
    let exact = average_purity(da, db)?;
    let expected = rational((da + db) as i64, (da * db + 1) as i64);
    if exact != expected {
        failures.push(format!("exact value {exact}"));
    }
    let z = mc_failure("purity", p, McParams { d: da, d_b: db, ..McParams::default() }, 11, &mut failures)?;
    let mut check = Check::from_failures(2, failures);
    check.detail = format!("{exact} at {da}x{db}, {}, z = {z:.2}", check.detail);
    Ok(check)
}

fn sphere_average(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let avg = sphere_projector_average(k, d)?;
    let psi0 = ExactOperator::matrix_unit(d, 1, 0, 0)?.tensor_power(k)?;
    let mut failures = Vec::new();
    if avg != conditional_expectation(&psi0)? {
        failures.push("twirl of |ψ₀⟩⟨ψ₀|".to_string());
    }
    let norm = big(BigInt::from(binomial(k + d - 1, k)));
    let sym = central_projector(&Partition::row(k), d)?;
    if avg != sym.scale(&real(BigRational::one() / norm)) {
        failures.push("normalised symmetric projector".to_string());
    }
    Ok(Check::from_failures(2, failures))
}

/// Exact for small spaces, double precision beyond.
const EXACT_PARTIAL_TRACE_DIM: usize = 16;

fn partial_trace(p: &VerifyParams) -> Result<Check> {
    let (k, d) = (p.k, p.d);
    let parts = partitions_of(k, None);
    let exact = d.pow(2 * k as u32) <= EXACT_PARTIAL_TRACE_DIM;
    let dim_b = d.pow(k as u32);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for lambda in &parts {
        let c_ab = bipartite_central_projector(lambda, d, d)?;
        for mu in &parts {
            let c_mu = central_projector(mu, d)?;
            for nu in &parts {
                let c_nu = central_projector(nu, d)?;
                let scalar = partial_trace_projector(lambda, mu, nu, d, d)?;
                checked += 1;
                let label = format!("{} {} {}", lambda.paren(), mu.paren(), nu.paren());
                if exact {
                    let lhs = c_ab.matmul(&c_mu.kron(&c_nu)?)?.partial_trace_last(dim_b)?;
                    if lhs.entries() != c_mu.scale(&real(scalar)).entries() {
                        failures.push(label);
                    }
                } else {
                    let prod = to_complex_matrix(&c_ab) * to_complex_matrix(&c_mu).kronecker(&to_complex_matrix(&c_nu));
                    let dim_a = prod.nrows() / dim_b;
                    let s = scalar.to_f64().unwrap_or(f64::NAN);
                    let cm = to_complex_matrix(&c_mu);
                    let mut err: f64 = 0.0;
                    for r in 0..dim_a {
                        for c in 0..dim_a {
                            let v: Complex64 = (0..dim_b).map(|b| prod[(r * dim_b + b, c * dim_b + b)]).sum();
                            err = err.max((v - cm[(r, c)] * s).norm());
                        }
                    }
                    worst = worst.max(err);
                    if err >= 1e-10 {
                        failures.push(format!("{label}: {err:.1e}"));
                    }
                }
            }
        }
    }
    let mut check = Check::from_failures(checked, failures);
    if !exact {
        check.detail += &format!(", floating point, max error {worst:.1e}");
    }
    Ok(check)
}

fn mc_operators(p: &VerifyParams) -> Result<Check> {
    let params = McParams { d: p.d, ..McParams::default() };
    let mut failures = Vec::new();
    let z1 = mc_failure("swap", p, params, 14, &mut failures)?;
    let z2 = mc_failure("uu_bar", p, params, 15, &mut failures)?;
    let mut check = Check::from_failures(2, failures);
    check.detail = format!("{}, max z = {z1:.2} and {z2:.2}", check.detail);
    Ok(check)
}

fn weyl_normalization(_: &VerifyParams) -> Result<Check> {
    let mut failures = Vec::new();
    for n in 2..=4 {
        let v = torus_average(|_| Complex64::new(1.0, 0.0), n, exact_grid_for(0, n))?;
        let expected = factorial(n).to_f64().unwrap_or(f64::NAN);
        if (v - Complex64::new(expected, 0.0)).norm() >= 1e-8 {
            failures.push(format!("n={n}: {v}"));
        }
    }
    Ok(Check::from_failures(3, failures))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_cover_every_criterion() {
        let mut names = names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), IDENTITIES.len());
        let criteria: Vec<usize> = IDENTITIES.iter().map(|(_, c, _)| *c).collect();
        assert_eq!(criteria, (1..=15).collect::<Vec<_>>());
    }

    #[test]
    fn printed_fourth_moment_branches() {
        assert_eq!(printed_tr4(1, 5), 2);
        assert_eq!(printed_tr4(2, 3), 9);
        assert_eq!(printed_tr4(3, 2), 6);
    }

    #[test]
    fn random_rationals_are_reproducible() {
        assert_eq!(random_rationals(4, 2, 6), random_rationals(4, 2, 6));
        assert_ne!(random_rationals(4, 2, 6), random_rationals(4, 3, 6));
    }

    #[test]
    fn exact_checks_pass_at_small_sizes() {
        let p = VerifyParams { k: 2, d: 2, seed: 1, samples: 2000 };
        for (name, _, routine) in IDENTITIES {
            if ["trace_moment2", "purity", "mc_operators"].contains(name) {
                continue;
            }
            let check = routine(&p).unwrap();
            assert!(check.pass, "{name}: {}", check.detail);
        }
    }
}
