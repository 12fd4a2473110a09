mod common;

use std::sync::Arc;

use common::*;
use haarmoments::characters::{
    character, character_for_cycle_lengths, character_table, ClassFunction, TABLE_CAP,
};
use haarmoments::combinatorics::{all_permutations, cycle_type, partitions_of, representative, Partition};
use haarmoments::symfunc::{power_sum, RationalVector};
use haarmoments::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn s2_table_from_trivial_and_sign_representations() {
    let table = character_table(2).unwrap();
    assert_eq!(table.partitions(), [p("2"), p("1,1")]);
    // trivial rep: 1 everywhere; sign rep: sign of a representative
    let sign_row: Vec<BigInt> = table
        .partitions()
        .iter()
        .map(|g| BigInt::from(representative(g).sign()))
        .collect();
    assert_eq!(table.rows()[0], vec![BigInt::one(), BigInt::one()]);
    assert_eq!(table.rows()[1], sign_row);
    assert_eq!(sign_row, vec![BigInt::from(-1), BigInt::one()]);
}

#[test]
fn standard_representation_of_s3() {
    // permutation representation on ℂ³ minus the trivial part: χ = #fixed points − 1
    let mut by_class = std::collections::BTreeMap::new();
    for pi in all_permutations(3) {
        let fixed = (0..3).filter(|&a| pi.apply(a) == a).count() as i64;
        by_class.insert(cycle_type(&pi), BigInt::from(fixed - 1));
    }
    let lambda = p("2,1");
    for gamma in ["3", "2,1", "1,1,1"] {
        assert_eq!(character(&lambda, &p(gamma)).unwrap(), by_class[&p(gamma)]);
    }
    let row: Vec<i64> = ["3", "2,1", "1,1,1"]
        .iter()
        .map(|g| i64::try_from(character(&lambda, &p(g)).unwrap()).unwrap())
        .collect();
    assert_eq!(row, [-1, 0, 2]);
}

#[test]
fn power_sums_expand_in_schur_polynomials() {
    // p_γ = Σ_λ χ_λ(γ) s_λ, with s_λ from the bialternant oracle
    let mut rng = rng(31);
    for k in 1..=5 {
        let x: Vec<BigRational> = loop {
            let mut v: Vec<BigRational> = (0..k).map(|_| q(rng.random_range(-20..=20), rng.random_range(1..=4))).collect();
            let mut s = v.clone();
            s.sort();
            s.dedup();
            if s.len() == k {
                break v;
            }
            v.clear();
        };
        let xv = RationalVector::new(x.clone()).unwrap();
        let schur: Vec<(Partition, BigRational)> = partitions_of(k, None)
            .into_iter()
            .map(|l| {
                let s = schur_bialternant(&l, &x);
                (l, s)
            })
            .collect();
        for gamma in partitions_of(k, None) {
            let expansion: BigRational = schur
                .iter()
                .map(|(l, s)| BigRational::from_integer(character(l, &gamma).unwrap()) * s)
                .sum();
            assert_eq!(expansion, power_sum(&gamma, &xv), "k={k} γ={gamma}");
        }
    }
}

#[test]
fn characters_beyond_the_table_cap() {
    let k = TABLE_CAP + 2;
    assert!(matches!(character_table(k), Err(Error::ResourceLimit { .. })));
    assert!(character_table(0).is_err());
    // still computable one value at a time
    assert_eq!(character(&Partition::row(k), &p("5,4,3")).unwrap(), BigInt::one());
    let hook = Partition::hook(k, 3);
    assert_eq!(character(&hook, &Partition::row(k)).unwrap(), BigInt::from(-1));
    let id = Partition::column(k);
    let sign = character(&id, &p("2,2,2,2,2,2")).unwrap();
    assert_eq!(sign, BigInt::one());
}

#[test]
fn class_functions_and_inner_products() {
    for k in 1..=5 {
        let chars: Vec<ClassFunction> = partitions_of(k, None)
            .iter()
            .map(|l| ClassFunction::character(l).unwrap())
            .collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let ip = a.inner_product(b).unwrap();
                assert_eq!(ip, if i == j { BigRational::one() } else { BigRational::zero() });
            }
        }
        for pi in all_permutations(k) {
            assert_eq!(chars[0].at(&pi), BigRational::one());
        }
    }
    let a = ClassFunction::character(&p("2,1")).unwrap();
    let b = ClassFunction::character(&p("2,2")).unwrap();
    assert!(matches!(a.inner_product(&b), Err(Error::WeightMismatch { .. })));
    assert!(character(&p("2,1"), &p("2,2")).is_err());
}

#[test]
fn tables_are_shared_across_threads() {
    let handles: Vec<_> = (0..8)
        .map(|i| std::thread::spawn(move || character_table(6 + i % 2).unwrap()))
        .collect();
    let tables: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for t in &tables {
        let again = character_table(t.k()).unwrap();
        assert!(Arc::ptr_eq(t, &again) || **t == *again);
    }
}

proptest! {
    #[test]
    fn reordering_cycle_lengths_does_not_change_the_value(
        (lambda_idx, gamma_idx, shift) in (0usize..22, 0usize..22, 0usize..8)
    ) {
        let parts = partitions_of(8, None);
        let lambda = &parts[lambda_idx];
        let gamma = &parts[gamma_idx];
        let mut reversed = gamma.parts().to_vec();
        reversed.reverse();
        let len = reversed.len();
        reversed.rotate_left(shift % len);
        let expected = character(lambda, gamma).unwrap();
        prop_assert_eq!(character_for_cycle_lengths(lambda, &reversed).unwrap(), expected.clone());
        prop_assert_eq!(character(lambda, &Partition::from_unsorted(reversed)).unwrap(), expected);
    }
}
