mod common;

use num_rational::Ratio;
use perfect_forge::arith::{self, Nat};
use perfect_forge::products;
use perfect_forge::factorize;
use rayon::prelude::*;

fn exps_of(f: &perfect_forge::Factorization) -> Vec<(u64, u64)> {
    f.pairs()
        .iter()
        .map(|(p, a)| (*p, u64::try_from(a).unwrap()))
        .collect()
}

#[test]
fn e_divisor_functions_match_enumeration() {
    let bad: Vec<u64> = (2..=100_000u64)
        .into_par_iter()
        .filter(|&n| {
            let f = factorize(n).unwrap();
            let ds = common::e_divisors(n);
            let sum: u64 = ds.iter().sum();
            products::e_divisor_count(&f).unwrap() != Nat::from(ds.len())
                || products::e_divisor_sum(&f).unwrap() != Nat::from(sum)
                || exps_of(&products::e_divisor_product(&f).unwrap()) != common::product_exponents(n, &ds)
        })
        .collect();
    assert!(bad.is_empty(), "mismatches at {:?}", &bad[..bad.len().min(10)]);
}

#[test]
fn e_divisor_lists_match_enumeration() {
    for n in 2..=5000u64 {
        let f = factorize(n).unwrap();
        let listed: Vec<u64> = products::e_divisors(&f)
            .unwrap()
            .iter()
            .map(|d| d.value().unwrap())
            .collect();
        assert_eq!(listed, common::e_divisors(n), "n = {n}");
    }
}

#[test]
fn divisor_products_match_enumeration() {
    for n in 2..=10_000u64 {
        let f = factorize(n).unwrap();
        let ds = common::fast_divisors(n);
        assert_eq!(exps_of(&products::divisor_product(&f)), common::product_exponents(n, &ds), "T({n})");
        let unitary: Vec<u64> = ds.iter().copied().filter(|&d| common::gcd(d, n / d) == 1).collect();
        assert_eq!(
            exps_of(&products::unitary_divisor_product(&f)),
            common::product_exponents(n, &unitary),
            "T*({n})"
        );
        assert_eq!(products::unitary_divisor_count(&f), Nat::from(unitary.len()));
    }
}

#[test]
fn t_raised_to_half_e_count_is_t_e() {
    for n in 2..=10_000u64 {
        let f = factorize(n).unwrap();
        let t = products::t_function(&f).unwrap();
        let half = Ratio::new(products::e_divisor_count(&f).unwrap(), Nat::from(2u32));
        let lifted = t.pow(&half).to_factorization().unwrap();
        assert_eq!(lifted, products::e_divisor_product(&f).unwrap(), "n = {n}");
    }
}

#[test]
fn divisor_identities_up_to_1e5() {
    for n in 1..=100_000u64 {
        let f = factorize(n).unwrap();
        let ds = common::fast_divisors(n);
        assert_eq!(arith::sigma(&f).unwrap(), Nat::from(ds.iter().sum::<u64>()));
        assert_eq!(arith::num_divisors(&f), Nat::from(ds.len()));
        if n >= 2 {
            assert!(common::sigma(n) > n);
        }
    }
}

#[test]
fn divisor_lists_match_naive_scan() {
    for n in 1..=2000u64 {
        let f = factorize(n).unwrap();
        assert_eq!(arith::divisors(&f).unwrap(), common::divisors(n));
    }
}
