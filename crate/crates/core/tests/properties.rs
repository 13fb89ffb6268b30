mod common;

use perfect_forge::arith::{self, Nat};
use perfect_forge::classify::{self, Class};
use perfect_forge::products::{self, DivisorMap};
use perfect_forge::shapes::{self, ExponentShape};
use perfect_forge::{factorize, Factorization};
use proptest::prelude::*;

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

// An exponent vector plus two strictly increasing prime supports of the
// same length.
fn shape_and_supports() -> impl Strategy<Value = (Vec<u64>, Vec<u64>, Vec<u64>)> {
    (1usize..=3).prop_flat_map(|r| {
        (
            proptest::collection::vec(1u64..=40, r),
            proptest::sample::subsequence(PRIMES.to_vec(), r),
            proptest::sample::subsequence(PRIMES.to_vec(), r),
        )
    })
}

fn build(primes: &[u64], exps: &[u64]) -> Factorization {
    let pairs: Vec<(u64, u64)> = primes.iter().copied().zip(exps.iter().copied()).collect();
    Factorization::from_small(&pairs).unwrap()
}

fn exps(f: &Factorization) -> Vec<Nat> {
    f.exponents().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sigma_and_tau_are_multiplicative(a in 1u64..1_000_000, b in 1u64..1_000_000) {
        prop_assume!(common::gcd(a, b) == 1);
        let (fa, fb) = (factorize(a).unwrap(), factorize(b).unwrap());
        let fab = factorize(a * b).unwrap();
        prop_assert_eq!(arith::sigma(&fab).unwrap(), arith::sigma(&fa).unwrap() * arith::sigma(&fb).unwrap());
        prop_assert_eq!(arith::num_divisors(&fab), arith::num_divisors(&fa) * arith::num_divisors(&fb));
    }

    #[test]
    fn factorize_round_trips(n in 1u64..=u64::MAX) {
        let f = factorize(n).unwrap();
        prop_assert_eq!(f.value(), Some(n));
        prop_assert!(f.primes().all(arith::is_prime));
    }

    #[test]
    fn maps_depend_only_on_exponents((e, ps, qs) in shape_and_supports()) {
        let (f, g) = (build(&ps, &e), build(&qs, &e));
        for map in [DivisorMap::T, DivisorMap::TStar, DivisorMap::TE] {
            let (fi, gi) = (map.apply(&f).unwrap(), map.apply(&g).unwrap());
            prop_assert_eq!(exps(&fi), exps(&gi));
            prop_assert_eq!(fi.primes().collect::<Vec<_>>(), ps.clone());
        }
    }

    #[test]
    fn exponent_only_classes_ignore_primes((e, ps, qs) in shape_and_supports()) {
        let (f, g) = (build(&ps, &e), build(&qs, &e));
        for class in Class::ALL.into_iter().filter(|c| c.is_exponent_only()) {
            prop_assert_eq!(class.membership(&f).unwrap(), class.membership(&g).unwrap(), "{}", class);
        }
    }

    #[test]
    fn reported_orders_round_trip((e, ps, _qs) in shape_and_supports()) {
        let f = build(&ps, &e);
        let checks: [(Option<Nat>, &[DivisorMap]); 4] = [
            (classify::mult_perfect_order(&f), &[DivisorMap::T]),
            (classify::mult_e_perfect_order(&f).unwrap(), &[DivisorMap::TE]),
            (classify::mult_e_superperfect_order(&f).unwrap(), &[DivisorMap::TE, DivisorMap::TE]),
            (classify::t0tstar_order(&f), &[DivisorMap::T, DivisorMap::TStar]),
        ];
        for (order, maps) in checks {
            if let Some(k) = order {
                prop_assert_eq!(products::compose(maps, &f).unwrap(), f.pow(&k));
            }
        }
        if let Some(k) = classify::tstar0t_order(&f) {
            prop_assert_eq!(products::compose(&[DivisorMap::TStar, DivisorMap::T], &f).unwrap(), f.pow(&k));
        }
    }

    #[test]
    fn divisor_product_exponents_are_integral(n in 2u64..1_000_000) {
        let f = factorize(n).unwrap();
        let d = arith::num_divisors(&f);
        let image = products::divisor_product(&f);
        for ((_, a), (_, b)) in f.pairs().iter().zip(image.pairs()) {
            prop_assert_eq!(a * &d, b * 2u32);
        }
    }

    #[test]
    fn t0tstar_solutions_are_sound(k in 2u64..=400) {
        for sol in shapes::solve_t0tstar(k).unwrap().solutions {
            let f = sol.shape.instantiate_smallest();
            prop_assert_eq!(classify::t0tstar_order(&f), Some(Nat::from(k)));
        }
    }

    #[test]
    fn shapes_render_and_parse(e in proptest::collection::vec(1u64..=500, 1..5)) {
        let shape = ExponentShape::new(e).unwrap();
        let text = shape.render();
        prop_assert_eq!(text.parse::<ExponentShape>().unwrap(), shape);
    }
}

#[test]
fn e_perfect_solutions_are_sound() {
    for k in 2..=40 {
        for sol in shapes::solve_mult_e_perfect(k, 3, 40).unwrap().solutions {
            let f = sol.shape.instantiate_smallest();
            assert_eq!(classify::mult_e_perfect_order(&f).unwrap(), Some(Nat::from(k)), "{}", sol.shape);
        }
        for sol in shapes::solve_mult_e_superperfect(k, 2, 40).unwrap().solutions {
            let f = sol.shape.instantiate_smallest();
            assert_eq!(classify::mult_e_superperfect_order(&f).unwrap(), Some(Nat::from(k)), "{}", sol.shape);
        }
    }
}
