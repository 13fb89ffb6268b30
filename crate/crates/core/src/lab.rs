//! Machine checks of the characterization results at desk scale.
//!
//! Each verifier recomputes both sides of its claim through different code
//! paths: the factored-domain formulas in [`products`] and [`classify`] on
//! one side, value-domain brute force (trial division, divisor sieves,
//! explicit enumeration) on the other. Outcomes are deterministic: the same
//! inputs always give the same counterexample list in the same order.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{self, Factorization, Nat};
use crate::classify::{self, HarmonicType};
use crate::error::{Error, Result};
use crate::products::{self, DivisorMap};
use crate::shapes::{self, ExponentShape};

/// What a counterexample is about.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Number(Factorization),
    Exponents(Vec<u64>),
    Parameter(u64),
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Number(n) => write!(f, "{n}"),
            Subject::Exponents(e) => {
                let parts: Vec<String> = e.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            Subject::Parameter(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Counterexample {
    pub subject: Subject,
    pub reason: String,
}

impl Counterexample {
    fn new(subject: Subject, reason: impl Into<String>) -> Self {
        Self {
            subject,
            reason: reason.into(),
        }
    }
}

/// Result of one verifier run. `passed` holds exactly when there are no
/// counterexamples; `checked` counts the elements of the scanned range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationOutcome {
    pub theorem_id: String,
    pub range_description: String,
    pub checked: u64,
    pub passed: bool,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationOutcome {
    fn new(theorem_id: &str, range_description: String, checked: u64, counterexamples: Vec<Counterexample>) -> Self {
        debug_assert!(checked > 0);
        Self {
            theorem_id: theorem_id.to_string(),
            range_description,
            checked,
            passed: counterexamples.is_empty(),
            counterexamples,
        }
    }
}

/// Identifiers accepted by [`run_by_id`] and the CLI.
pub const THEOREM_IDS: [&str; 8] = [
    "sandor",
    "harmonic",
    "k-perfect-lift",
    "gcd-form",
    "bounds",
    "t0tstar-family",
    "even-perfect",
    "catalog",
];

const MAX_SCAN: u64 = 1_000_000;

fn check_limit(limit: u64, min: u64, max: u64, what: &str) -> Result<()> {
    if limit < min || limit > max {
        return Err(Error::InvalidArgument(format!("{what} must lie in [{min}, {max}], got {limit}")));
    }
    Ok(())
}

// Brute-force σ by pairing divisors up to the square root.
fn brute_sigma(m: u64) -> u64 {
    let mut s = 0;
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            s += d;
            if d * d != m {
                s += m / d;
            }
        }
        d += 1;
    }
    s
}

fn brute_divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

// `(p, a)` when `n = p^a`, by trial division.
fn brute_prime_power(n: u64) -> Option<(u64, u64)> {
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if p * p > n {
        return Some((n, 1));
    }
    let (mut m, mut a) = (n, 0);
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}

fn is_two(k: &Option<Nat>) -> bool {
    k.as_ref() == Some(&Nat::from(2u32))
}

/// Multiplicatively e-perfect (`T_e(n) = n^2`) exactly for `p^a` with `a`
/// perfect, and e-superperfect exactly for `p^a` with `σ(σ(a)) = 2a`,
/// checked for every `n` in `[2, limit]`.
pub fn verify_sandor_equivalence(limit: u64) -> Result<VerificationOutcome> {
    check_limit(limit, 2, MAX_SCAN, "limit")?;
    let counterexamples = (2..=limit)
        .into_par_iter()
        .map(|n| -> Result<Vec<Counterexample>> {
            let f = arith::factorize(n)?;
            let perfect = is_two(&classify::mult_e_perfect_order(&f)?);
            let superperfect = is_two(&classify::mult_e_superperfect_order(&f)?);
            let power = brute_prime_power(n);
            let expect_perfect = power.is_some_and(|(_, a)| brute_sigma(a) == 2 * a);
            let expect_super = power.is_some_and(|(_, a)| brute_sigma(brute_sigma(a)) == 2 * a);
            let mut out = Vec::new();
            if perfect != expect_perfect {
                out.push(Counterexample::new(
                    Subject::Number(f.clone()),
                    format!("T_e(n) = n^2 is {perfect}, prime power with perfect exponent is {expect_perfect}"),
                ));
            }
            if superperfect != expect_super {
                out.push(Counterexample::new(
                    Subject::Number(f),
                    format!("T_e(T_e(n)) = n^2 is {superperfect}, prime power with superperfect exponent is {expect_super}"),
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationOutcome::new(
        "sandor",
        format!("n in [2, {limit}]"),
        limit - 1,
        counterexamples.into_iter().flatten().collect(),
    ))
}

/// For prime powers `n = p^a <= limit` with `T_e(n) = n^2` or
/// `T_e(T_e(n)) = n^2`: type-1 e-harmonic iff `(σ_e(n)/p) | d_e(n)`, and
/// type-2 iff `S_e(n) | d_e(n)`. The right-hand sides are built from
/// explicit divisor lists of `a`.
pub fn verify_harmonic_theorems(limit: u64) -> Result<VerificationOutcome> {
    check_limit(limit, 2, MAX_SCAN, "limit")?;
    let counterexamples = (2..=limit)
        .into_par_iter()
        .map(|n| -> Result<Vec<Counterexample>> {
            let f = arith::factorize(n)?;
            if f.num_primes() != 1 {
                return Ok(Vec::new());
            }
            let member = is_two(&classify::mult_e_perfect_order(&f)?)
                || is_two(&classify::mult_e_superperfect_order(&f)?);
            if !member {
                return Ok(Vec::new());
            }
            let (p, a) = brute_prime_power(n).expect("single prime");
            let exps = brute_divisors(a);
            let p_big = Nat::from(p);
            let sigma_e: Nat = exps.iter().map(|&b| p_big.pow(b as u32)).sum();
            let s_e: Nat = exps.iter().map(|&b| p_big.pow((a - b) as u32)).sum();
            let d_e = Nat::from(exps.len());

            let type1 = classify::e_harmonic(&f, HarmonicType::One)?;
            let type2 = classify::e_harmonic(&f, HarmonicType::Two)?;
            let alt1 = d_e.is_multiple_of(&(&sigma_e / p));
            let alt2 = d_e.is_multiple_of(&s_e);
            let mut out = Vec::new();
            if type1 != alt1 {
                out.push(Counterexample::new(
                    Subject::Number(f.clone()),
                    format!("type-1 harmonic is {type1} but (σ_e/p) | d_e is {alt1}"),
                ));
            }
            if type2 != alt2 {
                out.push(Counterexample::new(
                    Subject::Number(f),
                    format!("type-2 harmonic is {type2} but S_e | d_e is {alt2}"),
                ));
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationOutcome::new(
        "harmonic",
        format!("n in [2, {limit}]"),
        limit - 1,
        counterexamples.into_iter().flatten().collect(),
    ))
}

const LIFT_PRIMES: [u64; 3] = [2, 3, 5];

/// If `σ(a) = k a` then `T_e(p^a) = p^(ka)`; if `σ(σ(a)) = k a` then
/// `T_e(T_e(p^a)) = p^(ka)`, for every `a <= a_limit`, `k >= 2` and
/// `p` in {2, 3, 5}. Divisor sums come from a sieve.
pub fn verify_k_perfect_lift(a_limit: u64) -> Result<VerificationOutcome> {
    check_limit(a_limit, 1, MAX_SCAN, "a_limit")?;
    let sigma = arith::sigma_table(a_limit as usize);
    let top = sigma.iter().copied().max().unwrap_or(1) as usize;
    let sigma_wide = arith::sigma_table(top);

    let counterexamples = (1..=a_limit)
        .into_par_iter()
        .map(|a| -> Result<Vec<Counterexample>> {
            let s = sigma[a as usize];
            let ss = sigma_wide[s as usize];
            let mut out = Vec::new();
            let lifts = [
                (s, &[DivisorMap::TE][..], "T_e(p^a)"),
                (ss, &[DivisorMap::TE, DivisorMap::TE][..], "T_e(T_e(p^a))"),
            ];
            for (value, maps, label) in lifts {
                if value % a != 0 || value / a < 2 {
                    continue;
                }
                let k = value / a;
                for p in LIFT_PRIMES {
                    let f = Factorization::from_small(&[(p, a)])?;
                    let image = products::compose(maps, &f)?;
                    let expected = Factorization::from_small(&[(p, k * a)])?;
                    let order = if maps.len() == 1 {
                        classify::mult_e_perfect_order(&f)?
                    } else {
                        classify::mult_e_superperfect_order(&f)?
                    };
                    if image != expected || order != Some(Nat::from(k)) {
                        out.push(Counterexample::new(
                            Subject::Number(f),
                            format!("{label} = {image}, expected exponent {k} * {a}"),
                        ));
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationOutcome::new(
        "k-perfect-lift",
        format!("a in [1, {a_limit}], p in {{2, 3, 5}}"),
        a_limit,
        counterexamples.into_iter().flatten().collect(),
    ))
}

fn nondecreasing_tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, lo: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        for a in lo..=max {
            prefix.push(a);
            go(len, a, max, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, max, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `T_e(n) = n^p` for a prime `p` holds exactly when, for each `i`,
/// `σ(α_i) = gcd(α_i, σ(α_i)) p` and `α_i = gcd(α_i, σ(α_i)) ∏_{j≠i} d(α_j)`,
/// with `2^(r-1) <= ∏_{j≠i} d(α_j) < p` once `r >= 2`.
///
/// Both conditions are symmetric in the exponents, so the box is walked as
/// multisets `α_1 <= ... <= α_r`.
pub fn verify_gcd_characterization(primes: &[u64], r_max: usize, alpha_max: u64) -> Result<VerificationOutcome> {
    if r_max == 0 || r_max > 4 || alpha_max == 0 || alpha_max > 200 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r_max <= 4 and 1 <= alpha_max <= 200, got {r_max} and {alpha_max}"
        )));
    }
    if primes.is_empty() || !primes.iter().all(|&p| arith::is_prime(p)) {
        return Err(Error::InvalidArgument("primes must be a non-empty list of primes".into()));
    }
    let sigma: Vec<u64> = (0..=alpha_max).map(|a| if a == 0 { 0 } else { brute_sigma(a) }).collect();
    let tau: Vec<u64> = (0..=alpha_max)
        .map(|a| if a == 0 { 0 } else { brute_divisors(a).len() as u64 })
        .collect();
    let tuples: Vec<Vec<u64>> = (1..=r_max).flat_map(|r| nondecreasing_tuples(r, alpha_max)).collect();
    let checked = (tuples.len() * primes.len()) as u64;

    let counterexamples: Vec<Counterexample> = tuples
        .par_iter()
        .flat_map_iter(|alphas| {
            let sigma = &sigma;
            let tau = &tau;
            primes.iter().filter_map(move |&p| {
                let f = ExponentShape::new(alphas.clone()).ok()?.instantiate_smallest();
                // the system, via the factored-domain T_e
                let image = products::e_divisor_product(&f).ok()?;
                let system = products::power_ratio(&image, &f) == Some(Nat::from(p));
                let gcd_form = shapes::gcd_form_violation(alphas, p, sigma, tau).is_none();
                (system != gcd_form).then(|| {
                    Counterexample::new(
                        Subject::Exponents(alphas.clone()),
                        format!("p = {p}: T_e(n) = n^p is {system}, gcd form is {gcd_form}"),
                    )
                })
            })
        })
        .collect();
    Ok(VerificationOutcome::new(
        "gcd-form",
        format!(
            "exponent multisets with r <= {r_max}, alpha <= {alpha_max}; p in {:?}",
            primes
        ),
        checked,
        counterexamples,
    ))
}

/// The constants of the order bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundConstants;

impl BoundConstants {
    /// `C1 = 1.5379`, the divisor-count constant, as an exact rational.
    pub fn c1() -> Ratio<u64> {
        Ratio::new(15_379, 10_000)
    }

    /// `C = C1 ln 2`.
    pub fn c() -> f64 {
        Self::c1().to_f64().expect("small rational") * std::f64::consts::LN_2
    }
}

/// Relative slack applied to the floating-point side of the order bound.
pub const GUARD_BAND: f64 = 1e-9;

/// `∏ (a_i^(1/2 + C (r-1) / ln ln a_i))^(1/r)`; every `a_i` must be `>= 3`.
pub fn order_upper_bound(exponents: &[u64]) -> Result<f64> {
    if exponents.is_empty() || exponents.iter().any(|&a| a < 3) {
        return Err(Error::InvalidArgument(format!(
            "every exponent must be at least 3, got {exponents:?}"
        )));
    }
    let r = exponents.len() as f64;
    let c = BoundConstants::c();
    let log_sum: f64 = exponents
        .iter()
        .map(|&a| {
            let ln_a = (a as f64).ln();
            ln_a * (0.5 + c * (r - 1.0) / ln_a.ln())
        })
        .sum();
    Ok((log_sum / r).exp())
}

/// Primes `q` with `2^(r-1) < q < bound`, the orders a shape may have when
/// the order is prime.
pub fn admissible_prime_orders(exponents: &[u64]) -> Result<Vec<u64>> {
    let bound = order_upper_bound(exponents)?;
    let lower = 1u64 << (exponents.len() - 1);
    Ok((lower + 1..=bound.floor() as u64)
        .filter(|&q| arith::is_prime(q) && (q as f64) < bound * (1.0 - GUARD_BAND))
        .collect())
}

/// `2^(r-1) < k < bound` for each instance's `T_e` order `k`. The lower side
/// is exact; the upper side holds only if `k < bound (1 - 1e-9)`, so a
/// near-tie counts against the bound.
pub fn verify_bounds(instances: &[Vec<u64>]) -> Result<VerificationOutcome> {
    if instances.is_empty() {
        return Err(Error::InvalidArgument("no instances given".into()));
    }
    let mut counterexamples = Vec::new();
    for exps in instances {
        let bound = order_upper_bound(exps)?;
        let f = ExponentShape::new(exps.clone())?.instantiate_smallest();
        let k = classify::mult_e_perfect_order(&f)?
            .ok_or_else(|| Error::InvalidArgument(format!("{exps:?} has no T_e order")))?;
        let lower = Nat::from(1u32) << (exps.len() - 1);
        if k <= lower {
            counterexamples.push(Counterexample::new(
                Subject::Exponents(exps.clone()),
                format!("k = {k} is not above 2^(r-1) = {lower}"),
            ));
        }
        let k_f = k.to_f64().unwrap_or(f64::INFINITY);
        if k_f >= bound * (1.0 - GUARD_BAND) {
            counterexamples.push(Counterexample::new(
                Subject::Exponents(exps.clone()),
                format!("k = {k} is not below the bound {bound:.12}"),
            ));
        }
    }
    Ok(VerificationOutcome::new(
        "bounds",
        format!("{} instances, guard band {GUARD_BAND:e}", instances.len()),
        instances.len() as u64,
        counterexamples,
    ))
}

/// The `T(T*(n)) = n^k` shapes for `k = 2..=10`, as fixed fixtures.
pub const T0TSTAR_TABLE: [(u64, &[&str]); 9] = [
    (2, &["p1^3"]),
    (3, &["p1^5"]),
    (4, &["p1^7"]),
    (5, &["p1^9"]),
    (6, &["p1^11"]),
    (7, &["p1^13"]),
    (8, &["p1^15"]),
    (9, &["p1^17", "p1*p2"]),
    (10, &["p1^19"]),
];

/// The exponent-equation solver and the structural prediction agree for
/// every `k` in `[2, k_max]`, and the solver reproduces the fixed table.
pub fn verify_t0tstar_family(k_max: u64) -> Result<VerificationOutcome> {
    check_limit(k_max, 2, 1000, "k_max")?;
    let mut counterexamples: Vec<Counterexample> = (2..=k_max)
        .into_par_iter()
        .map(|k| -> Result<Option<Counterexample>> {
            let solved = shapes::solve_t0tstar(k)?.shapes();
            let predicted = shapes::predicted_shapes(k)?;
            Ok((solved != predicted.shapes()).then(|| {
                Counterexample::new(
                    Subject::Parameter(k),
                    format!(
                        "solver {:?} vs {:?} prediction {:?}",
                        render_all(&solved),
                        predicted.family,
                        render_all(&predicted.shapes())
                    ),
                )
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for (k, rows) in T0TSTAR_TABLE {
        let solved = render_all(&shapes::solve_t0tstar(k)?.shapes());
        if solved != rows {
            counterexamples.push(Counterexample::new(
                Subject::Parameter(k),
                format!("solver {solved:?} vs table {rows:?}"),
            ));
        }
    }
    Ok(VerificationOutcome::new(
        "t0tstar-family",
        format!("k in [2, {k_max}] plus the k = 2..10 table"),
        k_max - 1 + T0TSTAR_TABLE.len() as u64,
        counterexamples,
    ))
}

fn render_all(shapes: &[ExponentShape]) -> Vec<String> {
    shapes.iter().map(ExponentShape::render).collect()
}

pub const DEFAULT_MERSENNE_EXPONENTS: [u64; 7] = [2, 3, 5, 7, 13, 17, 19];

fn even_perfect(p: u64) -> u64 {
    (1u64 << (p - 1)) * ((1u64 << p) - 1)
}

// Shapes of even perfect numbers: (q - 1, 1) for a Mersenne exponent q,
// and (1, 1) for 6.
fn even_perfect_exponent(shape: &ExponentShape) -> Option<u64> {
    match shape.exponents() {
        [e, 1] => {
            let q = e + 1;
            (q < 64 && arith::is_prime(q) && arith::is_prime((1u64 << q) - 1)).then_some(q)
        }
        _ => None,
    }
}

/// For each Mersenne exponent `p`, `2^(p-1) (2^p - 1)` has `T(T*(n)) = n^k`
/// with `k = 3(2p - 1)`, no other even perfect number has that order, and
/// the two-prime solutions are exactly `((2p-1)/j - 1)/2, (3j - 1)/2` for
/// odd `j | 2p - 1`.
pub fn verify_even_perfect_order(mersenne_exponents: &[u64]) -> Result<VerificationOutcome> {
    if mersenne_exponents.is_empty() {
        return Err(Error::InvalidArgument("no Mersenne exponents given".into()));
    }
    for &p in mersenne_exponents {
        if !(2..=32).contains(&p) || !arith::is_prime(p) || !arith::is_prime((1u64 << p) - 1) {
            return Err(Error::InvalidArgument(format!("2^{p} - 1 is not a Mersenne prime in range")));
        }
    }
    let mut counterexamples = Vec::new();
    let mut checked = 0u64;
    for &p in mersenne_exponents {
        let k = 3 * (2 * p - 1);
        let n = arith::factorize(even_perfect(p))?;

        checked += 1;
        let order = classify::t0tstar_order(&n);
        if order != Some(Nat::from(k)) {
            counterexamples.push(Counterexample::new(
                Subject::Number(n.clone()),
                format!("order {order:?}, expected {k}"),
            ));
        }

        let solved = shapes::solve_t0tstar(k)?;
        checked += 1;
        let perfect_shapes: Vec<u64> = solved
            .shapes()
            .iter()
            .filter_map(even_perfect_exponent)
            .collect();
        if perfect_shapes != [p] {
            counterexamples.push(Counterexample::new(
                Subject::Parameter(p),
                format!("even perfect shapes of order {k} come from exponents {perfect_shapes:?}"),
            ));
        }
        for &q in mersenne_exponents {
            if q == p {
                continue;
            }
            checked += 1;
            let other = arith::factorize(even_perfect(q))?;
            if classify::t0tstar_order(&other) == Some(Nat::from(k)) {
                counterexamples.push(Counterexample::new(
                    Subject::Number(other),
                    format!("also has order {k}"),
                ));
            }
        }

        checked += 1;
        let m = 2 * p - 1;
        let mut param: Vec<ExponentShape> = Vec::new();
        for j in (1..=m).step_by(2).filter(|j| m % j == 0) {
            let a1 = (2 * p - (j + 1)) / (2 * j);
            let a2 = (3 * j - 1) / 2;
            if a1 == 0 {
                continue;
            }
            if (2 * a1 + 1) * (2 * a2 + 1) != 3 * m {
                counterexamples.push(Counterexample::new(
                    Subject::Exponents(vec![a1, a2]),
                    format!("(2α1+1)(2α2+1) != 3(2p-1) for p = {p}, j = {j}"),
                ));
            }
            param.push(ExponentShape::new(vec![a1, a2])?);
        }
        param.sort();
        param.dedup();
        let two_prime: Vec<ExponentShape> = solved.shapes().into_iter().filter(|s| s.len() == 2).collect();
        if param != two_prime {
            counterexamples.push(Counterexample::new(
                Subject::Parameter(p),
                format!(
                    "parametrized {:?} vs solved {:?}",
                    render_all(&param),
                    render_all(&two_prime)
                ),
            ));
        }
    }
    Ok(VerificationOutcome::new(
        "even-perfect",
        format!("Mersenne exponents {mersenne_exponents:?}"),
        checked,
        counterexamples,
    ))
}

/// The `T_e(T_e(n)) = n^k` catalog: `k` and its two-prime shapes.
pub const SUPERPERFECT_CATALOG: [(u64, &[[u64; 2]]); 10] = [
    (20, &[[3, 3]]),
    (24, &[[2, 2]]),
    (32, &[[4, 4]]),
    (48, &[[16, 16]]),
    (64, &[[64, 64]]),
    (110, &[[93, 93]]),
    (168, &[[6, 16], [27, 27]]),
    (216, &[[14, 14]]),
    (234, &[[10, 10]]),
    (252, &[[8, 8]]),
];

/// Recomputes the worked examples: the superperfect catalog on primes
/// (2, 3), the `(p q)^(2^m)` family of order `8(m + 2)`, the order-13
/// `T_e` examples, the `(p q r)^α` family with order a multiple of 6, and the
/// two divisibility case analyses behind `(p q)^10` and `(p q)^14`.
pub fn verify_examples_catalog() -> Result<VerificationOutcome> {
    let mut tally = Tally::default();

    for (k, shapes) in SUPERPERFECT_CATALOG {
        for exps in shapes {
            tally.order(exps, &[2, 3], k, true)?;
        }
    }
    for m in [1u32, 2, 4] {
        let prime_pair = arith::is_prime(m as u64 + 1) && arith::is_prime((1u64 << (m + 1)) - 1);
        tally.expect(prime_pair, Subject::Parameter(m as u64), "m + 1 or 2^(m+1) - 1 is not prime");
        let a = 1u64 << m;
        tally.order(&[a, a], &[2, 3], 8 * (m as u64 + 2), true)?;
    }
    tally.order(&[18, 18], &[2, 3], 13, false)?;
    tally.order(&[9, 9, 9], &[2, 3, 5], 13, false)?;

    // (p1 p2 p3)^α has T_e exponent σ(α) d(α)^2
    let mut six_k = 0;
    for alpha in 1..=100u64 {
        let e = brute_sigma(alpha) * (brute_divisors(alpha).len() as u64).pow(2);
        if e % (6 * alpha) == 0 {
            six_k += 1;
            tally.order(&[alpha; 3], &[2, 3, 5], e / alpha, false)?;
        }
    }
    tally.expect(six_k > 0, Subject::Parameter(6), "no (p q r)^α of order 6k below 100");

    // (p1 p2)^(2p) has T_e exponent 12 (p + 1)
    for p in (3..60u64).filter(|&p| arith::is_prime(p)) {
        let f = Factorization::from_small(&[(2, 2 * p), (3, 2 * p)])?;
        let image = products::e_divisor_product(&f)?;
        let ok = image.exponents().all(|e| *e == Nat::from(12 * (p + 1)));
        tally.expect(ok, Subject::Parameter(p), format!("T_e((p q)^{}) = {image}", 2 * p));
    }

    // p = 2^m q - 1 prime dividing 2^(m+3) - 1
    let divisibility = |q: u64| -> Vec<(u64, u64)> {
        (1..=56u32)
            .filter_map(|m| {
                let p = (q << m) - 1;
                let top = (1u64 << (m + 3)) - 1;
                (arith::is_prime(p) && top % p == 0).then_some((p, top / p))
            })
            .collect()
    };
    // the reduced forms (q y - 8) p = 8 - q
    let reduced = |q: i64| -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        for p in (2..1000u64).filter(|&p| arith::is_prime(p)) {
            for y in 1..1000i64 {
                if (q * y - 8) * p as i64 == 8 - q {
                    out.push((p, y as u64));
                }
            }
        }
        out
    };
    let cases: [(u64, &[(u64, u64)]); 4] = [(3, &[(5, 3)]), (1, &[(7, 9)]), (5, &[]), (7, &[])];
    for (q, expected) in cases {
        let found = divisibility(q);
        tally.expect(
            found == expected,
            Subject::Parameter(q),
            format!("divisibility search found {found:?}, expected {expected:?}"),
        );
        let found = reduced(q as i64);
        tally.expect(
            found == expected,
            Subject::Parameter(q),
            format!("({q} y - 8) p = {} has solutions {found:?}, expected {expected:?}", 8 - q as i64),
        );
    }
    tally.order(&[10, 10], &[2, 3], 234, true)?;
    tally.order(&[14, 14], &[2, 3], 216, true)?;

    Ok(VerificationOutcome::new(
        "catalog",
        "worked examples".to_string(),
        tally.checked,
        tally.counterexamples,
    ))
}

#[derive(Default)]
struct Tally {
    checked: u64,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn expect(&mut self, ok: bool, subject: Subject, reason: impl Into<String>) {
        self.checked += 1;
        if !ok {
            self.counterexamples.push(Counterexample::new(subject, reason));
        }
    }

    fn order(&mut self, exps: &[u64], primes: &[u64], k: u64, superperfect: bool) -> Result<()> {
        let f = ExponentShape::new(exps.to_vec())?.instantiate(primes)?;
        let got = if superperfect {
            classify::mult_e_superperfect_order(&f)?
        } else {
            classify::mult_e_perfect_order(&f)?
        };
        self.expect(
            got == Some(Nat::from(k)),
            Subject::Exponents(exps.to_vec()),
            format!("order {got:?}, expected {k}"),
        );
        Ok(())
    }
}

/// Parameters for [`run_by_id`]; unset fields take the defaults below.
#[derive(Clone, Debug, Default)]
pub struct LabParams {
    pub limit: Option<u64>,
    pub a_limit: Option<u64>,
    pub k_max: Option<u64>,
    pub r_max: Option<usize>,
    pub alpha_max: Option<u64>,
    pub primes: Option<Vec<u64>>,
    pub mersenne: Option<Vec<u64>>,
    pub instances: Option<Vec<Vec<u64>>>,
}

/// Instances for the bound check: every `T_e` solution with all exponents
/// `>= 3` for `k` in `[2, k_max]` inside the box.
pub fn bound_instances(k_max: u64, r_max: usize, alpha_max: u64) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for k in 2..=k_max {
        for sol in shapes::solve_mult_e_perfect(k, r_max, alpha_max)?.solutions {
            if sol.shape.exponents().iter().all(|&a| a >= 3) {
                out.push(sol.shape.exponents().to_vec());
            }
        }
    }
    Ok(out)
}

pub fn run_by_id(id: &str, params: &LabParams) -> Result<VerificationOutcome> {
    match id {
        "sandor" => verify_sandor_equivalence(params.limit.unwrap_or(100_000)),
        "harmonic" => verify_harmonic_theorems(params.limit.unwrap_or(100_000)),
        "k-perfect-lift" => verify_k_perfect_lift(params.a_limit.unwrap_or(10_000)),
        "gcd-form" => {
            let primes = params
                .primes
                .clone()
                .unwrap_or_else(|| (2..=100).filter(|&p| arith::is_prime(p)).collect());
            verify_gcd_characterization(&primes, params.r_max.unwrap_or(3), params.alpha_max.unwrap_or(60))
        }
        "bounds" => {
            let instances = match &params.instances {
                Some(list) => list.clone(),
                None => bound_instances(
                    params.k_max.unwrap_or(64),
                    params.r_max.unwrap_or(3),
                    params.alpha_max.unwrap_or(100),
                )?,
            };
            verify_bounds(&instances)
        }
        "t0tstar-family" => verify_t0tstar_family(params.k_max.unwrap_or(500)),
        "even-perfect" => verify_even_perfect_order(
            params.mersenne.as_deref().unwrap_or(&DEFAULT_MERSENNE_EXPONENTS),
        ),
        "catalog" => verify_examples_catalog(),
        _ => Err(Error::InvalidArgument(format!(
            "unknown theorem id {id:?}; expected one of {THEOREM_IDS:?}"
        ))),
    }
}
