//! Exponent shapes and the exact searches that produce them.
//!
//! Every class built from `T`, `T*` and `T_e` depends only on the multiset
//! of exponents of `n`, so solutions are reported as [`ExponentShape`]s.
//! The `T(T*(n)) = n^k` family is solved completely through the exponent
//! equation `2^r ∏ (α_i 2^(r-1) + 1) = 4k`; the `T_e` families are searched
//! inside an explicit box, and an empty answer only speaks for that box.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;

use crate::arith::{self, Factorization, Nat};
use crate::error::{Error, Result};

/// Prime-agnostic multiset of positive exponents, stored descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentShape {
    exponents: Vec<u64>,
}

impl ExponentShape {
    pub fn new(mut exponents: Vec<u64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidArgument("a shape needs at least one exponent".into()));
        }
        if exponents.contains(&0) {
            return Err(Error::InvalidArgument("shape exponents must be positive".into()));
        }
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { exponents })
    }

    /// Shape of a factorization other than 1.
    pub fn of(f: &Factorization) -> Result<Self> {
        let exps = f
            .exponents()
            .map(arith::exponent_u64)
            .collect::<Result<Vec<_>>>()?;
        Self::new(exps)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Number of distinct primes, `r`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Places the i-th exponent on the i-th prime. The primes must be
    /// distinct, in any order.
    pub fn instantiate(&self, primes: &[u64]) -> Result<Factorization> {
        if primes.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "shape {self} needs {} primes, got {}",
                self.len(),
                primes.len()
            )));
        }
        let mut pairs: Vec<(u64, Nat)> = primes
            .iter()
            .zip(&self.exponents)
            .map(|(&p, &a)| (p, Nat::from(a)))
            .collect();
        pairs.sort_by_key(|(p, _)| *p);
        Factorization::from_pairs(pairs)
    }

    /// Instantiation on 2, 3, 5, ... with the largest exponent on 2.
    pub fn instantiate_smallest(&self) -> Factorization {
        let primes: Vec<u64> = arith::small_primes()[..self.len()].to_vec();
        self.instantiate(&primes).expect("small primes are distinct")
    }

    /// Canonical form: `p1^17`, `p1*p2`, `p1^16*p2^6`.
    pub fn render(&self) -> String {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                if e == 1 {
                    format!("p{}", i + 1)
                } else {
                    format!("p{}^{}", i + 1, e)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Groups equal exponents: `(p1*p2)^10`, `p1^16*p2^6`, `p1*p2`.
    pub fn render_grouped(&self) -> String {
        let mut groups = Vec::new();
        let mut i = 0;
        while i < self.exponents.len() {
            let e = self.exponents[i];
            let j = i + self.exponents[i..].iter().take_while(|&&x| x == e).count();
            let primes = (i..j).map(|t| format!("p{}", t + 1)).collect::<Vec<_>>().join("*");
            groups.push(match (e, j - i) {
                (1, _) => primes,
                (_, 1) => format!("{primes}^{e}"),
                _ => format!("({primes})^{e}"),
            });
            i = j;
        }
        groups.join("*")
    }
}

impl Ord for ExponentShape {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for ExponentShape {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses the canonical rendering only.
impl FromStr for ExponentShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(s.to_string());
        let mut exps = Vec::new();
        for (i, factor) in s.split('*').enumerate() {
            let (index, exp) = match factor.split_once('^') {
                Some((index, exp)) => (index, exp.parse::<u64>().map_err(|_| bad())?),
                None => (factor, 1),
            };
            if index != format!("p{}", i + 1) {
                return Err(bad());
            }
            exps.push(exp);
        }
        let shape = ExponentShape::new(exps).map_err(|_| bad())?;
        if shape.render() != s {
            return Err(bad());
        }
        Ok(shape)
    }
}

/// Which characterization a solution answers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `T(T*(n)) = n^k`
    T0TStar,
    /// `T_e(n) = n^k`
    MultEPerfect,
    /// `T_e(T_e(n)) = n^k`
    MultESuperperfect,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::T0TStar => "t0tstar",
            Family::MultEPerfect => "e-perfect",
            Family::MultESuperperfect => "e-superperfect",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Family::T0TStar, Family::MultEPerfect, Family::MultESuperperfect]
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

/// A shape together with the residues that prove it solves the family.
///
/// For `t0tstar` the witness lists the factors `α_i 2^(r-1) + 1`; for the
/// `T_e` families it lists the exponents of `T_e(n)`. Both follow the shape's
/// exponent order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeSolution {
    pub k: u64,
    pub shape: ExponentShape,
    pub witness: Vec<Nat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBox {
    pub r_max: usize,
    pub alpha_max: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub family: Family,
    pub k: u64,
    /// Sorted by shape, duplicate-free.
    pub solutions: Vec<ShapeSolution>,
    /// Present for bounded searches.
    pub search_box: Option<SearchBox>,
    /// Solver outputs that break a derived side condition.
    pub diagnostics: Vec<String>,
}

impl SolveReport {
    pub fn shapes(&self) -> Vec<ExponentShape> {
        self.solutions.iter().map(|s| s.shape.clone()).collect()
    }
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `α_i 2^(r-1) + 1` for each exponent of the shape.
pub fn t0tstar_factors(shape: &ExponentShape) -> Vec<Nat> {
    let half = Nat::from(1u32) << (shape.len() - 1);
    shape.exponents().iter().map(|&a| Nat::from(a) * &half + 1u32).collect()
}

fn divisors_of(n: u64) -> Vec<u64> {
    arith::divisors(&arith::factorize(n).expect("n > 0")).expect("n fits")
}

// Ordered factorizations of `target` into `parts` factors, each
// `≡ 1 (mod step)` and larger than `step`.
fn ordered_factorizations(target: u64, parts: usize, step: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    let admissible = |f: u64| f > step && (f - 1) % step == 0;
    if parts == 1 {
        if admissible(target) {
            prefix.push(target);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    for d in divisors_of(target) {
        if admissible(d) {
            prefix.push(d);
            ordered_factorizations(target / d, parts - 1, step, prefix, out);
            prefix.pop();
        }
    }
}

/// Solutions of the exponent equation with exactly `r` primes.
pub fn t0tstar_solutions_with_r(k: u64, r: usize) -> Vec<ShapeSolution> {
    let Some(four_k) = k.checked_mul(4) else {
        return Vec::new();
    };
    if r == 0 || r >= 64 || (1u64 << r) > four_k || four_k % (1u64 << r) != 0 {
        return Vec::new();
    }
    let target = four_k >> r;
    let step = 1u64 << (r - 1);
    let mut tuples = Vec::new();
    ordered_factorizations(target, r, step, &mut Vec::with_capacity(r), &mut tuples);
    let mut unique = BTreeMap::new();
    for factors in tuples {
        let shape = ExponentShape::new(factors.iter().map(|f| (f - 1) / step).collect())
            .expect("factors exceed step");
        unique.entry(shape).or_insert(());
    }
    unique
        .into_keys()
        .map(|shape| ShapeSolution {
            k,
            witness: t0tstar_factors(&shape),
            shape,
        })
        .collect()
}

/// Every shape with `T(T*(n)) = n^k`, over all `r` with `2^r <= 4k`.
pub fn solve_t0tstar(k: u64) -> Result<SolveReport> {
    check_k(k)?;
    let four_k = k
        .checked_mul(4)
        .ok_or_else(|| Error::InvalidArgument(format!("k = {k} is too large")))?;
    let mut solutions = Vec::new();
    let mut r = 1;
    while r < 64 && (1u64 << r) <= four_k {
        solutions.extend(t0tstar_solutions_with_r(k, r));
        r += 1;
    }
    solutions.sort_by(|a, b| a.shape.cmp(&b.shape));
    solutions.dedup_by(|a, b| a.shape == b.shape);
    Ok(SolveReport {
        family: Family::T0TStar,
        k,
        solutions,
        search_box: None,
        diagnostics: Vec::new(),
    })
}

// Calls `visit` on every non-increasing tuple of length `len` whose entries
// lie in `1..=max`, each starting at or below `first_max`.
fn for_each_tuple(len: usize, first_max: u64, prefix: &mut Vec<u64>, visit: &mut dyn FnMut(&[u64])) {
    if len == 0 {
        visit(prefix);
        return;
    }
    for a in 1..=first_max {
        prefix.push(a);
        for_each_tuple(len - 1, a, prefix, visit);
        prefix.pop();
    }
}

fn exponent_tables(alpha_max: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let mut sigma = vec![0u64; alpha_max as usize + 1];
    let mut tau = vec![0u64; alpha_max as usize + 1];
    for a in 1..=alpha_max {
        let f = arith::factorize(a)?;
        sigma[a as usize] = u64::try_from(arith::sigma(&f)?).map_err(|_| Error::Overflow)?;
        tau[a as usize] = u64::try_from(arith::num_divisors(&f)).map_err(|_| Error::Overflow)?;
    }
    Ok((sigma, tau))
}

/// Exponents of `T_e` on an exponent tuple, given `σ` and `d` of each entry.
fn te_exponents(sigma: &[u64], tau: &[u64]) -> Option<Vec<u64>> {
    (0..sigma.len())
        .map(|i| {
            let mut acc = sigma[i] as u128;
            for (j, &t) in tau.iter().enumerate() {
                if j != i {
                    acc = acc.checked_mul(t as u128)?;
                }
            }
            u64::try_from(acc).ok()
        })
        .collect()
}

fn sigma_tau_u64(n: u64) -> Option<(u64, u64)> {
    let f = arith::factorize(n).ok()?;
    let s = u64::try_from(arith::sigma(&f).ok()?).ok()?;
    let t = u64::try_from(arith::num_divisors(&f)).ok()?;
    Some((s, t))
}

fn check_box(k: u64, r_max: usize, alpha_max: u64) -> Result<()> {
    check_k(k)?;
    if r_max == 0 || alpha_max == 0 {
        return Err(Error::InvalidArgument("r_max and alpha_max must be positive".into()));
    }
    Ok(())
}

fn bounded_search<F>(k: u64, r_max: usize, alpha_max: u64, test: F) -> Vec<ShapeSolution>
where
    F: Fn(&[u64]) -> Option<Vec<u64>> + Sync,
{
    let mut found: Vec<ShapeSolution> = (1..=r_max)
        .flat_map(|r| (1..=alpha_max).map(move |first| (r, first)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|(r, first)| {
            let mut local = Vec::new();
            let mut prefix = vec![first];
            for_each_tuple(r - 1, first, &mut prefix, &mut |tuple| {
                if let Some(witness) = test(tuple) {
                    local.push(ShapeSolution {
                        k,
                        shape: ExponentShape::new(tuple.to_vec()).expect("positive tuple"),
                        witness: witness.into_iter().map(Nat::from).collect(),
                    });
                }
            });
            local
        })
        .collect();
    found.sort_by(|a, b| a.shape.cmp(&b.shape));
    found
}

/// Bounded search for `T_e(n) = n^k`: every exponent tuple with `r <= r_max`
/// and entries `<= alpha_max` satisfying `σ(α_i) ∏_{j≠i} d(α_j) = k α_i`.
///
/// For prime `k` each solution is also checked against the equivalent
/// gcd form and the side condition `2^(r-1) <= ∏_{j≠i} d(α_j) < k`; any
/// breach lands in `diagnostics` rather than being pruned.
pub fn solve_mult_e_perfect(k: u64, r_max: usize, alpha_max: u64) -> Result<SolveReport> {
    check_box(k, r_max, alpha_max)?;
    let (sigma, tau) = exponent_tables(alpha_max)?;
    let solutions = bounded_search(k, r_max, alpha_max, |tuple| {
        let s: Vec<u64> = tuple.iter().map(|&a| sigma[a as usize]).collect();
        let t: Vec<u64> = tuple.iter().map(|&a| tau[a as usize]).collect();
        let exps = te_exponents(&s, &t)?;
        let ok = exps
            .iter()
            .zip(tuple)
            .all(|(&e, &a)| (k as u128) * (a as u128) == e as u128);
        ok.then_some(exps)
    });
    let mut diagnostics = Vec::new();
    if arith::is_prime(k) {
        for sol in &solutions {
            if let Some(reason) = gcd_form_violation(sol.shape.exponents(), k, &sigma, &tau) {
                diagnostics.push(format!("{}: {reason}", sol.shape));
            }
        }
    }
    Ok(SolveReport {
        family: Family::MultEPerfect,
        k,
        solutions,
        search_box: Some(SearchBox { r_max, alpha_max }),
        diagnostics,
    })
}

/// Checks the gcd form of a prime-order solution; `None` when it holds.
pub(crate) fn gcd_form_violation(alphas: &[u64], p: u64, sigma: &[u64], tau: &[u64]) -> Option<String> {
    let r = alphas.len();
    for (i, &a) in alphas.iter().enumerate() {
        let s = sigma[a as usize];
        let g = a.gcd(&s);
        let others: u128 = alphas
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &b)| tau[b as usize] as u128)
            .product();
        if s as u128 != g as u128 * p as u128 {
            return Some(format!("σ({a}) = {s} is not gcd({a}, {s}) * {p}"));
        }
        if a as u128 != g as u128 * others {
            return Some(format!("{a} is not {g} * {others}"));
        }
        if r >= 2 && !((1u128 << (r - 1)) <= others && others < p as u128) {
            return Some(format!("product of other divisor counts {others} outside [2^{}, {p})", r - 1));
        }
    }
    None
}

/// Bounded search for `T_e(T_e(n)) = n^k`, applying the exponent map twice.
///
/// For a single prime this is `σ(σ(a)) = k a`: the lift from `a` to `p^a`
/// needs `a` to be `k`-superperfect, not `k`-perfect.
pub fn solve_mult_e_superperfect(k: u64, r_max: usize, alpha_max: u64) -> Result<SolveReport> {
    check_box(k, r_max, alpha_max)?;
    let (sigma, tau) = exponent_tables(alpha_max)?;
    let solutions = bounded_search(k, r_max, alpha_max, |tuple| {
        let s: Vec<u64> = tuple.iter().map(|&a| sigma[a as usize]).collect();
        let t: Vec<u64> = tuple.iter().map(|&a| tau[a as usize]).collect();
        let first = te_exponents(&s, &t)?;
        let (s2, t2): (Vec<u64>, Vec<u64>) = first
            .iter()
            .map(|&e| sigma_tau_u64(e))
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .unzip();
        let second = te_exponents(&s2, &t2)?;
        let ok = second
            .iter()
            .zip(tuple)
            .all(|(&e, &a)| (k as u128) * (a as u128) == e as u128);
        ok.then_some(first)
    });
    Ok(SolveReport {
        family: Family::MultESuperperfect,
        k,
        solutions,
        search_box: Some(SearchBox { r_max, alpha_max }),
        diagnostics: Vec::new(),
    })
}

/// An unordered factorization into parts `>= 2`, stored ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiplicativePartition {
    parts: Vec<u64>,
}

impl MultiplicativePartition {
    pub fn new(mut parts: Vec<u64>) -> Self {
        parts.sort_unstable();
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn product(&self) -> u64 {
        self.parts.iter().product()
    }
}

impl fmt::Display for MultiplicativePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

fn collect_partitions(rem: u64, divs: &[u64], start: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    for (idx, &d) in divs.iter().enumerate().skip(start) {
        if d > rem {
            break;
        }
        if rem % d != 0 {
            continue;
        }
        if d == rem {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
        } else if d.checked_mul(d).is_some_and(|sq| sq <= rem) {
            prefix.push(d);
            collect_partitions(rem / d, divs, idx, prefix, out);
            prefix.pop();
        }
    }
}

/// Unordered factorizations of `n`, including `{n}` itself, optionally
/// restricted to exactly `num_parts` parts each `≡ residue (mod modulus)`.
/// Ordered by part count, then lexicographically.
pub fn multiplicative_partitions(
    n: u64,
    num_parts: Option<usize>,
    congruence: Option<(u64, u64)>,
) -> Result<Vec<MultiplicativePartition>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    if let Some((0, _)) = congruence {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let divs: Vec<u64> = divisors_of(n).into_iter().filter(|&d| d >= 2).collect();
    let mut raw = Vec::new();
    collect_partitions(n, &divs, 0, &mut Vec::new(), &mut raw);
    let mut out: Vec<MultiplicativePartition> = raw
        .into_iter()
        .filter(|parts| num_parts.is_none_or(|m| parts.len() == m))
        .filter(|parts| {
            congruence.is_none_or(|(q, res)| parts.iter().all(|&d| d % q == res % q))
        })
        .map(MultiplicativePartition::new)
        .collect();
    out.sort_by(|a, b| a.parts.len().cmp(&b.parts.len()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(out)
}

/// Which structural family of `k` drove a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KFamily {
    /// `k` prime: only `p^(2k-1)`.
    Prime,
    /// `k = 2^m`: only `p^(2k-1)`.
    PowerOfTwo,
    /// `k = q^j`, `q` an odd prime, `j >= 2`: `p^(2k-1)` and the pairs
    /// `((q^a - 1)/2, (q^(j-a) - 1)/2)`.
    OddPrimePower,
    /// `k` odd with two distinct prime factors or more: `p^(2k-1)` and
    /// `((d - 1)/2, (k/d - 1)/2)` for divisors `2 < d < k`.
    OddComposite,
    /// `k = 2^m o` with `m >= 1`, `o > 1` odd: `p^(2k-1)` and one prime per
    /// part of each `(m+2)`-part partition of `o` into parts `≡ 1 mod 2^(m+1)`.
    EvenMixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub family: KFamily,
    pub solutions: Vec<ShapeSolution>,
}

impl Prediction {
    pub fn shapes(&self) -> Vec<ExponentShape> {
        self.solutions.iter().map(|s| s.shape.clone()).collect()
    }
}

/// The `T(T*(n)) = n^k` shapes built directly from the structure of `k`,
/// without searching the exponent equation.
pub fn predicted_shapes(k: u64) -> Result<Prediction> {
    check_k(k)?;
    let too_large = || Error::InvalidArgument(format!("k = {k} is too large"));
    let single = k.checked_mul(2).ok_or_else(too_large)? - 1;
    let mut exps: Vec<Vec<u64>> = vec![vec![single]];
    let m = k.trailing_zeros();
    let odd = k >> m;
    let fk = arith::factorize(k)?;

    let family = if arith::is_prime(k) {
        KFamily::Prime
    } else if odd == 1 {
        KFamily::PowerOfTwo
    } else if m == 0 && fk.num_primes() == 1 {
        let q = odd_prime(&fk);
        let j = arith::exponent_u64(&fk.pairs()[0].1)? as u32;
        for a in 1..j {
            exps.push(vec![(q.pow(a) - 1) / 2, (q.pow(j - a) - 1) / 2]);
        }
        KFamily::OddPrimePower
    } else if m == 0 {
        for d in divisors_of(k) {
            if 2 < d && d < k {
                exps.push(vec![(d - 1) / 2, (k / d - 1) / 2]);
            }
        }
        KFamily::OddComposite
    } else {
        if m + 1 >= 64 {
            return Err(too_large());
        }
        let modulus = 1u64 << (m + 1);
        let parts = m as usize + 2;
        for part in multiplicative_partitions(odd, Some(parts), Some((modulus, 1)))? {
            exps.push(part.parts().iter().map(|d| (d - 1) / modulus).collect());
        }
        KFamily::EvenMixed
    };

    let mut shapes: Vec<ExponentShape> = exps
        .into_iter()
        .map(ExponentShape::new)
        .collect::<Result<_>>()?;
    shapes.sort();
    shapes.dedup();
    Ok(Prediction {
        family,
        solutions: shapes
            .into_iter()
            .map(|shape| ShapeSolution {
                k,
                witness: t0tstar_factors(&shape),
                shape,
            })
            .collect(),
    })
}

fn odd_prime(f: &Factorization) -> u64 {
    f.pairs()[0].0
}
