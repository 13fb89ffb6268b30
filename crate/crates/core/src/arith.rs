//! Elementary arithmetic: primality, factorization and the classical
//! divisor functions, all exact.
//!
//! Integers enter as `u64`; anything derived from them (divisor sums,
//! exponents of composed divisor maps) is carried as [`Nat`].

use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Nat = BigUint;

const SIEVE_LIMIT: u32 = 1 << 16;

static SMALL_PRIMES: LazyLock<Vec<u64>> = LazyLock::new(|| {
    let n = SIEVE_LIMIT as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::with_capacity(6542);
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
});

/// Primes below 2^16, ascending.
pub fn small_primes() -> &'static [u64] {
    &SMALL_PRIMES
}

/// An integer in canonical prime-exponent form.
///
/// Primes are strictly increasing and every exponent is at least one. The
/// empty factorization is the integer 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    pairs: Vec<(u64, Nat)>,
}

impl Factorization {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization after checking the canonical-form invariants.
    pub fn from_pairs(pairs: Vec<(u64, Nat)>) -> Result<Self> {
        let mut prev = 0u64;
        for (p, a) in &pairs {
            if *p <= prev {
                return Err(Error::InvalidFactorization(format!(
                    "primes must be strictly increasing, got {p} after {prev}"
                )));
            }
            if !is_prime(*p) {
                return Err(Error::InvalidFactorization(format!("{p} is not prime")));
            }
            if a.is_zero() {
                return Err(Error::InvalidFactorization(format!("zero exponent on {p}")));
            }
            prev = *p;
        }
        Ok(Self { pairs })
    }

    pub fn from_small(pairs: &[(u64, u64)]) -> Result<Self> {
        Self::from_pairs(pairs.iter().map(|&(p, a)| (p, Nat::from(a))).collect())
    }

    pub(crate) fn from_pairs_unchecked(pairs: Vec<(u64, Nat)>) -> Self {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(pairs.iter().all(|(_, a)| !a.is_zero()));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(u64, Nat)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.pairs.iter().map(|(p, _)| *p)
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Nat> + '_ {
        self.pairs.iter().map(|(_, a)| a)
    }

    /// Number of distinct primes, `r`.
    pub fn num_primes(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Same primes, new exponents. Panics if the lengths differ or an
    /// exponent is zero.
    pub fn with_exponents(&self, exponents: Vec<Nat>) -> Self {
        assert_eq!(exponents.len(), self.pairs.len());
        let pairs = self
            .pairs
            .iter()
            .zip(exponents)
            .map(|((p, _), a)| {
                assert!(!a.is_zero(), "zero exponent");
                (*p, a)
            })
            .collect();
        Self { pairs }
    }

    /// `n^k`, computed on exponents.
    pub fn pow(&self, k: &Nat) -> Self {
        if k.is_zero() {
            return Self::one();
        }
        Self {
            pairs: self.pairs.iter().map(|(p, a)| (*p, a * k)).collect(),
        }
    }

    /// Product of two factorizations.
    pub fn mul(&self, other: &Self) -> Self {
        let mut pairs = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.pairs.len() || j < other.pairs.len() {
            match (self.pairs.get(i), other.pairs.get(j)) {
                (Some((p, a)), Some((q, b))) if p == q => {
                    pairs.push((*p, a + b));
                    i += 1;
                    j += 1;
                }
                (Some((p, a)), Some((q, _))) if p < q => {
                    pairs.push((*p, a.clone()));
                    i += 1;
                }
                (Some(_), Some((q, b))) | (None, Some((q, b))) => {
                    pairs.push((*q, b.clone()));
                    j += 1;
                }
                (Some((p, a)), None) => {
                    pairs.push((*p, a.clone()));
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self { pairs }
    }

    /// The integer value, if it fits in 64 bits.
    pub fn value(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for (p, a) in &self.pairs {
            let a = a.to_u32()?;
            acc = acc.checked_mul(p.checked_pow(a)?)?;
        }
        Some(acc)
    }

    /// The integer value as a [`Nat`]. Fails when an exponent exceeds
    /// `u32`, which would not fit in memory anyway.
    pub fn value_big(&self) -> Result<Nat> {
        let mut acc = Nat::one();
        for (p, a) in &self.pairs {
            acc *= Nat::from(*p).pow(exponent_u32(a)?);
        }
        Ok(acc)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, a)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if a.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{a}")?;
            }
        }
        Ok(())
    }
}

// Serialized as [["p", "a"], ...] with decimal strings.
impl Serialize for Factorization {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> = self
            .pairs
            .iter()
            .map(|(p, a)| [p.to_string(), a.to_string()])
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Factorization {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<[String; 2]>::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(raw.len());
        for [p, a] in raw {
            let p: u64 = p.parse().map_err(D::Error::custom)?;
            let a: Nat = a.parse().map_err(D::Error::custom)?;
            pairs.push((p, a));
        }
        Factorization::from_pairs(pairs).map_err(D::Error::custom)
    }
}

pub(crate) fn exponent_u32(a: &Nat) -> Result<u32> {
    a.to_u32().ok_or_else(|| Error::ExponentTooLarge(a.to_string()))
}

pub(crate) fn exponent_u64(a: &Nat) -> Result<u64> {
    a.to_u64().ok_or_else(|| Error::ExponentTooLarge(a.to_string()))
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// The first twelve primes as bases decide every n < 3.3 * 10^24.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho. `n` must be odd and composite.
fn rho_split(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn push_large_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho_split(n);
    push_large_factors(d, out);
    push_large_factors(n / d, out);
}

/// Canonical factorization of `n`. Rejects zero.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut pairs: Vec<(u64, Nat)> = Vec::new();
    let mut m = n;
    for &p in SMALL_PRIMES.iter() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut a = 0u64;
            while m % p == 0 {
                m /= p;
                a += 1;
            }
            pairs.push((p, Nat::from(a)));
        }
    }
    if m > 1 {
        // Every prime below 2^16 is gone, so a cofactor below 2^32 is prime.
        if m < (1u64 << 32) {
            pairs.push((m, Nat::one()));
        } else {
            let mut large = Vec::new();
            push_large_factors(m, &mut large);
            large.sort_unstable();
            for p in large {
                match pairs.last_mut() {
                    Some((q, a)) if *q == p => *a += 1u32,
                    _ => pairs.push((p, Nat::one())),
                }
            }
        }
    }
    Ok(Factorization::from_pairs_unchecked(pairs))
}

/// Sum of divisors, `∏ (p^(a+1) - 1) / (p - 1)`.
pub fn sigma(f: &Factorization) -> Result<Nat> {
    let mut acc = Nat::one();
    for (p, a) in f.pairs() {
        let a = exponent_u32(a)?;
        let p = Nat::from(*p);
        acc *= (p.pow(a + 1) - 1u32) / (p - 1u32);
    }
    Ok(acc)
}

/// Number of divisors, `∏ (a + 1)`.
pub fn num_divisors(f: &Factorization) -> Nat {
    f.exponents().map(|a| a + 1u32).product()
}

/// All divisors in ascending order.
pub fn divisors(f: &Factorization) -> Result<Vec<u64>> {
    f.value().ok_or(Error::Overflow)?;
    let mut out = vec![1u64];
    for (p, a) in f.pairs() {
        let a = exponent_u32(a)?;
        let len = out.len();
        let mut pk = 1u64;
        for _ in 0..a {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

pub fn gcd(a: &Nat, b: &Nat) -> Nat {
    a.gcd(b)
}

/// `σ(n)` for a machine integer.
pub fn sigma_of(n: u64) -> Result<Nat> {
    sigma(&factorize(n)?)
}

/// `d(n)` for a machine integer.
pub fn num_divisors_of(n: u64) -> Result<Nat> {
    Ok(num_divisors(&factorize(n)?))
}

/// Divisor sums `σ(0..=limit)` by sieving; `σ(0)` is reported as 0.
pub fn sigma_table(limit: usize) -> Vec<u64> {
    let mut table = vec![0u64; limit + 1];
    for d in 1..=limit {
        let mut m = d;
        while m <= limit {
            table[m] += d as u64;
            m += d;
        }
    }
    table
}
