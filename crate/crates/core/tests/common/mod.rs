//! Value-domain brute force shared by the integration tests. Nothing here
//! calls into the library.

#![allow(dead_code)]

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn fast_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn sigma(n: u64) -> u64 {
    fast_divisors(n).iter().sum()
}

pub fn tau(n: u64) -> u64 {
    fast_divisors(n).len() as u64
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(p, v_p(n))` for every prime dividing `n`, by trial division.
pub fn valuations(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn valuation(mut n: u64, p: u64) -> u64 {
    let mut a = 0;
    while n % p == 0 {
        n /= p;
        a += 1;
    }
    a
}

/// Divisors `d` of `n` with `v_p(d) | v_p(n)` and `v_p(d) >= 1` for every
/// prime `p | n`.
pub fn e_divisors(n: u64) -> Vec<u64> {
    let vals = valuations(n);
    fast_divisors(n)
        .into_iter()
        .filter(|&d| {
            vals.iter().all(|&(p, a)| {
                let b = valuation(d, p);
                b >= 1 && a % b == 0
            })
        })
        .collect()
}

/// Exponent of each prime of `n` in the product of `ds`.
pub fn product_exponents(n: u64, ds: &[u64]) -> Vec<(u64, u64)> {
    valuations(n)
        .into_iter()
        .map(|(p, _)| (p, ds.iter().map(|&d| valuation(d, p)).sum()))
        .collect()
}

/// Unordered factorizations of `n` into parts `>= min`, counted by plain
/// recursion.
pub fn count_partitions(n: u64, min: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    (min.max(2)..=n)
        .filter(|d| n % d == 0)
        .map(|d| count_partitions(n / d, d))
        .sum()
}
