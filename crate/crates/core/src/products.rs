//! Divisor-product maps `T`, `T*`, `T_e` and the exponential-divisor
//! statistics, computed on exponents without materializing values.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{self, exponent_u32, exponent_u64, Factorization, Nat};
use crate::error::{Error, Result};

/// Exact non-negative rational exponent.
pub type QExp = Ratio<Nat>;

/// A factorization whose exponents are positive rationals in lowest terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QFactorization {
    pairs: Vec<(u64, QExp)>,
}

impl QFactorization {
    pub fn pairs(&self) -> &[(u64, QExp)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Raises every exponent by the rational power `e`.
    pub fn pow(&self, e: &QExp) -> Self {
        if e.is_zero() {
            return Self::default();
        }
        Self {
            pairs: self.pairs.iter().map(|(p, a)| (*p, a * e)).collect(),
        }
    }

    /// Lossless conversion; fails unless every exponent is an integer.
    pub fn to_factorization(&self) -> Result<Factorization> {
        let pairs = self
            .pairs
            .iter()
            .map(|(p, a)| {
                if a.is_integer() {
                    Ok((*p, a.to_integer()))
                } else {
                    Err(Error::NonIntegerExponent(a.to_string()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization::from_pairs_unchecked(pairs))
    }
}

impl From<&Factorization> for QFactorization {
    fn from(f: &Factorization) -> Self {
        Self {
            pairs: f
                .pairs()
                .iter()
                .map(|(p, a)| (*p, QExp::from_integer(a.clone())))
                .collect(),
        }
    }
}

impl fmt::Display for QFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, a)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if a.is_integer() {
                write!(f, "{p}^{a}")?;
            } else {
                write!(f, "{p}^({a})")?;
            }
        }
        Ok(())
    }
}

/// The three divisor-product maps that compose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorMap {
    /// Product of all divisors.
    T,
    /// Product of unitary divisors.
    TStar,
    /// Product of exponential divisors.
    TE,
}

impl DivisorMap {
    pub fn apply(self, f: &Factorization) -> Result<Factorization> {
        match self {
            DivisorMap::T => Ok(divisor_product(f)),
            DivisorMap::TStar => Ok(unitary_divisor_product(f)),
            DivisorMap::TE => e_divisor_product(f),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DivisorMap::T => "T",
            DivisorMap::TStar => "T*",
            DivisorMap::TE => "T_e",
        }
    }
}

impl fmt::Display for DivisorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivisorMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(DivisorMap::T),
            "T*" | "Tstar" | "T_star" => Ok(DivisorMap::TStar),
            "T_e" | "Te" => Ok(DivisorMap::TE),
            _ => Err(Error::Parse(s.to_string())),
        }
    }
}

/// `T(n) = n^(d(n)/2)`.
pub fn divisor_product(f: &Factorization) -> Factorization {
    let d = arith::num_divisors(f);
    // d(n) odd forces every exponent even, so the halving is exact.
    let exps = f
        .exponents()
        .map(|a| {
            let (q, r) = (a * &d).div_rem(&Nat::from(2u32));
            debug_assert!(r.is_zero());
            q
        })
        .collect();
    f.with_exponents(exps)
}

/// `τ*(n) = 2^r`.
pub fn unitary_divisor_count(f: &Factorization) -> Nat {
    Nat::one() << f.num_primes()
}

/// `T*(n) = n^(2^(r-1))`; identity on 1.
pub fn unitary_divisor_product(f: &Factorization) -> Factorization {
    if f.is_one() {
        return Factorization::one();
    }
    f.pow(&(Nat::one() << (f.num_primes() - 1)))
}

fn exponent_divisors(a: &Nat) -> Result<Vec<u64>> {
    arith::divisors(&arith::factorize(exponent_u64(a)?)?)
}

// σ and d of each exponent.
fn exponent_sigma_tau(f: &Factorization) -> Result<Vec<(Nat, Nat)>> {
    f.exponents()
        .map(|a| {
            let fa = arith::factorize(exponent_u64(a)?)?;
            Ok((arith::sigma(&fa)?, arith::num_divisors(&fa)))
        })
        .collect()
}

/// All exponential divisors `∏ p_i^(b_i)` with `b_i | a_i`, ascending by
/// value. The enumeration is exhaustive and serves as the oracle for the
/// closed forms below.
pub fn e_divisors(f: &Factorization) -> Result<Vec<Factorization>> {
    let choices = f
        .exponents()
        .map(exponent_divisors)
        .collect::<Result<Vec<_>>>()?;
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for options in &choices {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |&b| {
                    let mut next = prefix.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
    }
    let mut keyed = out
        .into_iter()
        .map(|bs| {
            let d = f.with_exponents(bs.into_iter().map(Nat::from).collect());
            Ok((d.value_big()?, d))
        })
        .collect::<Result<Vec<_>>>()?;
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, d)| d).collect())
}

/// `d_e(n) = ∏ d(a_i)`.
pub fn e_divisor_count(f: &Factorization) -> Result<Nat> {
    Ok(exponent_sigma_tau(f)?.into_iter().map(|(_, t)| t).product())
}

/// `σ_e(n) = ∏_i Σ_{b | a_i} p_i^b`.
pub fn e_divisor_sum(f: &Factorization) -> Result<Nat> {
    let mut acc = Nat::one();
    for (p, a) in f.pairs() {
        let p = Nat::from(*p);
        exponent_u32(a)?;
        let mut s = Nat::zero();
        for b in exponent_divisors(a)? {
            s += p.pow(b as u32);
        }
        acc *= s;
    }
    Ok(acc)
}

/// `S_e(n) = ∏_i Σ_{b | a_i} p_i^(a_i - b)`.
pub fn e_harmonic_s(f: &Factorization) -> Result<Nat> {
    let mut acc = Nat::one();
    for (p, a) in f.pairs() {
        let p = Nat::from(*p);
        let a32 = exponent_u32(a)?;
        let mut s = Nat::zero();
        for b in exponent_divisors(a)? {
            s += p.pow(a32 - b as u32);
        }
        acc *= s;
    }
    Ok(acc)
}

/// `T_e(n)`: the exponent of `p_i` is `σ(a_i) ∏_{j≠i} d(a_j)`.
pub fn e_divisor_product(f: &Factorization) -> Result<Factorization> {
    let st = exponent_sigma_tau(f)?;
    let exps = (0..st.len())
        .map(|i| {
            st.iter()
                .enumerate()
                .map(|(j, (s, t))| if i == j { s } else { t })
                .product::<Nat>()
        })
        .collect();
    Ok(f.with_exponents(exps))
}

/// `t(n) = ∏ p_i^(2σ(a_i)/d(a_i))`, exponents kept exact.
pub fn t_function(f: &Factorization) -> Result<QFactorization> {
    let st = exponent_sigma_tau(f)?;
    let pairs = f
        .primes()
        .zip(st)
        .map(|(p, (s, t))| (p, QExp::new(s * 2u32, t)))
        .collect();
    Ok(QFactorization { pairs })
}

/// Applies `maps` right to left, the way the composition is written.
pub fn compose(maps: &[DivisorMap], f: &Factorization) -> Result<Factorization> {
    let mut cur = f.clone();
    for map in maps.iter().rev() {
        cur = map.apply(&cur)?;
    }
    Ok(cur)
}

/// The common ratio `k` with `image = base^k`, if there is one.
pub fn power_ratio(image: &Factorization, base: &Factorization) -> Option<Nat> {
    if base.is_one() || image.num_primes() != base.num_primes() {
        return None;
    }
    let mut k: Option<Nat> = None;
    for ((p, e), (q, a)) in image.pairs().iter().zip(base.pairs()) {
        if p != q {
            return None;
        }
        let (quot, rem) = e.div_rem(a);
        if !rem.is_zero() {
            return None;
        }
        match &k {
            Some(k) if *k != quot => return None,
            Some(_) => {}
            None => k = Some(quot),
        }
    }
    k
}
