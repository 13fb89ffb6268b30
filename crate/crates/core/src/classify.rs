//! Membership predicates and order extraction for the perfect-number
//! classes built from `σ`, `T`, `T*` and `T_e`.
//!
//! Orders are only reported for `k >= 2`. The integer 1 belongs to no class.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, Factorization, Nat};
use crate::error::{Error, Result};
use crate::products::{self, power_ratio, DivisorMap};

fn at_least_two(k: Nat) -> Option<Nat> {
    (k >= Nat::from(2u32)).then_some(k)
}

fn value_u64(f: &Factorization) -> Result<u64> {
    f.value().ok_or(Error::Overflow)
}

/// `k` with `σ(n) = k n`.
pub fn perfect_order(f: &Factorization) -> Result<Option<Nat>> {
    if f.is_one() {
        return Ok(None);
    }
    let n = Nat::from(value_u64(f)?);
    let (k, r) = arith::sigma(f)?.div_rem(&n);
    Ok(if r.is_zero() { at_least_two(k) } else { None })
}

/// `k` with `σ(σ(n)) = k n`. The inner sum must itself fit in 64 bits.
pub fn superperfect_order(f: &Factorization) -> Result<Option<Nat>> {
    if f.is_one() {
        return Ok(None);
    }
    let n = Nat::from(value_u64(f)?);
    let s = arith::sigma(f)?.to_u64().ok_or(Error::Overflow)?;
    let (k, r) = arith::sigma_of(s)?.div_rem(&n);
    Ok(if r.is_zero() { at_least_two(k) } else { None })
}

/// `k` with `T(n) = n^k`.
pub fn mult_perfect_order(f: &Factorization) -> Option<Nat> {
    power_ratio(&products::divisor_product(f), f).and_then(at_least_two)
}

/// `k` with `T_e(n) = n^k`.
pub fn mult_e_perfect_order(f: &Factorization) -> Result<Option<Nat>> {
    if f.is_one() {
        return Ok(None);
    }
    let image = products::e_divisor_product(f)?;
    Ok(power_ratio(&image, f).and_then(at_least_two))
}

/// `k` with `T_e(T_e(n)) = n^k`.
pub fn mult_e_superperfect_order(f: &Factorization) -> Result<Option<Nat>> {
    if f.is_one() {
        return Ok(None);
    }
    let image = products::compose(&[DivisorMap::TE, DivisorMap::TE], f)?;
    Ok(power_ratio(&image, f).and_then(at_least_two))
}

/// The left side of `2^r ∏ (α_i 2^(r-1) + 1) = 4k`.
pub fn t0tstar_equation_value(f: &Factorization) -> Nat {
    let r = f.num_primes();
    if r == 0 {
        return Nat::zero();
    }
    let half = Nat::one() << (r - 1);
    let prod: Nat = f.exponents().map(|a| a * &half + 1u32).product();
    (Nat::one() << r) * prod
}

/// `k` with `T(T*(n)) = n^k`, read off the exponent equation and confirmed
/// by composing the maps.
pub fn t0tstar_order(f: &Factorization) -> Option<Nat> {
    if f.is_one() {
        return None;
    }
    let (k, r) = t0tstar_equation_value(f).div_rem(&Nat::from(4u32));
    if !r.is_zero() {
        return None;
    }
    let k = at_least_two(k)?;
    let image = products::compose(&[DivisorMap::T, DivisorMap::TStar], f).ok()?;
    (power_ratio(&image, f).as_ref() == Some(&k)).then_some(k)
}

/// `k` with `T*(T(n)) = n^k`, by direct composition.
pub fn tstar0t_order(f: &Factorization) -> Option<Nat> {
    let image = products::compose(&[DivisorMap::TStar, DivisorMap::T], f).ok()?;
    power_ratio(&image, f).and_then(at_least_two)
}

/// `T*(n) T(n) = n^2`.
pub fn is_tstar_t_perfect(f: &Factorization) -> bool {
    if f.is_one() {
        return false;
    }
    let prod = products::unitary_divisor_product(f).mul(&products::divisor_product(f));
    power_ratio(&prod, f) == Some(Nat::from(2u32))
}

/// `σ_e(n) = 2n`.
pub fn is_e_perfect(f: &Factorization) -> Result<bool> {
    if f.is_one() {
        return Ok(false);
    }
    let n = Nat::from(value_u64(f)?);
    Ok(products::e_divisor_sum(f)? == n * 2u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HarmonicType {
    /// `σ_e(n) | n d_e(n)`
    One,
    /// `S_e(n) | n d_e(n)`
    Two,
}

/// e-harmonic test of the given type. `n` must fit in 64 bits.
pub fn e_harmonic(f: &Factorization, kind: HarmonicType) -> Result<bool> {
    if f.is_one() {
        return Ok(false);
    }
    let n = Nat::from(value_u64(f)?);
    let target = n * products::e_divisor_count(f)?;
    let divisor = match kind {
        HarmonicType::One => products::e_divisor_sum(f)?,
        HarmonicType::Two => products::e_harmonic_s(f)?,
    };
    Ok(target.is_multiple_of(&divisor))
}

/// Every class membership and order for one integer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n: Factorization,
    pub perfect_order: Option<Nat>,
    pub superperfect_order: Option<Nat>,
    pub mult_perfect_order: Option<Nat>,
    pub mult_e_perfect_order: Option<Nat>,
    pub mult_e_superperfect_order: Option<Nat>,
    pub e_perfect: bool,
    pub e_harmonic1: bool,
    pub e_harmonic2: bool,
    pub t0tstar_order: Option<Nat>,
    pub tstar0t_order: Option<Nat>,
    pub tstar_t_perfect: bool,
}

/// Classifies `n`. Value-dependent classes need `n < 2^64`.
pub fn classify(f: &Factorization) -> Result<ClassificationReport> {
    if f.is_one() {
        return Ok(ClassificationReport::default());
    }
    value_u64(f)?;
    Ok(ClassificationReport {
        n: f.clone(),
        perfect_order: perfect_order(f)?,
        superperfect_order: superperfect_order(f)?,
        mult_perfect_order: mult_perfect_order(f),
        mult_e_perfect_order: mult_e_perfect_order(f)?,
        mult_e_superperfect_order: mult_e_superperfect_order(f)?,
        e_perfect: is_e_perfect(f)?,
        e_harmonic1: e_harmonic(f, HarmonicType::One)?,
        e_harmonic2: e_harmonic(f, HarmonicType::Two)?,
        t0tstar_order: t0tstar_order(f),
        tstar0t_order: tstar0t_order(f),
        tstar_t_perfect: is_tstar_t_perfect(f),
    })
}

/// Named classes, as used by range scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    Perfect,
    Superperfect,
    MultPerfect,
    MultEPerfect,
    MultESuperperfect,
    EPerfect,
    EHarmonic1,
    EHarmonic2,
    T0TStar,
    TStar0T,
    TStarT,
}

impl Class {
    pub const ALL: [Class; 11] = [
        Class::Perfect,
        Class::Superperfect,
        Class::MultPerfect,
        Class::MultEPerfect,
        Class::MultESuperperfect,
        Class::EPerfect,
        Class::EHarmonic1,
        Class::EHarmonic2,
        Class::T0TStar,
        Class::TStar0T,
        Class::TStarT,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Class::Perfect => "perfect",
            Class::Superperfect => "superperfect",
            Class::MultPerfect => "mult_perfect",
            Class::MultEPerfect => "mult_e_perfect",
            Class::MultESuperperfect => "mult_e_superperfect",
            Class::EPerfect => "e_perfect",
            Class::EHarmonic1 => "e_harmonic1",
            Class::EHarmonic2 => "e_harmonic2",
            Class::T0TStar => "t0tstar",
            Class::TStar0T => "tstar0t",
            Class::TStarT => "tstar_t",
        }
    }

    /// Whether membership only depends on the exponents of `n`.
    pub fn is_exponent_only(self) -> bool {
        matches!(
            self,
            Class::MultPerfect
                | Class::MultEPerfect
                | Class::MultESuperperfect
                | Class::T0TStar
                | Class::TStar0T
                | Class::TStarT
        )
    }

    /// `Ok(None)` when `f` is not a member; otherwise the order, if the
    /// class has one.
    pub fn membership(self, f: &Factorization) -> Result<Option<Membership>> {
        let ordered = |k: Option<BigUint>| k.map(|k| Membership { order: Some(k) });
        let flag = |b: bool| b.then_some(Membership { order: None });
        if f.is_one() {
            return Ok(None);
        }
        Ok(match self {
            Class::Perfect => ordered(perfect_order(f)?),
            Class::Superperfect => ordered(superperfect_order(f)?),
            Class::MultPerfect => ordered(mult_perfect_order(f)),
            Class::MultEPerfect => ordered(mult_e_perfect_order(f)?),
            Class::MultESuperperfect => ordered(mult_e_superperfect_order(f)?),
            Class::EPerfect => flag(is_e_perfect(f)?),
            Class::EHarmonic1 => flag(e_harmonic(f, HarmonicType::One)?),
            Class::EHarmonic2 => flag(e_harmonic(f, HarmonicType::Two)?),
            Class::T0TStar => ordered(t0tstar_order(f)),
            Class::TStar0T => ordered(tstar0t_order(f)),
            Class::TStarT => flag(is_tstar_t_perfect(f)),
        })
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Class::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub order: Option<Nat>,
}
