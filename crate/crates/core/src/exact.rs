//! Arbitrary-precision ground truth.
//!
//! Everything in this module is exact: integers are [`BigInt`], rationals are
//! [`BigRational`] (always reduced, positive denominator). The modular fast
//! paths elsewhere in the crate are checked against these functions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

/// A `p`-adic valuation, possibly only known as a lower bound.
///
/// `AtLeast(e)` is what a computation modulo `p^e` can certify when the
/// residue vanishes; it is distinct from `Infinite`, which only an exact
/// zero produces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    AtLeast(i64),
    Infinite,
}

impl Valuation {
    /// Whether the valuation is `>= e`. `None` when only a lower bound below
    /// `e` is known.
    pub fn reaches(self, e: i64) -> Option<bool> {
        match self {
            Valuation::Finite(v) => Some(v >= e),
            Valuation::AtLeast(v) if v >= e => Some(true),
            Valuation::AtLeast(_) => None,
            Valuation::Infinite => Some(true),
        }
    }

    /// What a computation carried out modulo `p^precision` would report.
    pub fn cap(self, precision: i64) -> Valuation {
        match self {
            Valuation::Finite(v) if v < precision => Valuation::Finite(v),
            Valuation::AtLeast(v) => Valuation::AtLeast(v.min(precision)),
            _ => Valuation::AtLeast(precision),
        }
    }

    /// Shift by `-required`; used to report margins.
    pub fn margin(self, required: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v - required),
            Valuation::AtLeast(v) => Valuation::AtLeast(v - required),
            Valuation::Infinite => Valuation::Infinite,
        }
    }

    fn sort_key(self) -> (i64, u8) {
        match self {
            Valuation::Finite(v) => (v, 0),
            Valuation::AtLeast(v) => (v, 1),
            Valuation::Infinite => (i64::MAX, 2),
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::AtLeast(v) => write!(f, ">={v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => serializer.serialize_i64(*v),
            other => serializer.collect_str(other),
        }
    }
}

/// Outcome of [`rat_congruent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Congruence {
    pub holds: bool,
    pub achieved: Valuation,
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn ensure_odd_prime(p: u64) -> Result<()> {
    ensure_prime(p)?;
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    Ok(())
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from(acc)
}

/// Rising factorial `a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &BigRational, k: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = a.clone();
    let one = BigRational::one();
    for _ in 0..k {
        if factor.is_zero() {
            return BigRational::zero();
        }
        acc *= &factor;
        factor += &one;
    }
    acc
}

/// Exponent of `p` in a nonzero magnitude.
fn magnitude_valuation(x: &BigUint, p: u64) -> u64 {
    debug_assert!(!x.is_zero());
    // Strip p^t chunks first, t maximal with p^t < 2^64.
    let mut chunk = p;
    let mut width = 1u64;
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        width += 1;
    }
    let mut v = 0;
    let mut rest = x.clone();
    let big_chunk = BigUint::from(chunk);
    loop {
        let (q, r) = rest.div_rem(&big_chunk);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += width;
    }
    let tail = (&rest % &big_chunk)
        .to_u64()
        .expect("remainder below chunk");
    let mut tail = tail;
    while tail.is_multiple_of(p) {
        tail /= p;
        v += 1;
    }
    v
}

/// `v_p(x)` for a nonzero integer, `None` for zero.
pub fn vp_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        None
    } else {
        Some(magnitude_valuation(x.magnitude(), p))
    }
}

/// `p`-adic valuation of a rational; `Infinite` exactly for zero.
pub fn vp(x: &BigRational, p: u64) -> Result<Valuation> {
    ensure_prime(p)?;
    Ok(vp_unchecked(x, p))
}

pub(crate) fn vp_unchecked(x: &BigRational, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let num = magnitude_valuation(x.numer().magnitude(), p) as i64;
    let den = magnitude_valuation(x.denom().magnitude(), p) as i64;
    Valuation::Finite(num - den)
}

fn ensure_integral(x: &BigRational, p: u64) -> Result<()> {
    match vp_unchecked(x, p) {
        Valuation::Finite(v) if v < 0 => Err(Error::NotPIntegral { p, valuation: v }),
        _ => Ok(()),
    }
}

/// Tests `x ≡ y (mod p^e)` for `p`-integral rationals.
///
/// The achieved valuation `v_p(x - y)` is always returned, so callers can
/// report margins rather than bare verdicts.
pub fn rat_congruent(x: &BigRational, y: &BigRational, p: u64, e: u32) -> Result<Congruence> {
    ensure_prime(p)?;
    ensure_integral(x, p)?;
    ensure_integral(y, p)?;
    let achieved = vp_unchecked(&(x - y), p);
    Ok(Congruence {
        holds: achieved.reaches(e as i64) == Some(true),
        achieved,
    })
}

pub fn rat(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `num/den`, or just `num` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `p^e` as an exact integer.
pub fn prime_power(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// `floor(log_p n)` for `n >= 1`.
pub fn floor_log(p: u64, n: u64) -> u32 {
    debug_assert!(p >= 2 && n >= 1);
    let mut count = 0;
    let mut acc = p as u128;
    while acc <= n as u128 {
        acc *= p as u128;
        count += 1;
    }
    count
}

pub(crate) fn signed_pow(base: &BigInt, exp: u64) -> BigInt {
    num_traits::pow(base.clone(), exp as usize)
}
