//! Truncated `1F0[1/2]` sums, a generic truncated hypergeometric evaluator,
//! central binomial streams and Apéry numbers.
//!
//! The partial sums are indexed by term count:
//! `S_N(m) = sum_{k=0}^{N-1} C(2k, k) / m^k` (corrected signs) or
//! `sum_{k=0}^{N-1} (-1)^k C(2k, k) / m^k` (signs as literally printed for
//! `z = -4/m`). Since `(1/2)_k / k! = C(2k, k) / 4^k`, the corrected sum is
//! `1F0[1/2 | 4/m]` truncated after `N` terms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binomial, pochhammer};
use crate::padic::{inv_mod, mul_mod, reduce_big, required_guard, PadicApprox, PadicCtx};

#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `sum C(2k,k) / m^k`
    #[default]
    Corrected,
    /// `sum (-1)^k C(2k,k) / m^k`
    Literal,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Corrected => "corrected",
            Variant::Literal => "literal",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corrected" => Ok(Variant::Corrected),
            "literal" => Ok(Variant::Literal),
            other => Err(Error::invalid(format!("unknown variant '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesSpec {
    m: BigInt,
    variant: Variant,
}

impl SeriesSpec {
    pub fn new(m: impl Into<BigInt>, variant: Variant) -> Result<Self> {
        let m = m.into();
        if m.is_zero() {
            return Err(Error::invalid("series multiplier m must be nonzero"));
        }
        Ok(SeriesSpec { m, variant })
    }

    pub fn corrected(m: impl Into<BigInt>) -> Result<Self> {
        Self::new(m, Variant::Corrected)
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    fn alternating(&self) -> bool {
        self.variant == Variant::Literal
    }
}

/// Exact `S_N` (first `N` terms). Horner over the common denominator
/// `m^(N-1)`, so only one rational normalisation happens.
pub fn s_sum_exact(n: u64, spec: &SeriesSpec) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let mut central = BigInt::one();
    let mut numer = BigInt::zero();
    let mut denom = BigInt::one();
    for k in 0..n {
        if k > 0 {
            central = central * (2 * (2 * k - 1)) / k;
            numer *= &spec.m;
            denom *= &spec.m;
        }
        if spec.alternating() && k % 2 == 1 {
            numer -= &central;
        } else {
            numer += &central;
        }
    }
    // numer / m^(N-1) = sum_k c_k m^(N-1-k) / m^(N-1)
    BigRational::new(numer, denom)
}

/// Splits `x = p^v * unit`.
fn split_p(mut x: u128, p: u128) -> (u64, u128) {
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// One step of [`CentralBinomialStream`]: `C(2k, k) = p^valuation * num / den`
/// with `num`, `den` units modulo `p^E`, and `den = den_prev * step_den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralTerm {
    pub k: u64,
    pub valuation: u64,
    pub num: u128,
    pub den: u128,
    pub step_den: u128,
}

/// Streams `C(2k, k) mod p^E` for `k = 0 ..= k_max` using
/// `C(2k+2, k+1) = C(2k, k) * 2(2k+1) / (k+1)`. Powers of `p` are split off
/// exactly at every step, so the stream never loses precision.
#[derive(Clone, Debug)]
pub struct CentralBinomialStream {
    ctx: PadicCtx,
    next_k: u64,
    k_max: u64,
    valuation: u64,
    num: u128,
    den: u128,
}

pub fn central_binomial_stream(ctx: &PadicCtx, k_max: u64) -> CentralBinomialStream {
    CentralBinomialStream {
        ctx: *ctx,
        next_k: 0,
        k_max,
        valuation: 0,
        num: 1 % ctx.modulus(),
        den: 1 % ctx.modulus(),
    }
}

impl CentralBinomialStream {
    /// Next term in fractional form, without a modular inversion.
    pub fn next_term(&mut self) -> Option<CentralTerm> {
        if self.next_k > self.k_max {
            return None;
        }
        let k = self.next_k;
        let m = self.ctx.modulus();
        let p = self.ctx.p() as u128;
        let mut step_den = 1 % m;
        if k > 0 {
            let (vu, up) = split_p(2 * (2 * k as u128 - 1), p);
            let (vd, down) = split_p(k as u128, p);
            self.valuation = self.valuation + vu - vd;
            self.num = mul_mod(self.num, up % m, m);
            step_den = down % m;
            self.den = mul_mod(self.den, step_den, m);
        }
        self.next_k += 1;
        Some(CentralTerm {
            k,
            valuation: self.valuation,
            num: self.num,
            den: self.den,
            step_den,
        })
    }

    fn term_value(&self, t: &CentralTerm) -> PadicApprox {
        let m = self.ctx.modulus();
        if t.valuation >= self.ctx.precision() as u64 {
            return self.ctx.zero();
        }
        let inv = inv_mod(t.den, m).expect("denominator is a unit");
        let unit = mul_mod(t.num, inv, m);
        self.ctx
            .from_residue(mul_mod(unit, self.ctx.pow_p(t.valuation as u32), m))
    }
}

impl Iterator for CentralBinomialStream {
    type Item = PadicApprox;

    fn next(&mut self) -> Option<PadicApprox> {
        let t = self.next_term()?;
        Some(self.term_value(&t))
    }
}

/// `C(2k, k) mod p^E` via the stream.
pub fn central_binomial_mod(k: u64, ctx: &PadicCtx) -> PadicApprox {
    central_binomial_stream(ctx, k)
        .last()
        .expect("stream yields at least k = 0")
}

fn series_unit_ratio(spec: &SeriesSpec, ctx: &PadicCtx) -> Result<u128> {
    let m = ctx.modulus();
    let mr = reduce_big(&spec.m, m);
    let inv = inv_mod(mr, m).ok_or(Error::NotPIntegral {
        p: ctx.p(),
        valuation: -1,
    })?;
    Ok(if spec.alternating() {
        (m - inv) % m
    } else {
        inv
    })
}

/// `S_N mod p^E` for each requested term count, in one streaming pass.
///
/// The running sum is kept as `X / den_k` with `den_k` the stream's
/// cumulative denominator, so one inversion per checkpoint suffices.
pub fn s_sum_mod_checkpoints(
    checkpoints: &[u64],
    spec: &SeriesSpec,
    ctx: &PadicCtx,
) -> Result<Vec<PadicApprox>> {
    let ratio = series_unit_ratio(spec, ctx)?;
    let m = ctx.modulus();
    let e = ctx.precision() as u64;
    let last = checkpoints.iter().copied().max().unwrap_or(0);
    let mut out = vec![None; checkpoints.len()];
    for (slot, &c) in out.iter_mut().zip(checkpoints) {
        if c == 0 {
            *slot = Some(ctx.zero());
        }
    }
    if last > 0 {
        let mut stream = central_binomial_stream(ctx, last - 1);
        let mut acc = 0u128; // S_{k+1} * den_k
        let mut ratio_pow = 1 % m;
        while let Some(t) = stream.next_term() {
            acc = mul_mod(acc, t.step_den, m);
            if t.valuation < e {
                let term = mul_mod(
                    mul_mod(t.num, ratio_pow, m),
                    ctx.pow_p(t.valuation as u32),
                    m,
                );
                acc = (acc + term) % m;
            }
            let den = t.den;
            ratio_pow = mul_mod(ratio_pow, ratio, m);
            let count = t.k + 1;
            for (slot, &c) in out.iter_mut().zip(checkpoints) {
                if c == count {
                    let inv = inv_mod(den, m).expect("unit denominator");
                    *slot = Some(ctx.from_residue(mul_mod(acc, inv, m)));
                }
            }
        }
    }
    Ok(out
        .into_iter()
        .map(|x| x.expect("every checkpoint visited"))
        .collect())
}

/// `S_N mod p^E`, requiring `E >= required_guard(N, target, p)`.
pub fn s_sum_mod(n: u64, spec: &SeriesSpec, ctx: &PadicCtx, target: u32) -> Result<PadicApprox> {
    let need = required_guard(n, target, ctx.p());
    if ctx.precision() < need {
        return Err(Error::PrecisionExhausted {
            available: ctx.precision(),
            required: need,
        });
    }
    Ok(s_sum_mod_checkpoints(&[n], spec, ctx)?.remove(0))
}

/// Parameters of `r+1 F r [a_0 .. a_r ; b_1 .. b_r | z]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperSpec {
    pub upper: Vec<BigRational>,
    pub lower: Vec<BigRational>,
    pub z: BigRational,
}

impl HyperSpec {
    pub fn new(upper: Vec<BigRational>, lower: Vec<BigRational>, z: BigRational) -> Self {
        HyperSpec { upper, lower, z }
    }
}

/// `sum_{k=0}^{N} prod (a_i)_k / (prod (b_j)_k k!) z^k`, exactly.
pub fn hyper_truncated_exact(spec: &HyperSpec, n: u64) -> Result<BigRational> {
    for b in &spec.lower {
        if b.is_integer() && !b.is_positive() {
            let t = (-b.numer()).to_u64().unwrap_or(u64::MAX);
            if t < n {
                return Err(Error::VanishingDenominator {
                    parameter: b.to_string(),
                    k: t + 1,
                });
            }
        }
    }
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    for k in 0..=n {
        if k > 0 {
            let kk = BigRational::from_integer(BigInt::from(k - 1));
            for a in &spec.upper {
                term *= a + &kk;
            }
            for b in &spec.lower {
                term /= b + &kk;
            }
            term /= BigRational::from_integer(BigInt::from(k));
            term *= &spec.z;
        }
        sum += &term;
    }
    Ok(sum)
}

/// Direct-product form, used to cross-check [`hyper_truncated_exact`].
pub fn hyper_term_exact(spec: &HyperSpec, k: u64) -> BigRational {
    let mut term = BigRational::one();
    for a in &spec.upper {
        term *= pochhammer(a, k);
    }
    for b in &spec.lower {
        term /= pochhammer(b, k);
    }
    let fact: BigInt = (1..=k).map(BigInt::from).product();
    term / BigRational::from_integer(fact) * num_traits::pow(spec.z.clone(), k as usize)
}

/// Apéry number `A_n = sum_k C(n,k)^2 C(n+k,k)^2`.
pub fn apery(n: u64) -> BigInt {
    (0..=n as i64)
        .map(|k| {
            let a = binomial(n, k);
            let b = binomial(n + k as u64, k);
            let t = a * b;
            &t * &t
        })
        .sum()
}
