//! Legendre symbols and Lucas sequences `u_n(A, B)`.
//!
//! `u_0 = 0`, `u_1 = 1`, `u_n = A u_{n-1} - B u_{n-2}`. For `B = 1` the
//! sequence extends to negative indices through `u_{-n} = -u_n`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{ensure_odd_prime, ensure_prime};
use crate::padic::{mul_mod, reduce_big, PadicApprox, PadicCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LucasParams {
    pub a: BigInt,
    pub b: BigInt,
}

impl LucasParams {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        LucasParams {
            a: a.into(),
            b: b.into(),
        }
    }

    /// `(m - 2, 1)`, the parameters attached to the series with ratio `1/m`.
    pub fn for_multiplier(m: &BigInt) -> Self {
        LucasParams::new(m - 2, 1)
    }

    /// `A^2 - 4B`; equals `m(m - 4)` for [`LucasParams::for_multiplier`].
    pub fn discriminant(&self) -> BigInt {
        &self.a * &self.a - 4 * &self.b
    }

    fn unit_b(&self) -> bool {
        self.b.is_one()
    }

    /// `(A, period)` when `B = 1` and `|A| <= 1`, where the sequence is periodic.
    fn periodic(&self) -> Option<i64> {
        if !self.unit_b() {
            return None;
        }
        match self.a.to_i64() {
            Some(a @ -1..=1) => Some(a),
            _ => None,
        }
    }
}

/// Jacobi symbol `(a/n)` for odd `n`.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p` and any integer `a`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    ensure_odd_prime(p)?;
    let r = reduce_big(a, p as u128) as u64;
    Ok(jacobi(r, p))
}

pub fn legendre_i64(a: i64, p: u64) -> Result<i8> {
    legendre(&BigInt::from(a), p)
}

fn check_index(n: i64, params: &LucasParams) -> Result<()> {
    if n < 0 && !params.unit_b() {
        Err(Error::NegativeLucasIndex { index: n })
    } else {
        Ok(())
    }
}

/// Exact `u_n(A, B)` by iterating the recurrence.
pub fn lucas_u(n: i64, params: &LucasParams) -> Result<BigInt> {
    check_index(n, params)?;
    if n < 0 {
        return Ok(-lucas_u(-n, params)?);
    }
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return Ok(prev);
    }
    for _ in 1..n {
        let next = &params.a * &cur - &params.b * &prev;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Exact values `u_lo ..= u_hi`, computed in one pass.
#[derive(Clone, Debug)]
pub struct LucasTable {
    lo: i64,
    values: Vec<BigInt>,
}

impl LucasTable {
    pub fn new(lo: i64, hi: i64, params: &LucasParams) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty Lucas range {lo}..={hi}")));
        }
        check_index(lo, params)?;
        let reach = hi.max(-lo).max(1) as usize;
        let mut forward = Vec::with_capacity(reach + 1);
        forward.push(BigInt::zero());
        forward.push(BigInt::one());
        for i in 2..=reach {
            let next = &params.a * &forward[i - 1] - &params.b * &forward[i - 2];
            forward.push(next);
        }
        let values = (lo..=hi)
            .map(|i| {
                if i < 0 {
                    -forward[(-i) as usize].clone()
                } else {
                    forward[i as usize].clone()
                }
            })
            .collect();
        Ok(LucasTable { lo, values })
    }

    pub fn get(&self, n: i64) -> &BigInt {
        &self.values[(n - self.lo) as usize]
    }
}

/// Exact period of `n -> u_n(m - 2, 1)` for `m` in `{1, 2, 3}`.
pub fn lucas_period(m: i64) -> Result<u64> {
    match m {
        1 => Ok(3),
        2 => Ok(4),
        3 => Ok(6),
        _ => Err(Error::invalid(format!(
            "lucas_period is defined for m in {{1, 2, 3}}, got {m}"
        ))),
    }
}

/// One period of `u_n(a, 1)` for `a` in `{-1, 0, 1}`.
fn periodic_values(a: i64) -> &'static [i64] {
    match a {
        -1 => &[0, 1, -1],
        0 => &[0, 1, 0, -1],
        1 => &[0, 1, 1, 0, -1, -1],
        _ => unreachable!("periodic fast path only for |A| <= 1"),
    }
}

/// `u_n mod p^E`. Uses the periodic table when `B = 1, |A| <= 1`, fast
/// doubling otherwise.
pub fn lucas_u_mod(n: i64, params: &LucasParams, ctx: &PadicCtx) -> Result<PadicApprox> {
    check_index(n, params)?;
    if let Some(a) = params.periodic() {
        let table = periodic_values(a);
        let idx = n.rem_euclid(table.len() as i64) as usize;
        return Ok(ctx.from_i64(table[idx]));
    }
    lucas_u_mod_doubling(n, params, ctx)
}

/// `u_n mod p^E` by fast doubling, `O(log |n|)` ring operations:
/// `u_{2k} = u_k (2 u_{k+1} - A u_k)`, `u_{2k+1} = u_{k+1}^2 - B u_k^2`.
pub fn lucas_u_mod_doubling(n: i64, params: &LucasParams, ctx: &PadicCtx) -> Result<PadicApprox> {
    check_index(n, params)?;
    let m = ctx.modulus();
    let a = reduce_big(&params.a, m);
    let b = reduce_big(&params.b, m);
    let sub = |x: u128, y: u128| (x + m - y) % m;

    let target = n.unsigned_abs();
    // (u_k, u_{k+1}) starting from k = 0.
    let (mut uk, mut uk1) = (0u128, 1 % m);
    for bit in (0..64 - target.leading_zeros()).rev() {
        let two_uk1 = (2 * uk1) % m;
        let even = mul_mod(uk, sub(two_uk1, mul_mod(a, uk, m)), m);
        let odd = sub(mul_mod(uk1, uk1, m), mul_mod(b, mul_mod(uk, uk, m), m));
        if (target >> bit) & 1 == 1 {
            // (u_{2k+1}, u_{2k+2}); u_{2k+2} = A u_{2k+1} - B u_{2k}
            let next = sub(mul_mod(a, odd, m), mul_mod(b, even, m));
            (uk, uk1) = (odd, next);
        } else {
            (uk, uk1) = (even, odd);
        }
    }
    let value = ctx.from_residue(uk);
    Ok(if n < 0 { value.negate() } else { value })
}

/// Euler's criterion `a^((p-1)/2) mod p` mapped to `{-1, 0, 1}`; used to
/// spot-check [`legendre`].
pub fn euler_criterion(a: i64, p: u64) -> Result<i8> {
    ensure_prime(p)?;
    let ctx = PadicCtx::new(p, 1)?;
    let r = ctx.from_i64(a).pow((p - 1) / 2).residue();
    Ok(match r {
        0 => 0,
        1 => 1,
        _ => -1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(a: i64, b: i64) -> LucasParams {
        LucasParams::new(a, b)
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_i64(-3, 7).unwrap(), 1);
        assert_eq!(legendre_i64(2, 5).unwrap(), -1);
        assert_eq!(legendre_i64(14, 7).unwrap(), 0);
        assert_eq!(legendre_i64(0, 11).unwrap(), 0);
        assert!(matches!(legendre_i64(1, 2), Err(Error::EvenPrime)));
        assert!(matches!(legendre_i64(1, 15), Err(Error::NotPrime(15))));
    }

    #[test]
    fn legendre_matches_euler() {
        for p in (3..=200u64).filter(|&p| crate::exact::is_prime(p)) {
            for a in 1..p as i64 {
                assert_eq!(
                    legendre_i64(a, p).unwrap(),
                    euler_criterion(a, p).unwrap(),
                    "a={a} p={p}"
                );
                assert_eq!(
                    legendre_i64(a - p as i64, p).unwrap(),
                    legendre_i64(a, p).unwrap()
                );
            }
        }
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_u(0, &params(7, 3)).unwrap(), BigInt::zero());
        assert_eq!(lucas_u(4, &params(3, 1)).unwrap(), BigInt::from(21));
        assert_eq!(lucas_u(-2, &params(-1, 1)).unwrap(), BigInt::from(1));
        assert_eq!(lucas_u(4, &params(1, 1)).unwrap(), BigInt::from(-1));
        assert_eq!(
            lucas_u(-1, &params(1, 2)),
            Err(Error::NegativeLucasIndex { index: -1 })
        );
    }

    #[test]
    fn modular_examples() {
        let ctx = PadicCtx::new(5, 4).unwrap();
        let p = params(3, 1);
        let mut naive = (0u128, 1u128);
        for _ in 0..1_000_000 {
            naive = (naive.1, (3 * naive.1 + 625 - naive.0) % 625);
        }
        assert_eq!(lucas_u_mod(1_000_000, &p, &ctx).unwrap().residue(), naive.0);
        assert_eq!(lucas_u_mod(1, &p, &ctx).unwrap(), ctx.one());
        assert!(lucas_u_mod(6, &params(1, 1), &ctx).unwrap().is_zero());
    }

    #[test]
    fn doubling_matches_recurrence() {
        let ctxs = [
            PadicCtx::new(3, 5).unwrap(),
            PadicCtx::new(7, 3).unwrap(),
            PadicCtx::new(3, 70).unwrap(),
        ];
        let cases = [(3, 1), (-1, 1), (5, -2), (-4, 7), (2, 2), (0, -3), (11, 1)];
        for ctx in &ctxs {
            for &(a, b) in &cases {
                let pr = params(a, b);
                let lo = if b == 1 { -300 } else { 0 };
                let table = LucasTable::new(lo, 300, &pr).unwrap();
                for n in lo..=300 {
                    let fast = lucas_u_mod_doubling(n, &pr, ctx).unwrap();
                    assert_eq!(fast, ctx.from_bigint(table.get(n)), "A={a} B={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn periodic_path_matches_doubling() {
        let ctx = PadicCtx::new(13, 3).unwrap();
        for m in 1..=3i64 {
            let pr = LucasParams::for_multiplier(&BigInt::from(m));
            for n in [
                -1_000_000_000_000_000_000i64,
                -17,
                -1,
                0,
                5,
                12_345,
                i64::MAX / 3,
            ] {
                assert_eq!(
                    lucas_u_mod(n, &pr, &ctx).unwrap(),
                    lucas_u_mod_doubling(n, &pr, &ctx).unwrap()
                );
            }
        }
    }

    #[test]
    fn periods() {
        for m in 1..=3i64 {
            let t = lucas_period(m).unwrap() as i64;
            let pr = LucasParams::for_multiplier(&BigInt::from(m));
            let table = LucasTable::new(-100, 100 + t, &pr).unwrap();
            for n in -100..=100 {
                assert_eq!(table.get(n + t), table.get(n), "m={m} n={n}");
            }
            // exactness: no shorter period
            for d in 1..t {
                assert!((0..t).any(|n| table.get(n + d) != table.get(n)));
            }
        }
        assert!(lucas_period(4).is_err());
    }

    #[test]
    fn prime_scaling() {
        for m in 1..=3i64 {
            let pr = LucasParams::for_multiplier(&BigInt::from(m));
            for p in (3..=100u64).filter(|&p| crate::exact::is_prime(p)) {
                let symbol = legendre_i64(m * (m - 4), p).unwrap();
                let table = LucasTable::new(0, 50 * p as i64, &pr).unwrap();
                for l in 0..=50i64 {
                    assert_eq!(
                        table.get(p as i64 * l),
                        &(BigInt::from(symbol) * table.get(l)),
                        "m={m} p={p} l={l}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn negation_rule(a in -20i64..20, n in 0i64..=1000) {
            let pr = params(a, 1);
            prop_assert_eq!(lucas_u(-n, &pr).unwrap(), -lucas_u(n, &pr).unwrap());
        }

        #[test]
        fn doubling_random(a in -50i64..50, b in -50i64..50, n in 0i64..10_000,
                           pi in 0usize..4, e in 1u32..6) {
            let p = [3u64, 5, 7, 11][pi];
            let ctx = PadicCtx::new(p, e).unwrap();
            let pr = params(a, b);
            let m = ctx.modulus();
            let (ar, br) = (crate::padic::reduce_i128(a as i128, m), crate::padic::reduce_i128(b as i128, m));
            let mut naive = (0u128, 1 % m);
            for _ in 0..n {
                naive = (naive.1, (ar * naive.1 % m + m - br * naive.0 % m) % m);
            }
            prop_assert_eq!(lucas_u_mod_doubling(n, &pr, &ctx).unwrap().residue(), naive.0);
        }
    }
}
