//! Truncated `p`-adic arithmetic.
//!
//! A [`PadicApprox`] is an element of `Z_p` known modulo `p^precision`,
//! stored as `unit * p^valuation`. Every value carries its own precision:
//! division by an element of valuation `v` costs `v` digits, and the loss is
//! visible to the caller instead of silently turning into a false zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{ensure_odd_prime, floor_log, vp_unchecked, Valuation};

/// Moduli are kept below 2^126 so that sums of two residues and the
/// coefficients of the extended Euclidean algorithm stay inside `u128`/`i128`.
const MODULUS_LIMIT: u128 = 1 << 126;

pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a * b) % m;
    }
    // Double-and-add; a, b < m < 2^126 so nothing overflows.
    let mut acc = 0u128;
    let mut base = a % m;
    let mut b = b % m;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + base) % m;
        }
        base = (base << 1) % m;
        b >>= 1;
    }
    acc
}

/// Inverse of a unit modulo `m`.
pub(crate) fn inv_mod(a: u128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u128)
}

/// `x mod m` for a signed big integer, in `[0, m)`.
pub(crate) fn reduce_big(x: &BigInt, m: u128) -> u128 {
    x.mod_floor(&BigInt::from(m))
        .to_u128()
        .expect("reduced value below modulus")
}

pub(crate) fn reduce_i128(x: i128, m: u128) -> u128 {
    if m <= i128::MAX as u128 {
        x.rem_euclid(m as i128) as u128
    } else {
        reduce_big(&BigInt::from(x), m)
    }
}

/// Working context: an odd prime `p` and precision `E`, modulus `p^E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicCtx {
    p: u64,
    precision: u32,
    modulus: u128,
}

impl PadicCtx {
    pub fn new(p: u64, precision: u32) -> Result<Self> {
        ensure_odd_prime(p)?;
        if precision == 0 {
            return Err(Error::invalid("p-adic precision must be at least 1"));
        }
        let mut modulus = 1u128;
        for _ in 0..precision {
            modulus = modulus
                .checked_mul(p as u128)
                .filter(|&m| m < MODULUS_LIMIT)
                .ok_or(Error::PrecisionTooLarge { p, precision })?;
        }
        Ok(PadicCtx {
            p,
            precision,
            modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u128 {
        self.modulus
    }

    pub fn modulus_big(&self) -> BigInt {
        BigInt::from(self.modulus)
    }

    /// `p^k` for `k <= precision`.
    pub fn pow_p(&self, k: u32) -> u128 {
        debug_assert!(k <= self.precision);
        (self.p as u128).pow(k)
    }

    pub fn zero(&self) -> PadicApprox {
        PadicApprox::zero_at(*self, self.precision)
    }

    pub fn one(&self) -> PadicApprox {
        self.from_residue(1)
    }

    /// Class of a residue modulo `p^E`.
    pub fn from_residue(&self, r: u128) -> PadicApprox {
        PadicApprox::normalize(*self, self.precision, r % self.modulus)
    }

    pub fn from_i64(&self, x: i64) -> PadicApprox {
        self.from_residue(reduce_i128(x as i128, self.modulus))
    }

    pub fn from_bigint(&self, x: &BigInt) -> PadicApprox {
        self.from_residue(reduce_big(x, self.modulus))
    }

    /// Class of a `p`-integral rational; the denominator is inverted modulo
    /// `p^E`.
    pub fn from_rational(&self, x: &BigRational) -> Result<PadicApprox> {
        if let Valuation::Finite(v) = vp_unchecked(x, self.p) {
            if v < 0 {
                return Err(Error::NotPIntegral {
                    p: self.p,
                    valuation: v,
                });
            }
        }
        let num = reduce_big(x.numer(), self.modulus);
        let den = reduce_big(x.denom(), self.modulus);
        let inv = inv_mod(den, self.modulus).expect("p-integral denominator is a unit");
        Ok(self.from_residue(mul_mod(num, inv, self.modulus)))
    }

    /// Same prime, different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        PadicCtx::new(self.p, precision)
    }
}

impl fmt::Display for PadicCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.precision)
    }
}

/// `unit * p^valuation`, known modulo `p^precision`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PadicApprox {
    ctx: PadicCtx,
    precision: u32,
    valuation: u32,
    unit: u128,
}

impl PadicApprox {
    fn zero_at(ctx: PadicCtx, precision: u32) -> Self {
        PadicApprox {
            ctx,
            precision,
            valuation: precision,
            unit: 0,
        }
    }

    /// Builds the canonical `(v, u)` pair from a residue modulo `p^precision`.
    fn normalize(ctx: PadicCtx, precision: u32, residue: u128) -> Self {
        if residue == 0 {
            return Self::zero_at(ctx, precision);
        }
        let p = ctx.p as u128;
        let mut v = 0;
        let mut r = residue;
        while r.is_multiple_of(p) {
            r /= p;
            v += 1;
        }
        PadicApprox {
            ctx,
            precision,
            valuation: v,
            unit: r,
        }
    }

    pub fn ctx(&self) -> PadicCtx {
        self.ctx
    }

    /// Number of `p`-adic digits this value is known to.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    pub fn unit(&self) -> u128 {
        self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.valuation == self.precision
    }

    /// The valuation as far as this precision can tell.
    pub fn valuation_class(&self) -> Valuation {
        if self.is_zero() {
            Valuation::AtLeast(self.precision as i64)
        } else {
            Valuation::Finite(self.valuation as i64)
        }
    }

    /// `unit * p^valuation mod p^precision`.
    pub fn residue(&self) -> u128 {
        if self.is_zero() {
            0
        } else {
            self.unit * self.ctx.pow_p(self.valuation)
        }
    }

    pub fn residue_big(&self) -> BigInt {
        BigInt::from(self.residue())
    }

    fn modulus_at(&self, precision: u32) -> u128 {
        self.ctx.pow_p(precision)
    }

    /// Forget digits beyond `precision`.
    pub fn reduce(&self, precision: u32) -> Self {
        let precision = precision.min(self.precision);
        let r = self.residue() % self.modulus_at(precision);
        Self::normalize(self.ctx, precision, r)
    }

    /// Errors unless at least `required` digits are known.
    pub fn require(&self, required: u32) -> Result<&Self> {
        if self.precision < required {
            Err(Error::PrecisionExhausted {
                available: self.precision,
                required,
            })
        } else {
            Ok(self)
        }
    }

    /// Moves the value into another context over the same prime. The
    /// precision is capped at the target context's.
    pub fn rebase(&self, ctx: PadicCtx) -> Result<Self> {
        if ctx.p != self.ctx.p {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: ctx.to_string(),
            });
        }
        let precision = self.precision.min(ctx.precision);
        let r = self.residue() % ctx.pow_p(precision);
        Ok(Self::normalize(ctx, precision, r))
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let precision = self.precision.min(other.precision);
        let m = self.modulus_at(precision);
        let r = (self.residue() % m + other.residue() % m) % m;
        Ok(Self::normalize(self.ctx, precision, r))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        let m = self.modulus_at(self.precision);
        Self::normalize(self.ctx, self.precision, (m - self.residue()) % m)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        // (a + O(p^pa)) (b + O(p^pb)) = ab + O(p^(pa + vb)) + O(p^(pb + va))
        let precision = (self.precision + other.valuation)
            .min(other.precision + self.valuation)
            .min(self.ctx.precision);
        let valuation = self.valuation + other.valuation;
        if valuation >= precision {
            return Ok(Self::zero_at(self.ctx, precision));
        }
        let m = self.modulus_at(precision - valuation);
        Ok(PadicApprox {
            ctx: self.ctx,
            precision,
            valuation,
            unit: mul_mod(self.unit % m, other.unit % m, m),
        })
    }

    /// Quotient `self / other`. Known modulo `p^(precision - v(other))` at
    /// best; the result records the reduced precision.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero {
                p: self.ctx.p,
                precision: other.precision,
            });
        }
        let vb = other.valuation;
        let precision = if self.is_zero() {
            self.precision.saturating_sub(vb)
        } else {
            if self.valuation < vb {
                return Err(Error::NotPIntegral {
                    p: self.ctx.p,
                    valuation: self.valuation as i64 - vb as i64,
                });
            }
            (self.precision - vb).min(other.precision + self.valuation - 2 * vb)
        };
        if self.is_zero() {
            return Ok(Self::zero_at(self.ctx, precision));
        }
        let valuation = self.valuation - vb;
        let m = self.modulus_at(precision - valuation);
        let inv = inv_mod(other.unit % m, m).expect("unit part is invertible");
        Ok(PadicApprox {
            ctx: self.ctx,
            precision,
            valuation,
            unit: mul_mod(self.unit % m, inv, m),
        })
    }

    /// Division that fails when fewer than `required` digits survive.
    pub fn div_with_requirement(&self, other: &Self, required: u32) -> Result<Self> {
        let q = self.try_div(other)?;
        q.require(required)?;
        Ok(q)
    }

    pub fn pow(&self, exp: u64) -> Self {
        let mut acc = self.ctx.one();
        let mut base = *self;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} * {}^{} mod {}^{}",
            self.unit, self.ctx.p, self.valuation, self.ctx.p, self.precision
        )
    }
}

// Operator sugar for same-context arithmetic. Mixing contexts through the
// operators is a programming error and panics; use the `try_*` methods when
// the contexts come from outside.

impl Add for &PadicApprox {
    type Output = PadicApprox;
    fn add(self, rhs: Self) -> PadicApprox {
        self.try_add(rhs).expect("same p-adic context")
    }
}

impl Sub for &PadicApprox {
    type Output = PadicApprox;
    fn sub(self, rhs: Self) -> PadicApprox {
        self.try_sub(rhs).expect("same p-adic context")
    }
}

impl Mul for &PadicApprox {
    type Output = PadicApprox;
    fn mul(self, rhs: Self) -> PadicApprox {
        self.try_mul(rhs).expect("same p-adic context")
    }
}

impl Neg for &PadicApprox {
    type Output = PadicApprox;
    fn neg(self) -> PadicApprox {
        self.negate()
    }
}

/// Working precision that leaves at least `target` correct digits after
/// dividing by any `k <= max_index` or by `p^a <= max_index`.
pub fn required_guard(max_index: u64, target: u32, p: u64) -> u32 {
    target + floor_log(p, max_index.max(1)) + 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn ctx(p: u64, e: u32) -> PadicCtx {
        PadicCtx::new(p, e).unwrap()
    }

    #[test]
    fn context_validation() {
        assert_eq!(PadicCtx::new(2, 3), Err(Error::EvenPrime));
        assert_eq!(PadicCtx::new(9, 3), Err(Error::NotPrime(9)));
        assert!(PadicCtx::new(3, 0).is_err());
        assert_eq!(
            PadicCtx::new(3, 90),
            Err(Error::PrecisionTooLarge {
                p: 3,
                precision: 90
            })
        );
        assert_eq!(ctx(5, 4).modulus(), 625);
    }

    #[test]
    fn from_rational_examples() {
        let c = ctx(5, 2);
        let x = c.from_rational(&int(99)).unwrap();
        assert_eq!((x.valuation(), x.unit()), (0, 24));

        let z = c.from_rational(&int(0)).unwrap();
        assert_eq!((z.valuation(), z.unit()), (2, 0));

        let c3 = ctx(3, 2);
        let y = c3.from_rational(&rat(15, 8)).unwrap();
        assert_eq!((y.valuation(), y.unit()), (1, 1));

        assert_eq!(
            c3.from_rational(&rat(1, 3)),
            Err(Error::NotPIntegral {
                p: 3,
                valuation: -1
            })
        );
    }

    #[test]
    fn arithmetic_examples() {
        let c = ctx(5, 2);
        let x = c.from_i64(99);
        assert_eq!(&x + &c.zero(), x);
        let d = &x - &c.from_i64(-1);
        assert_eq!((d.valuation(), d.unit()), (2, 0));
        assert!(d.is_zero());

        let c3 = ctx(3, 3);
        let three = c3.from_i64(3);
        let nine = &three * &three;
        assert_eq!((nine.valuation(), nine.unit()), (2, 1));
    }

    #[test]
    fn division_examples() {
        let c = ctx(3, 2);
        let a = c.from_i64(41);
        assert_eq!(a.try_div(&c.one()).unwrap(), a);

        let q = a.try_div(&c.from_i64(25)).unwrap();
        assert_eq!(q.residue(), 2);
        assert_eq!(q.precision(), 2);

        let c = ctx(3, 4);
        let nine = c.from_i64(9);
        let three = c.from_i64(3);
        let q = nine.try_div(&three).unwrap();
        assert_eq!((q.valuation(), q.unit(), q.precision()), (1, 1, 3));

        assert!(matches!(
            three.try_div(&c.zero()),
            Err(Error::DivisionByZero { .. })
        ));
        assert!(matches!(
            three.try_div(&nine),
            Err(Error::NotPIntegral { .. })
        ));
        assert_eq!(
            nine.div_with_requirement(&three, 4),
            Err(Error::PrecisionExhausted {
                available: 3,
                required: 4
            })
        );
    }

    #[test]
    fn context_mismatch() {
        let a = ctx(3, 2).one();
        let b = ctx(3, 3).one();
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch { .. })));
        assert_eq!(b.rebase(ctx(3, 2)).unwrap(), a);
        assert!(b.rebase(ctx(5, 2)).is_err());
    }

    #[test]
    fn guard_examples() {
        assert_eq!(required_guard(100, 4, 5), 8);
        assert_eq!(required_guard(1, 1, 3), 3);
        assert_eq!(required_guard(1_000_000, 6, 3), 20);
    }

    #[test]
    fn wide_modulus_arithmetic() {
        // 3^70 > 2^64 exercises the double-and-add multiplication.
        let c = ctx(3, 70);
        let x = c.from_i64(123_456_789);
        let y = c.from_i64(-987_654_321);
        let expected = BigInt::from(123_456_789i64) * BigInt::from(-987_654_321i64);
        assert_eq!(
            (&x * &y).residue_big(),
            expected.mod_floor(&c.modulus_big())
        );
        // v_3(987654321) = 2, so two digits are lost in the division.
        let q = (&x * &y).try_div(&y).unwrap();
        assert_eq!(q.precision(), 68);
        assert_eq!(q, x.reduce(68));
    }

    fn p_integral(p: i64) -> impl Strategy<Value = BigRational> {
        (-100_000i64..100_000, 1i64..10_000)
            .prop_filter("p-integral", move |(_, d)| d % p != 0)
            .prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn oracle_equivalence(x in p_integral(5), y in p_integral(5), op in 0u8..3) {
            let c = ctx(5, 6);
            let (a, b) = (c.from_rational(&x).unwrap(), c.from_rational(&y).unwrap());
            let (fast, exact) = match op {
                0 => (&a + &b, &x + &y),
                1 => (&a - &b, &x - &y),
                _ => (&a * &b, &x * &y),
            };
            prop_assert_eq!(fast, c.from_rational(&exact).unwrap());
            // canonical form
            if !fast.is_zero() {
                prop_assert!(fast.unit() % 5 != 0);
            }
        }

        #[test]
        fn div_then_mul_round_trips(x in p_integral(3), y in p_integral(3), shift in 0u32..3) {
            let c = ctx(3, 8);
            let a = &c.from_rational(&x).unwrap() * &c.from_i64(3i64.pow(shift + 2));
            let b = &c.from_rational(&y).unwrap() * &c.from_i64(3i64.pow(shift));
            prop_assume!(!b.is_zero() && b.valuation() <= a.valuation());
            let q = a.try_div(&b).unwrap();
            let back = &q * &b;
            prop_assert_eq!(back, a.reduce(back.precision()));
        }
    }
}
