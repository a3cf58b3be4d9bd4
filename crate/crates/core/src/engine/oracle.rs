//! Exact evaluation of every suite. Slow but unconditionally correct; the
//! modular path is checked against it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::engine::asd::{asd_check, AsdSpec};
use crate::engine::case::{CongruenceCase, Requirement, Suite, Value, Verdict};
use crate::engine::transfer;
use crate::error::Result;
use crate::exact::{binomial, int, prime_power, rat_congruent, signed_pow, Valuation};
use crate::lucas::{legendre, LucasParams, LucasTable};
use crate::series::{apery, s_sum_exact, SeriesSpec};

pub(crate) fn congruence_verdict(
    lhs: BigRational,
    rhs: BigRational,
    p: u64,
    e: u32,
) -> Result<Verdict> {
    let c = rat_congruent(&lhs, &rhs, p, e)?;
    Ok(Verdict {
        lhs: Value::Exact(lhs),
        rhs: Value::Exact(rhs),
        required: Requirement::Exponent(e),
        achieved: Some(c.achieved),
    })
}

/// `(m^(p^a - p^(a-1)) - 1) / (2 p^a)`, exactly.
pub fn fermat_quotient_factor(m: &BigInt, p: u64, alpha: u32) -> BigRational {
    let pa = prime_power(p, alpha);
    let phi = &pa - prime_power(p, alpha - 1);
    let phi = u64::try_from(phi).expect("exponent fits u64");
    BigRational::new(signed_pow(m, phi) - 1, 2 * pa)
}

pub(crate) fn symbol(m: &BigInt, p: u64) -> Result<i8> {
    legendre(&(m * (m - 4)), p)
}

fn series_spec(case: &CongruenceCase) -> Result<SeriesSpec> {
    SeriesSpec::new(case.m(), case.variant())
}

pub(crate) fn evaluate(case: &CongruenceCase, seed: u64) -> Result<Verdict> {
    match case.suite() {
        Suite::SeriesAsd | Suite::SeriesAsdM4 => series_asd(case),
        Suite::AperyAsd => apery_asd(case),
        Suite::SeriesModP | Suite::SeriesModP2 => series_mod_p(case),
        Suite::SeriesAsdCorrection => series_asd_correction(case),
        Suite::BinomialMultiple | Suite::BinomialCoprime | Suite::BinomialShifted => {
            binomial_lift(case)
        }
        Suite::CentralLucasIdentity => Ok(central_lucas_identity(&case.m_big(), case.n())),
        Suite::FermatQuotient => fermat_quotient(case),
        Suite::LucasBlockSum => lucas_block_sum(case),
        Suite::BlockSumTransfer => transfer::evaluate(case, seed),
    }
}

fn series_asd(case: &CongruenceCase) -> Result<Verdict> {
    let p = case.p();
    let spec = series_spec(case)?;
    let multiplier = if case.suite() == Suite::SeriesAsdM4 {
        int(p)
    } else {
        int(symbol(spec.m(), p)?)
    };
    let asd = AsdSpec {
        sequence: Box::new(|i| s_sum_exact(i, &spec)),
        multiplier,
        exponent: Box::new(|a| 2 * a),
        index: Box::new(move |n, a| n * p.pow(a)),
    };
    asd_check(&asd, p, case.n(), case.alpha())
}

fn apery_asd(case: &CongruenceCase) -> Result<Verdict> {
    let p = case.p();
    let asd = AsdSpec {
        sequence: Box::new(|i| int(apery(i))),
        multiplier: BigRational::one(),
        exponent: Box::new(|a| 3 * a),
        index: Box::new(move |n, a| n * p.pow(a) - 1),
    };
    asd_check(&asd, p, case.n(), case.alpha())
}

fn series_mod_p(case: &CongruenceCase) -> Result<Verdict> {
    let p = case.p();
    let spec = series_spec(case)?;
    let e = symbol(spec.m(), p)?;
    let lhs = s_sum_exact(p, &spec);
    if case.suite() == Suite::SeriesModP {
        return congruence_verdict(lhs, int(e), p, 1);
    }
    let u = crate::lucas::lucas_u(p as i64 - e as i64, &LucasParams::for_multiplier(spec.m()))?;
    congruence_verdict(lhs, int(u + e), p, 2)
}

fn series_asd_correction(case: &CongruenceCase) -> Result<Verdict> {
    let (p, n, alpha) = (case.p(), case.n(), case.alpha());
    let spec = series_spec(case)?;
    let m = spec.m().clone();
    let e = symbol(&m, p)?;
    let q = n * p.pow(alpha - 1);
    let lhs = s_sum_exact(q * p, &spec) - int(e) * s_sum_exact(q, &spec);
    let u = crate::lucas::lucas_u(p as i64 - e as i64, &LucasParams::for_multiplier(&m))?;
    let rhs = BigRational::new(
        BigInt::from(q) * binomial(2 * q - 1, q as i64 - 1) * u,
        signed_pow(&m, q - 1),
    );
    congruence_verdict(lhs, rhs, p, alpha + 1)
}

fn sign(exp: u64) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn binomial_lift(case: &CongruenceCase) -> Result<Verdict> {
    let (p, n, alpha, k) = (case.p(), case.n(), case.alpha(), case.k());
    let top = n * p.pow(alpha);
    let lower_top = n * p.pow(alpha - 1);
    match case.suite() {
        Suite::BinomialMultiple => congruence_verdict(
            int(binomial(top, k as i64)),
            int(binomial(lower_top, (k / p) as i64)),
            p,
            2 * alpha,
        ),
        Suite::BinomialCoprime => {
            let j = (k - 1) / p;
            let rhs = BigRational::new(BigInt::from(top), BigInt::from(k))
                * int(binomial(lower_top - 1, j as i64) * sign(k - 1 - j));
            congruence_verdict(int(binomial(top, k as i64)), rhs, p, 2 * alpha)
        }
        _ => {
            let j = k / p;
            congruence_verdict(
                int(binomial(top - 1, k as i64)),
                int(binomial(lower_top - 1, j as i64) * sign(k - j)),
                p,
                alpha,
            )
        }
    }
}

/// `m^(n-1) sum_{k<n} C(2k,k)/m^k` and `sum_{k<n} C(2n,k) u_{n-k}(m-2,1)`.
pub fn central_lucas_sides(m: &BigInt, n: u64) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    let mut central = BigInt::one();
    for k in 0..n {
        if k > 0 {
            central = central * (2 * (2 * k - 1)) / k;
        }
        lhs = lhs * m + &central;
    }
    let table =
        LucasTable::new(0, n as i64, &LucasParams::for_multiplier(m)).expect("nonnegative range");
    let rhs = (0..n)
        .map(|k| binomial(2 * n, k as i64) * table.get((n - k) as i64))
        .sum();
    (lhs, rhs)
}

pub(crate) fn central_lucas_identity(m: &BigInt, n: u64) -> Verdict {
    let (lhs, rhs) = central_lucas_sides(m, n);
    let achieved = (lhs == rhs).then_some(Valuation::Infinite);
    Verdict {
        lhs: Value::Exact(int(lhs)),
        rhs: Value::Exact(int(rhs)),
        required: Requirement::Exact,
        achieved,
    }
}

fn fermat_quotient(case: &CongruenceCase) -> Result<Verdict> {
    let (p, alpha, s) = (case.p(), case.alpha(), case.s());
    let m = case.m_big();
    congruence_verdict(
        fermat_quotient_factor(&m, p, alpha),
        fermat_quotient_factor(&m, p, s),
        p,
        s,
    )
}

fn lucas_block_sum(case: &CongruenceCase) -> Result<Verdict> {
    let (p, n, alpha, s, l) = (case.p(), case.n(), case.alpha(), case.s(), case.l());
    let m = case.m_big();
    let params = LucasParams::for_multiplier(&m);
    let top = (n * p.pow(alpha)) as i64;
    let ps = p.pow(s);
    let (first, last) = (l * ps, (l + 1) * ps - 1);
    let shifted = (n * p.pow(alpha - s)) as i64 - l as i64;
    let lo = (top - last as i64).min(shifted - 1);
    let hi = (top - first as i64).max(shifted);
    let table = LucasTable::new(lo, hi, &params)?;

    let mut lhs = BigRational::zero();
    for k in (first..=last).filter(|k| k % p != 0) {
        let term = BigRational::new(sign(k) * table.get(top - k as i64), BigInt::from(k));
        lhs += term;
    }
    let e = symbol(&m, p)?;
    let rhs = -fermat_quotient_factor(&m, p, alpha)
        * int(BigInt::from(e).pow(s) * sign(l) * (table.get(shifted) + table.get(shifted - 1)));
    congruence_verdict(lhs, rhs, p, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::case::CaseParams;
    use crate::exact::rat;

    fn case(suite: Suite, f: impl FnOnce(&mut CaseParams)) -> CongruenceCase {
        let mut params = CaseParams::default();
        f(&mut params);
        CongruenceCase::new(suite, params).unwrap()
    }

    fn run(c: &CongruenceCase) -> Verdict {
        evaluate(c, 0).unwrap()
    }

    #[test]
    fn fermat_quotient_values() {
        let m = BigInt::from(2);
        assert_eq!(fermat_quotient_factor(&m, 3, 2), rat(7, 2));
        assert_eq!(fermat_quotient_factor(&m, 3, 1), rat(1, 2));
    }

    #[test]
    fn binomial_examples() {
        let v = run(&case(Suite::BinomialMultiple, |c| {
            *c = CaseParams {
                p: Some(3),
                n: Some(2),
                alpha: Some(1),
                k: Some(3),
                ..Default::default()
            }
        }));
        assert_eq!(
            (v.lhs.to_string(), v.rhs.to_string()),
            ("20".into(), "2".into())
        );
        assert_eq!(v.achieved, Some(Valuation::Finite(2)));

        let v = run(&case(Suite::BinomialCoprime, |c| {
            *c = CaseParams {
                p: Some(3),
                n: Some(1),
                alpha: Some(1),
                k: Some(2),
                ..Default::default()
            }
        }));
        assert_eq!(v.rhs.to_string(), "-3/2");
        assert_eq!(v.achieved, Some(Valuation::Finite(2)));

        let v = run(&case(Suite::BinomialShifted, |c| {
            *c = CaseParams {
                p: Some(3),
                n: Some(1),
                alpha: Some(2),
                k: Some(4),
                ..Default::default()
            }
        }));
        assert_eq!(
            (v.lhs.to_string(), v.rhs.to_string()),
            ("70".into(), "-2".into())
        );
        assert_eq!(v.achieved, Some(Valuation::Finite(2)));
        assert!(v.holds());
    }

    #[test]
    fn central_lucas_examples() {
        assert_eq!(
            central_lucas_sides(&BigInt::from(1), 2),
            (BigInt::from(3), BigInt::from(3))
        );
        assert_eq!(
            central_lucas_sides(&BigInt::from(2), 1),
            (BigInt::from(1), BigInt::from(1))
        );
        assert!(central_lucas_identity(&BigInt::from(-7), 40).holds());
    }

    #[test]
    fn lucas_block_sum_example() {
        let v = run(&case(Suite::LucasBlockSum, |c| {
            *c = CaseParams {
                p: Some(3),
                m: Some(2),
                n: Some(1),
                alpha: Some(1),
                s: Some(1),
                l: Some(0),
                ..Default::default()
            }
        }));
        assert_eq!(v.lhs, Value::Exact(rat(1, 2)));
        assert_eq!(v.rhs, Value::Exact(rat(1, 2)));
        assert_eq!(v.achieved, Some(Valuation::Infinite));
    }

    #[test]
    fn correction_example() {
        let v = run(&case(Suite::SeriesAsdCorrection, |c| {
            *c = CaseParams {
                p: Some(3),
                m: Some(5),
                n: Some(1),
                alpha: Some(1),
                ..Default::default()
            }
        }));
        assert_eq!(v.lhs, Value::Exact(rat(66, 25)));
        assert_eq!(v.rhs, Value::Exact(int(21)));
        assert!(v.holds());
    }
}
