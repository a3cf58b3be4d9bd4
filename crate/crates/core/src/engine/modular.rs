//! Residue-level evaluation for the suites whose summation index can grow
//! large. Working precision comes from [`required_guard`]; every division
//! goes through [`PadicApprox::try_div`] so precision loss is tracked.

use num_bigint::BigInt;

use crate::engine::case::{CongruenceCase, Requirement, Suite, Value, Verdict};
use crate::engine::oracle::symbol;
use crate::error::{Error, Result};
use crate::lucas::{lucas_u_mod, LucasParams};
use crate::padic::{required_guard, PadicApprox, PadicCtx};
use crate::series::{central_binomial_mod, s_sum_mod_checkpoints, SeriesSpec};

pub(crate) fn supports(suite: Suite) -> bool {
    matches!(
        suite,
        Suite::SeriesAsd
            | Suite::SeriesAsdM4
            | Suite::SeriesModP
            | Suite::SeriesModP2
            | Suite::SeriesAsdCorrection
            | Suite::FermatQuotient
            | Suite::LucasBlockSum
    )
}

/// A modular verdict together with the precision of the compared difference.
pub(crate) struct ModularVerdict {
    pub verdict: Verdict,
    pub precision: u32,
}

fn finish(lhs: PadicApprox, rhs: PadicApprox, required: u32) -> Result<ModularVerdict> {
    let diff = lhs.try_sub(&rhs)?;
    diff.require(required)?;
    Ok(ModularVerdict {
        verdict: Verdict {
            lhs: Value::Residue(lhs),
            rhs: Value::Residue(rhs),
            required: Requirement::Exponent(required),
            achieved: Some(diff.valuation_class()),
        },
        precision: diff.precision(),
    })
}

pub(crate) fn evaluate(case: &CongruenceCase) -> Result<ModularVerdict> {
    match case.suite() {
        Suite::SeriesAsd | Suite::SeriesAsdM4 => series_asd(case),
        Suite::SeriesModP | Suite::SeriesModP2 => series_mod_p(case),
        Suite::SeriesAsdCorrection => series_asd_correction(case),
        Suite::FermatQuotient => fermat_quotient(case),
        Suite::LucasBlockSum => lucas_block_sum(case),
        other => Err(Error::invalid(format!("{other} has no modular path"))),
    }
}

fn series_asd(case: &CongruenceCase) -> Result<ModularVerdict> {
    let (p, n, alpha) = (case.p(), case.n(), case.alpha());
    let spec = SeriesSpec::new(case.m(), case.variant())?;
    let top = n * p.pow(alpha);
    let required = 2 * alpha;
    let ctx = PadicCtx::new(p, required_guard(top, required, p))?;
    let sums = s_sum_mod_checkpoints(&[top, top / p], &spec, &ctx)?;
    let multiplier = if case.suite() == Suite::SeriesAsdM4 {
        ctx.from_i64(p as i64)
    } else {
        ctx.from_i64(symbol(spec.m(), p)? as i64)
    };
    finish(sums[0], &multiplier * &sums[1], required)
}

fn series_mod_p(case: &CongruenceCase) -> Result<ModularVerdict> {
    let p = case.p();
    let spec = SeriesSpec::new(case.m(), case.variant())?;
    let required = if case.suite() == Suite::SeriesModP {
        1
    } else {
        2
    };
    let ctx = PadicCtx::new(p, required_guard(p, required, p))?;
    let lhs = s_sum_mod_checkpoints(&[p], &spec, &ctx)?[0];
    let e = symbol(spec.m(), p)?;
    let mut rhs = ctx.from_i64(e as i64);
    if case.suite() == Suite::SeriesModP2 {
        let u = lucas_u_mod(
            p as i64 - e as i64,
            &LucasParams::for_multiplier(spec.m()),
            &ctx,
        )?;
        rhs = &rhs + &u;
    }
    finish(lhs, rhs, required)
}

fn series_asd_correction(case: &CongruenceCase) -> Result<ModularVerdict> {
    let (p, n, alpha) = (case.p(), case.n(), case.alpha());
    let spec = SeriesSpec::new(case.m(), case.variant())?;
    let q = n * p.pow(alpha - 1);
    let required = alpha + 1;
    let ctx = PadicCtx::new(p, required_guard(q * p, required, p))?;
    let sums = s_sum_mod_checkpoints(&[q * p, q], &spec, &ctx)?;
    let e = symbol(spec.m(), p)?;
    let lhs = &sums[0] - &(&ctx.from_i64(e as i64) * &sums[1]);

    // q C(2q-1, q-1) u / m^(q-1), with C(2q-1, q-1) = C(2q, q) / 2.
    let half_central = central_binomial_mod(q, &ctx).try_div(&ctx.from_i64(2))?;
    let m_pow = ctx.from_bigint(spec.m()).pow(q - 1);
    let u = lucas_u_mod(
        p as i64 - e as i64,
        &LucasParams::for_multiplier(spec.m()),
        &ctx,
    )?;
    let rhs = (&(&ctx.from_i64(q as i64) * &half_central) * &u).try_div(&m_pow)?;
    finish(lhs, rhs, required)
}

/// `(m^(p^a - p^(a-1)) - 1) / (2 p^a)` modulo `p^(ctx precision)`.
pub fn fermat_quotient_factor_mod(m: &BigInt, alpha: u32, ctx: &PadicCtx) -> Result<PadicApprox> {
    let p = ctx.p();
    // Compute the numerator with alpha extra digits; the division eats them.
    let wide = ctx.with_precision(ctx.precision() + alpha)?;
    let phi = p.pow(alpha) - p.pow(alpha - 1);
    let numerator = &wide.from_bigint(m).pow(phi) - &wide.one();
    let denominator = wide.from_i64(2 * p.pow(alpha) as i64);
    numerator
        .div_with_requirement(&denominator, ctx.precision())?
        .rebase(*ctx)
}

fn fermat_quotient(case: &CongruenceCase) -> Result<ModularVerdict> {
    let (p, alpha, s) = (case.p(), case.alpha(), case.s());
    let m = case.m_big();
    let ctx = PadicCtx::new(p, required_guard(p.pow(alpha), s, p))?;
    let lhs = fermat_quotient_factor_mod(&m, alpha, &ctx)?;
    let rhs = fermat_quotient_factor_mod(&m, s, &ctx)?;
    finish(lhs, rhs, s)
}

fn lucas_block_sum(case: &CongruenceCase) -> Result<ModularVerdict> {
    let (p, n, alpha, s, l) = (case.p(), case.n(), case.alpha(), case.s(), case.l());
    let m = case.m_big();
    let params = LucasParams::for_multiplier(&m);
    let top = n * p.pow(alpha);
    let ctx = PadicCtx::new(p, required_guard(top, s, p))?;
    let ps = p.pow(s);

    let mut lhs = ctx.zero();
    for k in (l * ps..(l + 1) * ps).filter(|k| k % p != 0) {
        let u = lucas_u_mod(top as i64 - k as i64, &params, &ctx)?;
        let mut term = u.try_div(&ctx.from_i64(k as i64))?;
        if k % 2 == 1 {
            term = term.negate();
        }
        lhs = &lhs + &term;
    }

    let e = symbol(&m, p)? as i64;
    let shifted = (n * p.pow(alpha - s)) as i64 - l as i64;
    let lucas_pair =
        &lucas_u_mod(shifted, &params, &ctx)? + &lucas_u_mod(shifted - 1, &params, &ctx)?;
    let sign = if l % 2 == 0 { 1 } else { -1 };
    let scalar = ctx.from_i64(-sign * e.pow(s));
    let factor = fermat_quotient_factor_mod(&m, alpha, &ctx)?;
    let rhs = &(&scalar * &factor) * &lucas_pair;
    finish(lhs, rhs, s)
}
