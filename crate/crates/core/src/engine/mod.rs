//! Congruence statements as checkable cases, evaluated by an exact oracle
//! and, for large indices, by residue arithmetic.

pub mod asd;
pub mod case;
pub mod modular;
pub mod oracle;
pub mod sweep;
pub mod transfer;

pub use asd::{asd_check, AsdSpec};
pub use case::{
    CaseParams, CaseResult, CongruenceCase, EvalPath, Requirement, Status, Suite, Value, Verdict,
};
pub use oracle::{central_lucas_sides, fermat_quotient_factor};
pub use sweep::{run_plan, run_suite, Ranges, Report, Span, SweepPlan};
pub use transfer::{check_block_sum_transfer, TransferSpec};

use crate::error::{Error, Result};
use crate::series::Variant;

/// Path-selection thresholds and the seed for randomised suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Cases with index at most this use the exact oracle.
    pub oracle_cutoff: u64,
    /// Cases with index at most this also run the modular path and must agree.
    pub crosscheck_cutoff: u64,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            oracle_cutoff: 3000,
            crosscheck_cutoff: 1500,
            seed: 0,
        }
    }
}

/// Whether the suite has a residue-level evaluation.
pub fn has_modular_path(suite: Suite) -> bool {
    modular::supports(suite)
}

/// Evaluates with the oracle only.
pub fn evaluate_oracle(case: &CongruenceCase, seed: u64) -> Result<Verdict> {
    oracle::evaluate(case, seed)
}

/// Evaluates with the modular path only. Returns the verdict and the
/// precision of the compared difference.
pub fn evaluate_modular(case: &CongruenceCase) -> Result<(Verdict, u32)> {
    let m = modular::evaluate(case)?;
    Ok((m.verdict, m.precision))
}

/// Evaluates a case, choosing paths by index. When both paths run, the
/// oracle result is reported and any disagreement is an error.
pub fn evaluate_case(case: &CongruenceCase, cfg: &EngineConfig) -> CaseResult {
    let index = case.index();
    let modular = has_modular_path(case.suite());
    let fail =
        |err: Error, path| CaseResult::errored(case.suite(), case.params().clone(), &err, path);

    if !modular || index > cfg.oracle_cutoff {
        if !modular {
            return match oracle::evaluate(case, cfg.seed) {
                Ok(v) => CaseResult::from_verdict(case, v, EvalPath::Oracle),
                Err(e) => fail(e, EvalPath::Oracle),
            };
        }
        return match modular::evaluate(case) {
            Ok(m) => CaseResult::from_verdict(case, m.verdict, EvalPath::Modular),
            Err(e) => fail(e, EvalPath::Modular),
        };
    }

    let exact = match oracle::evaluate(case, cfg.seed) {
        Ok(v) => v,
        Err(e) => return fail(e, EvalPath::Oracle),
    };
    if index > cfg.crosscheck_cutoff {
        return CaseResult::from_verdict(case, exact, EvalPath::Oracle);
    }
    match modular::evaluate(case) {
        Ok(m) => {
            let capped = exact.achieved.map(|v| v.cap(m.precision as i64));
            if capped != m.verdict.achieved {
                let msg = format!(
                    "oracle valuation {} (capped {}) but modular valuation {}",
                    show(exact.achieved),
                    show(capped),
                    show(m.verdict.achieved)
                );
                return fail(Error::PathDisagreement(msg), EvalPath::Both);
            }
            CaseResult::from_verdict(case, exact, EvalPath::Both)
        }
        Err(e) => fail(e, EvalPath::Both),
    }
}

fn show(v: Option<crate::exact::Valuation>) -> String {
    v.map_or_else(|| "none".into(), |v| v.to_string())
}

fn run(suite: Suite, params: CaseParams) -> Result<CaseResult> {
    let case = CongruenceCase::new(suite, params)?;
    Ok(evaluate_case(&case, &EngineConfig::default()))
}

fn series_params(p: u64, m: i64, n: u64, alpha: u32, variant: Variant) -> CaseParams {
    CaseParams {
        p: Some(p),
        m: Some(m),
        n: Some(n),
        alpha: Some(alpha),
        variant: Some(variant),
        ..Default::default()
    }
}

/// `S_{np^a}(m) ≡ (m(m-4)/p) S_{np^(a-1)}(m) (mod p^2a)` for `m` in 1..=3.
pub fn check_series_asd(
    p: u64,
    n: u64,
    alpha: u32,
    m: i64,
    variant: Variant,
) -> Result<CaseResult> {
    run(Suite::SeriesAsd, series_params(p, m, n, alpha, variant))
}

/// `S_{np^a}(4) ≡ p S_{np^(a-1)}(4) (mod p^2a)`.
pub fn check_series_asd_m4(p: u64, n: u64, alpha: u32) -> Result<CaseResult> {
    run(
        Suite::SeriesAsdM4,
        series_params(p, 4, n, alpha, Variant::Corrected),
    )
}

/// `S_p(m) ≡ (m(m-4)/p) (mod p)`.
pub fn check_series_mod_p(p: u64, m: i64) -> Result<CaseResult> {
    let params = CaseParams {
        p: Some(p),
        m: Some(m),
        ..Default::default()
    };
    run(Suite::SeriesModP, params)
}

/// `S_p(m) ≡ (m(m-4)/p) + u_{p-(m(m-4)/p)}(m-2, 1) (mod p^2)`.
pub fn check_series_mod_p2(p: u64, m: i64) -> Result<CaseResult> {
    let params = CaseParams {
        p: Some(p),
        m: Some(m),
        ..Default::default()
    };
    run(Suite::SeriesModP2, params)
}

/// The mod `p^(a+1)` relation with explicit Lucas correction term.
pub fn check_series_asd_correction(p: u64, n: u64, alpha: u32, m: i64) -> Result<CaseResult> {
    run(
        Suite::SeriesAsdCorrection,
        series_params(p, m, n, alpha, Variant::Corrected),
    )
}

/// `A_{np^a - 1} ≡ A_{np^(a-1) - 1} (mod p^3a)`, `p >= 5`.
pub fn check_apery_asd(p: u64, n: u64, alpha: u32) -> Result<CaseResult> {
    let params = CaseParams {
        p: Some(p),
        n: Some(n),
        alpha: Some(alpha),
        ..Default::default()
    };
    run(Suite::AperyAsd, params)
}

/// Binomial lifting congruences; `suite` selects which of the three.
pub fn check_binomial_lift(suite: Suite, p: u64, n: u64, alpha: u32, k: u64) -> Result<CaseResult> {
    if !matches!(
        suite,
        Suite::BinomialMultiple | Suite::BinomialCoprime | Suite::BinomialShifted
    ) {
        return Err(Error::InvalidParameter(format!(
            "{suite} is not a binomial suite"
        )));
    }
    let params = CaseParams {
        p: Some(p),
        n: Some(n),
        alpha: Some(alpha),
        k: Some(k),
        ..Default::default()
    };
    run(suite, params)
}

/// Exact identity `m^(n-1) S_n(m) = sum_{k<n} C(2n,k) u_{n-k}(m-2, 1)`.
pub fn check_central_lucas_identity(m: i64, n: u64) -> Result<CaseResult> {
    let params = CaseParams {
        m: Some(m),
        n: Some(n),
        ..Default::default()
    };
    run(Suite::CentralLucasIdentity, params)
}

/// The Fermat-quotient factor at `alpha` agrees with the one at `s` mod `p^s`.
pub fn check_fermat_quotient_stability(m: i64, p: u64, alpha: u32, s: u32) -> Result<CaseResult> {
    let params = CaseParams {
        p: Some(p),
        m: Some(m),
        alpha: Some(alpha),
        s: Some(s),
        ..Default::default()
    };
    run(Suite::FermatQuotient, params)
}

/// Block sums of `(-1)^k u_{p^a n - k} / k` over `floor(k / p^s) = l`.
pub fn check_lucas_block_sum(
    m: i64,
    p: u64,
    n: u64,
    l: u64,
    alpha: u32,
    s: u32,
) -> Result<CaseResult> {
    let params = CaseParams {
        p: Some(p),
        m: Some(m),
        n: Some(n),
        alpha: Some(alpha),
        s: Some(s),
        l: Some(l),
        ..Default::default()
    };
    run(Suite::LucasBlockSum, params)
}
