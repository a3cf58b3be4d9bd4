use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{ensure_odd_prime, format_rational, Valuation};
use crate::padic::PadicApprox;
use crate::series::Variant;

/// Which congruence a case checks. The string ids are the names used on the
/// command line and in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// `S_{np^a} ≡ (m(m-4)/p) S_{np^(a-1)} (mod p^2a)`, m in {1,2,3}.
    SeriesAsd,
    /// `S_{np^a}(4) ≡ p S_{np^(a-1)}(4) (mod p^2a)`.
    SeriesAsdM4,
    /// `A_{np^a - 1} ≡ A_{np^(a-1) - 1} (mod p^3a)`.
    AperyAsd,
    /// `S_p ≡ (m(m-4)/p) (mod p)`.
    SeriesModP,
    /// `S_p ≡ (m(m-4)/p) + u_{p - (m(m-4)/p)}(m-2, 1) (mod p^2)`.
    SeriesModP2,
    /// The mod `p^(a+1)` ASD relation with the explicit correction term.
    SeriesAsdCorrection,
    /// `C(p^a n, k) ≡ C(p^(a-1) n, k/p) (mod p^2a)` for `p | k`.
    BinomialMultiple,
    /// `C(p^a n, k)` for `p ∤ k` (mod `p^2a`).
    BinomialCoprime,
    /// `C(p^a n - 1, k)` against the digit-shifted binomial (mod `p^a`).
    BinomialShifted,
    /// The exact identity between central binomial and Lucas sums.
    CentralLucasIdentity,
    /// Stability of the Fermat-quotient factor `(m^φ(p^a) - 1) / 2p^a`.
    FermatQuotient,
    /// Block sums of `(-1)^k u_{p^a n - k} / k` over `floor(k/p^s) = l`.
    LucasBlockSum,
    /// Weighted block sums of sequences with vanishing block sums.
    BlockSumTransfer,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::SeriesAsd,
        Suite::SeriesAsdM4,
        Suite::AperyAsd,
        Suite::SeriesModP,
        Suite::SeriesModP2,
        Suite::SeriesAsdCorrection,
        Suite::BinomialMultiple,
        Suite::BinomialCoprime,
        Suite::BinomialShifted,
        Suite::CentralLucasIdentity,
        Suite::FermatQuotient,
        Suite::LucasBlockSum,
        Suite::BlockSumTransfer,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::SeriesAsd => "thm-main",
            Suite::SeriesAsdM4 => "thm-m4",
            Suite::AperyAsd => "eq-apery",
            Suite::SeriesModP => "eq-mod-p",
            Suite::SeriesModP2 => "eq-mod-p2",
            Suite::SeriesAsdCorrection => "eq-sun-asd",
            Suite::BinomialMultiple => "lemma-2-1-i",
            Suite::BinomialCoprime => "lemma-2-1-ii",
            Suite::BinomialShifted => "lemma-2-1-iii",
            Suite::CentralLucasIdentity => "lemma-2-2",
            Suite::FermatQuotient => "lemma-2-3",
            Suite::LucasBlockSum => "lemma-2-4",
            Suite::BlockSumTransfer => "lemma-2-5",
        }
    }

    /// Suites whose value depends on the sign convention of the series.
    pub fn uses_variant(self) -> bool {
        matches!(
            self,
            Suite::SeriesAsd
                | Suite::SeriesAsdM4
                | Suite::SeriesModP
                | Suite::SeriesModP2
                | Suite::SeriesAsdCorrection
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.id() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

/// Parameters of one case. Fields that do not apply to a suite are `None`.
/// Field order is the report sort order after the suite id.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CaseParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
}

fn need<T: Copy>(value: Option<T>, name: &str, suite: Suite) -> Result<T> {
    value.ok_or_else(|| Error::invalid(format!("{suite} requires parameter {name}")))
}

fn ensure_not_divisible(p: u64, m: i64) -> Result<()> {
    if m % p as i64 == 0 {
        Err(Error::NotPIntegral { p, valuation: -1 })
    } else {
        Ok(())
    }
}

/// Checked `n * p^alpha`.
pub(crate) fn scaled_index(n: u64, p: u64, alpha: u32) -> Result<u64> {
    (p as u128)
        .checked_pow(alpha)
        .and_then(|pa| pa.checked_mul(n as u128))
        .filter(|&x| x <= i64::MAX as u128)
        .map(|x| x as u64)
        .ok_or_else(|| Error::invalid(format!("index {n}*{p}^{alpha} overflows")))
}

/// One validated instance of a congruence statement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceCase {
    suite: Suite,
    params: CaseParams,
}

impl CongruenceCase {
    /// Validates parameter applicability. A prime dividing the series
    /// multiplier is reported as [`Error::NotPIntegral`], which sweeps record
    /// as an ill-posed case.
    pub fn new(suite: Suite, mut params: CaseParams) -> Result<Self> {
        use Suite::*;
        if suite.uses_variant() {
            params.variant.get_or_insert(Variant::Corrected);
        } else {
            params.variant = None;
        }
        if suite != CentralLucasIdentity {
            ensure_odd_prime(need(params.p, "p", suite)?)?;
        }
        let positive = |v: Option<u64>, name: &str| -> Result<u64> {
            let v = need(v, name, suite)?;
            if v == 0 {
                Err(Error::invalid(format!("{suite} requires {name} >= 1")))
            } else {
                Ok(v)
            }
        };
        let alpha_at_least_one = |params: &CaseParams| -> Result<u32> {
            let a = need(params.alpha, "alpha", suite)?;
            if a == 0 {
                Err(Error::invalid(format!("{suite} requires alpha >= 1")))
            } else {
                Ok(a)
            }
        };
        match suite {
            SeriesAsd | SeriesAsdM4 | SeriesAsdCorrection => {
                let p = params.p.unwrap();
                positive(params.n, "n")?;
                alpha_at_least_one(&params)?;
                scaled_index(params.n.unwrap(), p, params.alpha.unwrap())?;
                match suite {
                    SeriesAsd => {
                        let m = need(params.m, "m", suite)?;
                        if !(1..=3).contains(&m) {
                            return Err(Error::invalid(format!("{suite} requires m in {{1,2,3}}")));
                        }
                        ensure_not_divisible(p, m)?;
                    }
                    SeriesAsdM4 => params.m = Some(4),
                    _ => {
                        let m = need(params.m, "m", suite)?;
                        if m == 0 {
                            return Err(Error::invalid("m must be nonzero"));
                        }
                        ensure_not_divisible(p, m)?;
                    }
                }
            }
            SeriesModP | SeriesModP2 => {
                let m = need(params.m, "m", suite)?;
                if m == 0 {
                    return Err(Error::invalid("m must be nonzero"));
                }
                ensure_not_divisible(params.p.unwrap(), m)?;
            }
            AperyAsd => {
                let p = params.p.unwrap();
                if p < 5 {
                    return Err(Error::invalid(format!("{suite} requires p >= 5")));
                }
                positive(params.n, "n")?;
                let a = alpha_at_least_one(&params)?;
                scaled_index(params.n.unwrap(), p, a)?;
            }
            BinomialMultiple | BinomialCoprime | BinomialShifted => {
                let p = params.p.unwrap();
                let n = positive(params.n, "n")?;
                let a = alpha_at_least_one(&params)?;
                let top = scaled_index(n, p, a)?;
                let k = need(params.k, "k", suite)?;
                if k > top {
                    return Err(Error::invalid(format!("{suite} requires k <= n p^alpha")));
                }
                match suite {
                    BinomialMultiple if k % p != 0 => {
                        return Err(Error::invalid(format!("{suite} requires p | k")))
                    }
                    BinomialCoprime if k % p == 0 => {
                        return Err(Error::invalid(format!("{suite} requires p ∤ k")))
                    }
                    _ => {}
                }
            }
            CentralLucasIdentity => {
                params.p = None;
                let m = need(params.m, "m", suite)?;
                if m == 0 {
                    return Err(Error::invalid("m must be nonzero"));
                }
                positive(params.n, "n")?;
            }
            FermatQuotient | LucasBlockSum => {
                let p = params.p.unwrap();
                let a = alpha_at_least_one(&params)?;
                let s = need(params.s, "s", suite)?;
                if s == 0 || s > a {
                    return Err(Error::invalid(format!("{suite} requires alpha >= s >= 1")));
                }
                let m = need(params.m, "m", suite)?;
                if suite == LucasBlockSum {
                    if !(1..=3).contains(&m) {
                        return Err(Error::invalid(format!("{suite} requires m in {{1,2,3}}")));
                    }
                    let n = positive(params.n, "n")?;
                    need(params.l, "l", suite)?;
                    scaled_index(n, p, a)?;
                } else {
                    scaled_index(1, p, a)?;
                    if m == 0 {
                        return Err(Error::invalid("m must be nonzero"));
                    }
                }
                ensure_not_divisible(p, m)?;
            }
            BlockSumTransfer => {
                let p = params.p.unwrap();
                let a = alpha_at_least_one(&params)?;
                let n = positive(params.n, "n")?;
                let m = need(params.m, "m", suite)?;
                if m < 1 {
                    return Err(Error::invalid(format!("{suite} requires m >= 1")));
                }
                need(params.l, "l", suite)?;
                need(params.trial, "trial", suite)?;
                scaled_index(n * m as u64, p, a)?;
            }
        }
        Ok(CongruenceCase { suite, params })
    }

    pub fn suite(&self) -> Suite {
        self.suite
    }

    pub fn params(&self) -> &CaseParams {
        &self.params
    }

    pub fn variant(&self) -> Variant {
        self.params.variant.unwrap_or_default()
    }

    pub fn sort_key(&self) -> (&'static str, &CaseParams) {
        (self.suite.id(), &self.params)
    }

    /// Largest summation index the case touches; drives oracle/modular path
    /// selection and the `max_index` bound of sweeps.
    pub fn index(&self) -> u64 {
        let p = &self.params;
        let scaled = |n: u64, a: u32| scaled_index(n, p.p.unwrap_or(1), a).unwrap_or(u64::MAX);
        match self.suite {
            Suite::SeriesAsd
            | Suite::SeriesAsdM4
            | Suite::SeriesAsdCorrection
            | Suite::BinomialMultiple
            | Suite::BinomialCoprime
            | Suite::BinomialShifted
            | Suite::LucasBlockSum => scaled(p.n.unwrap(), p.alpha.unwrap()),
            Suite::AperyAsd => scaled(p.n.unwrap(), p.alpha.unwrap()) - 1,
            Suite::SeriesModP | Suite::SeriesModP2 => p.p.unwrap(),
            Suite::CentralLucasIdentity => p.n.unwrap(),
            Suite::FermatQuotient => scaled(1, p.alpha.unwrap()),
            Suite::BlockSumTransfer => scaled(p.n.unwrap() * p.m.unwrap() as u64, p.alpha.unwrap()),
        }
    }

    pub(crate) fn p(&self) -> u64 {
        self.params.p.expect("validated")
    }

    pub(crate) fn m(&self) -> i64 {
        self.params.m.expect("validated")
    }

    pub(crate) fn m_big(&self) -> BigInt {
        BigInt::from(self.m())
    }

    pub(crate) fn n(&self) -> u64 {
        self.params.n.expect("validated")
    }

    pub(crate) fn alpha(&self) -> u32 {
        self.params.alpha.expect("validated")
    }

    pub(crate) fn s(&self) -> u32 {
        self.params.s.expect("validated")
    }

    pub(crate) fn l(&self) -> u64 {
        self.params.l.expect("validated")
    }

    pub(crate) fn k(&self) -> u64 {
        self.params.k.expect("validated")
    }
}

/// A side of a congruence: an exact rational or a residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Exact(BigRational),
    Residue(PadicApprox),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(x) => f.write_str(&format_rational(x)),
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Required exponent, or exact equality for identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Requirement {
    Exponent(u32),
    Exact,
}

impl Requirement {
    pub fn is_met_by(self, achieved: Option<Valuation>) -> bool {
        match (self, achieved) {
            (Requirement::Exponent(e), Some(v)) => v.reaches(e as i64) == Some(true),
            (Requirement::Exact, Some(Valuation::Infinite)) => true,
            _ => false,
        }
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            Requirement::Exponent(e) => Some(e),
            Requirement::Exact => None,
        }
    }
}

impl Serialize for Requirement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Requirement::Exponent(e) => serializer.serialize_u32(*e),
            Requirement::Exact => serializer.serialize_str("exact"),
        }
    }
}

/// Both sides of a congruence and the valuation of their difference.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub lhs: Value,
    pub rhs: Value,
    pub required: Requirement,
    /// `None` only for a failed exact identity, where no prime is attached.
    pub achieved: Option<Valuation>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.required.is_met_by(self.achieved)
    }

    /// Achieved minus required; `None` when not applicable.
    pub fn margin(&self) -> Option<Valuation> {
        match (self.required, self.achieved) {
            (Requirement::Exponent(e), Some(v)) => Some(v.margin(e as i64)),
            (Requirement::Exact, Some(Valuation::Infinite)) => Some(Valuation::Infinite),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Error,
    /// The statement is not meaningful for these parameters (e.g. `p | m`).
    IllPosed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalPath {
    Oracle,
    Modular,
    Both,
    None,
}

/// Verdict plus bookkeeping for one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub suite: Suite,
    pub params: CaseParams,
    pub verdict: Option<Verdict>,
    pub status: Status,
    pub path: EvalPath,
    pub error: Option<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn achieved(&self) -> Option<Valuation> {
        self.verdict.as_ref().and_then(|v| v.achieved)
    }

    pub fn required(&self) -> Option<Requirement> {
        self.verdict.as_ref().map(|v| v.required)
    }

    pub fn margin(&self) -> Option<Valuation> {
        self.verdict.as_ref().and_then(Verdict::margin)
    }

    pub fn sort_key(&self) -> (&'static str, &CaseParams) {
        (self.suite.id(), &self.params)
    }

    pub(crate) fn from_verdict(case: &CongruenceCase, verdict: Verdict, path: EvalPath) -> Self {
        let status = if verdict.holds() {
            Status::Pass
        } else {
            Status::Fail
        };
        CaseResult {
            suite: case.suite,
            params: case.params.clone(),
            verdict: Some(verdict),
            status,
            path,
            error: None,
        }
    }

    pub(crate) fn errored(suite: Suite, params: CaseParams, err: &Error, path: EvalPath) -> Self {
        let status = if matches!(err, Error::NotPIntegral { .. }) {
            Status::IllPosed
        } else {
            Status::Error
        };
        CaseResult {
            suite,
            params,
            verdict: None,
            status,
            path,
            error: Some(err.to_string()),
        }
    }
}
