//! Parameter sweeps over suites, parallel evaluation and the report format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::engine::case::{CaseParams, CaseResult, CongruenceCase, EvalPath, Status, Suite};
use crate::engine::{evaluate_case, EngineConfig};
use crate::error::{Error, Result};
use crate::exact::{is_prime, Valuation};
use crate::series::Variant;

/// Inclusive integer range written `a..b`, or a single value `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub fn new(lo: i64, hi: i64) -> Self {
        Span { lo, hi }
    }

    pub fn values(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    fn nonnegative(self) -> impl Iterator<Item = u64> {
        self.values().filter(|&v| v >= 0).map(|v| v as u64)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Span {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("malformed range '{s}', expected a..b"));
        let s = s.trim();
        // Split on the first ".." that is not part of a leading sign.
        match s.find("..") {
            Some(i) => {
                let lo = s[..i].trim().parse().map_err(|_| bad())?;
                let rest = s[i + 2..].trim_start_matches('=');
                let hi = rest.trim().parse().map_err(|_| bad())?;
                Ok(Span::new(lo, hi))
            }
            None => {
                let v = s.parse().map_err(|_| bad())?;
                Ok(Span::new(v, v))
            }
        }
    }
}

impl Serialize for Span {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Parses `1,2,3`, `-5..5` or a comma-separated mix of both.
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.extend(part.parse::<Span>()?.values());
    }
    Ok(out)
}

/// User-supplied ranges; `None` falls back to the suite's preset.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Ranges {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primes: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<Span>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_index: Option<u64>,
}

/// Fully resolved ranges for one suite.
struct Grid {
    primes: Vec<u64>,
    m: Vec<i64>,
    n: Span,
    alpha: Span,
    s: Option<Span>,
    l: Option<Span>,
    trials: u32,
    max_index: u64,
}

fn odd_primes(span: Span) -> Vec<u64> {
    span.nonnegative()
        .filter(|&p| p > 2 && is_prime(p))
        .collect()
}

fn preset(suite: Suite) -> Ranges {
    use Suite::*;
    let span = |lo, hi| Some(Span::new(lo, hi));
    let signed_m = Some((-10..=10).filter(|&m| m != 0).collect());
    match suite {
        SeriesAsd | SeriesAsdM4 => Ranges {
            primes: span(3, 13),
            m: Some(vec![1, 2, 3]),
            n: span(1, 3),
            alpha: span(1, 3),
            max_index: Some(10_000),
            ..Default::default()
        },
        AperyAsd => Ranges {
            primes: span(5, 11),
            n: span(1, 2),
            alpha: span(1, 2),
            max_index: Some(200),
            ..Default::default()
        },
        SeriesModP | SeriesModP2 => Ranges {
            primes: span(3, 13),
            m: signed_m,
            ..Default::default()
        },
        SeriesAsdCorrection => Ranges {
            primes: span(3, 13),
            m: signed_m,
            n: span(1, 2),
            alpha: span(1, 2),
            max_index: Some(1000),
            ..Default::default()
        },
        BinomialMultiple | BinomialCoprime | BinomialShifted => Ranges {
            primes: span(3, 7),
            n: span(1, 2),
            alpha: span(1, 2),
            ..Default::default()
        },
        CentralLucasIdentity => Ranges {
            m: signed_m,
            n: span(1, 100),
            ..Default::default()
        },
        FermatQuotient => Ranges {
            primes: span(3, 13),
            m: Some(vec![2, 3, 5, 7]),
            alpha: span(1, 4),
            ..Default::default()
        },
        LucasBlockSum => Ranges {
            primes: span(3, 7),
            m: Some(vec![1, 2, 3]),
            n: span(1, 2),
            alpha: span(1, 3),
            ..Default::default()
        },
        BlockSumTransfer => Ranges {
            primes: span(3, 5),
            m: Some(vec![1, 2, 3]),
            n: span(1, 2),
            alpha: span(1, 2),
            l: span(0, 2),
            trials: Some(100),
            ..Default::default()
        },
    }
}

impl Ranges {
    /// The acceptance-scale defaults for `suite`.
    pub fn preset(suite: Suite) -> Ranges {
        preset(suite)
    }

    fn resolve(&self, suite: Suite) -> Grid {
        let base = preset(suite);
        let one = Span::new(1, 1);
        Grid {
            primes: odd_primes(self.primes.or(base.primes).unwrap_or(Span::new(3, 3))),
            m: self.m.clone().or(base.m).unwrap_or_else(|| vec![1]),
            n: self.n.or(base.n).unwrap_or(one),
            alpha: self.alpha.or(base.alpha).unwrap_or(one),
            s: self.s.or(base.s),
            l: self.l.or(base.l),
            trials: self.trials.or(base.trials).unwrap_or(100),
            max_index: self.max_index.or(base.max_index).unwrap_or(u64::MAX),
        }
    }
}

/// A sweep over one or more suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepPlan {
    pub suites: Vec<Suite>,
    pub ranges: Ranges,
    pub variant: Variant,
    pub config: EngineConfig,
    /// Worker threads; `0` lets the pool pick.
    pub jobs: usize,
}

impl SweepPlan {
    pub fn new(suites: Vec<Suite>) -> Self {
        SweepPlan {
            suites,
            ranges: Ranges::default(),
            variant: Variant::Corrected,
            config: EngineConfig::default(),
            jobs: 0,
        }
    }
}

/// Cases of a sweep that could be constructed, plus those rejected as
/// ill-posed. Other construction failures are parameter combinations that
/// do not apply to the suite and are dropped.
struct Enumeration {
    cases: Vec<CongruenceCase>,
    ill_posed: Vec<CaseResult>,
}

impl Enumeration {
    fn push(&mut self, suite: Suite, params: CaseParams, max_index: u64) {
        match CongruenceCase::new(suite, params.clone()) {
            Ok(case) if case.index() <= max_index => self.cases.push(case),
            Ok(_) => {}
            Err(err @ Error::NotPIntegral { .. }) => {
                let mut params = params;
                if suite.uses_variant() {
                    params.variant.get_or_insert(Variant::Corrected);
                } else {
                    params.variant = None;
                }
                self.ill_posed
                    .push(CaseResult::errored(suite, params, &err, EvalPath::None));
            }
            Err(_) => {}
        }
    }
}

fn pow_checked(p: u64, a: u32) -> Option<u64> {
    p.checked_pow(a)
}

fn enumerate(suite: Suite, ranges: &Ranges, variant: Variant) -> Enumeration {
    use Suite::*;
    let g = ranges.resolve(suite);
    let mut out = Enumeration {
        cases: Vec::new(),
        ill_posed: Vec::new(),
    };
    let variant = suite.uses_variant().then_some(variant);
    let alphas: Vec<u32> = g
        .alpha
        .nonnegative()
        .filter(|&a| (1..=64).contains(&a))
        .map(|a| a as u32)
        .collect();
    let ns: Vec<u64> = g.n.nonnegative().filter(|&n| n >= 1).collect();
    let base = |p: Option<u64>| CaseParams {
        p,
        variant,
        ..Default::default()
    };
    let fits = |p: u64, n: u64, a: u32| {
        pow_checked(p, a)
            .and_then(|pa| pa.checked_mul(n))
            .is_some_and(|x| x <= g.max_index)
    };

    match suite {
        SeriesAsd | SeriesAsdM4 | SeriesAsdCorrection | AperyAsd => {
            let ms: Vec<Option<i64>> = match suite {
                SeriesAsdM4 => vec![Some(4)],
                AperyAsd => vec![None],
                _ => g.m.iter().copied().map(Some).collect(),
            };
            for &p in &g.primes {
                for &m in &ms {
                    for &n in &ns {
                        for &a in alphas.iter().filter(|&&a| fits(p, n, a)) {
                            let params = CaseParams {
                                m,
                                n: Some(n),
                                alpha: Some(a),
                                ..base(Some(p))
                            };
                            out.push(suite, params, g.max_index);
                        }
                    }
                }
            }
        }
        SeriesModP | SeriesModP2 => {
            for &p in g.primes.iter().filter(|&&p| p <= g.max_index) {
                for &m in &g.m {
                    out.push(
                        suite,
                        CaseParams {
                            m: Some(m),
                            ..base(Some(p))
                        },
                        g.max_index,
                    );
                }
            }
        }
        BinomialMultiple | BinomialCoprime | BinomialShifted => {
            for &p in &g.primes {
                for &n in &ns {
                    for &a in alphas.iter().filter(|&&a| fits(p, n, a)) {
                        let top = n * p.pow(a);
                        let ks = (0..=top).filter(|k| match suite {
                            BinomialMultiple => k % p == 0,
                            BinomialCoprime => k % p != 0,
                            _ => true,
                        });
                        for k in ks {
                            let params = CaseParams {
                                n: Some(n),
                                alpha: Some(a),
                                k: Some(k),
                                ..base(Some(p))
                            };
                            out.push(suite, params, g.max_index);
                        }
                    }
                }
            }
        }
        CentralLucasIdentity => {
            for &m in &g.m {
                for &n in ns.iter().filter(|&&n| n <= g.max_index) {
                    out.push(
                        suite,
                        CaseParams {
                            m: Some(m),
                            n: Some(n),
                            ..base(None)
                        },
                        g.max_index,
                    );
                }
            }
        }
        FermatQuotient => {
            for &p in &g.primes {
                for &m in &g.m {
                    for &a in alphas.iter().filter(|&&a| fits(p, 1, a)) {
                        for s in levels(g.s, a) {
                            let params = CaseParams {
                                m: Some(m),
                                alpha: Some(a),
                                s: Some(s),
                                ..base(Some(p))
                            };
                            out.push(suite, params, g.max_index);
                        }
                    }
                }
            }
        }
        LucasBlockSum => {
            for &p in &g.primes {
                let ls = g.l.unwrap_or(Span::new(0, 2 * p as i64));
                for &m in &g.m {
                    for &n in &ns {
                        for &a in alphas.iter().filter(|&&a| fits(p, n, a)) {
                            for s in levels(g.s, a) {
                                for l in ls.nonnegative() {
                                    let params = CaseParams {
                                        m: Some(m),
                                        n: Some(n),
                                        alpha: Some(a),
                                        s: Some(s),
                                        l: Some(l),
                                        ..base(Some(p))
                                    };
                                    out.push(suite, params, g.max_index);
                                }
                            }
                        }
                    }
                }
            }
        }
        BlockSumTransfer => {
            let ls = g.l.unwrap_or(Span::new(0, 2));
            for &p in &g.primes {
                for &a in &alphas {
                    for l in ls.nonnegative() {
                        for trial in 0..g.trials {
                            for &m in g.m.iter().filter(|&&m| m >= 1) {
                                for &n in ns.iter().filter(|&&n| fits(p, n * m as u64, a)) {
                                    let params = CaseParams {
                                        m: Some(m),
                                        n: Some(n),
                                        alpha: Some(a),
                                        l: Some(l),
                                        trial: Some(trial),
                                        ..base(Some(p))
                                    };
                                    out.push(suite, params, g.max_index);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn levels(s: Option<Span>, alpha: u32) -> Vec<u32> {
    let span = s.unwrap_or(Span::new(1, alpha as i64));
    span.nonnegative()
        .filter(|&s| s >= 1 && s <= alpha as u64)
        .map(|s| s as u32)
        .collect()
}

/// Invocation parameters recorded in a report. The worker count is left out
/// so reports are identical across `--jobs` values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub suites: Vec<Suite>,
    pub variant: Variant,
    pub ranges: Ranges,
    pub seed: u64,
    pub oracle_cutoff: u64,
    pub crosscheck_cutoff: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_after: Option<usize>,
}

impl Meta {
    fn for_plan(plan: &SweepPlan, command: &str) -> Self {
        Meta {
            tool: "asdcheck".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            suites: plan.suites.clone(),
            variant: plan.variant,
            ranges: plan.ranges.clone(),
            seed: plan.config.seed,
            oracle_cutoff: plan.config.oracle_cutoff,
            crosscheck_cutoff: plan.config.crosscheck_cutoff,
            stop_after: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errored: usize,
    pub ill_posed: usize,
    /// Smallest achieved-minus-required margin per suite id.
    pub min_margin: BTreeMap<String, Valuation>,
}

impl Summary {
    fn of(cases: &[CaseResult]) -> Self {
        let mut s = Summary {
            total: cases.len(),
            ..Default::default()
        };
        for c in cases {
            match c.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Error => s.errored += 1,
                Status::IllPosed => s.ill_posed += 1,
            }
            if let Some(m) = c.margin() {
                s.min_margin
                    .entry(c.suite.id().to_string())
                    .and_modify(|cur| *cur = (*cur).min(m))
                    .or_insert(m);
            }
        }
        s
    }
}

/// Deterministically ordered case results with a summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(meta: Meta, mut cases: Vec<CaseResult>) -> Self {
        cases.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let summary = Summary::of(&cases);
        Report {
            meta,
            cases,
            summary,
        }
    }

    /// No failures and no errors; ill-posed cases do not count.
    pub fn is_clean(&self) -> bool {
        self.summary.failed == 0 && self.summary.errored == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases
            .iter()
            .filter(|c| matches!(c.status, Status::Fail | Status::Error))
    }
}

impl Serialize for CaseResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CaseResult", 11)?;
        st.serialize_field("suite", &self.suite)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("required_exponent", &self.required())?;
        st.serialize_field("achieved_valuation", &self.achieved())?;
        st.serialize_field("margin", &self.margin())?;
        st.serialize_field("pass", &self.passed())?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("path", &self.path)?;
        st.serialize_field("error", &self.error)?;
        st.serialize_field("lhs", &self.verdict.as_ref().map(|v| &v.lhs))?;
        st.serialize_field("rhs", &self.verdict.as_ref().map(|v| &v.rhs))?;
        st.end()
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::invalid(format!("cannot start worker pool: {e}")))
}

fn enumerate_plan(plan: &SweepPlan) -> (Vec<CongruenceCase>, Vec<CaseResult>) {
    let mut cases = Vec::new();
    let mut ill_posed = Vec::new();
    for &suite in &plan.suites {
        let e = enumerate(suite, &plan.ranges, plan.variant);
        cases.extend(e.cases);
        ill_posed.extend(e.ill_posed);
    }
    cases.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    cases.dedup();
    ill_posed.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    ill_posed.dedup();
    (cases, ill_posed)
}

/// Number of cases a plan would evaluate (excluding ill-posed ones).
pub fn count_cases(plan: &SweepPlan) -> usize {
    enumerate_plan(plan).0.len()
}

/// Evaluates every case of the plan on `plan.jobs` workers.
pub fn run_plan(plan: &SweepPlan) -> Result<Report> {
    let (cases, mut results) = enumerate_plan(plan);
    let cfg = plan.config;
    let evaluated: Vec<CaseResult> =
        pool(plan.jobs)?.install(|| cases.par_iter().map(|c| evaluate_case(c, &cfg)).collect());
    results.extend(evaluated);
    Ok(Report::new(Meta::for_plan(plan, "verify"), results))
}

/// One suite with explicit variant, index bound and parallelism.
pub fn run_suite(
    suite: Suite,
    ranges: &Ranges,
    variant: Variant,
    max_index: Option<u64>,
    jobs: usize,
) -> Result<Report> {
    let mut plan = SweepPlan::new(vec![suite]);
    plan.ranges = ranges.clone();
    if max_index.is_some() {
        plan.ranges.max_index = max_index;
    }
    plan.variant = variant;
    plan.jobs = jobs;
    run_plan(&plan)
}

/// Like [`run_plan`] but keeps only failures and errors, stopping after
/// `stop_after` of them. Cases are processed in report order, so the cut
/// is the same for every worker count.
pub fn scan(plan: &SweepPlan, stop_after: Option<usize>) -> Result<Report> {
    let (cases, _) = enumerate_plan(plan);
    let cfg = plan.config;
    let workers = pool(plan.jobs)?;
    let chunk = 64 * workers.current_num_threads().max(1);
    let limit = stop_after.unwrap_or(usize::MAX);
    let mut found = Vec::new();
    for batch in cases.chunks(chunk) {
        let results: Vec<CaseResult> =
            workers.install(|| batch.par_iter().map(|c| evaluate_case(c, &cfg)).collect());
        found.extend(
            results
                .into_iter()
                .filter(|r| matches!(r.status, Status::Fail | Status::Error)),
        );
        if found.len() >= limit {
            found.truncate(limit);
            break;
        }
    }
    let mut meta = Meta::for_plan(plan, "scan");
    meta.stop_after = stop_after;
    Ok(Report::new(meta, found))
}

/// Cases that fail at `alpha - 1` while the same parameters pass at `alpha`.
/// The ASD statements are monotone in this sense, so any hit is suspicious.
pub fn monotonicity_violations(report: &Report) -> Vec<(Suite, CaseParams)> {
    let status: BTreeMap<(&'static str, &CaseParams), Status> = report
        .cases
        .iter()
        .map(|c| (c.sort_key(), c.status))
        .collect();
    let mut out = Vec::new();
    for c in report.cases.iter().filter(|c| c.passed()) {
        let Some(a) = c.params.alpha.filter(|&a| a >= 2) else {
            continue;
        };
        if !matches!(
            c.suite,
            Suite::SeriesAsd | Suite::SeriesAsdM4 | Suite::AperyAsd | Suite::SeriesAsdCorrection
        ) {
            continue;
        }
        let mut lower = c.params.clone();
        lower.alpha = Some(a - 1);
        if let Some(&st) = status.get(&(c.suite.id(), &lower)) {
            if st != Status::Pass {
                out.push((c.suite, lower));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn span_parsing() {
        assert_eq!("3..13".parse::<Span>().unwrap(), Span::new(3, 13));
        assert_eq!("-5..5".parse::<Span>().unwrap(), Span::new(-5, 5));
        assert_eq!("-10..-1".parse::<Span>().unwrap(), Span::new(-10, -1));
        assert_eq!("7".parse::<Span>().unwrap(), Span::new(7, 7));
        assert_eq!("1..=4".parse::<Span>().unwrap(), Span::new(1, 4));
        assert!("a..b".parse::<Span>().is_err());
        assert_eq!(parse_int_list("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_int_list("-2..-1,4").unwrap(), vec![-2, -1, 4]);
    }

    #[test]
    fn empty_range_gives_empty_report() {
        let mut plan = SweepPlan::new(vec![Suite::SeriesAsd]);
        plan.ranges.primes = Some(Span::new(14, 16));
        let r = run_plan(&plan).unwrap();
        assert!(r.cases.is_empty());
        assert_eq!(r.summary, Summary::default());
        assert!(r.is_clean());
    }

    #[test]
    fn small_sweep_passes_and_marks_ill_posed() {
        let mut plan = SweepPlan::new(vec![Suite::SeriesAsd]);
        plan.ranges.primes = Some(Span::new(3, 5));
        plan.ranges.n = Some(Span::new(1, 1));
        plan.ranges.alpha = Some(Span::new(1, 2));
        let r = run_plan(&plan).unwrap();
        // p=3: m=1,2 valid, m=3 ill-posed; p=5: three valid; two alphas each.
        assert_eq!(r.summary.total, 12);
        assert_eq!(r.summary.ill_posed, 2);
        assert_eq!(r.summary.passed, 10);
        assert!(r.is_clean());
        assert!(monotonicity_violations(&r).is_empty());
    }

    #[test]
    fn literal_sweep_fails() {
        let mut plan = SweepPlan::new(vec![Suite::SeriesAsd]);
        plan.variant = Variant::Literal;
        plan.ranges.primes = Some(Span::new(5, 5));
        plan.ranges.m = Some(vec![1]);
        plan.ranges.n = Some(Span::new(1, 1));
        plan.ranges.alpha = Some(Span::new(1, 1));
        let r = run_plan(&plan).unwrap();
        assert_eq!(r.summary.failed, 1);
        assert!(!r.is_clean());
    }

    #[test]
    fn report_is_independent_of_workers() {
        let mut plan = SweepPlan::new(vec![Suite::LucasBlockSum, Suite::BlockSumTransfer]);
        plan.ranges.primes = Some(Span::new(3, 5));
        plan.ranges.trials = Some(3);
        plan.jobs = 1;
        let one = run_plan(&plan).unwrap().to_json();
        plan.jobs = 4;
        let four = run_plan(&plan).unwrap().to_json();
        assert_eq!(one, four);
    }

    #[test]
    fn record_schema() {
        let mut plan = SweepPlan::new(vec![Suite::CentralLucasIdentity]);
        plan.ranges.m = Some(vec![1]);
        plan.ranges.n = Some(Span::new(2, 2));
        let r = run_plan(&plan).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        let case = &v["cases"][0];
        assert_eq!(case["suite"], "lemma-2-2");
        assert_eq!(case["required_exponent"], "exact");
        assert_eq!(case["achieved_valuation"], "inf");
        assert_eq!(case["pass"], true);
        assert_eq!(case["lhs"], "3");
        assert!(v["meta"].get("jobs").is_none());
        assert_eq!(v["summary"]["passed"], 1);
    }

    #[test]
    fn scan_stops_early() {
        let mut plan = SweepPlan::new(vec![Suite::SeriesAsd]);
        plan.variant = Variant::Literal;
        plan.ranges.primes = Some(Span::new(3, 13));
        let all = scan(&plan, None).unwrap();
        assert!(all.cases.len() > 2);
        let two = scan(&plan, Some(2)).unwrap();
        assert_eq!(two.cases, all.cases[..2].to_vec());
    }
}
