//! Batch verification: every inequality family of the crate is evaluated
//! over a parameter grid, each comparison is certified (or escalated and
//! finally reported ambiguous), and the results are assembled into a
//! deterministic [`VerificationReport`] that serializes to JSON or CSV.
//!
//! Cases are evaluated in parallel with rayon; the report keeps the order in
//! which the grid was generated (sorted by parameters), never completion
//! order, so identical inputs produce byte-identical output.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Float, Integer};
use serde::Serialize;

use crate::appendix_sums::{
    fact_checks, identity_tolerance, s2_split_check, s2_via_closed, s3_via_closed,
    t_prime_closed, t_prime_direct, t_tilde_closed, t_tilde_direct,
};
use crate::error::{Error, Result};
use crate::exact_partition::{
    enumerate_partition_count, exact_quotient_rational, log_concavity_sides, ExactPartitionTable,
};
use crate::inverse_expansion::{lehmer_band_sides, SumKernels};
use crate::numerics::{certify_le, ceil_to_u64, g_hat, to_decimal, Certified, PrecisionContext, Status};
use crate::quotient_expansion::{ratio_coefficients, ExpansionTable, Kind};
use crate::series_oracle::{oracle_inverse_series, oracle_ratio_series, oracle_shift_series};
use crate::shift_expansion::{even_envelope_with, odd_envelope_with, omega1, shift_constants};

/// The verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// |p(n+k)/p(n) − Σ c_k(m) n^{−m/2}| ≤ E_N(k) n^{−(N+1)/2}.
    MainTheorem,
    /// The p(n+k) band.
    ShiftTheorem,
    /// The 1/p(n) band.
    InverseTheorem,
    /// The Lehmer-style band of order m.
    Lehmer,
    /// Envelopes of |ω_k(2t)| and |ω_k(2t+1)|.
    OmegaEnvelopes,
    /// Envelopes of |g(2t)| and |g(2t+1)|.
    GEnvelopes,
    /// Relative-error constants of the auxiliary sums S₁…S₉.
    SjEnvelopes,
    /// Closed forms, the five-way S₂ split and the elementary facts.
    AppendixIdentities,
    /// Closed-form coefficients against the truncated-series oracle.
    CoefficientOracle,
    /// p(n)² ≥ p(n−1)p(n+1).
    LogConcavity,
}

impl Suite {
    /// All suites in a fixed order.
    pub const ALL: [Suite; 10] = [
        Suite::MainTheorem,
        Suite::ShiftTheorem,
        Suite::InverseTheorem,
        Suite::Lehmer,
        Suite::OmegaEnvelopes,
        Suite::GEnvelopes,
        Suite::SjEnvelopes,
        Suite::AppendixIdentities,
        Suite::CoefficientOracle,
        Suite::LogConcavity,
    ];

    /// The identifier used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main_theorem",
            Suite::ShiftTheorem => "shift_theorem",
            Suite::InverseTheorem => "inverse_theorem",
            Suite::Lehmer => "lehmer",
            Suite::OmegaEnvelopes => "omega_envelopes",
            Suite::GEnvelopes => "g_envelopes",
            Suite::SjEnvelopes => "sj_envelopes",
            Suite::AppendixIdentities => "appendix_identities",
            Suite::CoefficientOracle => "coefficient_oracle",
            Suite::LogConcavity => "log_concavity",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Parameters of a suite run. Each suite reads only the fields it needs;
/// [`SuiteParams::for_suite`] gives the documented defaults.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteParams {
    /// Largest shift k (main, shift, omega envelopes, coefficient oracle).
    pub k_max: u64,
    /// Largest truncation order N (main, shift, inverse).
    pub n_trunc_max: u64,
    /// Random samples per (k, N) in addition to the boundary.
    pub samples: usize,
    /// Samples are drawn from (boundary, boundary + span].
    pub span: u64,
    /// Seed of the ChaCha8 sampler.
    pub seed: u64,
    /// Largest index t (envelope and identity suites).
    pub t_max: usize,
    /// Lehmer orders m ∈ 2..=m_max.
    pub m_max: u64,
    /// Lehmer n-range length above ĝ(m).
    pub lehmer_span: u64,
    /// Inclusive n-range of the log-concavity suite.
    pub n_from: u64,
    pub n_to: u64,
    /// Optional on-disk cache for the exact oracle table.
    #[serde(skip)]
    pub cache: Option<PathBuf>,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self {
            k_max: 3,
            n_trunc_max: 4,
            samples: 50,
            span: 10_000,
            seed: 0,
            t_max: 40,
            m_max: 4,
            lehmer_span: 2000,
            n_from: 26,
            n_to: 1000,
            cache: None,
        }
    }
}

impl SuiteParams {
    /// Defaults for `suite`: k ≤ 3, N ≤ 4 and 50 samples in a 10⁴ window for
    /// the bands; k ≤ 5, t ≤ 40 for the ω-envelopes; t ≤ 40 for the
    /// g-envelopes; t ≤ 200 for the S_j constants; t ≤ 50 for the S₂ split
    /// (closed forms use t ≤ 30); m ≤ 4 over 2000 integers for the Lehmer
    /// band; 26 ≤ n ≤ 1000 for log-concavity.
    pub fn for_suite(suite: Suite) -> Self {
        let base = Self::default();
        match suite {
            Suite::OmegaEnvelopes => Self { k_max: 5, ..base },
            Suite::SjEnvelopes => Self { t_max: 200, ..base },
            Suite::AppendixIdentities => Self { t_max: 50, ..base },
            Suite::CoefficientOracle => Self { t_max: 12, ..base },
            _ => base,
        }
    }

    /// Rejects inconsistent parameters. Empty ranges are allowed and give
    /// empty reports.
    fn validate(&self, suite: Suite) -> Result<()> {
        match suite {
            Suite::MainTheorem | Suite::ShiftTheorem | Suite::InverseTheorem
                if self.samples as u64 > self.span =>
            {
                Err(Error::Domain(format!(
                    "cannot draw {} distinct samples from a window of {}",
                    self.samples, self.span
                )))
            }
            Suite::LogConcavity if self.n_from == 0 => {
                Err(Error::Domain("log-concavity needs n >= 1".into()))
            }
            _ => Ok(()),
        }
    }
}

/// One certified comparison `lhs ≤ rhs`, serialized with decimal strings.
#[derive(Clone, Debug, Serialize)]
pub struct Case {
    /// Name of the inequality or identity within the suite.
    pub check: String,
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
    pub margin: String,
    pub status: Status,
    /// Precision at which the comparison was decided.
    pub bits: u32,
    /// True if decided in exact integer/rational arithmetic.
    pub exact: bool,
    /// Center of the band, where applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<String>,
    /// The exact target divided by the prefactor (exact quotient for the
    /// ratio expansion), where applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    /// lhs/rhs, kept for tightness profiles.
    #[serde(skip)]
    pub ratio: f64,
}

/// Counts and the smallest relative slack (rhs − lhs)/rhs over passes.
#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub ambiguous: usize,
    /// min over passing cases of (rhs − lhs)/rhs; absent when nothing passed.
    pub max_tightness: Option<String>,
}

/// Machine-readable result of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: Suite,
    pub ctx: PrecisionContext,
    pub params: SuiteParams,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl VerificationReport {
    /// True when every case passed.
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.ambiguous == 0
    }

    /// Pretty-printed JSON followed by a newline.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per case: check, every parameter name seen in the report
    /// (empty when a case lacks it), lhs, rhs, margin, status.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let keys: BTreeSet<&str> = self
            .cases
            .iter()
            .flat_map(|c| c.params.keys().map(String::as_str))
            .collect();
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["check"];
        header.extend(keys.iter().copied());
        header.extend(["lhs", "rhs", "margin", "status"]);
        out.write_record(&header)?;
        for case in &self.cases {
            let mut row = vec![case.check.clone()];
            row.extend(
                keys.iter()
                    .map(|k| case.params.get(*k).map(i64::to_string).unwrap_or_default()),
            );
            row.extend([
                case.lhs.clone(),
                case.rhs.clone(),
                case.margin.clone(),
                status_name(case.status).to_string(),
            ]);
            out.write_record(&row)?;
        }
        out.flush()?;
        Ok(())
    }

    /// Human-readable one-line summary.
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} cases, {} pass, {} fail, {} ambiguous, min slack {}",
            self.suite,
            self.summary.total,
            self.summary.pass,
            self.summary.fail,
            self.summary.ambiguous,
            self.summary.max_tightness.as_deref().unwrap_or("n/a")
        )
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Ambiguous => "ambiguous",
    }
}

/// Intermediate form of a case before serialization.
struct Raw {
    check: &'static str,
    params: Vec<(&'static str, i64)>,
    verdict: Certified,
    exact: bool,
    center: Option<Float>,
    target: Option<Float>,
}

impl Raw {
    fn certified(check: &'static str, params: Vec<(&'static str, i64)>, verdict: Certified) -> Self {
        Self {
            check,
            params,
            verdict,
            exact: false,
            center: None,
            target: None,
        }
    }
}

fn ratio_of(lhs: &Float, rhs: &Float) -> f64 {
    if rhs.is_zero() {
        if lhs.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        Float::with_val(lhs.prec(), lhs / rhs).to_f64()
    }
}

fn finish(suite: Suite, params: &SuiteParams, ctx: &PrecisionContext, raws: Vec<Raw>) -> VerificationReport {
    let digits = ctx.digits();
    let dec = |x: &Float| to_decimal(x, digits);
    let mut summary = Summary {
        total: raws.len(),
        pass: 0,
        fail: 0,
        ambiguous: 0,
        max_tightness: None,
    };
    let mut slack: Option<Float> = None;
    let cases = raws
        .into_iter()
        .map(|r| {
            let v = &r.verdict;
            match v.status {
                Status::Pass => {
                    summary.pass += 1;
                    if !v.rhs.is_zero() {
                        let s = Float::with_val(ctx.prec(), &v.rhs - &v.lhs) / &v.rhs;
                        if slack.as_ref().is_none_or(|m| s < *m) {
                            slack = Some(s);
                        }
                    }
                }
                Status::Fail => summary.fail += 1,
                Status::Ambiguous => summary.ambiguous += 1,
            }
            Case {
                check: r.check.to_string(),
                params: r.params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
                lhs: dec(&v.lhs),
                rhs: dec(&v.rhs),
                margin: dec(&v.margin),
                status: v.status,
                bits: v.bits,
                exact: r.exact,
                center: r.center.as_ref().map(dec),
                target: r.target.as_ref().map(dec),
                ratio: ratio_of(&v.lhs, &v.rhs),
            }
        })
        .collect();
    summary.max_tightness = slack.map(|s| to_decimal(&s, 12));
    VerificationReport {
        suite,
        ctx: *ctx,
        params: params.clone(),
        cases,
        summary,
    }
}

/// An exactly decided comparison of integers.
fn exact_verdict(lhs: &Integer, rhs: &Integer, ctx: &PrecisionContext) -> Certified {
    let prec = ctx.prec();
    Certified {
        status: if lhs <= rhs { Status::Pass } else { Status::Fail },
        lhs: Float::with_val(prec, lhs),
        rhs: Float::with_val(prec, rhs),
        margin: Float::new(prec),
        bits: ctx.bits,
    }
}

/// Certifies |a − b| ≤ 2^{−bits/2}·max(|a|, |b|); exact agreement passes
/// without escalation.
fn agree<F>(ctx: &PrecisionContext, mut eval: F) -> Result<Certified>
where
    F: FnMut(&PrecisionContext) -> Result<(Float, Float)>,
{
    let (a, b) = eval(ctx)?;
    if a == b {
        let prec = ctx.prec();
        return Ok(Certified {
            status: Status::Pass,
            lhs: Float::new(prec),
            rhs: identity_tolerance(&a, &b, ctx),
            margin: Float::new(prec),
            bits: ctx.bits,
        });
    }
    certify_le(ctx, |c| {
        let (a, b) = if c == ctx { (a.clone(), b.clone()) } else { eval(c)? };
        let diff = Float::with_val(a.prec().max(b.prec()), &a - &b).abs();
        Ok((diff, identity_tolerance(&a, &b, c)))
    })
}

/// Largest n the oracle table must reach for `suite` under `params`.
pub fn required_n_max(suite: Suite, params: &SuiteParams, ctx: &PrecisionContext) -> Result<u64> {
    params.validate(suite)?;
    Ok(match suite {
        Suite::MainTheorem | Suite::ShiftTheorem => {
            let mut top = 0;
            for k in 1..=params.k_max {
                for n_trunc in 1..=params.n_trunc_max {
                    let table = if suite == Suite::MainTheorem {
                        crate::quotient_expansion::quotient_error_budget(k, n_trunc, ctx)?.cutoff
                    } else {
                        crate::shift_expansion::shift_cutoff(k, n_trunc, ctx)? + 1
                    };
                    top = top.max(table + params.span + k);
                }
            }
            top
        }
        Suite::InverseTheorem => {
            let mut top = 0;
            for n_trunc in 1..=params.n_trunc_max {
                top = top.max(crate::inverse_expansion::inverse_cutoff(n_trunc, ctx)? + params.span);
            }
            top
        }
        Suite::Lehmer if params.m_max >= 2 => {
            // ĝ increases with m, so the largest order reaches furthest.
            (lehmer_first(params.m_max, ctx)? + params.lehmer_span).saturating_sub(1)
        }
        Suite::LogConcavity => params.n_to + 1,
        _ => 0,
    })
}

/// First integer strictly above ĝ(m).
fn lehmer_first(m: u64, ctx: &PrecisionContext) -> Result<u64> {
    Ok(ceil_to_u64(&g_hat(m, ctx)?.floor())? + 1)
}

/// Runs `suite`, building (or loading from `params.cache`) an oracle table
/// of exactly the required size.
pub fn run_suite(suite: Suite, params: &SuiteParams, ctx: &PrecisionContext) -> Result<VerificationReport> {
    let need = required_n_max(suite, params, ctx)?;
    let oracle = match &params.cache {
        Some(path) => ExactPartitionTable::load_or_build(path, need)?,
        None => ExactPartitionTable::build(need),
    };
    run_suite_with_oracle(suite, params, ctx, &oracle)
}

/// Runs `suite` against a caller-supplied oracle table.
///
/// Fails with [`Error::OracleTooSmall`] (carrying the required size) when
/// the table does not reach the largest n the suite touches.
pub fn run_suite_with_oracle(
    suite: Suite,
    params: &SuiteParams,
    ctx: &PrecisionContext,
    oracle: &ExactPartitionTable,
) -> Result<VerificationReport> {
    let need = required_n_max(suite, params, ctx)?;
    if oracle.n_max() < need {
        return Err(Error::OracleTooSmall {
            required: need,
            available: oracle.n_max(),
        });
    }
    let raws = match suite {
        Suite::MainTheorem => band_suite(Kind::Ratio, params, ctx, oracle)?,
        Suite::ShiftTheorem => band_suite(Kind::Shift, params, ctx, oracle)?,
        Suite::InverseTheorem => band_suite(Kind::Inverse, params, ctx, oracle)?,
        Suite::Lehmer => lehmer_suite(params, ctx, oracle)?,
        Suite::OmegaEnvelopes => omega_suite(params, ctx)?,
        Suite::GEnvelopes => g_envelope_suite(params, ctx)?,
        Suite::SjEnvelopes => sj_suite(params, ctx)?,
        Suite::AppendixIdentities => appendix_suite(params, ctx)?,
        Suite::CoefficientOracle => coefficient_suite(params, ctx)?,
        Suite::LogConcavity => log_concavity_suite(params, ctx, oracle)?,
    };
    Ok(finish(suite, params, ctx, raws))
}

/// The n grid for one expansion table: the first admitted n plus
/// `samples` distinct draws from (first, first + span].
pub fn sample_grid(first: u64, stream: u64, params: &SuiteParams) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(stream);
    let mut offsets: Vec<u64> = sample(&mut rng, params.span as usize, params.samples)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect();
    offsets.sort_unstable();
    std::iter::once(first)
        .chain(offsets.into_iter().map(|o| first + o))
        .collect()
}

fn band_suite(
    kind: Kind,
    params: &SuiteParams,
    ctx: &PrecisionContext,
    oracle: &ExactPartitionTable,
) -> Result<Vec<Raw>> {
    let ks: Vec<u64> = if kind == Kind::Inverse {
        vec![0]
    } else {
        (1..=params.k_max).collect()
    };
    let tables: BTreeMap<(u64, u64), ExpansionTable> = ks
        .iter()
        .flat_map(|&k| (1..=params.n_trunc_max).map(move |n_trunc| (k, n_trunc)))
        .map(|(k, n_trunc)| Ok(((k, n_trunc), ExpansionTable::build(kind, k.max(1), n_trunc, ctx)?)))
        .collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (&(k, n_trunc), table) in &tables {
        let first = if table.strict { table.cutoff + 1 } else { table.cutoff };
        let grid = sample_grid(first, (k << 32) | n_trunc, params);
        jobs.extend(grid.into_iter().map(|n| (k, n_trunc, n, n == first)));
    }
    let check = match kind {
        Kind::Ratio => "ratio_band",
        Kind::Shift => "shift_band",
        Kind::Inverse => "inverse_band",
    };
    jobs.par_iter()
        .map(|&(k, n_trunc, n, boundary)| {
            let table = &tables[&(k, n_trunc)];
            let verdict = certify_le(ctx, |c| {
                if c == &table.ctx {
                    table.band_sides(oracle, n)
                } else {
                    table.at(c)?.band_sides(oracle, n)
                }
            })?;
            let approx = table.evaluate(n)?;
            let target = match kind {
                Kind::Ratio => Float::with_val(ctx.prec(), &exact_quotient_rational(oracle, n, k)?),
                _ => table.scaled_target(oracle, n)?,
            };
            let mut p = Vec::new();
            if kind != Kind::Inverse {
                p.push(("k", k as i64));
            }
            p.extend([("N", n_trunc as i64), ("n", n as i64), ("boundary", i64::from(boundary))]);
            Ok(Raw {
                center: Some(approx.center),
                target: Some(target),
                ..Raw::certified(check, p, verdict)
            })
        })
        .collect()
}

fn lehmer_suite(params: &SuiteParams, ctx: &PrecisionContext, oracle: &ExactPartitionTable) -> Result<Vec<Raw>> {
    let mut jobs = Vec::new();
    for m in 2..=params.m_max {
        let first = lehmer_first(m, ctx)?;
        for n in first..first + params.lehmer_span {
            if (n, m) != (6, 2) {
                jobs.push((m, n));
            }
        }
    }
    jobs.par_iter()
        .map(|&(m, n)| {
            let verdict = certify_le(ctx, |c| lehmer_band_sides(oracle, n, m, c))?;
            Ok(Raw::certified("lehmer_band", vec![("m", m as i64), ("n", n as i64)], verdict))
        })
        .collect()
}

fn omega_suite(params: &SuiteParams, ctx: &PrecisionContext) -> Result<Vec<Raw>> {
    let consts: BTreeMap<u64, _> = (1..=params.k_max)
        .map(|k| Ok((k, shift_constants(k, ctx)?)))
        .collect::<Result<_>>()?;
    let jobs: Vec<(u64, u32, bool)> = (1..=params.k_max)
        .flat_map(|k| {
            (1..=params.t_max as u32).flat_map(move |t| [(k, t, false), (k, t, true)])
        })
        .collect();
    jobs.par_iter()
        .map(|&(k, t, odd)| {
            let verdict = certify_le(ctx, |c| {
                let sc = if c == ctx { consts[&k].clone() } else { shift_constants(k, c)? };
                if odd {
                    Ok((omega1(k, 2 * t + 1, c)?.abs(), odd_envelope_with(&sc, t, c.prec())?))
                } else {
                    Ok((omega1(k, 2 * t, c)?.abs(), even_envelope_with(&sc, t, c.prec())?))
                }
            })?;
            let check = if odd { "omega_odd" } else { "omega_even" };
            Ok(Raw::certified(check, vec![("k", k as i64), ("t", i64::from(t))], verdict))
        })
        .collect()
}

fn g_envelope_suite(params: &SuiteParams, ctx: &PrecisionContext) -> Result<Vec<Raw>> {
    let t_max = params.t_max;
    let kernels = SumKernels::new(t_max + 1, ctx);
    let jobs: Vec<(usize, bool)> = (1..=t_max).flat_map(|t| [(t, false), (t, true)]).collect();
    jobs.par_iter()
        .map(|&(t, odd)| {
            let verdict = certify_le(ctx, |c| {
                let owned;
                let k = if c == ctx {
                    &kernels
                } else {
                    owned = SumKernels::new(t_max + 1, c);
                    &owned
                };
                let (even_env, odd_env) = k.g_envelopes(t)?;
                if odd {
                    Ok((k.g(2 * t + 1)?.abs(), odd_env))
                } else {
                    Ok((k.g(2 * t)?.abs(), even_env))
                }
            })?;
            let check = if odd { "g_odd" } else { "g_even" };
            Ok(Raw::certified(check, vec![("t", t as i64)], verdict))
        })
        .collect()
}

fn sj_suite(params: &SuiteParams, ctx: &PrecisionContext) -> Result<Vec<Raw>> {
    let t_max = params.t_max;
    let kernels = SumKernels::new(t_max, ctx);
    let jobs: Vec<(u8, usize)> = (1..=9u8).flat_map(|j| (2..=t_max).map(move |t| (j, t))).collect();
    jobs.par_iter()
        .map(|&(j, t)| {
            let verdict = certify_le(ctx, |c| {
                if c == ctx {
                    kernels.sum_envelope_sides(j, t)
                } else {
                    SumKernels::new(t, c).sum_envelope_sides(j, t)
                }
            })?;
            Ok(Raw::certified("sj_relative", vec![("j", i64::from(j)), ("t", t as i64)], verdict))
        })
        .collect()
}

/// Closed forms are compared for t ≤ 30; the S₂ split runs to `t_max`.
const CLOSED_FORM_T_MAX: u32 = 30;

fn appendix_suite(params: &SuiteParams, ctx: &PrecisionContext) -> Result<Vec<Raw>> {
    #[derive(Clone, Copy)]
    enum Job {
        TTilde(u32, u32),
        TPrime(u32, u32),
        S3(u32),
        S2(u32),
        Split(u32),
    }
    let closed_top = CLOSED_FORM_T_MAX.min(params.t_max as u32);
    let mut jobs = Vec::new();
    for t in 2..=closed_top {
        for u in 1..=t - 2 {
            jobs.push(Job::TTilde(t, u));
        }
        for u in 0..=t - 2 {
            jobs.push(Job::TPrime(t, u));
        }
        jobs.push(Job::S3(t));
        jobs.push(Job::S2(t));
    }
    for t in 2..=params.t_max as u32 {
        jobs.push(Job::Split(t));
    }
    let mut raws: Vec<Raw> = jobs
        .par_iter()
        .map(|job| -> Result<Vec<Raw>> {
            Ok(match *job {
                Job::TTilde(t, u) => vec![Raw::certified(
                    "t_tilde_closed",
                    vec![("t", t.into()), ("u", u.into())],
                    agree(ctx, |c| Ok((t_tilde_direct(t, u, c)?, t_tilde_closed(t, u, c)?)))?,
                )],
                Job::TPrime(t, u) => vec![Raw::certified(
                    "t_prime_closed",
                    vec![("t", t.into()), ("u", u.into())],
                    agree(ctx, |c| Ok((t_prime_direct(t, u, c)?, t_prime_closed(t, u, c)?)))?,
                )],
                Job::S3(t) => vec![Raw::certified(
                    "s3_closed",
                    vec![("t", t.into())],
                    agree(ctx, |c| {
                        let closed = s3_via_closed(t, c)?;
                        Ok((SumKernels::at(t as usize, closed.prec()).s(3, t as usize)?, closed))
                    })?,
                )],
                Job::S2(t) => vec![Raw::certified(
                    "s2_closed",
                    vec![("t", t.into())],
                    agree(ctx, |c| {
                        let closed = s2_via_closed(t, c)?;
                        Ok((SumKernels::at(t as usize, closed.prec()).s(2, t as usize)?, closed))
                    })?,
                )],
                Job::Split(t) => {
                    let p = vec![("t", i64::from(t))];
                    let mut out = vec![Raw::certified(
                        "s2_split_sum",
                        p.clone(),
                        agree(ctx, |c| {
                            let r = s2_split_check(t, c)?;
                            Ok((r.split_sum, r.direct))
                        })?,
                    )];
                    for (idx, name) in [(0usize, "s2_part1"), (1, "s2_part3"), (2, "s2_part4")] {
                        let verdict = certify_le(ctx, |c| {
                            let r = s2_split_check(t, c)?;
                            Ok(r.envelopes[idx].clone())
                        })?;
                        out.push(Raw::certified(name, p.clone(), verdict));
                    }
                    out
                }
            })
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let facts = fact_checks(ctx)?;
    for mut case in facts.cases {
        let margin = Float::new(case.lhs.prec());
        if case.fact == "half_pochhammer" {
            // An exact identity: compare the difference with zero.
            case.lhs = Float::with_val(case.lhs.prec(), &case.lhs - &case.rhs).abs();
            case.rhs = margin.clone();
        }
        raws.push(Raw {
            exact: case.fact == "half_pochhammer",
            ..Raw::certified(
                match case.fact {
                    "geometric" => "fact_geometric",
                    "half_pochhammer" => "fact_half_pochhammer",
                    _ => "fact_root_series",
                },
                vec![("index", case.index.into())],
                Certified {
                    status: if case.holds { Status::Pass } else { Status::Fail },
                    lhs: case.lhs,
                    rhs: case.rhs,
                    margin,
                    bits: ctx.bits,
                },
            )
        });
    }
    Ok(raws)
}

/// Index ranges of the coefficient-oracle suite: ω_k(t) for t ≤ `t_max`,
/// g(t) for t ≤ 10, c_k(m) for m ≤ 6, and the Cauchy-product route to g(t)
/// for t ≤ 20.
const G_ORACLE_T_MAX: usize = 10;
const C_ORACLE_M_MAX: usize = 6;
const G_CONVOLUTION_T_MAX: usize = 20;

fn coefficient_suite(params: &SuiteParams, ctx: &PrecisionContext) -> Result<Vec<Raw>> {
    let t_max = params.t_max;
    let ks: Vec<u64> = (1..=params.k_max).collect();
    let mut raws = Vec::new();

    let shift_series: Vec<_> = ks
        .par_iter()
        .map(|&k| oracle_shift_series(k, t_max, ctx))
        .collect::<Result<_>>()?;
    for (&k, series) in ks.iter().zip(&shift_series) {
        for t in 0..=t_max {
            let verdict = agree(ctx, |c| {
                let oracle = if c == ctx {
                    series.coeff(t).clone()
                } else {
                    oracle_shift_series(k, t, c)?.coeff(t).clone()
                };
                Ok((omega1(k, t as u32, c)?, oracle))
            })?;
            raws.push(Raw::certified("omega_oracle", vec![("k", k as i64), ("t", t as i64)], verdict));
        }
    }

    let inverse_series = oracle_inverse_series(G_ORACLE_T_MAX, ctx)?;
    let kernels = SumKernels::new(G_CONVOLUTION_T_MAX / 2 + 1, ctx);
    for t in 0..=G_ORACLE_T_MAX {
        let verdict = agree(ctx, |c| {
            if c == ctx {
                Ok((kernels.g(t)?, inverse_series.coeff(t).clone()))
            } else {
                Ok((SumKernels::new(t / 2 + 1, c).g(t)?, oracle_inverse_series(t, c)?.coeff(t).clone()))
            }
        })?;
        raws.push(Raw::certified("g_oracle", vec![("t", t as i64)], verdict));
    }
    for t in 0..=G_CONVOLUTION_T_MAX {
        let verdict = agree(ctx, |c| {
            let k = if c == ctx { kernels.clone() } else { SumKernels::new(t / 2 + 1, c) };
            Ok((k.g(t)?, k.g_convolution(t)?))
        })?;
        raws.push(Raw::certified("g_convolution", vec![("t", t as i64)], verdict));
    }

    let ratio: Vec<_> = ks
        .par_iter()
        .map(|&k| -> Result<_> {
            Ok((ratio_coefficients(k, C_ORACLE_M_MAX, ctx)?, oracle_ratio_series(k, C_ORACLE_M_MAX, ctx)?))
        })
        .collect::<Result<_>>()?;
    for (&k, (closed, series)) in ks.iter().zip(&ratio) {
        for m in 0..=C_ORACLE_M_MAX {
            let verdict = agree(ctx, |c| {
                if c == ctx {
                    Ok((closed[m].clone(), series.coeff(m).clone()))
                } else {
                    Ok((
                        ratio_coefficients(k, m, c)?[m].clone(),
                        oracle_ratio_series(k, m, c)?.coeff(m).clone(),
                    ))
                }
            })?;
            raws.push(Raw::certified("c_oracle", vec![("k", k as i64), ("m", m as i64)], verdict));
        }
    }
    Ok(raws)
}

fn log_concavity_suite(
    params: &SuiteParams,
    ctx: &PrecisionContext,
    oracle: &ExactPartitionTable,
) -> Result<Vec<Raw>> {
    (params.n_from..=params.n_to)
        .map(|n| {
            let (lhs, rhs) = log_concavity_sides(oracle, n)?;
            Ok(Raw {
                exact: true,
                ..Raw::certified("log_concave", vec![("n", n as i64)], exact_verdict(&lhs, &rhs, ctx))
            })
        })
        .collect()
}

/// Compares the recurrence table with explicit enumeration for n ≤ `n_max`;
/// returns the first mismatching n, if any.
pub fn enumeration_mismatch(oracle: &ExactPartitionTable, n_max: u32) -> Result<Option<u32>> {
    for n in 0..=n_max {
        if *oracle.get(u64::from(n))? != enumerate_partition_count(n) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// One row of a tightness profile.
#[derive(Clone, Debug, Serialize)]
pub struct TightnessRow {
    pub check: String,
    pub params: BTreeMap<String, i64>,
    /// lhs/rhs: the fraction of the bound actually used.
    pub ratio: String,
    /// True when the ratio exceeds 1 (the bound is violated).
    pub flagged: bool,
}

/// Whether the ratio is non-increasing along the last parameter within a
/// group of cases sharing all other parameters. Reported, never asserted.
#[derive(Clone, Debug, Serialize)]
pub struct Trend {
    pub check: String,
    pub group: BTreeMap<String, i64>,
    pub non_increasing: bool,
}

/// How conservative the constants of a suite are.
#[derive(Clone, Debug, Serialize)]
pub struct TightnessProfile {
    pub suite: Suite,
    pub rows: Vec<TightnessRow>,
    pub trends: Vec<Trend>,
}

/// A check name together with the parameters that stay fixed along a trend.
type TrendKey = (String, BTreeMap<String, i64>);

impl TightnessProfile {
    /// Builds the profile of an existing report. The trend variable is `n`
    /// for the band suites and `t` otherwise.
    pub fn from_report(report: &VerificationReport) -> Self {
        let var = match report.suite {
            Suite::MainTheorem
            | Suite::ShiftTheorem
            | Suite::InverseTheorem
            | Suite::Lehmer
            | Suite::LogConcavity => "n",
            _ => "t",
        };
        let rows = report
            .cases
            .iter()
            .map(|c| TightnessRow {
                check: c.check.clone(),
                params: c.params.clone(),
                ratio: format!("{:.6e}", c.ratio),
                flagged: c.ratio > 1.0,
            })
            .collect();
        let mut groups: BTreeMap<TrendKey, Vec<(i64, f64)>> = BTreeMap::new();
        for c in &report.cases {
            let Some(&x) = c.params.get(var) else { continue };
            let group: BTreeMap<String, i64> = c
                .params
                .iter()
                .filter(|(k, _)| k.as_str() != var && k.as_str() != "boundary")
                .map(|(k, v)| (k.clone(), *v))
                .collect();
            groups.entry((c.check.clone(), group)).or_default().push((x, c.ratio));
        }
        let trends = groups
            .into_iter()
            .map(|((check, group), mut pts)| {
                pts.sort_by_key(|p| p.0);
                let non_increasing = pts.windows(2).all(|w| w[1].1 <= w[0].1);
                Trend {
                    check,
                    group,
                    non_increasing,
                }
            })
            .collect();
        Self {
            suite: report.suite,
            rows,
            trends,
        }
    }

    /// True if any ratio exceeds 1.
    pub fn any_flagged(&self) -> bool {
        self.rows.iter().any(|r| r.flagged)
    }

    /// One row per case: check, parameters, ratio, flagged.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let keys: BTreeSet<&str> = self
            .rows
            .iter()
            .flat_map(|r| r.params.keys().map(String::as_str))
            .collect();
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["check"];
        header.extend(keys.iter().copied());
        header.extend(["ratio", "flagged"]);
        out.write_record(&header)?;
        for row in &self.rows {
            let mut rec = vec![row.check.clone()];
            rec.extend(keys.iter().map(|k| row.params.get(*k).map(i64::to_string).unwrap_or_default()));
            rec.extend([row.ratio.clone(), row.flagged.to_string()]);
            out.write_record(&rec)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Runs `suite` and returns its ratio table; an empty parameter range gives
/// an empty table.
pub fn tightness_profile(suite: Suite, params: &SuiteParams, ctx: &PrecisionContext) -> Result<TightnessProfile> {
    Ok(TightnessProfile::from_report(&run_suite(suite, params, ctx)?))
}
