//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every suite runs at 256 bits with its default parameters.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use partition_expansions::harness::{
    enumeration_mismatch, required_n_max, run_suite_with_oracle, Suite, SuiteParams, VerificationReport,
};
use partition_expansions::{ExactPartitionTable, PrecisionContext};

const BITS: u32 = 256;
/// Wall-clock budget for the main theorem suite, oracle build included.
const MAIN_BUDGET: Duration = Duration::from_secs(600);
/// Wall-clock budget for the appendix identity suite.
const APPENDIX_BUDGET: Duration = Duration::from_secs(120);
/// Brute-force enumeration range for the exact oracle.
const ENUMERATION_MAX: u32 = 60;

struct Outcome {
    pass: bool,
    detail: String,
}

fn describe(reports: &[&VerificationReport]) -> (bool, String) {
    let pass = reports.iter().all(|r| r.all_pass() && r.summary.total > 0);
    let detail = reports.iter().map(|r| r.summary_line()).collect::<Vec<_>>().join("; ");
    (pass, detail)
}

fn run(suite: Suite, ctx: &PrecisionContext, oracle: &ExactPartitionTable) -> VerificationReport {
    run_suite_with_oracle(suite, &SuiteParams::for_suite(suite), ctx, oracle)
        .unwrap_or_else(|e| panic!("{suite}: {e}"))
}

fn main() -> ExitCode {
    let ctx = PrecisionContext::new(BITS).expect("valid precision");
    let n_max = Suite::ALL
        .iter()
        .map(|&s| required_n_max(s, &SuiteParams::for_suite(s), &ctx).expect("sizing"))
        .max()
        .unwrap_or(0)
        .max(u64::from(ENUMERATION_MAX));

    let start = Instant::now();
    let oracle = ExactPartitionTable::build(n_max);
    let main = run(Suite::MainTheorem, &ctx, &oracle);
    let main_time = start.elapsed();

    let mut outcomes = Vec::new();

    let (pass, detail) = describe(&[&main]);
    outcomes.push(Outcome {
        pass: pass && main_time < MAIN_BUDGET,
        detail: format!("main theorem band: {detail} in {:.2?}", main_time),
    });

    let shift = run(Suite::ShiftTheorem, &ctx, &oracle);
    let inverse = run(Suite::InverseTheorem, &ctx, &oracle);
    let (pass, detail) = describe(&[&shift, &inverse]);
    outcomes.push(Outcome {
        pass,
        detail: format!("shift and inverse bands: {detail}"),
    });

    let lehmer = run(Suite::Lehmer, &ctx, &oracle);
    let (pass, detail) = describe(&[&lehmer]);
    outcomes.push(Outcome {
        pass,
        detail: format!("Lehmer-style band: {detail}"),
    });

    let coeff = run(Suite::CoefficientOracle, &ctx, &oracle);
    let (pass, detail) = describe(&[&coeff]);
    outcomes.push(Outcome {
        pass,
        detail: format!("coefficient oracle equivalence: {detail}"),
    });

    let omega = run(Suite::OmegaEnvelopes, &ctx, &oracle);
    let g_env = run(Suite::GEnvelopes, &ctx, &oracle);
    let sj = run(Suite::SjEnvelopes, &ctx, &oracle);
    let (pass, detail) = describe(&[&omega, &g_env, &sj]);
    outcomes.push(Outcome {
        pass,
        detail: format!("envelope suites: {detail}"),
    });

    let t = Instant::now();
    let appendix = run(Suite::AppendixIdentities, &ctx, &oracle);
    let appendix_time = t.elapsed();
    let (pass, detail) = describe(&[&appendix]);
    outcomes.push(Outcome {
        pass: pass && appendix_time < APPENDIX_BUDGET,
        detail: format!("appendix identities: {detail} in {:.2?}", appendix_time),
    });

    let mismatch = enumeration_mismatch(&oracle, ENUMERATION_MAX).expect("enumeration");
    let log_concavity = run(Suite::LogConcavity, &ctx, &oracle);
    let (pass, detail) = describe(&[&log_concavity]);
    outcomes.push(Outcome {
        pass: pass && mismatch.is_none(),
        detail: format!(
            "exact oracle: enumeration n <= {ENUMERATION_MAX} {}; {detail}",
            match mismatch {
                None => "matches".to_string(),
                Some(n) => format!("differs at n = {n}"),
            }
        ),
    });

    let again = run(Suite::MainTheorem, &ctx, &oracle);
    let (a, b) = (main.to_json().expect("json"), again.to_json().expect("json"));
    outcomes.push(Outcome {
        pass: a == b,
        detail: format!("determinism: two main theorem reports, {} bytes, identical = {}", a.len(), a == b),
    });

    let mut ok = true;
    for (i, o) in outcomes.iter().enumerate() {
        ok &= o.pass;
        println!("criterion {}: {} — {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
