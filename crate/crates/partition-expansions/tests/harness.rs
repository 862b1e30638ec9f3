mod common;

use common::ctx;
use partition_expansions::harness::{
    enumeration_mismatch, required_n_max, run_suite, run_suite_with_oracle, sample_grid,
    tightness_profile, Suite, SuiteParams, TightnessProfile,
};
use partition_expansions::{Error, ExactPartitionTable, Status};

fn small_main() -> SuiteParams {
    SuiteParams {
        k_max: 1,
        n_trunc_max: 2,
        samples: 5,
        span: 1000,
        ..SuiteParams::default()
    }
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        assert_eq!(s.to_string(), s.name());
    }
    assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
}

#[test]
fn sample_grid_is_reproducible_and_distinct() {
    let params = SuiteParams::default();
    let a = sample_grid(529, 7, &params);
    let b = sample_grid(529, 7, &params);
    assert_eq!(a, b);
    assert_eq!(a.len(), 51);
    assert_eq!(a[0], 529);
    assert!(a.windows(2).all(|w| w[0] < w[1]));
    assert!(a.iter().all(|&n| (529..=10_529).contains(&n)));
    assert_ne!(a, sample_grid(529, 8, &params));
    let reseeded = SuiteParams { seed: 1, ..params };
    assert_ne!(a, sample_grid(529, 7, &reseeded));
}

#[test]
fn log_concavity_suite_counts() {
    let r = run_suite(Suite::LogConcavity, &SuiteParams::for_suite(Suite::LogConcavity), &ctx()).unwrap();
    assert_eq!(r.summary.total, 975);
    assert_eq!(r.summary.pass, 975);
    assert!(r.cases.iter().all(|c| c.exact));
    let below = SuiteParams {
        n_from: 20,
        n_to: 30,
        ..SuiteParams::default()
    };
    let r = run_suite(Suite::LogConcavity, &below, &ctx()).unwrap();
    // p(n) is log-concave for n ≥ 26 but not at the even n below it.
    assert!(r.summary.fail > 0);
    assert!(!r.all_pass());
}

#[test]
fn main_suite_report_structure_and_determinism() {
    let params = small_main();
    let a = run_suite(Suite::MainTheorem, &params, &ctx()).unwrap();
    let b = run_suite(Suite::MainTheorem, &params, &ctx()).unwrap();
    assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    assert_eq!(a.summary.total, 12);
    assert_eq!(a.summary.pass + a.summary.fail + a.summary.ambiguous, a.cases.len());
    assert!(a.all_pass());
    let first = &a.cases[0];
    assert_eq!(first.params["boundary"], 1);
    assert_eq!(first.params["n"], 529);
    assert!(first.center.is_some() && first.target.is_some());
    assert!(a.summary.max_tightness.is_some());
    let json: serde_json::Value = serde_json::from_str(&a.to_json().unwrap()).unwrap();
    assert_eq!(json["suite"], "main_theorem");
    assert_eq!(json["ctx"]["bits"], 256);
    assert_eq!(json["cases"][0]["status"], "pass");
}

#[test]
fn csv_has_one_row_per_case() {
    let r = run_suite(Suite::MainTheorem, &small_main(), &ctx()).unwrap();
    let mut buf = Vec::new();
    r.write_csv(&mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "check,N,boundary,k,n,lhs,rhs,margin,status");
    assert_eq!(lines.count(), r.cases.len());
}

#[test]
fn oracle_sizing_error() {
    let params = small_main();
    let need = required_n_max(Suite::MainTheorem, &params, &ctx()).unwrap();
    assert_eq!(need, 529 + 1000 + 1);
    let small = ExactPartitionTable::build(need - 1);
    let err = run_suite_with_oracle(Suite::MainTheorem, &params, &ctx(), &small).unwrap_err();
    assert!(matches!(err, Error::OracleTooSmall { required, available } if required == need && available == need - 1));
    let enough = ExactPartitionTable::build(need);
    assert!(run_suite_with_oracle(Suite::MainTheorem, &params, &ctx(), &enough).is_ok());
}

#[test]
fn inconsistent_parameters_are_rejected() {
    let params = SuiteParams {
        samples: 20,
        span: 10,
        ..SuiteParams::default()
    };
    assert!(matches!(run_suite(Suite::ShiftTheorem, &params, &ctx()), Err(Error::Domain(_))));
    let params = SuiteParams {
        n_from: 0,
        ..SuiteParams::default()
    };
    assert!(matches!(run_suite(Suite::LogConcavity, &params, &ctx()), Err(Error::Domain(_))));
}

#[test]
fn lehmer_suite_skips_only_the_excluded_pair() {
    let params = SuiteParams {
        m_max: 2,
        lehmer_span: 50,
        ..SuiteParams::default()
    };
    let r = run_suite(Suite::Lehmer, &params, &ctx()).unwrap();
    assert_eq!(r.summary.total, 49);
    assert!(r.all_pass());
    assert!(!r.cases.iter().any(|c| c.params["n"] == 6));
}

#[test]
fn tightness_profiles() {
    let params = SuiteParams {
        n_trunc_max: 1,
        ..small_main()
    };
    let profile = tightness_profile(Suite::MainTheorem, &params, &ctx()).unwrap();
    assert_eq!(profile.rows.len(), 6);
    assert!(!profile.any_flagged());
    for row in &profile.rows {
        let ratio: f64 = row.ratio.parse().unwrap();
        assert!(ratio > 0.0 && ratio < 1.0);
    }
    assert_eq!(profile.trends.len(), 1);

    let empty = SuiteParams {
        k_max: 0,
        ..small_main()
    };
    let profile = tightness_profile(Suite::MainTheorem, &empty, &ctx()).unwrap();
    assert!(profile.rows.is_empty());
    assert!(profile.trends.is_empty());
}

#[test]
fn profile_flags_failures() {
    let params = SuiteParams {
        n_from: 20,
        n_to: 30,
        ..SuiteParams::default()
    };
    let r = run_suite(Suite::LogConcavity, &params, &ctx()).unwrap();
    let profile = TightnessProfile::from_report(&r);
    let flagged = profile.rows.iter().filter(|r| r.flagged).count();
    assert_eq!(flagged, r.cases.iter().filter(|c| c.status == Status::Fail).count());
    assert!(profile.any_flagged());
}

#[test]
fn enumeration_cross_check() {
    let t = ExactPartitionTable::build(40);
    assert_eq!(enumeration_mismatch(&t, 40).unwrap(), None);
}
