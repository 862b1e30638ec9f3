mod common;

use common::{ctx, rel_close};
use partition_expansions::appendix_sums::{
    fact_checks, s2_split, s2_split_check, s2_via_closed, s3_via_closed, t_prime_closed,
    t_prime_direct, t_tilde_closed, t_tilde_direct, BSubstitution,
};
use partition_expansions::inverse_expansion::s_j;
use partition_expansions::Error;
use rug::Float;

/// Relative agreement demanded of closed forms at 256 bits.
const CLOSED_TOL: f64 = 1e-40;

#[test]
fn substitution_round_trip() {
    let c = ctx();
    let sub = BSubstitution::new(&c);
    let pi = Float::with_val(c.prec(), rug::float::Constant::Pi);
    assert!(rel_close(&sub.pi_squared(), &pi.square(), 1e-70));
    assert!(sub.b > 0 && sub.b < 1);
}

#[test]
fn t_tilde_closed_form() {
    let c = ctx();
    for (t, u) in [(3, 1), (4, 1), (10, 7), (12, 5)] {
        let d = t_tilde_direct(t, u, &c).unwrap();
        let cl = t_tilde_closed(t, u, &c).unwrap();
        assert!(rel_close(&d, &cl, CLOSED_TOL), "(t, u) = ({t}, {u}): {d} vs {cl}");
    }
    assert!(matches!(t_tilde_direct(3, 2, &c), Err(Error::Range(_))));
    assert!(matches!(t_tilde_closed(4, 0, &c), Err(Error::Range(_))));
}

#[test]
fn t_prime_closed_form_including_u_zero() {
    let c = ctx();
    for (t, u) in [(2, 0), (5, 0), (5, 3), (9, 4)] {
        let d = t_prime_direct(t, u, &c).unwrap();
        let cl = t_prime_closed(t, u, &c).unwrap();
        assert!(rel_close(&d, &cl, CLOSED_TOL), "(t, u) = ({t}, {u})");
    }
}

#[test]
fn assembled_sums_match_direct_sums() {
    let c = ctx();
    for t in [2u32, 3, 8, 15] {
        let direct3 = s_j(3, t as usize, &c).unwrap();
        assert!(rel_close(&s3_via_closed(t, &c).unwrap(), &direct3, CLOSED_TOL), "S3, t = {t}");
    }
    for t in [3u32, 6, 15] {
        let direct2 = s_j(2, t as usize, &c).unwrap();
        assert!(rel_close(&s2_via_closed(t, &c).unwrap(), &direct2, CLOSED_TOL), "S2, t = {t}");
    }
    assert_eq!(s2_via_closed(2, &c).unwrap(), 0);
    assert!(s3_via_closed(1, &c).is_err());
}

#[test]
fn split_of_s2() {
    let c = ctx();
    let parts = s2_split(2, &c).unwrap();
    let sum: Float = parts.iter().fold(Float::new(parts[0].prec()), |acc, p| acc + p);
    assert!(sum.clone().abs() < 1e-60, "S2(2) split sums to {sum}");

    let r = s2_split_check(5, &c).unwrap();
    assert!(rel_close(&r.split_sum, &r.direct, CLOSED_TOL));
    assert!(r.holds());

    let r = s2_split_check(50, &c).unwrap();
    assert!(r.holds());
    for (lhs, rhs) in &r.envelopes {
        assert!(lhs < rhs);
    }
    assert!(s2_split(1, &c).is_err());
}

#[test]
fn elementary_facts() {
    let report = fact_checks(&ctx()).unwrap();
    assert!(report.all_hold());
    let count = |name: &str| report.cases.iter().filter(|c| c.fact == name).count();
    assert_eq!(count("geometric"), 499);
    assert_eq!(count("half_pochhammer"), 61);
    assert_eq!(count("root_series"), 200);

    let find = |name: &str, index: u32| {
        report
            .cases
            .iter()
            .find(|c| c.fact == name && c.index == index)
            .unwrap()
    };
    let hp3 = find("half_pochhammer", 3);
    assert_eq!(hp3.lhs, 15.0 / 8.0);
    assert_eq!(hp3.rhs, 15.0 / 8.0);
    let hp0 = find("half_pochhammer", 0);
    assert_eq!(hp0.lhs, 1);
    assert_eq!(hp0.rhs, 1);
    let geo2 = find("geometric", 2);
    assert!(geo2.lhs <= 0.25);
}
