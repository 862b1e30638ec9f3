mod common;

use common::{assert_close, ctx, REF_TOL};
use partition_expansions::numerics::{
    binomial, binomial_rational, ceil_sqrt, ceil_to_u64, certify_le, factorial, g_hat,
    half_pochhammer, mu, nu, pi, pochhammer_int, pochhammer_rational, powi, to_decimal,
    Constants, DEFAULT_BITS,
};
use partition_expansions::{Error, PrecisionContext, Status};
use rug::{Float, Rational};

#[test]
fn context_defaults_and_validation() {
    let c = PrecisionContext::default();
    assert_eq!(c.bits, DEFAULT_BITS);
    assert_eq!(c.max_bits, 4 * DEFAULT_BITS);
    assert_eq!(c.margin_exponent, 128);
    assert_eq!(c.digits(), 72);
    assert!(matches!(PrecisionContext::new(63), Err(Error::Precision(_))));
    assert!(matches!(PrecisionContext::with_max_bits(256, 128), Err(Error::Precision(_))));
    assert_eq!(PrecisionContext::new(64).unwrap().doubled().unwrap().bits, 128);
    assert!(PrecisionContext::with_max_bits(256, 256).unwrap().doubled().is_none());
}

#[test]
fn margin_scales_with_magnitude() {
    let c = ctx();
    let m = c.margin(&Float::with_val(c.prec(), -8));
    assert_eq!(m, Float::with_val(c.prec(), 8) >> 128u32);
}

#[test]
fn certify_decides_or_reports_ambiguous() {
    let c = ctx();
    let one = |c: &PrecisionContext| Float::with_val(c.prec(), 1);
    let two = |c: &PrecisionContext| Float::with_val(c.prec(), 2);
    let pass = certify_le(&c, |c| Ok((one(c), two(c)))).unwrap();
    assert_eq!(pass.status, Status::Pass);
    assert_eq!(pass.bits, 256);
    let fail = certify_le(&c, |c| Ok((two(c), one(c)))).unwrap();
    assert_eq!(fail.status, Status::Fail);
    let mut calls = Vec::new();
    let tie = certify_le(&c, |c| {
        calls.push(c.bits);
        Ok((one(c), one(c)))
    })
    .unwrap();
    assert_eq!(tie.status, Status::Ambiguous);
    assert_eq!(calls, vec![256, 512, 1024]);
    assert_eq!(tie.bits, 1024);
}

#[test]
fn certify_escalates_until_resolved() {
    // The two sides differ by 2^-200: inside the 256-bit margin, outside the 512-bit one.
    let c = ctx();
    let v = certify_le(&c, |c| {
        let a = Float::with_val(c.prec(), 1);
        let b = Float::with_val(c.prec(), 1) + (Float::with_val(c.prec(), 1) >> 200u32);
        Ok((a, b))
    })
    .unwrap();
    assert_eq!(v.status, Status::Pass);
    assert_eq!(v.bits, 512);
}

#[test]
fn mu_values() {
    let c = ctx();
    assert_close(&mu(1, &c).unwrap(), "2.51109151358226448976464672877", REF_TOL);
    let direct = pi(c.prec()) / 6u32 * Float::with_val(c.prec(), 143u32).sqrt();
    assert_eq!(mu(6, &c).unwrap(), direct);
    assert!(matches!(mu(0, &c), Err(Error::Domain(_))));
}

#[test]
fn nu_and_g_hat_values() {
    let c = ctx();
    let p = c.prec();
    // ν(2) = 2log6 + 4log2 + 4log2 + 4·loglog2 + 10·loglog2/log2
    let ln2 = Float::with_val(p, 2u32).ln();
    let lnln2 = Float::with_val(p, ln2.ln_ref());
    let expected = Float::with_val(p, 6u32).ln() * 2u32 + Float::with_val(p, &ln2 * 8u32)
        + Float::with_val(p, &lnln2 * 4u32)
        + Float::with_val(p, &lnln2 * 10u32) / &ln2;
    let v2 = nu(2, &c).unwrap();
    assert!(common::rel_close(&v2, &expected, 1e-70));
    assert_close(&v2, "2.37498097116003902643807725771", REF_TOL);
    assert_close(&nu(5, &c).unwrap(), "38.7603191324044593", 1e-17);
    assert_close(&g_hat(2, &c).unwrap(), "0.898925131770350183", 1e-17);
    assert_close(&g_hat(3, &c).unwrap(), "39.8414057439769346", 1e-17);
    assert_close(&g_hat(4, &c).unwrap(), "115.349839400075956", 1e-17);
    assert_close(&g_hat(5, &c).unwrap(), "228.373362374756412", 1e-17);
    assert!(matches!(nu(1, &c), Err(Error::Domain(_))));
}

#[test]
fn g_hat_grows_and_dominates_half_square() {
    let c = ctx();
    let mut prev = g_hat(2, &c).unwrap();
    for m in 3..=51 {
        let cur = g_hat(m, &c).unwrap();
        assert!(cur > prev, "ĝ not increasing at m = {m}");
        let half_sq = Float::with_val(c.prec(), (m - 1) * (m - 1)) / 2u32;
        assert!(cur > half_sq, "ĝ({m}) <= ({})²/2", m - 1);
        prev = cur;
    }
    // N = 1: ĝ(2) ≈ 0.899 > 1/2.
    assert!(g_hat(2, &c).unwrap() > 0.5);
}

#[test]
fn integer_helpers() {
    assert_eq!(factorial(10), 3_628_800);
    assert_eq!(binomial(10, 3), 120);
    assert_eq!(ceil_sqrt(1), 1);
    assert_eq!(ceil_sqrt(4), 2);
    assert_eq!(ceil_sqrt(5), 3);
    assert_eq!(pochhammer_int(-3, 2), 6);
    assert_eq!(pochhammer_int(5, 0), 1);
    let c = ctx();
    assert_eq!(ceil_to_u64(&Float::with_val(c.prec(), 528.01)).unwrap(), 529);
    assert_eq!(ceil_to_u64(&Float::with_val(c.prec(), 529)).unwrap(), 529);
    assert!(ceil_to_u64(&Float::with_val(c.prec(), -3)).is_err());
}

#[test]
fn pochhammer_and_binomial_rationals() {
    assert_eq!(pochhammer_rational(&Rational::from((-5, 2)), 3), Rational::from((-15, 8)));
    assert_eq!(pochhammer_rational(&Rational::from((7, 3)), 0), 1);
    assert_eq!(pochhammer_rational(&Rational::from(-1), 1), -1);
    assert_eq!(half_pochhammer(3, 3), Rational::from((-15, 8)));
    assert_eq!(binomial_rational(&Rational::from((1, 2)), 2), Rational::from((-1, 8)));
    assert_eq!(binomial_rational(&Rational::from((-1, 2)), 3), Rational::from((-5, 16)));
    assert_eq!(binomial_rational(&Rational::from(5), 2), 10);
    assert_eq!(binomial_rational(&Rational::from(5), -1), 0);
}

#[test]
fn powers_and_decimals() {
    let c = ctx();
    let two = Float::with_val(c.prec(), 2);
    assert_eq!(powi(&two, 10), 1024);
    assert_eq!(powi(&two, -2), 0.25);
    assert_eq!(to_decimal(&Float::with_val(c.prec(), 42), 5), "42.000");
    assert_eq!(to_decimal(&Float::new(c.prec()), 5), "0");
    assert_eq!(to_decimal(&Float::with_val(c.prec(), 0.125), 3), "1.25e-1");
}

#[test]
fn substitution_constant() {
    let k = Constants::new(&ctx());
    let b2 = Float::with_val(k.b_sub.prec(), k.b_sub.square_ref());
    // 36(1 − b²)/b² = π²
    let back = (Float::with_val(b2.prec(), 1) - &b2) * 36u32 / &b2;
    let pi2 = Float::with_val(back.prec(), k.pi.square_ref());
    assert!(common::rel_close(&back, &pi2, 1e-70));
    assert_eq!(k.alpha, Float::with_val(k.pi.prec(), &k.pi / 6u32));
}
