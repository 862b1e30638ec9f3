mod common;

use common::{assert_close, ctx, rel_close, REF_TOL};
use partition_expansions::inverse_expansion::{
    approx_inv_p, g, g_convolution, g_envelopes, g_parts, inverse_cutoff, inverse_error_budget,
    lehmer_band_check, lehmer_band_sides, s_j, SumKernels, SUM_ENVELOPE_CONSTANTS,
};
use partition_expansions::numerics::mu;
use partition_expansions::{Error, ExactPartitionTable, ExpansionTable};
use rug::ops::Pow;
use rug::Float;

fn pi(prec: u32) -> Float {
    Float::with_val(prec, rug::float::Constant::Pi)
}

#[test]
fn auxiliary_sums_at_small_indices() {
    let c = ctx();
    let p = c.prec();
    let alpha2 = Float::with_val(p, pi(p) / 6u32).square();
    assert!(rel_close(&s_j(1, 1, &c).unwrap(), &(alpha2 / 192u32), 1e-70));
    assert_eq!(s_j(2, 2, &c).unwrap(), 0);
    assert_eq!(s_j(6, 0, &c).unwrap(), 1);
    assert!(s_j(1, 0, &c).is_err());
    assert!(s_j(10, 3, &c).is_err());
}

#[test]
fn coefficient_families_at_small_indices() {
    let c = ctx();
    let p = c.prec();
    let pi = pi(p);
    let pi2 = Float::with_val(p, pi.square_ref());
    let sqrt6 = Float::with_val(p, 6u32).sqrt();
    let parts1 = g_parts(1, &c).unwrap();
    let ge1 = (Float::with_val(p, pi2.square_ref()) - Float::with_val(p, &pi2 * 288u32) + 10368u32)
        / (Float::with_val(p, &pi2 * 6912u32));
    assert!(rel_close(&parts1.g_e1, &ge1, 1e-70));
    let parts0 = g_parts(0, &c).unwrap();
    assert_eq!(parts0.g_e1, 1);
    assert_eq!(parts0.g_e2, 0);
    assert!(rel_close(&parts0.g_o1, &(sqrt6.clone() / (pi.clone() * 2u32)), 1e-70));
    assert!(rel_close(&parts0.g_o2, &(pi.clone() / (sqrt6 * 24u32)), 1e-70));
}

#[test]
fn g_values_match_the_independent_expansion() {
    let c = ctx();
    let p = c.prec();
    assert_eq!(g(0, &c).unwrap(), 1);
    // g(1) = √6/(2π) + π/(24√6)
    let pi = pi(p);
    let sqrt6 = Float::with_val(p, 6u32).sqrt();
    let g1 = sqrt6.clone() / (pi.clone() * 2u32) + pi.clone() / (sqrt6.clone() * 24u32);
    assert!(rel_close(&g(1, &c).unwrap(), &g1, 1e-70));
    // g(3) = (2239488 − 432π⁴ + π⁶)/(497664√6π³)
    let pi4 = Float::with_val(p, (&pi).pow(4u32));
    let pi6 = Float::with_val(p, (&pi).pow(6u32));
    let g3 = (pi6 - pi4 * 432u32 + 2_239_488u32) / (sqrt6 * 497_664u32 * Float::with_val(p, (&pi).pow(3u32)));
    assert!(rel_close(&g(3, &c).unwrap(), &g3, 1e-70));
    let expected = [
        "1.0",
        "0.443287976873582391267268873456",
        "0.132576336285423520391923721869",
        "0.058161962934871981743514976358",
        "0.0262452550122152119708508098699",
        "0.0115503838065815206363174817069",
        "0.0050873259677422304056300708967",
        "0.00223871788883926846931238847997",
        "0.000985229757419151805697811464705",
        "0.000433555602452090555438143578079",
        "0.000190789802038697158137480727048",
    ];
    for (t, e) in expected.iter().enumerate() {
        assert_close(&g(t, &c).unwrap(), e, REF_TOL);
    }
}

#[test]
fn convolution_route_agrees() {
    let c = ctx();
    let k = SumKernels::new(11, &c);
    for t in 0..=20 {
        let closed = k.g(t).unwrap();
        let conv = k.g_convolution(t).unwrap();
        assert!(rel_close(&closed, &conv, 1e-70), "t = {t}");
    }
    assert!(rel_close(&g_convolution(5, &c).unwrap(), &g(5, &c).unwrap(), 1e-70));
}

#[test]
fn g_envelopes_bound_and_decay_geometrically() {
    let c = ctx();
    let (even1, odd1) = g_envelopes(1, &c).unwrap();
    assert!(g(2, &c).unwrap().abs() < even1);
    assert!(g(3, &c).unwrap().abs() < odd1);
    let p = c.prec();
    let a2 = Float::with_val(p, pi(p) / 6u32).square();
    let rho = Float::with_val(p, &a2 + 1u32) / (a2 * 24u32);
    for t in 1..10u32 {
        let (e0, o0) = g_envelopes(t as usize, &c).unwrap();
        let (e1, o1) = g_envelopes(t as usize + 1, &c).unwrap();
        let fe = |s: u32| Float::with_val(p, 7) / (2 * s) + 1u32;
        let fo = |s: u32| Float::with_val(p, 1) / (2 * s) + 1u32;
        assert!(rel_close(&(e1 / fe(t + 1) * fe(t) / e0), &rho, 1e-70));
        assert!(rel_close(&(o1 / fo(t + 1) * fo(t) / o0), &rho, 1e-70));
    }
    assert!(g_envelopes(0, &c).is_err());
}

#[test]
fn sum_envelopes_on_a_short_range() {
    let c = ctx();
    let k = SumKernels::new(30, &c);
    for j in 1..=9u8 {
        for t in 2..=30 {
            let (dev, bound) = k.sum_envelope_sides(j, t).unwrap();
            assert!(dev <= bound, "j = {j}, t = {t}");
        }
    }
    assert_eq!(SUM_ENVELOPE_CONSTANTS[1], (549, 10));
    assert!(k.sum_envelope_sides(1, 1).is_err());
}

#[test]
fn budget_values() {
    let c = ctx();
    let b = inverse_error_budget(1, &c).unwrap();
    let p = c.prec();
    let base = Float::with_val(p, 6u32) / (pi(p) * Float::with_val(p, 24u32).sqrt());
    assert!(rel_close(&b.e2_n2, &(base.square() * 5u32), 1e-70));
    assert_close(&b.e2_n2, "0.759908877317533285829095974073", REF_TOL);
    for n_trunc in 1..=20 {
        assert!(inverse_error_budget(n_trunc, &c).unwrap().e2_n <= 4.1);
    }
    assert!(inverse_error_budget(0, &c).is_err());
}

#[test]
fn cutoffs() {
    let c = ctx();
    let got: Vec<u64> = (1..=4).map(|n| inverse_cutoff(n, &c).unwrap()).collect();
    assert_eq!(got, vec![1, 40, 116, 229]);
}

#[test]
fn inverse_bands_contain_exact_values() {
    let c = ctx();
    let oracle = ExactPartitionTable::build(1000);
    for (n, n_trunc) in [(100, 1), (400, 4)] {
        let table = ExpansionTable::inverse(n_trunc, &c).unwrap();
        let approx = approx_inv_p(n, n_trunc, &c).unwrap();
        assert!(approx.contains(&table.scaled_target(&oracle, n).unwrap()));
    }
    let r1 = approx_inv_p(300, 3, &c).unwrap().radius;
    let r2 = approx_inv_p(301, 3, &c).unwrap().radius;
    assert!(r1 > r2 && r2 > 0);
    assert!(matches!(approx_inv_p(228, 4, &c), Err(Error::BelowCutoff { .. })));
}

#[test]
fn lehmer_band() {
    let c = ctx();
    let oracle = ExactPartitionTable::build(1000);
    assert!(lehmer_band_check(&oracle, 10, 2, &c).unwrap());
    assert!(lehmer_band_check(&oracle, 1000, 4, &c).unwrap());
    assert!(matches!(lehmer_band_check(&oracle, 6, 2, &c), Err(Error::Excluded { n: 6, m: 2 })));
    assert!(matches!(lehmer_band_sides(&oracle, 10, 1, &c), Err(Error::Domain(_))));
    // ĝ(3) ≈ 39.84, so n = 39 is below the band's range.
    assert!(matches!(lehmer_band_sides(&oracle, 39, 3, &c), Err(Error::BelowCutoff { .. })));
    assert!(lehmer_band_check(&oracle, 40, 3, &c).unwrap());
}

#[test]
fn excluded_pair_really_violates_the_band() {
    // Evaluate the band at (n, m) = (6, 2) directly: p(6) = 11.
    let c = ctx();
    let p = c.prec();
    let m = mu(6, &c).unwrap();
    let scaled = Float::with_val(p, 11u32 * 143u32)
        / (Float::with_val(p, 12u32).sqrt() * Float::with_val(p, m.exp_ref()));
    let lead = Float::with_val(p, 1) - Float::with_val(p, 1) / &m;
    let lhs = (scaled - lead).abs();
    let rhs = Float::with_val(p, m.square_ref()).recip();
    let ratio = Float::with_val(p, &lhs / &rhs).to_f64();
    assert!(ratio > 1.0, "ratio {ratio}");
    assert!((ratio - 1.036).abs() < 1e-3);
}
