//! Numerical verification of the closed forms for the inner sums of S₂ and
//! S₃ under the rationalizing substitution b = 6/√(36+π²), the five-way
//! split of S₂, and the three elementary facts used in the S_j estimates.
//!
//! With B₋ = b − 1 and B₊ = 1 + b, the closed forms are evaluated literally;
//! the direct sums use exact rational weights. Closed forms subtract large
//! nearly equal terms, so evaluation carries `16·t` extra bits.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::inverse_expansion::SumKernels;
use crate::numerics::{
    binomial, binomial_rational, factorial, half_pochhammer, pi, pochhammer_int, powi,
    PrecisionContext,
};

/// The rationalizing substitution b = 6/√(36+π²).
#[derive(Clone, Debug)]
pub struct BSubstitution {
    pub b: Float,
}

impl BSubstitution {
    /// b at the given internal precision.
    pub fn at(prec: u32) -> Self {
        let pi2 = pi(prec).square();
        Self {
            b: Float::with_val(prec, 6u32 / (pi2 + 36u32).sqrt()),
        }
    }

    /// b at the context precision.
    pub fn new(ctx: &PrecisionContext) -> Self {
        Self::at(ctx.prec())
    }

    /// 36(1−b²)/b², which equals π².
    pub fn pi_squared(&self) -> Float {
        let b2 = Float::with_val(self.b.prec(), self.b.square_ref());
        (Float::with_val(self.b.prec(), 1) - &b2) * 36u32 / b2
    }

    fn minus(&self) -> Float {
        Float::with_val(self.b.prec(), &self.b - 1u32)
    }

    fn plus(&self) -> Float {
        Float::with_val(self.b.prec(), &self.b + 1u32)
    }
}

/// Internal precision for index t.
fn appendix_prec(t: u32, ctx: &PrecisionContext) -> u32 {
    ctx.prec() + 16 * t
}

fn q(prec: u32, r: &Rational) -> Float {
    Float::with_val(prec, r)
}

/// (1/2 − t)_t.
fn half_t(t: u32) -> Rational {
    half_pochhammer(i64::from(t), t)
}

fn check_tu(t: u32, u: u32, u_min: u32) -> Result<()> {
    if t < 2 || u < u_min || u > t - 2 {
        return Err(Error::Range(format!(
            "(t, u) = ({t}, {u}) outside t >= 2, {u_min} <= u <= t - 2"
        )));
    }
    Ok(())
}

/// T̃(t,u) = Σ_{s=0}^{t−u−2} (b²−1)^{s+u} (−s−u)_u (1/2−s−u)_{1+s+u} / ((s+u)(s+2u)!).
pub fn t_tilde_direct(t: u32, u: u32, ctx: &PrecisionContext) -> Result<Float> {
    check_tu(t, u, 1)?;
    let prec = appendix_prec(t, ctx);
    let sub = BSubstitution::at(prec);
    let b2m1 = Float::with_val(prec, sub.b.square_ref()) - 1u32;
    let mut sum = Float::new(prec);
    for s in 0..=(t - u - 2) {
        let su = i64::from(s + u);
        let w = Rational::from(pochhammer_int(-su, u)) * half_pochhammer(su, 1 + s + u)
            / (Integer::from(su) * factorial(s + 2 * u));
        sum += powi(&b2m1, su) * q(prec, &w);
    }
    Ok(sum)
}

/// Closed form of T̃(t,u) (six terms, two inner i-sums).
pub fn t_tilde_closed(t: u32, u: u32, ctx: &PrecisionContext) -> Result<Float> {
    check_tu(t, u, 1)?;
    let prec = appendix_prec(t, ctx);
    let sub = BSubstitution::at(prec);
    let (b, bm, bp) = (sub.b.clone(), sub.minus(), sub.plus());
    let (ti, ui) = (i64::from(t), i64::from(u));
    let h = q(prec, &half_t(t));
    let pw = |x: &Float, e: i64| powi(x, e);
    let x = pw(&bm, 2 * ui) * &bp + pw(&bp, 2 * ui) * &bm;
    let four_bu = Float::with_val(prec, &b * 4u32) * u;

    let t1 = x.clone() / (four_bu.clone() * pw(&bm, ui) * pw(&bp, ui));
    let t2 = -(x * pw(&bm, ti - ui) * pw(&bp, ti - ui) * &h)
        / (four_bu.clone() * q(prec, &Rational::from(factorial(t))));
    let poly = Float::with_val(prec, &bm * &bp) * ((t - 1) * (2 * t - 1)) + (2 * t * u + 2 * u * u);
    let t3 = poly
        * (t - u)
        * pw(&bm, ti - 1)
        * pw(&bp, ti - 1)
        * &h
        * q(prec, &Rational::from(pochhammer_int(-ti, u)))
        / (q(prec, &Rational::from(factorial(t + u))) * (2 * (t - 1) * t * (2 * t - 1) * u));
    let mut inner4 = Float::new(prec);
    let mut inner6 = Float::new(prec);
    for i in 1..=u {
        let ii = i64::from(i);
        let w = q(prec, &Rational::from((pochhammer_int(-ti, i), factorial(i + t))));
        inner4 += pw(&bm, ii) / pw(&bp, ii) * &w;
        inner6 += pw(&bp, ii) / pw(&bm, ii) * &w;
    }
    let t4 = -(pw(&bm, ti - ui) * pw(&bp, ti + ui) * &h) / (2 * u) * inner4;
    let mut inner5 = Float::new(prec);
    for i in 1..=t {
        let ii = i64::from(i);
        let w = half_pochhammer(ii, i) / (Integer::from(2 * i - 1) * factorial(i));
        inner5 += pw(&bm, ii) * pw(&bp, ii) * q(prec, &w);
    }
    let t5 = (pw(&bp, 2 * ui) - pw(&bm, 2 * ui)) * pw(&bm, -ui) * pw(&bp, -ui) / four_bu * inner5;
    let t6 = -(pw(&bm, ti + ui) * pw(&bp, ti - ui) * &h) / (2 * u) * inner6;
    Ok(t1 + t2 + t3 + t4 + t5 + t6)
}

/// Direct inner sum of the alternative S₃ representation:
/// Σ_{s=0}^{t−u−2} (−s−u)_u (1/2−s−u)_{1+s+u}/(1+s+2u)!
/// · Σ_{r=0}^{t−u−s−1} (−1)^r (b²/(1−b²))^r C(−1/2−r, t−1−r−s−u).
pub fn t_prime_direct(t: u32, u: u32, ctx: &PrecisionContext) -> Result<Float> {
    check_tu(t, u, 0)?;
    let prec = appendix_prec(t, ctx);
    let sub = BSubstitution::at(prec);
    let b2 = Float::with_val(prec, sub.b.square_ref());
    let ratio = Float::with_val(prec, &b2 / (Float::with_val(prec, 1) - &b2));
    let mut sum = Float::new(prec);
    for s in 0..=(t - u - 2) {
        let su = i64::from(s + u);
        let w = Rational::from(pochhammer_int(-su, u)) * half_pochhammer(su, 1 + s + u)
            / factorial(1 + s + 2 * u);
        let mut inner = Float::new(prec);
        for r in 0..=(t - u - s - 1) {
            let c = binomial_rational(
                &(Rational::from((-1, 2)) - i64::from(r)),
                i64::from(t - 1 - r - s - u),
            );
            let term = powi(&ratio, i64::from(r)) * q(prec, &c);
            if r % 2 == 0 {
                inner += term;
            } else {
                inner -= term;
            }
        }
        sum += q(prec, &w) * inner;
    }
    Ok(sum)
}

/// Closed form T'(t,u) of the S₃ inner sum (valid for u = 0 as well).
pub fn t_prime_closed(t: u32, u: u32, ctx: &PrecisionContext) -> Result<Float> {
    check_tu(t, u, 0)?;
    let prec = appendix_prec(t, ctx);
    let sub = BSubstitution::at(prec);
    let (b, bm, bp) = (sub.b.clone(), sub.minus(), sub.plus());
    let (ti, ui) = (i64::from(t), i64::from(u));
    let h = q(prec, &half_t(t));
    let pw = |x: &Float, e: i64| powi(x, e);
    let y = pw(&bm, 2 * ui) + pw(&bp, 2 * ui);
    let d = 1 + 2 * u;
    let b2 = Float::with_val(prec, b.square_ref());

    let t1 = y.clone() / (pw(&bm, ti + ui - 1) * pw(&bp, ti + ui - 1) * (2 * d));
    let t2 = -(y.clone() * pw(&bm, 1 - ui) * pw(&bp, 1 - ui) * &h)
        / (q(prec, &Rational::from(factorial(t))) * (2 * d));
    let poly = Float::with_val(prec, &b2 * (2 * t)) - &b2 + (2 * u + 2) - 2 * t;
    let t3 = poly * (t - u) * &h * q(prec, &Rational::from(pochhammer_int(-ti, u)))
        / (q(prec, &Rational::from(factorial(t + u))) * (t * (2 * t - 1) * d));
    let mut inner4 = Float::new(prec);
    for i in 1..=t {
        let ii = i64::from(i);
        let w = half_pochhammer(ii, i) / (Integer::from(2 * i - 1) * factorial(i));
        inner4 += pw(&bm, ii) * pw(&bp, ii) * q(prec, &w);
    }
    let coef4 = y.clone() - Float::with_val(prec, &b * pw(&bm, 2 * ui)) + Float::with_val(prec, &b * pw(&bp, 2 * ui));
    let t4 = coef4 / (pw(&bm, ti + ui) * pw(&bp, ti + ui) * (2 * d)) * inner4;
    let mut inner5 = Float::new(prec);
    let mut inner6 = Float::new(prec);
    for i in 1..=u {
        let ii = i64::from(i);
        let w = q(prec, &Rational::from((pochhammer_int(-ti, i), factorial(i + t))));
        inner5 += pw(&bm, ii) * pw(&bp, -ii) * &w;
        inner6 += pw(&bm, -ii) * pw(&bp, ii) * &w;
    }
    let t5 = -(Float::with_val(prec, &b * pw(&bp, 1 + ui)) * &h) / (pw(&bm, ui) * d) * inner5;
    let t6 = -(Float::with_val(prec, &b * pw(&bm, 1 + ui)) * &h) / (pw(&bp, ui) * d) * inner6;
    Ok(t1 + t2 + t3 + t4 + t5 + t6)
}

/// S₃(t) assembled from the closed inner sums:
/// (−1)^{t−1} Σ_{u=0}^{t−2} (−1)^u ((1−b²)/b²)^u/(2u)! · T'(t,u).
///
/// The alternating prefactor (−1)^{t−1} of the definition of S₃ is restored
/// here; without it the assembled sum equals (−1)^{t−1} S₃(t).
pub fn s3_via_closed(t: u32, ctx: &PrecisionContext) -> Result<Float> {
    if t < 2 {
        return Err(Error::Range(format!("S3 via closed forms needs t >= 2, got {t}")));
    }
    let prec = appendix_prec(t, ctx);
    let sub = BSubstitution::at(prec);
    let b2 = Float::with_val(prec, sub.b.square_ref());
    let ratio = (Float::with_val(prec, 1) - &b2) / &b2;
    let mut sum = Float::new(prec);
    for u in 0..=(t - 2) {
        let term = powi(&ratio, i64::from(u)) / q(prec, &Rational::from(factorial(2 * u)))
            * t_prime_closed(t, u, ctx)?;
        if u % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(if t % 2 == 1 { sum } else { -sum })
}

/// S₂(t) assembled from the closed form of T̃:
/// Σ_{u=1}^{t−2} (−1)^u ((1−b²)/b²)^u/(2u−1)! · T̃(t,u).
pub fn s2_via_closed(t: u32, ctx: &PrecisionContext) -> Result<Float> {
    if t < 2 {
        return Err(Error::Range(format!("S2 via closed forms needs t >= 2, got {t}")));
    }
    let prec = appendix_prec(t, ctx);
    let sub = BSubstitution::at(prec);
    let b2 = Float::with_val(prec, sub.b.square_ref());
    let ratio = (Float::with_val(prec, 1) - &b2) / &b2;
    let mut sum = Float::new(prec);
    for u in 1..t.saturating_sub(1) {
        let term = powi(&ratio, i64::from(u)) / q(prec, &Rational::from(factorial(2 * u - 1)))
            * t_tilde_closed(t, u, ctx)?;
        if u % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// The five parts S₂^{[1..5]}(t) of the split of S₂(t), with
/// q = √(1+α²), P = q + 1, M = q − 1 and w = α²/(1+α²):
///
/// * `[1]` (1/2−t)_t (−1)^t w^{t−1} Σ_{u=1}^{t−2} α^{2u}/(2u)! (−1)^u(−t)_u/(t+u)!
///   · (−2(t−u)u(t+u)/((t−1)t(2t−1)) + (t−u)w/t)
/// * `[2]` ½ Σ_{u=1}^{t−2} (P M^{2u} − M P^{2u})/(2u)!
/// * `[3]` (1/2−t)_t (−1)^{t+1}/(2·t!) · w^t · Σ_{u=1}^{t−2} (P M^{2u} − M P^{2u})/(2u)!
/// * `[4]` (1/2−t)_t (−1)^{t+1} w^t Σ_{u=1}^{t−2} 1/(2u)!
///   · (P^{2u} Σ_{s=1}^{u} (−t)_s(−1)^s/(t+s)! (M/P)^s + M^{2u} Σ_{s=1}^{u} (−t)_s(−1)^s/(t+s)! (P/M)^s)
/// * `[5]` (q/2) Σ_{u=1}^{t−2} (P^{2u} − M^{2u})/(2u)! · Σ_{s=1}^{t} (1/2−s)_s(−1)^s/((2s−1)s!) w^s
///
/// The weight of part `[3]` is w^t and the outer range of part `[5]` ends at
/// t − 2; with these the five parts sum to S₂(t) exactly.
pub fn s2_split(t: u32, ctx: &PrecisionContext) -> Result<[Float; 5]> {
    if t < 2 {
        return Err(Error::Range(format!("the S2 split needs t >= 2, got {t}")));
    }
    let prec = appendix_prec(t, ctx);
    let p = pi(prec);
    let alpha = Float::with_val(prec, &p / 6u32);
    let a2 = Float::with_val(prec, alpha.square_ref());
    let opa = Float::with_val(prec, &a2 + 1u32);
    let qq = opa.clone().sqrt();
    let big_p = Float::with_val(prec, &qq + 1u32);
    let big_m = Float::with_val(prec, &qq - 1u32);
    let w = Float::with_val(prec, &a2 / &opa);
    let ti = i64::from(t);
    let h = q(prec, &half_t(t));
    let sgn_t: i32 = if t.is_multiple_of(2) { 1 } else { -1 };
    let pw = |x: &Float, e: i64| powi(x, e);
    let fact = |n: u32| q(prec, &Rational::from(factorial(n)));
    let u_top = t.saturating_sub(2);

    let mut part1 = Float::new(prec);
    for u in 1..=u_top {
        let ui = i64::from(u);
        let mut w1 = q(prec, &Rational::from(pochhammer_int(-ti, u))) / fact(t + u);
        if u % 2 == 1 {
            w1 = -w1;
        }
        let r1 = -Float::with_val(prec, 2 * (t - u) * u * (t + u)) / ((t - 1) * t * (2 * t - 1));
        let r2 = Float::with_val(prec, &w * (t - u)) / t;
        part1 += pw(&a2, ui) / fact(2 * u) * w1 * (r1 + r2);
    }
    let part1 = h.clone() * sgn_t * pw(&w, ti - 1) * part1;

    let mut mixed = Float::new(prec);
    for u in 1..=u_top {
        let ui = i64::from(u);
        mixed += (Float::with_val(prec, &big_p * pw(&big_m, 2 * ui))
            - Float::with_val(prec, &big_m * pw(&big_p, 2 * ui)))
            / fact(2 * u);
    }
    let part2 = mixed.clone() / 2u32;
    let part3 = -(h.clone() * sgn_t) / (fact(t) * 2u32) * pw(&w, ti) * mixed;

    let mut part4 = Float::new(prec);
    for u in 1..=u_top {
        let ui = i64::from(u);
        let mut inner_m = Float::new(prec);
        let mut inner_p = Float::new(prec);
        for s in 1..=u {
            let si = i64::from(s);
            let mut c = q(prec, &Rational::from(pochhammer_int(-ti, s))) / fact(t + s);
            if s % 2 == 1 {
                c = -c;
            }
            inner_m += Float::with_val(prec, &c * pw(&(big_m.clone() / &big_p), si));
            inner_p += c * pw(&(big_p.clone() / &big_m), si);
        }
        part4 += (pw(&big_p, 2 * ui) * inner_m + pw(&big_m, 2 * ui) * inner_p) / fact(2 * u);
    }
    let part4 = -(h * sgn_t) * pw(&w, ti) * part4;

    let mut outer = Float::new(prec);
    for u in 1..=u_top {
        let ui = i64::from(u);
        outer += (pw(&big_p, 2 * ui) - pw(&big_m, 2 * ui)) / fact(2 * u);
    }
    let mut series = Float::new(prec);
    for s in 1..=t {
        let si = i64::from(s);
        let mut c = half_pochhammer(si, s) / (Integer::from(2 * s - 1) * factorial(s));
        if s % 2 == 1 {
            c = -c;
        }
        series += q(prec, &c) * pw(&w, si);
    }
    let part5 = qq / 2u32 * outer * series;

    Ok([part1, part2, part3, part4, part5])
}

/// Result of checking the S₂ split at one index.
#[derive(Clone, Debug)]
pub struct S2SplitReport {
    pub t: u32,
    pub parts: [Float; 5],
    pub split_sum: Float,
    pub direct: Float,
    /// |split_sum − direct| and the tolerance it is held to.
    pub identity: (Float, Float),
    /// (t·|S₂^{[1]}|, 0.1), (t·|S₂^{[3]}|, 0.003), (t·|S₂^{[4]}|, 0.2).
    pub envelopes: [(Float, Float); 3],
}

impl S2SplitReport {
    /// Whether the identity and all three envelope claims hold.
    pub fn holds(&self) -> bool {
        self.identity.0 <= self.identity.1 && self.envelopes.iter().all(|(l, r)| l <= r)
    }
}

/// Tolerance 2^{−bits/2}·max(|a|, |b|) for identity comparisons.
pub fn identity_tolerance(a: &Float, b: &Float, ctx: &PrecisionContext) -> Float {
    let scale = if a.clone().abs() > b.clone().abs() { a.clone() } else { b.clone() };
    ctx.margin(&scale)
}

/// Evaluates the split at `t` and compares it with the direct S₂(t).
pub fn s2_split_check(t: u32, ctx: &PrecisionContext) -> Result<S2SplitReport> {
    let parts = s2_split(t, ctx)?;
    let prec = appendix_prec(t, ctx);
    let mut split_sum = Float::new(prec);
    for p in &parts {
        split_sum += p;
    }
    let direct = SumKernels::at(t as usize, prec).s(2, t as usize)?;
    let diff = Float::with_val(prec, &split_sum - &direct).abs();
    let tol = identity_tolerance(&split_sum, &direct, ctx);
    let claim = |idx: usize, num: u32, den: u32| {
        (
            Float::with_val(prec, parts[idx].abs_ref()) * t,
            Float::with_val(prec, &Rational::from((num, den))),
        )
    };
    let envelopes = [claim(0, 1, 10), claim(2, 3, 1000), claim(3, 2, 10)];
    Ok(S2SplitReport {
        t,
        parts,
        split_sum,
        direct,
        identity: (diff, tol),
        envelopes,
    })
}

/// One evaluated instance of an elementary fact.
#[derive(Clone, Debug)]
pub struct FactCase {
    /// `"geometric"`, `"half_pochhammer"` or `"root_series"`.
    pub fact: &'static str,
    pub index: u32,
    pub lhs: Float,
    pub rhs: Float,
    pub holds: bool,
}

/// All fact instances on their stated ranges.
#[derive(Clone, Debug)]
pub struct FactReport {
    pub cases: Vec<FactCase>,
}

impl FactReport {
    pub fn all_hold(&self) -> bool {
        self.cases.iter().all(|c| c.holds)
    }
}

/// Checks the three facts:
///
/// * `geometric`: w^{t−1}/√t ≤ 1/(2t), w = α²/(1+α²), for t ∈ 2..=500;
/// * `half_pochhammer`: (−1)^t (1/2−t)_t = C(2t,t)·t!/4^t exactly, t ∈ 0..=60;
/// * `root_series`: with x = w, the partial sums P_M of
///   Σ_{m≥1} C(2m,m)/(2m−1)(x/4)^m stay below 1 − √(1−x) and the gap is at
///   most the tail bound x^{M+1}/((2M+1)(1−x)), M ∈ 1..=200.
pub fn fact_checks(ctx: &PrecisionContext) -> Result<FactReport> {
    let prec = ctx.prec();
    let p = pi(prec);
    let a2 = Float::with_val(prec, &p / 6u32).square();
    let w = Float::with_val(prec, &a2 / Float::with_val(prec, &a2 + 1u32));
    let mut cases = Vec::new();

    for t in 2..=500u32 {
        let lhs = powi(&w, i64::from(t) - 1) / Float::with_val(prec, t).sqrt();
        let rhs = Float::with_val(prec, 1) / (2 * t);
        let holds = lhs <= rhs;
        cases.push(FactCase {
            fact: "geometric",
            index: t,
            lhs,
            rhs,
            holds,
        });
    }

    for t in 0..=60u32 {
        let mut l = half_t(t);
        if t % 2 == 1 {
            l = -l;
        }
        let r = Rational::from((binomial(2 * t, t) * factorial(t), Integer::from(4u32).pow(t)));
        let holds = l == r;
        cases.push(FactCase {
            fact: "half_pochhammer",
            index: t,
            lhs: q(prec, &l),
            rhs: q(prec, &r),
            holds,
        });
    }

    // The tail at M = 200 is about 10^-134; carry enough bits to resolve it.
    let prec = prec + 640;
    let a2 = Float::with_val(prec, pi(prec) / 6u32).square();
    let w = Float::with_val(prec, &a2 / Float::with_val(prec, &a2 + 1u32));
    let analytic = Float::with_val(prec, 1) - (Float::with_val(prec, 1) - &w).sqrt();
    let quarter = Float::with_val(prec, &w / 4u32);
    let mut partial = Float::new(prec);
    for m in 1..=200u32 {
        let c = Rational::from((binomial(2 * m, m), 2 * m - 1));
        partial += q(prec, &c) * powi(&quarter, i64::from(m));
        let gap = Float::with_val(prec, &analytic - &partial);
        let tail = powi(&w, i64::from(m) + 1)
            / ((Float::with_val(prec, 1) - &w) * (2 * m + 1));
        let holds = gap >= 0 && gap <= tail;
        cases.push(FactCase {
            fact: "root_series",
            index: m,
            lhs: gap,
            rhs: tail,
            holds,
        });
    }
    Ok(FactReport { cases })
}

