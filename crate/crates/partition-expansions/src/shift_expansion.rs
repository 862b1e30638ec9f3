//! Expansion of p(n+k) relative to e^{π√(2n/3)}/(4n√3): coefficients
//! ω_k(t), their envelopes, the explicit error constants, the cutoff and the
//! bounded evaluation.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::numerics::{
    binomial, ceil_sqrt, ceil_to_u64, factorial, g_hat, mu, pi, powi, HPReal, PrecisionContext,
};
use crate::quotient_expansion::{BoundedApprox, ExpansionTable};

/// Constants attached to a shift `k`.
#[derive(Clone, Debug)]
pub struct ShiftConstants {
    pub k: u64,
    /// α_k = (π/6)√(24k − 1).
    pub alpha_k: HPReal,
    pub c1: HPReal,
    pub c2: HPReal,
    pub c1_star: HPReal,
    pub c2_star: HPReal,
    pub ce: HPReal,
    pub co: HPReal,
}

/// Error constants and cutoff for truncation order `N`.
#[derive(Clone, Debug)]
pub struct ShiftErrorBudget {
    pub k: u64,
    pub n_trunc: u64,
    pub e_n1_e: HPReal,
    pub e_n1_o: HPReal,
    /// Sum of the even and odd tail constants.
    pub e_n1: HPReal,
    /// `e_n1` plus the Lehmer-term contribution (1 + 3.7k/N)(6/(π√24))^{N+1}.
    pub e_n_total: HPReal,
    /// ⌈max{ĝ(N+1), (24k−1)²}⌉; the bound applies for n strictly above it.
    pub cutoff_n: u64,
}

fn require_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("shift requires k >= 1".into()));
    }
    Ok(())
}

/// ω_k(t) = ((24k−1)/(4√6))^t Σ_{ℓ=0}^{⌊(t+1)/2⌋} C(t+1,ℓ)(t+1−ℓ)/(t+1−2ℓ)!
/// · (−1)^ℓ (π/6)^{t−2ℓ} (24k−1)^{−ℓ}.
pub fn omega1(k: u64, t: u32, ctx: &PrecisionContext) -> Result<HPReal> {
    require_k(k)?;
    let prec = ctx.prec();
    let alpha = pi(prec) / 6u32;
    let d = Integer::from(24 * k - 1);
    let mut sum = Float::new(prec);
    for l in 0..=t.div_ceil(2) {
        let mut q = Rational::from((
            binomial(t + 1, l) * (t + 1 - l),
            factorial(t + 1 - 2 * l) * Integer::from((&d).pow(l)),
        ));
        if l % 2 == 1 {
            q = -q;
        }
        let term = Float::with_val(prec, &q) * powi(&alpha, i64::from(t) - 2 * i64::from(l));
        sum += term;
    }
    let six = Float::with_val(prec, 6u32);
    let base = Float::with_val(prec, &d) / (six.sqrt() * 4u32);
    Ok(powi(&base, i64::from(t)) * sum)
}

/// All constants for shift `k`, with ⌈√k⌉ from an exact integer root.
pub fn shift_constants(k: u64, ctx: &PrecisionContext) -> Result<ShiftConstants> {
    require_k(k)?;
    let prec = ctx.prec();
    let alpha_k = mu(k, ctx)?;
    let r = ceil_sqrt(k);
    let r32 = u32::try_from(r).map_err(|_| Error::Range("k too large".into()))?;
    let sq = Integer::from(3 * r + 1).square();
    let kk = Integer::from(k);

    // C1 = 3k(3r+1)² α_k^{6r+4} / (2r (6r+4)!)
    let c1 = Float::with_val(
        prec,
        &Rational::from((Integer::from(3u32 * &kk) * &sq, factorial(6 * r32 + 4) * (2 * r))),
    ) * powi(&alpha_k, i64::from(6 * r32 + 4));
    // C2 = 9k(3r+1)² α_k^{6r+3} / ((6r+1)(6r+3)!)
    let c2 = Float::with_val(
        prec,
        &Rational::from((Integer::from(9u32 * &kk) * &sq, factorial(6 * r32 + 3) * (6 * r + 1))),
    ) * powi(&alpha_k, i64::from(6 * r32 + 3));

    let a2 = Float::with_val(prec, alpha_k.square_ref());
    let cosh = Float::with_val(prec, alpha_k.cosh_ref());
    let sinh = Float::with_val(prec, alpha_k.sinh_ref());
    let cos_abs = Float::with_val(prec, alpha_k.cos_ref()).abs();
    let sin_abs = Float::with_val(prec, alpha_k.sin_ref()).abs();

    // C1* = (α_k²(cosh α_k − 1) + 4C1) / (4|cos α_k|)
    let c1_star = (Float::with_val(prec, &a2 * (cosh - 1u32)) + Float::with_val(prec, &c1 * 4u32))
        / (cos_abs * 4u32);
    // C2* = ½(1 + 3(α_k² sinh α_k + 4C2) / (4|sin α_k|))
    let inner = (Float::with_val(prec, &a2 * &sinh) + Float::with_val(prec, &c2 * 4u32)) * 3u32
        / (sin_abs * 4u32);
    let c2_star = (inner + 1u32) / 2u32;

    let d = Float::with_val(prec, 24 * k - 1);
    // Ce = 2C2* + (24k−1)(1 + C2*)/6
    let ce = Float::with_val(prec, &c2_star * 2u32)
        + Float::with_val(prec, &d * Float::with_val(prec, &c2_star + 1u32)) / 6u32;
    // Co = 2C1* + (24k−1)(1 + 2C1*)/6
    let co = Float::with_val(prec, &c1_star * 2u32)
        + Float::with_val(prec, &d * (Float::with_val(prec, &c1_star * 2u32) + 1u32)) / 6u32;

    Ok(ShiftConstants {
        k,
        alpha_k,
        c1,
        c2,
        c1_star,
        c2_star,
        ce,
        co,
    })
}

fn require_t(t: u32) -> Result<()> {
    if t == 0 {
        return Err(Error::Domain("envelopes are defined for t >= 1".into()));
    }
    Ok(())
}

/// Bound for |ω_k(2t+1)|:
/// ((24k−1)/24)^t √(6/π³) √(t+1) |cos α_k| (1 + C1*/t).
pub fn omega_odd_envelope(k: u64, t: u32, ctx: &PrecisionContext) -> Result<HPReal> {
    require_t(t)?;
    let c = shift_constants(k, ctx)?;
    odd_envelope_with(&c, t, ctx.prec())
}

/// Bound for |ω_k(2t)|:
/// ((24k−1)/24)^t (2√t/(√π α_k)) |sin α_k| (1 + C2*/t).
pub fn omega_even_envelope(k: u64, t: u32, ctx: &PrecisionContext) -> Result<HPReal> {
    require_t(t)?;
    let c = shift_constants(k, ctx)?;
    even_envelope_with(&c, t, ctx.prec())
}

pub(crate) fn odd_envelope_with(c: &ShiftConstants, t: u32, prec: u32) -> Result<HPReal> {
    require_t(t)?;
    let p = pi(prec);
    let growth = powi(&(Float::with_val(prec, 24 * c.k - 1) / 24u32), i64::from(t));
    let root = (Float::with_val(prec, 6u32) / p.clone().pow(3u32)).sqrt();
    let cos_abs = Float::with_val(prec, c.alpha_k.cos_ref()).abs();
    let corr = Float::with_val(prec, &c.c1_star / t) + 1u32;
    Ok(growth * root * Float::with_val(prec, t + 1).sqrt() * cos_abs * corr)
}

pub(crate) fn even_envelope_with(c: &ShiftConstants, t: u32, prec: u32) -> Result<HPReal> {
    require_t(t)?;
    let p = pi(prec);
    let growth = powi(&(Float::with_val(prec, 24 * c.k - 1) / 24u32), i64::from(t));
    let front = Float::with_val(prec, t).sqrt() * 2u32 / (p.sqrt() * &c.alpha_k);
    let sin_abs = Float::with_val(prec, c.alpha_k.sin_ref()).abs();
    let corr = Float::with_val(prec, &c.c2_star / t) + 1u32;
    Ok(growth * front * sin_abs * corr)
}

/// ⌈max{ĝ(N+1), (24k−1)²}⌉.
pub fn shift_cutoff(k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<u64> {
    require_k(k)?;
    let gh = ceil_to_u64(&g_hat(n_trunc + 1, ctx)?)?;
    let sq = (24 * k - 1) * (24 * k - 1);
    Ok(gh.max(sq))
}

/// Error constants E_{N,1,e}, E_{N,1,o}, their sum, the total E^{[1]}_N(k)
/// and the cutoff.
pub fn shift_error_budget(k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<ShiftErrorBudget> {
    require_k(k)?;
    if n_trunc == 0 {
        return Err(Error::Domain("truncation order N must be >= 1".into()));
    }
    let prec = ctx.prec();
    let c = shift_constants(k, ctx)?;
    let p = pi(prec);
    let nf = Float::with_val(prec, n_trunc);
    let ratio = Float::with_val(prec, 24 * k - 1) / 24u32;

    // E_{N,1,e} = √2|sin α_k|/(√π α_k) · ((24k−1)/24)^{(N+1)/2} √(N+1) (1 + Ce/N)
    let sin_abs = Float::with_val(prec, c.alpha_k.sin_ref()).abs();
    let half_up = Float::with_val(prec, n_trunc + 1) / 2u32;
    let e = Float::with_val(prec, 2u32).sqrt() * sin_abs / (p.clone().sqrt() * &c.alpha_k)
        * ratio.clone().pow(&half_up)
        * Float::with_val(prec, n_trunc + 1).sqrt()
        * (Float::with_val(prec, &c.ce / &nf) + 1u32);

    // E_{N,1,o} = √(3/π³)|cos α_k| · ((24k−1)/24)^{N/2} √(N+2) (1 + Co/N)
    let cos_abs = Float::with_val(prec, c.alpha_k.cos_ref()).abs();
    let half = Float::with_val(prec, n_trunc) / 2u32;
    let o = (Float::with_val(prec, 3u32) / p.clone().pow(3u32)).sqrt()
        * cos_abs
        * ratio.pow(&half)
        * Float::with_val(prec, n_trunc + 2).sqrt()
        * (Float::with_val(prec, &c.co / &nf) + 1u32);

    let e_n1 = Float::with_val(prec, &e + &o);
    // (1 + 3.7k/N)(6/(π√24))^{N+1}
    let lehmer_factor = Float::with_val(prec, &Rational::from((37 * k, 10 * n_trunc))) + 1u32;
    let base = Float::with_val(prec, 6u32) / (p * Float::with_val(prec, 24u32).sqrt());
    let lehmer = lehmer_factor * powi(&base, n_trunc as i64 + 1);
    let e_n_total = Float::with_val(prec, &e_n1 + &lehmer);

    Ok(ShiftErrorBudget {
        k,
        n_trunc,
        e_n1_e: e,
        e_n1_o: o,
        e_n1,
        e_n_total,
        cutoff_n: shift_cutoff(k, n_trunc, ctx)?,
    })
}

/// Bounded evaluation of p(n+k) relative to e^{π√(2n/3)}/(4n√3); requires
/// n strictly above the cutoff.
pub fn approx_p_shift(n: u64, k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<BoundedApprox> {
    ExpansionTable::shift(k, n_trunc, ctx)?.evaluate(n)
}
