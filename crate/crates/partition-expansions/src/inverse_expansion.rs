//! Expansion of 1/p(n) relative to 4n√3·e^{−π√(2n/3)}: the auxiliary sums
//! S₁…S₉, the coefficients g(t) (closed forms and Cauchy-product route), the
//! coefficient envelopes, the error budget, the bounded evaluation and the
//! Lehmer-style band for p(n).
//!
//! Every sum is evaluated term by term with exact rational weights
//! (Pochhammer symbols, factorials, generalized binomials); powers of
//! α = π/6 are applied last.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::exact_partition::ExactPartitionTable;
use crate::numerics::{
    binomial, binomial_rational, ceil_to_u64, factorial, g_hat, half_pochhammer, mu_at, pi,
    pochhammer_int, pochhammer_rational, powi, HPReal, PrecisionContext,
};
use crate::quotient_expansion::{BoundedApprox, ExpansionTable};

/// The published constants c₁…c₉ of the relative-error envelopes
/// |S_j(t)/L_j(t) − 1| ≤ c_j/t, as exact rationals (numerator, denominator).
pub const SUM_ENVELOPE_CONSTANTS: [(u32, u32); 9] = [
    (26, 10),
    (549, 10),
    (153, 10),
    (67, 10),
    (12, 10),
    (2, 10),
    (14, 1),
    (9, 1),
    (77, 10),
];

/// Precomputed inner kernels for the sums S₁…S₉ up to a maximal index.
///
/// * `A(s) = Σ_{u=1}^{s} (−1)^u (−s)_u / ((s+u)!(2u−1)!) α^{2u}`
/// * `B(s) = Σ_{u=0}^{s} (−1)^u (−s)_u / ((s+u+1)!(2u)!) α^{2u}`
/// * `Cr(m) = Σ_{r=0}^{m} (−1/α²)^r C(−(2r+1)/2, m−r)`
/// * `H(s) = (1/2 − s)_{s+1}`
#[derive(Clone, Debug)]
pub struct SumKernels {
    prec: u32,
    t_max: usize,
    pi: Float,
    alpha2: Float,
    alpha_pow2: Vec<Float>,
    a: Vec<Float>,
    b: Vec<Float>,
    cr: Vec<Float>,
    h: Vec<Rational>,
}

impl SumKernels {
    /// Kernels sufficient to evaluate S_j(t) and g(2t), g(2t+1) for all
    /// t ≤ `t_max`.
    pub fn new(t_max: usize, ctx: &PrecisionContext) -> Self {
        // Extra headroom grows with t: the coefficient identities subtract
        // quantities of size up to ((1+α²)/α²)^t.
        let prec = ctx.prec() + 4 * t_max as u32;
        Self::at(t_max, prec)
    }

    /// Kernels at an explicit internal precision.
    pub fn at(t_max: usize, prec: u32) -> Self {
        let top = t_max + 2;
        let pi = pi(prec);
        let alpha = Float::with_val(prec, &pi / 6u32);
        let alpha2 = Float::with_val(prec, alpha.square_ref());
        let mut alpha_pow2 = Vec::with_capacity(2 * top + 2);
        let mut acc = Float::with_val(prec, 1);
        for _ in 0..=2 * top + 1 {
            alpha_pow2.push(acc.clone());
            acc *= &alpha2;
        }
        let neg_inv_alpha2 = Float::with_val(prec, -1) / &alpha2;

        let a = (0..=top)
            .map(|s| {
                let mut sum = Float::new(prec);
                for u in 1..=s {
                    let q = Rational::from((
                        signed(pochhammer_int(-(s as i64), u as u32), u),
                        factorial((s + u) as u32) * factorial((2 * u - 1) as u32),
                    ));
                    sum += Float::with_val(prec, &q) * &alpha_pow2[u];
                }
                sum
            })
            .collect();
        let b = (0..=top)
            .map(|s| {
                let mut sum = Float::new(prec);
                for u in 0..=s {
                    let q = Rational::from((
                        signed(pochhammer_int(-(s as i64), u as u32), u),
                        factorial((s + u + 1) as u32) * factorial((2 * u) as u32),
                    ));
                    sum += Float::with_val(prec, &q) * &alpha_pow2[u];
                }
                sum
            })
            .collect();
        let cr = (0..=top)
            .map(|m| {
                let mut sum = Float::new(prec);
                let mut w = Float::with_val(prec, 1);
                for r in 0..=m {
                    let q = binomial_rational(&Rational::from((-(2 * r as i64 + 1), 2)), (m - r) as i64);
                    sum += Float::with_val(prec, &q) * &w;
                    w *= &neg_inv_alpha2;
                }
                sum
            })
            .collect();
        let h = (0..=top).map(|s| half_pochhammer(s as i64, s as u32 + 1)).collect();
        Self {
            prec,
            t_max,
            pi,
            alpha2,
            alpha_pow2,
            a,
            b,
            cr,
            h,
        }
    }

    /// Internal precision in bits.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Largest supported index.
    pub fn t_max(&self) -> usize {
        self.t_max
    }

    fn f(&self, q: &Rational) -> Float {
        Float::with_val(self.prec, q)
    }

    fn one(&self) -> Float {
        Float::with_val(self.prec, 1)
    }

    /// 1 + α².
    fn one_plus_a2(&self) -> Float {
        Float::with_val(self.prec, &self.alpha2 + 1u32)
    }

    /// 1 + α⁻².
    fn one_plus_inv_a2(&self) -> Float {
        Float::with_val(self.prec, 1u32 / &self.alpha2) + 1u32
    }

    fn check(&self, t: usize) -> Result<()> {
        if t > self.t_max + 1 {
            return Err(Error::Range(format!(
                "index {t} exceeds the precomputed range {}",
                self.t_max + 1
            )));
        }
        Ok(())
    }

    /// S_j(t) for j ∈ 1..=9; empty sums are zero.
    pub fn s(&self, j: u8, t: usize) -> Result<Float> {
        self.check(t)?;
        let ti = t as i64;
        let prec = self.prec;
        let zero = Float::new(prec);
        Ok(match j {
            1 => {
                if t == 0 {
                    return Err(Error::Domain("S_1 is defined for t >= 1".into()));
                }
                // (−1/24)^t (1/2−t)_{t+1}/t · A(t)
                let w = self.f(&(self.h[t].clone() / ti));
                powi(&(Float::with_val(prec, -1) / 24u32), ti) * w * &self.a[t]
            }
            2 => {
                // Σ_{s=1}^{t−2} (−(1+α⁻²))^{−s} (1/2−s)_{s+1}/s · A(s)
                let base = -self.one_plus_inv_a2();
                let mut sum = zero;
                for s in 1..t.saturating_sub(1) {
                    sum += powi(&base, -(s as i64)) * self.f(&(self.h[s].clone() / s as i64)) * &self.a[s];
                }
                sum
            }
            3 => {
                // (−1)^{t−1} Σ_{s=0}^{t−2} (1/2−s)_{s+1} B(s) Cr(t−s−1)
                let mut sum = zero;
                for s in 0..t.saturating_sub(1) {
                    sum += self.f(&self.h[s]) * &self.b[s] * &self.cr[t - s - 1];
                }
                sign(ti - 1) * sum
            }
            4 => {
                // Σ_{s=0}^{t−2} (−1)^s (1/2−s)_{s+1}/(4^{t−s}(2t−2s−3)) C(2t−2s−3, t−s−1) B(s)
                let mut sum = zero;
                for s in 0..t.saturating_sub(1) {
                    let d = t - s;
                    let q = self.h[s].clone() * binomial((2 * d - 3) as u32, (d - 1) as u32)
                        / (Integer::from(4u32).pow(d as u32) * (2 * d - 3) as u64);
                    sum += sign(s as i64) * self.f(&q) * &self.b[s];
                }
                sum
            }
            5 => self.s5(t),
            6 => sign(ti) * self.cr[t].clone(),
            7 => {
                // (−1)^t Σ_{s=1}^{t−1} (1/2−s)_{s+1}/s · A(s) Cr(t−s)
                let mut sum = zero;
                for s in 1..t {
                    sum += self.f(&(self.h[s].clone() / s as i64)) * &self.a[s] * &self.cr[t - s];
                }
                sign(ti) * sum
            }
            8 => {
                // Σ_{s=1}^{t−1} (−1)^s (1/2−s)_{s+1} C(2t−2s−1, t−s)/(s 4^{t−s}(2t−2s−1)) · A(s)
                let mut sum = zero;
                for s in 1..t {
                    let d = t - s;
                    let q = self.h[s].clone() * binomial((2 * d - 1) as u32, d as u32)
                        / (Integer::from(4u32).pow(d as u32) * (s * (2 * d - 1)) as u64);
                    sum += sign(s as i64) * self.f(&q) * &self.a[s];
                }
                sum
            }
            9 => {
                // Σ_{s=0}^{t−2} (−1/(1+α⁻²))^s (1/2−s)_{s+1} B(s)
                let base = Float::with_val(prec, -1) / self.one_plus_inv_a2();
                let mut sum = zero;
                for s in 0..t.saturating_sub(1) {
                    sum += powi(&base, s as i64) * self.f(&self.h[s]) * &self.b[s];
                }
                sum
            }
            _ => return Err(Error::Domain(format!("S_j is defined for j in 1..=9, got {j}"))),
        })
    }

    /// S₅(t) = (−1)^{t−1} (3/2−t)_t Σ_{u=0}^{t−1} (−1)^u (−t+1)_u/((t+u)!(2u)!) α^{2u}.
    fn s5(&self, t: usize) -> Float {
        let mut sum = Float::new(self.prec);
        for u in 0..t {
            let q = Rational::from((
                signed(pochhammer_int(1 - t as i64, u as u32), u),
                factorial((t + u) as u32) * factorial((2 * u) as u32),
            ));
            sum += self.f(&q) * &self.alpha_pow2[u];
        }
        let front = pochhammer_rational(&(Rational::from((3, 2)) - t as i64), t as u32);
        sign(t as i64 - 1) * self.f(&front) * sum
    }

    /// The four families (g_e1, g_e2, g_o1, g_o2) at index t, including the
    /// small-t branches.
    pub fn g_parts(&self, t: usize) -> Result<GParts> {
        self.check(t + 1)?;
        let prec = self.prec;
        let pi = &self.pi;
        let pi2 = Float::with_val(prec, pi.square_ref());
        let pi4 = Float::with_val(prec, pi2.square_ref());
        let sqrt6 = Float::with_val(prec, 6u32).sqrt();
        let a2 = &self.alpha2;
        let opa = self.one_plus_a2();
        let opi = self.one_plus_inv_a2();
        let ti = t as i64;
        let inv24 = Float::with_val(prec, 1) / 24u32;

        let g_e1 = match t {
            0 => self.one(),
            1 => (Float::with_val(prec, &pi4 - Float::with_val(prec, &pi2 * 288u32)) + 10368u32)
                / Float::with_val(prec, &pi2 * 6912u32),
            _ => {
                let s1 = self.s(1, t)?;
                let s1m = self.s(1, t - 1)?;
                let s2 = self.s(2, t)?;
                let c_mid = (Float::with_val(prec, 1) - a2) * 3u32 / Float::with_val(prec, &pi2 * 2u32);
                let c_tail = Float::with_val(prec, 3u32) / (Float::with_val(prec, &pi2 * 2u32) * &opa);
                let geom = powi(&Float::with_val(prec, &opi / 24u32), ti - 1);
                s1 + c_mid * s1m + c_tail * geom * (s2 + 1u32)
            }
        };

        // g_e2(t) = 24^{−t} (S3/(1+α²) − 8/(1+α⁻²)·S4 + S5)
        let g_e2 = {
            let s3 = self.s(3, t)?;
            let s4 = self.s(4, t)?;
            let s5 = self.s(5, t)?;
            let inner = s3 / &opa - Float::with_val(prec, 8u32) / &opi * s4 + s5;
            powi(&inv24, ti) * inner
        };

        let g_o1 = match t {
            0 => Float::with_val(prec, &sqrt6 / Float::with_val(prec, pi * 2u32)),
            1 => (Float::with_val(prec, &pi4 - Float::with_val(prec, &pi2 * 144u32)) + 10368u32)
                / (Float::with_val(prec, &sqrt6 * 2304u32) * Float::with_val(prec, pi.pow(3u32))),
            _ => {
                let s1 = self.s(1, t)?;
                let s6 = self.s(6, t)?;
                let s7 = self.s(7, t)?;
                let s8 = self.s(8, t)?;
                let front = Float::with_val(prec, &sqrt6 / Float::with_val(prec, pi * 2u32));
                let second = powi(&inv24, ti) / &opa * (s6 + s7);
                let cat = self.f(&Rational::from((binomial(2 * t as u32 - 1, t as u32), 2 * t as u64 - 1)));
                let third = Float::with_val(prec, 2u32) / (opi.clone() * powi(&Float::with_val(prec, 96u32), ti)) * cat;
                let fourth = Float::with_val(prec, a2 * 2u32) / (opa.clone() * powi(&Float::with_val(prec, 24u32), ti)) * s8;
                front * (s1 + second - third - fourth)
            }
        };

        let g_o2 = match t {
            0 => Float::with_val(prec, pi / Float::with_val(prec, &sqrt6 * 24u32)),
            _ => {
                let s9 = self.s(9, t)?;
                let s5 = self.s(5, t)?;
                let s5n = self.s(5, t + 1)?;
                let front = Float::with_val(prec, pi / Float::with_val(prec, &sqrt6 * 12u32)) * powi(&inv24, ti);
                let first = powi(&opi, ti) / Float::with_val(prec, opa.square_ref()) * s9;
                let second = (Float::with_val(prec, 1) - a2) / a2 * s5;
                front * (first + second + s5n)
            }
        };

        Ok(GParts {
            g_e1,
            g_e2,
            g_o1,
            g_o2,
        })
    }

    /// g(t): g_e(t/2) for even t and g_o((t−1)/2) for odd t.
    pub fn g(&self, t: usize) -> Result<Float> {
        let parts = self.g_parts(t / 2)?;
        Ok(if t.is_multiple_of(2) {
            parts.g_e1 + parts.g_e2
        } else {
            parts.g_o1 + parts.g_o2
        })
    }

    /// Even coefficients of the first factor: E1(0) = 1, E1(t) = S₁(t).
    pub fn e1(&self, t: usize) -> Result<Float> {
        if t == 0 {
            Ok(self.one())
        } else {
            self.s(1, t)
        }
    }

    /// Odd coefficients of the first factor:
    /// O1(t) = (π/(12√6)) (−1)^t (1/2−t)_{t+1}/24^t · B(t).
    pub fn o1(&self, t: usize) -> Result<Float> {
        self.check(t)?;
        let prec = self.prec;
        let front = Float::with_val(prec, &self.pi / (Float::with_val(prec, 6u32).sqrt() * 12u32));
        let w = self.f(&self.h[t]) / powi(&Float::with_val(prec, 24u32), t as i64);
        Ok(front * sign(t as i64) * w * &self.b[t])
    }

    /// e2(0) = 1, e2(t) = 36/(π²+36) ((1+α⁻²)/24)^t.
    pub fn e2(&self, t: usize) -> Float {
        if t == 0 {
            return self.one();
        }
        let prec = self.prec;
        let pi2 = Float::with_val(prec, self.pi.square_ref());
        Float::with_val(prec, 36u32) / (pi2 + 36u32)
            * powi(&(self.one_plus_inv_a2() / 24u32), t as i64)
    }

    /// o2(t) = (6/(π√24)) (−1/24)^t Σ_{m=0}^{t} (−α⁻²)^m C(−(2m+1)/2, t−m).
    pub fn o2(&self, t: usize) -> Float {
        let prec = self.prec;
        let base = Float::with_val(prec, -1) / &self.alpha2;
        let mut sum = Float::new(prec);
        for m in 0..=t {
            let q = binomial_rational(&Rational::from((-(2 * m as i64 + 1), 2)), (t - m) as i64);
            sum += powi(&base, m as i64) * self.f(&q);
        }
        let front = Float::with_val(prec, 6u32) / (self.pi.clone() * Float::with_val(prec, 24u32).sqrt());
        front * powi(&(Float::with_val(prec, -1) / 24u32), t as i64) * sum
    }

    /// Even coefficients of the second factor (with the small-t branches).
    pub fn e2_big(&self, t: usize) -> Float {
        let prec = self.prec;
        let pi2 = Float::with_val(prec, self.pi.square_ref());
        match t {
            0 => self.one(),
            1 => (Float::with_val(prec, 36u32) - &pi2) / (pi2 * 24u32),
            _ => {
                let pi4 = Float::with_val(prec, pi2.square_ref());
                let opi = self.one_plus_inv_a2();
                Float::with_val(prec, 54u32) / (pi4 * &opi) * powi(&(opi / 24u32), t as i64 - 1)
            }
        }
    }

    /// Odd coefficients of the second factor: O2(0) = o2(0),
    /// O2(t) = o2(t) − o2(t−1)/24.
    pub fn o2_big(&self, t: usize) -> Float {
        if t == 0 {
            self.o2(0)
        } else {
            self.o2(t) - self.o2(t - 1) / 24u32
        }
    }

    /// g(t) from the Cauchy product of the two factor expansions.
    pub fn g_convolution(&self, t: usize) -> Result<Float> {
        let h = t / 2;
        let mut sum = Float::new(self.prec);
        if t.is_multiple_of(2) {
            for i in 0..=h {
                sum += self.e1(i)? * self.e2_big(h - i);
            }
            for i in 0..h {
                sum += self.o1(i)? * self.o2_big(h - 1 - i);
            }
        } else {
            for i in 0..=h {
                sum += self.e1(i)? * self.o2_big(h - i);
                sum += self.o1(i)? * self.e2_big(h - i);
            }
        }
        Ok(sum)
    }

    /// Leading term L_j(t) of S_j(t) (t ≥ 1).
    pub fn leading_term(&self, j: u8, t: usize) -> Result<Float> {
        if t == 0 {
            return Err(Error::Domain("leading terms are defined for t >= 1".into()));
        }
        let prec = self.prec;
        let alpha = Float::with_val(prec, &self.pi / 6u32);
        let a2 = &self.alpha2;
        let opa = self.one_plus_a2();
        let q = opa.clone().sqrt();
        let qm1 = Float::with_val(prec, &q - 1u32);
        let sqrt_pi = self.pi.clone().sqrt();
        let t_f = Float::with_val(prec, t);
        let t32 = Float::with_val(prec, (&t_f).pow(Float::with_val(prec, 3) / 2u32));
        let growth = powi(&(opa.clone() / a2), t as i64);
        let sinh_a = Float::with_val(prec, alpha.sinh_ref());
        let cosh_a = Float::with_val(prec, alpha.cosh_ref());
        let sinh_q = Float::with_val(prec, qm1.sinh_ref());
        let cosh_q = Float::with_val(prec, qm1.cosh_ref());
        Ok(match j {
            1 => Float::with_val(prec, &alpha * &sinh_a) / (sqrt_pi * 2u32)
                / (powi(&Float::with_val(prec, 24u32), t as i64) * t32),
            2 => cosh_q - 1u32,
            3 => sinh_q / &opa * growth,
            4 => (Float::with_val(prec, &alpha * &cosh_a) + &sinh_a) / (sqrt_pi * 16u32 * &alpha) / t32,
            5 => cosh_a / (sqrt_pi * 2u32 * t32),
            6 => growth / &q,
            7 => (cosh_q - 1u32) / &q * growth,
            8 => (Float::with_val(prec, &alpha * &sinh_a) + cosh_a - 1u32) / (sqrt_pi * 4u32 * t32),
            9 => Float::with_val(prec, &q * &sinh_q) / a2,
            _ => return Err(Error::Domain(format!("leading terms exist for j in 1..=9, got {j}"))),
        })
    }

    /// Relative deviation t·|S_j(t)/L_j(t) − 1| and the published constant c_j.
    pub fn sum_envelope_sides(&self, j: u8, t: usize) -> Result<(Float, Float)> {
        if !(1..=9).contains(&j) {
            return Err(Error::Domain(format!("j must be in 1..=9, got {j}")));
        }
        if t < 2 {
            return Err(Error::Domain("the S_j envelopes are stated for t >= 2".into()));
        }
        let s = self.s(j, t)?;
        let l = self.leading_term(j, t)?;
        let dev = (s / l - 1u32).abs() * t as u32;
        let (num, den) = SUM_ENVELOPE_CONSTANTS[usize::from(j) - 1];
        Ok((dev, self.f(&Rational::from((num, den)))))
    }

    /// (even, odd) envelopes for |g(2t)| and |g(2t+1)|:
    /// C₁(α)ρ^{t−1}(1 + 3.5/t) and C₂(α)ρ^t(1 + 0.5/t), ρ = (1+α²)/(24α²).
    pub fn g_envelopes(&self, t: usize) -> Result<(Float, Float)> {
        if t == 0 {
            return Err(Error::Domain("g envelopes are defined for t >= 1".into()));
        }
        let prec = self.prec;
        let opa = self.one_plus_a2();
        let q = opa.clone().sqrt();
        let qm1 = Float::with_val(prec, &q - 1u32);
        let e = Float::with_val(prec, qm1.cosh_ref()) + Float::with_val(prec, qm1.sinh_ref());
        let pi2 = Float::with_val(prec, self.pi.square_ref());
        let rho = Float::with_val(prec, &opa / Float::with_val(prec, &self.alpha2 * 24u32));
        let c1 = Float::with_val(prec, &e * 3u32) / (pi2 * 2u32 * &opa);
        let opa32 = Float::with_val(prec, &opa * &q);
        let c2 = (Float::with_val(prec, 3) / 2u32).sqrt() / &self.pi * e / opa32;
        let tf = Float::with_val(prec, t);
        let even = c1 * powi(&rho, t as i64 - 1) * (Float::with_val(prec, 7) / (tf.clone() * 2u32) + 1u32);
        let odd = c2 * powi(&rho, t as i64) * (Float::with_val(prec, 1) / (tf * 2u32) + 1u32);
        Ok((even, odd))
    }
}

/// (−1)^e as a float-multiplicable sign.
fn sign(e: i64) -> i32 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn signed(x: Integer, u: usize) -> Integer {
    if u.is_multiple_of(2) {
        x
    } else {
        -x
    }
}

/// The four coefficient families at a common index.
#[derive(Clone, Debug)]
pub struct GParts {
    pub g_e1: HPReal,
    pub g_e2: HPReal,
    pub g_o1: HPReal,
    pub g_o2: HPReal,
}

/// Error constants of the inverse expansion for truncation order `N`.
#[derive(Clone, Debug)]
pub struct InverseErrorBudget {
    pub n_trunc: u64,
    /// (6/(π√24))^{N+1}(1 + 4/N).
    pub e2_n2: HPReal,
    /// C₁(α)ρ^{(N−1)/2}(1 + 8/N).
    pub e2_ne: HPReal,
    /// C₂(α)ρ^{N/2}(1 + 3/N).
    pub e2_no: HPReal,
    /// Sum of the three.
    pub e2_n: HPReal,
}

/// S_j(t) by direct summation.
pub fn s_j(j: u8, t: usize, ctx: &PrecisionContext) -> Result<HPReal> {
    SumKernels::new(t, ctx).s(j, t)
}

/// (g_e1, g_e2, g_o1, g_o2) at index t.
pub fn g_parts(t: usize, ctx: &PrecisionContext) -> Result<GParts> {
    SumKernels::new(t + 1, ctx).g_parts(t)
}

/// g(t) from the closed forms.
pub fn g(t: usize, ctx: &PrecisionContext) -> Result<HPReal> {
    SumKernels::new(t / 2 + 1, ctx).g(t)
}

/// g(t) from the Cauchy product of the factor expansions.
pub fn g_convolution(t: usize, ctx: &PrecisionContext) -> Result<HPReal> {
    SumKernels::new(t / 2 + 1, ctx).g_convolution(t)
}

/// (even, odd) envelopes bounding |g(2t)| and |g(2t+1)|.
pub fn g_envelopes(t: usize, ctx: &PrecisionContext) -> Result<(HPReal, HPReal)> {
    SumKernels::new(1, ctx).g_envelopes(t)
}

/// Error budget of the inverse expansion.
pub fn inverse_error_budget(n_trunc: u64, ctx: &PrecisionContext) -> Result<InverseErrorBudget> {
    if n_trunc == 0 {
        return Err(Error::Domain("truncation order N must be >= 1".into()));
    }
    let prec = ctx.prec();
    let p = pi(prec);
    let nf = Float::with_val(prec, n_trunc);
    let base = Float::with_val(prec, 6u32) / (p.clone() * Float::with_val(prec, 24u32).sqrt());
    let e2_n2 = powi(&base, n_trunc as i64 + 1) * (Float::with_val(prec, 4u32) / &nf + 1u32);

    let alpha = Float::with_val(prec, &p / 6u32);
    let a2 = Float::with_val(prec, alpha.square_ref());
    let opa = Float::with_val(prec, &a2 + 1u32);
    let q = opa.clone().sqrt();
    let qm1 = Float::with_val(prec, &q - 1u32);
    let e = Float::with_val(prec, qm1.cosh_ref()) + Float::with_val(prec, qm1.sinh_ref());
    let pi2 = Float::with_val(prec, p.square_ref());
    let rho = Float::with_val(prec, &opa / Float::with_val(prec, &a2 * 24u32));
    let c1 = Float::with_val(prec, &e * 3u32) / (pi2 * 2u32 * &opa);
    let c2 = (Float::with_val(prec, 3) / 2u32).sqrt() / &p * e / Float::with_val(prec, &opa * &q);

    let half_down = Float::with_val(prec, n_trunc as i64 - 1) / 2u32;
    let half = Float::with_val(prec, n_trunc) / 2u32;
    let e2_ne = c1 * rho.clone().pow(&half_down) * (Float::with_val(prec, 8u32) / &nf + 1u32);
    let e2_no = c2 * rho.pow(&half) * (Float::with_val(prec, 3u32) / &nf + 1u32);
    let e2_n = Float::with_val(prec, &e2_ne + &e2_no) + &e2_n2;
    Ok(InverseErrorBudget {
        n_trunc,
        e2_n2,
        e2_ne,
        e2_no,
        e2_n,
    })
}

/// Smallest integer strictly greater than ĝ(N+1).
pub fn inverse_cutoff(n_trunc: u64, ctx: &PrecisionContext) -> Result<u64> {
    let gh = g_hat(n_trunc + 1, ctx)?;
    Ok(ceil_to_u64(&gh.floor())? + 1)
}

/// Bounded evaluation of 1/p(n) relative to 4n√3·e^{−π√(2n/3)}; requires
/// n > ĝ(N+1).
pub fn approx_inv_p(n: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<BoundedApprox> {
    ExpansionTable::inverse(n_trunc, ctx)?.evaluate(n)
}

/// Both sides of the Lehmer-style band
/// |p(n)(24n−1)/(√12 e^{μ(n)}) − (1 − 1/μ(n))| ≤ μ(n)^{−m}.
pub fn lehmer_band_sides(
    table: &ExactPartitionTable,
    n: u64,
    m: u64,
    ctx: &PrecisionContext,
) -> Result<(HPReal, HPReal)> {
    if m < 2 {
        return Err(Error::Domain(format!("m must be >= 2, got {m}")));
    }
    if (n, m) == (6, 2) {
        return Err(Error::Excluded { n, m });
    }
    let cutoff = ceil_to_u64(&g_hat(m, ctx)?.floor())? + 1;
    if n < cutoff {
        return Err(Error::BelowCutoff {
            n,
            cutoff: cutoff - 1,
            relation: ">",
        });
    }
    let prec = ctx.prec();
    let mu = mu_at(&Integer::from(n), prec);
    let p = Float::with_val(prec, table.get(n)?);
    let scaled = p * Float::with_val(prec, 24 * n - 1)
        / (Float::with_val(prec, 12u32).sqrt() * Float::with_val(prec, mu.exp_ref()));
    let lead = Float::with_val(prec, 1) - Float::with_val(prec, 1) / &mu;
    let lhs = (scaled - lead).abs();
    let rhs = powi(&mu, -(m as i64));
    Ok((lhs, rhs))
}

/// Whether p(n) lies inside the Lehmer-style band of order m (certified).
pub fn lehmer_band_check(
    table: &ExactPartitionTable,
    n: u64,
    m: u64,
    ctx: &PrecisionContext,
) -> Result<bool> {
    let verdict =
        crate::numerics::certify_le(ctx, |c| lehmer_band_sides(table, n, m, c))?;
    match verdict.status {
        crate::numerics::Status::Pass => Ok(true),
        crate::numerics::Status::Fail => Ok(false),
        crate::numerics::Status::Ambiguous => Err(Error::Ambiguous {
            max_bits: ctx.max_bits,
        }),
    }
}
