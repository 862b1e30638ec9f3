//! Expansion of p(n+k)/p(n): coefficients c_k(m) as the Cauchy product of
//! the shift and inverse coefficients, the four error pieces, the final
//! error constant E_N(k), the cutoff n_N(k), and the shared
//! [`ExpansionTable`] / [`BoundedApprox`] artifacts for all three
//! expansions.

use std::fmt;
use std::str::FromStr;

use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_partition::ExactPartitionTable;
use crate::inverse_expansion::{inverse_cutoff, inverse_error_budget, SumKernels};
use crate::numerics::{pi, HPReal, PrecisionContext};
use crate::shift_expansion::{omega1, shift_constants, shift_cutoff, shift_error_budget};

/// Which quantity an expansion approximates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// p(n+k)/p(n); prefactor 1.
    Ratio,
    /// p(n+k); prefactor e^{π√(2n/3)}/(4n√3).
    Shift,
    /// 1/p(n); prefactor 4n√3·e^{−π√(2n/3)}.
    Inverse,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Ratio => "ratio",
            Kind::Shift => "shift",
            Kind::Inverse => "inverse",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ratio" => Ok(Kind::Ratio),
            "shift" => Ok(Kind::Shift),
            "inverse" => Ok(Kind::Inverse),
            other => Err(Error::Domain(format!(
                "unknown expansion kind `{other}` (expected ratio, shift or inverse)"
            ))),
        }
    }
}

/// A value with a certified radius, relative to a prefactor:
/// `target / prefactor ∈ [center − radius, center + radius]`.
#[derive(Clone, Debug)]
pub struct BoundedApprox {
    pub prefactor: HPReal,
    pub center: HPReal,
    pub radius: HPReal,
}

impl BoundedApprox {
    /// Whether `scaled` (target divided by the prefactor) lies in the band.
    pub fn contains(&self, scaled: &Float) -> bool {
        let dev = Float::with_val(scaled.prec(), scaled - &self.center).abs();
        dev <= self.radius
    }
}

/// Error pieces of the quotient expansion.
#[derive(Clone, Debug)]
pub struct QuotientErrorBudget {
    pub k: u64,
    pub n_trunc: u64,
    /// (1.1 + 0.5Ce + 0.6Co + 0.2k)/N.
    pub e_n1: HPReal,
    /// E^{[1]}_N(k)(1 + 1/N).
    pub e_n2: HPReal,
    /// E^{[2]}_N(1 + (1.9k + 0.06(1+C2*) + 0.05(1+C1*))/N).
    pub e_n3: HPReal,
    /// E^{[1]}_{N,4}(k) + E^{[2]}_{N,4}(k).
    pub e_n4: HPReal,
    /// E_N(k) = E_{N,1} + E_{N,2} + E_{N,3} + E_{N,4}.
    pub e_n_total: HPReal,
    /// n_N(k) = ⌈max{ĝ(N+1), (24k−1)²}⌉; the bound applies for n ≥ n_N(k).
    pub cutoff: u64,
}

/// c_k(m) = Σ_{s=0}^{m} ω_k(s) g(m−s).
pub fn c(k: u64, m: usize, ctx: &PrecisionContext) -> Result<HPReal> {
    Ok(ratio_coefficients(k, m, ctx)?.pop().expect("m + 1 coefficients"))
}

/// c_k(0..=m).
pub fn ratio_coefficients(k: u64, m: usize, ctx: &PrecisionContext) -> Result<Vec<HPReal>> {
    let kernels = SumKernels::new(m / 2 + 1, ctx);
    let omega = (0..=m)
        .map(|t| omega1(k, t as u32, ctx))
        .collect::<Result<Vec<_>>>()?;
    let g = (0..=m).map(|t| kernels.g(t)).collect::<Result<Vec<_>>>()?;
    Ok((0..=m)
        .map(|t| {
            let mut acc = Float::new(ctx.prec());
            for s in 0..=t {
                acc += Float::with_val(ctx.prec(), &omega[s] * &g[t - s]);
            }
            acc
        })
        .collect())
}

fn rat(num: u64, den: u64) -> Rational {
    Rational::from((num, den))
}

/// All error pieces and the cutoff of the quotient expansion.
pub fn quotient_error_budget(k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<QuotientErrorBudget> {
    if n_trunc == 0 {
        return Err(Error::Domain("truncation order N must be >= 1".into()));
    }
    let prec = ctx.prec();
    let f = |q: Rational| Float::with_val(prec, &q);
    let sc = shift_constants(k, ctx)?;
    let nf = Float::with_val(prec, n_trunc);
    let kf = Float::with_val(prec, k);

    // E_{N,1} = (1.1 + 0.5Ce + 0.6Co + 0.2k)/N
    let e_n1 = (f(rat(11, 10))
        + f(rat(1, 2)) * &sc.ce
        + f(rat(6, 10)) * &sc.co
        + f(rat(2, 10)) * &kf)
        / &nf;

    // E_{N,2} = E^{[1]}_N(k)(1 + 1/N)
    let shift = shift_error_budget(k, n_trunc, ctx)?;
    let e_n2 = shift.e_n_total.clone() * (Float::with_val(prec, 1) / &nf + 1u32);

    // E_{N,3} = E^{[2]}_N (1 + (1.9k + 0.06(1+C2*) + 0.05(1+C1*))/N)
    let inverse = inverse_error_budget(n_trunc, ctx)?;
    let corr = f(rat(19, 10)) * &kf
        + f(rat(6, 100)) * (sc.c2_star.clone() + 1u32)
        + f(rat(5, 100)) * (sc.c1_star.clone() + 1u32);
    let e_n3 = inverse.e2_n.clone() * (corr / &nf + 1u32);

    // E_{N,4} with C* = max(C1*, C2*), growth ((24k−1)/24)^{N/2}
    let c_star = if sc.c1_star > sc.c2_star {
        sc.c1_star.clone()
    } else {
        sc.c2_star.clone()
    };
    let one_c = Float::with_val(prec, &c_star + 1u32);
    let d = Float::with_val(prec, 24 * k - 1);
    let growth = rug::ops::Pow::pow(
        Float::with_val(prec, &d / 24u32),
        &(Float::with_val(prec, n_trunc) / 2u32),
    );
    let sqrt_n = nf.clone().sqrt();
    // E^{[1]}_{N,4} = (0.03 + (1+C*)(24k−1)/96 + 0.9k/√N)((24k−1)/24)^{N/2}√N
    let e41 = (f(rat(3, 100)) + Float::with_val(prec, &one_c * &d) / 96u32 + f(rat(9, 10)) * &kf / &sqrt_n)
        * &growth
        * &sqrt_n;
    // E^{[2]}_{N,4} = 0.8(1+C*)/√N · ((24k−1)/24)^{N/2}
    let e42 = f(rat(8, 10)) * one_c / &sqrt_n * &growth;
    let e_n4 = e41 + e42;

    let e_n_total = Float::with_val(prec, &e_n1 + &e_n2) + &e_n3 + &e_n4;
    Ok(QuotientErrorBudget {
        k,
        n_trunc,
        e_n1,
        e_n2,
        e_n3,
        e_n4,
        e_n_total,
        cutoff: shift_cutoff(k, n_trunc, ctx)?,
    })
}

/// The certified artifact for one expansion: coefficients, error constant
/// and cutoff.
#[derive(Clone, Debug)]
pub struct ExpansionTable {
    pub kind: Kind,
    /// Shift `k` (absent for the inverse expansion).
    pub k: Option<u64>,
    /// Truncation order N.
    pub n_trunc: u64,
    /// Coefficients of n^{−t/2}, t = 0..=N.
    pub coefficients: Vec<HPReal>,
    pub error_constant: HPReal,
    /// Cutoff integer; see [`ExpansionTable::strict`].
    pub cutoff: u64,
    /// If true the bound applies for n > cutoff, otherwise for n ≥ cutoff.
    pub strict: bool,
    /// Precision context the table was computed with.
    pub ctx: PrecisionContext,
}

impl ExpansionTable {
    /// Builds the table for any kind (`k` is ignored for the inverse kind).
    pub fn build(kind: Kind, k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<Self> {
        match kind {
            Kind::Ratio => Self::ratio(k, n_trunc, ctx),
            Kind::Shift => Self::shift(k, n_trunc, ctx),
            Kind::Inverse => Self::inverse(n_trunc, ctx),
        }
    }

    /// Expansion of p(n+k)/p(n).
    pub fn ratio(k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<Self> {
        let budget = quotient_error_budget(k, n_trunc, ctx)?;
        Ok(Self {
            kind: Kind::Ratio,
            k: Some(k),
            n_trunc,
            coefficients: ratio_coefficients(k, n_trunc as usize, ctx)?,
            error_constant: budget.e_n_total,
            cutoff: budget.cutoff,
            strict: false,
            ctx: *ctx,
        })
    }

    /// Expansion of p(n+k).
    pub fn shift(k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<Self> {
        let budget = shift_error_budget(k, n_trunc, ctx)?;
        let coefficients = (0..=n_trunc)
            .map(|t| omega1(k, t as u32, ctx))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind: Kind::Shift,
            k: Some(k),
            n_trunc,
            coefficients,
            error_constant: budget.e_n_total,
            cutoff: budget.cutoff_n,
            strict: true,
            ctx: *ctx,
        })
    }

    /// Expansion of 1/p(n).
    pub fn inverse(n_trunc: u64, ctx: &PrecisionContext) -> Result<Self> {
        let budget = inverse_error_budget(n_trunc, ctx)?;
        let kernels = SumKernels::new(n_trunc as usize / 2 + 1, ctx);
        let coefficients = (0..=n_trunc as usize)
            .map(|t| kernels.g(t).map(|v| Float::with_val(ctx.prec(), v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind: Kind::Inverse,
            k: None,
            n_trunc,
            coefficients,
            error_constant: budget.e2_n,
            cutoff: inverse_cutoff(n_trunc, ctx)?,
            strict: false,
            ctx: *ctx,
        })
    }

    /// The same table recomputed under another precision context.
    pub fn at(&self, ctx: &PrecisionContext) -> Result<Self> {
        Self::build(self.kind, self.k.unwrap_or(1), self.n_trunc, ctx)
    }

    /// Whether the bound covers `n`.
    pub fn admits(&self, n: u64) -> bool {
        if self.strict {
            n > self.cutoff
        } else {
            n >= self.cutoff
        }
    }

    /// Prefactor, center Σ_{t≤N} a_t n^{−t/2} and radius E·n^{−(N+1)/2}.
    pub fn evaluate(&self, n: u64) -> Result<BoundedApprox> {
        if !self.admits(n) {
            return Err(Error::BelowCutoff {
                n,
                cutoff: self.cutoff,
                relation: if self.strict { ">" } else { ">=" },
            });
        }
        let prec = self.ctx.prec();
        let nf = Float::with_val(prec, n);
        let x = Float::with_val(prec, nf.recip_sqrt_ref());
        let mut center = Float::new(prec);
        let mut xp = Float::with_val(prec, 1);
        for a in &self.coefficients {
            center += Float::with_val(prec, a * &xp);
            xp *= &x;
        }
        let radius = Float::with_val(prec, &self.error_constant * &xp);
        let prefactor = match self.kind {
            Kind::Ratio => Float::with_val(prec, 1),
            Kind::Shift => growth(n, prec) / lehmer_denominator(n, prec),
            Kind::Inverse => lehmer_denominator(n, prec) / growth(n, prec),
        };
        Ok(BoundedApprox {
            prefactor,
            center,
            radius,
        })
    }

    /// The exact target divided by the prefactor, from the oracle table.
    pub fn scaled_target(&self, oracle: &ExactPartitionTable, n: u64) -> Result<HPReal> {
        let prec = self.ctx.prec();
        Ok(match self.kind {
            Kind::Ratio => {
                let k = self.k.expect("ratio tables carry k");
                Float::with_val(prec, &crate::exact_partition::exact_quotient_rational(oracle, n, k)?)
            }
            Kind::Shift => {
                let k = self.k.expect("shift tables carry k");
                Float::with_val(prec, oracle.get(n + k)?) * lehmer_denominator(n, prec) / growth(n, prec)
            }
            Kind::Inverse => {
                growth(n, prec) / (Float::with_val(prec, oracle.get(n)?) * lehmer_denominator(n, prec))
            }
        })
    }

    /// (|target/prefactor − center|, radius) at n.
    pub fn band_sides(&self, oracle: &ExactPartitionTable, n: u64) -> Result<(HPReal, HPReal)> {
        let approx = self.evaluate(n)?;
        let target = self.scaled_target(oracle, n)?;
        let dev = Float::with_val(target.prec(), &target - &approx.center).abs();
        Ok((dev, approx.radius))
    }
}

/// e^{π√(2n/3)}.
fn growth(n: u64, prec: u32) -> Float {
    let arg = Float::with_val(prec, 2 * n) / 3u32;
    (pi(prec) * arg.sqrt()).exp()
}

/// 4n√3.
fn lehmer_denominator(n: u64, prec: u32) -> Float {
    Float::with_val(prec, 3u32).sqrt() * (4 * n)
}

/// Bounded evaluation of p(n+k)/p(n); requires n ≥ n_N(k).
pub fn approx_ratio(n: u64, k: u64, n_trunc: u64, ctx: &PrecisionContext) -> Result<BoundedApprox> {
    ExpansionTable::ratio(k, n_trunc, ctx)?.evaluate(n)
}
