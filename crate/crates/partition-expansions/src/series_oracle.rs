//! Truncated power series in x = n^{-1/2} with high-precision coefficients,
//! and the independent coefficient oracles built from first principles.
//!
//! The oracles expand the leading Hardy–Ramanujan–Lehmer term directly:
//!
//! * shift: `(1 + a x²)^{-1} · exp((c/x)(√(1 + a x²) − 1)) · (1 − x/(c√(1 + a x²)))`
//!   with `a = (24k − 1)/24` and `c = π√(2/3)`;
//! * inverse: `(1 − x²/24) · exp(−(c/x)(√(1 − x²/24) − 1)) · (1 − x/(c√(1 − x²/24)))^{-1}`.
//!
//! Nothing here uses the closed-form coefficient formulas of the expansion
//! modules, so agreement between the two is a genuine cross-check.

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::numerics::{binomial_rational, pi, PrecisionContext};

/// A finite expansion Σ_{t=0}^{M} a_t x^t, exact modulo x^{M+1}.
#[derive(Clone, Debug)]
pub struct TruncatedSeries {
    coeffs: Vec<Float>,
}

impl TruncatedSeries {
    /// Series from explicit coefficients a_0..a_M (at least one).
    pub fn from_coeffs(coeffs: Vec<Float>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("a series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// The zero series of order `order`.
    pub fn zero(order: usize, prec: u32) -> Self {
        Self {
            coeffs: vec![Float::new(prec); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize, prec: u32) -> Self {
        let mut s = Self::zero(order, prec);
        s.coeffs[0] = Float::with_val(prec, 1);
        s
    }

    /// The monomial c·x^j (zero if j exceeds the order).
    pub fn monomial(order: usize, j: usize, c: &Float) -> Self {
        let mut s = Self::zero(order, c.prec());
        if j <= order {
            s.coeffs[j] = c.clone();
        }
        s
    }

    /// Truncation order M.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients a_0..a_M.
    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    /// Coefficient a_t.
    pub fn coeff(&self, t: usize) -> &Float {
        &self.coeffs[t]
    }

    fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Float::with_val(a.prec(), a + b))
            .collect();
        Ok(Self { coeffs })
    }

    /// Coefficient-wise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| Float::with_val(a.prec(), a - b))
            .collect();
        Ok(Self { coeffs })
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Float) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| Float::with_val(a.prec(), a * c))
            .collect();
        Self { coeffs }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let m = self.order();
        let prec = self.prec();
        let mut coeffs = vec![Float::new(prec); m + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=m - i].iter().enumerate() {
                coeffs[i + j] += Float::with_val(prec, a * b);
            }
        }
        Ok(Self { coeffs })
    }

    /// Re-truncates (or zero-extends) to order `order`.
    pub fn truncate(&self, order: usize) -> Self {
        let prec = self.prec();
        let coeffs = (0..=order)
            .map(|t| {
                self.coeffs
                    .get(t)
                    .cloned()
                    .unwrap_or_else(|| Float::new(prec))
            })
            .collect();
        Self { coeffs }
    }

    /// Division by x^j; the first j coefficients must vanish. The result has
    /// order M − j.
    pub fn shift_down(&self, j: usize) -> Result<Self> {
        if j > self.order() {
            return Err(Error::Domain(format!(
                "cannot divide an order-{} series by x^{j}",
                self.order()
            )));
        }
        if self.coeffs[..j].iter().any(|c| !c.is_zero()) {
            return Err(Error::Domain(format!(
                "series is not divisible by x^{j}"
            )));
        }
        Ok(Self {
            coeffs: self.coeffs[j..].to_vec(),
        })
    }

    /// exp(S) = Σ_{j=0}^{M} S^j/j!, finite because S has valuation ≥ 1.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::ConstantTerm("0"));
        }
        let m = self.order();
        let prec = self.prec();
        let mut result = Self::one(m, prec);
        let mut power = Self::one(m, prec);
        for j in 1..=m {
            power = power.mul(self)?;
            let term = power.scale(&(Float::with_val(prec, 1) / Float::with_val(prec, j)));
            power = term.clone();
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// S^r = Σ_j C(r, j)(S − 1)^j for a series with constant term 1.
    pub fn binomial_pow(&self, r: &Rational) -> Result<Self> {
        if self.coeffs[0] != 1 {
            return Err(Error::ConstantTerm("1"));
        }
        let m = self.order();
        let prec = self.prec();
        let one = Self::one(m, prec);
        let h = self.sub(&one)?;
        let mut result = one.clone();
        let mut power = one;
        for j in 1..=m {
            power = power.mul(&h)?;
            let c = Float::with_val(prec, &binomial_rational(r, j as i64));
            result = result.add(&power.scale(&c))?;
        }
        Ok(result)
    }
}

/// c = π√(2/3): the exponent of the prefactor is c·√n = c/x.
fn c_const(prec: u32) -> Float {
    let two_thirds = Float::with_val(prec, 2) / 3u32;
    pi(prec) * two_thirds.sqrt()
}

/// 1 + s·x² at order `order`.
fn one_plus_square(order: usize, s: &Float) -> TruncatedSeries {
    let prec = s.prec();
    let one = TruncatedSeries::one(order, prec);
    one.add(&TruncatedSeries::monomial(order, 2, s))
        .expect("equal orders")
}

/// Builds the exponent `(c/x)(√(1 + s x²) − 1)` and the reciprocal root
/// `(1 + s x²)^{-1/2}`, both at order `order`.
fn exponent_and_inv_root(order: usize, s: &Float) -> Result<(TruncatedSeries, TruncatedSeries)> {
    let prec = s.prec();
    let c = c_const(prec);
    let base = one_plus_square(order + 1, s);
    let root_ext = base.binomial_pow(&Rational::from((1, 2)))?;
    let one = TruncatedSeries::one(order + 1, prec);
    let exponent = root_ext.sub(&one)?.shift_down(1)?.scale(&c);
    let inv_root = one_plus_square(order, s).binomial_pow(&Rational::from((-1, 2)))?;
    Ok((exponent, inv_root))
}

/// Series whose coefficients are ω_k(t): the expansion of
/// p(n+k)'s leading term divided by e^{π√(2n/3)}/(4n√3).
pub fn oracle_shift_series(k: u64, order: usize, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    if k == 0 {
        return Err(Error::Domain("shift oracle requires k >= 1".into()));
    }
    let prec = ctx.prec();
    let a = Float::with_val(prec, 24 * k - 1) / 24u32;
    let (exponent, inv_root) = exponent_and_inv_root(order, &a)?;
    let growth = exponent.exp_series()?;
    let rational_part = one_plus_square(order, &a).binomial_pow(&Rational::from(-1))?;
    let c = c_const(prec);
    let x = TruncatedSeries::monomial(order, 1, &(Float::with_val(prec, 1) / &c));
    let lehmer = TruncatedSeries::one(order, prec).sub(&x.mul(&inv_root)?)?;
    growth.mul(&rational_part)?.mul(&lehmer)
}

/// Series whose coefficients are g(t): the expansion of 1/p(n)'s leading
/// term divided by 4n√3·e^{−π√(2n/3)}.
pub fn oracle_inverse_series(order: usize, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    let prec = ctx.prec();
    let s = Float::with_val(prec, -1) / 24u32;
    let (exponent, inv_root) = exponent_and_inv_root(order, &s)?;
    let decay = exponent.scale(&Float::with_val(prec, -1)).exp_series()?;
    let linear = one_plus_square(order, &s);
    let c = c_const(prec);
    let x = TruncatedSeries::monomial(order, 1, &(Float::with_val(prec, 1) / &c));
    let lehmer = TruncatedSeries::one(order, prec).sub(&x.mul(&inv_root)?)?;
    let lehmer_inv = lehmer.binomial_pow(&Rational::from(-1))?;
    decay.mul(&linear)?.mul(&lehmer_inv)
}

/// Product of the shift and inverse oracles: coefficients c_k(m) of
/// p(n+k)/p(n).
pub fn oracle_ratio_series(k: u64, order: usize, ctx: &PrecisionContext) -> Result<TruncatedSeries> {
    oracle_shift_series(k, order, ctx)?.mul(&oracle_inverse_series(order, ctx)?)
}
